#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "riftrank/types.hpp"

namespace riftrank {

enum class ForecastScope { kAll = 0, kIntra = 1, kInter = 2 };
inline constexpr int kNumScopes = 3;
std::string_view to_string(ForecastScope s);

struct ScopeMetrics {
    int64_t n = 0;
    double accuracy = 0.0;
    double ece = 0.0;
};

struct ForecastWindowResult {
    int64_t train_start = 0; // [train_start, train_end) then [test_start, test_end)
    int64_t train_end = 0;
    int64_t test_start = 0;
    int64_t test_end = 0;
    std::array<ScopeMetrics, kNumScopes> scopes{};
};

struct ForecastOptions {
    int64_t train_span_s = 365ll * 86400;
    int64_t test_span_s = 30ll * 86400;
    int min_train_games = 100;
    int ece_bins = 10;
    // Five per-role rating differences (BLUE minus RED); false collapses to a
    // single mean-difference feature.
    bool role_pair_features = true;
};

struct ForecastReport {
    std::vector<ForecastWindowResult> windows;
    std::array<ScopeMetrics, kNumScopes> pooled{};
    std::vector<std::string> warnings;
};

// Pre-game single-value rating per (game_id, player_id); strictly a function
// of earlier games. The forecaster never sees anything else.
using RatingLookup = std::map<std::pair<std::string, std::string>, double>;

// Walks monthly-style windows over chronologically ordered games: fits a
// logistic outcome model on one training span, scores the following test
// span, then slides by the test span. Windows with too few training games or
// an empty/one-class training set are skipped with a warning. Predictions of
// exactly 0.5 earn half credit.
ForecastReport rolling_forecast_eval(const std::vector<GameRecord>& games,
                                     const RatingLookup& rating_before,
                                     const ForecastOptions& options = {});

// Builds the lookup from a replayed delta log (theta strictly before each game).
RatingLookup rating_lookup_from_deltas(const std::vector<struct GameDelta>& deltas,
                                       bool use_theta_after = false);

} // namespace riftrank

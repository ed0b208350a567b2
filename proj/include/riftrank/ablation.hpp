#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "riftrank/cross_validation.hpp"
#include "riftrank/forecast.hpp"
#include "riftrank/rating_engine.hpp"
#include "riftrank/synthetic.hpp"
#include "riftrank/wasserstein.hpp"

namespace riftrank {

struct AblationOptions {
    RatingConfig rating;
    ForecastOptions forecast;
    double ewma_alpha = 0.05;
};

struct AblationVariantResult {
    std::string name; // plain_ffa, plain_team, meta_ffa, meta_team, ewma
    std::array<ScopeMetrics, kNumScopes> forecast{}; // pooled across windows
    double fairness_w1 = 0.0;
    bool has_latent = false;
    double spearman_latent = 0.0;        // final rating vs latent skill
    double cross_context_accuracy = 0.0; // pairwise ordering of cross-context pairs
};

struct AblationReport {
    std::vector<AblationVariantResult> variants;
    const AblationVariantResult& by_name(const std::string& name) const;
};

// Per-game pscores keyed by player, keyed by game.
std::map<std::string, std::map<std::string, double>>
pscores_by_game(const std::vector<PScoreRecord>& records);

// Replays one rating variant over the game log; returns deltas in game order.
std::vector<GameDelta> replay_ratings(const std::vector<GameRecord>& games,
                                      const std::map<std::string, std::map<std::string, double>>& pscores,
                                      UpdateMode mode, RatingVariant variant,
                                      const RatingConfig& config, RatingSnapshot* final_snapshot);

// EWMA baseline replay: per-player smoothed pscore; unseen players read as
// 50 (the uniform pscore mean). Emits the same lookup/final shapes as the
// Bayesian replays so the comparison is apples to apples.
struct EwmaReplay {
    RatingLookup before; // (game, player) -> value before the game
    std::map<std::string, double> final_values;
    std::map<std::string, Role> roles;
};
EwmaReplay replay_ewma(const std::vector<GameRecord>& games,
                       const std::map<std::string, std::map<std::string, double>>& pscores,
                       double alpha);

// Fraction of cross-context player pairs whose rating order matches their
// latent skill order.
double cross_context_pair_accuracy(const std::map<std::string, double>& rating_by_player,
                                   const std::vector<LatentSkill>& latent);

// Runs every rating variant plus the EWMA baseline over one game log and
// produces forecast, fairness, and (with latent skills) recovery metrics.
AblationReport ablation_report(const std::vector<GameRecord>& games,
                               const std::vector<PScoreRecord>& pscores,
                               const std::vector<LatentSkill>* latent,
                               const AblationOptions& options);

void write_ablation_csv(const std::string& path, const AblationReport& report);
std::string ablation_table(const AblationReport& report);

} // namespace riftrank

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "riftrank/types.hpp"

namespace riftrank {

inline constexpr int kNumFeatures = 15;

// Per-player input features, in the canonical column order used by every
// persisted artifact. Keep this struct a flat block of 15 doubles: as_span()
// exposes it as a vector for the model code.
struct FeatureVector {
    double kla = 0.0;
    double gold_per_min = 0.0;
    double xp_per_min = 0.0;
    double cs_per_min = 0.0;
    double wards_per_min = 0.0;
    double dmg_dealt_tk_ratio = 0.0;
    double dmg_dealt_per_gold_tk_ratio = 0.0;
    double dmg_taken_tk_ratio = 0.0;
    double dmg_taken_per_gold_tk_ratio = 0.0;
    double largest_multi_kill = 0.0;
    double largest_killing_spree_tk_ratio = 0.0;
    double worthless_death_ratio = 0.0;
    double free_kill_ratio = 0.0;
    double objective_contest_winrate = 0.0;
    double objective_contest_loserate = 0.0;

    std::span<double, kNumFeatures> as_span() { return std::span<double, kNumFeatures>(&kla, kNumFeatures); }
    std::span<const double, kNumFeatures> as_span() const {
        return std::span<const double, kNumFeatures>(&kla, kNumFeatures);
    }

    bool operator==(const FeatureVector&) const = default;
};
static_assert(sizeof(FeatureVector) == kNumFeatures * sizeof(double));

const std::array<std::string_view, kNumFeatures>& feature_names();
int feature_index(std::string_view name); // -1 when unknown

// Monotonicity direction of each feature's effect on win probability:
// +1 everywhere except worthless_death_ratio and objective_contest_loserate.
const std::array<int, kNumFeatures>& default_sign_constraints();

struct FeatureConfig {
    double worthless_death_window_s = 60.0; // symmetric half-window around a death
    double multi_kill_window_s = 10.0;      // sliding window for multi kills
};

double compute_kla(int64_t kills, int64_t deaths, int64_t assists);

// value per minute of game time; duration in seconds, > 0.
double per_minute(double value, double duration_s);

// value / total kills, 0 when the game had no kills.
double total_kills_ratio(double value, int64_t total_game_kills);

// One flag per death event of the player, chronological. A death is worthless
// iff within +-window of it the player scored no champion kill/assist and the
// player's team secured no objective (tower, inhibitor, nexus, drake, herald,
// baron). The window is closed on both ends.
std::vector<bool> worthless_death_flags(const GameRecord& game, std::string_view player_id,
                                        double window_s = 60.0);

// Share of the player's kills whose victim's death was worthless for the
// victim; 0 when the player has no kill events.
double free_kill_ratio(const GameRecord& game, std::string_view player_id, double window_s = 60.0);

struct ContestRates {
    double winrate = 0.0;
    double loserate = 0.0;
};

// Contested neutral objectives (drake/herald/baron with both teams among
// killer+assists), won by the killer's team, normalized by all contestable
// objectives in the game.
ContestRates objective_contest_rates(const GameRecord& game, std::string_view player_id);

int64_t largest_multi_kill(const GameRecord& game, std::string_view player_id,
                           double window_s = 10.0);
int64_t largest_killing_spree(const GameRecord& game, std::string_view player_id);

// Number of champion-kill events in the game (the total-kills normalizer).
int64_t total_game_kills(const GameRecord& game);

// One vector per line, in line order. Uses only the player's own stat line,
// the event stream, the duration, and the total kill count.
std::vector<FeatureVector> extract_features(const GameRecord& game, const FeatureConfig& config = {});

} // namespace riftrank

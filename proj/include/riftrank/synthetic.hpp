#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "riftrank/types.hpp"

namespace riftrank {

// Controls for the synthetic match generator. Latent player skill is
// context_offset + an individual Normal(0, within_context_spread) term; stat
// lines are monotone noisy channels of each player's per-game performance
// RELATIVE to the game's lineup, so features never leak absolute context
// strength (inter-context games are the only cross-context signal, as in the
// real data the pipeline targets).
struct SyntheticConfig {
    int n_players = 200;
    int n_contexts = 1;
    int games_per_step = 10;
    int steps = 200; // one step = one day
    std::vector<double> context_offsets = {0.0}; // one per context
    double within_context_spread = 2.0;
    double inter_context_rate = 0.0;  // probability a game crosses contexts
    double noise_scale = 2.0;         // outcome logistic scale on team skill gap
    double performance_noise = 1.0;   // per-game jitter of a player's form
    double migration_rate = 0.0;      // per-step probability one player switches context
    uint64_t seed = 42;
    int64_t start_timestamp = 1577836800; // 2020-01-01T00:00:00Z
    int64_t step_seconds = 86400;

    void validate() const; // throws DomainError on contradictions
};

struct LatentSkill {
    std::string player_id;
    std::string context_id; // context at the end of the run
    Role role = Role::kTop;
    double skill = 0.0;
};

struct SyntheticData {
    std::vector<GameRecord> games; // chronological, pass full ingest validation
    std::vector<LatentSkill> latent;
};

SyntheticData generate_synthetic(const SyntheticConfig& config);

void write_latent_csv(const std::string& path, const std::vector<LatentSkill>& latent);
std::vector<LatentSkill> read_latent_csv(const std::string& path);

} // namespace riftrank

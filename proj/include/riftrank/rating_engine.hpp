#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "riftrank/rating.hpp"
#include "riftrank/types.hpp"

namespace riftrank {

enum class UpdateMode { kFfa, kTeamOutcome };
enum class RatingVariant { kPlain, kMeta };

std::string_view to_string(UpdateMode m);
std::string_view to_string(RatingVariant v);
UpdateMode update_mode_from_string(std::string_view s);
RatingVariant rating_variant_from_string(std::string_view s);

struct PlayerRatingState {
    std::string player_id;
    Rating contextual; // the whole rating in the plain variant
    std::string current_context_id;
    int64_t games_played = 0;
    std::array<int64_t, kNumRoles> role_counts{};

    Role most_frequent_role() const;

    bool operator==(const PlayerRatingState&) const = default;
};

// Shared per-context meta ratings; unseen contexts start at the default prior.
struct ContextRegistry {
    std::map<std::string, Rating> contexts;

    Rating get(const std::string& context_id, const RatingConfig& config) const;
    Rating& get_or_insert(const std::string& context_id, const RatingConfig& config);

    bool operator==(const ContextRegistry&) const = default;
};

// Input to the meta-rating update: one entry per player of an inter-context game.
struct MetaPlayer {
    std::string context_id;
    Rating contextual;
    Rating meta; // the player's context meta rating before the game
    double pscore = 0.0;
};

// Inter-context meta update: runs the free-for-all core on
// (mu_meta + lower_bound(contextual), sigma_meta) ranked by pscore, removes the
// contextual offset from each posterior mean, then averages per context:
// mu_meta_c = mean_{j in c}(mu_j' - theta_j_ctx), sigma_meta_c =
// sqrt(mean_{j in c} sigma_j'^2). Requires >= 2 distinct contexts.
std::map<std::string, Rating> meta_update(const std::vector<MetaPlayer>& players,
                                          const RatingConfig& config);

// Per-player audit row for one processed game.
struct GameDelta {
    std::string game_id;
    int64_t timestamp = 0;
    std::string player_id;
    std::string context_id;
    bool meta_updated = false; // which of the two ratings the update touched
    bool sigma_reset = false;  // context change fired the sigma reset
    Rating ctx_before;         // before the reset, i.e. the pre-game belief
    Rating ctx_after;
    Rating meta_before;
    Rating meta_after;
    double theta_before = 0.0; // combined lower bound before the game
    double theta_after = 0.0;
};

struct RatingSnapshot {
    RatingConfig config;
    UpdateMode mode = UpdateMode::kFfa;
    RatingVariant variant = RatingVariant::kMeta;
    std::map<std::string, PlayerRatingState> players;
    ContextRegistry registry;
};

// Sequential owner of (player states, context registry). Games must be fed in
// chronological order; every update is deterministic.
class RatingSystem {
  public:
    RatingSystem(RatingConfig config, UpdateMode mode, RatingVariant variant);
    explicit RatingSystem(RatingSnapshot snapshot);

    // pscores maps player_id -> pscore; required in FFA mode, ignored in
    // team-outcome mode. Returns one delta per line, in line order.
    std::vector<GameDelta> process_game(const GameRecord& game,
                                        const std::map<std::string, double>* pscores);

    CombinedRating combined(const std::string& player_id) const; // throws on unknown

    const std::map<std::string, PlayerRatingState>& players() const { return players_; }
    const ContextRegistry& registry() const { return registry_; }
    const RatingConfig& config() const { return config_; }
    UpdateMode mode() const { return mode_; }
    RatingVariant variant() const { return variant_; }

    RatingSnapshot snapshot() const;

    // Auto-initialization notices and similar events.
    const std::vector<std::string>& log() const { return log_; }

  private:
    RatingConfig config_;
    UpdateMode mode_;
    RatingVariant variant_;
    std::map<std::string, PlayerRatingState> players_;
    ContextRegistry registry_;
    std::vector<std::string> log_;
};

struct LeaderboardRow {
    int rank = 0;
    std::string player_id;
    std::string context_id;
    Role role = Role::kTop;
    double theta = 0.0;
    double mu = 0.0;
    double sigma = 0.0;
};

// Total order by (theta desc, player_id asc).
std::vector<LeaderboardRow> rank_players(const RatingSnapshot& snapshot);

// EWMA baseline over pscores: first observation seeds the value.
double ewma_update(const std::optional<double>& prev, double pscore, double alpha = 0.05);

} // namespace riftrank

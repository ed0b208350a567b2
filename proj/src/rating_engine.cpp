#include "riftrank/rating_engine.hpp"

#include <algorithm>
#include <cmath>

#include "riftrank/errors.hpp"
#include "riftrank/ingest.hpp"

namespace riftrank {

std::string_view to_string(UpdateMode m) { return m == UpdateMode::kFfa ? "ffa" : "team"; }
std::string_view to_string(RatingVariant v) {
    return v == RatingVariant::kPlain ? "plain" : "meta";
}

UpdateMode update_mode_from_string(std::string_view s) {
    if (s == "ffa") return UpdateMode::kFfa;
    if (s == "team") return UpdateMode::kTeamOutcome;
    throw ValidationError("mode: expected ffa or team, got \"" + std::string(s) + "\"");
}

RatingVariant rating_variant_from_string(std::string_view s) {
    if (s == "plain") return RatingVariant::kPlain;
    if (s == "meta") return RatingVariant::kMeta;
    throw ValidationError("variant: expected plain or meta, got \"" + std::string(s) + "\"");
}

Role PlayerRatingState::most_frequent_role() const {
    int best = 0;
    for (int i = 1; i < kNumRoles; ++i)
        if (role_counts[static_cast<size_t>(i)] > role_counts[static_cast<size_t>(best)]) best = i;
    return static_cast<Role>(best);
}

Rating ContextRegistry::get(const std::string& context_id, const RatingConfig& config) const {
    const auto it = contexts.find(context_id);
    if (it != contexts.end()) return it->second;
    return Rating{config.mu0, config.sigma0};
}

Rating& ContextRegistry::get_or_insert(const std::string& context_id, const RatingConfig& config) {
    return contexts.try_emplace(context_id, Rating{config.mu0, config.sigma0}).first->second;
}

std::map<std::string, Rating> meta_update(const std::vector<MetaPlayer>& players,
                                          const RatingConfig& config) {
    std::map<std::string, std::vector<size_t>> by_context;
    for (size_t i = 0; i < players.size(); ++i)
        by_context[players[i].context_id].push_back(i);
    if (by_context.size() < 2)
        throw DomainError("meta_update: needs players from at least 2 contexts");

    std::vector<Rating> entries;
    std::vector<double> pscores;
    std::vector<double> offsets;
    entries.reserve(players.size());
    for (const auto& p : players) {
        const double offset = lower_bound(p.contextual);
        entries.push_back(Rating{p.meta.mu + offset, p.meta.sigma});
        offsets.push_back(offset);
        pscores.push_back(p.pscore);
    }
    const auto updated = ffa_update(entries, pscores, config);

    std::map<std::string, Rating> out;
    for (const auto& [context_id, members] : by_context) {
        double mu_sum = 0.0, var_sum = 0.0;
        for (size_t i : members) {
            mu_sum += updated[i].mu - offsets[i]; // reverse the offset
            var_sum += updated[i].sigma * updated[i].sigma;
        }
        const double n = static_cast<double>(members.size());
        out[context_id] = Rating{mu_sum / n, std::sqrt(var_sum / n)};
    }
    return out;
}

RatingSystem::RatingSystem(RatingConfig config, UpdateMode mode, RatingVariant variant)
    : config_(config), mode_(mode), variant_(variant) {}

RatingSystem::RatingSystem(RatingSnapshot snapshot)
    : config_(snapshot.config), mode_(snapshot.mode), variant_(snapshot.variant),
      players_(std::move(snapshot.players)), registry_(std::move(snapshot.registry)) {}

CombinedRating RatingSystem::combined(const std::string& player_id) const {
    const auto it = players_.find(player_id);
    if (it == players_.end()) throw DomainError("combined: unknown player " + player_id);
    if (variant_ == RatingVariant::kPlain) {
        CombinedRating c;
        c.mu = it->second.contextual.mu;
        c.sigma = it->second.contextual.sigma;
        c.theta = c.mu - 3.0 * c.sigma;
        return c;
    }
    return combine(it->second.contextual, registry_.get(it->second.current_context_id, config_));
}

std::vector<GameDelta> RatingSystem::process_game(const GameRecord& game,
                                                  const std::map<std::string, double>* pscores) {
    std::vector<double> game_pscores(game.lines.size(), 0.0);
    if (mode_ == UpdateMode::kFfa) {
        if (pscores == nullptr) throw DomainError("process_game: FFA mode requires pscores");
        for (size_t i = 0; i < game.lines.size(); ++i) {
            const auto it = pscores->find(game.lines[i].player_id);
            if (it == pscores->end())
                throw DomainError("process_game: missing pscore for player " +
                                  game.lines[i].player_id + " in game " + game.game_id);
            game_pscores[i] = it->second;
        }
    }

    std::vector<GameDelta> deltas(game.lines.size());
    for (size_t i = 0; i < game.lines.size(); ++i) {
        const auto& line = game.lines[i];
        auto [it, inserted] =
            players_.try_emplace(line.player_id, PlayerRatingState{
                                                     line.player_id,
                                                     Rating{config_.mu0, config_.sigma0},
                                                     line.context_id,
                                                     0,
                                                     {}});
        if (inserted)
            log_.push_back("game " + game.game_id + ": initialized player " + line.player_id +
                           " at default prior");
        PlayerRatingState& state = it->second;

        GameDelta& d = deltas[i];
        d.game_id = game.game_id;
        d.timestamp = game.timestamp;
        d.player_id = line.player_id;
        d.context_id = line.context_id;
        d.ctx_before = state.contextual;
        d.meta_before = registry_.get(line.context_id, config_);
        if (variant_ == RatingVariant::kPlain) {
            d.theta_before = state.contextual.mu - 3.0 * state.contextual.sigma;
        } else {
            // Pre-game belief: contextual before any reset, meta of the
            // context the player is entering.
            d.theta_before = combine(state.contextual, d.meta_before).theta;
        }

        // Sigma reset on context change (dual-rating variant only).
        if (detect_context_change(state.games_played > 0
                                      ? std::optional<std::string>(state.current_context_id)
                                      : std::nullopt,
                                  line.context_id)) {
            if (variant_ == RatingVariant::kMeta) {
                state.contextual.sigma = config_.sigma0;
                d.sigma_reset = true;
            }
        }
        state.current_context_id = line.context_id;
    }

    const bool intra = is_intra_context(game);
    const bool update_contextual = variant_ == RatingVariant::kPlain || intra;

    if (update_contextual) {
        std::vector<Rating> posterior;
        if (mode_ == UpdateMode::kFfa) {
            std::vector<Rating> priors;
            priors.reserve(game.lines.size());
            for (const auto& line : game.lines)
                priors.push_back(players_.at(line.player_id).contextual);
            posterior = ffa_update(priors, game_pscores, config_);
        } else {
            // Two five-player teams ranked by outcome.
            PlTeam blue, red;
            blue.rank = game.winner == Side::kBlue ? 1 : 2;
            red.rank = game.winner == Side::kRed ? 1 : 2;
            for (const auto& line : game.lines)
                (line.side == Side::kBlue ? blue : red)
                    .members.push_back(players_.at(line.player_id).contextual);
            const auto updated = pl_update_teams({blue, red}, config_);
            size_t blue_i = 0, red_i = 0;
            for (const auto& line : game.lines)
                posterior.push_back(line.side == Side::kBlue ? updated[0][blue_i++]
                                                             : updated[1][red_i++]);
        }
        for (size_t i = 0; i < game.lines.size(); ++i)
            players_.at(game.lines[i].player_id).contextual = posterior[i];
    } else {
        // Inter-context game: only the meta ratings move.
        std::map<std::string, Rating> new_meta;
        if (mode_ == UpdateMode::kFfa) {
            std::vector<MetaPlayer> meta_players;
            meta_players.reserve(game.lines.size());
            for (size_t i = 0; i < game.lines.size(); ++i) {
                const auto& line = game.lines[i];
                meta_players.push_back(MetaPlayer{line.context_id,
                                                  players_.at(line.player_id).contextual,
                                                  registry_.get(line.context_id, config_),
                                                  game_pscores[i]});
            }
            new_meta = meta_update(meta_players, config_);
        } else {
            PlTeam blue, red;
            blue.rank = game.winner == Side::kBlue ? 1 : 2;
            red.rank = game.winner == Side::kRed ? 1 : 2;
            std::vector<double> offsets;
            std::vector<const PlayerLine*> order;
            for (const auto& line : game.lines) {
                const double offset = lower_bound(players_.at(line.player_id).contextual);
                const Rating meta = registry_.get(line.context_id, config_);
                (line.side == Side::kBlue ? blue : red)
                    .members.push_back(Rating{meta.mu + offset, meta.sigma});
                offsets.push_back(offset);
                order.push_back(&line);
            }
            const auto updated = pl_update_teams({blue, red}, config_);
            std::map<std::string, std::pair<double, double>> acc; // context -> (mu_sum, var_sum)
            std::map<std::string, int> count;
            size_t blue_i = 0, red_i = 0;
            for (size_t i = 0; i < order.size(); ++i) {
                const Rating r = order[i]->side == Side::kBlue ? updated[0][blue_i++]
                                                               : updated[1][red_i++];
                auto& [mu_sum, var_sum] = acc[order[i]->context_id];
                mu_sum += r.mu - offsets[i];
                var_sum += r.sigma * r.sigma;
                count[order[i]->context_id] += 1;
            }
            for (const auto& [context_id, sums] : acc) {
                const double n = count[context_id];
                new_meta[context_id] = Rating{sums.first / n, std::sqrt(sums.second / n)};
            }
        }
        for (const auto& [context_id, rating] : new_meta)
            registry_.get_or_insert(context_id, config_) = rating;
    }

    for (size_t i = 0; i < game.lines.size(); ++i) {
        const auto& line = game.lines[i];
        PlayerRatingState& state = players_.at(line.player_id);
        state.games_played += 1;
        state.role_counts[static_cast<size_t>(line.role)] += 1;

        GameDelta& d = deltas[i];
        d.meta_updated = !update_contextual;
        d.ctx_after = state.contextual;
        d.meta_after = registry_.get(line.context_id, config_);
        if (variant_ == RatingVariant::kPlain)
            d.theta_after = state.contextual.mu - 3.0 * state.contextual.sigma;
        else
            d.theta_after = combine(d.ctx_after, d.meta_after).theta;
    }
    return deltas;
}

RatingSnapshot RatingSystem::snapshot() const {
    RatingSnapshot s;
    s.config = config_;
    s.mode = mode_;
    s.variant = variant_;
    s.players = players_;
    s.registry = registry_;
    return s;
}

std::vector<LeaderboardRow> rank_players(const RatingSnapshot& snapshot) {
    std::vector<LeaderboardRow> rows;
    rows.reserve(snapshot.players.size());
    for (const auto& [player_id, state] : snapshot.players) {
        LeaderboardRow row;
        row.player_id = player_id;
        row.context_id = state.current_context_id;
        row.role = state.most_frequent_role();
        if (snapshot.variant == RatingVariant::kPlain) {
            row.mu = state.contextual.mu;
            row.sigma = state.contextual.sigma;
        } else {
            const CombinedRating c =
                combine(state.contextual, snapshot.registry.get(state.current_context_id,
                                                                snapshot.config));
            row.mu = c.mu;
            row.sigma = c.sigma;
        }
        row.theta = row.mu - 3.0 * row.sigma;
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const LeaderboardRow& a, const LeaderboardRow& b) {
        if (a.theta != b.theta) return a.theta > b.theta;
        return a.player_id < b.player_id;
    });
    for (size_t i = 0; i < rows.size(); ++i) rows[i].rank = static_cast<int>(i) + 1;
    return rows;
}

double ewma_update(const std::optional<double>& prev, double pscore, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("ewma_update: alpha must be in (0,1]");
    if (!prev.has_value()) return pscore;
    return alpha * pscore + (1.0 - alpha) * *prev;
}

} // namespace riftrank

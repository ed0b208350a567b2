#include "riftrank/features.hpp"

#include <algorithm>
#include <cmath>

#include "riftrank/errors.hpp"

namespace riftrank {

const std::array<std::string_view, kNumFeatures>& feature_names() {
    static const std::array<std::string_view, kNumFeatures> kNames = {
        "kla",
        "gold_per_min",
        "xp_per_min",
        "cs_per_min",
        "wards_per_min",
        "dmg_dealt_tk_ratio",
        "dmg_dealt_per_gold_tk_ratio",
        "dmg_taken_tk_ratio",
        "dmg_taken_per_gold_tk_ratio",
        "largest_multi_kill",
        "largest_killing_spree_tk_ratio",
        "worthless_death_ratio",
        "free_kill_ratio",
        "objective_contest_winrate",
        "objective_contest_loserate",
    };
    return kNames;
}

int feature_index(std::string_view name) {
    const auto& names = feature_names();
    for (int i = 0; i < kNumFeatures; ++i)
        if (names[i] == name) return i;
    return -1;
}

const std::array<int, kNumFeatures>& default_sign_constraints() {
    static const std::array<int, kNumFeatures> kSigns = [] {
        std::array<int, kNumFeatures> s;
        s.fill(+1);
        s[feature_index("worthless_death_ratio")] = -1;
        s[feature_index("objective_contest_loserate")] = -1;
        return s;
    }();
    return kSigns;
}

double compute_kla(int64_t kills, int64_t deaths, int64_t assists) {
    return static_cast<double>(kills + assists) / static_cast<double>(deaths + 1);
}

double per_minute(double value, double duration_s) {
    if (!(duration_s > 0.0)) throw DomainError("per_minute: duration must be > 0");
    return value / (duration_s / 60.0);
}

double total_kills_ratio(double value, int64_t total_game_kills) {
    if (total_game_kills <= 0) return 0.0;
    return value / static_cast<double>(total_game_kills);
}

int64_t total_game_kills(const GameRecord& game) {
    int64_t n = 0;
    for (const auto& e : game.events)
        if (e.kind == EventKind::kChampionKill) ++n;
    return n;
}

namespace {

bool is_objective_event(const GameEvent& e) {
    if (e.kind == EventKind::kBuildingKill) return true;
    return e.kind == EventKind::kNeutralMonsterKill && e.objective &&
           is_neutral_objective(*e.objective);
}

bool involves_player(const GameEvent& e, std::string_view player_id) {
    if (e.actor_id == player_id) return true;
    return std::find(e.assist_ids.begin(), e.assist_ids.end(), player_id) != e.assist_ids.end();
}

} // namespace

std::vector<bool> worthless_death_flags(const GameRecord& game, std::string_view player_id,
                                        double window_s) {
    if (!(window_s > 0.0)) throw DomainError("worthless_death_flags: window must be > 0");
    const auto player_side = side_of(game, player_id);
    std::vector<bool> flags;
    for (const auto& death : game.events) {
        if (death.kind != EventKind::kChampionKill || death.victim_id != player_id) continue;
        const double lo = death.time - window_s;
        const double hi = death.time + window_s;
        bool redeemed = false;
        for (const auto& e : game.events) {
            if (e.time < lo) continue;
            if (e.time > hi) break; // events are chronological
            if (e.kind == EventKind::kChampionKill) {
                // Kill or assist by the player on an enemy champion.
                if (e.actor_id == player_id || (player_side &&
                                                side_of(game, e.actor_id) == *player_side &&
                                                involves_player(e, player_id))) {
                    redeemed = true;
                    break;
                }
            } else if (is_objective_event(e) && player_side &&
                       side_of(game, e.actor_id) == *player_side) {
                redeemed = true;
                break;
            }
        }
        flags.push_back(!redeemed);
    }
    return flags;
}

double free_kill_ratio(const GameRecord& game, std::string_view player_id, double window_s) {
    // Worthless flags per victim, consumed in event order.
    int64_t kills = 0, free_kills = 0;
    std::vector<std::pair<std::string, std::vector<bool>>> victim_flags;
    auto flags_for = [&](const std::string& victim) -> std::vector<bool>& {
        for (auto& [id, flags] : victim_flags)
            if (id == victim) return flags;
        victim_flags.emplace_back(victim, worthless_death_flags(game, victim, window_s));
        return victim_flags.back().second;
    };
    std::vector<std::pair<std::string, size_t>> death_counter; // victim -> deaths seen so far
    auto next_death_index = [&](const std::string& victim) -> size_t {
        for (auto& [id, n] : death_counter)
            if (id == victim) return n++;
        death_counter.emplace_back(victim, 1);
        return 0;
    };
    for (const auto& e : game.events) {
        if (e.kind != EventKind::kChampionKill) continue;
        const size_t death_idx = next_death_index(e.victim_id);
        if (e.actor_id != player_id) continue;
        ++kills;
        const auto& flags = flags_for(e.victim_id);
        if (death_idx < flags.size() && flags[death_idx]) ++free_kills;
    }
    if (kills == 0) return 0.0;
    return static_cast<double>(free_kills) / static_cast<double>(kills);
}

ContestRates objective_contest_rates(const GameRecord& game, std::string_view player_id) {
    const auto player_side = side_of(game, player_id);
    int64_t contestable = 0, wins = 0, losses = 0;
    for (const auto& e : game.events) {
        if (e.kind != EventKind::kNeutralMonsterKill || !e.objective ||
            !is_neutral_objective(*e.objective))
            continue;
        ++contestable;
        const auto actor_side = side_of(game, e.actor_id);
        if (!actor_side) continue;
        bool both_sides = false;
        for (const auto& a : e.assist_ids) {
            const auto s = side_of(game, a);
            if (s && *s != *actor_side) {
                both_sides = true;
                break;
            }
        }
        if (!both_sides) continue; // uncontested
        if (!player_side || !involves_player(e, player_id)) continue;
        if (*player_side == *actor_side)
            ++wins;
        else
            ++losses;
    }
    if (contestable == 0) return {0.0, 0.0};
    return {static_cast<double>(wins) / static_cast<double>(contestable),
            static_cast<double>(losses) / static_cast<double>(contestable)};
}

int64_t largest_multi_kill(const GameRecord& game, std::string_view player_id, double window_s) {
    if (!(window_s > 0.0)) throw DomainError("largest_multi_kill: window must be > 0");
    std::vector<double> kill_times;
    for (const auto& e : game.events)
        if (e.kind == EventKind::kChampionKill && e.actor_id == player_id)
            kill_times.push_back(e.time);
    int64_t best = 0;
    size_t lo = 0;
    for (size_t hi = 0; hi < kill_times.size(); ++hi) {
        while (kill_times[hi] - kill_times[lo] > window_s) ++lo;
        best = std::max<int64_t>(best, static_cast<int64_t>(hi - lo + 1));
    }
    return best;
}

int64_t largest_killing_spree(const GameRecord& game, std::string_view player_id) {
    int64_t best = 0, run = 0;
    for (const auto& e : game.events) {
        if (e.kind != EventKind::kChampionKill) continue;
        if (e.actor_id == player_id) {
            best = std::max(best, ++run);
        } else if (e.victim_id == player_id) {
            run = 0;
        }
    }
    return best;
}

std::vector<FeatureVector> extract_features(const GameRecord& game, const FeatureConfig& config) {
    const int64_t total_kills = total_game_kills(game);
    std::vector<FeatureVector> out;
    out.reserve(game.lines.size());
    for (const auto& line : game.lines) {
        FeatureVector f;
        f.kla = compute_kla(line.kills, line.deaths, line.assists);
        f.gold_per_min = per_minute(line.gold, game.duration);
        f.xp_per_min = per_minute(line.experience, game.duration);
        f.cs_per_min = per_minute(line.creep_score, game.duration);
        f.wards_per_min = per_minute(line.wards_placed, game.duration);
        f.dmg_dealt_tk_ratio = total_kills_ratio(line.damage_dealt_to_players, total_kills);
        f.dmg_taken_tk_ratio = total_kills_ratio(line.damage_taken_from_players, total_kills);
        // x/0 in a ratio feature yields 0 by contract.
        f.dmg_dealt_per_gold_tk_ratio = line.gold > 0.0 ? f.dmg_dealt_tk_ratio / line.gold : 0.0;
        f.dmg_taken_per_gold_tk_ratio = line.gold > 0.0 ? f.dmg_taken_tk_ratio / line.gold : 0.0;
        f.largest_multi_kill = static_cast<double>(
            largest_multi_kill(game, line.player_id, config.multi_kill_window_s));
        f.largest_killing_spree_tk_ratio = total_kills_ratio(
            static_cast<double>(largest_killing_spree(game, line.player_id)), total_kills);
        const auto flags =
            worthless_death_flags(game, line.player_id, config.worthless_death_window_s);
        if (!flags.empty()) {
            const auto worthless = std::count(flags.begin(), flags.end(), true);
            f.worthless_death_ratio =
                static_cast<double>(worthless) / static_cast<double>(flags.size());
        }
        f.free_kill_ratio =
            free_kill_ratio(game, line.player_id, config.worthless_death_window_s);
        const ContestRates rates = objective_contest_rates(game, line.player_id);
        f.objective_contest_winrate = rates.winrate;
        f.objective_contest_loserate = rates.loserate;
        out.push_back(f);
    }
    return out;
}

} // namespace riftrank

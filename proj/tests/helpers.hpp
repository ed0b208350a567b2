#pragma once

#include <string>
#include <vector>

#include "riftrank/timeparse.hpp"
#include "riftrank/types.hpp"

namespace riftrank::testutil {

// Minimal valid game: ten players B1..B5 / R1..R5, one per role per side,
// flat stat lines, no events unless the test adds them.
inline GameRecord make_game(const std::string& game_id = "G0001",
                            const std::string& timestamp = "2023-05-01T12:00:00Z",
                            const std::string& context_blue = "KR",
                            const std::string& context_red = "KR") {
    GameRecord g;
    g.game_id = game_id;
    g.timestamp = parse_utc_timestamp(timestamp);
    g.duration = 1800.0;
    g.competition_id = "LEAGUE_TEST";
    g.is_inter_context_event = context_blue != context_red;
    g.winner = Side::kBlue;
    for (int side = 0; side < 2; ++side) {
        for (int role = 0; role < kNumRoles; ++role) {
            PlayerLine line;
            line.player_id = (side == 0 ? "B" : "R") + std::to_string(role + 1);
            line.side = side == 0 ? Side::kBlue : Side::kRed;
            line.role = static_cast<Role>(role);
            line.context_id = side == 0 ? context_blue : context_red;
            line.kills = 0;
            line.deaths = 0;
            line.assists = 0;
            line.gold = 9000.0;
            line.experience = 12000.0;
            line.creep_score = 180.0;
            line.wards_placed = 20.0;
            line.damage_dealt_to_players = 15000.0;
            line.damage_taken_from_players = 14000.0;
            g.lines.push_back(std::move(line));
        }
    }
    return g;
}

inline GameEvent kill_event(double time, const std::string& actor, const std::string& victim,
                            std::vector<std::string> assists = {}) {
    GameEvent e;
    e.kind = EventKind::kChampionKill;
    e.time = time;
    e.actor_id = actor;
    e.victim_id = victim;
    e.assist_ids = std::move(assists);
    return e;
}

inline GameEvent objective_event(double time, EventKind kind, ObjectiveTag tag,
                                 const std::string& actor,
                                 std::vector<std::string> assists = {}) {
    GameEvent e;
    e.kind = kind;
    e.time = time;
    e.actor_id = actor;
    e.objective = tag;
    e.assist_ids = std::move(assists);
    return e;
}

// Recomputes line kills/deaths/assists from the events so consistency
// warnings stay quiet.
inline void sync_counts(GameRecord& g) {
    for (auto& line : g.lines) {
        line.kills = 0;
        line.deaths = 0;
        line.assists = 0;
    }
    for (const auto& e : g.events) {
        if (e.kind != EventKind::kChampionKill) continue;
        for (auto& line : g.lines) {
            if (line.player_id == e.actor_id) line.kills += 1;
            if (line.player_id == e.victim_id) line.deaths += 1;
            for (const auto& a : e.assist_ids)
                if (line.player_id == a) line.assists += 1;
        }
    }
}

} // namespace riftrank::testutil

#include "riftrank/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "riftrank/errors.hpp"
#include "riftrank/textio.hpp"
#include "riftrank/timeparse.hpp"

namespace riftrank {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(size_t line_no, const std::string& field, const std::string& message) {
    std::ostringstream os;
    os << "line " << line_no << ": " << field << ": " << message;
    throw ValidationError(os.str());
}

const json& require(const json& obj, const char* key, size_t line_no, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(line_no, path + key, "missing field");
    return *it;
}

std::string get_string(const json& obj, const char* key, size_t line_no, const std::string& path) {
    const json& v = require(obj, key, line_no, path);
    if (!v.is_string()) fail(line_no, path + key, "expected string");
    return v.get<std::string>();
}

double get_number(const json& obj, const char* key, size_t line_no, const std::string& path) {
    const json& v = require(obj, key, line_no, path);
    if (!v.is_number()) fail(line_no, path + key, "expected number");
    return v.get<double>();
}

int64_t get_count(const json& obj, const char* key, size_t line_no, const std::string& path) {
    const json& v = require(obj, key, line_no, path);
    if (!v.is_number_integer() || v.get<int64_t>() < 0)
        fail(line_no, path + key, "expected non-negative integer");
    return v.get<int64_t>();
}

void note_unknown_keys(const json& obj, const std::set<std::string>& known, size_t line_no,
                       const std::string& path, std::vector<std::string>* warnings) {
    if (warnings == nullptr) return;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!known.contains(it.key())) {
            std::ostringstream os;
            os << "line " << line_no << ": " << path << it.key() << ": unknown field ignored";
            warnings->push_back(os.str());
        }
    }
}

PlayerLine parse_line_obj(const json& obj, size_t line_no, const std::string& path,
                          std::vector<std::string>* warnings) {
    if (!obj.is_object()) fail(line_no, path, "expected object");
    PlayerLine p;
    p.player_id = get_string(obj, "player_id", line_no, path);
    p.side = side_from_string(get_string(obj, "side", line_no, path));
    p.role = role_from_string(get_string(obj, "role", line_no, path));
    p.context_id = get_string(obj, "context_id", line_no, path);
    p.kills = get_count(obj, "kills", line_no, path);
    p.deaths = get_count(obj, "deaths", line_no, path);
    p.assists = get_count(obj, "assists", line_no, path);
    p.gold = get_number(obj, "gold", line_no, path);
    p.experience = get_number(obj, "experience", line_no, path);
    p.creep_score = get_number(obj, "creep_score", line_no, path);
    p.wards_placed = get_number(obj, "wards_placed", line_no, path);
    p.damage_dealt_to_players = get_number(obj, "damage_dealt_to_players", line_no, path);
    p.damage_taken_from_players = get_number(obj, "damage_taken_from_players", line_no, path);
    note_unknown_keys(obj,
                      {"player_id", "side", "role", "context_id", "kills", "deaths", "assists",
                       "gold", "experience", "creep_score", "wards_placed",
                       "damage_dealt_to_players", "damage_taken_from_players"},
                      line_no, path, warnings);
    return p;
}

GameEvent parse_event_obj(const json& obj, size_t line_no, const std::string& path,
                          std::vector<std::string>* warnings) {
    if (!obj.is_object()) fail(line_no, path, "expected object");
    GameEvent e;
    e.kind = event_kind_from_string(get_string(obj, "kind", line_no, path));
    e.time = get_number(obj, "time", line_no, path);
    e.actor_id = get_string(obj, "actor_id", line_no, path);
    if (e.kind == EventKind::kChampionKill) {
        e.victim_id = get_string(obj, "victim_id", line_no, path);
    } else {
        e.objective = objective_tag_from_string(get_string(obj, "objective_tag", line_no, path));
    }
    if (auto it = obj.find("assist_ids"); it != obj.end()) {
        if (!it->is_array()) fail(line_no, path + "assist_ids", "expected array");
        for (const auto& a : *it) {
            if (!a.is_string()) fail(line_no, path + "assist_ids", "expected string elements");
            e.assist_ids.push_back(a.get<std::string>());
        }
    }
    note_unknown_keys(obj, {"kind", "time", "actor_id", "victim_id", "assist_ids", "objective_tag"},
                      line_no, path, warnings);
    return e;
}

} // namespace

bool detect_context_change(const std::optional<std::string>& last_context,
                           const std::string& new_context) {
    return last_context.has_value() && *last_context != new_context;
}

void validate_game(const GameRecord& game, std::vector<std::string>* warnings) {
    auto invariant = [&](const std::string& what) {
        throw ValidationError("game " + game.game_id + ": invariant violated: " + what);
    };

    if (game.game_id.empty() || !is_safe_identifier(game.game_id))
        invariant("game_id must be non-empty and use charset [A-Za-z0-9_.:-]");
    if (!(game.duration > 0.0)) invariant("duration > 0");
    if (game.lines.size() != 10) invariant("exactly 10 lines");

    int per_side[2] = {0, 0};
    bool role_seen[2][kNumRoles] = {};
    std::set<std::string> player_ids;
    for (const auto& line : game.lines) {
        if (line.player_id.empty() || !is_safe_identifier(line.player_id))
            invariant("player_id must be non-empty and use charset [A-Za-z0-9_.:-]");
        if (line.context_id.empty() || !is_safe_identifier(line.context_id))
            invariant("context_id must be non-empty and use charset [A-Za-z0-9_.:-]");
        if (!player_ids.insert(line.player_id).second)
            invariant("player ids unique (duplicate " + line.player_id + ")");
        const int s = static_cast<int>(line.side);
        per_side[s] += 1;
        if (role_seen[s][static_cast<int>(line.role)])
            invariant("role unique within side (duplicate " + std::string(to_string(line.role)) +
                      " on " + std::string(to_string(line.side)) + ")");
        role_seen[s][static_cast<int>(line.role)] = true;
        if (line.kills < 0 || line.deaths < 0 || line.assists < 0 || line.gold < 0 ||
            line.experience < 0 || line.creep_score < 0 || line.wards_placed < 0 ||
            line.damage_dealt_to_players < 0 || line.damage_taken_from_players < 0)
            invariant("all counters >= 0 (player " + line.player_id + ")");
    }
    if (per_side[0] != 5 || per_side[1] != 5) invariant("exactly 5 lines per side");

    int64_t event_kills[2] = {0, 0};
    std::map<std::string, int64_t> kills_by, deaths_by;
    for (size_t i = 0; i < game.events.size(); ++i) {
        const GameEvent& e = game.events[i];
        const std::string where = "event " + std::to_string(i);
        if (!(e.time >= 0.0 && e.time <= game.duration))
            invariant(where + ": timestamp within [0, duration]");
        const auto actor_side = side_of(game, e.actor_id);
        if (!actor_side) invariant(where + ": actor_id is a participant");
        for (const auto& a : e.assist_ids) {
            if (a == e.actor_id) invariant(where + ": actor_id not in assist_ids");
            if (!side_of(game, a)) invariant(where + ": assist ids are participants");
        }
        switch (e.kind) {
        case EventKind::kChampionKill: {
            const auto victim_side = side_of(game, e.victim_id);
            if (!victim_side) invariant(where + ": victim_id is a participant");
            if (*victim_side == *actor_side)
                invariant(where + ": victim on opposite side of actor");
            for (const auto& a : e.assist_ids)
                if (*side_of(game, a) != *actor_side)
                    invariant(where + ": champion-kill assists on actor side");
            if (e.objective.has_value()) invariant(where + ": champion kill carries no objective_tag");
            event_kills[static_cast<int>(*actor_side)] += 1;
            kills_by[e.actor_id] += 1;
            deaths_by[e.victim_id] += 1;
            break;
        }
        case EventKind::kBuildingKill:
            if (!e.victim_id.empty()) invariant(where + ": building kill carries no victim_id");
            if (!e.objective || !is_building_objective(*e.objective))
                invariant(where + ": objective_tag in {TOWER, INHIBITOR, NEXUS}");
            break;
        case EventKind::kNeutralMonsterKill:
            if (!e.victim_id.empty()) invariant(where + ": neutral kill carries no victim_id");
            if (!e.objective || is_building_objective(*e.objective))
                invariant(where + ": objective_tag in {DRAKE, HERALD, BARON, OTHER}");
            break;
        }
    }

    if (warnings != nullptr) {
        for (size_t i = 1; i < game.events.size(); ++i)
            if (game.events[i].time < game.events[i - 1].time) {
                warnings->push_back("game " + game.game_id + ": events not in chronological order");
                break;
            }
        for (const auto& line : game.lines) {
            auto k = kills_by.find(line.player_id);
            auto d = deaths_by.find(line.player_id);
            const int64_t ek = k == kills_by.end() ? 0 : k->second;
            const int64_t ed = d == deaths_by.end() ? 0 : d->second;
            if ((ek > 0 || ed > 0 || !game.events.empty()) &&
                (ek != line.kills || ed != line.deaths)) {
                warnings->push_back("game " + game.game_id + ": player " + line.player_id +
                                    ": stat line kills/deaths disagree with events");
                break;
            }
        }
        if (game.is_inter_context_event == is_intra_context(game))
            warnings->push_back("game " + game.game_id +
                                ": is_inter_context_event flag disagrees with player contexts");
    }
}

GameRecord parse_game_line(const std::string& line, size_t line_no,
                           std::vector<std::string>* warnings) {
    json obj;
    try {
        obj = json::parse(line);
    } catch (const json::exception& e) {
        fail(line_no, "<record>", std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) fail(line_no, "<record>", "expected a JSON object");

    GameRecord g;
    g.game_id = get_string(obj, "game_id", line_no, "");
    g.timestamp = parse_utc_timestamp(get_string(obj, "timestamp", line_no, ""));
    g.duration = get_number(obj, "duration", line_no, "");
    g.competition_id = get_string(obj, "competition_id", line_no, "");
    const json& flag = require(obj, "is_inter_context_event", line_no, "");
    if (!flag.is_boolean()) fail(line_no, "is_inter_context_event", "expected boolean");
    g.is_inter_context_event = flag.get<bool>();
    g.winner = side_from_string(get_string(obj, "winner", line_no, ""));

    const json& lines = require(obj, "lines", line_no, "");
    if (!lines.is_array()) fail(line_no, "lines", "expected array");
    for (size_t i = 0; i < lines.size(); ++i)
        g.lines.push_back(
            parse_line_obj(lines[i], line_no, "lines[" + std::to_string(i) + "].", warnings));

    const json& events = require(obj, "events", line_no, "");
    if (!events.is_array()) fail(line_no, "events", "expected array");
    for (size_t i = 0; i < events.size(); ++i)
        g.events.push_back(
            parse_event_obj(events[i], line_no, "events[" + std::to_string(i) + "].", warnings));

    note_unknown_keys(obj,
                      {"game_id", "timestamp", "duration", "competition_id",
                       "is_inter_context_event", "winner", "lines", "events"},
                      line_no, "", warnings);

    try {
        validate_game(g, warnings);
    } catch (const ValidationError& e) {
        fail(line_no, "<record>", e.what());
    }
    // Chronological event order is normalized here; the raw order is not part
    // of the record identity.
    std::stable_sort(g.events.begin(), g.events.end(),
                     [](const GameEvent& a, const GameEvent& b) { return a.time < b.time; });
    return g;
}

std::string serialize_game(const GameRecord& game) {
    json obj;
    obj["game_id"] = game.game_id;
    obj["timestamp"] = format_utc_timestamp(game.timestamp);
    obj["duration"] = game.duration;
    obj["competition_id"] = game.competition_id;
    obj["is_inter_context_event"] = game.is_inter_context_event;
    obj["winner"] = std::string(to_string(game.winner));
    obj["lines"] = json::array();
    for (const auto& p : game.lines) {
        json l;
        l["player_id"] = p.player_id;
        l["side"] = std::string(to_string(p.side));
        l["role"] = std::string(to_string(p.role));
        l["context_id"] = p.context_id;
        l["kills"] = p.kills;
        l["deaths"] = p.deaths;
        l["assists"] = p.assists;
        l["gold"] = p.gold;
        l["experience"] = p.experience;
        l["creep_score"] = p.creep_score;
        l["wards_placed"] = p.wards_placed;
        l["damage_dealt_to_players"] = p.damage_dealt_to_players;
        l["damage_taken_from_players"] = p.damage_taken_from_players;
        obj["lines"].push_back(std::move(l));
    }
    obj["events"] = json::array();
    for (const auto& e : game.events) {
        json ev;
        ev["kind"] = std::string(to_string(e.kind));
        ev["time"] = e.time;
        ev["actor_id"] = e.actor_id;
        if (e.kind == EventKind::kChampionKill) ev["victim_id"] = e.victim_id;
        if (e.objective) ev["objective_tag"] = std::string(to_string(*e.objective));
        ev["assist_ids"] = e.assist_ids;
        obj["events"].push_back(std::move(ev));
    }
    return obj.dump();
}

IngestResult parse_games(std::istream& input, const IngestOptions& options) {
    IngestResult result;
    std::string line;
    size_t line_no = 0;
    std::map<std::string, int64_t> seen; // game_id -> timestamp
    std::vector<std::string> line_warnings;
    while (std::getline(input, line)) {
        ++line_no;
        if (line.empty()) continue;
        line_warnings.clear();
        GameRecord g = parse_game_line(line, line_no, &line_warnings);
        for (const auto& w : line_warnings) {
            if (options.strict) throw ValidationError("strict: " + w);
            result.warnings.push_back({line_no, g.game_id, w});
        }
        auto [it, inserted] = seen.emplace(g.game_id, g.timestamp);
        if (!inserted) {
            std::ostringstream os;
            os << "line " << line_no << ": duplicate game_id " << g.game_id << " (timestamps "
               << format_utc_timestamp(it->second) << " and " << format_utc_timestamp(g.timestamp)
               << ")";
            throw ValidationError(os.str());
        }
        result.games.push_back(std::move(g));
    }
    std::sort(result.games.begin(), result.games.end(),
              [](const GameRecord& a, const GameRecord& b) {
                  return a.timestamp != b.timestamp ? a.timestamp < b.timestamp
                                                    : a.game_id < b.game_id;
              });
    return result;
}

IngestResult parse_games_file(const std::string& path, const IngestOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open games file: " + path);
    return parse_games(in, options);
}

void write_games_file(const std::string& path, const std::vector<GameRecord>& games) {
    std::ostringstream os;
    for (const auto& g : games) os << serialize_game(g) << '\n';
    write_text_file(path, os.str());
}

} // namespace riftrank

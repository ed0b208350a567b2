#include "riftrank/types.hpp"

#include "riftrank/errors.hpp"

namespace riftrank {

std::string_view to_string(Side s) { return s == Side::kBlue ? "BLUE" : "RED"; }

std::string_view to_string(Role r) {
    switch (r) {
    case Role::kTop: return "Top";
    case Role::kJungle: return "Jungle";
    case Role::kMid: return "Mid";
    case Role::kBot: return "Bot";
    case Role::kSupport: return "Support";
    }
    return "?";
}

std::string_view to_string(EventKind k) {
    switch (k) {
    case EventKind::kChampionKill: return "CHAMPION_KILL";
    case EventKind::kBuildingKill: return "BUILDING_KILL";
    case EventKind::kNeutralMonsterKill: return "NEUTRAL_MONSTER_KILL";
    }
    return "?";
}

std::string_view to_string(ObjectiveTag t) {
    switch (t) {
    case ObjectiveTag::kDrake: return "DRAKE";
    case ObjectiveTag::kHerald: return "HERALD";
    case ObjectiveTag::kBaron: return "BARON";
    case ObjectiveTag::kOther: return "OTHER";
    case ObjectiveTag::kTower: return "TOWER";
    case ObjectiveTag::kInhibitor: return "INHIBITOR";
    case ObjectiveTag::kNexus: return "NEXUS";
    }
    return "?";
}

Side side_from_string(std::string_view s) {
    if (s == "BLUE") return Side::kBlue;
    if (s == "RED") return Side::kRed;
    throw ValidationError("side: expected BLUE or RED, got \"" + std::string(s) + "\"");
}

Role role_from_string(std::string_view s) {
    for (Role r : kAllRoles)
        if (s == to_string(r)) return r;
    throw ValidationError("role: expected one of Top/Jungle/Mid/Bot/Support, got \"" +
                          std::string(s) + "\"");
}

EventKind event_kind_from_string(std::string_view s) {
    if (s == "CHAMPION_KILL") return EventKind::kChampionKill;
    if (s == "BUILDING_KILL") return EventKind::kBuildingKill;
    if (s == "NEUTRAL_MONSTER_KILL") return EventKind::kNeutralMonsterKill;
    throw ValidationError("event kind: unknown value \"" + std::string(s) + "\"");
}

ObjectiveTag objective_tag_from_string(std::string_view s) {
    for (ObjectiveTag t : {ObjectiveTag::kDrake, ObjectiveTag::kHerald, ObjectiveTag::kBaron,
                           ObjectiveTag::kOther, ObjectiveTag::kTower, ObjectiveTag::kInhibitor,
                           ObjectiveTag::kNexus}) {
        if (s == to_string(t)) return t;
    }
    throw ValidationError("objective_tag: unknown value \"" + std::string(s) + "\"");
}

std::optional<Side> side_of(const GameRecord& game, std::string_view player_id) {
    for (const auto& line : game.lines)
        if (line.player_id == player_id) return line.side;
    return std::nullopt;
}

bool is_intra_context(const GameRecord& game) {
    for (const auto& line : game.lines)
        if (line.context_id != game.lines.front().context_id) return false;
    return true;
}

const PlayerLine* find_line(const GameRecord& game, std::string_view player_id) {
    for (const auto& line : game.lines)
        if (line.player_id == player_id) return &line;
    return nullptr;
}

} // namespace riftrank

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace riftrank {

enum class Side : uint8_t { kBlue = 0, kRed = 1 };

enum class Role : uint8_t { kTop = 0, kJungle, kMid, kBot, kSupport };
inline constexpr int kNumRoles = 5;
inline constexpr std::array<Role, kNumRoles> kAllRoles = {Role::kTop, Role::kJungle, Role::kMid,
                                                          Role::kBot, Role::kSupport};

enum class EventKind : uint8_t { kChampionKill = 0, kBuildingKill, kNeutralMonsterKill };

// Single tag space for both building and neutral-monster objectives; which
// subset is legal depends on the event kind.
enum class ObjectiveTag : uint8_t { kDrake = 0, kHerald, kBaron, kOther, kTower, kInhibitor, kNexus };

std::string_view to_string(Side s);
std::string_view to_string(Role r);
std::string_view to_string(EventKind k);
std::string_view to_string(ObjectiveTag t);

Side side_from_string(std::string_view s);
Role role_from_string(std::string_view s);
EventKind event_kind_from_string(std::string_view s);
ObjectiveTag objective_tag_from_string(std::string_view s);

inline Side opposite(Side s) { return s == Side::kBlue ? Side::kRed : Side::kBlue; }

inline bool is_neutral_objective(ObjectiveTag t) {
    return t == ObjectiveTag::kDrake || t == ObjectiveTag::kHerald || t == ObjectiveTag::kBaron;
}
inline bool is_building_objective(ObjectiveTag t) {
    return t == ObjectiveTag::kTower || t == ObjectiveTag::kInhibitor || t == ObjectiveTag::kNexus;
}

struct GameEvent {
    EventKind kind = EventKind::kChampionKill;
    double time = 0.0; // seconds into the game
    std::string actor_id;
    std::string victim_id;                 // CHAMPION_KILL only
    std::vector<std::string> assist_ids;
    std::optional<ObjectiveTag> objective; // BUILDING_KILL / NEUTRAL_MONSTER_KILL only

    bool operator==(const GameEvent&) const = default;
};

struct PlayerLine {
    std::string player_id;
    Side side = Side::kBlue;
    Role role = Role::kTop;
    std::string context_id;
    int64_t kills = 0;
    int64_t deaths = 0;
    int64_t assists = 0;
    double gold = 0.0;
    double experience = 0.0;
    double creep_score = 0.0;
    double wards_placed = 0.0;
    double damage_dealt_to_players = 0.0;
    double damage_taken_from_players = 0.0;

    bool operator==(const PlayerLine&) const = default;
};

struct GameRecord {
    std::string game_id;
    int64_t timestamp = 0; // UTC seconds since epoch
    double duration = 0.0; // seconds, > 0
    std::string competition_id;
    bool is_inter_context_event = false; // producer metadata; classification uses contexts
    Side winner = Side::kBlue;
    std::vector<PlayerLine> lines; // exactly 10, one role per side
    std::vector<GameEvent> events; // chronological

    bool operator==(const GameRecord&) const = default;
};

// Side of a participant, or nullopt for ids not in the game.
std::optional<Side> side_of(const GameRecord& game, std::string_view player_id);

// True iff all ten players carry the same context_id.
bool is_intra_context(const GameRecord& game);

const PlayerLine* find_line(const GameRecord& game, std::string_view player_id);

} // namespace riftrank

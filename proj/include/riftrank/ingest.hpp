#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "riftrank/types.hpp"

namespace riftrank {

// Non-fatal findings raised while parsing; `strict` promotes them to errors.
struct IngestWarning {
    size_t line_no = 0;
    std::string game_id;
    std::string message;
};

struct IngestOptions {
    bool strict = false;
};

struct IngestResult {
    std::vector<GameRecord> games; // sorted by (timestamp, game_id)
    std::vector<IngestWarning> warnings;
};

// Parses line-delimited JSON game records, validates every invariant, sorts by
// (timestamp, game_id) and rejects duplicate game_ids. Errors carry the input
// line number and the offending field.
IngestResult parse_games(std::istream& input, const IngestOptions& options = {});
IngestResult parse_games_file(const std::string& path, const IngestOptions& options = {});

// Validates one record in isolation; throws ValidationError naming the invariant.
void validate_game(const GameRecord& game, std::vector<std::string>* warnings = nullptr);

// Canonical single-line JSON for a record; parse(serialize(g)) == g.
std::string serialize_game(const GameRecord& game);
GameRecord parse_game_line(const std::string& line, size_t line_no = 0,
                           std::vector<std::string>* warnings = nullptr);

void write_games_file(const std::string& path, const std::vector<GameRecord>& games);

// True iff the player was seen before with a different context.
// First appearance is not a change.
bool detect_context_change(const std::optional<std::string>& last_context,
                           const std::string& new_context);

} // namespace riftrank

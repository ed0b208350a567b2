#include "riftrank/feature_io.hpp"

#include <sstream>

#include "riftrank/errors.hpp"
#include "riftrank/textio.hpp"

namespace riftrank {

std::vector<FeatureRow> extract_feature_rows(const std::vector<GameRecord>& games,
                                             const FeatureConfig& config) {
    std::vector<FeatureRow> rows;
    rows.reserve(games.size() * 10);
    for (const auto& game : games) {
        const auto features = extract_features(game, config);
        for (size_t i = 0; i < game.lines.size(); ++i) {
            const auto& line = game.lines[i];
            FeatureRow row;
            row.game_id = game.game_id;
            row.player_id = line.player_id;
            row.side = line.side;
            row.role = line.role;
            row.context_id = line.context_id;
            row.win = line.side == game.winner ? 1 : 0;
            row.features = features[i];
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void write_features_csv(const std::string& path, const std::vector<FeatureRow>& rows) {
    std::ostringstream os;
    os << artifact_header("features") << '\n';
    os << "game_id,player_id,side,role,context_id,win";
    for (auto name : feature_names()) os << ',' << name;
    os << '\n';
    for (const auto& row : rows) {
        os << row.game_id << ',' << row.player_id << ',' << to_string(row.side) << ','
           << to_string(row.role) << ',' << row.context_id << ',' << row.win;
        for (double v : row.features.as_span()) os << ',' << fmt_double(v);
        os << '\n';
    }
    write_text_file(path, os.str());
}

std::vector<FeatureRow> read_features_csv(const std::string& path) {
    std::istringstream in(read_text_file(path));
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("features csv: empty file: " + path);
    check_artifact_header(line, "features");
    if (!std::getline(in, line)) throw ValidationError("features csv: missing column header");
    const auto cols = split(line, ',');
    if (cols.size() != 6 + kNumFeatures)
        throw ValidationError("features csv: expected " + std::to_string(6 + kNumFeatures) +
                              " columns, got " + std::to_string(cols.size()));
    for (int i = 0; i < kNumFeatures; ++i)
        if (cols[6 + i] != feature_names()[i])
            throw ValidationError("features csv: column " + std::to_string(6 + i) +
                                  " expected " + std::string(feature_names()[i]) + ", got " +
                                  cols[6 + i]);
    std::vector<FeatureRow> rows;
    size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto parts = split(line, ',');
        if (parts.size() != 6 + kNumFeatures)
            throw ValidationError("features csv line " + std::to_string(line_no) +
                                  ": wrong column count");
        FeatureRow row;
        row.game_id = parts[0];
        row.player_id = parts[1];
        row.side = side_from_string(parts[2]);
        row.role = role_from_string(parts[3]);
        row.context_id = parts[4];
        row.win = static_cast<int>(parse_int(parts[5], "win"));
        if (row.win != 0 && row.win != 1)
            throw ValidationError("features csv line " + std::to_string(line_no) +
                                  ": win must be 0 or 1");
        auto span = row.features.as_span();
        for (int i = 0; i < kNumFeatures; ++i)
            span[i] = parse_double(parts[6 + i], feature_names()[i]);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace riftrank

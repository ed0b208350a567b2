#pragma once

#include <string>
#include <vector>

#include "riftrank/features.hpp"
#include "riftrank/types.hpp"

namespace riftrank {

// One row per (game, player) in the flat columnar features artifact.
struct FeatureRow {
    std::string game_id;
    std::string player_id;
    Side side = Side::kBlue;
    Role role = Role::kTop;
    std::string context_id;
    int win = 0; // player's team won
    FeatureVector features;

    bool operator==(const FeatureRow&) const = default;
};

std::vector<FeatureRow> extract_feature_rows(const std::vector<GameRecord>& games,
                                             const FeatureConfig& config = {});

// CSV with a versioned header line, then a column header row. Column order is
// fixed: game_id,player_id,side,role,context_id,win,<the 15 features>.
void write_features_csv(const std::string& path, const std::vector<FeatureRow>& rows);
std::vector<FeatureRow> read_features_csv(const std::string& path);

} // namespace riftrank

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "riftrank/feature_io.hpp"
#include "riftrank/win_model.hpp"

namespace riftrank {

struct PScoreRecord {
    std::string game_id;
    std::string player_id;
    Role role = Role::kTop;
    double win_prob = 0.5;
    double pscore = 50.0;
    int fold_index = 0;

    bool operator==(const PScoreRecord&) const = default;
};

struct CrossValOptions {
    int k_folds = 5;
    uint64_t seed = 0;
    bool pool_percentile = false; // one transform per role, pooled across folds
    WinModelOptions model;
};

// Seeded fold for a game; both of a game's rows for a role (and in fact all
// ten rows) land in the same fold.
int fold_of_game(std::string_view game_id, uint64_t seed, int k_folds);

// All fitted (role, fold) models from one training run.
struct ModelSet {
    int k_folds = 0;
    uint64_t seed = 0;
    bool pool_percentile = false;
    std::vector<WinModel> models; // index = role * k_folds + fold

    const WinModel& at(Role role, int fold) const;
    WinModel& at(Role role, int fold);
};

struct CrossValResult {
    ModelSet models;
    std::vector<PScoreRecord> pscores; // one per input row, input order
};

// 5-fold-style out-of-fold PScores: per (role, fold) fit standardizer + model
// + percentile transform on the training part, score the held-out part.
// Deterministic given the seed. A training fold with a single class fails
// with the role and fold named.
CrossValResult cross_val_pscores(const std::vector<FeatureRow>& rows,
                                 const CrossValOptions& options);

// Scores rows with a saved model set; the fold is re-derived from the game id
// so training rows receive their out-of-fold score.
std::vector<PScoreRecord> apply_models(const ModelSet& models, const std::vector<FeatureRow>& rows);

} // namespace riftrank

#include "riftrank/cross_validation.hpp"

#include <algorithm>

#include "riftrank/errors.hpp"
#include "riftrank/hashing.hpp"

namespace riftrank {

int fold_of_game(std::string_view game_id, uint64_t seed, int k_folds) {
    if (k_folds < 2) throw DomainError("fold_of_game: k_folds must be >= 2");
    return static_cast<int>(fnv1a64(game_id, seed) % static_cast<uint64_t>(k_folds));
}

const WinModel& ModelSet::at(Role role, int fold) const {
    return models.at(static_cast<size_t>(static_cast<int>(role)) * k_folds +
                     static_cast<size_t>(fold));
}

WinModel& ModelSet::at(Role role, int fold) {
    return models.at(static_cast<size_t>(static_cast<int>(role)) * k_folds +
                     static_cast<size_t>(fold));
}

CrossValResult cross_val_pscores(const std::vector<FeatureRow>& rows,
                                 const CrossValOptions& options) {
    if (options.k_folds < 2) throw DomainError("cross_val_pscores: k_folds must be >= 2");

    CrossValResult result;
    result.models.k_folds = options.k_folds;
    result.models.seed = options.seed;
    result.models.pool_percentile = options.pool_percentile;
    result.models.models.resize(static_cast<size_t>(kNumRoles) * options.k_folds);

    std::vector<int> fold_of_row(rows.size());
    for (size_t i = 0; i < rows.size(); ++i)
        fold_of_row[i] = fold_of_game(rows[i].game_id, options.seed, options.k_folds);

    for (Role role : kAllRoles) {
        // Pooled transform needs all folds' training predictions first.
        std::vector<double> pooled_probs;
        for (int fold = 0; fold < options.k_folds; ++fold) {
            std::vector<FeatureVector> train_x;
            std::vector<int> train_y;
            for (size_t i = 0; i < rows.size(); ++i) {
                if (rows[i].role != role || fold_of_row[i] == fold) continue;
                train_x.push_back(rows[i].features);
                train_y.push_back(rows[i].win);
            }
            WinModel model;
            try {
                model = fit_win_model(role, train_x, train_y, default_sign_constraints(),
                                      options.model);
            } catch (const DomainError& e) {
                throw DomainError("cross_val fold " + std::to_string(fold) + ": " + e.what());
            }
            if (options.pool_percentile) {
                const auto& vals = model.transform.sorted_values();
                pooled_probs.insert(pooled_probs.end(), vals.begin(), vals.end());
            }
            result.models.at(role, fold) = std::move(model);
        }
        if (options.pool_percentile) {
            const auto pooled = PercentileTransform::fit(pooled_probs);
            for (int fold = 0; fold < options.k_folds; ++fold)
                result.models.at(role, fold).transform = pooled;
        }
    }

    result.pscores.reserve(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const WinModel& model = result.models.at(row.role, fold_of_row[i]);
        PScoreRecord rec;
        rec.game_id = row.game_id;
        rec.player_id = row.player_id;
        rec.role = row.role;
        rec.fold_index = fold_of_row[i];
        rec.win_prob = predict_win_prob(model, row.features);
        rec.pscore = model.transform.pscore(rec.win_prob);
        result.pscores.push_back(std::move(rec));
    }
    return result;
}

std::vector<PScoreRecord> apply_models(const ModelSet& models,
                                       const std::vector<FeatureRow>& rows) {
    std::vector<PScoreRecord> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        const int fold = fold_of_game(row.game_id, models.seed, models.k_folds);
        const WinModel& model = models.at(row.role, fold);
        PScoreRecord rec;
        rec.game_id = row.game_id;
        rec.player_id = row.player_id;
        rec.role = row.role;
        rec.fold_index = fold;
        rec.win_prob = predict_win_prob(model, row.features);
        rec.pscore = model.transform.pscore(rec.win_prob);
        out.push_back(std::move(rec));
    }
    return out;
}

} // namespace riftrank

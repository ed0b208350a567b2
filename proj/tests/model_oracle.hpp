#pragma once

#include <string>
#include <vector>

#include "riftrank/feature_io.hpp"
#include "riftrank/logistic.hpp"
#include "riftrank/rng.hpp"

namespace riftrank::testutil {

// Ground-truth logistic world in feature space: x ~ N(0,1)^15, labels drawn
// from sigma(w.x + b). The generating weights are the oracle for recovery and
// calibration checks. Weights respect the default sign constraints.
struct LogisticWorld {
    std::array<double, kNumFeatures> weights{};
    double bias = 0.0;

    static LogisticWorld standard() {
        LogisticWorld w;
        const auto& signs = default_sign_constraints();
        const double magnitudes[kNumFeatures] = {1.2, 0.8, 0.6, 0.5, 0.3, 0.4, 0.2, 0.3,
                                                 0.15, 0.25, 0.2, 0.9, 0.7, 0.5, 0.6};
        for (int j = 0; j < kNumFeatures; ++j)
            w.weights[static_cast<size_t>(j)] =
                magnitudes[j] * static_cast<double>(signs[static_cast<size_t>(j)]);
        w.bias = 0.15;
        return w;
    }

    double prob(const FeatureVector& x) const {
        double z = bias;
        const auto span = x.as_span();
        for (int j = 0; j < kNumFeatures; ++j) z += weights[static_cast<size_t>(j)] * span[j];
        return sigmoid(z);
    }
};

// rows_per_role rows for each of the five roles; two rows share one game id so
// fold stratification is exercised.
inline std::vector<FeatureRow> make_logistic_rows(const LogisticWorld& world, int rows_per_role,
                                                  uint64_t seed) {
    Rng rng(seed);
    std::vector<FeatureRow> rows;
    int game_counter = 0;
    for (Role role : kAllRoles) {
        for (int i = 0; i < rows_per_role; ++i) {
            FeatureRow row;
            if (i % 2 == 0) ++game_counter;
            row.game_id = "SG" + std::to_string(game_counter);
            row.player_id = "SP" + std::to_string(game_counter) + "_" + std::to_string(i % 2);
            row.side = i % 2 == 0 ? Side::kBlue : Side::kRed;
            row.role = role;
            row.context_id = "CTX00";
            auto span = row.features.as_span();
            for (int j = 0; j < kNumFeatures; ++j) span[j] = rng.normal();
            row.win = rng.uniform() < world.prob(row.features) ? 1 : 0;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace riftrank::testutil

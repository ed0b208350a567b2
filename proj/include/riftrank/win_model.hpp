#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "riftrank/features.hpp"
#include "riftrank/logistic.hpp"
#include "riftrank/percentile.hpp"
#include "riftrank/standardize.hpp"

namespace riftrank {

struct WinModelOptions {
    double l2_lambda = 1e-4;
    int max_iterations = 10000;
    double tolerance = 1e-8;
    int min_rows = 50;
};

// Per-role monotone win-probability model: standardizer + sign-constrained
// logistic weights + the percentile transform fitted on training predictions.
struct WinModel {
    Role role = Role::kTop;
    Standardizer standardizer;
    // Full-width (kNumFeatures) views; dropped features carry weight 0.
    Eigen::VectorXd weights = Eigen::VectorXd::Zero(kNumFeatures);
    double bias = 0.0;
    std::array<int, kNumFeatures> sign_constraints{};
    bool converged = false;
    int n_train = 0;
    // Mean of each standardized training column; pins the attribution
    // baseline so that contributions sum exactly to score - mean score.
    Eigen::VectorXd train_std_means = Eigen::VectorXd::Zero(kNumFeatures);
    PercentileTransform transform;

    // Linear score w.x_std + b before the sigmoid.
    double score(const FeatureVector& row) const;
};

// Fits on rows of a single role. Labels in {0,1}; needs >= min_rows rows and
// both classes present. Every fitted weight satisfies its sign constraint
// exactly. The percentile transform is fitted on the training predictions.
WinModel fit_win_model(Role role, const std::vector<FeatureVector>& rows,
                       const std::vector<int>& labels,
                       const std::array<int, kNumFeatures>& sign_constraints,
                       const WinModelOptions& options = {});

// sigma(w.x_std + b), strictly inside (0,1). Throws DomainError naming the
// feature when the row carries a non-finite value.
double predict_win_prob(const WinModel& model, const FeatureVector& row);

struct FeatureContribution {
    std::string name;
    double value = 0.0; // raw feature value
    double contribution = 0.0;
};

// Exact linear attribution: contribution_f = w_f * (x_f_std - train mean of
// x_f_std); the contributions sum to score(row) - mean training score.
// Sorted by |contribution| descending.
std::vector<FeatureContribution> attribute(const WinModel& model, const FeatureVector& row);

double mean_train_score(const WinModel& model);

Eigen::MatrixXd rows_to_matrix(const std::vector<FeatureVector>& rows);

} // namespace riftrank

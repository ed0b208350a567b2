#include "riftrank/win_model.hpp"

#include <algorithm>
#include <cmath>

#include "riftrank/errors.hpp"

namespace riftrank {

Eigen::MatrixXd rows_to_matrix(const std::vector<FeatureVector>& rows) {
    Eigen::MatrixXd X(static_cast<Eigen::Index>(rows.size()), kNumFeatures);
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto span = rows[i].as_span();
        for (int j = 0; j < kNumFeatures; ++j) X(static_cast<Eigen::Index>(i), j) = span[j];
    }
    return X;
}

double WinModel::score(const FeatureVector& row) const {
    const auto span = row.as_span();
    double acc = bias;
    for (int j = 0; j < kNumFeatures; ++j) {
        if (!standardizer.retained[static_cast<size_t>(j)]) continue;
        if (!std::isfinite(span[j]))
            throw DomainError(std::string("predict: non-finite feature ") +
                              std::string(feature_names()[j]));
        const double x_std = (span[j] - standardizer.means[j]) / standardizer.stds[j];
        acc += weights[j] * x_std;
    }
    return acc;
}

WinModel fit_win_model(Role role, const std::vector<FeatureVector>& rows,
                       const std::vector<int>& labels,
                       const std::array<int, kNumFeatures>& sign_constraints,
                       const WinModelOptions& options) {
    if (rows.size() != labels.size()) throw DomainError("fit_win_model: label count mismatch");
    if (static_cast<int>(rows.size()) < options.min_rows)
        throw DomainError("fit_win_model: need at least " + std::to_string(options.min_rows) +
                          " rows, got " + std::to_string(rows.size()));

    WinModel model;
    model.role = role;
    model.sign_constraints = sign_constraints;
    model.n_train = static_cast<int>(rows.size());

    const Eigen::MatrixXd X = rows_to_matrix(rows);
    model.standardizer = fit_standardizer(X);
    const Eigen::MatrixXd Xs = apply_standardizer(model.standardizer, X);

    Eigen::VectorXi y(static_cast<Eigen::Index>(labels.size()));
    for (size_t i = 0; i < labels.size(); ++i) y[static_cast<Eigen::Index>(i)] = labels[i];

    std::vector<int> retained_signs;
    for (int j = 0; j < kNumFeatures; ++j)
        if (model.standardizer.retained[static_cast<size_t>(j)])
            retained_signs.push_back(sign_constraints[static_cast<size_t>(j)]);

    LogisticFitOptions fit_options;
    fit_options.l2_lambda = options.l2_lambda;
    fit_options.max_iterations = options.max_iterations;
    fit_options.tolerance = options.tolerance;
    LogisticFit fit;
    try {
        fit = fit_logistic(Xs, y, retained_signs, fit_options);
    } catch (const DomainError& e) {
        throw DomainError("fit_win_model(" + std::string(to_string(role)) + "): " + e.what());
    }
    model.bias = fit.bias;
    model.converged = fit.converged;

    // Expand back to full feature width.
    Eigen::Index k = 0;
    for (int j = 0; j < kNumFeatures; ++j) {
        if (!model.standardizer.retained[static_cast<size_t>(j)]) continue;
        model.weights[j] = fit.weights[k];
        model.train_std_means[j] = Xs.col(k).mean();
        ++k;
    }

    const Eigen::VectorXd train_probs = predict_logistic(fit, Xs);
    model.transform = PercentileTransform::fit(
        std::span<const double>(train_probs.data(), static_cast<size_t>(train_probs.size())));
    return model;
}

double predict_win_prob(const WinModel& model, const FeatureVector& row) {
    double p = sigmoid(model.score(row));
    return std::min(std::max(p, 1e-15), 1.0 - 1e-15);
}

double mean_train_score(const WinModel& model) {
    double acc = model.bias;
    for (int j = 0; j < kNumFeatures; ++j) acc += model.weights[j] * model.train_std_means[j];
    return acc;
}

std::vector<FeatureContribution> attribute(const WinModel& model, const FeatureVector& row) {
    std::vector<FeatureContribution> out;
    const auto span = row.as_span();
    for (int j = 0; j < kNumFeatures; ++j) {
        FeatureContribution c;
        c.name = std::string(feature_names()[j]);
        c.value = span[j];
        if (model.standardizer.retained[static_cast<size_t>(j)]) {
            const double x_std =
                (span[j] - model.standardizer.means[j]) / model.standardizer.stds[j];
            c.contribution = model.weights[j] * (x_std - model.train_std_means[j]);
        }
        out.push_back(std::move(c));
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::abs(a.contribution) > std::abs(b.contribution);
    });
    return out;
}

} // namespace riftrank

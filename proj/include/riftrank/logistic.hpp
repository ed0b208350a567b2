#pragma once

#include <vector>

#include <Eigen/Core>

namespace riftrank {

struct LogisticFitOptions {
    double l2_lambda = 1e-4;   // on weights only, never the bias
    int max_iterations = 10000;
    double tolerance = 1e-8;   // stop when the loss decrease falls below this
};

struct LogisticFit {
    Eigen::VectorXd weights;
    double bias = 0.0;
    bool converged = false;
    int iterations = 0;
    double final_loss = 0.0;
};

// Projected full-batch gradient descent on the regularized logistic loss
//     L(w, b) = mean_i log(1 + exp(-y_i (x_i.w + b))) + lambda/2 ||w||^2
// with an adaptive step size. sign_constraints[j] in {-1, 0, +1}: after every
// step a weight whose sign violates its constraint is clamped to 0, so the
// iterates stay inside the feasible orthant.
LogisticFit fit_logistic(const Eigen::MatrixXd& X, const Eigen::VectorXi& y,
                         const std::vector<int>& sign_constraints,
                         const LogisticFitOptions& options = {});

double sigmoid(double z);

// p = sigmoid(X w + b), strictly inside (0, 1).
Eigen::VectorXd predict_logistic(const LogisticFit& fit, const Eigen::MatrixXd& X);

} // namespace riftrank

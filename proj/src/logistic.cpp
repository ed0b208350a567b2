#include "riftrank/logistic.hpp"

#include <cmath>

#include "riftrank/errors.hpp"

namespace riftrank {

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

namespace {

// mean log(1 + exp(-s z)) with s = +-1, evaluated stably.
double mean_logistic_loss(const Eigen::VectorXd& z, const Eigen::VectorXi& y) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        const double m = y[i] == 1 ? -z[i] : z[i];
        // log(1 + exp(m)) = max(m, 0) + log1p(exp(-|m|))
        acc += std::max(m, 0.0) + std::log1p(std::exp(-std::abs(m)));
    }
    return acc / static_cast<double>(z.size());
}

void project(Eigen::VectorXd& w, const std::vector<int>& signs) {
    for (Eigen::Index j = 0; j < w.size(); ++j) {
        if (signs[static_cast<size_t>(j)] > 0 && w[j] < 0.0) w[j] = 0.0;
        if (signs[static_cast<size_t>(j)] < 0 && w[j] > 0.0) w[j] = 0.0;
    }
}

} // namespace

LogisticFit fit_logistic(const Eigen::MatrixXd& X, const Eigen::VectorXi& y,
                         const std::vector<int>& sign_constraints,
                         const LogisticFitOptions& options) {
    const Eigen::Index n = X.rows();
    const Eigen::Index d = X.cols();
    if (n == 0) throw DomainError("fit_logistic: no rows");
    if (y.size() != n) throw DomainError("fit_logistic: label count mismatch");
    if (sign_constraints.size() != static_cast<size_t>(d))
        throw DomainError("fit_logistic: constraint count mismatch");
    const int positives = (y.array() == 1).count();
    if (positives == 0 || positives == n)
        throw DomainError("fit_logistic: labels contain a single class");

    LogisticFit fit;
    fit.weights = Eigen::VectorXd::Zero(d);
    fit.bias = 0.0;

    const Eigen::VectorXd yd = y.cast<double>();
    const double inv_n = 1.0 / static_cast<double>(n);

    auto loss_at = [&](const Eigen::VectorXd& w, double b) {
        const Eigen::VectorXd z = X * w + Eigen::VectorXd::Constant(n, b);
        return mean_logistic_loss(z, y) + 0.5 * options.l2_lambda * w.squaredNorm();
    };

    double loss = loss_at(fit.weights, fit.bias);
    double step = 1.0;
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        const Eigen::VectorXd z = X * fit.weights + Eigen::VectorXd::Constant(n, fit.bias);
        Eigen::VectorXd p(n);
        for (Eigen::Index i = 0; i < n; ++i) p[i] = sigmoid(z[i]);
        const Eigen::VectorXd residual = p - yd;
        const Eigen::VectorXd grad_w =
            X.transpose() * residual * inv_n + options.l2_lambda * fit.weights;
        const double grad_b = residual.sum() * inv_n;

        // Backtracking on the projected step.
        Eigen::VectorXd w_new;
        double b_new = 0.0, loss_new = 0.0;
        bool accepted = false;
        for (int halvings = 0; halvings < 60; ++halvings) {
            w_new = fit.weights - step * grad_w;
            project(w_new, sign_constraints);
            b_new = fit.bias - step * grad_b;
            loss_new = loss_at(w_new, b_new);
            if (loss_new <= loss) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            fit.converged = true; // no descent direction left at double precision
            fit.iterations = iter;
            break;
        }
        const double decrease = loss - loss_new;
        fit.weights = std::move(w_new);
        fit.bias = b_new;
        loss = loss_new;
        step *= 1.25;
        fit.iterations = iter + 1;
        if (decrease < options.tolerance) {
            fit.converged = true;
            break;
        }
    }
    fit.final_loss = loss;
    return fit;
}

Eigen::VectorXd predict_logistic(const LogisticFit& fit, const Eigen::MatrixXd& X) {
    Eigen::VectorXd z = X * fit.weights + Eigen::VectorXd::Constant(X.rows(), fit.bias);
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        double p = sigmoid(z[i]);
        // Keep probabilities strictly inside (0, 1).
        p = std::min(std::max(p, 1e-15), 1.0 - 1e-15);
        z[i] = p;
    }
    return z;
}

} // namespace riftrank

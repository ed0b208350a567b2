#include "riftrank/standardize.hpp"

#include <cmath>

#include "riftrank/errors.hpp"

namespace riftrank {

Standardizer fit_standardizer(const Eigen::MatrixXd& X) {
    if (X.rows() < 2) throw DomainError("fit_standardizer: need at least 2 rows");
    Standardizer s;
    const auto n = static_cast<double>(X.rows());
    s.means = X.colwise().mean();
    s.stds.resize(X.cols());
    s.retained.assign(static_cast<size_t>(X.cols()), true);
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        const double var = (X.col(j).array() - s.means[j]).square().sum() / n;
        const double sd = std::sqrt(var);
        s.stds[j] = sd;
        if (!(sd > 0.0)) s.retained[static_cast<size_t>(j)] = false;
    }
    return s;
}

Eigen::VectorXd apply_standardizer(const Standardizer& s, const Eigen::VectorXd& row) {
    if (row.size() != s.means.size())
        throw DomainError("apply_standardizer: row width mismatch");
    Eigen::VectorXd out(s.n_retained());
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < row.size(); ++j) {
        if (!s.retained[static_cast<size_t>(j)]) continue;
        out[k++] = (row[j] - s.means[j]) / s.stds[j];
    }
    return out;
}

Eigen::MatrixXd apply_standardizer(const Standardizer& s, const Eigen::MatrixXd& X) {
    if (X.cols() != s.means.size())
        throw DomainError("apply_standardizer: column count mismatch");
    Eigen::MatrixXd out(X.rows(), s.n_retained());
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        if (!s.retained[static_cast<size_t>(j)]) continue;
        out.col(k++) = (X.col(j).array() - s.means[j]) / s.stds[j];
    }
    return out;
}

} // namespace riftrank

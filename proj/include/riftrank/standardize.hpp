#pragma once

#include <vector>

#include <Eigen/Core>

namespace riftrank {

// Per-column zero-mean/unit-variance transform. Zero-variance columns are
// dropped (retained=false) and keep mean/std for the record.
struct Standardizer {
    Eigen::VectorXd means;
    Eigen::VectorXd stds; // population std; 0 marks a dropped column
    std::vector<bool> retained;

    int n_retained() const {
        int n = 0;
        for (bool r : retained) n += r;
        return n;
    }
};

// Fits on rows of X (n x d), n >= 2. Columns with zero variance are dropped.
Standardizer fit_standardizer(const Eigen::MatrixXd& X);

// Maps a full-width row to the retained standardized coordinates.
Eigen::VectorXd apply_standardizer(const Standardizer& s, const Eigen::VectorXd& row);

// Standardizes a whole matrix; output has n_retained() columns.
Eigen::MatrixXd apply_standardizer(const Standardizer& s, const Eigen::MatrixXd& X);

} // namespace riftrank

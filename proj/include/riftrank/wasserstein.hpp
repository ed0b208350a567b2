#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "riftrank/types.hpp"

namespace riftrank {

// Exact 1-D W1 between the two empirical distributions: the integral of
// |F_a - F_b| over the merged support, equal to the mean absolute difference
// of matched order statistics when the samples have the same size. Symmetric,
// non-negative, and a true metric. Throws DomainError on an empty sample.
double wasserstein_1d(std::span<const double> sample_a, std::span<const double> sample_b);

struct RoleFairness {
    double mean_distance = 0.0;
    // Unordered role pairs actually compared (roles with < 2 players are
    // excluded and reported here).
    std::vector<std::pair<Role, Role>> pairs;
    std::vector<double> distances; // aligned with pairs
    std::vector<Role> excluded;
};

// Mean pairwise W1 of final theta values across roles.
RoleFairness role_fairness(const std::map<Role, std::vector<double>>& thetas_by_role);

} // namespace riftrank

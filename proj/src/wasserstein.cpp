#include "riftrank/wasserstein.hpp"

#include <algorithm>
#include <cmath>

#include "riftrank/errors.hpp"

namespace riftrank {

double wasserstein_1d(std::span<const double> sample_a, std::span<const double> sample_b) {
    if (sample_a.empty() || sample_b.empty())
        throw DomainError("wasserstein_1d: empty sample");
    std::vector<double> a(sample_a.begin(), sample_a.end());
    std::vector<double> b(sample_b.begin(), sample_b.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());

    if (a.size() == b.size()) {
        // Matched order statistics.
        double acc = 0.0;
        for (size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
        return acc / static_cast<double>(a.size());
    }

    // integral |F_a(x) - F_b(x)| dx over the merged sample support.
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    size_t ia = 0, ib = 0;
    double prev = std::min(a.front(), b.front());
    double dist = 0.0;
    while (ia < a.size() || ib < b.size()) {
        double x;
        if (ib == b.size() || (ia < a.size() && a[ia] <= b[ib]))
            x = a[ia];
        else
            x = b[ib];
        dist += std::abs(ia / na - ib / nb) * (x - prev);
        prev = x;
        while (ia < a.size() && a[ia] == x) ++ia;
        while (ib < b.size() && b[ib] == x) ++ib;
    }
    return dist;
}

RoleFairness role_fairness(const std::map<Role, std::vector<double>>& thetas_by_role) {
    RoleFairness out;
    std::vector<Role> included;
    for (const auto& [role, thetas] : thetas_by_role) {
        if (thetas.size() >= 2)
            included.push_back(role);
        else
            out.excluded.push_back(role);
    }
    if (included.size() < 2)
        throw DomainError("role_fairness: need at least 2 roles with >= 2 players each");
    double total = 0.0;
    for (size_t i = 0; i < included.size(); ++i) {
        for (size_t j = i + 1; j < included.size(); ++j) {
            const double d = wasserstein_1d(thetas_by_role.at(included[i]),
                                            thetas_by_role.at(included[j]));
            out.pairs.emplace_back(included[i], included[j]);
            out.distances.push_back(d);
            total += d;
        }
    }
    out.mean_distance = total / static_cast<double>(out.distances.size());
    return out;
}

} // namespace riftrank

#include "riftrank/percentile.hpp"

#include <algorithm>

#include "riftrank/errors.hpp"

namespace riftrank {

PercentileTransform PercentileTransform::fit(std::span<const double> values) {
    if (values.empty()) throw DomainError("PercentileTransform: empty training set");
    PercentileTransform t;
    t.sorted_.assign(values.begin(), values.end());
    std::sort(t.sorted_.begin(), t.sorted_.end());
    t.build_anchors();
    return t;
}

PercentileTransform PercentileTransform::from_sorted(std::vector<double> sorted) {
    if (sorted.empty()) throw DomainError("PercentileTransform: empty training set");
    if (!std::is_sorted(sorted.begin(), sorted.end()))
        throw DomainError("PercentileTransform: values not sorted");
    PercentileTransform t;
    t.sorted_ = std::move(sorted);
    t.build_anchors();
    return t;
}

void PercentileTransform::build_anchors() {
    const double n = static_cast<double>(sorted_.size());
    anchor_values_.clear();
    anchor_scores_.clear();
    size_t i = 0;
    while (i < sorted_.size()) {
        size_t j = i;
        while (j + 1 < sorted_.size() && sorted_[j + 1] == sorted_[i]) ++j;
        // Mean 1-based index of the tie group, midpoint convention.
        const double mean_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        anchor_values_.push_back(sorted_[i]);
        anchor_scores_.push_back(100.0 * (mean_rank - 0.5) / n);
        i = j + 1;
    }
}

double PercentileTransform::pscore(double value) const {
    if (anchor_values_.empty()) throw DomainError("PercentileTransform: not fitted");
    if (value < anchor_values_.front()) return 0.0;
    if (value > anchor_values_.back()) return 100.0;
    const auto it = std::lower_bound(anchor_values_.begin(), anchor_values_.end(), value);
    const size_t hi = static_cast<size_t>(it - anchor_values_.begin());
    if (hi < anchor_values_.size() && anchor_values_[hi] == value) return anchor_scores_[hi];
    // Strictly between two distinct anchors.
    const size_t lo = hi - 1;
    const double span = anchor_values_[hi] - anchor_values_[lo];
    const double frac = (value - anchor_values_[lo]) / span;
    return anchor_scores_[lo] + frac * (anchor_scores_[hi] - anchor_scores_[lo]);
}

} // namespace riftrank

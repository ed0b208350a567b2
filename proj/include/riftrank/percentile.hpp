#pragma once

#include <span>
#include <vector>

namespace riftrank {

// Empirical percentile map learned from training-set predicted probabilities.
// Scores are midpoint ranks: each distinct training value anchors at
// 100 * (mean 1-based index - 0.5) / n, with linear interpolation between
// anchors and clamping to 0 / 100 outside the training range.
class PercentileTransform {
  public:
    PercentileTransform() = default;
    // Throws DomainError when values is empty.
    static PercentileTransform fit(std::span<const double> values);

    double pscore(double value) const;

    const std::vector<double>& sorted_values() const { return sorted_; }
    bool empty() const { return sorted_.empty(); }

    // Rebuilds from an already-sorted vector (artifact loading).
    static PercentileTransform from_sorted(std::vector<double> sorted);

  private:
    std::vector<double> sorted_;
    // Collapsed distinct anchors.
    std::vector<double> anchor_values_;
    std::vector<double> anchor_scores_;

    void build_anchors();
};

} // namespace riftrank

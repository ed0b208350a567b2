#pragma once

#include <span>
#include <vector>

namespace riftrank {

double mean(std::span<const double> xs);
// Population variance (divides by n); the standardizer uses this convention.
double variance(std::span<const double> xs);

// Expected calibration error over equal-width probability bins.
// probs in [0,1], labels in {0,1}; empty bins contribute nothing.
// Throws DomainError on empty input, out-of-range probs, or n_bins < 1.
double expected_calibration_error(std::span<const double> probs, std::span<const int> labels,
                                  int n_bins = 10);

// Kolmogorov-Smirnov distance between a sample and Uniform(lo, hi).
double ks_distance_uniform(std::span<const double> sample, double lo, double hi);

// Spearman rank correlation (average ranks on ties).
double spearman(std::span<const double> xs, std::span<const double> ys);

// Average ranks in [1, n], ties share the mean rank.
std::vector<double> average_ranks(std::span<const double> xs);

} // namespace riftrank

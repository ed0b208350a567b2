#include "riftrank/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "riftrank/errors.hpp"

namespace riftrank {

double mean(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    const double m = mean(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - m) * (x - m);
    return acc / static_cast<double>(xs.size());
}

double expected_calibration_error(std::span<const double> probs, std::span<const int> labels,
                                  int n_bins) {
    if (probs.empty() || probs.size() != labels.size())
        throw DomainError("expected_calibration_error: empty or mismatched inputs");
    if (n_bins < 1) throw DomainError("expected_calibration_error: n_bins must be >= 1");
    for (double p : probs)
        if (!(p >= 0.0 && p <= 1.0))
            throw DomainError("expected_calibration_error: probability outside [0,1]");

    std::vector<double> sum_p(n_bins, 0.0), sum_y(n_bins, 0.0);
    std::vector<int> count(n_bins, 0);
    for (size_t i = 0; i < probs.size(); ++i) {
        int b = static_cast<int>(probs[i] * n_bins);
        if (b == n_bins) b = n_bins - 1; // p == 1.0 into the top bin
        sum_p[b] += probs[i];
        sum_y[b] += labels[i];
        count[b] += 1;
    }
    const double n = static_cast<double>(probs.size());
    double ece = 0.0;
    for (int b = 0; b < n_bins; ++b) {
        if (count[b] == 0) continue;
        const double conf = sum_p[b] / count[b];
        const double freq = sum_y[b] / count[b];
        ece += (count[b] / n) * std::abs(conf - freq);
    }
    return ece;
}

double ks_distance_uniform(std::span<const double> sample, double lo, double hi) {
    if (sample.empty()) throw DomainError("ks_distance_uniform: empty sample");
    if (!(hi > lo)) throw DomainError("ks_distance_uniform: invalid support");
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (size_t i = 0; i < sorted.size(); ++i) {
        const double u = std::clamp((sorted[i] - lo) / (hi - lo), 0.0, 1.0);
        d = std::max(d, std::abs((i + 1) / n - u));
        d = std::max(d, std::abs(u - i / n));
    }
    return d;
}

std::vector<double> average_ranks(std::span<const double> xs) {
    const size_t n = xs.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return xs[a] < xs[b]; });
    std::vector<double> ranks(n, 0.0);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
        const double r = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw DomainError("spearman: need two equally sized samples of length >= 2");
    const auto rx = average_ranks(xs);
    const auto ry = average_ranks(ys);
    const double mx = mean(rx), my = mean(ry);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

} // namespace riftrank

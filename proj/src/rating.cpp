#include "riftrank/rating.hpp"

#include <algorithm>
#include <numeric>

#include "riftrank/errors.hpp"

namespace riftrank {

CombinedRating combine(const Rating& contextual, const Rating& meta) {
    CombinedRating c;
    c.mu = contextual.mu + meta.mu;
    c.sigma = std::sqrt(contextual.sigma * contextual.sigma + meta.sigma * meta.sigma);
    c.theta = c.mu - 3.0 * c.sigma;
    return c;
}

double normal_cdf(double z) {
    // Phi(z) = erfc(-z / sqrt(2)) / 2; |error| < 1e-14 over the double range.
    constexpr double kInvSqrt2 = 0.70710678118654752440;
    return 0.5 * std::erfc(-z * kInvSqrt2);
}

double win_prob_pair(const CombinedRating& a, const CombinedRating& b) {
    const double denom = std::sqrt(a.sigma * a.sigma + b.sigma * b.sigma);
    if (!(denom > 0.0)) throw DomainError("win_prob_pair: zero combined uncertainty");
    return normal_cdf((a.mu - b.mu) / denom);
}

std::vector<std::vector<Rating>> pl_update_teams(const std::vector<PlTeam>& teams,
                                                 const RatingConfig& config) {
    const size_t k = teams.size();
    if (k < 2) throw DomainError("pl_update: need at least 2 teams");
    for (const auto& t : teams) {
        if (t.members.empty()) throw DomainError("pl_update: empty team");
        if (t.rank < 1) throw DomainError("pl_update: ranks must be positive");
        for (const auto& r : t.members)
            if (!std::isfinite(r.mu) || !std::isfinite(r.sigma) || !(r.sigma > 0.0))
                throw DomainError("pl_update: non-finite or non-positive-sigma rating");
    }

    std::vector<double> team_mu(k), team_sigma_sq(k);
    for (size_t i = 0; i < k; ++i) {
        double mu = 0.0, var = 0.0;
        for (const auto& r : teams[i].members) {
            mu += r.mu;
            var += r.sigma * r.sigma;
        }
        team_mu[i] = mu;
        team_sigma_sq[i] = var;
    }

    // c^2 = sum_q (sigma_q^2 + beta^2)
    const double beta_sq = config.beta * config.beta;
    const double c = std::sqrt(std::accumulate(team_sigma_sq.begin(), team_sigma_sq.end(),
                                               static_cast<double>(k) * beta_sq));

    // A_q: number of teams tied at q's rank. sum_q: sum of exp(mu_s / c) over
    // teams ranked at or below q (the candidate set of the rank-q factor).
    std::vector<double> tie_count(k, 0.0), sum_q(k, 0.0);
    std::vector<double> expm(k);
    for (size_t i = 0; i < k; ++i) expm[i] = std::exp(team_mu[i] / c);
    for (size_t q = 0; q < k; ++q) {
        for (size_t s = 0; s < k; ++s) {
            if (teams[s].rank == teams[q].rank) tie_count[q] += 1.0;
            if (teams[s].rank >= teams[q].rank) sum_q[q] += expm[s];
        }
    }

    std::vector<std::vector<Rating>> out(k);
    for (size_t i = 0; i < k; ++i) {
        double omega = 0.0, delta = 0.0;
        for (size_t q = 0; q < k; ++q) {
            if (teams[q].rank > teams[i].rank) continue;
            const double p_iq = expm[i] / sum_q[q];
            delta += p_iq * (1.0 - p_iq) / tie_count[q];
            if (q == i)
                omega += (1.0 - p_iq) / tie_count[q];
            else
                omega -= p_iq / tie_count[q];
        }
        omega *= team_sigma_sq[i] / c;
        const double gamma = std::sqrt(team_sigma_sq[i]) / c;
        delta *= gamma * team_sigma_sq[i] / (c * c);

        out[i].reserve(teams[i].members.size());
        for (const auto& r : teams[i].members) {
            const double share = (r.sigma * r.sigma) / team_sigma_sq[i];
            Rating posterior;
            posterior.mu = r.mu + share * omega;
            posterior.sigma = r.sigma * std::sqrt(std::max(1.0 - share * delta, config.kappa));
            out[i].push_back(posterior);
        }
    }
    return out;
}

std::vector<Rating> pl_update(const std::vector<PlEntry>& entries, const RatingConfig& config) {
    std::vector<PlTeam> teams;
    teams.reserve(entries.size());
    for (const auto& e : entries) teams.push_back({{e.rating}, e.rank});
    const auto updated = pl_update_teams(teams, config);
    std::vector<Rating> out;
    out.reserve(entries.size());
    for (const auto& team : updated) out.push_back(team.front());
    return out;
}

std::vector<int> ranks_from_pscores(std::span<const double> pscores, double tie_epsilon) {
    const size_t n = pscores.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return pscores[a] > pscores[b]; });
    std::vector<int> ranks(n, 1);
    int rank = 0;
    for (size_t pos = 0; pos < n; ++pos) {
        const bool tied_with_prev =
            pos > 0 && std::abs(pscores[order[pos]] - pscores[order[pos - 1]]) <= tie_epsilon;
        if (!tied_with_prev) rank = static_cast<int>(pos) + 1;
        ranks[order[pos]] = rank;
    }
    return ranks;
}

std::vector<Rating> ffa_update(const std::vector<Rating>& ratings,
                               std::span<const double> pscores, const RatingConfig& config) {
    if (ratings.size() != pscores.size())
        throw DomainError("ffa_update: ratings/pscores size mismatch");
    const auto ranks = ranks_from_pscores(pscores, config.tie_epsilon);
    std::vector<PlEntry> entries;
    entries.reserve(ratings.size());
    for (size_t i = 0; i < ratings.size(); ++i) entries.push_back({ratings[i], ranks[i]});
    return pl_update(entries, config);
}

} // namespace riftrank

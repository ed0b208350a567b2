#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace riftrank {

// Gaussian skill belief.
struct Rating {
    double mu = 25.0;
    double sigma = 25.0 / 3.0;

    bool operator==(const Rating&) const = default;
};

struct RatingConfig {
    double mu0 = 25.0;
    double sigma0 = 25.0 / 3.0;
    double beta = 25.0 / 6.0;   // performance noise added per team
    double kappa = 1e-4;        // variance floor factor in the update
    double tie_epsilon = 1e-9;  // PScores closer than this share a rank
};

// Contextual + meta belief combined: mu adds, variances add, theta is the
// conservative lower bound used for ranking.
struct CombinedRating {
    double mu = 0.0;
    double sigma = 0.0;
    double theta = 0.0;
};

CombinedRating combine(const Rating& contextual, const Rating& meta);
inline double lower_bound(const Rating& r) { return r.mu - 3.0 * r.sigma; }

double normal_cdf(double z);

// P(a's true skill exceeds b's) under independent Gaussians.
double win_prob_pair(const CombinedRating& a, const CombinedRating& b);

// One competing entry for the Plackett-Luce update: a team of one or more
// ratings plus its rank (1 = best; equal ranks tie).
struct PlTeam {
    std::vector<Rating> members;
    int rank = 1;
};

// Weng-Lin Bayesian approximation of the Plackett-Luce model over ranked
// teams. Returns posterior ratings in the input order (teams, then members).
// mu moves by the team's surprise at its rank; sigma never increases.
// Throws DomainError on fewer than 2 teams or non-finite inputs.
std::vector<std::vector<Rating>> pl_update_teams(const std::vector<PlTeam>& teams,
                                                 const RatingConfig& config = {});

// Singleton-entry convenience: entries are (rating, rank) pairs.
struct PlEntry {
    Rating rating;
    int rank = 1;
};
std::vector<Rating> pl_update(const std::vector<PlEntry>& entries, const RatingConfig& config = {});

// Competition ranks for a free-for-all ordered by descending pscore; pscores
// within tie_epsilon of their neighbor share a rank.
std::vector<int> ranks_from_pscores(std::span<const double> pscores, double tie_epsilon);

// Free-for-all update: every rating competes as a singleton, ranked by pscore.
std::vector<Rating> ffa_update(const std::vector<Rating>& ratings,
                               std::span<const double> pscores, const RatingConfig& config = {});

} // namespace riftrank

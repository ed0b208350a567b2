#include <doctest.h>

#include <cmath>

#include "pl_oracle.hpp"
#include "riftrank/errors.hpp"
#include "riftrank/rating.hpp"
#include "riftrank/rating_engine.hpp"
#include "riftrank/rng.hpp"

using namespace riftrank;

namespace {

std::vector<PlEntry> random_entries(Rng& rng, size_t n) {
    std::vector<PlEntry> entries;
    for (size_t i = 0; i < n; ++i) {
        PlEntry e;
        e.rating.mu = rng.uniform(0.0, 50.0);
        e.rating.sigma = rng.uniform(0.5, 25.0 / 3.0);
        e.rank = static_cast<int>(rng.uniform_int(n)) + 1; // ties happen naturally
        entries.push_back(e);
    }
    return entries;
}

} // namespace

TEST_CASE("tied identical priors: mu unchanged, sigma shrinks symmetrically") {
    const RatingConfig config;
    std::vector<PlEntry> entries = {{Rating{25.0, 25.0 / 3.0}, 1}, {Rating{25.0, 25.0 / 3.0}, 1}};
    const auto out = pl_update(entries, config);
    CHECK(std::abs(out[0].mu - 25.0) < 1e-9);
    CHECK(std::abs(out[1].mu - 25.0) < 1e-9);
    CHECK(out[0].sigma == doctest::Approx(out[1].sigma));
    // A tie is still information: the uncertainty contracts.
    CHECK(out[0].sigma < 25.0 / 3.0);
}

TEST_CASE("two identical priors ranked 1,2: antisymmetric mu, shrinking sigma") {
    const RatingConfig config;
    std::vector<PlEntry> entries = {{Rating{25.0, 25.0 / 3.0}, 1}, {Rating{25.0, 25.0 / 3.0}, 2}};
    const auto out = pl_update(entries, config);
    const double d_winner = out[0].mu - 25.0;
    const double d_loser = out[1].mu - 25.0;
    CHECK(d_winner > 0.0);
    CHECK(std::abs(d_winner + d_loser) < 1e-9);
    CHECK(out[0].sigma < 25.0 / 3.0);
    CHECK(out[1].sigma < 25.0 / 3.0);
}

TEST_CASE("ten identical priors ranked 1..10: mu strictly decreasing, matches oracle") {
    const RatingConfig config;
    std::vector<PlEntry> entries;
    std::vector<pl_oracle::Entry> oracle_entries;
    for (int i = 0; i < 10; ++i) {
        entries.push_back({Rating{25.0, 25.0 / 3.0}, i + 1});
        oracle_entries.push_back({25.0, 25.0 / 3.0, i + 1});
    }
    const auto out = pl_update(entries, config);
    const auto expected = pl_oracle::update(oracle_entries, config.beta, config.kappa);
    for (int i = 0; i < 10; ++i) {
        CHECK(std::abs(out[static_cast<size_t>(i)].mu - expected[static_cast<size_t>(i)].mu) <
              1e-6);
        CHECK(std::abs(out[static_cast<size_t>(i)].sigma -
                       expected[static_cast<size_t>(i)].sigma) < 1e-6);
        if (i > 0) CHECK(out[static_cast<size_t>(i)].mu < out[static_cast<size_t>(i - 1)].mu);
    }
}

TEST_CASE("pl_update agrees with the independent oracle on random cases") {
    const RatingConfig config;
    Rng rng(20240917);
    for (int trial = 0; trial < 300; ++trial) {
        const size_t n = 2 + rng.uniform_int(9);
        const auto entries = random_entries(rng, n);
        std::vector<pl_oracle::Entry> oracle_entries;
        for (const auto& e : entries) oracle_entries.push_back({e.rating.mu, e.rating.sigma, e.rank});
        const auto ours = pl_update(entries, config);
        const auto expected = pl_oracle::update(oracle_entries, config.beta, config.kappa);
        for (size_t i = 0; i < n; ++i) {
            CHECK(std::abs(ours[i].mu - expected[i].mu) < 1e-6);
            CHECK(std::abs(ours[i].sigma - expected[i].sigma) < 1e-6);
            CHECK(ours[i].sigma <= entries[i].rating.sigma + 1e-12); // never inflates
        }
    }
}

TEST_CASE("unique best never loses mu; unique worst never gains") {
    const RatingConfig config;
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const size_t n = 2 + rng.uniform_int(9);
        auto entries = random_entries(rng, n);
        // Force unique rank-1 and unique worst.
        for (size_t i = 0; i < n; ++i) entries[i].rank = static_cast<int>(i) + 1;
        const auto out = pl_update(entries, config);
        CHECK(out.front().mu >= entries.front().rating.mu - 1e-12);
        CHECK(out.back().mu <= entries.back().rating.mu + 1e-12);
    }
}

TEST_CASE("pl_update input validation") {
    const RatingConfig config;
    CHECK_THROWS_AS(pl_update({{Rating{25.0, 8.0}, 1}}, config), DomainError);
    CHECK_THROWS_AS(
        pl_update({{Rating{std::numeric_limits<double>::quiet_NaN(), 8.0}, 1},
                   {Rating{25.0, 8.0}, 2}},
                   config),
        DomainError);
    CHECK_THROWS_AS(pl_update({{Rating{25.0, -1.0}, 1}, {Rating{25.0, 8.0}, 2}}, config),
                    DomainError);
    CHECK_THROWS_AS(pl_update({{Rating{25.0, 8.0}, 0}, {Rating{25.0, 8.0}, 2}}, config),
                    DomainError);
}

TEST_CASE("ranks_from_pscores groups ties within epsilon") {
    const std::vector<double> pscores = {88.0, 88.0 + 5e-10, 42.0, 17.0, 17.0};
    const auto ranks = ranks_from_pscores(pscores, 1e-9);
    CHECK(ranks[0] == 1);
    CHECK(ranks[1] == 1);
    CHECK(ranks[2] == 3);
    CHECK(ranks[3] == 4);
    CHECK(ranks[4] == 4);
}

TEST_CASE("ffa_update order consistency") {
    const RatingConfig config;
    SUBCASE("all pscores equal leaves every mu unchanged") {
        std::vector<Rating> priors(10, Rating{25.0, 25.0 / 3.0});
        std::vector<double> pscores(10, 50.0);
        const auto out = ffa_update(priors, pscores, config);
        for (const auto& r : out) CHECK(std::abs(r.mu - 25.0) < 1e-9);
    }
    SUBCASE("identical priors: posterior mu order equals pscore order") {
        std::vector<Rating> priors(10, Rating{25.0, 25.0 / 3.0});
        std::vector<double> pscores = {12.0, 93.0, 55.0, 71.0, 3.0, 66.0, 28.0, 99.0, 45.0, 81.0};
        const auto out = ffa_update(priors, pscores, config);
        for (size_t i = 0; i < 10; ++i)
            for (size_t j = 0; j < 10; ++j)
                if (pscores[i] > pscores[j]) CHECK(out[i].mu > out[j].mu);
    }
    SUBCASE("highest pscore gets the largest positive change under equal priors") {
        std::vector<Rating> priors(10, Rating{30.0, 6.0});
        std::vector<double> pscores = {10, 20, 30, 40, 50, 60, 70, 80, 90, 95};
        const auto out = ffa_update(priors, pscores, config);
        double best_change = -1e9;
        size_t best_index = 0;
        for (size_t i = 0; i < 10; ++i) {
            const double change = out[i].mu - priors[i].mu;
            if (change > best_change) {
                best_change = change;
                best_index = i;
            }
        }
        CHECK(best_index == 9);
        CHECK(best_change > 0.0);
    }
}

TEST_CASE("combined rating identities") {
    SUBCASE("fresh player in a fresh context") {
        const auto c = combine(Rating{25.0, 25.0 / 3.0}, Rating{25.0, 25.0 / 3.0});
        CHECK(c.mu == doctest::Approx(50.0));
        CHECK(c.sigma == doctest::Approx(std::sqrt(2.0) * 25.0 / 3.0));
        CHECK(c.theta == doctest::Approx(50.0 - 25.0 * std::sqrt(2.0)));
        CHECK(c.theta == doctest::Approx(14.6446609407));
    }
    SUBCASE("3-4-5 arithmetic") {
        const auto c = combine(Rating{30.0, 3.0}, Rating{40.0, 4.0});
        CHECK(c.mu == doctest::Approx(70.0));
        CHECK(c.sigma == doctest::Approx(5.0));
        CHECK(c.theta == doctest::Approx(55.0));
    }
    SUBCASE("theta rises as sigma falls") {
        const auto loose = combine(Rating{30.0, 5.0}, Rating{40.0, 4.0});
        const auto tight = combine(Rating{30.0, 2.0}, Rating{40.0, 4.0});
        CHECK(tight.theta > loose.theta);
    }
}

TEST_CASE("win_prob_pair") {
    const CombinedRating a{50.0, 5.0, 35.0};
    const CombinedRating b{50.0, 5.0, 35.0};
    CHECK(win_prob_pair(a, b) == doctest::Approx(0.5));

    // mu gap of exactly 3 combined sigmas.
    const CombinedRating hi{50.0 + 3.0 * std::sqrt(50.0), 5.0, 0.0};
    const CombinedRating lo{50.0, 5.0, 0.0};
    CHECK(win_prob_pair(hi, lo) == doctest::Approx(0.9986501020).epsilon(1e-9));

    Rng rng(4);
    for (int i = 0; i < 100; ++i) {
        const CombinedRating x{rng.uniform(0, 100), rng.uniform(0.5, 15), 0.0};
        const CombinedRating y{rng.uniform(0, 100), rng.uniform(0.5, 15), 0.0};
        CHECK(win_prob_pair(x, y) + win_prob_pair(y, x) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("meta_update") {
    const RatingConfig config;
    SUBCASE("zero offsets, identical meta priors: antisymmetric context changes") {
        std::vector<MetaPlayer> players;
        for (int i = 0; i < 10; ++i) {
            MetaPlayer p;
            p.context_id = i < 5 ? "A" : "B";
            p.contextual = Rating{25.0, 25.0 / 3.0}; // theta exactly 0
            p.contextual.mu = 3.0 * p.contextual.sigma;
            p.meta = Rating{25.0, 25.0 / 3.0};
            p.pscore = 100.0 - 10.0 * i;
            players.push_back(p);
        }
        const auto out = meta_update(players, config);
        REQUIRE(out.size() == 2);
        const double da = out.at("A").mu - 25.0;
        const double db = out.at("B").mu - 25.0;
        CHECK(da > 0.0);
        CHECK(std::abs(da + db) < 1e-9);
    }
    SUBCASE("identical per-player updates average to the common value") {
        // All entries identical and tied: each posterior is the same, so the
        // per-context mean must equal that common posterior.
        std::vector<MetaPlayer> players;
        for (int i = 0; i < 10; ++i) {
            MetaPlayer p;
            p.context_id = i < 5 ? "A" : "B";
            p.contextual = Rating{25.0, 25.0 / 3.0};
            p.contextual.mu = 3.0 * p.contextual.sigma; // theta 0
            p.meta = Rating{25.0, 25.0 / 3.0};
            p.pscore = 50.0;
            players.push_back(p);
        }
        const auto out = meta_update(players, config);
        std::vector<PlEntry> entries(10, {Rating{25.0, 25.0 / 3.0}, 1});
        const auto posterior = pl_update(entries, config);
        CHECK(out.at("A").mu == doctest::Approx(posterior[0].mu).epsilon(1e-12));
        CHECK(out.at("A").sigma == doctest::Approx(posterior[0].sigma).epsilon(1e-12));
        CHECK(out.at("B").mu == doctest::Approx(out.at("A").mu));
    }
    SUBCASE("mixed-offsets golden fixture") {
        // 5 players at theta_ctx=+2 (context A), 5 at theta_ctx=-2 (context B),
        // pscores strictly decreasing so ranks are 1..10. Golden values were
        // hand-executed through the oracle's update equations.
        std::vector<MetaPlayer> players;
        std::vector<pl_oracle::Entry> oracle_entries;
        for (int i = 0; i < 10; ++i) {
            MetaPlayer p;
            p.context_id = i < 5 ? "A" : "B";
            const double theta = i < 5 ? 2.0 : -2.0;
            p.contextual = Rating{25.0 + theta, 25.0 / 3.0}; // theta_ctx = mu - 25
            p.meta = Rating{25.0, 25.0 / 3.0};
            p.pscore = 100.0 - 10.0 * i;
            players.push_back(p);
            oracle_entries.push_back({25.0 + theta, 25.0 / 3.0, i + 1});
        }
        const auto out = meta_update(players, config);
        CHECK(out.at("A").mu == doctest::Approx(26.451940888033683).epsilon(1e-12));
        CHECK(out.at("A").sigma == doctest::Approx(8.301852036810462).epsilon(1e-12));
        CHECK(out.at("B").mu == doctest::Approx(23.548059111966321).epsilon(1e-12));
        CHECK(out.at("B").sigma == doctest::Approx(8.230840556311135).epsilon(1e-12));

        // Cross-check the frozen numbers against the oracle end to end.
        const auto posterior = pl_oracle::update(oracle_entries, config.beta, config.kappa);
        double mu_a = 0.0, var_a = 0.0;
        for (int i = 0; i < 5; ++i) {
            mu_a += (posterior[static_cast<size_t>(i)].mu - 2.0) / 5.0;
            var_a += posterior[static_cast<size_t>(i)].sigma *
                     posterior[static_cast<size_t>(i)].sigma / 5.0;
        }
        CHECK(out.at("A").mu == doctest::Approx(mu_a).epsilon(1e-9));
        CHECK(out.at("A").sigma == doctest::Approx(std::sqrt(var_a)).epsilon(1e-9));
    }
    SUBCASE("single-context input is a dispatch bug") {
        std::vector<MetaPlayer> players(10);
        for (auto& p : players) {
            p.context_id = "A";
            p.contextual = Rating{25.0, 25.0 / 3.0};
            p.meta = Rating{25.0, 25.0 / 3.0};
        }
        CHECK_THROWS_AS(meta_update(players, config), DomainError);
    }
}

TEST_CASE("ewma_update") {
    CHECK(ewma_update(std::nullopt, 70.0) == doctest::Approx(70.0));
    CHECK(ewma_update(std::optional<double>(50.0), 100.0, 0.05) == doctest::Approx(52.5));
    double value = 42.0;
    for (int i = 0; i < 50; ++i) value = ewma_update(std::optional<double>(value), 42.0, 0.05);
    CHECK(value == doctest::Approx(42.0));
    CHECK_THROWS_AS(ewma_update(std::nullopt, 50.0, 0.0), DomainError);
    CHECK_THROWS_AS(ewma_update(std::nullopt, 50.0, 1.5), DomainError);
}

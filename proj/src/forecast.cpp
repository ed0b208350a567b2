#include "riftrank/forecast.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Core>

#include "riftrank/errors.hpp"
#include "riftrank/logistic.hpp"
#include "riftrank/rating_engine.hpp"
#include "riftrank/standardize.hpp"
#include "riftrank/stats.hpp"
#include "riftrank/timeparse.hpp"

namespace riftrank {

std::string_view to_string(ForecastScope s) {
    switch (s) {
    case ForecastScope::kAll: return "all";
    case ForecastScope::kIntra: return "intra";
    case ForecastScope::kInter: return "inter";
    }
    return "?";
}

RatingLookup rating_lookup_from_deltas(const std::vector<GameDelta>& deltas,
                                       bool use_theta_after) {
    RatingLookup lookup;
    for (const auto& d : deltas)
        lookup[{d.game_id, d.player_id}] = use_theta_after ? d.theta_after : d.theta_before;
    return lookup;
}

namespace {

struct GameFeatures {
    Eigen::VectorXd x;
    int win = 0; // BLUE won
    bool intra = true;
    int64_t timestamp = 0;
};

GameFeatures featurize(const GameRecord& game, const RatingLookup& ratings,
                       bool role_pair_features) {
    GameFeatures gf;
    gf.win = game.winner == Side::kBlue ? 1 : 0;
    gf.intra = is_intra_context(game);
    gf.timestamp = game.timestamp;
    std::array<double, kNumRoles> blue{}, red{};
    for (const auto& line : game.lines) {
        const auto it = ratings.find({game.game_id, line.player_id});
        if (it == ratings.end())
            throw DomainError("forecast: rating log has no entry for game " + game.game_id +
                              " player " + line.player_id);
        (line.side == Side::kBlue ? blue : red)[static_cast<size_t>(line.role)] = it->second;
    }
    if (role_pair_features) {
        gf.x.resize(kNumRoles);
        for (int r = 0; r < kNumRoles; ++r)
            gf.x[r] = blue[static_cast<size_t>(r)] - red[static_cast<size_t>(r)];
    } else {
        double diff = 0.0;
        for (int r = 0; r < kNumRoles; ++r)
            diff += blue[static_cast<size_t>(r)] - red[static_cast<size_t>(r)];
        gf.x.resize(1);
        gf.x[0] = diff / kNumRoles;
    }
    return gf;
}

void accumulate(std::array<ScopeMetrics, kNumScopes>& scopes,
                std::array<std::vector<double>, kNumScopes>& probs,
                std::array<std::vector<int>, kNumScopes>& labels, const GameFeatures& gf,
                double p) {
    const auto scope_list = {ForecastScope::kAll,
                             gf.intra ? ForecastScope::kIntra : ForecastScope::kInter};
    for (ForecastScope s : scope_list) {
        const int idx = static_cast<int>(s);
        scopes[static_cast<size_t>(idx)].n += 1;
        double credit = 0.5;
        if (p > 0.5) credit = gf.win ? 1.0 : 0.0;
        if (p < 0.5) credit = gf.win ? 0.0 : 1.0;
        scopes[static_cast<size_t>(idx)].accuracy += credit; // normalized later
        probs[static_cast<size_t>(idx)].push_back(p);
        labels[static_cast<size_t>(idx)].push_back(gf.win);
    }
}

void finalize(std::array<ScopeMetrics, kNumScopes>& scopes,
              const std::array<std::vector<double>, kNumScopes>& probs,
              const std::array<std::vector<int>, kNumScopes>& labels, int ece_bins) {
    for (int s = 0; s < kNumScopes; ++s) {
        auto& m = scopes[static_cast<size_t>(s)];
        if (m.n == 0) continue;
        m.accuracy /= static_cast<double>(m.n);
        m.ece = expected_calibration_error(probs[static_cast<size_t>(s)],
                                           labels[static_cast<size_t>(s)], ece_bins);
    }
}

} // namespace

ForecastReport rolling_forecast_eval(const std::vector<GameRecord>& games,
                                     const RatingLookup& rating_before,
                                     const ForecastOptions& options) {
    ForecastReport report;
    if (games.empty()) return report;
    if (options.train_span_s <= 0 || options.test_span_s <= 0)
        throw DomainError("rolling_forecast_eval: spans must be positive");

    std::vector<GameFeatures> rows;
    rows.reserve(games.size());
    for (const auto& g : games) rows.push_back(featurize(g, rating_before, options.role_pair_features));

    std::array<std::vector<double>, kNumScopes> pooled_probs;
    std::array<std::vector<int>, kNumScopes> pooled_labels;

    const int64_t first_ts = rows.front().timestamp;
    const int64_t last_ts = rows.back().timestamp;
    for (int64_t train_start = first_ts;; train_start += options.test_span_s) {
        const int64_t train_end = train_start + options.train_span_s;
        const int64_t test_end = train_end + options.test_span_s;
        if (train_end > last_ts) break;

        ForecastWindowResult window;
        window.train_start = train_start;
        window.train_end = train_end;
        window.test_start = train_end;
        window.test_end = test_end;

        std::vector<const GameFeatures*> train, test;
        for (const auto& row : rows) {
            if (row.timestamp >= train_start && row.timestamp < train_end) train.push_back(&row);
            if (row.timestamp >= train_end && row.timestamp < test_end) test.push_back(&row);
        }
        if (static_cast<int>(train.size()) < options.min_train_games) {
            report.warnings.push_back("window " + format_utc_timestamp(window.test_start) +
                                      ": skipped, only " + std::to_string(train.size()) +
                                      " training games");
            continue;
        }
        if (test.empty()) {
            report.warnings.push_back("window " + format_utc_timestamp(window.test_start) +
                                      ": skipped, empty test window");
            continue;
        }

        const Eigen::Index d = rows.front().x.size();
        Eigen::MatrixXd X(static_cast<Eigen::Index>(train.size()), d);
        Eigen::VectorXi y(static_cast<Eigen::Index>(train.size()));
        for (size_t i = 0; i < train.size(); ++i) {
            X.row(static_cast<Eigen::Index>(i)) = train[i]->x;
            y[static_cast<Eigen::Index>(i)] = train[i]->win;
        }
        const int positives = (y.array() == 1).count();
        if (positives == 0 || positives == static_cast<int>(train.size())) {
            report.warnings.push_back("window " + format_utc_timestamp(window.test_start) +
                                      ": skipped, one-class training outcome");
            continue;
        }

        const Standardizer std_fit = fit_standardizer(X);
        const Eigen::MatrixXd Xs = apply_standardizer(std_fit, X);
        const std::vector<int> free_signs(static_cast<size_t>(Xs.cols()), 0);
        const LogisticFit fit = fit_logistic(Xs, y, free_signs);

        std::array<std::vector<double>, kNumScopes> probs;
        std::array<std::vector<int>, kNumScopes> labels;
        for (const GameFeatures* row : test) {
            const Eigen::VectorXd xs = apply_standardizer(std_fit, row->x);
            double p = sigmoid(fit.weights.dot(xs) + fit.bias);
            accumulate(window.scopes, probs, labels, *row, p);
            accumulate(report.pooled, pooled_probs, pooled_labels, *row, p);
            // pooled metrics normalized at the end
        }
        finalize(window.scopes, probs, labels, options.ece_bins);
        report.windows.push_back(window);
    }

    finalize(report.pooled, pooled_probs, pooled_labels, options.ece_bins);
    return report;
}

} // namespace riftrank

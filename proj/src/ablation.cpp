#include "riftrank/ablation.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "riftrank/errors.hpp"
#include "riftrank/stats.hpp"
#include "riftrank/textio.hpp"

namespace riftrank {

const AblationVariantResult& AblationReport::by_name(const std::string& name) const {
    for (const auto& v : variants)
        if (v.name == name) return v;
    throw DomainError("ablation: unknown variant " + name);
}

std::map<std::string, std::map<std::string, double>>
pscores_by_game(const std::vector<PScoreRecord>& records) {
    std::map<std::string, std::map<std::string, double>> out;
    for (const auto& r : records) out[r.game_id][r.player_id] = r.pscore;
    return out;
}

std::vector<GameDelta> replay_ratings(
    const std::vector<GameRecord>& games,
    const std::map<std::string, std::map<std::string, double>>& pscores, UpdateMode mode,
    RatingVariant variant, const RatingConfig& config, RatingSnapshot* final_snapshot) {
    RatingSystem system(config, mode, variant);
    std::vector<GameDelta> deltas;
    deltas.reserve(games.size() * 10);
    for (const auto& game : games) {
        const std::map<std::string, double>* game_pscores = nullptr;
        if (mode == UpdateMode::kFfa) {
            const auto it = pscores.find(game.game_id);
            if (it == pscores.end())
                throw DomainError("replay: no pscores for game " + game.game_id);
            game_pscores = &it->second;
        }
        auto game_deltas = system.process_game(game, game_pscores);
        deltas.insert(deltas.end(), game_deltas.begin(), game_deltas.end());
    }
    if (final_snapshot != nullptr) *final_snapshot = system.snapshot();
    return deltas;
}

EwmaReplay replay_ewma(const std::vector<GameRecord>& games,
                       const std::map<std::string, std::map<std::string, double>>& pscores,
                       double alpha) {
    EwmaReplay replay;
    for (const auto& game : games) {
        const auto it = pscores.find(game.game_id);
        if (it == pscores.end()) throw DomainError("ewma replay: no pscores for game " + game.game_id);
        for (const auto& line : game.lines) {
            const auto prev = replay.final_values.find(line.player_id);
            replay.before[{game.game_id, line.player_id}] =
                prev == replay.final_values.end() ? 50.0 : prev->second;
            const auto ps = it->second.find(line.player_id);
            if (ps == it->second.end())
                throw DomainError("ewma replay: missing pscore for player " + line.player_id);
            const std::optional<double> prior = prev == replay.final_values.end()
                                                    ? std::nullopt
                                                    : std::optional<double>(prev->second);
            replay.final_values[line.player_id] = ewma_update(prior, ps->second, alpha);
            replay.roles[line.player_id] = line.role; // last seen role is fine for grouping
        }
    }
    return replay;
}

double cross_context_pair_accuracy(const std::map<std::string, double>& rating_by_player,
                                   const std::vector<LatentSkill>& latent) {
    std::vector<const LatentSkill*> known;
    for (const auto& l : latent)
        if (rating_by_player.contains(l.player_id)) known.push_back(&l);
    int64_t total = 0, correct = 0;
    for (size_t i = 0; i < known.size(); ++i) {
        for (size_t j = i + 1; j < known.size(); ++j) {
            if (known[i]->context_id == known[j]->context_id) continue;
            if (known[i]->skill == known[j]->skill) continue;
            const double ri = rating_by_player.at(known[i]->player_id);
            const double rj = rating_by_player.at(known[j]->player_id);
            total += 1;
            if ((ri > rj) == (known[i]->skill > known[j]->skill)) correct += 1;
        }
    }
    if (total == 0) return 0.0;
    return static_cast<double>(correct) / static_cast<double>(total);
}

namespace {

void fill_latent_metrics(AblationVariantResult& result,
                         const std::map<std::string, double>& final_rating,
                         const std::map<std::string, Role>& roles,
                         const std::vector<LatentSkill>* latent) {
    std::map<Role, std::vector<double>> by_role;
    for (const auto& [player_id, rating] : final_rating)
        by_role[roles.at(player_id)].push_back(rating);
    result.fairness_w1 = role_fairness(by_role).mean_distance;

    if (latent == nullptr) return;
    std::vector<double> xs, ys;
    for (const auto& l : *latent) {
        const auto it = final_rating.find(l.player_id);
        if (it == final_rating.end()) continue;
        xs.push_back(it->second);
        ys.push_back(l.skill);
    }
    if (xs.size() >= 2) {
        result.has_latent = true;
        result.spearman_latent = spearman(xs, ys);
        result.cross_context_accuracy = cross_context_pair_accuracy(final_rating, *latent);
    }
}

} // namespace

AblationReport ablation_report(const std::vector<GameRecord>& games,
                               const std::vector<PScoreRecord>& pscores,
                               const std::vector<LatentSkill>* latent,
                               const AblationOptions& options) {
    const auto by_game = pscores_by_game(pscores);
    AblationReport report;

    const std::pair<RatingVariant, UpdateMode> combos[] = {
        {RatingVariant::kPlain, UpdateMode::kFfa},
        {RatingVariant::kPlain, UpdateMode::kTeamOutcome},
        {RatingVariant::kMeta, UpdateMode::kFfa},
        {RatingVariant::kMeta, UpdateMode::kTeamOutcome},
    };
    for (const auto& [variant, mode] : combos) {
        AblationVariantResult result;
        result.name = std::string(to_string(variant)) + "_" + std::string(to_string(mode));
        RatingSnapshot final_snapshot;
        const auto deltas =
            replay_ratings(games, by_game, mode, variant, options.rating, &final_snapshot);
        const auto forecast =
            rolling_forecast_eval(games, rating_lookup_from_deltas(deltas), options.forecast);
        result.forecast = forecast.pooled;

        std::map<std::string, double> final_rating;
        std::map<std::string, Role> roles;
        for (const auto& row : rank_players(final_snapshot)) {
            final_rating[row.player_id] = row.theta;
            roles[row.player_id] = row.role;
        }
        fill_latent_metrics(result, final_rating, roles, latent);
        report.variants.push_back(std::move(result));
    }

    {
        AblationVariantResult result;
        result.name = "ewma";
        const auto replay = replay_ewma(games, by_game, options.ewma_alpha);
        const auto forecast = rolling_forecast_eval(games, replay.before, options.forecast);
        result.forecast = forecast.pooled;
        fill_latent_metrics(result, replay.final_values, replay.roles, latent);
        report.variants.push_back(std::move(result));
    }
    return report;
}

void write_ablation_csv(const std::string& path, const AblationReport& report) {
    std::ostringstream os;
    os << artifact_header("ablation-report") << '\n';
    os << "variant,scope,n,accuracy,ece,fairness_w1,spearman_latent,cross_context_accuracy\n";
    for (const auto& v : report.variants) {
        for (int s = 0; s < kNumScopes; ++s) {
            const auto& m = v.forecast[static_cast<size_t>(s)];
            os << v.name << ',' << to_string(static_cast<ForecastScope>(s)) << ',' << m.n << ','
               << fmt_double(m.accuracy) << ',' << fmt_double(m.ece) << ','
               << fmt_double(v.fairness_w1) << ','
               << (v.has_latent ? fmt_double(v.spearman_latent) : "") << ','
               << (v.has_latent ? fmt_double(v.cross_context_accuracy) : "") << '\n';
        }
    }
    write_text_file(path, os.str());
}

std::string ablation_table(const AblationReport& report) {
    std::ostringstream os;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-12s %8s %8s %8s %8s %9s %9s %9s\n", "variant", "acc_all",
                  "acc_intra", "acc_inter", "ece_all", "fair_w1", "spearman", "xctx_acc");
    os << buf;
    for (const auto& v : report.variants) {
        std::snprintf(buf, sizeof(buf), "%-12s %8.4f %8.4f %8.4f %8.4f %9.4f %9.4f %9.4f\n",
                      v.name.c_str(), v.forecast[0].accuracy, v.forecast[1].accuracy,
                      v.forecast[2].accuracy, v.forecast[0].ece, v.fairness_w1,
                      v.has_latent ? v.spearman_latent : 0.0,
                      v.has_latent ? v.cross_context_accuracy : 0.0);
        os << buf;
    }
    return os.str();
}

} // namespace riftrank

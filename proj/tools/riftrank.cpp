// riftrank command line: one subcommand per pipeline stage plus `run` for the
// whole thing. Exit codes: 0 success, 2 validation failure, 3 stage failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "riftrank/ablation.hpp"
#include "riftrank/config.hpp"
#include "riftrank/errors.hpp"
#include "riftrank/feature_io.hpp"
#include "riftrank/ingest.hpp"
#include "riftrank/model_io.hpp"
#include "riftrank/pipeline.hpp"
#include "riftrank/rating_io.hpp"
#include "riftrank/synthetic.hpp"
#include "riftrank/textio.hpp"
#include "riftrank/timeparse.hpp"

namespace fs = std::filesystem;
using namespace riftrank;

namespace {

struct GlobalFlags {
    std::string config_path;
    int64_t seed = -1; // -1: keep config value
    bool force = false;
    bool quiet = false;
};

PipelineConfig load_config(const GlobalFlags& flags) {
    PipelineConfig config = flags.config_path.empty()
                                ? PipelineConfig::defaults()
                                : PipelineConfig::from_file(flags.config_path);
    if (flags.seed >= 0) {
        config.seed = static_cast<uint64_t>(flags.seed);
        config.synthetic.seed = static_cast<uint64_t>(flags.seed);
    }
    return config;
}

int run_ingest(const GlobalFlags& flags, const std::string& input, const std::string& out,
               bool strict) {
    (void)flags;
    IngestOptions options;
    options.strict = strict;
    const auto result = parse_games_file(input, options);
    for (const auto& w : result.warnings)
        if (!flags.quiet) std::cerr << "[warn] " << w.message << '\n';
    write_games_file(out, result.games);
    if (!flags.quiet)
        std::cout << "ingested " << result.games.size() << " games, " << result.warnings.size()
                  << " warnings -> " << out << '\n';
    return 0;
}

int run_features(const GlobalFlags& flags, const std::string& games_path,
                 const std::string& out) {
    const PipelineConfig config = load_config(flags);
    const auto games = parse_games_file(games_path).games;
    const auto rows = extract_feature_rows(games, config.features);
    write_features_csv(out, rows);
    if (!flags.quiet) std::cout << "wrote " << rows.size() << " feature rows -> " << out << '\n';
    return 0;
}

int run_train(const GlobalFlags& flags, const std::string& features_path, int folds,
              const std::string& out_dir) {
    PipelineConfig config = load_config(flags);
    if (folds > 0) config.k_folds = folds;
    const auto rows = read_features_csv(features_path);
    CrossValOptions cv;
    cv.k_folds = config.k_folds;
    cv.seed = config.seed;
    cv.pool_percentile = config.pool_percentile;
    cv.model = config.model;
    const auto result = cross_val_pscores(rows, cv);
    write_model_dir(out_dir, result.models);
    if (!flags.quiet)
        std::cout << "trained " << result.models.models.size() << " models (k=" << config.k_folds
                  << ", seed=" << config.seed << ") -> " << out_dir << '\n';
    return 0;
}

int run_pscore(const GlobalFlags& flags, const std::string& features_path,
               const std::string& model_dir, const std::string& out) {
    const auto rows = read_features_csv(features_path);
    const auto models = read_model_dir(model_dir);
    const auto records = apply_models(models, rows);
    write_pscores_csv(out, records);
    if (!flags.quiet) std::cout << "wrote " << records.size() << " pscores -> " << out << '\n';
    return 0;
}

int run_rate(const GlobalFlags& flags, const std::string& games_path,
             const std::string& pscores_path, const std::string& mode_str,
             const std::string& variant_str, const std::string& out_dir) {
    PipelineConfig config = load_config(flags);
    if (!mode_str.empty()) config.mode = update_mode_from_string(mode_str);
    if (!variant_str.empty()) config.variant = rating_variant_from_string(variant_str);
    const auto games = parse_games_file(games_path).games;
    std::map<std::string, std::map<std::string, double>> by_game;
    if (config.mode == UpdateMode::kFfa || !pscores_path.empty())
        by_game = pscores_by_game(read_pscores_csv(pscores_path));
    RatingSnapshot snapshot;
    const auto deltas =
        replay_ratings(games, by_game, config.mode, config.variant, config.rating, &snapshot);
    fs::create_directories(out_dir);
    write_delta_log_csv((fs::path(out_dir) / "delta_log.csv").string(), deltas);
    write_snapshot((fs::path(out_dir) / "snapshot.txt").string(), snapshot);
    if (!flags.quiet)
        std::cout << "rated " << games.size() << " games (" << to_string(config.variant) << ", "
                  << to_string(config.mode) << ") -> " << out_dir << '\n';
    return 0;
}

int run_rank(const GlobalFlags& flags, const std::string& snapshot_path, int top,
             const std::string& out) {
    (void)flags;
    const auto snapshot = read_snapshot(snapshot_path);
    auto rows = rank_players(snapshot);
    if (!out.empty()) {
        std::ostringstream os;
        os << artifact_header("leaderboard") << '\n';
        os << "rank,player_id,context_id,role,theta,mu,sigma\n";
        for (const auto& r : rows)
            os << r.rank << ',' << r.player_id << ',' << r.context_id << ',' << to_string(r.role)
               << ',' << fmt_double(r.theta) << ',' << fmt_double(r.mu) << ','
               << fmt_double(r.sigma) << '\n';
        write_text_file(out, os.str());
    }
    std::printf("%5s  %-16s %-8s %-8s %10s\n", "rank", "player", "context", "role", "rating");
    const size_t limit = top > 0 ? std::min<size_t>(rows.size(), static_cast<size_t>(top))
                                 : rows.size();
    for (size_t i = 0; i < limit; ++i)
        std::printf("%5d  %-16s %-8s %-8s %10.2f\n", rows[i].rank, rows[i].player_id.c_str(),
                    rows[i].context_id.c_str(), std::string(to_string(rows[i].role)).c_str(),
                    rows[i].theta);
    return 0;
}

int run_simulate(const GlobalFlags& flags, const std::string& out_dir) {
    const PipelineConfig config = load_config(flags);
    const auto data = generate_synthetic(config.synthetic);
    fs::create_directories(out_dir);
    write_games_file((fs::path(out_dir) / "games.jsonl").string(), data.games);
    write_latent_csv((fs::path(out_dir) / "latent_skills.csv").string(), data.latent);
    if (!flags.quiet)
        std::cout << "simulated " << data.games.size() << " games, " << data.latent.size()
                  << " players -> " << out_dir << '\n';
    return 0;
}

int run_eval_forecast(const GlobalFlags& flags, const std::string& games_path,
                      const std::string& ratings_dir, const std::string& out) {
    const PipelineConfig config = load_config(flags);
    const auto games = parse_games_file(games_path).games;
    const auto deltas = read_delta_log_csv((fs::path(ratings_dir) / "delta_log.csv").string());
    const auto report =
        rolling_forecast_eval(games, rating_lookup_from_deltas(deltas), config.forecast);
    std::ostringstream os;
    os << artifact_header("forecast-report") << '\n';
    os << "window_test_start,window_test_end,scope,n,accuracy,ece\n";
    for (const auto& w : report.windows)
        for (int s = 0; s < kNumScopes; ++s) {
            const auto& m = w.scopes[static_cast<size_t>(s)];
            os << format_utc_timestamp(w.test_start) << ',' << format_utc_timestamp(w.test_end)
               << ',' << to_string(static_cast<ForecastScope>(s)) << ',' << m.n << ','
               << fmt_double(m.accuracy) << ',' << fmt_double(m.ece) << '\n';
        }
    for (int s = 0; s < kNumScopes; ++s) {
        const auto& m = report.pooled[static_cast<size_t>(s)];
        os << "pooled,," << to_string(static_cast<ForecastScope>(s)) << ',' << m.n << ','
           << fmt_double(m.accuracy) << ',' << fmt_double(m.ece) << '\n';
    }
    write_text_file(out, os.str());
    if (!flags.quiet) {
        std::printf("%-6s %8s %10s %10s\n", "scope", "n", "accuracy", "ece");
        for (int s = 0; s < kNumScopes; ++s) {
            const auto& m = report.pooled[static_cast<size_t>(s)];
            std::printf("%-6s %8lld %10.4f %10.4f\n",
                        std::string(to_string(static_cast<ForecastScope>(s))).c_str(),
                        static_cast<long long>(m.n), m.accuracy, m.ece);
        }
        for (const auto& w : report.warnings) std::cerr << "[warn] " << w << '\n';
    }
    return 0;
}

int run_eval_fairness(const GlobalFlags& flags, const std::string& ratings_dir,
                      const std::string& out) {
    const auto snapshot = read_snapshot((fs::path(ratings_dir) / "snapshot.txt").string());
    std::map<Role, std::vector<double>> by_role;
    for (const auto& row : rank_players(snapshot)) by_role[row.role].push_back(row.theta);
    const auto fairness = role_fairness(by_role);
    std::ostringstream os;
    os << artifact_header("fairness-report") << '\n';
    os << "role_a,role_b,wasserstein\n";
    for (size_t i = 0; i < fairness.pairs.size(); ++i)
        os << to_string(fairness.pairs[i].first) << ',' << to_string(fairness.pairs[i].second)
           << ',' << fmt_double(fairness.distances[i]) << '\n';
    os << "mean,," << fmt_double(fairness.mean_distance) << '\n';
    write_text_file(out, os.str());
    if (!flags.quiet)
        std::cout << "mean pairwise Wasserstein across roles: " << fairness.mean_distance << '\n';
    return 0;
}

int run_eval_ablation(const GlobalFlags& flags, const std::string& games_path,
                      const std::string& pscores_path, const std::string& latent_path,
                      const std::string& out) {
    const PipelineConfig config = load_config(flags);
    const auto games = parse_games_file(games_path).games;
    const auto pscores = read_pscores_csv(pscores_path);
    std::vector<LatentSkill> latent;
    if (!latent_path.empty()) latent = read_latent_csv(latent_path);
    AblationOptions options;
    options.rating = config.rating;
    options.forecast = config.forecast;
    options.ewma_alpha = config.ewma_alpha;
    const auto report =
        ablation_report(games, pscores, latent.empty() ? nullptr : &latent, options);
    write_ablation_csv(out, report);
    if (!flags.quiet) std::cout << ablation_table(report);
    return 0;
}

int run_run(const GlobalFlags& flags, const std::string& games_override,
            const std::string& out_override) {
    PipelineConfig config = load_config(flags);
    if (!games_override.empty()) config.games_path = games_override;
    if (!out_override.empty()) config.out_dir = out_override;
    RunOptions options;
    options.force = flags.force;
    options.quiet = flags.quiet;
    const RunResult result = run_pipeline(config, options, std::cout);
    if (result.exit_code != 0) {
        std::cerr << "error: " << result.message << '\n';
    } else if (!flags.quiet) {
        std::cout << "manifest: " << (fs::path(config.out_dir) / "manifest.txt").string()
                  << " (artifacts " << result.manifest.artifacts_sha256().substr(0, 12) << ")\n";
    }
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"player performance scores and skill ratings for 5v5 esports match logs"};
    app.require_subcommand(1);

    GlobalFlags flags;
    app.add_option("--config", flags.config_path, "pipeline config file (INI)");
    app.add_option("--seed", flags.seed, "override every seed in the config");
    app.add_flag("--force", flags.force, "rerun stages even when inputs are unchanged");
    app.add_flag("--quiet", flags.quiet, "suppress progress output");

    // ingest
    auto* ingest = app.add_subcommand("ingest", "validate and sort raw game records");
    std::string in_path, out_path;
    bool strict = false;
    ingest->add_option("--input", in_path, "line-delimited game records")->required();
    ingest->add_option("--out", out_path, "validated output path")->required();
    ingest->add_flag("--strict", strict, "treat warnings as errors");

    // features
    auto* features = app.add_subcommand("features", "compute per-player features");
    std::string f_games, f_out;
    features->add_option("--games", f_games, "validated games file")->required();
    features->add_option("--out", f_out, "features csv path")->required();

    // train
    auto* train = app.add_subcommand("train", "fit per-role win models with cross-validation");
    std::string t_features, t_out;
    int t_folds = 0;
    train->add_option("--features", t_features, "features csv")->required();
    train->add_option("--folds", t_folds, "number of folds (default from config)");
    train->add_option("--out", t_out, "model directory")->required();

    // pscore
    auto* pscore = app.add_subcommand("pscore", "score rows with saved models");
    std::string p_features, p_models, p_out;
    pscore->add_option("--features", p_features, "features csv")->required();
    pscore->add_option("--models", p_models, "model directory")->required();
    pscore->add_option("--out", p_out, "pscores csv path")->required();

    // rate
    auto* rate = app.add_subcommand("rate", "replay skill ratings over a game log");
    std::string r_games, r_pscores, r_mode, r_variant, r_out;
    rate->add_option("--games", r_games, "validated games file")->required();
    rate->add_option("--pscores", r_pscores, "pscores csv (required for ffa mode)");
    rate->add_option("--mode", r_mode, "ffa|team");
    rate->add_option("--variant", r_variant, "plain|meta");
    rate->add_option("--out", r_out, "output directory")->required();

    // rank
    auto* rank = app.add_subcommand("rank", "print a leaderboard from a snapshot");
    std::string k_snapshot, k_out;
    int k_top = 25;
    rank->add_option("--snapshot", k_snapshot, "snapshot file")->required();
    rank->add_option("--top", k_top, "rows to print (0 = all)");
    rank->add_option("--out", k_out, "also write the full leaderboard csv here");

    // eval
    auto* eval = app.add_subcommand("eval", "evaluation harness");
    eval->require_subcommand(1);
    auto* ef = eval->add_subcommand("forecast", "rolling-window outcome forecasting");
    std::string ef_games, ef_ratings, ef_out;
    ef->add_option("--games", ef_games, "validated games file")->required();
    ef->add_option("--ratings", ef_ratings, "ratings directory from `rate`")->required();
    ef->add_option("--out", ef_out, "report path")->required();
    auto* efa = eval->add_subcommand("fairness", "cross-role rating fairness");
    std::string efa_ratings, efa_out;
    efa->add_option("--ratings", efa_ratings, "ratings directory from `rate`")->required();
    efa->add_option("--out", efa_out, "report path")->required();
    auto* eab = eval->add_subcommand("ablation", "compare rating variants and the EWMA baseline");
    std::string eab_games, eab_pscores, eab_latent, eab_out;
    eab->add_option("--games", eab_games, "validated games file")->required();
    eab->add_option("--pscores", eab_pscores, "pscores csv")->required();
    eab->add_option("--latent", eab_latent, "latent skill table (synthetic corpora)");
    eab->add_option("--out", eab_out, "report path")->required();

    // simulate
    auto* simulate = app.add_subcommand("simulate", "generate a synthetic corpus");
    std::string s_out;
    simulate->add_option("--out", s_out, "output directory")->required();

    // run
    auto* run = app.add_subcommand("run", "run the whole pipeline from a config");
    std::string run_games, run_out;
    run->add_option("--games", run_games, "override io.games");
    run->add_option("--out", run_out, "override io.out_dir");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ingest->parsed()) return run_ingest(flags, in_path, out_path, strict);
        if (features->parsed()) return run_features(flags, f_games, f_out);
        if (train->parsed()) return run_train(flags, t_features, t_folds, t_out);
        if (pscore->parsed()) return run_pscore(flags, p_features, p_models, p_out);
        if (rate->parsed()) return run_rate(flags, r_games, r_pscores, r_mode, r_variant, r_out);
        if (rank->parsed()) return run_rank(flags, k_snapshot, k_top, k_out);
        if (simulate->parsed()) return run_simulate(flags, s_out);
        if (eval->parsed()) {
            if (ef->parsed()) return run_eval_forecast(flags, ef_games, ef_ratings, ef_out);
            if (efa->parsed()) return run_eval_fairness(flags, efa_ratings, efa_out);
            if (eab->parsed())
                return run_eval_ablation(flags, eab_games, eab_pscores, eab_latent, eab_out);
        }
        if (run->parsed()) return run_run(flags, run_games, run_out);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

#include "riftrank/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "riftrank/ablation.hpp"
#include "riftrank/errors.hpp"
#include "riftrank/feature_io.hpp"
#include "riftrank/hashing.hpp"
#include "riftrank/ingest.hpp"
#include "riftrank/model_io.hpp"
#include "riftrank/rating_io.hpp"
#include "riftrank/textio.hpp"
#include "riftrank/timeparse.hpp"

namespace riftrank {

namespace fs = std::filesystem;

std::string Manifest::to_text() const {
    std::ostringstream os;
    os << artifact_header("manifest") << '\n';
    os << "config " << config_sha256 << '\n';
    for (const auto& s : stages) os << "stage " << s.name << ' ' << s.status << '\n';
    for (const auto& [stage, row] : inputs) os << "input " << stage << ' ' << row << '\n';
    for (const auto& a : artifacts)
        os << "artifact " << a.stage << ' ' << a.path << ' ' << a.sha256 << ' '
           << (a.stale ? "stale" : "fresh") << '\n';
    return os.str();
}

Manifest Manifest::from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("manifest: empty");
    check_artifact_header(line, "manifest");
    Manifest m;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto p = split(line, ' ');
        if (p[0] == "config" && p.size() == 2) {
            m.config_sha256 = p[1];
        } else if (p[0] == "stage" && p.size() == 3) {
            m.stages.push_back({p[1], p[2]});
        } else if (p[0] == "input" && p.size() == 4) {
            m.inputs.emplace_back(p[1], p[2] + " " + p[3]);
        } else if (p[0] == "artifact" && p.size() == 5) {
            m.artifacts.push_back({p[1], p[2], p[3], p[4] == "stale"});
        } else {
            throw ValidationError("manifest: bad row \"" + line + "\"");
        }
    }
    return m;
}

std::string Manifest::artifacts_sha256() const {
    Sha256 h;
    for (const auto& a : artifacts) {
        h.update(a.path);
        h.update(":");
        h.update(a.sha256);
        h.update("\n");
    }
    return h.hex_digest();
}

namespace {

struct StageContext {
    const PipelineConfig& config;
    const RunOptions& options;
    std::ostream& log;
    fs::path out_dir;
    Manifest manifest;
    Manifest previous; // loaded from an earlier run when present
    bool have_previous = false;

    std::string rel(const fs::path& p) const {
        return fs::relative(p, out_dir).generic_string();
    }
};

std::string hash_or_throw(const fs::path& p) { return sha256_file_hex(p.string()); }

// A stage can be skipped when the previous manifest recorded identical input
// hashes and every recorded output still exists with its recorded hash.
bool can_skip(StageContext& ctx, const std::string& stage,
              const std::vector<std::pair<std::string, std::string>>& inputs) {
    if (ctx.options.force || !ctx.have_previous) return false;
    std::vector<std::pair<std::string, std::string>> prev_inputs;
    for (const auto& [s, row] : ctx.previous.inputs)
        if (s == stage) prev_inputs.emplace_back(s, row);
    std::vector<std::pair<std::string, std::string>> now;
    for (const auto& [path, sha] : inputs) now.emplace_back(stage, path + " " + sha);
    if (prev_inputs != now) return false;
    bool stage_ok = false;
    for (const auto& s : ctx.previous.stages)
        if (s.name == stage && (s.status == "ok" || s.status == "skipped")) stage_ok = true;
    if (!stage_ok) return false;
    for (const auto& a : ctx.previous.artifacts) {
        if (a.stage != stage) continue;
        if (a.stale) return false;
        const fs::path p = ctx.out_dir / a.path;
        if (!fs::exists(p) || hash_or_throw(p) != a.sha256) return false;
    }
    return true;
}

void record_inputs(StageContext& ctx, const std::string& stage,
                   const std::vector<std::pair<std::string, std::string>>& inputs) {
    for (const auto& [path, sha] : inputs) ctx.manifest.inputs.emplace_back(stage, path + " " + sha);
}

void record_outputs(StageContext& ctx, const std::string& stage,
                    const std::vector<fs::path>& outputs, bool stale) {
    for (const auto& p : outputs) {
        if (!fs::exists(p)) continue;
        ctx.manifest.artifacts.push_back({stage, ctx.rel(p), hash_or_throw(p), stale});
    }
}

// Runs one stage with skip detection and failure bookkeeping. Throws
// StageFailure upward after recording partial artifacts as stale.
struct StageFailure {
    std::string stage;
    std::string error;
};

void run_stage(StageContext& ctx, const std::string& name,
               const std::vector<std::pair<std::string, std::string>>& inputs,
               const std::vector<fs::path>& outputs, const std::function<void()>& body) {
    record_inputs(ctx, name, inputs);
    if (can_skip(ctx, name, inputs)) {
        if (!ctx.options.quiet) ctx.log << "[skip] " << name << " (inputs unchanged)\n";
        ctx.manifest.stages.push_back({name, "skipped"});
        record_outputs(ctx, name, outputs, false);
        return;
    }
    if (!ctx.options.quiet) ctx.log << "[run ] " << name << '\n';
    try {
        body();
    } catch (const std::exception& e) {
        ctx.manifest.stages.push_back({name, "failed"});
        record_outputs(ctx, name, outputs, /*stale=*/true);
        throw StageFailure{name, e.what()};
    }
    ctx.manifest.stages.push_back({name, "ok"});
    record_outputs(ctx, name, outputs, false);
}

void write_forecast_report(const std::string& path, const ForecastReport& report) {
    std::ostringstream os;
    os << artifact_header("forecast-report") << '\n';
    os << "window_test_start,window_test_end,scope,n,accuracy,ece\n";
    for (const auto& w : report.windows) {
        for (int s = 0; s < kNumScopes; ++s) {
            const auto& m = w.scopes[static_cast<size_t>(s)];
            os << format_utc_timestamp(w.test_start) << ',' << format_utc_timestamp(w.test_end)
               << ',' << to_string(static_cast<ForecastScope>(s)) << ',' << m.n << ','
               << fmt_double(m.accuracy) << ',' << fmt_double(m.ece) << '\n';
        }
    }
    for (int s = 0; s < kNumScopes; ++s) {
        const auto& m = report.pooled[static_cast<size_t>(s)];
        os << "pooled,," << to_string(static_cast<ForecastScope>(s)) << ',' << m.n << ','
           << fmt_double(m.accuracy) << ',' << fmt_double(m.ece) << '\n';
    }
    for (const auto& w : report.warnings) os << "# warning: " << w << '\n';
    write_text_file(path, os.str());
}

void write_fairness_report(const std::string& path, const RoleFairness& fairness) {
    std::ostringstream os;
    os << artifact_header("fairness-report") << '\n';
    os << "role_a,role_b,wasserstein\n";
    for (size_t i = 0; i < fairness.pairs.size(); ++i)
        os << to_string(fairness.pairs[i].first) << ',' << to_string(fairness.pairs[i].second)
           << ',' << fmt_double(fairness.distances[i]) << '\n';
    os << "mean,," << fmt_double(fairness.mean_distance) << '\n';
    write_text_file(path, os.str());
}

void write_leaderboard_csv(const std::string& path, const std::vector<LeaderboardRow>& rows) {
    std::ostringstream os;
    os << artifact_header("leaderboard") << '\n';
    os << "rank,player_id,context_id,role,theta,mu,sigma\n";
    for (const auto& r : rows)
        os << r.rank << ',' << r.player_id << ',' << r.context_id << ',' << to_string(r.role)
           << ',' << fmt_double(r.theta) << ',' << fmt_double(r.mu) << ',' << fmt_double(r.sigma)
           << '\n';
    write_text_file(path, os.str());
}

} // namespace

RunResult run_pipeline(const PipelineConfig& config, const RunOptions& options,
                       std::ostream& log) {
    RunResult result;
    StageContext ctx{config, options, log, fs::path(config.out_dir), {}, {}, false};

    try {
        config.validate();
        if (config.games_path.empty()) throw ValidationError("config: io.games is required");
        fs::create_directories(ctx.out_dir);
        fs::create_directories(ctx.out_dir / "models");
        fs::create_directories(ctx.out_dir / "ratings");
        fs::create_directories(ctx.out_dir / "eval");
    } catch (const std::exception& e) {
        result.exit_code = 2;
        result.message = e.what();
        return result;
    }

    const std::string config_echo = config.echo();
    const std::string config_hash = sha256_hex(config_echo);
    ctx.manifest.config_sha256 = config_hash;
    write_text_file((ctx.out_dir / "config_echo.ini").string(), config_echo);

    const fs::path manifest_path = ctx.out_dir / "manifest.txt";
    if (fs::exists(manifest_path)) {
        try {
            ctx.previous = Manifest::from_text(read_text_file(manifest_path.string()));
            ctx.have_previous = ctx.previous.config_sha256 == config_hash;
        } catch (const std::exception&) {
            ctx.have_previous = false;
        }
    }

    const fs::path games_out = ctx.out_dir / "games_validated.jsonl";
    const fs::path features_out = ctx.out_dir / "features.csv";
    const fs::path models_dir = ctx.out_dir / "models";
    const fs::path pscores_out = ctx.out_dir / "pscores.csv";
    const fs::path delta_out = ctx.out_dir / "ratings" / "delta_log.csv";
    const fs::path snapshot_out = ctx.out_dir / "ratings" / "snapshot.txt";
    const fs::path leaderboard_out = ctx.out_dir / "leaderboard.csv";
    const fs::path forecast_out = ctx.out_dir / "eval" / "forecast_report.csv";
    const fs::path fairness_out = ctx.out_dir / "eval" / "fairness_report.csv";

    std::vector<fs::path> model_files;
    for (Role role : kAllRoles)
        for (int fold = 0; fold < config.k_folds; ++fold)
            model_files.push_back(models_dir / (std::string(to_string(role)) + "_fold" +
                                                std::to_string(fold) + ".model"));
    std::vector<fs::path> model_outputs = model_files;
    model_outputs.insert(model_outputs.begin(), models_dir / "metadata.txt");

    auto config_input = std::make_pair(std::string("<config>"), config_hash);

    try {
        // ingest
        {
            if (!fs::exists(config.games_path))
                throw ValidationError("input games file does not exist: " + config.games_path);
            const auto input_hash = sha256_file_hex(config.games_path);
            run_stage(ctx, "ingest", {config_input, {config.games_path, input_hash}}, {games_out},
                      [&] {
                          const auto ingested = parse_games_file(config.games_path);
                          for (const auto& w : ingested.warnings)
                              if (!options.quiet) log << "[warn] " << w.message << '\n';
                          if (ingested.games.empty()) throw ValidationError("empty corpus");
                          write_games_file(games_out.string(), ingested.games);
                      });
        }
        const auto games_hash = hash_or_throw(games_out);

        // features
        run_stage(ctx, "features", {config_input, {ctx.rel(games_out), games_hash}},
                  {features_out}, [&] {
                      const auto games = parse_games_file(games_out.string()).games;
                      write_features_csv(features_out.string(),
                                         extract_feature_rows(games, config.features));
                  });
        const auto features_hash = hash_or_throw(features_out);

        // train + out-of-fold pscores
        run_stage(ctx, "train", {config_input, {ctx.rel(features_out), features_hash}},
                  model_outputs, [&] {
                      const auto rows = read_features_csv(features_out.string());
                      CrossValOptions cv;
                      cv.k_folds = config.k_folds;
                      cv.seed = config.seed;
                      cv.pool_percentile = config.pool_percentile;
                      cv.model = config.model;
                      const auto cv_result = cross_val_pscores(rows, cv);
                      write_model_dir(models_dir.string(), cv_result.models);
                  });
        std::vector<std::pair<std::string, std::string>> pscore_inputs = {
            config_input, {ctx.rel(features_out), features_hash}};
        for (const auto& p : model_outputs) pscore_inputs.emplace_back(ctx.rel(p), hash_or_throw(p));

        // pscore
        run_stage(ctx, "pscore", pscore_inputs, {pscores_out}, [&] {
            const auto rows = read_features_csv(features_out.string());
            const auto models = read_model_dir(models_dir.string());
            write_pscores_csv(pscores_out.string(), apply_models(models, rows));
        });
        const auto pscores_hash = hash_or_throw(pscores_out);

        // rate
        run_stage(ctx, "rate",
                  {config_input,
                   {ctx.rel(games_out), games_hash},
                   {ctx.rel(pscores_out), pscores_hash}},
                  {delta_out, snapshot_out}, [&] {
                      const auto games = parse_games_file(games_out.string()).games;
                      const auto pscores = read_pscores_csv(pscores_out.string());
                      RatingSnapshot snapshot;
                      const auto deltas = replay_ratings(games, pscores_by_game(pscores),
                                                         config.mode, config.variant,
                                                         config.rating, &snapshot);
                      write_delta_log_csv(delta_out.string(), deltas);
                      write_snapshot(snapshot_out.string(), snapshot);
                  });
        const auto snapshot_hash = hash_or_throw(snapshot_out);
        const auto delta_hash = hash_or_throw(delta_out);

        // rank
        run_stage(ctx, "rank", {config_input, {ctx.rel(snapshot_out), snapshot_hash}},
                  {leaderboard_out}, [&] {
                      const auto snapshot = read_snapshot(snapshot_out.string());
                      write_leaderboard_csv(leaderboard_out.string(), rank_players(snapshot));
                  });

        // eval
        run_stage(ctx, "eval",
                  {config_input,
                   {ctx.rel(games_out), games_hash},
                   {ctx.rel(delta_out), delta_hash},
                   {ctx.rel(snapshot_out), snapshot_hash}},
                  {forecast_out, fairness_out}, [&] {
                      const auto games = parse_games_file(games_out.string()).games;
                      const auto deltas = read_delta_log_csv(delta_out.string());
                      const auto report = rolling_forecast_eval(
                          games, rating_lookup_from_deltas(deltas), config.forecast);
                      write_forecast_report(forecast_out.string(), report);
                      for (const auto& w : report.warnings)
                          if (!options.quiet) log << "[warn] " << w << '\n';

                      const auto snapshot = read_snapshot(snapshot_out.string());
                      std::map<Role, std::vector<double>> by_role;
                      for (const auto& row : rank_players(snapshot))
                          by_role[row.role].push_back(row.theta);
                      write_fairness_report(fairness_out.string(), role_fairness(by_role));
                  });
    } catch (const StageFailure& f) {
        write_text_file(manifest_path.string(), ctx.manifest.to_text());
        result.manifest = ctx.manifest;
        const bool validation = f.error.find("empty corpus") != std::string::npos;
        result.exit_code = validation ? 2 : 3;
        result.message = "stage " + f.stage + " failed: " + f.error;
        return result;
    } catch (const std::exception& e) {
        write_text_file(manifest_path.string(), ctx.manifest.to_text());
        result.manifest = ctx.manifest;
        result.exit_code = 3;
        result.message = e.what();
        return result;
    }

    write_text_file(manifest_path.string(), ctx.manifest.to_text());
    result.manifest = ctx.manifest;
    result.message = "ok";
    return result;
}

} // namespace riftrank

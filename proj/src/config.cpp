#include "riftrank/config.hpp"

#include <algorithm>
#include <sstream>

#include "riftrank/errors.hpp"
#include "riftrank/textio.hpp"
#include "riftrank/timeparse.hpp"

namespace riftrank {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

} // namespace

IniFile IniFile::parse(const std::string& text) {
    IniFile ini;
    std::istringstream in(text);
    std::string line, section;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const size_t comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ValidationError("config line " + std::to_string(line_no) +
                                      ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(line_no) +
                                  ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ValidationError("config line " + std::to_string(line_no) + ": empty key");
        ini.values_[section + "." + key] = value;
        ini.read_[section + "." + key] = false;
    }
    return ini;
}

bool IniFile::has(const std::string& section, const std::string& key) const {
    return values_.contains(section + "." + key);
}

std::string IniFile::get_string(const std::string& section, const std::string& key,
                                const std::string& fallback) const {
    const auto it = values_.find(section + "." + key);
    if (it == values_.end()) return fallback;
    read_[it->first] = true;
    return it->second;
}

double IniFile::get_double(const std::string& section, const std::string& key,
                           double fallback) const {
    if (!has(section, key)) return fallback;
    return parse_double(get_string(section, key, ""), section + "." + key);
}

int64_t IniFile::get_int(const std::string& section, const std::string& key,
                         int64_t fallback) const {
    if (!has(section, key)) return fallback;
    return parse_int(get_string(section, key, ""), section + "." + key);
}

bool IniFile::get_bool(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get_string(section, key, "");
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ValidationError(section + "." + key + ": expected boolean, got \"" + v + "\"");
}

std::vector<std::string> IniFile::unread_keys() const {
    std::vector<std::string> out;
    for (const auto& [key, read] : read_)
        if (!read) out.push_back(key);
    return out;
}

PipelineConfig PipelineConfig::from_file(const std::string& path) {
    return from_ini(IniFile::parse(read_text_file(path)));
}

PipelineConfig PipelineConfig::from_ini(const IniFile& ini) {
    PipelineConfig c;
    c.games_path = ini.get_string("io", "games", c.games_path);
    c.out_dir = ini.get_string("io", "out_dir", c.out_dir);
    c.seed = static_cast<uint64_t>(ini.get_int("run", "seed", static_cast<int64_t>(c.seed)));

    c.features.worthless_death_window_s = ini.get_double(
        "features", "worthless_death_window_s", c.features.worthless_death_window_s);
    c.features.multi_kill_window_s =
        ini.get_double("features", "multi_kill_window_s", c.features.multi_kill_window_s);

    c.k_folds = static_cast<int>(ini.get_int("model", "k_folds", c.k_folds));
    c.model.l2_lambda = ini.get_double("model", "lambda", c.model.l2_lambda);
    c.model.max_iterations =
        static_cast<int>(ini.get_int("model", "max_iterations", c.model.max_iterations));
    c.model.tolerance = ini.get_double("model", "tolerance", c.model.tolerance);
    c.model.min_rows = static_cast<int>(ini.get_int("model", "min_rows", c.model.min_rows));
    c.pool_percentile = ini.get_bool("model", "pool_percentile", c.pool_percentile);

    c.rating.mu0 = ini.get_double("rating", "mu0", c.rating.mu0);
    c.rating.sigma0 = ini.get_double("rating", "sigma0", c.rating.sigma0);
    c.rating.beta = ini.get_double("rating", "beta", c.rating.beta);
    c.rating.kappa = ini.get_double("rating", "kappa", c.rating.kappa);
    c.rating.tie_epsilon = ini.get_double("rating", "tie_epsilon", c.rating.tie_epsilon);
    c.mode = update_mode_from_string(
        ini.get_string("rating", "mode", std::string(to_string(c.mode))));
    c.variant = rating_variant_from_string(
        ini.get_string("rating", "variant", std::string(to_string(c.variant))));

    c.forecast.train_span_s =
        ini.get_int("eval", "train_span_days", c.forecast.train_span_s / 86400) * 86400;
    c.forecast.test_span_s =
        ini.get_int("eval", "test_span_days", c.forecast.test_span_s / 86400) * 86400;
    c.forecast.min_train_games =
        static_cast<int>(ini.get_int("eval", "min_train_games", c.forecast.min_train_games));
    c.forecast.ece_bins = static_cast<int>(ini.get_int("eval", "ece_bins", c.forecast.ece_bins));
    c.forecast.role_pair_features =
        ini.get_bool("eval", "role_pair_features", c.forecast.role_pair_features);
    c.ewma_alpha = ini.get_double("eval", "ewma_alpha", c.ewma_alpha);

    c.synthetic.n_players =
        static_cast<int>(ini.get_int("simulate", "n_players", c.synthetic.n_players));
    c.synthetic.n_contexts =
        static_cast<int>(ini.get_int("simulate", "n_contexts", c.synthetic.n_contexts));
    c.synthetic.games_per_step =
        static_cast<int>(ini.get_int("simulate", "games_per_step", c.synthetic.games_per_step));
    c.synthetic.steps = static_cast<int>(ini.get_int("simulate", "steps", c.synthetic.steps));
    if (ini.has("simulate", "context_offsets")) {
        c.synthetic.context_offsets.clear();
        for (const auto& part : split(ini.get_string("simulate", "context_offsets", ""), ','))
            c.synthetic.context_offsets.push_back(parse_double(part, "context_offsets"));
    }
    c.synthetic.within_context_spread = ini.get_double("simulate", "within_context_spread",
                                                       c.synthetic.within_context_spread);
    c.synthetic.inter_context_rate =
        ini.get_double("simulate", "inter_context_rate", c.synthetic.inter_context_rate);
    c.synthetic.noise_scale = ini.get_double("simulate", "noise_scale", c.synthetic.noise_scale);
    c.synthetic.performance_noise =
        ini.get_double("simulate", "performance_noise", c.synthetic.performance_noise);
    c.synthetic.migration_rate =
        ini.get_double("simulate", "migration_rate", c.synthetic.migration_rate);
    c.synthetic.seed = static_cast<uint64_t>(
        ini.get_int("simulate", "seed", static_cast<int64_t>(c.seed)));
    if (ini.has("simulate", "start_date"))
        c.synthetic.start_timestamp =
            parse_utc_timestamp(ini.get_string("simulate", "start_date", ""));
    c.synthetic.step_seconds = ini.get_int("simulate", "step_seconds", c.synthetic.step_seconds);

    const auto unknown = ini.unread_keys();
    if (!unknown.empty()) {
        std::string all;
        for (const auto& k : unknown) all += (all.empty() ? "" : ", ") + k;
        throw ValidationError("config: unknown keys: " + all);
    }
    c.validate();
    return c;
}

void PipelineConfig::validate() const {
    auto require = [](bool ok, const std::string& what) {
        if (!ok) throw ValidationError("config: " + what);
    };
    require(k_folds >= 2, "model.k_folds must be >= 2");
    require(model.l2_lambda >= 0.0, "model.lambda must be >= 0");
    require(model.max_iterations > 0, "model.max_iterations must be > 0");
    require(model.tolerance > 0.0, "model.tolerance must be > 0");
    require(model.min_rows >= 2, "model.min_rows must be >= 2");
    require(features.worthless_death_window_s > 0.0,
            "features.worthless_death_window_s must be > 0");
    require(features.multi_kill_window_s > 0.0, "features.multi_kill_window_s must be > 0");
    require(rating.mu0 > 0.0 && rating.sigma0 > 0.0 && rating.beta > 0.0 && rating.kappa > 0.0,
            "rating parameters must be positive");
    require(rating.tie_epsilon >= 0.0, "rating.tie_epsilon must be >= 0");
    require(forecast.train_span_s > 0 && forecast.test_span_s > 0, "eval spans must be positive");
    require(forecast.min_train_games >= 2, "eval.min_train_games must be >= 2");
    require(forecast.ece_bins >= 1, "eval.ece_bins must be >= 1");
    require(ewma_alpha > 0.0 && ewma_alpha <= 1.0, "eval.ewma_alpha must be in (0,1]");
}

std::string PipelineConfig::echo() const {
    std::ostringstream os;
    os << "# riftrank effective-config v1\n";
    os << "[io]\n";
    os << "games = " << games_path << '\n';
    os << "out_dir = " << out_dir << '\n';
    os << "[run]\n";
    os << "seed = " << seed << '\n';
    os << "[features]\n";
    os << "worthless_death_window_s = " << fmt_double(features.worthless_death_window_s) << '\n';
    os << "multi_kill_window_s = " << fmt_double(features.multi_kill_window_s) << '\n';
    os << "[model]\n";
    os << "k_folds = " << k_folds << '\n';
    os << "lambda = " << fmt_double(model.l2_lambda) << '\n';
    os << "max_iterations = " << model.max_iterations << '\n';
    os << "tolerance = " << fmt_double(model.tolerance) << '\n';
    os << "min_rows = " << model.min_rows << '\n';
    os << "pool_percentile = " << (pool_percentile ? "true" : "false") << '\n';
    os << "[rating]\n";
    os << "mu0 = " << fmt_double(rating.mu0) << '\n';
    os << "sigma0 = " << fmt_double(rating.sigma0) << '\n';
    os << "beta = " << fmt_double(rating.beta) << '\n';
    os << "kappa = " << fmt_double(rating.kappa) << '\n';
    os << "tie_epsilon = " << fmt_double(rating.tie_epsilon) << '\n';
    os << "mode = " << to_string(mode) << '\n';
    os << "variant = " << to_string(variant) << '\n';
    os << "[eval]\n";
    os << "train_span_days = " << forecast.train_span_s / 86400 << '\n';
    os << "test_span_days = " << forecast.test_span_s / 86400 << '\n';
    os << "min_train_games = " << forecast.min_train_games << '\n';
    os << "ece_bins = " << forecast.ece_bins << '\n';
    os << "role_pair_features = " << (forecast.role_pair_features ? "true" : "false") << '\n';
    os << "ewma_alpha = " << fmt_double(ewma_alpha) << '\n';
    os << "[simulate]\n";
    os << "n_players = " << synthetic.n_players << '\n';
    os << "n_contexts = " << synthetic.n_contexts << '\n';
    os << "games_per_step = " << synthetic.games_per_step << '\n';
    os << "steps = " << synthetic.steps << '\n';
    os << "context_offsets = ";
    for (size_t i = 0; i < synthetic.context_offsets.size(); ++i)
        os << (i ? "," : "") << fmt_double(synthetic.context_offsets[i]);
    os << '\n';
    os << "within_context_spread = " << fmt_double(synthetic.within_context_spread) << '\n';
    os << "inter_context_rate = " << fmt_double(synthetic.inter_context_rate) << '\n';
    os << "noise_scale = " << fmt_double(synthetic.noise_scale) << '\n';
    os << "performance_noise = " << fmt_double(synthetic.performance_noise) << '\n';
    os << "migration_rate = " << fmt_double(synthetic.migration_rate) << '\n';
    os << "seed = " << synthetic.seed << '\n';
    os << "start_date = " << format_utc_timestamp(synthetic.start_timestamp) << '\n';
    os << "step_seconds = " << synthetic.step_seconds << '\n';
    return os.str();
}

} // namespace riftrank

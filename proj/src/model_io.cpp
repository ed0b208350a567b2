#include "riftrank/model_io.hpp"

#include <filesystem>
#include <sstream>

#include "riftrank/errors.hpp"
#include "riftrank/textio.hpp"

namespace riftrank {

namespace fs = std::filesystem;

namespace {

std::string model_file_name(Role role, int fold) {
    return std::string(to_string(role)) + "_fold" + std::to_string(fold) + ".model";
}

std::string sign_to_string(int s) { return s > 0 ? "+" : (s < 0 ? "-" : "0"); }

int sign_from_string(const std::string& s) {
    if (s == "+") return 1;
    if (s == "-") return -1;
    if (s == "0") return 0;
    throw ValidationError("model artifact: bad sign constraint \"" + s + "\"");
}

void write_model_file(const std::string& path, const WinModel& model) {
    std::ostringstream os;
    os << artifact_header("win-model") << '\n';
    os << "role = " << to_string(model.role) << '\n';
    os << "converged = " << (model.converged ? 1 : 0) << '\n';
    os << "n_train = " << model.n_train << '\n';
    os << "bias = " << fmt_double(model.bias) << '\n';
    for (int j = 0; j < kNumFeatures; ++j) {
        os << "feature " << feature_names()[j] << ' '
           << (model.standardizer.retained[static_cast<size_t>(j)] ? 1 : 0) << ' '
           << fmt_double(model.standardizer.means[j]) << ' '
           << fmt_double(model.standardizer.stds[j]) << ' '
           << sign_to_string(model.sign_constraints[static_cast<size_t>(j)]) << ' '
           << fmt_double(model.weights[j]) << ' ' << fmt_double(model.train_std_means[j]) << '\n';
    }
    const auto& transform = model.transform.sorted_values();
    os << "transform " << transform.size() << '\n';
    for (double v : transform) os << fmt_double(v) << '\n';
    write_text_file(path, os.str());
}

std::string expect_kv(std::istringstream& in, const std::string& key) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("model artifact: truncated before " + key);
    const std::string prefix = key + " = ";
    if (line.rfind(prefix, 0) != 0)
        throw ValidationError("model artifact: expected \"" + key + " = ...\", got \"" + line +
                              "\"");
    return line.substr(prefix.size());
}

WinModel read_model_file(const std::string& path) {
    std::istringstream in(read_text_file(path));
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("model artifact: empty file " + path);
    check_artifact_header(line, "win-model");

    WinModel model;
    model.role = role_from_string(expect_kv(in, "role"));
    model.converged = parse_int(expect_kv(in, "converged"), "converged") != 0;
    model.n_train = static_cast<int>(parse_int(expect_kv(in, "n_train"), "n_train"));
    model.bias = parse_double(expect_kv(in, "bias"), "bias");
    model.standardizer.means.resize(kNumFeatures);
    model.standardizer.stds.resize(kNumFeatures);
    model.standardizer.retained.assign(kNumFeatures, true);
    for (int j = 0; j < kNumFeatures; ++j) {
        if (!std::getline(in, line)) throw ValidationError("model artifact: truncated features");
        const auto parts = split(line, ' ');
        if (parts.size() != 8 || parts[0] != "feature")
            throw ValidationError("model artifact: bad feature line \"" + line + "\"");
        if (parts[1] != feature_names()[j])
            throw ValidationError("model artifact: feature order mismatch at " + parts[1]);
        model.standardizer.retained[static_cast<size_t>(j)] =
            parse_int(parts[2], "retained") != 0;
        model.standardizer.means[j] = parse_double(parts[3], "mean");
        model.standardizer.stds[j] = parse_double(parts[4], "std");
        model.sign_constraints[static_cast<size_t>(j)] = sign_from_string(parts[5]);
        model.weights[j] = parse_double(parts[6], "weight");
        model.train_std_means[j] = parse_double(parts[7], "train_std_mean");
    }
    if (!std::getline(in, line)) throw ValidationError("model artifact: missing transform");
    const auto head = split(line, ' ');
    if (head.size() != 2 || head[0] != "transform")
        throw ValidationError("model artifact: bad transform header \"" + line + "\"");
    const int64_t count = parse_int(head[1], "transform size");
    std::vector<double> values;
    values.reserve(static_cast<size_t>(count));
    for (int64_t i = 0; i < count; ++i) {
        if (!std::getline(in, line)) throw ValidationError("model artifact: truncated transform");
        values.push_back(parse_double(line, "transform value"));
    }
    model.transform = PercentileTransform::from_sorted(std::move(values));
    return model;
}

} // namespace

void write_model_dir(const std::string& dir, const ModelSet& models) {
    fs::create_directories(dir);
    std::ostringstream meta;
    meta << artifact_header("model-set") << '\n';
    meta << "k_folds = " << models.k_folds << '\n';
    meta << "seed = " << models.seed << '\n';
    meta << "pool_percentile = " << (models.pool_percentile ? 1 : 0) << '\n';
    write_text_file((fs::path(dir) / "metadata.txt").string(), meta.str());
    for (Role role : kAllRoles)
        for (int fold = 0; fold < models.k_folds; ++fold)
            write_model_file((fs::path(dir) / model_file_name(role, fold)).string(),
                             models.at(role, fold));
}

ModelSet read_model_dir(const std::string& dir) {
    std::istringstream meta(read_text_file((fs::path(dir) / "metadata.txt").string()));
    std::string line;
    if (!std::getline(meta, line)) throw ValidationError("model-set metadata: empty");
    check_artifact_header(line, "model-set");
    ModelSet set;
    set.k_folds = static_cast<int>(parse_int(expect_kv(meta, "k_folds"), "k_folds"));
    set.seed = static_cast<uint64_t>(parse_int(expect_kv(meta, "seed"), "seed"));
    set.pool_percentile = parse_int(expect_kv(meta, "pool_percentile"), "pool_percentile") != 0;
    if (set.k_folds < 2) throw ValidationError("model-set metadata: k_folds must be >= 2");
    set.models.resize(static_cast<size_t>(kNumRoles) * set.k_folds);
    for (Role role : kAllRoles)
        for (int fold = 0; fold < set.k_folds; ++fold)
            set.at(role, fold) =
                read_model_file((fs::path(dir) / model_file_name(role, fold)).string());
    return set;
}

void write_pscores_csv(const std::string& path, const std::vector<PScoreRecord>& records) {
    std::ostringstream os;
    os << artifact_header("pscores") << '\n';
    os << "game_id,player_id,role,win_prob,pscore,fold_index\n";
    for (const auto& r : records) {
        os << r.game_id << ',' << r.player_id << ',' << to_string(r.role) << ','
           << fmt_double(r.win_prob) << ',' << fmt_double(r.pscore) << ',' << r.fold_index
           << '\n';
    }
    write_text_file(path, os.str());
}

std::vector<PScoreRecord> read_pscores_csv(const std::string& path) {
    std::istringstream in(read_text_file(path));
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("pscores csv: empty file " + path);
    check_artifact_header(line, "pscores");
    if (!std::getline(in, line) || line != "game_id,player_id,role,win_prob,pscore,fold_index")
        throw ValidationError("pscores csv: bad column header");
    std::vector<PScoreRecord> out;
    size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto parts = split(line, ',');
        if (parts.size() != 6)
            throw ValidationError("pscores csv line " + std::to_string(line_no) +
                                  ": wrong column count");
        PScoreRecord r;
        r.game_id = parts[0];
        r.player_id = parts[1];
        r.role = role_from_string(parts[2]);
        r.win_prob = parse_double(parts[3], "win_prob");
        r.pscore = parse_double(parts[4], "pscore");
        r.fold_index = static_cast<int>(parse_int(parts[5], "fold_index"));
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace riftrank

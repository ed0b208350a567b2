#include "riftrank/rating_io.hpp"

#include <sstream>

#include "riftrank/errors.hpp"
#include "riftrank/textio.hpp"
#include "riftrank/timeparse.hpp"

namespace riftrank {

namespace {

constexpr const char* kDeltaColumns =
    "game_id,timestamp,player_id,context_id,updated,sigma_reset,"
    "mu_ctx_before,sigma_ctx_before,mu_ctx_after,sigma_ctx_after,"
    "mu_meta_before,sigma_meta_before,mu_meta_after,sigma_meta_after,"
    "theta_before,theta_after";

} // namespace

void write_delta_log_csv(const std::string& path, const std::vector<GameDelta>& deltas) {
    std::ostringstream os;
    os << artifact_header("delta-log") << '\n' << kDeltaColumns << '\n';
    for (const auto& d : deltas) {
        os << d.game_id << ',' << format_utc_timestamp(d.timestamp) << ',' << d.player_id << ','
           << d.context_id << ',' << (d.meta_updated ? "meta" : "ctx") << ','
           << (d.sigma_reset ? 1 : 0) << ',' << fmt_double(d.ctx_before.mu) << ','
           << fmt_double(d.ctx_before.sigma) << ',' << fmt_double(d.ctx_after.mu) << ','
           << fmt_double(d.ctx_after.sigma) << ',' << fmt_double(d.meta_before.mu) << ','
           << fmt_double(d.meta_before.sigma) << ',' << fmt_double(d.meta_after.mu) << ','
           << fmt_double(d.meta_after.sigma) << ',' << fmt_double(d.theta_before) << ','
           << fmt_double(d.theta_after) << '\n';
    }
    write_text_file(path, os.str());
}

std::vector<GameDelta> read_delta_log_csv(const std::string& path) {
    std::istringstream in(read_text_file(path));
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("delta log: empty file " + path);
    check_artifact_header(line, "delta-log");
    if (!std::getline(in, line) || line != kDeltaColumns)
        throw ValidationError("delta log: bad column header");
    std::vector<GameDelta> out;
    size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto p = split(line, ',');
        if (p.size() != 16)
            throw ValidationError("delta log line " + std::to_string(line_no) +
                                  ": wrong column count");
        GameDelta d;
        d.game_id = p[0];
        d.timestamp = parse_utc_timestamp(p[1]);
        d.player_id = p[2];
        d.context_id = p[3];
        if (p[4] == "meta")
            d.meta_updated = true;
        else if (p[4] == "ctx")
            d.meta_updated = false;
        else
            throw ValidationError("delta log line " + std::to_string(line_no) +
                                  ": updated must be ctx or meta");
        d.sigma_reset = parse_int(p[5], "sigma_reset") != 0;
        d.ctx_before = {parse_double(p[6], "mu_ctx_before"), parse_double(p[7], "sigma_ctx_before")};
        d.ctx_after = {parse_double(p[8], "mu_ctx_after"), parse_double(p[9], "sigma_ctx_after")};
        d.meta_before = {parse_double(p[10], "mu_meta_before"),
                         parse_double(p[11], "sigma_meta_before")};
        d.meta_after = {parse_double(p[12], "mu_meta_after"),
                        parse_double(p[13], "sigma_meta_after")};
        d.theta_before = parse_double(p[14], "theta_before");
        d.theta_after = parse_double(p[15], "theta_after");
        out.push_back(std::move(d));
    }
    return out;
}

void write_snapshot(const std::string& path, const RatingSnapshot& snapshot) {
    std::ostringstream os;
    os << artifact_header("snapshot") << '\n';
    os << "variant = " << to_string(snapshot.variant) << '\n';
    os << "mode = " << to_string(snapshot.mode) << '\n';
    os << "mu0 = " << fmt_double(snapshot.config.mu0) << '\n';
    os << "sigma0 = " << fmt_double(snapshot.config.sigma0) << '\n';
    os << "beta = " << fmt_double(snapshot.config.beta) << '\n';
    os << "kappa = " << fmt_double(snapshot.config.kappa) << '\n';
    os << "tie_epsilon = " << fmt_double(snapshot.config.tie_epsilon) << '\n';
    for (const auto& [context_id, rating] : snapshot.registry.contexts)
        os << "context " << context_id << ' ' << fmt_double(rating.mu) << ' '
           << fmt_double(rating.sigma) << '\n';
    for (const auto& [player_id, state] : snapshot.players) {
        os << "player " << player_id << ' ' << state.current_context_id << ' '
           << fmt_double(state.contextual.mu) << ' ' << fmt_double(state.contextual.sigma) << ' '
           << state.games_played;
        for (int64_t c : state.role_counts) os << ' ' << c;
        os << '\n';
    }
    write_text_file(path, os.str());
}

RatingSnapshot read_snapshot(const std::string& path) {
    std::istringstream in(read_text_file(path));
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("snapshot: empty file " + path);
    check_artifact_header(line, "snapshot");

    RatingSnapshot snapshot;
    auto kv = [&](const std::string& key) {
        std::string l;
        if (!std::getline(in, l)) throw ValidationError("snapshot: truncated before " + key);
        const std::string prefix = key + " = ";
        if (l.rfind(prefix, 0) != 0)
            throw ValidationError("snapshot: expected \"" + key + " = ...\", got \"" + l + "\"");
        return l.substr(prefix.size());
    };
    snapshot.variant = rating_variant_from_string(kv("variant"));
    snapshot.mode = update_mode_from_string(kv("mode"));
    snapshot.config.mu0 = parse_double(kv("mu0"), "mu0");
    snapshot.config.sigma0 = parse_double(kv("sigma0"), "sigma0");
    snapshot.config.beta = parse_double(kv("beta"), "beta");
    snapshot.config.kappa = parse_double(kv("kappa"), "kappa");
    snapshot.config.tie_epsilon = parse_double(kv("tie_epsilon"), "tie_epsilon");

    size_t line_no = 8;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto p = split(line, ' ');
        if (p[0] == "context") {
            if (p.size() != 4)
                throw ValidationError("snapshot line " + std::to_string(line_no) +
                                      ": context row needs 4 fields");
            snapshot.registry.contexts[p[1]] =
                Rating{parse_double(p[2], "mu_meta"), parse_double(p[3], "sigma_meta")};
        } else if (p[0] == "player") {
            if (p.size() != 6 + kNumRoles)
                throw ValidationError("snapshot line " + std::to_string(line_no) +
                                      ": player row needs " + std::to_string(6 + kNumRoles) +
                                      " fields");
            PlayerRatingState state;
            state.player_id = p[1];
            state.current_context_id = p[2];
            state.contextual = Rating{parse_double(p[3], "mu_ctx"), parse_double(p[4], "sigma_ctx")};
            state.games_played = parse_int(p[5], "games_played");
            for (int i = 0; i < kNumRoles; ++i)
                state.role_counts[static_cast<size_t>(i)] = parse_int(p[6 + i], "role_count");
            snapshot.players[state.player_id] = std::move(state);
        } else {
            throw ValidationError("snapshot line " + std::to_string(line_no) +
                                  ": unknown row kind \"" + p[0] + "\"");
        }
    }
    // Every context referenced by a player state must exist in the registry.
    for (const auto& [player_id, state] : snapshot.players)
        if (snapshot.variant == RatingVariant::kMeta &&
            !snapshot.registry.contexts.contains(state.current_context_id))
            snapshot.registry.contexts[state.current_context_id] =
                Rating{snapshot.config.mu0, snapshot.config.sigma0};
    return snapshot;
}

} // namespace riftrank

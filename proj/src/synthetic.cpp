#include "riftrank/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "riftrank/errors.hpp"
#include "riftrank/logistic.hpp"
#include "riftrank/rng.hpp"
#include "riftrank/textio.hpp"

namespace riftrank {

void SyntheticConfig::validate() const {
    if (n_players <= 0 || n_contexts <= 0 || games_per_step <= 0 || steps <= 0)
        throw DomainError("synthetic config: counts must be positive");
    if (static_cast<int>(context_offsets.size()) != n_contexts)
        throw DomainError("synthetic config: need one context offset per context");
    if (inter_context_rate < 0.0 || inter_context_rate > 1.0 || migration_rate < 0.0 ||
        migration_rate > 1.0)
        throw DomainError("synthetic config: rates must be in [0,1]");
    if (n_contexts == 1 && inter_context_rate > 0.0)
        throw DomainError("synthetic config: inter-context games impossible with one context");
    if (!(within_context_spread >= 0.0) || !(noise_scale > 0.0) || !(performance_noise >= 0.0))
        throw DomainError("synthetic config: invalid distribution parameters");
    // Two players per (context, role) are needed to field an intra-context game.
    if (n_players / n_contexts < 10)
        throw DomainError("synthetic config: need at least 10 players per context");
}

namespace {

struct SimPlayer {
    std::string id;
    int context = 0;
    Role role = Role::kTop;
    double skill = 0.0;
};

std::string context_name(int c) {
    std::ostringstream os;
    os << "CTX" << (c < 10 ? "0" : "") << c;
    return os.str();
}

// Softmax-style weights over a slate of candidates.
std::vector<double> pick_weights(const std::vector<double>& z, double temperature) {
    std::vector<double> w(z.size());
    for (size_t i = 0; i < z.size(); ++i) w[i] = std::exp(z[i] / temperature);
    return w;
}

} // namespace

SyntheticData generate_synthetic(const SyntheticConfig& config) {
    config.validate();
    Rng rng(config.seed);

    // Players: contexts filled round-robin, roles balanced within context.
    std::vector<SimPlayer> players(static_cast<size_t>(config.n_players));
    std::vector<int> role_cursor(static_cast<size_t>(config.n_contexts), 0);
    for (int i = 0; i < config.n_players; ++i) {
        SimPlayer& p = players[static_cast<size_t>(i)];
        std::ostringstream os;
        os << "P" << (i < 1000 ? "0" : "") << (i < 100 ? "0" : "") << (i < 10 ? "0" : "") << i;
        p.id = os.str();
        p.context = i % config.n_contexts;
        p.role = static_cast<Role>(role_cursor[static_cast<size_t>(p.context)]++ % kNumRoles);
        p.skill = config.context_offsets[static_cast<size_t>(p.context)] +
                  rng.normal() * config.within_context_spread;
    }

    // (context, role) -> player indices, maintained across migrations.
    auto roster = [&](int context, Role role) {
        std::vector<size_t> out;
        for (size_t i = 0; i < players.size(); ++i)
            if (players[i].context == context && players[i].role == role) out.push_back(i);
        return out;
    };

    SyntheticData data;
    const int total_games = config.games_per_step * config.steps;
    data.games.reserve(static_cast<size_t>(total_games));

    int game_no = 0;
    for (int step = 0; step < config.steps; ++step) {
        if (config.migration_rate > 0.0 && config.n_contexts > 1 &&
            rng.bernoulli(config.migration_rate)) {
            // One player moves to another context; skill travels unchanged.
            SimPlayer& mover = players[rng.uniform_int(players.size())];
            int target = static_cast<int>(rng.uniform_int(static_cast<uint64_t>(config.n_contexts - 1)));
            if (target >= mover.context) ++target;
            mover.context = target;
        }

        for (int g = 0; g < config.games_per_step; ++g, ++game_no) {
            GameRecord game;
            {
                std::ostringstream os;
                os << "G";
                os.width(6);
                os.fill('0');
                os << game_no;
                game.game_id = os.str();
            }
            game.timestamp = config.start_timestamp + step * config.step_seconds +
                             (g * config.step_seconds) / config.games_per_step;
            game.duration = std::floor(rng.uniform(1500.0, 2400.0));

            const bool inter =
                config.n_contexts >= 2 && rng.bernoulli(config.inter_context_rate);
            int ctx_blue, ctx_red;
            if (inter) {
                ctx_blue = static_cast<int>(rng.uniform_int(static_cast<uint64_t>(config.n_contexts)));
                ctx_red = static_cast<int>(rng.uniform_int(static_cast<uint64_t>(config.n_contexts - 1)));
                if (ctx_red >= ctx_blue) ++ctx_red;
            } else {
                ctx_blue = ctx_red =
                    static_cast<int>(rng.uniform_int(static_cast<uint64_t>(config.n_contexts)));
            }
            game.is_inter_context_event = inter;
            game.competition_id = inter ? "INTERNATIONAL" : "LEAGUE_" + context_name(ctx_blue);

            // One player per (side, role).
            std::vector<size_t> picked;
            bool roster_ok = true;
            for (Role role : kAllRoles) {
                auto blue_pool = roster(ctx_blue, role);
                auto red_pool = roster(ctx_red, role);
                if (blue_pool.empty() || red_pool.empty() ||
                    (ctx_blue == ctx_red && blue_pool.size() < 2)) {
                    roster_ok = false;
                    break;
                }
                const size_t b = blue_pool[rng.uniform_int(blue_pool.size())];
                size_t r = b;
                while (r == b) r = red_pool[rng.uniform_int(red_pool.size())];
                picked.push_back(b);
                picked.push_back(r);
            }
            if (!roster_ok) continue; // migration emptied a slot; skip this matchup

            // Per-game form and its in-game relative value.
            std::vector<double> z(10), z_rel(10);
            double z_mean = 0.0;
            for (int i = 0; i < 10; ++i) {
                z[static_cast<size_t>(i)] = players[picked[static_cast<size_t>(i)]].skill +
                                            rng.normal() * config.performance_noise;
                z_mean += z[static_cast<size_t>(i)] / 10.0;
            }
            double blue_sum = 0.0, red_sum = 0.0;
            for (int i = 0; i < 10; ++i) {
                z_rel[static_cast<size_t>(i)] = z[static_cast<size_t>(i)] - z_mean;
                (i % 2 == 0 ? blue_sum : red_sum) += z[static_cast<size_t>(i)];
            }
            const double p_blue = sigmoid((blue_sum - red_sum) / config.noise_scale);
            game.winner = rng.bernoulli(p_blue) ? Side::kBlue : Side::kRed;

            std::vector<double> blue_z_rel, red_z_rel;
            std::vector<size_t> blue_idx, red_idx; // indices into `picked`
            for (int i = 0; i < 10; ++i) {
                if (i % 2 == 0) {
                    blue_z_rel.push_back(z_rel[static_cast<size_t>(i)]);
                    blue_idx.push_back(static_cast<size_t>(i));
                } else {
                    red_z_rel.push_back(z_rel[static_cast<size_t>(i)]);
                    red_idx.push_back(static_cast<size_t>(i));
                }
            }
            auto id_of = [&](size_t slot) { return players[picked[slot]].id; };
            auto side_of_slot = [&](size_t slot) {
                return slot % 2 == 0 ? Side::kBlue : Side::kRed;
            };

            // Champion kills: "picks" plus same-window trades for the higher
            // form victims, so worthless deaths skew toward low-form players.
            struct Kill {
                double time;
                size_t killer_slot, victim_slot;
            };
            std::vector<Kill> kills;
            const int n_picks = std::clamp(rng.poisson(16.0), 6, 36);
            const double team_gap_blue = blue_sum - red_sum;
            for (int k = 0; k < n_picks; ++k) {
                const double t = std::floor(rng.uniform(90.0, game.duration - 45.0));
                const bool blue_kills = rng.bernoulli(sigmoid(team_gap_blue / config.noise_scale));
                const auto& killer_rel = blue_kills ? blue_z_rel : red_z_rel;
                const auto& victim_rel = blue_kills ? red_z_rel : blue_z_rel;
                const auto& killer_slots = blue_kills ? blue_idx : red_idx;
                const auto& victim_slots = blue_kills ? red_idx : blue_idx;
                std::vector<double> wk = pick_weights(killer_rel, 1.2);
                std::vector<double> neg_victim(victim_rel.size());
                for (size_t i = 0; i < victim_rel.size(); ++i) neg_victim[i] = -victim_rel[i];
                std::vector<double> wv = pick_weights(neg_victim, 1.2);
                const size_t killer_slot = killer_slots[rng.categorical(wk)];
                const size_t victim_slot = victim_slots[rng.categorical(wv)];
                kills.push_back({t, killer_slot, victim_slot});

                // Trade back quickly when the victim is in good form.
                const double p_trade =
                    sigmoid(1.3 * z_rel[victim_slot] + 0.2);
                if (rng.bernoulli(p_trade)) {
                    double t2 = t + rng.uniform(-40.0, 40.0);
                    t2 = std::floor(std::clamp(t2, 60.0, game.duration - 5.0));
                    const auto& k2_slots = victim_slots;
                    const auto& v2_slots = killer_slots;
                    std::vector<double> wk2 = pick_weights(blue_kills ? red_z_rel : blue_z_rel, 1.2);
                    std::vector<double> neg2(killer_rel.size());
                    for (size_t i = 0; i < killer_rel.size(); ++i) neg2[i] = -killer_rel[i];
                    std::vector<double> wv2 = pick_weights(neg2, 1.2);
                    kills.push_back({t2, k2_slots[rng.categorical(wk2)],
                                     v2_slots[rng.categorical(wv2)]});
                }
            }

            for (const Kill& kill : kills) {
                GameEvent e;
                e.kind = EventKind::kChampionKill;
                e.time = kill.time;
                e.actor_id = id_of(kill.killer_slot);
                e.victim_id = id_of(kill.victim_slot);
                const auto& mates = side_of_slot(kill.killer_slot) == Side::kBlue ? blue_idx
                                                                                  : red_idx;
                for (size_t slot : mates)
                    if (slot != kill.killer_slot && rng.bernoulli(0.35))
                        e.assist_ids.push_back(id_of(slot));
                game.events.push_back(std::move(e));
            }

            // Neutral objectives; contested ones involve both teams.
            const int n_neutral = std::clamp(rng.poisson(5.0), 2, 10);
            for (int k = 0; k < n_neutral; ++k) {
                GameEvent e;
                e.kind = EventKind::kNeutralMonsterKill;
                const double u = rng.uniform();
                e.objective = u < 0.6 ? ObjectiveTag::kDrake
                                      : (u < 0.8 ? ObjectiveTag::kHerald : ObjectiveTag::kBaron);
                e.time = std::floor(rng.uniform(360.0, game.duration - 60.0));
                const bool blue_wins_objective =
                    rng.bernoulli(sigmoid(team_gap_blue / config.noise_scale));
                const auto& win_rel = blue_wins_objective ? blue_z_rel : red_z_rel;
                const auto& win_slots = blue_wins_objective ? blue_idx : red_idx;
                const auto& lose_rel = blue_wins_objective ? red_z_rel : blue_z_rel;
                const auto& lose_slots = blue_wins_objective ? red_idx : blue_idx;
                std::vector<double> ww = pick_weights(win_rel, 1.0);
                const size_t actor_slot = win_slots[rng.categorical(ww)];
                e.actor_id = id_of(actor_slot);
                for (size_t slot : win_slots)
                    if (slot != actor_slot && rng.bernoulli(0.5))
                        e.assist_ids.push_back(id_of(slot));
                if (rng.bernoulli(0.55)) {
                    // Contested: losing-team players show up, low form first.
                    std::vector<double> neg(lose_rel.size());
                    for (size_t i = 0; i < lose_rel.size(); ++i) neg[i] = -lose_rel[i];
                    std::vector<double> wl = pick_weights(neg, 1.0);
                    const size_t contester = lose_slots[rng.categorical(wl)];
                    e.assist_ids.push_back(id_of(contester));
                    for (size_t slot : lose_slots)
                        if (slot != contester && rng.bernoulli(0.25))
                            e.assist_ids.push_back(id_of(slot));
                }
                game.events.push_back(std::move(e));
            }

            // A few buildings, mostly by the stronger side, late in the game.
            const int n_buildings = std::clamp(rng.poisson(4.0), 2, 8);
            for (int k = 0; k < n_buildings; ++k) {
                GameEvent e;
                e.kind = EventKind::kBuildingKill;
                const double u = rng.uniform();
                e.objective = u < 0.85 ? ObjectiveTag::kTower
                                       : (u < 0.97 ? ObjectiveTag::kInhibitor
                                                   : ObjectiveTag::kNexus);
                e.time = std::floor(rng.uniform(game.duration * 0.55, game.duration - 5.0));
                const bool by_winner = rng.bernoulli(0.8);
                const Side secure_side = by_winner ? game.winner : opposite(game.winner);
                const auto& slots = secure_side == Side::kBlue ? blue_idx : red_idx;
                const auto& rel = secure_side == Side::kBlue ? blue_z_rel : red_z_rel;
                std::vector<double> w = pick_weights(rel, 1.4);
                const size_t actor_slot = slots[rng.categorical(w)];
                e.actor_id = id_of(actor_slot);
                for (size_t slot : slots)
                    if (slot != actor_slot && rng.bernoulli(0.3))
                        e.assist_ids.push_back(id_of(slot));
                game.events.push_back(std::move(e));
            }

            std::stable_sort(game.events.begin(), game.events.end(),
                             [](const GameEvent& a, const GameEvent& b) { return a.time < b.time; });

            // Stat lines: kills/deaths/assists recounted from events, the rest
            // are monotone noisy channels of relative form.
            std::vector<int64_t> kill_count(10, 0), death_count(10, 0), assist_count(10, 0);
            for (const auto& e : game.events) {
                if (e.kind != EventKind::kChampionKill) continue;
                for (int i = 0; i < 10; ++i) {
                    if (id_of(static_cast<size_t>(i)) == e.actor_id)
                        kill_count[static_cast<size_t>(i)] += 1;
                    if (id_of(static_cast<size_t>(i)) == e.victim_id)
                        death_count[static_cast<size_t>(i)] += 1;
                    for (const auto& a : e.assist_ids)
                        if (id_of(static_cast<size_t>(i)) == a)
                            assist_count[static_cast<size_t>(i)] += 1;
                }
            }
            const auto total_kills = static_cast<double>(std::count_if(
                game.events.begin(), game.events.end(),
                [](const GameEvent& e) { return e.kind == EventKind::kChampionKill; }));
            const double minutes = game.duration / 60.0;
            for (int i = 0; i < 10; ++i) {
                const size_t slot = static_cast<size_t>(i);
                const SimPlayer& sp = players[picked[slot]];
                PlayerLine line;
                line.player_id = sp.id;
                line.side = side_of_slot(slot);
                line.role = sp.role;
                line.context_id = context_name(sp.context);
                line.kills = kill_count[slot];
                line.deaths = death_count[slot];
                line.assists = assist_count[slot];
                const double zr = z_rel[slot];
                line.creep_score =
                    std::max(0.0, (6.5 + 0.9 * zr + rng.normal() * 0.35)) * minutes;
                line.gold = std::max(120.0, 400.0 + 45.0 * zr + rng.normal() * 25.0) * minutes;
                line.experience =
                    std::max(150.0, 480.0 + 40.0 * zr + rng.normal() * 30.0) * minutes;
                line.wards_placed =
                    std::max(0.05, 1.1 + 0.22 * zr + rng.normal() * 0.18) * minutes;
                line.damage_dealt_to_players =
                    std::max(15.0, 100.0 + 30.0 * zr + rng.normal() * 15.0) *
                    std::max(total_kills, 1.0);
                line.damage_taken_from_players =
                    std::max(15.0, 95.0 + 18.0 * zr + rng.normal() * 15.0) *
                    std::max(total_kills, 1.0);
                game.lines.push_back(std::move(line));
            }

            data.games.push_back(std::move(game));
        }
    }

    data.latent.reserve(players.size());
    for (const auto& p : players)
        data.latent.push_back({p.id, context_name(p.context), p.role, p.skill});
    return data;
}

void write_latent_csv(const std::string& path, const std::vector<LatentSkill>& latent) {
    std::ostringstream os;
    os << artifact_header("latent-skills") << '\n';
    os << "player_id,context_id,role,latent_skill\n";
    for (const auto& l : latent)
        os << l.player_id << ',' << l.context_id << ',' << to_string(l.role) << ','
           << fmt_double(l.skill) << '\n';
    write_text_file(path, os.str());
}

std::vector<LatentSkill> read_latent_csv(const std::string& path) {
    std::istringstream in(read_text_file(path));
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("latent csv: empty file " + path);
    check_artifact_header(line, "latent-skills");
    if (!std::getline(in, line) || line != "player_id,context_id,role,latent_skill")
        throw ValidationError("latent csv: bad column header");
    std::vector<LatentSkill> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto p = split(line, ',');
        if (p.size() != 4) throw ValidationError("latent csv: wrong column count");
        out.push_back({p[0], p[1], role_from_string(p[2]), parse_double(p[3], "latent_skill")});
    }
    return out;
}

} // namespace riftrank

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "riftrank/ablation.hpp"
#include "riftrank/errors.hpp"
#include "riftrank/rating_engine.hpp"
#include "riftrank/rating_io.hpp"
#include "riftrank/synthetic.hpp"

using namespace riftrank;
using namespace riftrank::testutil;

namespace {

std::map<std::string, double> flat_pscores(const GameRecord& game, double blue, double red) {
    std::map<std::string, double> out;
    for (const auto& line : game.lines)
        out[line.player_id] = line.side == Side::kBlue ? blue : red;
    return out;
}

std::map<std::string, double> listed_pscores(const GameRecord& game,
                                             const std::vector<double>& values) {
    std::map<std::string, double> out;
    for (size_t i = 0; i < game.lines.size(); ++i) out[game.lines[i].player_id] = values[i];
    return out;
}

} // namespace

TEST_CASE("intra-context game: registry untouched, contextual updated") {
    RatingSystem system(RatingConfig{}, UpdateMode::kFfa, RatingVariant::kMeta);
    const auto game = make_game("G0001", "2023-05-01T12:00:00Z", "KR", "KR");
    const auto registry_before = system.registry();
    const auto pscores = listed_pscores(game, {90, 10, 80, 20, 70, 30, 60, 40, 55, 45});
    const auto deltas = system.process_game(game, &pscores);
    CHECK(system.registry() == registry_before);
    for (const auto& d : deltas) {
        CHECK(d.meta_updated == false);
        CHECK(d.meta_before == d.meta_after);
    }
    // Top pscore player moved up.
    CHECK(system.players().at("B1").contextual.mu > 25.0);
}

TEST_CASE("inter-context game: contextual untouched, both metas updated") {
    RatingSystem system(RatingConfig{}, UpdateMode::kFfa, RatingVariant::kMeta);
    const auto game = make_game("G0001", "2023-05-01T12:00:00Z", "KR", "EU");
    const auto pscores = listed_pscores(game, {90, 10, 80, 20, 70, 30, 60, 40, 55, 45});
    const auto deltas = system.process_game(game, &pscores);
    for (const auto& d : deltas) {
        CHECK(d.meta_updated == true);
        CHECK(d.ctx_before == d.ctx_after);
    }
    CHECK(system.registry().contexts.at("KR").mu > 25.0); // BLUE (KR) out-performed
    CHECK(system.registry().contexts.at("EU").mu < 25.0);
    for (const auto& [id, state] : system.players())
        CHECK(state.contextual == Rating{25.0, 25.0 / 3.0});
}

TEST_CASE("sigma resets to the default exactly when the context changes") {
    RatingConfig config;
    RatingSystem system(config, UpdateMode::kFfa, RatingVariant::kMeta);

    // Shrink B1's contextual sigma with a few intra-KR games.
    for (int i = 0; i < 3; ++i) {
        const auto game =
            make_game("G000" + std::to_string(i), "2023-05-0" + std::to_string(i + 1) +
                      "T12:00:00Z", "KR", "KR");
        const auto pscores = listed_pscores(game, {90, 10, 80, 20, 70, 30, 60, 40, 55, 45});
        system.process_game(game, &pscores);
    }
    const double shrunk = system.players().at("B1").contextual.sigma;
    CHECK(shrunk < config.sigma0);
    const double mu_before_move = system.players().at("B1").contextual.mu;

    // B1 reappears in an EU-vs-KR game on the EU side: inter-context, so the
    // contextual rating is not updated, but the reset must fire first.
    auto inter = make_game("G0010", "2023-06-01T12:00:00Z", "EU", "KR");
    inter.lines[0].player_id = "B1"; // B1 now plays for EU
    const auto pscores = listed_pscores(inter, {50, 50, 50, 50, 50, 50, 50, 50, 50, 50});
    const auto deltas = system.process_game(inter, &pscores);
    const auto& d = deltas[0];
    CHECK(d.player_id == "B1");
    CHECK(d.sigma_reset == true);
    CHECK(d.ctx_before.sigma == doctest::Approx(shrunk));
    CHECK(system.players().at("B1").contextual.sigma == config.sigma0); // exact
    CHECK(system.players().at("B1").contextual.mu == doctest::Approx(mu_before_move));
    CHECK(system.players().at("B1").current_context_id == "EU");

    // Same context next game: no reset.
    auto intra_eu = make_game("G0011", "2023-06-02T12:00:00Z", "EU", "EU");
    intra_eu.lines[0].player_id = "B1";
    for (size_t i = 1; i < intra_eu.lines.size(); ++i)
        intra_eu.lines[i].player_id = "EU_P" + std::to_string(i);
    const auto pscores2 = listed_pscores(intra_eu, {50, 50, 50, 50, 50, 50, 50, 50, 50, 50});
    const auto deltas2 = system.process_game(intra_eu, &pscores2);
    CHECK(deltas2[0].sigma_reset == false);
}

TEST_CASE("plain variant: single rating, every game updates it, no resets") {
    RatingSystem system(RatingConfig{}, UpdateMode::kFfa, RatingVariant::kPlain);
    const auto inter = make_game("G0001", "2023-05-01T12:00:00Z", "KR", "EU");
    const auto pscores = listed_pscores(inter, {90, 10, 80, 20, 70, 30, 60, 40, 55, 45});
    const auto deltas = system.process_game(inter, &pscores);
    CHECK(system.registry().contexts.empty());
    for (const auto& d : deltas) CHECK(d.meta_updated == false);
    CHECK(system.players().at("B1").contextual.mu > 25.0);

    // Context change without reset in the plain variant.
    auto moved = make_game("G0002", "2023-05-02T12:00:00Z", "EU", "KR");
    moved.lines[0].player_id = "B1";
    const auto pscores2 = listed_pscores(moved, {50, 50, 50, 50, 50, 50, 50, 50, 50, 50});
    const auto sigma_before = system.players().at("B1").contextual.sigma;
    const auto deltas2 = system.process_game(moved, &pscores2);
    CHECK(deltas2[0].sigma_reset == false);
    CHECK(system.players().at("B1").contextual.sigma < sigma_before);
}

TEST_CASE("losing-team player with the top pscore gains mu") {
    RatingSystem system(RatingConfig{}, UpdateMode::kFfa, RatingVariant::kMeta);
    auto game = make_game(); // BLUE wins
    game.winner = Side::kBlue;
    // R1 (losing side) holds the top pscore.
    std::map<std::string, double> pscores;
    for (const auto& line : game.lines) pscores[line.player_id] = 40.0;
    pscores["R1"] = 99.0;
    pscores["B1"] = 60.0;
    system.process_game(game, &pscores);
    CHECK(system.players().at("R1").contextual.mu > 25.0);
}

TEST_CASE("team-outcome mode uses winner/loser, needs no pscores") {
    RatingSystem system(RatingConfig{}, UpdateMode::kTeamOutcome, RatingVariant::kMeta);
    auto game = make_game();
    game.winner = Side::kRed;
    system.process_game(game, nullptr);
    for (const auto& line : game.lines) {
        const auto& state = system.players().at(line.player_id);
        if (line.side == Side::kRed)
            CHECK(state.contextual.mu > 25.0);
        else
            CHECK(state.contextual.mu < 25.0);
        CHECK(state.contextual.sigma < 25.0 / 3.0);
    }
}

TEST_CASE("missing pscore in ffa mode is an error") {
    RatingSystem system(RatingConfig{}, UpdateMode::kFfa, RatingVariant::kMeta);
    const auto game = make_game();
    std::map<std::string, double> partial = flat_pscores(game, 50.0, 50.0);
    partial.erase("R5");
    CHECK_THROWS_WITH_AS(system.process_game(game, &partial), doctest::Contains("R5"),
                         DomainError);
    CHECK_THROWS_AS(system.process_game(game, nullptr), DomainError);
}

TEST_CASE("unknown players auto-initialize at the default prior and are logged") {
    RatingSystem system(RatingConfig{}, UpdateMode::kFfa, RatingVariant::kMeta);
    const auto game = make_game();
    const auto pscores = flat_pscores(game, 50.0, 50.0);
    system.process_game(game, &pscores);
    CHECK(system.players().size() == 10);
    CHECK(system.log().size() == 10);
    CHECK(system.log()[0].find("initialized") != std::string::npos);
}

TEST_CASE("combined rating for known and unknown players") {
    RatingSystem system(RatingConfig{}, UpdateMode::kFfa, RatingVariant::kMeta);
    const auto game = make_game();
    const auto pscores = flat_pscores(game, 50.0, 50.0);
    system.process_game(game, &pscores);
    const auto c = system.combined("B1");
    const auto& state = system.players().at("B1");
    const auto meta = system.registry().get("KR", system.config());
    CHECK(c.mu == doctest::Approx(state.contextual.mu + meta.mu));
    CHECK(c.sigma == doctest::Approx(std::sqrt(state.contextual.sigma * state.contextual.sigma +
                                               meta.sigma * meta.sigma)));
    CHECK(c.theta == doctest::Approx(c.mu - 3.0 * c.sigma));
    CHECK_THROWS_AS(system.combined("NOBODY"), DomainError);
}

TEST_CASE("rank_players ordering and tie break") {
    RatingSnapshot snapshot;
    snapshot.variant = RatingVariant::kPlain;
    SUBCASE("empty") { CHECK(rank_players(snapshot).empty()); }
    SUBCASE("theta desc then player_id asc") {
        PlayerRatingState a;
        a.player_id = "alice";
        a.contextual = Rating{40.0, 5.0}; // theta 25
        PlayerRatingState b;
        b.player_id = "bob";
        b.contextual = Rating{55.0, 10.0}; // theta 25 (tie with alice)
        PlayerRatingState c;
        c.player_id = "carol";
        c.contextual = Rating{50.0, 4.0}; // theta 38
        for (auto* s : {&a, &b, &c}) snapshot.players[s->player_id] = *s;
        const auto rows = rank_players(snapshot);
        REQUIRE(rows.size() == 3);
        CHECK(rows[0].player_id == "carol");
        CHECK(rows[1].player_id == "alice"); // tie broken by id
        CHECK(rows[2].player_id == "bob");
        CHECK(rows[0].rank == 1);
        CHECK(rows[2].rank == 3);
    }
    SUBCASE("higher mu lower sigma dominates") {
        PlayerRatingState strong;
        strong.player_id = "strong";
        strong.contextual = Rating{45.0, 3.0};
        PlayerRatingState weak;
        weak.player_id = "weak";
        weak.contextual = Rating{40.0, 6.0};
        snapshot.players["strong"] = strong;
        snapshot.players["weak"] = weak;
        const auto rows = rank_players(snapshot);
        CHECK(rows[0].player_id == "strong");
    }
}

TEST_CASE("replaying the same log twice is bit-identical") {
    SyntheticConfig config;
    config.n_players = 40;
    config.n_contexts = 2;
    config.context_offsets = {1.5, -1.5};
    config.inter_context_rate = 0.1;
    config.migration_rate = 0.1;
    config.games_per_step = 4;
    config.steps = 25;
    config.seed = 99;
    const auto data = generate_synthetic(config);

    // Uniform pscores derived from a hash so the replay is self-contained.
    std::map<std::string, std::map<std::string, double>> pscores;
    for (const auto& g : data.games) {
        double v = 5.0;
        for (const auto& line : g.lines) {
            pscores[g.game_id][line.player_id] = v;
            v += 9.0;
        }
    }

    RatingSnapshot snap1, snap2;
    const auto deltas1 = replay_ratings(data.games, pscores, UpdateMode::kFfa,
                                        RatingVariant::kMeta, RatingConfig{}, &snap1);
    const auto deltas2 = replay_ratings(data.games, pscores, UpdateMode::kFfa,
                                        RatingVariant::kMeta, RatingConfig{}, &snap2);
    CHECK(snap1.players == snap2.players);
    CHECK(snap1.registry == snap2.registry);

    const std::string tmp1 = "delta_log_tmp1.csv", tmp2 = "delta_log_tmp2.csv";
    write_delta_log_csv(tmp1, deltas1);
    write_delta_log_csv(tmp2, deltas2);
    CHECK(read_text_file(tmp1) == read_text_file(tmp2));
}

TEST_CASE("dispatch exclusivity and monotone sigma over a mixed replay") {
    SyntheticConfig config;
    config.n_players = 40;
    config.n_contexts = 2;
    config.context_offsets = {2.0, -2.0};
    config.inter_context_rate = 0.15;
    config.migration_rate = 0.2;
    config.games_per_step = 4;
    config.steps = 30;
    config.seed = 123;
    const auto data = generate_synthetic(config);

    std::map<std::string, std::map<std::string, double>> pscores;
    for (const auto& g : data.games) {
        double v = 2.0;
        for (const auto& line : g.lines) {
            pscores[g.game_id][line.player_id] = v;
            v += 10.0;
        }
    }

    const auto deltas = replay_ratings(data.games, pscores, UpdateMode::kFfa,
                                       RatingVariant::kMeta, RatingConfig{}, nullptr);
    int resets = 0, meta_updates = 0;
    const RatingConfig rc;
    for (const auto& d : deltas) {
        // Post-reset baseline for the contextual side.
        const Rating ctx_base{d.ctx_before.mu, d.sigma_reset ? rc.sigma0 : d.ctx_before.sigma};
        const bool ctx_changed = !(d.ctx_after == ctx_base);
        const bool meta_changed = !(d.meta_after == d.meta_before);
        if (d.meta_updated) {
            CHECK(!ctx_changed);
        } else {
            CHECK(!meta_changed);
        }
        // The Bayesian update itself never inflates uncertainty.
        CHECK(d.ctx_after.sigma <= ctx_base.sigma + 1e-12);
        CHECK(d.meta_after.sigma <= d.meta_before.sigma + 1e-12);
        resets += d.sigma_reset ? 1 : 0;
        meta_updates += d.meta_updated ? 1 : 0;
    }
    CHECK(resets > 0);       // migrations occurred
    CHECK(meta_updates > 0); // inter-context games occurred
}

TEST_CASE("snapshot round trip") {
    SyntheticConfig config;
    config.n_players = 20;
    config.games_per_step = 3;
    config.steps = 10;
    config.seed = 7;
    const auto data = generate_synthetic(config);
    std::map<std::string, std::map<std::string, double>> pscores;
    for (const auto& g : data.games) {
        double v = 5.0;
        for (const auto& line : g.lines) {
            pscores[g.game_id][line.player_id] = v;
            v += 9.5;
        }
    }
    RatingSnapshot snapshot;
    replay_ratings(data.games, pscores, UpdateMode::kFfa, RatingVariant::kMeta, RatingConfig{},
                   &snapshot);
    const std::string path = "snapshot_tmp.txt";
    write_snapshot(path, snapshot);
    const auto loaded = read_snapshot(path);
    CHECK(loaded.players == snapshot.players);
    CHECK(loaded.registry == snapshot.registry);
    CHECK(loaded.mode == snapshot.mode);
    CHECK(loaded.variant == snapshot.variant);

    // Round trip again byte-for-byte.
    const std::string path2 = "snapshot_tmp2.txt";
    write_snapshot(path2, loaded);
    CHECK(read_text_file(path) == read_text_file(path2));
}

TEST_CASE("delta log round trip") {
    RatingSystem system(RatingConfig{}, UpdateMode::kFfa, RatingVariant::kMeta);
    const auto game = make_game("G0001", "2023-05-01T12:00:00Z", "KR", "EU");
    const auto pscores = listed_pscores(game, {90, 10, 80, 20, 70, 30, 60, 40, 55, 45});
    const auto deltas = system.process_game(game, &pscores);
    const std::string path = "delta_roundtrip_tmp.csv";
    write_delta_log_csv(path, deltas);
    const auto loaded = read_delta_log_csv(path);
    REQUIRE(loaded.size() == deltas.size());
    for (size_t i = 0; i < deltas.size(); ++i) {
        CHECK(loaded[i].game_id == deltas[i].game_id);
        CHECK(loaded[i].player_id == deltas[i].player_id);
        CHECK(loaded[i].meta_updated == deltas[i].meta_updated);
        CHECK(loaded[i].theta_before == deltas[i].theta_before);
        CHECK(loaded[i].theta_after == deltas[i].theta_after);
        CHECK(loaded[i].ctx_before == deltas[i].ctx_before);
        CHECK(loaded[i].meta_after == deltas[i].meta_after);
    }
}

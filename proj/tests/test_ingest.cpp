#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "riftrank/errors.hpp"
#include "riftrank/ingest.hpp"
#include "riftrank/rng.hpp"
#include "riftrank/synthetic.hpp"

using namespace riftrank;
using namespace riftrank::testutil;

TEST_CASE("empty input yields empty list") {
    std::istringstream in("");
    const auto result = parse_games(in);
    CHECK(result.games.empty());
    CHECK(result.warnings.empty());
}

TEST_CASE("records sorted by timestamp then game_id") {
    const auto g1 = make_game("G0002", "2023-05-02T12:00:00Z");
    const auto g2 = make_game("G0001", "2023-05-01T12:00:00Z");
    const auto g3 = make_game("G0000", "2023-05-02T12:00:00Z"); // ties broken by id
    std::istringstream in(serialize_game(g1) + "\n" + serialize_game(g2) + "\n" +
                          serialize_game(g3) + "\n");
    const auto result = parse_games(in);
    REQUIRE(result.games.size() == 3);
    CHECK(result.games[0].game_id == "G0001");
    CHECK(result.games[1].game_id == "G0000");
    CHECK(result.games[2].game_id == "G0002");
}

TEST_CASE("nine player lines is a validation error naming the invariant") {
    auto g = make_game();
    g.lines.pop_back();
    std::istringstream in(serialize_game(g) + "\n");
    CHECK_THROWS_WITH_AS(parse_games(in), doctest::Contains("exactly 10 lines"), ValidationError);
}

TEST_CASE("duplicate game ids are rejected with both timestamps") {
    const auto g1 = make_game("G0001", "2023-05-01T12:00:00Z");
    const auto g2 = make_game("G0001", "2023-06-01T12:00:00Z");
    std::istringstream in(serialize_game(g1) + "\n" + serialize_game(g2) + "\n");
    try {
        parse_games(in);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        const std::string what = e.what();
        CHECK(what.find("duplicate game_id") != std::string::npos);
        CHECK(what.find("2023-05-01T12:00:00Z") != std::string::npos);
        CHECK(what.find("2023-06-01T12:00:00Z") != std::string::npos);
    }
}

TEST_CASE("malformed line carries the line number and field") {
    const auto good = make_game();
    std::istringstream in(serialize_game(good) + "\n{\"game_id\": 12}\n");
    try {
        parse_games(in);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        const std::string what = e.what();
        CHECK(what.find("line 2") != std::string::npos);
        CHECK(what.find("game_id") != std::string::npos);
    }
}

TEST_CASE("invariant checks catch corrupted records") {
    auto base = make_game();
    base.events.push_back(kill_event(100.0, "B1", "R1"));
    sync_counts(base);

    SUBCASE("duration") {
        base.duration = 0.0;
        CHECK_THROWS_AS(validate_game(base), ValidationError);
    }
    SUBCASE("duplicate role within side") {
        base.lines[1].role = base.lines[0].role;
        CHECK_THROWS_WITH_AS(validate_game(base), doctest::Contains("role unique"),
                             ValidationError);
    }
    SUBCASE("negative counter") {
        base.lines[3].kills = -1;
        CHECK_THROWS_AS(validate_game(base), ValidationError);
    }
    SUBCASE("event out of time range") {
        base.events[0].time = 1800.5;
        CHECK_THROWS_WITH_AS(validate_game(base), doctest::Contains("timestamp within"),
                             ValidationError);
    }
    SUBCASE("victim on the same side") {
        base.events[0].victim_id = "B2";
        CHECK_THROWS_WITH_AS(validate_game(base), doctest::Contains("opposite side"),
                             ValidationError);
    }
    SUBCASE("actor in assists") {
        base.events[0].assist_ids = {"B1"};
        CHECK_THROWS_WITH_AS(validate_game(base), doctest::Contains("actor_id not in assist"),
                             ValidationError);
    }
    SUBCASE("unknown participant") {
        base.events[0].actor_id = "NOPE";
        CHECK_THROWS_AS(validate_game(base), ValidationError);
    }
    SUBCASE("unsafe identifier") {
        base.lines[0].player_id = "bad id,with comma";
        CHECK_THROWS_AS(validate_game(base), ValidationError);
    }
}

TEST_CASE("property: random corruption of a valid record is always caught") {
    SyntheticConfig config;
    config.n_players = 20;
    config.n_contexts = 1;
    config.games_per_step = 2;
    config.steps = 5;
    config.context_offsets = {0.0};
    config.seed = 11;
    auto data = generate_synthetic(config);
    REQUIRE(!data.games.empty());

    Rng rng(99);
    int corrupted = 0;
    for (int trial = 0; trial < 200; ++trial) {
        GameRecord g = data.games[rng.uniform_int(data.games.size())];
        if (g.events.empty()) continue;
        const int kind = static_cast<int>(rng.uniform_int(6));
        auto& event = g.events[rng.uniform_int(g.events.size())];
        switch (kind) {
        case 0: g.lines.pop_back(); break;
        case 1: g.duration = -rng.uniform(0.0, 10.0); break;
        case 2: g.lines[rng.uniform_int(10)].deaths = -2; break;
        case 3: event.time = g.duration + 1.0 + rng.uniform(0.0, 100.0); break;
        case 4: {
            // Duplicate a role within one side (two lines of the same side).
            size_t a = 0, b = 0;
            while (a == b || g.lines[a].side != g.lines[b].side) {
                a = rng.uniform_int(10);
                b = rng.uniform_int(10);
            }
            g.lines[a].role = g.lines[b].role;
            break;
        }
        case 5: event.actor_id = "GHOST"; break;
        }
        ++corrupted;
        CHECK_THROWS_AS(validate_game(g), ValidationError);
    }
    CHECK(corrupted > 100);
}

TEST_CASE("serialize/parse round trip is the identity on a synthetic corpus") {
    SyntheticConfig config;
    config.n_players = 30;
    config.n_contexts = 3;
    config.context_offsets = {-2.0, 0.0, 2.0};
    config.inter_context_rate = 0.3;
    config.games_per_step = 3;
    config.steps = 8;
    config.seed = 5;
    const auto data = generate_synthetic(config);
    REQUIRE(!data.games.empty());

    std::string blob;
    for (const auto& g : data.games) blob += serialize_game(g) + "\n";
    std::istringstream in1(blob);
    const auto parsed1 = parse_games(in1);
    CHECK(parsed1.warnings.empty());
    REQUIRE(parsed1.games.size() == data.games.size());

    std::string blob2;
    for (const auto& g : parsed1.games) blob2 += serialize_game(g) + "\n";
    CHECK(blob == blob2); // generator emits in sorted order already
    std::istringstream in2(blob2);
    const auto parsed2 = parse_games(in2);
    CHECK(parsed1.games == parsed2.games);
}

TEST_CASE("unknown fields warn, and strict promotes warnings") {
    auto g = make_game();
    std::string line = serialize_game(g);
    line.insert(line.size() - 1, ",\"mystery_field\":3");
    std::istringstream in(line + "\n");
    const auto result = parse_games(in);
    REQUIRE(result.games.size() == 1);
    REQUIRE(result.warnings.size() == 1);
    CHECK(result.warnings[0].message.find("mystery_field") != std::string::npos);

    std::istringstream in2(line + "\n");
    IngestOptions strict;
    strict.strict = true;
    CHECK_THROWS_AS(parse_games(in2, strict), ValidationError);
}

TEST_CASE("inter-context flag disagreement warns") {
    auto g = make_game("G0001", "2023-05-01T12:00:00Z", "KR", "EU");
    g.is_inter_context_event = false; // contexts differ -> flag should be true
    std::istringstream in(serialize_game(g) + "\n");
    const auto result = parse_games(in);
    REQUIRE(result.games.size() == 1);
    bool found = false;
    for (const auto& w : result.warnings)
        if (w.message.find("is_inter_context_event") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("detect_context_change") {
    CHECK(detect_context_change(std::nullopt, "KR") == false);
    CHECK(detect_context_change(std::optional<std::string>("KR"), "KR") == false);
    CHECK(detect_context_change(std::optional<std::string>("KR"), "EU") == true);
}

TEST_CASE("intra/inter classification is strict on all ten contexts") {
    auto g = make_game("G0001", "2023-05-01T12:00:00Z", "KR", "KR");
    CHECK(is_intra_context(g));
    g.lines[7].context_id = "EU"; // one import on RED
    CHECK(!is_intra_context(g));
}

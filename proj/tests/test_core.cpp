#include <doctest.h>

#include "riftrank/hashing.hpp"
#include "riftrank/rng.hpp"
#include "riftrank/stats.hpp"
#include "riftrank/textio.hpp"
#include "riftrank/timeparse.hpp"

using namespace riftrank;

TEST_CASE("timestamp parse/format round trip") {
    CHECK(parse_utc_timestamp("1970-01-01T00:00:00Z") == 0);
    CHECK(parse_utc_timestamp("2020-01-01T00:00:00Z") == 1577836800);
    CHECK(format_utc_timestamp(1577836800) == "2020-01-01T00:00:00Z");
    CHECK(parse_utc_timestamp("2024-02-29T23:59:59Z") ==
          parse_utc_timestamp("2024-03-01T00:00:00Z") - 1);
    for (int64_t t : {int64_t{0}, int64_t{951826154}, int64_t{1700000000}, int64_t{4102444799}})
        CHECK(parse_utc_timestamp(format_utc_timestamp(t)) == t);
    CHECK_THROWS(parse_utc_timestamp("2020-13-01T00:00:00Z"));
    CHECK_THROWS(parse_utc_timestamp("2020-02-30T00:00:00Z"));
    CHECK_THROWS(parse_utc_timestamp("2020-01-01 00:00:00Z"));
    CHECK_THROWS(parse_utc_timestamp("2020-01-01T00:00:00"));
}

TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    // Streaming across the 64-byte block boundary.
    Sha256 h;
    const std::string chunk(37, 'x');
    for (int i = 0; i < 9; ++i) h.update(chunk);
    CHECK(h.hex_digest() == sha256_hex(std::string(37 * 9, 'x')));
}

TEST_CASE("fmt_double round trips") {
    for (double v : {0.0, 1.0, -1.5, 1e-300, 3.141592653589793, 25.0 / 3.0, 1e17})
        CHECK(parse_double(fmt_double(v), "v") == v);
}

TEST_CASE("rng determinism and distribution shape") {
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

    Rng rng(7);
    double sum = 0.0, sum_sq = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        sum += x;
        sum_sq += x * x;
    }
    CHECK(std::abs(sum / n) < 0.02);
    CHECK(std::abs(sum_sq / n - 1.0) < 0.03);

    double mean_pois = 0.0;
    for (int i = 0; i < 20000; ++i) mean_pois += rng.poisson(5.0);
    CHECK(std::abs(mean_pois / 20000 - 5.0) < 0.1);
}

TEST_CASE("ece basics") {
    // Perfectly calibrated at 0.5.
    std::vector<double> probs(100, 0.5);
    std::vector<int> labels(100, 0);
    for (int i = 0; i < 50; ++i) labels[static_cast<size_t>(i)] = 1;
    CHECK(expected_calibration_error(probs, labels, 10) == doctest::Approx(0.0));

    // One bin: predicted mean 0.9 vs win rate 0.7.
    std::vector<double> p2(10, 0.9);
    std::vector<int> y2(10, 1);
    y2[0] = y2[1] = y2[2] = 0;
    CHECK(expected_calibration_error(p2, y2, 1) == doctest::Approx(0.2));

    // Exact 0/1 predictions matching labels.
    std::vector<double> p3 = {0.0, 1.0, 1.0, 0.0};
    std::vector<int> y3 = {0, 1, 1, 0};
    CHECK(expected_calibration_error(p3, y3, 10) == doctest::Approx(0.0));

    CHECK_THROWS(expected_calibration_error({}, {}, 10));
}

TEST_CASE("spearman and ks") {
    std::vector<double> xs = {1, 2, 3, 4, 5};
    std::vector<double> ys = {2, 4, 6, 8, 10};
    CHECK(spearman(xs, ys) == doctest::Approx(1.0));
    std::vector<double> yrev = {10, 8, 6, 4, 2};
    CHECK(spearman(xs, yrev) == doctest::Approx(-1.0));

    std::vector<double> uniformish;
    Rng rng(3);
    for (int i = 0; i < 5000; ++i) uniformish.push_back(rng.uniform(0.0, 100.0));
    CHECK(ks_distance_uniform(uniformish, 0.0, 100.0) < 0.03);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "slsq/quantizer.hpp"

using namespace slsq;

namespace {

Vec random_in_ball(int d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        Vec v(d);
        double n2 = 0.0;
        for (double& x : v) {
            x = u(rng);
            n2 += x * x;
        }
        if (n2 <= 1.0) return v;
    }
}

} // namespace

TEST_CASE("round_half_even") {
    CHECK(round_half_even(1.4) == 1);
    CHECK(round_half_even(1.6) == 2);
    CHECK(round_half_even(1.5) == 2);
    CHECK(round_half_even(2.5) == 2);
    CHECK(round_half_even(-0.5) == 0);
    CHECK(round_half_even(-1.5) == -2);
    CHECK(round_half_even(14.142135623730951) == 14);
}

TEST_CASE("alphabet bound for the reference configuration") {
    const BallQuantizer q = build_quantizer(2, 0.05);
    CHECK(q.half_extent == 14);
    CHECK(q.m_hat() == 841);
    CHECK(q.m() <= q.m_hat());
    CHECK(q.zero_index >= 0);
}

TEST_CASE("scalar quantizer endpoints") {
    const BallQuantizer q = build_quantizer(1, 0.5);
    // pitch 1, half extent 1: points -1, 0, 1
    CHECK(q.m() == 3);
    CHECK(quantize(q, {0.9}).second[0] == doctest::Approx(1.0));
    CHECK(quantize(q, {-0.4}).second[0] == doctest::Approx(0.0));
}

TEST_CASE("accuracy, zero-ball, and size bound across configurations") {
    std::mt19937_64 rng(7);
    for (int d : {1, 2, 3}) {
        for (double alpha : {0.5, 0.1, 0.05}) {
            const BallQuantizer q = build_quantizer(d, alpha);
            CHECK(q.m() <= q.m_hat());
            const double zero_radius = alpha / std::sqrt(static_cast<double>(d));
            for (int trial = 0; trial < 2000; ++trial) {
                const Vec xi = random_in_ball(d, rng);
                const auto [idx, p] = quantize(q, xi);
                CHECK(norm2(xi - p) <= alpha * (1.0 + 1e-12));
                // every point stays in the closed unit ball
                CHECK(norm2(p) <= 1.0 + 1e-12);
                if (norm2(xi) <= zero_radius) CHECK(idx == q.zero_index);
            }
        }
    }
}

TEST_CASE("quantize matches the brute-force nearest point") {
    std::mt19937_64 rng(19);
    const BallQuantizer q = build_quantizer(2, 0.1);
    for (int trial = 0; trial < 2000; ++trial) {
        const Vec xi = random_in_ball(2, rng);
        const auto [idx, p] = quantize(q, xi);
        double best = norm2(xi - p);
        for (const Vec& cand : q.points) CHECK(norm2(xi - cand) >= best - 1e-15);
        (void)idx;
    }
}

TEST_CASE("index codec round-trips") {
    const BallQuantizer q = build_quantizer(2, 0.1);
    for (int idx = 0; idx < static_cast<int>(q.m()); ++idx)
        CHECK(decode_index(q, encode_index(q, idx)) == idx);
    CHECK(q.code_bits() >= 1);
    CHECK((std::uint64_t{1} << q.code_bits()) >= q.m());
    CHECK_THROWS(encode_index(q, static_cast<int>(q.m())));
}

TEST_CASE("overflow guard refuses huge alphabets") {
    CHECK_THROWS(build_quantizer(8, 0.001));
}

TEST_CASE("JSON round-trip rebuilds the identical point set") {
    const BallQuantizer q = build_quantizer(2, 0.05);
    const BallQuantizer r = quantizer_from_json(quantizer_to_json(q));
    REQUIRE(r.m() == q.m());
    for (std::size_t i = 0; i < q.points.size(); ++i) CHECK(r.points[i] == q.points[i]);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "slsq/matrix.hpp"

using namespace slsq;

namespace {

Mat random_mat(int n, std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = u(rng);
    return m;
}

} // namespace

TEST_CASE("symmetric eigenvalues: diagonal and known 2x2") {
    Mat d(3, 3);
    d(0, 0) = -1.0;
    d(1, 1) = 2.0;
    d(2, 2) = 5.0;
    const auto ev = sym_eigenvalues(d);
    CHECK(ev[0] == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(ev[1] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(ev[2] == doctest::Approx(5.0).epsilon(1e-13));

    // [[2,1],[1,2]] has eigenvalues 1 and 3
    Mat s(2, 2);
    s(0, 0) = 2.0;
    s(0, 1) = 1.0;
    s(1, 0) = 1.0;
    s(1, 1) = 2.0;
    const auto e2 = sym_eigenvalues(s);
    CHECK(e2[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(e2[1] == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("eigenvalue invariants on random symmetric matrices") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        Mat a = random_mat(n, rng);
        Mat s = 0.5 * (a + transpose(a));
        const auto ev = sym_eigenvalues(s);
        double tr = 0.0, sum = 0.0;
        for (int i = 0; i < n; ++i) tr += s(i, i);
        for (double e : ev) sum += e;
        CHECK(sum == doctest::Approx(tr).epsilon(1e-10));
        for (std::size_t i = 1; i < ev.size(); ++i) CHECK(ev[i - 1] <= ev[i] + 1e-12);
    }
}

TEST_CASE("spectral norm matches hand values") {
    Mat m(2, 2);
    m(0, 0) = 3.0; // diag(3, -4): largest singular value 4
    m(1, 1) = -4.0;
    CHECK(spectral_norm(m) == doctest::Approx(4.0).epsilon(1e-13));

    Mat r(1, 2);
    r(0, 0) = 3.0;
    r(0, 1) = 4.0;
    CHECK(spectral_norm(r) == doctest::Approx(5.0).epsilon(1e-13));
}

TEST_CASE("log norm: scalar, skew, and shift rules") {
    Mat a(1, 1);
    a(0, 0) = -2.5;
    CHECK(log_norm(a) == doctest::Approx(-2.5));

    // rotation generator: log norm 0
    Mat w(2, 2);
    w(0, 1) = -1.0;
    w(1, 0) = 1.0;
    CHECK(log_norm(w) == doctest::Approx(0.0).epsilon(1e-13));

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Mat m = random_mat(3, rng);
        const double c = 0.7;
        Mat shifted = m + c * Mat::identity(3);
        CHECK(log_norm(shifted) == doctest::Approx(log_norm(m) + c).epsilon(1e-10));
    }
}

TEST_CASE("expm: identity, nilpotent, rotation") {
    const Mat ez = expm(Mat(3, 3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(ez(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-15));

    Mat n(2, 2);
    n(0, 1) = 3.0; // exp = I + N exactly
    const Mat en = expm(n);
    CHECK(en(0, 0) == doctest::Approx(1.0));
    CHECK(en(0, 1) == doctest::Approx(3.0));
    CHECK(en(1, 0) == doctest::Approx(0.0));
    CHECK(en(1, 1) == doctest::Approx(1.0));

    const double th = 0.8;
    Mat w(2, 2);
    w(0, 1) = -th;
    w(1, 0) = th;
    const Mat ew = expm(w);
    CHECK(ew(0, 0) == doctest::Approx(std::cos(th)).epsilon(1e-14));
    CHECK(ew(1, 0) == doctest::Approx(std::sin(th)).epsilon(1e-14));
}

TEST_CASE("expm semigroup property on random matrices") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        Mat a = random_mat(3, rng, 2.0);
        const Mat whole = expm(a);
        const Mat halves = expm(0.5 * a) * expm(0.5 * a);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(whole(i, j) == doctest::Approx(halves(i, j)).epsilon(1e-11));
        // exp(a) exp(-a) = I
        const Mat prod = whole * expm(-1.0 * a);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(prod(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));
    }
}

TEST_CASE("expm handles large norms via scaling") {
    Mat a(2, 2);
    a(0, 0) = -30.0;
    a(1, 1) = 10.0;
    const Mat e = expm(a);
    CHECK(e(0, 0) == doctest::Approx(std::exp(-30.0)).epsilon(1e-12));
    CHECK(e(1, 1) == doctest::Approx(std::exp(10.0)).epsilon(1e-12));
}

TEST_CASE("solve round-trips random systems") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        Mat a = random_mat(4, rng) + 3.0 * Mat::identity(4);
        Mat b = random_mat(4, rng);
        const Mat x = solve(a, b);
        const Mat r = a * x - b;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(std::abs(r(i, j)) < 1e-10);
    }
}

TEST_CASE("vector helpers") {
    const Vec v{3.0, 4.0};
    CHECK(norm2(v) == doctest::Approx(5.0));
    CHECK(all_finite(v));
    CHECK_FALSE(all_finite(Vec{1.0, std::nan("")}));
}

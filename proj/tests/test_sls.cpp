#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "slsq/sls.hpp"

using namespace slsq;

TEST_CASE("system constants of the demo benchmark") {
    const SystemBundle b = fixtures::demo_system();
    const SystemConstants c = system_constants(b.sys, b.fb);
    CHECK(c.nu == doctest::Approx(0.35).epsilon(1e-12));
    CHECK(c.delta1 == doctest::Approx(3.270347662107792).epsilon(1e-12));
    CHECK(c.delta2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.L == doctest::Approx(0.6440496875241847).epsilon(1e-12));
}

TEST_CASE("certificate log-norm test on the demo benchmark") {
    const SystemBundle b = fixtures::demo_system();
    const CertificateCheck chk = verify_certificate_lognorm(b.sys, b.fb, b.cert);
    CHECK(chk.conclusive);
    CHECK(chk.passed);
    REQUIRE(chk.margins.size() == 2);
    // closed-loop log norms -0.15 and -0.44917237469701776
    CHECK(chk.margins[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(chk.margins[1] == doctest::Approx(0.29917237469701776).epsilon(1e-10));
}

TEST_CASE("certificate test is inconclusive away from D=1, mu1=0") {
    const SystemBundle b = fixtures::demo_system();
    StabilizabilityCertificate cert{2.0, 0.1, 0.15};
    const CertificateCheck chk = verify_certificate_lognorm(b.sys, b.fb, cert);
    CHECK_FALSE(chk.conclusive);
}

TEST_CASE("propagate_segment: scalar closed form") {
    // x' = -x + u, model xhat' = -2 xhat, u = K xhat with A_model = -1, B = 1, K = -1
    Mat a(1, 1), bm(1, 1), k(1, 1);
    a(0, 0) = -1.0;
    bm(0, 0) = 1.0;
    k(0, 0) = -1.0;
    const double t = 0.7;
    const auto [x, xh] = propagate_segment(a, bm, a, bm, k, {1.0}, {1.0}, t);
    // xhat(t) = e^{-2t}; x(t) = e^{-t} x0 - int_0^t e^{-(t-s)} e^{-2s} ds
    const double xhat_exact = std::exp(-2.0 * t);
    const double x_exact = std::exp(-t) - (std::exp(-t) - std::exp(-2.0 * t));
    CHECK(xh[0] == doctest::Approx(xhat_exact).epsilon(1e-13));
    CHECK(x[0] == doctest::Approx(x_exact).epsilon(1e-13));
}

TEST_CASE("propagate_segment matches x = xhat when plant and model agree") {
    const SystemBundle b = fixtures::demo_system();
    const Vec z0{0.3, -0.4};
    const auto [x, xh] = propagate_segment(b.sys.A[0], b.sys.B[0], b.sys.A[0], b.sys.B[0],
                                           b.fb.K[0], z0, z0, 0.5);
    CHECK(x[0] == doctest::Approx(xh[0]).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(xh[1]).epsilon(1e-12));
}

TEST_CASE("augmented generator layout") {
    const SystemBundle b = fixtures::demo_system();
    const Mat g = augmented_generator(b.sys.A[0], b.sys.B[0], b.sys.A[1], b.sys.B[1], b.fb.K[1]);
    REQUIRE(g.rows() == 4);
    CHECK(g(0, 0) == b.sys.A[0](0, 0));
    CHECK(g(2, 0) == 0.0);
    const Mat bk = b.sys.B[0] * b.fb.K[1];
    CHECK(g(0, 2) == bk(0, 0));
    const Mat cl = b.sys.A[1] + b.sys.B[1] * b.fb.K[1];
    CHECK(g(2, 2) == cl(0, 0));
}

TEST_CASE("system JSON round-trip") {
    const SystemBundle b = fixtures::demo_system();
    const SystemBundle r = parse_system_json(system_to_json(b));
    CHECK(r.sys.d == 2);
    CHECK(r.sys.c == 1);
    REQUIRE(r.sys.mode_count() == 2);
    CHECK(r.sys.A[1].data() == b.sys.A[1].data());
    CHECK(r.sys.B[0].data() == b.sys.B[0].data());
    CHECK(r.fb.K[1].data() == b.fb.K[1].data());
    CHECK(r.cert.mu2 == b.cert.mu2);
}

TEST_CASE("validation rejects inconsistent shapes") {
    SystemBundle b = fixtures::demo_system();
    b.sys.B[1] = Mat(2, 2);
    CHECK_THROWS(b.sys.validate());
    StabilizabilityCertificate bad{0.5, 0.0, 0.15};
    CHECK_THROWS(bad.validate());
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "slsq/design.hpp"
#include "slsq/quantizer.hpp"

using namespace slsq;

TEST_CASE("feasibility condition on both reference configurations") {
    for (const CoderControllerConfig& cfg : {fixtures::slow_config(), fixtures::fast_config()}) {
        const ConditionReport rep = check_condition(cfg);
        CHECK(rep.satisfied);
        CHECK(rep.lhs == doctest::Approx(0.9862241646500788).epsilon(1e-12));
        CHECK(rep.rhs == doctest::Approx(1.0));
    }
}

TEST_CASE("derived constants of the slow configuration") {
    const CoderControllerConfig cfg = fixtures::slow_config();
    const DerivedConstants dc = derive_constants(cfg);
    CHECK(dc.psi == doctest::Approx(std::exp(-0.15 * 0.8)).epsilon(1e-13));
    CHECK(dc.alpha_bar == doctest::Approx(std::exp(0.35 * 0.8) * 0.05).epsilon(1e-13));
    CHECK(dc.rho_bar == doctest::Approx(0.9862241646500788).epsilon(1e-12));
    CHECK(dc.mu == doctest::Approx(0.017339503379673514).epsilon(1e-12));
    CHECK(dc.lambda == doctest::Approx(0.008669751689836757).epsilon(1e-12));
}

TEST_CASE("decay rates require feasibility") {
    CoderControllerConfig cfg = fixtures::slow_config();
    const DecayRates dr = decay_rates(cfg);
    CHECK(dr.mu == doctest::Approx(0.017339503379673514).epsilon(1e-12));
    CHECK(dr.lambda == doctest::Approx(dr.mu / 2.0));
    cfg.alpha = 0.5; // far too coarse: condition fails
    CHECK_FALSE(check_condition(cfg).satisfied);
    CHECK_THROWS(decay_rates(cfg));
}

TEST_CASE("data rates of the two reference configurations") {
    const std::uint64_t m_hat = build_quantizer(2, 0.05).m_hat();
    REQUIRE(m_hat == 841);
    CHECK(data_rate(fixtures::slow_config(), 2, m_hat) ==
          doctest::Approx(145.46771684125866).epsilon(1e-12));
    CHECK(data_rate(fixtures::fast_config(), 2, m_hat) ==
          doctest::Approx(522.9542755208876).epsilon(1e-12));
}

TEST_CASE("beta values and monotonicity in the mismatch count") {
    const CoderControllerConfig cfg = fixtures::slow_config();
    CHECK(beta_value(0, cfg) == doctest::Approx(0.9530769273340294).epsilon(1e-12));
    CHECK(beta_value(1, cfg) == doctest::Approx(0.9945109739790912).epsilon(1e-12));
    double prev = 0.0;
    for (int b = 0; b <= cfg.n; ++b) {
        const double v = beta_value(b, cfg);
        CHECK(v > prev);
        prev = v;
    }
    CHECK_THROWS(beta_value(cfg.n + 1, cfg));
    CHECK_THROWS(beta_value(-1, cfg));
}

TEST_CASE("config validation") {
    CoderControllerConfig cfg = fixtures::slow_config();
    cfg.validate();
    cfg.cert.mu1 = 0.2; // mu1/tau_a >= mu2
    CHECK_THROWS(cfg.validate());
}

TEST_CASE("parameter search finds a feasible low-rate configuration") {
    const SystemBundle b = fixtures::demo_system();
    const SystemConstants consts = system_constants(b.sys, b.fb);
    SearchTargets t;
    t.d = 2;
    t.mode_count = 2;
    const CoderControllerConfig cfg = search_parameters(consts, b.cert, 1.0, t);
    const ConditionReport rep = check_condition(cfg);
    CHECK(rep.satisfied);
    CHECK(decay_rates(cfg).mu > 0.0);
    // the reference hand-tuned configuration is a competitive upper bound
    const std::uint64_t m_hat_ref = build_quantizer(2, cfg.alpha).m_hat();
    const double rate = data_rate(cfg, 2, m_hat_ref);
    CHECK(rate < 2000.0);
    CHECK(rate > 0.0);
}

TEST_CASE("parameter search reports infeasible certificates") {
    const SystemBundle b = fixtures::demo_system();
    const SystemConstants consts = system_constants(b.sys, b.fb);
    SearchTargets t;
    t.d = 2;
    t.mode_count = 2;
    StabilizabilityCertificate cert{1.0, 0.5, 0.15}; // mu1/tau_a >= mu2
    CHECK_THROWS(search_parameters(consts, cert, 1.0, t));
}

TEST_CASE("config JSON round-trip preserves every field") {
    const CoderControllerConfig cfg = fixtures::fast_config();
    const CoderControllerConfig r = config_from_json(config_to_json(cfg, 2, 2));
    CHECK(r.base_tick == cfg.base_tick);
    CHECK(r.tau_s_ticks == cfg.tau_s_ticks);
    CHECK(r.n == cfg.n);
    CHECK(r.alpha == cfg.alpha);
    CHECK(r.r0 == cfg.r0);
    CHECK(r.tau_a == cfg.tau_a);
    CHECK(r.cert.mu2 == cfg.cert.mu2);
    CHECK(r.consts.delta1 == cfg.consts.delta1);
    CHECK(r.consts.L == cfg.consts.L);
}

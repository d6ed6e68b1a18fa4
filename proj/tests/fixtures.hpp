#pragma once

#include "slsq/design.hpp"
#include "slsq/sls.hpp"

// Shared two-mode planar benchmark used across the test binaries, with the
// two reference coder-controller configurations built on top of it.

namespace fixtures {

inline slsq::Mat mat2(double a, double b, double c, double d) {
    slsq::Mat m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

inline slsq::Mat col2(double a, double b) {
    slsq::Mat m(2, 1);
    m(0, 0) = a;
    m(1, 0) = b;
    return m;
}

inline slsq::Mat row2(double a, double b) {
    slsq::Mat m(1, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    return m;
}

inline slsq::SystemBundle demo_system() {
    slsq::SystemBundle b;
    b.sys.d = 2;
    b.sys.c = 1;
    b.sys.A = {mat2(0.1, -1.0, 1.5, 0.1), mat2(-0.5, 2.0, -1.5, 0.0)};
    b.sys.B = {col2(1.0, 1.0), col2(0.0, 1.0)};
    b.fb.K = {row2(-0.43, -0.43), row2(-0.38, -0.52)};
    b.cert = {1.0, 0.0, 0.15};
    return b;
}

// tau_s = 8 ms, n = 100, tau_a = 1 s
inline slsq::CoderControllerConfig slow_config() {
    const slsq::SystemBundle b = demo_system();
    slsq::CoderControllerConfig cfg;
    cfg.base_tick = 1e-3;
    cfg.tau_s_ticks = 8;
    cfg.n = 100;
    cfg.alpha = 0.05;
    cfg.r0 = 1.0;
    cfg.tau_a = 1.0;
    cfg.cert = b.cert;
    cfg.consts = slsq::system_constants(b.sys, b.fb);
    return cfg;
}

// tau_s = 2 ms, n = 400, tau_a = 0.25 s
inline slsq::CoderControllerConfig fast_config() {
    slsq::CoderControllerConfig cfg = slow_config();
    cfg.tau_s_ticks = 2;
    cfg.n = 400;
    cfg.tau_a = 0.25;
    return cfg;
}

} // namespace fixtures

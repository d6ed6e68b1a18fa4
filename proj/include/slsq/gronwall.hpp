#pragma once

#include <vector>

#include "slsq/matrix.hpp"
#include "slsq/switching.hpp"

// Sensitivity bound for a pair of mode-driven linear ODEs x' = A(t) x + u(t):
//   ||x1(t) - x2(t)|| <= e^{nu t} ||x1(0) - x2(0)||
//                        + int_0^t e^{nu (t-s)} ||dA(s) x2(s) + du(s)|| ds
// with nu at least the log-norm of every A segment. Both trajectories are
// propagated exactly; the integral is evaluated on the grid.

namespace slsq {

// Piecewise-constant (A(t), u(t)); segment i starts at start_ticks[i],
// start_ticks[0] must be 0.
struct PiecewiseLinearOde {
    double base_tick = 1e-3;
    std::vector<Tick> start_ticks;
    std::vector<Mat> A;
    std::vector<Vec> u;
};

struct GronwallReport {
    bool holds = true; // lhs <= rhs * (1 + 1e-6) at every evaluation point
    double max_ratio = 0.0;
    std::vector<Tick> grid;
    std::vector<double> lhs;
    std::vector<double> rhs;
};

GronwallReport gronwall_check(const PiecewiseLinearOde& sys1, const PiecewiseLinearOde& sys2,
                              const Vec& x10, const Vec& x20, Tick horizon, double nu,
                              Tick grid_step);

} // namespace slsq

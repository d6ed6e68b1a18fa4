#pragma once

#include <cstdint>
#include <vector>

// Exact integration of inputs against a fast-oscillating two-mode input gain
// B(t) in {-1, +1} with half-period 1/n: quantifies the averaging effect
// that defeats any fixed finite set of input functions. All breakpoints are
// exact rationals, so there is no quadrature error.

namespace slsq {

struct Rational {
    long long num = 0;
    long long den = 1;
};

Rational make_rational(long long num, long long den);
double to_double(const Rational& r);
Rational rat_sub(const Rational& a, const Rational& b);
bool rat_less(const Rational& a, const Rational& b);

// u(t) = v0 + slope * (t - t0) on [t0, t1). Pieces must be contiguous.
struct InputPiece {
    Rational t0;
    Rational t1;
    double v0 = 0.0;
    double slope = 0.0;
};

using PiecewiseInput = std::vector<InputPiece>;

// Integral of B(t) u(t) over [0, T], with B = -1 on [2k/n, (2k+1)/n) and +1
// on the other half-periods.
double oscillating_gain_integral(int n, const PiecewiseInput& u, const Rational& T);

// For each n: sup over the input set of |integral|.
std::vector<double> oscillation_sup_table(const std::vector<int>& n_values,
                                          const std::vector<PiecewiseInput>& inputs,
                                          const Rational& T);

// Deterministic piecewise-constant inputs on [0, T] for the experiment.
std::vector<PiecewiseInput> make_random_step_inputs(int count, int segments, const Rational& T,
                                                    std::uint64_t seed);

} // namespace slsq

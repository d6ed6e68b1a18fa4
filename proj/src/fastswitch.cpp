#include "slsq/fastswitch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace slsq {

Rational make_rational(long long num, long long den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {num, den};
}

double to_double(const Rational& r) {
    return static_cast<double>(r.num) / static_cast<double>(r.den);
}

Rational rat_sub(const Rational& a, const Rational& b) {
    return make_rational(a.num * b.den - b.num * a.den, a.den * b.den);
}

bool rat_less(const Rational& a, const Rational& b) {
    return a.num * b.den < b.num * a.den;
}

static bool rat_le(const Rational& a, const Rational& b) { return !rat_less(b, a); }

double oscillating_gain_integral(int n, const PiecewiseInput& u, const Rational& T) {
    if (n < 1) throw std::invalid_argument("oscillating_gain_integral: n must be >= 1");
    if (u.empty()) return 0.0;
    if (u.front().t0.num != 0) throw std::invalid_argument("input must start at 0");
    for (std::size_t i = 1; i < u.size(); ++i)
        if (rat_sub(u[i].t0, u[i - 1].t1).num != 0)
            throw std::invalid_argument("input pieces must be contiguous");
    if (rat_less(u.back().t1, T)) throw std::invalid_argument("input does not cover [0, T]");

    double total = 0.0;
    std::size_t piece = 0;
    // walk the half-period breakpoints k/n, intersecting with the input pieces
    for (long long k = 0;; ++k) {
        Rational a = make_rational(k, n);
        const Rational b_end = make_rational(k + 1, n);
        if (rat_le(T, a)) break;
        const Rational hi = rat_less(T, b_end) ? T : b_end;
        const double sign = (k % 2 == 0) ? -1.0 : 1.0; // gain -1 on even half-periods
        while (rat_less(a, hi)) {
            while (piece + 1 < u.size() && rat_le(u[piece].t1, a)) ++piece;
            const InputPiece& p = u[piece];
            const Rational sub_hi = rat_less(p.t1, hi) ? p.t1 : hi;
            const Rational len_r = rat_sub(sub_hi, a);
            const double len = to_double(len_r);
            const double mid = 0.5 * (to_double(a) + to_double(sub_hi));
            // exact for the linear integrand: average value times length
            const double avg = p.v0 + p.slope * (mid - to_double(p.t0));
            total += sign * avg * len;
            a = sub_hi;
        }
    }
    return total;
}

std::vector<double> oscillation_sup_table(const std::vector<int>& n_values,
                                          const std::vector<PiecewiseInput>& inputs,
                                          const Rational& T) {
    std::vector<double> sup;
    sup.reserve(n_values.size());
    for (int n : n_values) {
        double worst = 0.0;
        for (const PiecewiseInput& u : inputs)
            worst = std::max(worst, std::abs(oscillating_gain_integral(n, u, T)));
        sup.push_back(worst);
    }
    return sup;
}

std::vector<PiecewiseInput> make_random_step_inputs(int count, int segments, const Rational& T,
                                                    std::uint64_t seed) {
    if (count < 1 || segments < 1) throw std::invalid_argument("make_random_step_inputs: bad arguments");
    std::mt19937_64 rng(seed);
    const auto uniform = [&rng](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    std::vector<PiecewiseInput> out;
    for (int i = 0; i < count; ++i) {
        PiecewiseInput u;
        for (int s = 0; s < segments; ++s) {
            InputPiece p;
            p.t0 = make_rational(T.num * s, T.den * segments);
            p.t1 = make_rational(T.num * (s + 1), T.den * segments);
            p.v0 = uniform(-1.0, 1.0);
            p.slope = 0.0;
            u.push_back(p);
        }
        out.push_back(std::move(u));
    }
    return out;
}

} // namespace slsq

#include "slsq/gronwall.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace slsq {

namespace {

void validate_ode(const PiecewiseLinearOde& ode, int d) {
    if (ode.start_ticks.empty() || ode.start_ticks.front() != 0)
        throw std::invalid_argument("gronwall: first segment must start at 0");
    if (ode.start_ticks.size() != ode.A.size() || ode.A.size() != ode.u.size())
        throw std::invalid_argument("gronwall: segment arrays disagree");
    for (std::size_t i = 1; i < ode.start_ticks.size(); ++i)
        if (ode.start_ticks[i] <= ode.start_ticks[i - 1])
            throw std::invalid_argument("gronwall: segment starts not increasing");
    for (std::size_t i = 0; i < ode.A.size(); ++i) {
        if (ode.A[i].rows() != d || ode.A[i].cols() != d || static_cast<int>(ode.u[i].size()) != d)
            throw std::invalid_argument("gronwall: segment dimension mismatch");
    }
}

std::size_t segment_at(const PiecewiseLinearOde& ode, Tick t) {
    std::size_t i = 0;
    while (i + 1 < ode.start_ticks.size() && ode.start_ticks[i + 1] <= t) ++i;
    return i;
}

// exact step of x' = A x + u over dt via the affine-augmented exponential
Vec affine_step(const Mat& A, const Vec& u, const Vec& x, double dt,
                std::map<std::pair<const void*, double>, Mat>& cache) {
    const int d = A.rows();
    const auto key = std::make_pair(static_cast<const void*>(&A), dt);
    auto it = cache.find(key);
    if (it == cache.end()) {
        Mat g(d + 1, d + 1);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) g(i, j) = A(i, j);
            g(i, d) = u[i];
        }
        it = cache.emplace(key, expm(dt * g)).first;
    }
    Vec z(d + 1);
    for (int i = 0; i < d; ++i) z[i] = x[i];
    z[d] = 1.0;
    const Vec z1 = it->second * z;
    return Vec(z1.begin(), z1.begin() + d);
}

} // namespace

GronwallReport gronwall_check(const PiecewiseLinearOde& sys1, const PiecewiseLinearOde& sys2,
                              const Vec& x10, const Vec& x20, Tick horizon, double nu,
                              Tick grid_step) {
    const int d = static_cast<int>(x10.size());
    if (static_cast<int>(x20.size()) != d) throw std::invalid_argument("gronwall: x0 size mismatch");
    if (sys1.base_tick != sys2.base_tick) throw std::invalid_argument("gronwall: tick grids differ");
    if (grid_step < 1 || horizon < 0) throw std::invalid_argument("gronwall: bad grid");
    validate_ode(sys1, d);
    validate_ode(sys2, d);
    for (const PiecewiseLinearOde* ode : {&sys1, &sys2})
        for (const Mat& a : ode->A)
            if (log_norm(a) > nu + 1e-12)
                throw std::invalid_argument("gronwall: nu below a segment log-norm");

    // evaluation grid: regular steps plus every segment boundary
    std::set<Tick> grid_set{0, horizon};
    for (Tick t = grid_step; t < horizon; t += grid_step) grid_set.insert(t);
    for (const PiecewiseLinearOde* ode : {&sys1, &sys2})
        for (Tick t : ode->start_ticks)
            if (t > 0 && t < horizon) grid_set.insert(t);

    GronwallReport rep;
    rep.grid.assign(grid_set.begin(), grid_set.end());

    const double tick = sys1.base_tick;
    std::map<std::pair<const void*, double>, Mat> cache;
    Vec x1 = x10, x2 = x20;
    double cum = 0.0; // integral of e^{-nu s} ||dA(s) x2(s) + du(s)||, trapezoidal
    double prev_integrand = 0.0;
    Tick prev_t = 0;
    const double d0 = norm2(x10 - x20);

    bool first = true;
    for (Tick t : rep.grid) {
        if (!first) {
            const double dt = static_cast<double>(t - prev_t) * tick;
            const std::size_t s1 = segment_at(sys1, prev_t);
            const std::size_t s2 = segment_at(sys2, prev_t);
            x1 = affine_step(sys1.A[s1], sys1.u[s1], x1, dt, cache);
            x2 = affine_step(sys2.A[s2], sys2.u[s2], x2, dt, cache);
        }
        const double ts = static_cast<double>(t) * tick;
        const std::size_t s1 = segment_at(sys1, t);
        const std::size_t s2 = segment_at(sys2, t);
        const Vec mism = (sys1.A[s1] - sys2.A[s2]) * x2 + (sys1.u[s1] - sys2.u[s2]);
        const double integrand = std::exp(-nu * ts) * norm2(mism);
        if (!first)
            cum += 0.5 * (prev_integrand + integrand) * static_cast<double>(t - prev_t) * tick;
        prev_integrand = integrand;
        prev_t = t;
        first = false;

        const double lhs = norm2(x1 - x2);
        const double rhs = std::exp(nu * ts) * (d0 + cum);
        rep.lhs.push_back(lhs);
        rep.rhs.push_back(rhs);
        if (rhs > 0.0) rep.max_ratio = std::max(rep.max_ratio, lhs / rhs);
        if (lhs > rhs * (1.0 + 1e-6)) rep.holds = false;
    }
    return rep;
}

} // namespace slsq

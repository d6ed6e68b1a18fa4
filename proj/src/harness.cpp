#include "slsq/harness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "slsq/svg.hpp"

namespace slsq {

namespace {

struct FlowCache {
    const SwitchedLinearSystem& sys;
    const FeedbackLaw& fb;
    double base_tick;
    std::map<std::tuple<int, int, Tick>, Mat> cache;

    const Mat& get(int true_mode, int model_mode, Tick dticks) {
        const auto key = std::make_tuple(true_mode, model_mode, dticks);
        auto it = cache.find(key);
        if (it == cache.end()) {
            const Mat g = augmented_generator(sys.A[true_mode], sys.B[true_mode],
                                              sys.A[model_mode], sys.B[model_mode], fb.K[model_mode]);
            it = cache.emplace(key, expm((static_cast<double>(dticks) * base_tick) * g)).first;
        }
        return it->second;
    }
};

} // namespace

ClosedLoopTrace run_closed_loop(const SwitchedLinearSystem& sys, const FeedbackLaw& fb,
                                const CoderControllerConfig& cfg, const SwitchingSignal& sig,
                                const Vec& x0, const RunOptions& opts) {
    sys.validate();
    cfg.validate();
    sig.validate();
    if (sig.base_tick != cfg.base_tick)
        throw std::invalid_argument("run_closed_loop: signal and config tick grids differ");
    if (static_cast<int>(x0.size()) != sys.d)
        throw std::invalid_argument("run_closed_loop: x0 dimension mismatch");
    if (norm2(x0) > cfg.r0 * (1.0 + 1e-12))
        throw std::invalid_argument("run_closed_loop: ||x0|| exceeds r0");

    const BallQuantizer q = build_quantizer(sys.d, cfg.alpha);
    Coder coder(cfg, q);
    Controller ctrl(sys, fb, cfg, q);
    FlowCache flow{sys, fb, cfg.base_tick, {}};

    ClosedLoopTrace trace;
    trace.base_tick = cfg.base_tick;
    const DerivedConstants dc = derive_constants(cfg);
    if (dc.rho_bar < dc.rhs) {
        trace.mu = dc.mu;
        trace.lambda = dc.lambda;
    }
    if (opts.adt_check_N0 >= 0.0)
        trace.adt_admissible = is_adt_admissible(sig, {cfg.tau_a, opts.adt_check_N0}).admissible;

    const std::uint64_t m_hat = q.m_hat();
    const Tick tau_s = cfg.tau_s_ticks;
    const std::int64_t steps = sig.horizon / tau_s;

    Vec x = x0;
    auto next_event = sig.events.begin();
    for (std::int64_t i = 0; i < steps; ++i) {
        const Tick t = static_cast<Tick>(i) * tau_s;
        const int sigma = sig.mode_at(t);
        const bool is_block = (i % cfg.n) == 0;

        Symbol sym;
        if (is_block) {
            const int k = coder.block_index();
            const double prev_r = coder.radius();
            sym = coder.block_step(x, sigma);
            BlockRecord rec;
            rec.k = k;
            rec.tick = t;
            rec.x_norm = norm2(x);
            rec.r = coder.radius();
            rec.beta = (k == 0) ? 1.0 : rec.r / prev_r;
            rec.nmissed = sym.nmissed;
            if (k >= 1) {
                rec.nstar_prev = mismatch_flags(sig, tau_s, cfg.n, k - 1).total;
                rec.switches_prev = count_switches(sig, t - static_cast<Tick>(cfg.n) * tau_s, t);
            }
            trace.blocks.push_back(rec);
        } else {
            sym = coder.mode_step(sigma);
        }
        trace.symbols.push_back(sym);
        trace.total_bits += bit_cost(sym, cfg, sys.mode_count(), m_hat);

        const InputSegment seg = ctrl.step(sym);
        if (opts.record_samples) {
            SampleRecord s;
            s.tick = t;
            s.x = x;
            s.xhat = seg.xhat0;
            s.u = fb.K[seg.mode] * seg.xhat0;
            s.sigma = sigma;
            s.sigma_hat = seg.mode;
            trace.samples.push_back(std::move(s));
        }

        // propagate (x, xhat) exactly through the switch events inside the interval
        const Tick t_end = t + tau_s;
        Vec z(2 * sys.d);
        for (int j = 0; j < sys.d; ++j) {
            z[j] = x[j];
            z[sys.d + j] = seg.xhat0[j];
        }
        Tick at = t;
        int true_mode = sigma;
        while (next_event != sig.events.end() && next_event->time <= t) ++next_event;
        auto ev = next_event;
        while (at < t_end) {
            Tick to = t_end;
            if (ev != sig.events.end() && ev->time < t_end) to = ev->time;
            if (to > at) z = flow.get(true_mode, seg.mode, to - at) * z;
            at = to;
            if (ev != sig.events.end() && ev->time == at) {
                true_mode = ev->mode;
                ++ev;
            }
        }
        for (int j = 0; j < sys.d; ++j) x[j] = z[j];
    }
    return trace;
}

namespace {

// least-squares slope of y against t
double fit_slope(const std::vector<double>& t, const std::vector<double>& y) {
    const std::size_t n = t.size();
    if (n < 2) return 0.0;
    double mt = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mt += t[i];
        my += y[i];
    }
    mt /= n;
    my /= n;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (t[i] - mt) * (y[i] - my);
        den += (t[i] - mt) * (t[i] - mt);
    }
    return den > 0.0 ? num / den : 0.0;
}

} // namespace

TraceReport verify_trace(const ClosedLoopTrace& trace, const SwitchingSignal& sig,
                         const CoderControllerConfig& cfg) {
    TraceReport rep;
    const ConditionReport cond = check_condition(cfg);
    if (cond.satisfied) rep.lambda = decay_rates(cfg).lambda;

    double product = cfg.r0;
    for (const BlockRecord& b : trace.blocks) {
        if (b.x_norm > b.r * (1.0 + 1e-12)) {
            rep.soundness_ok = false;
            ++rep.violations;
            rep.notes.push_back("soundness violated at block " + std::to_string(b.k));
        }
        if (b.k >= 1) {
            product *= b.beta;
            if (b.nmissed > b.nstar_prev || b.nstar_prev > cfg.n) {
                rep.mismatch_bound_ok = false;
                ++rep.violations;
                rep.notes.push_back("mismatch bound violated at block " + std::to_string(b.k));
            }
            if (std::abs(b.r - product) > 1e-12 * std::max(std::abs(b.r), std::abs(product))) {
                rep.product_ok = false;
                ++rep.violations;
                rep.notes.push_back("radius product identity violated at block " + std::to_string(b.k));
            }
        }
    }

    if (!trace.blocks.empty()) {
        const Tick half = trace.blocks.back().tick / 2;
        std::vector<double> ts, lr, lx;
        for (const BlockRecord& b : trace.blocks) {
            if (b.tick < half) continue;
            ts.push_back(static_cast<double>(b.tick) * trace.base_tick);
            lr.push_back(std::log(std::max(b.r, 1e-300)));
            lx.push_back(std::log(std::max(b.x_norm, 1e-300)));
        }
        rep.decay_rate_r = -fit_slope(ts, lr);
        rep.decay_rate_x = -fit_slope(ts, lx);
    }
    if (!trace.adt_admissible)
        rep.notes.push_back("signal not ADT-admissible for the configured budget; bounds not asserted");
    (void)sig;
    return rep;
}

std::string trace_to_csv(const ClosedLoopTrace& trace) {
    std::ostringstream out;
    const int d = trace.samples.empty() ? 0 : static_cast<int>(trace.samples.front().x.size());
    const int c = trace.samples.empty() ? 0 : static_cast<int>(trace.samples.front().u.size());
    out << "t";
    for (int i = 1; i <= d; ++i) out << ",x" << i;
    for (int i = 1; i <= d; ++i) out << ",xhat" << i;
    for (int i = 1; i <= c; ++i) out << ",u" << i;
    out << ",sigma,sigma_hat,r_k,beta_k,b_k\n";
    out.precision(17);
    std::map<Tick, const BlockRecord*> block_at;
    for (const BlockRecord& b : trace.blocks) block_at[b.tick] = &b;
    for (const SampleRecord& s : trace.samples) {
        out << static_cast<double>(s.tick) * trace.base_tick;
        for (double v : s.x) out << "," << v;
        for (double v : s.xhat) out << "," << v;
        for (double v : s.u) out << "," << v;
        out << "," << s.sigma << "," << s.sigma_hat;
        auto it = block_at.find(s.tick);
        if (it != block_at.end())
            out << "," << it->second->r << "," << it->second->beta << "," << it->second->nmissed;
        else
            out << ",,,";
        out << "\n";
    }
    return out.str();
}

std::string trace_to_svg(const ClosedLoopTrace& trace, const SwitchingSignal& sig) {
    SvgSeries xs{"||x(t)||", "#1f4e9c", {}};
    SvgSeries us{"||u(t)||", "#d2691e", {}};
    SvgSeries ss{"mode", "#222222", {}};
    double xmax = 0.0;
    for (const SampleRecord& s : trace.samples) {
        const double t = static_cast<double>(s.tick) * trace.base_tick;
        const double nx = norm2(s.x);
        xs.points.push_back({t, nx});
        us.points.push_back({t, norm2(s.u)});
        xmax = std::max(xmax, nx);
    }
    // mode trace drawn as a step function below the data
    const double lo = -0.25 * std::max(xmax, 1e-9);
    int mode = sig.initial_mode;
    ss.points.push_back({0.0, lo * (1.0 + 0.3 * mode)});
    for (const SwitchEvent& e : sig.events) {
        const double t = sig.seconds(e.time);
        ss.points.push_back({t, lo * (1.0 + 0.3 * mode)});
        mode = e.mode;
        ss.points.push_back({t, lo * (1.0 + 0.3 * mode)});
    }
    ss.points.push_back({sig.seconds(sig.horizon), lo * (1.0 + 0.3 * mode)});
    return render_line_plot({xs, us, ss}, "closed-loop trace");
}

} // namespace slsq

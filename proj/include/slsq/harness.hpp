#pragma once

#include <string>
#include <vector>

#include "slsq/coder.hpp"
#include "slsq/controller.hpp"
#include "slsq/design.hpp"
#include "slsq/quantizer.hpp"
#include "slsq/sls.hpp"
#include "slsq/switching.hpp"

// Closed-loop orchestration: merges the sampling timeline with the switch
// events, propagates (x, xhat) exactly between events, and records the
// bookkeeping needed to verify the radius-contract invariants.

namespace slsq {

struct SampleRecord {
    Tick tick = 0;
    Vec x;
    Vec xhat; // controller model state at the segment start
    Vec u;    // input applied at the sampling instant
    int sigma = 0;
    int sigma_hat = 0;
};

struct BlockRecord {
    int k = 0;
    Tick tick = 0;
    double x_norm = 0.0; // ||x(k n tau_s)|| as observed by the coder
    double r = 0.0;
    double beta = 0.0; // r_k / r_{k-1}; 1 for k = 0
    int nmissed = 0;
    int nstar_prev = -1;   // N*_{k-1} on the true signal; -1 for k = 0
    int switches_prev = -1; // N_sigma(t_k, t_{k-1}); -1 for k = 0
};

struct ClosedLoopTrace {
    double base_tick = 0.0;
    std::vector<SampleRecord> samples; // empty when sample recording is off
    std::vector<BlockRecord> blocks;
    std::vector<Symbol> symbols;
    double total_bits = 0.0; // real-valued log2 alphabet accounting
    double mu = 0.0;
    double lambda = 0.0;
    bool adt_admissible = true; // vs the budget implied by cfg.tau_a; informational
};

struct RunOptions {
    bool record_samples = true;
    double adt_check_N0 = -1.0; // >= 0: flag inadmissibility against (tau_a, N0)
};

ClosedLoopTrace run_closed_loop(const SwitchedLinearSystem& sys, const FeedbackLaw& fb,
                                const CoderControllerConfig& cfg, const SwitchingSignal& sig,
                                const Vec& x0, const RunOptions& opts = {});

struct TraceReport {
    bool soundness_ok = true;   // ||x(t_k)|| <= r_k at every block
    bool mismatch_bound_ok = true; // b_k <= N*_{k-1} <= n at every block
    bool product_ok = true;     // r_k == r0 * prod beta_q to 1e-12 relative
    int violations = 0;
    double decay_rate_r = 0.0;  // slope fit on log r_k, trailing half
    double decay_rate_x = 0.0;  // slope fit on log ||x(t_k)||, trailing half
    double lambda = 0.0;        // guaranteed rate the fits are compared against
    std::vector<std::string> notes;
};

TraceReport verify_trace(const ClosedLoopTrace& trace, const SwitchingSignal& sig,
                         const CoderControllerConfig& cfg);

std::string trace_to_csv(const ClosedLoopTrace& trace);

// Polyline SVG of ||x(t)||, ||u(t)|| and the switching signal.
std::string trace_to_svg(const ClosedLoopTrace& trace, const SwitchingSignal& sig);

} // namespace slsq

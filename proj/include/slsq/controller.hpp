#pragma once

#include <map>
#include <utility>

#include "slsq/coder.hpp"
#include "slsq/sls.hpp"

// Controller side of the channel: decodes the symbol stream, mirrors the
// coder's radius bookkeeping through the identical formula path, and runs
// the internal closed-loop model to synthesize the input between symbols.

namespace slsq {

// u(t) = K_i xhat(t) on [t_start, t_end), xhat the model closed-loop flow
// from xhat0. Evaluated on demand; never sampled into arrays.
struct InputSegment {
    Tick t_start = 0;
    Tick t_end = 0;
    int mode = 0;
    Vec xhat0;
};

class Controller {
public:
    Controller(const SwitchedLinearSystem& sys, const FeedbackLaw& fb,
               const CoderControllerConfig& cfg, const BallQuantizer& q);

    // Consumes the next symbol (timestamp-checked) and yields the input
    // segment for the coming sampling interval.
    InputSegment step(const Symbol& sym);

    Vec xhat_at(const InputSegment& seg, Tick t) const;
    Vec input_at(const InputSegment& seg, Tick t) const;

    double radius() const { return r_; }
    const Vec& xi() const { return xi_; }
    int block_index() const { return k_; }

private:
    const Mat& model_flow(int mode, Tick dticks) const;

    const SwitchedLinearSystem& sys_;
    const FeedbackLaw& fb_;
    const CoderControllerConfig& cfg_;
    const BallQuantizer& q_;
    DerivedConstants dc_;
    std::int64_t step_ = 0;
    int k_ = 0;
    double r_prev_ = 0.0;
    double r_ = 0.0;
    Vec xi_;
    InputSegment current_;
    mutable std::map<std::pair<int, Tick>, Mat> flow_cache_;
};

} // namespace slsq

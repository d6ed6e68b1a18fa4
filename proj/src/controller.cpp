#include "slsq/controller.hpp"

#include <cmath>
#include <stdexcept>

namespace slsq {

Controller::Controller(const SwitchedLinearSystem& sys, const FeedbackLaw& fb,
                       const CoderControllerConfig& cfg, const BallQuantizer& q)
    : sys_(sys), fb_(fb), cfg_(cfg), q_(q), dc_(derive_constants(cfg)) {
    cfg.validate();
    sys.validate();
    if (q.d != sys.d) throw std::invalid_argument("controller: quantizer dimension mismatch");
    r_prev_ = cfg.r0;
    r_ = cfg.r0;
    xi_.assign(sys.d, 0.0);
}

const Mat& Controller::model_flow(int mode, Tick dticks) const {
    const auto key = std::make_pair(mode, dticks);
    auto it = flow_cache_.find(key);
    if (it == flow_cache_.end()) {
        const Mat cl = sys_.A[mode] + sys_.B[mode] * fb_.K[mode];
        it = flow_cache_.emplace(key, expm((static_cast<double>(dticks) * cfg_.base_tick) * cl)).first;
    }
    return it->second;
}

InputSegment Controller::step(const Symbol& sym) {
    const Tick expected = static_cast<Tick>(step_) * cfg_.tau_s_ticks;
    if (sym.tick != expected) throw ProtocolError("controller: symbol timestamp out of cadence");
    if (sym.mode < 0 || sym.mode >= sys_.mode_count())
        throw ProtocolError("controller: undecodable mode");

    const bool block_expected = (step_ % cfg_.n) == 0;
    if (block_expected != (sym.kind == Symbol::Kind::block))
        throw ProtocolError("controller: symbol kind out of cadence");

    if (sym.kind == Symbol::Kind::block) {
        if (sym.eta_index < 0 || static_cast<std::uint64_t>(sym.eta_index) >= q_.m())
            throw ProtocolError("controller: undecodable state index");
        if (sym.nmissed < 0 || sym.nmissed > cfg_.n)
            throw ProtocolError("controller: undecodable mismatch count");
        if (k_ > 0) {
            // identical formula path as the coder, so r stays bit-identical
            const double beta =
                beta_value(sym.nmissed, cfg_.n, dc_.psi, dc_.alpha_bar, dc_.eps_bar, cfg_.cert.mu1);
            r_ = beta * r_prev_;
        }
        const Vec& point = q_.points[sym.eta_index];
        Vec xi(sys_.d);
        for (int i = 0; i < sys_.d; ++i) xi[i] = r_ * point[i];
        xi_ = std::move(xi);
        r_prev_ = r_;
        ++k_;
    } else {
        // carry the model state across the sampling boundary
        xi_ = model_flow(current_.mode, cfg_.tau_s_ticks) * current_.xhat0;
    }

    current_.t_start = expected;
    current_.t_end = expected + cfg_.tau_s_ticks;
    current_.mode = sym.mode;
    current_.xhat0 = xi_;
    ++step_;
    return current_;
}

Vec Controller::xhat_at(const InputSegment& seg, Tick t) const {
    if (t < seg.t_start || t >= seg.t_end)
        throw std::invalid_argument("xhat_at: time outside segment");
    if (t == seg.t_start) return seg.xhat0;
    return model_flow(seg.mode, t - seg.t_start) * seg.xhat0;
}

Vec Controller::input_at(const InputSegment& seg, Tick t) const {
    return fb_.K[seg.mode] * xhat_at(seg, t);
}

} // namespace slsq

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "slsq/design.hpp"
#include "slsq/quantizer.hpp"

// Coder side of the channel: observes (x, mode) at sampling instants,
// maintains the shared radius bookkeeping (r_k, beta_k, b_k) and emits one
// symbol per instant. Block symbols carry the quantized scaled state, the
// mode and the mismatch count; the other n-1 instants carry the mode only.

namespace slsq {

struct Symbol {
    enum class Kind : std::uint8_t { block = 0, mode_only = 1 };
    Kind kind = Kind::mode_only;
    Tick tick = 0;
    int mode = 0;
    int eta_index = 0; // block only
    int nmissed = 0;   // block only
};

struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when no admissible mismatch count exists; on ADT-admissible runs
// this indicates a broken contract upstream, never a recoverable state.
struct SoundnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Coder {
public:
    Coder(const CoderControllerConfig& cfg, const BallQuantizer& q);

    // Exactly one call per sampling instant, in time order. Block instants
    // (step index divisible by n) take the observed state.
    Symbol block_step(const Vec& x_obs, int mode_obs);
    Symbol mode_step(int mode_obs);

    double radius() const { return r_; }
    double prev_radius() const { return r_prev_; }
    int block_index() const { return k_; }
    Tick next_tick() const { return static_cast<Tick>(step_) * cfg_.tau_s_ticks; }
    bool expects_block() const { return step_ % cfg_.n == 0; }

private:
    const CoderControllerConfig& cfg_;
    const BallQuantizer& q_;
    DerivedConstants dc_;
    std::int64_t step_ = 0; // sampling instants consumed
    int k_ = 0;             // blocks consumed
    double r_prev_ = 0.0;
    double r_ = 0.0;
};

double bit_cost(const Symbol& sym, const CoderControllerConfig& cfg, int mode_count,
                std::uint64_t m_hat);

// Binary log: fixed-width big-endian fields, one record per symbol.
std::vector<std::uint8_t> symbols_to_binary(const std::vector<Symbol>& symbols);
std::vector<Symbol> symbols_from_binary(const std::vector<std::uint8_t>& bytes);

// JSON-lines mirror of the same stream, for inspection.
std::string symbols_to_jsonl(const std::vector<Symbol>& symbols);
std::vector<Symbol> symbols_from_jsonl(const std::string& text);

} // namespace slsq

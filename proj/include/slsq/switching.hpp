#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Switching signals as exact event lists on an integer tick grid.
// Mode indices are 0-based. All event and sampling times are tick counts;
// a tick is base_tick seconds.

namespace slsq {

using Tick = std::int64_t;

struct SwitchEvent {
    Tick time = 0;
    int mode = 0; // mode after the switch
};

struct SwitchingSignal {
    double base_tick = 1e-3; // seconds per tick
    int initial_mode = 0;
    std::vector<SwitchEvent> events; // strictly increasing times in (0, horizon]
    Tick horizon = 0;

    int mode_at(Tick t) const; // right-continuous lookup
    double seconds(Tick t) const { return static_cast<double>(t) * base_tick; }
    void validate() const;
};

struct AdtBudget {
    double tau_a = 1.0; // average dwell time, seconds, > 0
    double N0 = 0.0;    // chatter bound, >= 0
};

// Number of switches in the half-open window [s, t).
int count_switches(const SwitchingSignal& sig, Tick s, Tick t);

struct AdtReport {
    bool admissible = true;
    // Most violating window [s, t+): count vs allowed N0 + (t-s)/tau_a,
    // with t taken just above the switch at worst_t.
    Tick worst_s = 0;
    Tick worst_t = 0;
    int count = 0;
    double allowed = 0.0;
    double slack = 0.0; // allowed - count, minimized over windows
};

AdtReport is_adt_admissible(const SwitchingSignal& sig, const AdtBudget& budget);

// Pseudorandom signal that satisfies the ADT bound by construction: a token
// bucket with capacity N0 (initially full) and refill rate 1/tau_a; each
// switch consumes one full token. With N0 < 1 no switch is ever possible and
// the signal is constant. Deterministic given the seed.
SwitchingSignal generate_adt_signal(const AdtBudget& budget, Tick horizon, int mode_count,
                                    std::uint64_t seed, double base_tick);

// Periodic oscillation between modes 0 and 1 with half-period 1/n seconds:
// mode 0 on [2k/n, (2k+1)/n), mode 1 on [(2k+1)/n, (2k+2)/n).
SwitchingSignal generate_sigma_n(int n, Tick horizon, double base_tick);

// Sample-and-hold with period tau_s ticks: value frozen at the last sampling
// instant. Events occur only at multiples of tau_s.
SwitchingSignal sample_and_hold(const SwitchingSignal& sig, Tick tau_s);

struct BlockMismatch {
    std::vector<int> flags; // n per-interval booleans b*_{kn+j}
    int total = 0;          // N*_k
};

// For block k of n sampling intervals: flag j is 1 iff at least one switch
// falls in [(kn+j) tau_s, (kn+j+1) tau_s).
BlockMismatch mismatch_flags(const SwitchingSignal& sig, Tick tau_s, int n, int k);

std::string signal_to_json(const SwitchingSignal& sig);
SwitchingSignal signal_from_json(const std::string& text);
std::string signal_to_csv(const SwitchingSignal& sig); // (t, mode) step function

} // namespace slsq

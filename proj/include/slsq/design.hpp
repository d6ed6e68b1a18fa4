#pragma once

#include <cstdint>
#include <string>

#include "slsq/sls.hpp"
#include "slsq/switching.hpp"

// Parameter selection and rate/decay arithmetic for the coder-controller:
// the feasibility condition, the derived block constants, the data rate and
// the guaranteed decay rates.

namespace slsq {

struct CoderControllerConfig {
    double base_tick = 1e-3;
    Tick tau_s_ticks = 1; // sampling period, ticks
    int n = 1;            // block length, sampling intervals per state symbol
    double alpha = 0.0;   // quantizer accuracy
    double r0 = 1.0;      // initial radius, ||x(0)|| <= r0
    double tau_a = 1.0;   // average dwell time the design is built for
    StabilizabilityCertificate cert;
    SystemConstants consts;

    double tau_s() const { return static_cast<double>(tau_s_ticks) * base_tick; }
    double block_time() const { return static_cast<double>(n) * tau_s(); }
    void validate() const;
};

struct DerivedConstants {
    double psi = 0.0;       // D e^{-mu2 n tau_s}
    double alpha_bar = 0.0; // e^{nu n tau_s} alpha
    double eps_bar = 0.0;   // e^{nu n tau_s} tau_s D (delta1 + delta2 L)
    double eps_block = 0.0; // eps_bar * (n tau_s / tau_a)
    double rho_bar = 0.0;   // psi + alpha_bar + eps_block (feasibility lhs)
    double rhs = 0.0;       // e^{-mu1 n tau_s / tau_a}
    double mu = 0.0;        // guaranteed radius decay rate
    double lambda = 0.0;    // reported decay rate, mu/2
};

struct ConditionReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
};

DerivedConstants derive_constants(const CoderControllerConfig& cfg);
ConditionReport check_condition(const CoderControllerConfig& cfg);

// Radius contraction factor for a block with `nmissed` mismatched intervals:
// e^{mu1 b} psi + alpha_bar + e^{mu1 b} b eps_bar. Strictly increasing in b.
double beta_value(int nmissed, int n, double psi, double alpha_bar, double eps_bar, double mu1);
double beta_value(int nmissed, const CoderControllerConfig& cfg);

// Average bits per unit time: (1/tau_s)[(1/n) log2 m_hat + (1/n) log2(n+1) + log2 |modes|].
// Uses the alphabet-size bound m_hat, not the deduplicated point count.
double data_rate(const CoderControllerConfig& cfg, int mode_count, std::uint64_t m_hat);

struct DecayRates {
    double mu = 0.0;
    double lambda = 0.0; // mu/2
};

// mu = mu1/tau_a - ln(rho_bar)/(n tau_s); requires check_condition to hold.
DecayRates decay_rates(const CoderControllerConfig& cfg);

struct SearchTargets {
    double base_tick = 1e-3;
    int d = 0;
    int mode_count = 0;
    double r0 = 1.0;
    double margin = 0.05;      // headroom on the block contraction prerequisite
    int max_alpha_steps = 12;  // alpha in 0.5, 0.25, ...
    int max_n_doublings = 16;  // n in 1, 2, 4, ...
};

// Two-phase selection: first the smallest tick-aligned block time T with
// D e^{(mu1/tau_a - mu2) T} <= 1 - margin, then a grid search over (alpha, n)
// keeping the feasible pair of smallest data rate (ties toward smaller n).
CoderControllerConfig search_parameters(const SystemConstants& consts,
                                        const StabilizabilityCertificate& cert,
                                        double tau_a, const SearchTargets& targets);

std::string config_to_json(const CoderControllerConfig& cfg, int d, int mode_count);
CoderControllerConfig config_from_json(const std::string& text);

} // namespace slsq

#include "slsq/design.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "slsq/quantizer.hpp"

namespace slsq {

void CoderControllerConfig::validate() const {
    if (!(base_tick > 0.0)) throw std::invalid_argument("config: base_tick must be > 0");
    if (tau_s_ticks < 1) throw std::invalid_argument("config: tau_s must be >= 1 tick");
    if (n < 1) throw std::invalid_argument("config: n must be >= 1");
    if (!(alpha > 0.0)) throw std::invalid_argument("config: alpha must be > 0");
    if (!(r0 > 0.0)) throw std::invalid_argument("config: r0 must be > 0");
    if (!(tau_a > 0.0)) throw std::invalid_argument("config: tau_a must be > 0");
    cert.validate();
    if (!(cert.mu1 / tau_a < cert.mu2))
        throw std::invalid_argument("config: need mu1/tau_a < mu2");
}

double beta_value(int nmissed, int n, double psi, double alpha_bar, double eps_bar, double mu1) {
    if (nmissed < 0 || nmissed > n) throw std::invalid_argument("beta_value: nmissed out of [0, n]");
    const double jump = std::exp(mu1 * nmissed);
    return jump * psi + alpha_bar + jump * nmissed * eps_bar;
}

double beta_value(int nmissed, const CoderControllerConfig& cfg) {
    const DerivedConstants dc = derive_constants(cfg);
    return beta_value(nmissed, cfg.n, dc.psi, dc.alpha_bar, dc.eps_bar, cfg.cert.mu1);
}

DerivedConstants derive_constants(const CoderControllerConfig& cfg) {
    const double T = cfg.block_time();
    const double growth = std::exp(cfg.consts.nu * T);
    DerivedConstants dc;
    dc.psi = cfg.cert.D * std::exp(-cfg.cert.mu2 * T);
    dc.alpha_bar = growth * cfg.alpha;
    dc.eps_bar = growth * cfg.tau_s() * cfg.cert.D * (cfg.consts.delta1 + cfg.consts.delta2 * cfg.consts.L);
    dc.eps_block = dc.eps_bar * (T / cfg.tau_a);
    dc.rho_bar = dc.psi + dc.alpha_bar + dc.eps_block;
    dc.rhs = std::exp(-cfg.cert.mu1 * T / cfg.tau_a);
    if (dc.rho_bar < dc.rhs) {
        dc.mu = cfg.cert.mu1 / cfg.tau_a - std::log(dc.rho_bar) / T;
        dc.lambda = dc.mu / 2.0;
    }
    return dc;
}

ConditionReport check_condition(const CoderControllerConfig& cfg) {
    const DerivedConstants dc = derive_constants(cfg);
    return {dc.rho_bar, dc.rhs, dc.rho_bar < dc.rhs};
}

double data_rate(const CoderControllerConfig& cfg, int mode_count, std::uint64_t m_hat) {
    if (mode_count < 1 || m_hat < 1) throw std::invalid_argument("data_rate: bad arguments");
    const double per_block = std::log2(static_cast<double>(m_hat)) / cfg.n +
                             std::log2(static_cast<double>(cfg.n) + 1.0) / cfg.n +
                             std::log2(static_cast<double>(mode_count));
    return per_block / cfg.tau_s();
}

DecayRates decay_rates(const CoderControllerConfig& cfg) {
    const DerivedConstants dc = derive_constants(cfg);
    if (!(dc.rho_bar < dc.rhs))
        throw std::runtime_error("decay_rates: feasibility condition not satisfied");
    return {dc.mu, dc.lambda};
}

// Alphabet bound without building the point set; 0 signals overflow past 2^40.
static std::uint64_t m_hat_bound(int d, double alpha) {
    const double sqrt_d = std::sqrt(static_cast<double>(d));
    const long long half = round_half_even(sqrt_d / (2.0 * alpha));
    const long double side = 2.0L * half + 1.0L;
    long double count = 1.0L;
    for (int i = 0; i < d; ++i) count *= side;
    if (count > 1099511627776.0L) return 0;
    std::uint64_t r = 1;
    for (int i = 0; i < d; ++i) r *= static_cast<std::uint64_t>(2 * half + 1);
    return r;
}

CoderControllerConfig search_parameters(const SystemConstants& consts,
                                        const StabilizabilityCertificate& cert,
                                        double tau_a, const SearchTargets& targets) {
    cert.validate();
    if (!(tau_a > 0.0)) throw std::invalid_argument("search_parameters: tau_a must be > 0");
    if (targets.d < 1 || targets.mode_count < 1)
        throw std::invalid_argument("search_parameters: d and mode_count required");
    const double gap = cert.mu2 - cert.mu1 / tau_a;
    if (!(gap > 0.0))
        throw std::runtime_error("search_parameters: infeasible, mu1/tau_a >= mu2");

    // smallest tick-aligned block time with D e^{(mu1/tau_a - mu2) T} <= 1 - margin
    const double t_block = std::log(cert.D / (1.0 - targets.margin)) / gap;
    const Tick t_block_ticks = std::max<Tick>(1, static_cast<Tick>(std::ceil(t_block / targets.base_tick - 1e-12)));

    bool found = false;
    CoderControllerConfig best;
    double best_rate = 0.0;
    double best_lhs_seen = -1.0;
    int n = 1;
    for (int ni = 0; ni < targets.max_n_doublings; ++ni, n *= 2) {
        CoderControllerConfig cand;
        cand.base_tick = targets.base_tick;
        cand.n = n;
        cand.tau_s_ticks = std::max<Tick>(1, (t_block_ticks + n - 1) / n);
        cand.r0 = targets.r0;
        cand.tau_a = tau_a;
        cand.cert = cert;
        cand.consts = consts;
        double alpha = 0.5;
        for (int ai = 0; ai < targets.max_alpha_steps; ++ai, alpha *= 0.5) {
            cand.alpha = alpha;
            const std::uint64_t m_hat = m_hat_bound(targets.d, alpha);
            if (m_hat == 0) break; // even smaller alpha only grows the alphabet
            const ConditionReport rep = check_condition(cand);
            if (best_lhs_seen < 0.0 || rep.lhs < best_lhs_seen) best_lhs_seen = rep.lhs;
            if (!rep.satisfied) continue;
            const double rate = data_rate(cand, targets.mode_count, m_hat);
            if (!found || rate < best_rate || (rate == best_rate && cand.n < best.n)) {
                found = true;
                best = cand;
                best_rate = rate;
            }
        }
    }
    if (!found)
        throw std::runtime_error("search_parameters: no feasible (alpha, n) in budget; best lhs seen " +
                                 std::to_string(best_lhs_seen));
    return best;
}

using nlohmann::json;

std::string config_to_json(const CoderControllerConfig& cfg, int d, int mode_count) {
    const DerivedConstants dc = derive_constants(cfg);
    json j;
    j["base_tick"] = cfg.base_tick;
    j["tau_s_ticks"] = cfg.tau_s_ticks;
    j["n"] = cfg.n;
    j["alpha"] = cfg.alpha;
    j["r0"] = cfg.r0;
    j["tau_a"] = cfg.tau_a;
    j["certificate"] = {{"D", cfg.cert.D}, {"mu1", cfg.cert.mu1}, {"mu2", cfg.cert.mu2}};
    j["constants"] = {{"nu", cfg.consts.nu},
                      {"delta1", cfg.consts.delta1},
                      {"delta2", cfg.consts.delta2},
                      {"L", cfg.consts.L}};
    json der = {{"psi", dc.psi},        {"alpha_bar", dc.alpha_bar}, {"eps_bar", dc.eps_bar},
                {"eps_block", dc.eps_block}, {"rho_bar", dc.rho_bar}, {"rhs", dc.rhs}};
    if (dc.rho_bar < dc.rhs) {
        der["mu"] = dc.mu;
        der["lambda"] = dc.lambda;
    }
    if (d > 0 && mode_count > 0) {
        const std::uint64_t m_hat = m_hat_bound(d, cfg.alpha);
        if (m_hat != 0) {
            der["m_hat"] = m_hat;
            der["rate_bits_per_time"] = data_rate(cfg, mode_count, m_hat);
        }
    }
    j["derived"] = std::move(der);
    return j.dump(2);
}

CoderControllerConfig config_from_json(const std::string& text) {
    const json j = json::parse(text);
    CoderControllerConfig cfg;
    cfg.base_tick = j.at("base_tick").get<double>();
    cfg.tau_s_ticks = j.at("tau_s_ticks").get<Tick>();
    cfg.n = j.at("n").get<int>();
    cfg.alpha = j.at("alpha").get<double>();
    cfg.r0 = j.at("r0").get<double>();
    cfg.tau_a = j.at("tau_a").get<double>();
    const json& cert = j.at("certificate");
    cfg.cert = {cert.at("D").get<double>(), cert.at("mu1").get<double>(), cert.at("mu2").get<double>()};
    if (j.contains("constants")) {
        const json& c = j.at("constants");
        cfg.consts = {c.at("nu").get<double>(), c.at("delta1").get<double>(),
                      c.at("delta2").get<double>(), c.at("L").get<double>()};
    }
    cfg.validate();
    return cfg;
}

} // namespace slsq

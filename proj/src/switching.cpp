#include "slsq/switching.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace slsq {

void SwitchingSignal::validate() const {
    if (!(base_tick > 0.0)) throw std::invalid_argument("signal: base_tick must be > 0");
    if (horizon < 0) throw std::invalid_argument("signal: negative horizon");
    int prev_mode = initial_mode;
    Tick prev_time = 0;
    for (const SwitchEvent& e : events) {
        if (e.time <= prev_time)
            throw std::invalid_argument("signal: event times not strictly increasing");
        if (e.time > horizon)
            throw std::invalid_argument("signal: event time outside (0, horizon]");
        if (e.mode == prev_mode) throw std::invalid_argument("signal: event does not change the mode");
        prev_mode = e.mode;
        prev_time = e.time;
    }
}

int SwitchingSignal::mode_at(Tick t) const {
    int mode = initial_mode;
    // events are sorted; last event at or before t wins
    auto it = std::upper_bound(events.begin(), events.end(), t,
                               [](Tick v, const SwitchEvent& e) { return v < e.time; });
    if (it != events.begin()) mode = std::prev(it)->mode;
    return mode;
}

int count_switches(const SwitchingSignal& sig, Tick s, Tick t) {
    if (s > t) throw std::invalid_argument("count_switches: s > t");
    auto lo = std::lower_bound(sig.events.begin(), sig.events.end(), s,
                               [](const SwitchEvent& e, Tick v) { return e.time < v; });
    auto hi = std::lower_bound(sig.events.begin(), sig.events.end(), t,
                               [](const SwitchEvent& e, Tick v) { return e.time < v; });
    return static_cast<int>(hi - lo);
}

AdtReport is_adt_admissible(const SwitchingSignal& sig, const AdtBudget& budget) {
    if (!(budget.tau_a > 0.0)) throw std::invalid_argument("adt: tau_a must be > 0");
    if (!(budget.N0 >= 0.0)) throw std::invalid_argument("adt: N0 must be >= 0");
    AdtReport rep;
    rep.slack = budget.N0;
    const auto& ev = sig.events;
    const std::size_t k = ev.size();
    // The worst window starts at a switch time and ends just above one:
    // window [t_i, t_j+) holds switches i..j over length t_j - t_i.
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            const int count = static_cast<int>(j - i + 1);
            const double len = static_cast<double>(ev[j].time - ev[i].time) * sig.base_tick;
            const double allowed = budget.N0 + len / budget.tau_a;
            const double slack = allowed - count;
            if (slack < rep.slack) {
                rep.slack = slack;
                rep.worst_s = ev[i].time;
                rep.worst_t = ev[j].time;
                rep.count = count;
                rep.allowed = allowed;
            }
        }
    }
    rep.admissible = rep.slack >= -1e-9;
    return rep;
}

SwitchingSignal generate_adt_signal(const AdtBudget& budget, Tick horizon, int mode_count,
                                    std::uint64_t seed, double base_tick) {
    if (horizon <= 0) throw std::invalid_argument("generate_adt_signal: horizon must be > 0");
    if (mode_count < 1) throw std::invalid_argument("generate_adt_signal: mode_count must be >= 1");
    if (!(budget.tau_a > 0.0) || !(budget.N0 >= 0.0))
        throw std::invalid_argument("generate_adt_signal: invalid budget");
    SwitchingSignal sig;
    sig.base_tick = base_tick;
    sig.horizon = horizon;
    sig.initial_mode = 0;
    // A switch needs one full token; capacity N0 caps the burst size. With
    // N0 < 1 the strict ADT inequality forbids any switch, so the signal
    // stays constant.
    if (mode_count == 1 || budget.N0 < 1.0) return sig;

    std::mt19937_64 rng(seed);
    const auto uniform01 = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    double tokens = budget.N0;
    double token_time = 0.0; // seconds at which `tokens` was last valued
    double t_sec = 0.0;
    Tick t = 0;
    int mode = sig.initial_mode;
    for (;;) {
        const double dt = -budget.tau_a * std::log1p(-uniform01());
        double cand = t_sec + dt;
        const double avail = std::min(budget.N0, tokens + (cand - token_time) / budget.tau_a);
        if (avail < 1.0) {
            const double ready = token_time + (1.0 - tokens) * budget.tau_a;
            cand = std::max(cand, ready);
        }
        Tick cand_tick = static_cast<Tick>(std::ceil(cand / base_tick));
        cand_tick = std::max(cand_tick, t + 1);
        if (cand_tick > horizon) break;
        const double cand_sec = static_cast<double>(cand_tick) * base_tick;
        tokens = std::min(budget.N0, tokens + (cand_sec - token_time) / budget.tau_a) - 1.0;
        token_time = cand_sec;
        int other = static_cast<int>(rng() % static_cast<std::uint64_t>(mode_count - 1));
        if (other >= mode) ++other;
        mode = other;
        sig.events.push_back({cand_tick, mode});
        t = cand_tick;
        t_sec = cand_sec;
    }
    return sig;
}

SwitchingSignal generate_sigma_n(int n, Tick horizon, double base_tick) {
    if (n < 1) throw std::invalid_argument("generate_sigma_n: n must be >= 1");
    const double half_period_ticks = 1.0 / (static_cast<double>(n) * base_tick);
    const Tick p = static_cast<Tick>(std::llround(half_period_ticks));
    if (p < 1 || std::abs(static_cast<double>(p) - half_period_ticks) > 1e-9)
        throw std::invalid_argument("generate_sigma_n: 1/n is not tick-aligned; refine the grid");
    SwitchingSignal sig;
    sig.base_tick = base_tick;
    sig.horizon = horizon;
    sig.initial_mode = 0;
    for (Tick k = 1; k * p <= horizon; ++k) sig.events.push_back({k * p, static_cast<int>(k % 2)});
    return sig;
}

SwitchingSignal sample_and_hold(const SwitchingSignal& sig, Tick tau_s) {
    if (tau_s <= 0) throw std::invalid_argument("sample_and_hold: tau_s must be > 0");
    SwitchingSignal held;
    held.base_tick = sig.base_tick;
    held.horizon = sig.horizon;
    held.initial_mode = sig.mode_at(0);
    int prev = held.initial_mode;
    for (Tick t = tau_s; t <= sig.horizon; t += tau_s) {
        const int m = sig.mode_at(t);
        if (m != prev) {
            held.events.push_back({t, m});
            prev = m;
        }
    }
    return held;
}

BlockMismatch mismatch_flags(const SwitchingSignal& sig, Tick tau_s, int n, int k) {
    if (tau_s <= 0 || n < 1 || k < 0) throw std::invalid_argument("mismatch_flags: bad arguments");
    const Tick start = static_cast<Tick>(k) * n * tau_s;
    if (start > sig.horizon) throw std::invalid_argument("mismatch_flags: block outside horizon");
    BlockMismatch bm;
    bm.flags.resize(n, 0);
    for (int j = 0; j < n; ++j) {
        const Tick a = start + static_cast<Tick>(j) * tau_s;
        const Tick b = std::min(a + tau_s, sig.horizon);
        if (a >= b) break;
        if (count_switches(sig, a, b) >= 1) {
            bm.flags[j] = 1;
            ++bm.total;
        }
    }
    return bm;
}

using nlohmann::json;

std::string signal_to_json(const SwitchingSignal& sig) {
    json j;
    j["base_tick"] = sig.base_tick;
    j["initial_mode"] = sig.initial_mode;
    j["horizon"] = sig.horizon;
    j["events"] = json::array();
    for (const SwitchEvent& e : sig.events) j["events"].push_back({e.time, e.mode});
    return j.dump();
}

SwitchingSignal signal_from_json(const std::string& text) {
    const json j = json::parse(text);
    SwitchingSignal sig;
    sig.base_tick = j.at("base_tick").get<double>();
    sig.initial_mode = j.at("initial_mode").get<int>();
    sig.horizon = j.at("horizon").get<Tick>();
    for (const json& e : j.at("events"))
        sig.events.push_back({e.at(0).get<Tick>(), e.at(1).get<int>()});
    sig.validate();
    return sig;
}

std::string signal_to_csv(const SwitchingSignal& sig) {
    std::ostringstream out;
    out << "t,mode\n";
    int mode = sig.initial_mode;
    out << 0.0 << "," << mode << "\n";
    for (const SwitchEvent& e : sig.events) {
        out << sig.seconds(e.time) << "," << mode << "\n";
        mode = e.mode;
        out << sig.seconds(e.time) << "," << mode << "\n";
    }
    out << sig.seconds(sig.horizon) << "," << mode << "\n";
    return out.str();
}

} // namespace slsq

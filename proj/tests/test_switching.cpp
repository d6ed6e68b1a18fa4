#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slsq/switching.hpp"

using namespace slsq;

namespace {

SwitchingSignal make_signal(std::vector<SwitchEvent> ev, Tick horizon) {
    SwitchingSignal s;
    s.events = std::move(ev);
    s.horizon = horizon;
    s.validate();
    return s;
}

} // namespace

TEST_CASE("mode_at is right-continuous") {
    const SwitchingSignal s = make_signal({{100, 1}, {250, 0}}, 1000);
    CHECK(s.mode_at(0) == 0);
    CHECK(s.mode_at(99) == 0);
    CHECK(s.mode_at(100) == 1);
    CHECK(s.mode_at(249) == 1);
    CHECK(s.mode_at(250) == 0);
    CHECK(s.mode_at(1000) == 0);
}

TEST_CASE("count_switches on half-open windows") {
    const SwitchingSignal s = make_signal({{100, 1}, {250, 0}, {900, 1}}, 1000);
    CHECK(count_switches(s, 0, 1000) == 3);
    CHECK(count_switches(s, 100, 250) == 1);  // event at 250 excluded
    CHECK(count_switches(s, 100, 251) == 2);
    CHECK(count_switches(s, 101, 250) == 0);
    CHECK(count_switches(s, 0, 0) == 0);
}

TEST_CASE("validate rejects malformed signals") {
    SwitchingSignal s;
    s.horizon = 100;
    s.events = {{50, 1}, {50, 0}};
    CHECK_THROWS(s.validate());
    s.events = {{50, 0}}; // does not change the mode
    CHECK_THROWS(s.validate());
    s.events = {{150, 1}}; // past the horizon
    CHECK_THROWS(s.validate());
    s.events = {{0, 1}}; // switch at t = 0
    CHECK_THROWS(s.validate());
}

TEST_CASE("ADT admissibility: hand-built signals") {
    // tau_a = 1 s, base_tick 1e-3: events 1 s apart are fine with N0 = 1
    const SwitchingSignal ok = make_signal({{1000, 1}, {2000, 0}, {3000, 1}}, 4000);
    CHECK(is_adt_admissible(ok, {1.0, 1.0}).admissible);
    // burst of 3 switches within 10 ms needs N0 >= 3 (approximately)
    const SwitchingSignal burst = make_signal({{1000, 1}, {1005, 0}, {1010, 1}}, 4000);
    CHECK_FALSE(is_adt_admissible(burst, {1.0, 1.0}).admissible);
    CHECK_FALSE(is_adt_admissible(burst, {1.0, 2.0}).admissible);
    CHECK(is_adt_admissible(burst, {1.0, 3.0}).admissible);
    const AdtReport rep = is_adt_admissible(burst, {1.0, 1.0});
    CHECK(rep.worst_s == 1000);
    CHECK(rep.worst_t == 1010);
    CHECK(rep.count == 3);
}

TEST_CASE("no switches is admissible under any budget") {
    SwitchingSignal s;
    s.horizon = 5000;
    CHECK(is_adt_admissible(s, {0.01, 0.0}).admissible);
}

TEST_CASE("generated ADT signals are admissible by construction") {
    int with_switches = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const double tau_a = (seed % 2) ? 1.0 : 0.25;
        const double N0 = static_cast<double>(seed % 4); // 0..3
        const SwitchingSignal s = generate_adt_signal({tau_a, N0}, 40000, 2, seed, 1e-3);
        s.validate();
        CHECK(is_adt_admissible(s, {tau_a, N0}).admissible);
        if (!s.events.empty()) ++with_switches;
        if (N0 < 1.0) CHECK(s.events.empty());
    }
    CHECK(with_switches > 400); // the generator is not degenerate
}

TEST_CASE("generated signal is deterministic in the seed") {
    const SwitchingSignal a = generate_adt_signal({1.0, 2.0}, 40000, 3, 42, 1e-3);
    const SwitchingSignal b = generate_adt_signal({1.0, 2.0}, 40000, 3, 42, 1e-3);
    REQUIRE(a.events.size() == b.events.size());
    for (std::size_t i = 0; i < a.events.size(); ++i) {
        CHECK(a.events[i].time == b.events[i].time);
        CHECK(a.events[i].mode == b.events[i].mode);
    }
    const SwitchingSignal c = generate_adt_signal({1.0, 2.0}, 40000, 3, 43, 1e-3);
    const bool differs = c.events.size() != a.events.size() ||
                         (!a.events.empty() && c.events[0].time != a.events[0].time);
    CHECK(differs);
}

TEST_CASE("periodic oscillation construction") {
    // n = 10 on a 1 ms grid: half-period 100 ticks
    const SwitchingSignal s = generate_sigma_n(10, 1000, 1e-3);
    CHECK(s.initial_mode == 0);
    REQUIRE(s.events.size() == 10);
    CHECK(s.events[0].time == 100);
    CHECK(s.events[0].mode == 1);
    CHECK(s.events[1].mode == 0);
    CHECK(s.events[9].time == 1000);
    // 1/n not on the grid
    CHECK_THROWS(generate_sigma_n(3, 1000, 1e-3));
}

TEST_CASE("sample-and-hold freezes the mode between samples") {
    const SwitchingSignal s = make_signal({{105, 1}, {190, 0}, {450, 1}}, 1000);
    const SwitchingSignal h = sample_and_hold(s, 100);
    // at t=100 mode 0; at 200 mode 0 again (switch at 105 then back at 190);
    // at 500 mode 1
    CHECK(h.mode_at(100) == 0);
    CHECK(h.mode_at(199) == 0);
    CHECK(h.mode_at(250) == 0);
    CHECK(h.mode_at(500) == 1);
    for (const SwitchEvent& e : h.events) CHECK(e.time % 100 == 0);
}

TEST_CASE("block mismatch flags") {
    // tau_s = 100 ticks, n = 4: block 0 covers [0, 400)
    const SwitchingSignal s = make_signal({{105, 1}, {190, 0}, {450, 1}}, 1000);
    const BlockMismatch b0 = mismatch_flags(s, 100, 4, 0);
    CHECK(b0.flags == std::vector<int>{0, 1, 0, 0}); // both switches in [100, 200)
    CHECK(b0.total == 1);
    const BlockMismatch b1 = mismatch_flags(s, 100, 4, 1);
    CHECK(b1.flags == std::vector<int>{1, 0, 0, 0});
    CHECK(b1.total == 1);
}

TEST_CASE("signal JSON round-trip") {
    const SwitchingSignal s = make_signal({{100, 1}, {250, 0}}, 1000);
    const SwitchingSignal r = signal_from_json(signal_to_json(s));
    CHECK(r.horizon == s.horizon);
    REQUIRE(r.events.size() == 2);
    CHECK(r.events[1].time == 250);
    CHECK(r.events[1].mode == 0);
}

// Command-line front end: design, simulate, prop1, verify, replay.
// Exit codes: 0 all checks passed, 1 a check failed, 2 malformed input.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slsq/fastswitch.hpp"
#include "slsq/gronwall.hpp"
#include "slsq/harness.hpp"

using namespace slsq;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

// Scenario document: {"system": <system bundle>, "config": <coder-controller
// config>, "N0": chatter bound, "horizon_ticks": int, "x0": optional state}
struct Scenario {
    SystemBundle bundle;
    CoderControllerConfig cfg;
    double N0 = 2.0;
    Tick horizon = 40000;
    bool has_x0 = false;
    Vec x0;
};

Scenario load_scenario(const std::string& path) {
    const json j = json::parse(slurp(path));
    Scenario sc;
    sc.bundle = parse_system_json(j.at("system").dump());
    sc.cfg = config_from_json(j.at("config").dump());
    if (sc.cfg.consts.nu == 0.0 && sc.cfg.consts.delta1 == 0.0)
        sc.cfg.consts = system_constants(sc.bundle.sys, sc.bundle.fb);
    if (j.contains("N0")) sc.N0 = j.at("N0").get<double>();
    if (j.contains("horizon_ticks")) sc.horizon = j.at("horizon_ticks").get<Tick>();
    if (j.contains("x0")) {
        sc.x0 = j.at("x0").get<Vec>();
        sc.has_x0 = true;
    }
    return sc;
}

Vec sphere_state(int d, double r, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> g(0.0, 1.0);
    Vec x(d);
    double n2 = 0.0;
    do {
        n2 = 0.0;
        for (double& v : x) {
            v = g(rng);
            n2 += v * v;
        }
    } while (n2 == 0.0);
    const double s = r / std::sqrt(n2);
    for (double& v : x) v *= s;
    return x;
}

std::string segments_jsonl(const ClosedLoopTrace& tr, Tick tau_s) {
    std::ostringstream out;
    for (const SampleRecord& s : tr.samples) {
        json j;
        j["t_start"] = s.tick;
        j["t_end"] = s.tick + tau_s;
        j["mode"] = s.sigma_hat;
        j["xhat0"] = s.xhat;
        out << j.dump() << "\n";
    }
    return out.str();
}

int cmd_design(const std::string& system_path, double tau_a, const std::string& check_path,
               const std::string& out_path) {
    if (!check_path.empty()) {
        const CoderControllerConfig cfg = config_from_json(slurp(check_path));
        const ConditionReport rep = check_condition(cfg);
        std::cout << "lhs = " << rep.lhs << "\nrhs = " << rep.rhs << "\nsatisfied = "
                  << (rep.satisfied ? "true" : "false") << "\n";
        if (rep.satisfied) {
            const DecayRates dr = decay_rates(cfg);
            std::cout << "mu = " << dr.mu << "\nlambda = " << dr.lambda << "\n";
        }
        return rep.satisfied ? 0 : 1;
    }
    const SystemBundle b = load_system_json(system_path);
    const SystemConstants consts = system_constants(b.sys, b.fb);
    SearchTargets t;
    t.d = b.sys.d;
    t.mode_count = b.sys.mode_count();
    CoderControllerConfig cfg = search_parameters(consts, b.cert, tau_a, t);
    const std::string doc = config_to_json(cfg, b.sys.d, b.sys.mode_count());
    if (out_path.empty())
        std::cout << doc << "\n";
    else
        spit(out_path, doc + "\n");
    return 0;
}

int cmd_simulate(const std::string& scenario_path, std::uint64_t seed,
                 const std::string& out_dir) {
    const Scenario sc = load_scenario(scenario_path);
    const SwitchingSignal sig = generate_adt_signal({sc.cfg.tau_a, sc.N0}, sc.horizon,
                                                    sc.bundle.sys.mode_count(), seed,
                                                    sc.cfg.base_tick);
    const Vec x0 = sc.has_x0 ? sc.x0 : sphere_state(sc.bundle.sys.d, sc.cfg.r0, seed);
    RunOptions opts;
    opts.adt_check_N0 = sc.N0;
    const ClosedLoopTrace tr =
        run_closed_loop(sc.bundle.sys, sc.bundle.fb, sc.cfg, sig, x0, opts);
    const TraceReport rep = verify_trace(tr, sig, sc.cfg);

    const std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
    std::filesystem::create_directories(dir);
    spit(dir / "trace.csv", trace_to_csv(tr));
    spit(dir / "trace.svg", trace_to_svg(tr, sig));
    spit(dir / "signal.json", signal_to_json(sig));
    const auto bin = symbols_to_binary(tr.symbols);
    {
        std::ofstream out(dir / "symbols.bin", std::ios::binary);
        out.write(reinterpret_cast<const char*>(bin.data()),
                  static_cast<std::streamsize>(bin.size()));
    }
    spit(dir / "symbols.jsonl", symbols_to_jsonl(tr.symbols));
    spit(dir / "segments.jsonl", segments_jsonl(tr, sc.cfg.tau_s_ticks));

    json rj;
    rj["soundness_ok"] = rep.soundness_ok;
    rj["mismatch_bound_ok"] = rep.mismatch_bound_ok;
    rj["product_ok"] = rep.product_ok;
    rj["violations"] = rep.violations;
    rj["decay_rate_r"] = rep.decay_rate_r;
    rj["decay_rate_x"] = rep.decay_rate_x;
    rj["lambda"] = rep.lambda;
    rj["total_bits"] = tr.total_bits;
    rj["adt_admissible"] = tr.adt_admissible;
    rj["notes"] = rep.notes;
    spit(dir / "report.json", rj.dump(2) + "\n");

    std::cout << "blocks " << tr.blocks.size() << ", final r " << tr.blocks.back().r
              << ", decay r " << rep.decay_rate_r << " (lambda " << rep.lambda << ")\n";
    const bool ok = rep.violations == 0 && rep.decay_rate_r >= rep.lambda;
    return ok ? 0 : 1;
}

int cmd_prop1(const std::string& n_list, int input_count, int segments, std::uint64_t seed) {
    std::vector<int> ns;
    std::stringstream ss(n_list);
    std::string tok;
    while (std::getline(ss, tok, ',')) ns.push_back(std::stoi(tok));
    if (ns.empty()) throw std::runtime_error("prop1: empty n list");
    const Rational T = make_rational(2, 1);
    const auto inputs = make_random_step_inputs(input_count, segments, T, seed);
    const auto sup = oscillation_sup_table(ns, inputs, T);
    std::cout << "n\tsup |integral|\n";
    bool monotone = true;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        std::cout << ns[i] << "\t" << sup[i] << "\n";
        if (i > 0 && sup[i] > sup[i - 1]) monotone = false;
    }
    std::cout << (monotone ? "non-increasing" : "NOT monotone") << "\n";
    return monotone ? 0 : 1;
}

int cmd_verify(const std::string& scenario_path, std::uint64_t seed) {
    const Scenario sc = load_scenario(scenario_path);
    bool all_ok = true;

    const CertificateCheck chk =
        verify_certificate_lognorm(sc.bundle.sys, sc.bundle.fb, sc.bundle.cert);
    const bool cert_ok = !chk.conclusive || chk.passed;
    std::cout << "certificate: " << (chk.conclusive ? (chk.passed ? "pass" : "FAIL")
                                                    : "inconclusive")
              << "\n";
    all_ok = all_ok && cert_ok;

    // quantizer accuracy / zero-ball / size-bound properties
    {
        const BallQuantizer q = build_quantizer(sc.bundle.sys.d, sc.cfg.alpha);
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        bool ok = q.m() <= q.m_hat();
        for (int trial = 0; trial < 2000 && ok; ++trial) {
            Vec xi(q.d);
            double n2;
            do {
                n2 = 0.0;
                for (double& x : xi) {
                    x = u(rng);
                    n2 += x * x;
                }
            } while (n2 > 1.0);
            const auto [idx, p] = quantize(q, xi);
            if (norm2(xi - p) > sc.cfg.alpha * (1.0 + 1e-12)) ok = false;
            if (std::sqrt(n2) <= sc.cfg.alpha / std::sqrt(static_cast<double>(q.d)) &&
                idx != q.zero_index)
                ok = false;
        }
        std::cout << "quantizer properties: " << (ok ? "pass" : "FAIL") << "\n";
        all_ok = all_ok && ok;
    }

    // ADT generator admissibility
    {
        bool ok = true;
        for (std::uint64_t i = 0; i < 200 && ok; ++i) {
            const SwitchingSignal sig =
                generate_adt_signal({sc.cfg.tau_a, sc.N0}, sc.horizon,
                                    sc.bundle.sys.mode_count(), seed + i, sc.cfg.base_tick);
            sig.validate();
            if (!is_adt_admissible(sig, {sc.cfg.tau_a, sc.N0}).admissible) ok = false;
        }
        std::cout << "ADT generator admissibility: " << (ok ? "pass" : "FAIL") << "\n";
        all_ok = all_ok && ok;
    }

    // design condition
    {
        const ConditionReport rep = check_condition(sc.cfg);
        std::cout << "design condition: lhs " << rep.lhs << " vs rhs " << rep.rhs << " -> "
                  << (rep.satisfied ? "pass" : "FAIL") << "\n";
        all_ok = all_ok && rep.satisfied;
    }

    return all_ok ? 0 : 1;
}

int cmd_replay(const std::string& scenario_path, const std::string& log_path,
               const std::string& segments_path) {
    const Scenario sc = load_scenario(scenario_path);
    std::ifstream in(log_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + log_path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    const std::vector<Symbol> symbols = symbols_from_binary(bytes);

    const BallQuantizer q = build_quantizer(sc.bundle.sys.d, sc.cfg.alpha);
    Controller ctrl(sc.bundle.sys, sc.bundle.fb, sc.cfg, q);
    std::ostringstream out;
    for (const Symbol& s : symbols) {
        const InputSegment seg = ctrl.step(s);
        json j;
        j["t_start"] = seg.t_start;
        j["t_end"] = seg.t_end;
        j["mode"] = seg.mode;
        j["xhat0"] = seg.xhat0;
        out << j.dump() << "\n";
    }
    const std::string replayed = out.str();
    if (segments_path.empty()) {
        std::cout << replayed;
        return 0;
    }
    const std::string expected = slurp(segments_path);
    const bool identical = replayed == expected;
    std::cout << "replay " << (identical ? "matches" : "DIFFERS from") << " " << segments_path
              << " (" << symbols.size() << " symbols)\n";
    return identical ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-data-rate switched-system control toolkit"};
    app.require_subcommand(1);

    std::string system_path, check_path, scenario_path, out_path, log_path, segments_path;
    std::string n_list = "1,10,100,1000";
    double tau_a = 1.0;
    std::uint64_t seed = 7;
    int input_count = 8, segments = 16;

    CLI::App* design = app.add_subcommand("design", "select coder-controller parameters");
    design->add_option("--config,--system", system_path, "system bundle JSON");
    design->add_option("--tau-a", tau_a, "average dwell time to design for");
    design->add_option("--check", check_path, "validate an existing config JSON instead");
    design->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* simulate = app.add_subcommand("simulate", "closed-loop run with verification");
    simulate->add_option("--config", scenario_path, "scenario JSON")->required();
    simulate->add_option("--seed", seed, "signal / initial-state seed");
    simulate->add_option("--out", out_path, "output directory");

    CLI::App* prop1 = app.add_subcommand("prop1", "fast-switching averaging table");
    prop1->add_option("--n", n_list, "comma-separated oscillation indices");
    prop1->add_option("--inputs", input_count, "input set size");
    prop1->add_option("--segments", segments, "steps per input");
    prop1->add_option("--seed", seed, "input set seed");

    CLI::App* verify = app.add_subcommand("verify", "certificate + property suites");
    verify->add_option("--config", scenario_path, "scenario JSON")->required();
    verify->add_option("--seed", seed, "property-suite seed");

    CLI::App* replay = app.add_subcommand("replay", "re-run the controller from a symbol log");
    replay->add_option("--config", scenario_path, "scenario JSON")->required();
    replay->add_option("--log", log_path, "symbols.bin from a simulate run")->required();
    replay->add_option("--segments", segments_path, "segments.jsonl to compare against");

    CLI11_PARSE(app, argc, argv);

    try {
        if (design->parsed()) {
            if (system_path.empty() && check_path.empty())
                throw std::runtime_error("design: need --config or --check");
            return cmd_design(system_path, tau_a, check_path, out_path);
        }
        if (simulate->parsed()) return cmd_simulate(scenario_path, seed, out_path);
        if (prop1->parsed()) return cmd_prop1(n_list, input_count, segments, seed);
        if (verify->parsed()) return cmd_verify(scenario_path, seed);
        if (replay->parsed()) return cmd_replay(scenario_path, log_path, segments_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

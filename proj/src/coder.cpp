#include "slsq/coder.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace slsq {

Coder::Coder(const CoderControllerConfig& cfg, const BallQuantizer& q)
    : cfg_(cfg), q_(q), dc_(derive_constants(cfg)) {
    cfg.validate();
    r_prev_ = cfg.r0;
    r_ = cfg.r0;
}

Symbol Coder::block_step(const Vec& x_obs, int mode_obs) {
    if (!expects_block()) throw ProtocolError("coder: block symbol out of cadence");
    if (!all_finite(x_obs)) throw std::invalid_argument("coder: non-finite observation");
    const double xnorm = norm2(x_obs);

    int b = 0;
    if (k_ == 0) {
        if (xnorm > cfg_.r0 * (1.0 + 1e-12))
            throw SoundnessError("coder: initial state outside B(0, r0)");
        r_ = cfg_.r0;
    } else {
        // beta is strictly increasing in b, so the first hit is minimal
        bool ok = false;
        for (b = 0; b <= cfg_.n; ++b) {
            const double beta = beta_value(b, cfg_.n, dc_.psi, dc_.alpha_bar, dc_.eps_bar, cfg_.cert.mu1);
            if (xnorm <= beta * r_prev_) {
                r_ = beta * r_prev_;
                ok = true;
                break;
            }
        }
        if (!ok)
            throw SoundnessError("coder: no admissible mismatch count; radius contract violated");
    }

    Symbol sym;
    sym.kind = Symbol::Kind::block;
    sym.tick = next_tick();
    sym.mode = mode_obs;
    sym.nmissed = b;
    Vec scaled(x_obs.size());
    for (std::size_t i = 0; i < x_obs.size(); ++i) scaled[i] = x_obs[i] / r_;
    sym.eta_index = quantize(q_, scaled).first;

    r_prev_ = r_;
    ++k_;
    ++step_;
    return sym;
}

Symbol Coder::mode_step(int mode_obs) {
    if (expects_block()) throw ProtocolError("coder: mode symbol out of cadence");
    Symbol sym;
    sym.kind = Symbol::Kind::mode_only;
    sym.tick = next_tick();
    sym.mode = mode_obs;
    ++step_;
    return sym;
}

double bit_cost(const Symbol& sym, const CoderControllerConfig& cfg, int mode_count,
                std::uint64_t m_hat) {
    const double mode_bits = std::log2(static_cast<double>(mode_count));
    if (sym.kind == Symbol::Kind::mode_only) return mode_bits;
    return std::log2(static_cast<double>(m_hat)) +
           std::log2(static_cast<double>(cfg.n) + 1.0) + mode_bits;
}

namespace {

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 7; i >= 0; --i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}
void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 3; i >= 0; --i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}
void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

struct Reader {
    const std::vector<std::uint8_t>& b;
    std::size_t pos = 0;
    std::uint8_t u8() {
        if (pos >= b.size()) throw ProtocolError("symbol log: truncated");
        return b[pos++];
    }
    std::uint16_t u16() { return static_cast<std::uint16_t>((u8() << 8) | u8()); }
    std::uint32_t u32() {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = (v << 8) | u8();
        return v;
    }
    std::uint64_t u64() {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v = (v << 8) | u8();
        return v;
    }
};

constexpr std::uint8_t kMagic[4] = {'S', 'Y', 'L', '1'};

} // namespace

std::vector<std::uint8_t> symbols_to_binary(const std::vector<Symbol>& symbols) {
    std::vector<std::uint8_t> out;
    out.insert(out.end(), kMagic, kMagic + 4);
    put_u32(out, static_cast<std::uint32_t>(symbols.size()));
    for (const Symbol& s : symbols) {
        out.push_back(static_cast<std::uint8_t>(s.kind));
        put_u64(out, static_cast<std::uint64_t>(s.tick));
        put_u16(out, static_cast<std::uint16_t>(s.mode));
        if (s.kind == Symbol::Kind::block) {
            put_u32(out, static_cast<std::uint32_t>(s.eta_index));
            put_u16(out, static_cast<std::uint16_t>(s.nmissed));
        }
    }
    return out;
}

std::vector<Symbol> symbols_from_binary(const std::vector<std::uint8_t>& bytes) {
    Reader r{bytes};
    for (std::uint8_t m : kMagic)
        if (r.u8() != m) throw ProtocolError("symbol log: bad magic");
    const std::uint32_t count = r.u32();
    std::vector<Symbol> out;
    out.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        Symbol s;
        const std::uint8_t kind = r.u8();
        if (kind > 1) throw ProtocolError("symbol log: bad record kind");
        s.kind = static_cast<Symbol::Kind>(kind);
        s.tick = static_cast<Tick>(r.u64());
        s.mode = r.u16();
        if (s.kind == Symbol::Kind::block) {
            s.eta_index = static_cast<int>(r.u32());
            s.nmissed = r.u16();
        }
        out.push_back(s);
    }
    return out;
}

std::string symbols_to_jsonl(const std::vector<Symbol>& symbols) {
    std::ostringstream out;
    for (const Symbol& s : symbols) {
        nlohmann::json j;
        j["tick"] = s.tick;
        j["mode"] = s.mode;
        if (s.kind == Symbol::Kind::block) {
            j["kind"] = "block";
            j["eta"] = s.eta_index;
            j["b"] = s.nmissed;
        } else {
            j["kind"] = "mode";
        }
        out << j.dump() << "\n";
    }
    return out.str();
}

std::vector<Symbol> symbols_from_jsonl(const std::string& text) {
    std::vector<Symbol> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const nlohmann::json j = nlohmann::json::parse(line);
        Symbol s;
        s.tick = j.at("tick").get<Tick>();
        s.mode = j.at("mode").get<int>();
        if (j.at("kind").get<std::string>() == "block") {
            s.kind = Symbol::Kind::block;
            s.eta_index = j.at("eta").get<int>();
            s.nmissed = j.at("b").get<int>();
        } else {
            s.kind = Symbol::Kind::mode_only;
        }
        out.push_back(s);
    }
    return out;
}

} // namespace slsq

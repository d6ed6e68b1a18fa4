#include "slsq/quantizer.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace slsq {

long long round_half_even(double x) {
    const double fl = std::floor(x);
    const double frac = x - fl;
    if (frac > 0.5) return static_cast<long long>(fl) + 1;
    if (frac < 0.5) return static_cast<long long>(fl);
    const long long lo = static_cast<long long>(fl);
    return (lo % 2 == 0) ? lo : lo + 1;
}

std::uint64_t BallQuantizer::m_hat() const {
    std::uint64_t r = 1;
    const std::uint64_t side = 2 * static_cast<std::uint64_t>(half_extent) + 1;
    for (int i = 0; i < d; ++i) r *= side;
    return r;
}

int BallQuantizer::code_bits() const {
    int bits = 1;
    while ((std::uint64_t{1} << bits) < m()) ++bits;
    return bits;
}

BallQuantizer build_quantizer(int d, double alpha) {
    if (d < 1) throw std::invalid_argument("quantizer: d must be >= 1");
    if (!(alpha > 0.0)) throw std::invalid_argument("quantizer: alpha must be > 0");
    BallQuantizer q;
    q.d = d;
    q.alpha = alpha;
    const double sqrt_d = std::sqrt(static_cast<double>(d));
    q.pitch = 2.0 * alpha / sqrt_d;
    q.half_extent = static_cast<int>(round_half_even(sqrt_d / (2.0 * alpha)));

    {
        // overflow guard before enumerating the grid
        const long double side = 2.0L * q.half_extent + 1.0L;
        long double count = 1.0L;
        for (int i = 0; i < d; ++i) count *= side;
        if (count > 1099511627776.0L) // 2^40
            throw std::invalid_argument("quantizer: alphabet bound exceeds 2^40; coarsen alpha");
    }

    const int side = 2 * q.half_extent + 1;
    std::vector<int> coord(d, -q.half_extent);
    for (;;) {
        Vec p(d);
        double nrm2 = 0.0;
        for (int i = 0; i < d; ++i) {
            p[i] = q.pitch * coord[i];
            nrm2 += p[i] * p[i];
        }
        const double nrm = std::sqrt(nrm2);
        if (nrm > 1.0) {
            const double s = 1.0 / nrm;
            for (double& v : p) v *= s;
        }
        bool duplicate = false;
        // projections of exterior points can coincide; keep the first index
        if (nrm > 1.0) {
            for (const Vec& existing : q.points) {
                double dist = 0.0;
                for (int i = 0; i < d; ++i) {
                    const double dd = existing[i] - p[i];
                    dist += dd * dd;
                }
                if (dist <= 1e-24) {
                    duplicate = true;
                    break;
                }
            }
        }
        if (!duplicate) {
            bool is_zero = true;
            for (int i = 0; i < d; ++i)
                if (coord[i] != 0) is_zero = false;
            if (is_zero) q.zero_index = static_cast<int>(q.points.size());
            q.points.push_back(std::move(p));
        }
        int i = d - 1;
        while (i >= 0) {
            if (++coord[i] < side - q.half_extent) break;
            coord[i] = -q.half_extent;
            --i;
        }
        if (i < 0) break;
    }
    return q;
}

std::pair<int, Vec> quantize(const BallQuantizer& q, const Vec& xi) {
    if (static_cast<int>(xi.size()) != q.d) throw std::invalid_argument("quantize: dimension mismatch");
    if (!all_finite(xi)) throw std::invalid_argument("quantize: non-finite input");
    int best = 0;
    double best_dist = -1.0;
    for (std::size_t idx = 0; idx < q.points.size(); ++idx) {
        double dist = 0.0;
        for (int i = 0; i < q.d; ++i) {
            const double dd = q.points[idx][i] - xi[i];
            dist += dd * dd;
        }
        if (best_dist < 0.0 || dist < best_dist) {
            best_dist = dist;
            best = static_cast<int>(idx);
        }
    }
    return {best, q.points[best]};
}

std::vector<bool> encode_index(const BallQuantizer& q, int index) {
    if (index < 0 || static_cast<std::uint64_t>(index) >= q.m())
        throw std::runtime_error("encode_index: index out of range");
    const int bits = q.code_bits();
    std::vector<bool> out(bits);
    for (int i = 0; i < bits; ++i) out[i] = ((index >> (bits - 1 - i)) & 1) != 0;
    return out;
}

int decode_index(const BallQuantizer& q, const std::vector<bool>& bits) {
    if (static_cast<int>(bits.size()) != q.code_bits())
        throw std::runtime_error("decode_index: wrong code width");
    int v = 0;
    for (bool b : bits) v = (v << 1) | (b ? 1 : 0);
    if (static_cast<std::uint64_t>(v) >= q.m()) throw std::runtime_error("decode_index: index out of range");
    return v;
}

std::string quantizer_to_json(const BallQuantizer& q) {
    nlohmann::json j;
    j["d"] = q.d;
    j["alpha"] = q.alpha;
    return j.dump();
}

BallQuantizer quantizer_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    // the point set is always rebuilt from (d, alpha) so replicas agree bit-for-bit
    return build_quantizer(j.at("d").get<int>(), j.at("alpha").get<double>());
}

} // namespace slsq

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "slsq/matrix.hpp"

// Finite point set in the closed unit ball with nearest-point encoding.
// Guarantees for accuracy parameter alpha:
//   (i)  ||xi - Q(xi)|| <= alpha whenever ||xi|| <= 1,
//   (ii) Q(xi) = 0 whenever ||xi|| <= alpha/sqrt(d),
//   (iii) point count m <= (2*round(sqrt(d)/(2 alpha)) + 1)^d.

namespace slsq {

struct BallQuantizer {
    int d = 0;
    double alpha = 0.0;
    double pitch = 0.0;    // grid spacing 2 alpha / sqrt(d)
    int half_extent = 0;   // round(1/pitch) = round(sqrt(d)/(2 alpha))
    std::vector<Vec> points; // deduplicated, indexed by lexicographic grid order
    int zero_index = -1;

    std::uint64_t m() const { return points.size(); }
    std::uint64_t m_hat() const; // alphabet-size bound (2*half_extent + 1)^d
    int code_bits() const;       // ceil(log2 m), >= 1
};

// Nearest-integer rounding with ties going to the even integer.
long long round_half_even(double x);

// Grid (pitch * S)^d with S = {-half_extent..half_extent}, exterior points
// projected radially onto the unit sphere, coincident projections merged
// (tolerance 1e-12, smallest lexicographic index kept).
// Refuses configurations whose m_hat bound exceeds 2^40.
BallQuantizer build_quantizer(int d, double alpha);

// Nearest point in Euclidean distance; ties broken toward the smallest index.
std::pair<int, Vec> quantize(const BallQuantizer& q, const Vec& xi);

// Fixed-width wire format for point indices.
std::vector<bool> encode_index(const BallQuantizer& q, int index);
int decode_index(const BallQuantizer& q, const std::vector<bool>& bits);

std::string quantizer_to_json(const BallQuantizer& q); // {"d":..,"alpha":..}
BallQuantizer quantizer_from_json(const std::string& text);

} // namespace slsq

#pragma once
// Boolean-cube combinatorics: Hamming balls in F_2^d, their sumsets, and the
// finite nonrecurrence construction that seeds everything else.
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "recforge/numeric.hpp"

namespace recforge {

// A vector in F_2^d, d <= 62, packed into the low bits of a word.
struct BitVector {
    int dim = 0;
    std::uint64_t bits = 0;

    friend bool operator==(const BitVector&, const BitVector&) = default;
};

inline int hamming_weight(const BitVector& v) {
    return __builtin_popcountll(v.bits);
}

inline BitVector bv_add(const BitVector& a, const BitVector& b) {
    if (a.dim != b.dim) throw std::invalid_argument("dimension mismatch");
    return {a.dim, a.bits ^ b.bits};
}

inline BitVector bv_zero(int d) { return {d, 0}; }
inline BitVector bv_ones(int d) {
    return {d, d == 64 ? ~0ull : ((1ull << d) - 1)};
}

struct HammingBallSpec {
    int dim = 0;
    int radius = 0;
    BitVector center;
};

// Default enumeration cap: 2^26 cells (overridable per call or via the
// RECFORGE_MAX_CELLS environment variable, read by default_cell_cap()).
std::uint64_t default_cell_cap();

// All vectors at Hamming distance <= radius from center, in increasing
// (weight-of-offset, numeric) order. Throws if the ball would exceed
// max_cells.
std::vector<BitVector> enumerate_ball(const BitVector& center, int radius,
                                      std::uint64_t max_cells);
std::vector<BitVector> enumerate_ball(const BitVector& center, int radius);
inline std::vector<BitVector> enumerate_ball(const HammingBallSpec& s) {
    return enumerate_ball(s.center, s.radius);
}

// {a - b : a in A, b in B} over F_2^d (difference = XOR sum).
std::vector<BitVector> ball_difference(const HammingBallSpec& a,
                                       const HammingBallSpec& b);

// |H_r(center)| = sum_{j<=r} C(d,j), exact.
Int ball_cardinality(int d, int radius);

// The sumset A + B = {a+b} for sets of F_2^d vectors (deduplicated, sorted).
std::vector<BitVector> set_sum(const std::vector<BitVector>& a,
                               const std::vector<BitVector>& b);

// Outcome of the ball-based nonrecurrence search in F_2^d.
struct F2NonrecurrenceWitness {
    int d = 0;
    int k = 0;
    int radius = 0;            // radius of A = H_radius(0)
    Int cardinality;           // |A|
    Rat density;               // |A| / 2^d
    std::vector<BitVector> A;  // the ball itself
};

// Searches for A = H_r(0) with r = floor(d/2)-k such that |A| > delta*2^d
// and (A - A) avoids H_k(all-ones). Returns nullopt with reason when the
// density bound fails or the geometry degenerates (2r + k >= d).
struct F2SearchResult {
    std::optional<F2NonrecurrenceWitness> witness;
    std::string failure_reason;  // empty on success
};

F2SearchResult f2_nonrecurrence_witness(int d, int k, const Rat& delta);

}  // namespace recforge

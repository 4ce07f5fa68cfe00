#include "recforge/f2.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace recforge {

std::uint64_t default_cell_cap() {
    if (const char* env = std::getenv("RECFORGE_MAX_CELLS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 1ull << 26;
}

std::vector<BitVector> enumerate_ball(const BitVector& center, int radius) {
    return enumerate_ball(center, radius, default_cell_cap());
}

std::vector<BitVector> ball_difference(const HammingBallSpec& a,
                                       const HammingBallSpec& b) {
    if (a.dim != b.dim) throw std::invalid_argument("dimension mismatch");
    return set_sum(enumerate_ball(a.center, a.radius),
                   enumerate_ball(b.center, b.radius));
}

std::vector<BitVector> enumerate_ball(const BitVector& center, int radius,
                                      std::uint64_t max_cells) {
    if (center.dim < 1 || center.dim > 62)
        throw std::invalid_argument("dimension out of range");
    if (radius < 0) throw std::invalid_argument("negative radius");
    int d = center.dim;
    Int card = ball_cardinality(d, radius);
    if (card > Int(max_cells))
        throw std::length_error("ball exceeds cell budget");

    std::vector<BitVector> out;
    out.reserve(static_cast<std::size_t>(card));
    // Weight shells in order; within a shell, offsets in numeric order via
    // Gosper's hack over d-bit words of fixed popcount.
    for (int w = 0; w <= std::min(radius, d); ++w) {
        if (w == 0) {
            out.push_back(center);
            continue;
        }
        std::uint64_t v = (1ull << w) - 1;
        std::uint64_t limit = 1ull << d;
        while (v < limit) {
            out.push_back({d, center.bits ^ v});
            std::uint64_t c = v & -v, r = v + c;
            v = (((r ^ v) >> 2) / c) | r;
            if (c == 0) break;
        }
    }
    return out;
}

Int ball_cardinality(int d, int radius) {
    Int s = 0;
    for (int j = 0; j <= std::min(radius, d); ++j) s += binomial(d, j);
    return s;
}

std::vector<BitVector> set_sum(const std::vector<BitVector>& a,
                               const std::vector<BitVector>& b) {
    std::set<std::uint64_t> seen;
    int d = a.empty() ? (b.empty() ? 0 : b[0].dim) : a[0].dim;
    for (const auto& x : a)
        for (const auto& y : b) seen.insert(bv_add(x, y).bits);
    std::vector<BitVector> out;
    out.reserve(seen.size());
    for (auto bits : seen) out.push_back({d, bits});
    return out;
}

F2SearchResult f2_nonrecurrence_witness(int d, int k, const Rat& delta) {
    F2SearchResult res;
    if (d < 1 || d > 62 || k < 0) {
        res.failure_reason = "invalid parameters";
        return res;
    }
    int radius = d / 2 - k;
    if (radius < 0) {
        res.failure_reason = "radius floor(d/2)-k is negative";
        return res;
    }
    // Disjointness of H_radius(0)-H_radius(0) = H_{2 radius}(0) from
    // H_k(1...1) holds iff 2*radius + k < d.
    if (2 * radius + k >= d) {
        res.failure_reason =
            "degenerate geometry: 2*(floor(d/2)-k)+k >= d, the difference "
            "set of the ball already meets the target ball";
        return res;
    }
    Int card = ball_cardinality(d, radius);
    Rat density(card, Int(1) << d);
    if (!(density > delta)) {
        res.failure_reason = "density " + to_string(density) +
                             " does not exceed delta " + to_string(delta);
        return res;
    }
    F2NonrecurrenceWitness w;
    w.d = d;
    w.k = k;
    w.radius = radius;
    w.cardinality = card;
    w.density = density;
    w.A = enumerate_ball(bv_zero(d), radius);
    res.witness = std::move(w);
    return res;
}

}  // namespace recforge

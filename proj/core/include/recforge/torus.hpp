#pragma once
// Exact torus points, the eps-thickened Hamming-cell membership test, the
// constructive alpha search, vertex copying along an orbit, and empirical
// orbit densities.
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "recforge/boxes.hpp"
#include "recforge/estream.hpp"
#include "recforge/numeric.hpp"

namespace recforge {

struct TorusPoint {
    std::vector<Rat> coords;  // each reduced into [0,1)

    int dim() const { return (int)coords.size(); }
    static TorusPoint reduce(std::vector<Rat> raw);
};

// ||x|| = min(x mod 1, 1 - x mod 1), distance to 0 on the circle.
Rat circle_norm(const Rat& x);
Rat sup_dist(const TorusPoint& a, const TorusPoint& b);
TorusPoint scalar_mul(const Int& n, const TorusPoint& a);

// The all-halves point and the indicator point (1/2 on coordinates of v).
TorusPoint half_point(const BitVector& v);

struct CopySpec {
    TorusPoint alpha;
    int k = 0;
    Rat epsilon;
};

// True iff n*alpha lies within the open eps-thickening of the Hamming ball
// of radius k around the all-halves point: at least dim-k coordinates
// within eps of 1/2 and every remaining coordinate within eps of 0.
bool tilde_h_member(const Int& n, const CopySpec& spec);

struct AlphaChoice {
    TorusPoint alpha;
    // per grid cell (row-major over coordinates, Q cells each): smallest
    // element of E whose orbit point lands in the cell
    std::vector<Int> witness_hits;
    long long grid_q = 0;
};
struct AlphaOutcome {
    std::optional<AlphaChoice> result;
    std::string failure_reason;
    std::uint64_t cells_covered = 0;
    std::uint64_t cells_total = 0;
};

// Searches deterministically for rational alpha whose orbit over the first
// `horizon` elements of E visits every cell of the side-1/Q grid on T^d.
AlphaOutcome choose_alpha(const IntStream& E, int d, const Rat& resolution,
                          std::uint64_t horizon);

struct CopyVerticesOutcome {
    std::optional<std::vector<Int>> g;  // g[i] matches targets[i]
    std::string failure_reason;
    int missing_index = -1;
    std::size_t matched_count = 0;  // targets reached (diagnostic)
};

// For each target v finds the smallest element g of E (within horizon) with
// sup-distance ||g*alpha - v|| < eps/2.
CopyVerticesOutcome copy_cayley_vertices(const IntStream& E,
                                         const TorusPoint& alpha,
                                         const std::vector<TorusPoint>& targets,
                                         const Rat& eps,
                                         std::uint64_t horizon);

// |{1 <= n <= N : n*alpha in A}| / N, exact rational arithmetic.
Rat empirical_box_density(const TorusPoint& alpha, const BoxSet& A,
                          std::uint64_t N);

// Same count for a 1-dimensional 64-bit fixed-point alpha (illustrative
// only; box endpoints are rounded to 64 fractional bits).
Rat empirical_box_density_fixedpoint(std::uint64_t alpha_frac64,
                                     const BoxSet& A, std::uint64_t N);

// (sqrt(5)-1)/2 rounded to 64 fractional bits.
inline constexpr std::uint64_t kGoldenRatioFrac64 = 0x9E3779B97F4A7C15ull;

}  // namespace recforge

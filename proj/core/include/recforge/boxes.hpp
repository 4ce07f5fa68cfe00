#pragma once
// Exact interval and box arithmetic on the torus T^d (coordinates mod 1).
// Intervals are arcs that may wrap past 0; boxes are products of arcs.
#include <optional>
#include <vector>

#include "recforge/f2.hpp"
#include "recforge/numeric.hpp"

namespace recforge {

// Arc starting at lo (in [0,1)) of length len (in [0,1]), i.e. the set
// {lo + t mod 1 : 0 <= t <= len} with endpoint openness flags.
struct Interval {
    Rat lo;
    Rat len;
    bool lo_closed = true;
    bool hi_closed = true;

    bool contains(const Rat& x) const;
    friend bool operator==(const Interval&, const Interval&) = default;
};

// Closed arc [a, b] with a <= b < a+1 (b may exceed 1; reduced internally).
Interval closed_interval(const Rat& a, const Rat& b);
// Open arc of radius eps around c: (c - eps, c + eps).
Interval open_ball_1d(const Rat& c, const Rat& eps);

// Minimal circle distance between two arcs (0 if they overlap or touch).
Rat interval_distance(const Interval& a, const Interval& b);

// Intersection of two arcs as up to 2 arcs (empty vector if disjoint).
std::vector<Interval> interval_intersection(const Interval& a,
                                            const Interval& b);

using Box = std::vector<Interval>;  // one arc per coordinate

struct BoxSet {
    int dim = 0;
    std::vector<Box> boxes;
    bool disjoint = false;  // caller-asserted; verifiable via boxes_overlap

    Rat measure() const;  // sum of box volumes; exact when disjoint
};

bool box_contains(const Box& b, const std::vector<Rat>& x);
// Sup-metric distance between boxes = max over coordinates of arc distance.
Rat box_distance(const Box& a, const Box& b);
bool boxes_overlap(const Box& a, const Box& b);
// Componentwise intersection; nullopt when empty in some coordinate (each
// per-coordinate intersection must be a single arc, which holds for all the
// grid-aligned boxes used here; throws otherwise).
std::optional<Box> box_intersection(const Box& a, const Box& b);

Box translate(const Box& b, const std::vector<Rat>& t);

// The box a/2 + I_eps^d attached to a in G_d = {0,1/2}^d, where
// I_eps = [eps, 1/2 - eps]. Union over A gives A-square of the tiling.
Box cell_box(const BitVector& a, const Rat& eps);
BoxSet square_set(const std::vector<BitVector>& A, const Rat& eps);

// Exact check of the tiling identity
//   (A + I^d) intersect (A + I^d + t) = (A intersect (A+t)) + I^d
// for A subset of G_d, t in G_d, 0 < eps < 1/4.
bool box_intersection_lemma_check(const std::vector<BitVector>& A,
                                  const BitVector& t, const Rat& eps);

// Separation-based lifting: B = A-square(eps_prime); requires
// A intersect (A + R) empty; returns eps = (sup-metric separation of B and
// B + R)/2 > 0 and re-verifies B intersect (B + R + V_eps) = empty.
struct LiftResult {
    Rat eps_prime;
    Rat eps;
    BoxSet B;
    Rat density;  // |A| (1/2 - 2 eps_prime)^d
};
struct LiftOutcome {
    std::optional<LiftResult> result;
    std::string failure_reason;
};
// eps_prime <= 0 requests an automatic search over 1/8, 1/16, 1/32, ...
// for the largest scheduled value with |A|(1/2-2e)^d > delta.
LiftOutcome lift_nonrecurrence(const std::vector<BitVector>& A,
                               const std::vector<BitVector>& R,
                               const Rat& delta, const Rat& eps_prime = 0);

}  // namespace recforge

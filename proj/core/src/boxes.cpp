#include "recforge/boxes.hpp"

#include <algorithm>
#include <stdexcept>

namespace recforge {

namespace {

struct Seg {  // linear segment [lo, hi] with openness flags
    Rat lo, hi;
    bool loc, hic;
};

bool seg_contains(const Seg& s, const Rat& x) {
    if (x < s.lo || x > s.hi) return false;
    if (x == s.lo && !s.loc) return false;
    if (x == s.hi && !s.hic) return false;
    return true;
}

}  // namespace

bool Interval::contains(const Rat& x) const {
    Rat t = frac_mod1(x - lo);
    if (len >= 1) {
        if (t == 0) return lo_closed || hi_closed;
        return true;
    }
    if (t == 0) return lo_closed;
    if (t < len) return true;
    if (t == len) return hi_closed;
    return false;
}

Interval closed_interval(const Rat& a, const Rat& b) {
    if (b < a || b >= a + 1) throw std::invalid_argument("bad interval");
    return Interval{frac_mod1(a), b - a, true, true};
}

Interval open_ball_1d(const Rat& c, const Rat& eps) {
    if (eps <= 0 || eps > Rat(1, 2)) throw std::invalid_argument("bad radius");
    return Interval{frac_mod1(c - eps), 2 * eps, false, false};
}

Rat interval_distance(const Interval& a, const Interval& b) {
    if (a.len >= 1 || b.len >= 1) return 0;
    Rat ab = frac_mod1(b.lo - a.lo);  // b.lo relative to a.lo
    Rat ba = frac_mod1(a.lo - b.lo);
    if (ab <= a.len || ba <= b.len) return 0;  // closed arcs meet
    Rat gap1 = ab - a.len;  // from a's high end up to b's low end
    Rat gap2 = ba - b.len;  // from b's high end up to a's low end
    return std::min(gap1, gap2);
}

std::vector<Interval> interval_intersection(const Interval& a,
                                            const Interval& b) {
    std::vector<Interval> out;
    Seg sa{a.lo, a.lo + a.len, a.lo_closed, a.hi_closed};
    for (int shift = -1; shift <= 1; ++shift) {
        Seg sb{b.lo + shift, b.lo + shift + b.len, b.lo_closed, b.hi_closed};
        Rat lo = std::max(sa.lo, sb.lo);
        Rat hi = std::min(sa.hi, sb.hi);
        if (lo > hi) continue;
        if (lo == hi) {
            if (seg_contains(sa, lo) && seg_contains(sb, lo))
                out.push_back(Interval{frac_mod1(lo), 0, true, true});
            continue;
        }
        bool loc = (sa.lo < lo || sa.loc) && (sb.lo < lo || sb.loc);
        bool hic = (sa.hi > hi || sa.hic) && (sb.hi > hi || sb.hic);
        out.push_back(Interval{frac_mod1(lo), hi - lo, loc, hic});
    }
    // dedupe (full-circle arcs can intersect a segment twice identically)
    std::sort(out.begin(), out.end(), [](const Interval& x, const Interval& y) {
        if (x.lo != y.lo) return x.lo < y.lo;
        return x.len < y.len;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Rat BoxSet::measure() const {
    Rat total = 0;
    for (const auto& b : boxes) {
        Rat v = 1;
        for (const auto& iv : b) v *= std::min(iv.len, Rat(1));
        total += v;
    }
    return total;
}

bool box_contains(const Box& b, const std::vector<Rat>& x) {
    if (b.size() != x.size()) throw std::invalid_argument("dim mismatch");
    for (std::size_t i = 0; i < b.size(); ++i)
        if (!b[i].contains(x[i])) return false;
    return true;
}

Rat box_distance(const Box& a, const Box& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dim mismatch");
    Rat d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, interval_distance(a[i], b[i]));
    return d;
}

bool boxes_overlap(const Box& a, const Box& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dim mismatch");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (interval_intersection(a[i], b[i]).empty()) return false;
    return true;
}

std::optional<Box> box_intersection(const Box& a, const Box& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dim mismatch");
    Box out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto pieces = interval_intersection(a[i], b[i]);
        if (pieces.empty()) return std::nullopt;
        if (pieces.size() > 1)
            throw std::logic_error("non-convex coordinate intersection");
        out.push_back(pieces[0]);
    }
    return out;
}

Box translate(const Box& b, const std::vector<Rat>& t) {
    if (b.size() != t.size()) throw std::invalid_argument("dim mismatch");
    Box out = b;
    for (std::size_t i = 0; i < b.size(); ++i)
        out[i].lo = frac_mod1(out[i].lo + t[i]);
    return out;
}

Box cell_box(const BitVector& a, const Rat& eps) {
    if (eps <= 0 || eps >= Rat(1, 4))
        throw std::invalid_argument("need 0 < eps < 1/4");
    Box b;
    b.reserve(a.dim);
    for (int i = 0; i < a.dim; ++i) {
        Rat base = ((a.bits >> i) & 1) ? Rat(1, 2) : Rat(0);
        b.push_back(closed_interval(base + eps, base + Rat(1, 2) - eps));
    }
    return b;
}

BoxSet square_set(const std::vector<BitVector>& A, const Rat& eps) {
    BoxSet s;
    s.dim = A.empty() ? 0 : A[0].dim;
    s.disjoint = true;
    for (const auto& a : A) s.boxes.push_back(cell_box(a, eps));
    return s;
}

namespace {

std::vector<Rat> half_coords(const BitVector& t) {
    std::vector<Rat> v(t.dim);
    for (int i = 0; i < t.dim; ++i)
        v[i] = ((t.bits >> i) & 1) ? Rat(1, 2) : Rat(0);
    return v;
}

using Canon = std::vector<std::pair<Rat, Rat>>;  // (lo, len) per coordinate

Canon canon_box(const Box& b) {
    Canon c;
    for (const auto& iv : b) c.emplace_back(iv.lo, iv.len);
    return c;
}

}  // namespace

bool box_intersection_lemma_check(const std::vector<BitVector>& A,
                                  const BitVector& t, const Rat& eps) {
    if (eps <= 0 || eps >= Rat(1, 4))
        throw std::invalid_argument("need 0 < eps < 1/4");
    auto tv = half_coords(t);
    std::vector<Canon> lhs, rhs;
    for (const auto& a1 : A)
        for (const auto& a2 : A) {
            auto inter =
                box_intersection(cell_box(a1, eps),
                                 translate(cell_box(a2, eps), tv));
            if (inter) lhs.push_back(canon_box(*inter));
        }
    for (const auto& a1 : A)
        for (const auto& a2 : A)
            if (a1 == bv_add(a2, t)) rhs.push_back(canon_box(cell_box(a1, eps)));
    std::sort(lhs.begin(), lhs.end());
    lhs.erase(std::unique(lhs.begin(), lhs.end()), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    rhs.erase(std::unique(rhs.begin(), rhs.end()), rhs.end());
    return lhs == rhs;
}

LiftOutcome lift_nonrecurrence(const std::vector<BitVector>& A,
                               const std::vector<BitVector>& R,
                               const Rat& delta, const Rat& eps_prime) {
    LiftOutcome out;
    if (A.empty()) {
        out.failure_reason = "A is empty: cardinality bound cannot hold";
        return out;
    }
    int d = A[0].dim;
    Int cardA = (long long)A.size();

    auto density_at = [&](const Rat& e) {
        Rat base = Rat(1, 2) - 2 * e;
        Rat v(cardA);
        for (int i = 0; i < d; ++i) v *= base;
        return v;
    };

    Rat e = eps_prime;
    if (e <= 0) {
        // largest scheduled eps' = 1/8, 1/16, ... meeting the measure bound
        bool found = false;
        for (int q = 8; q <= (1 << 20); q *= 2) {
            Rat cand(1, q);
            if (density_at(cand) > delta) {
                e = cand;
                found = true;
                break;
            }
        }
        if (!found) {
            out.failure_reason =
                "no eps' in schedule gives |A|(1/2-2eps')^d > delta";
            return out;
        }
    } else if (!(density_at(e) > delta)) {
        out.failure_reason = "|A|(1/2-2eps')^d <= delta for requested eps'";
        return out;
    }
    if (e >= Rat(1, 4)) {
        out.failure_reason = "eps' must be below 1/4";
        return out;
    }

    // precondition: A disjoint from A + R in G_d
    for (const auto& r : R)
        for (const auto& a1 : A)
            for (const auto& a2 : A)
                if (a1 == bv_add(a2, r)) {
                    out.failure_reason = "A intersects A + R in G_d";
                    return out;
                }

    LiftResult res;
    res.eps_prime = e;
    res.B = square_set(A, e);
    res.density = density_at(e);

    if (R.empty()) {
        res.eps = e;
        out.result = std::move(res);
        return out;
    }

    Rat sep(-1);
    for (const auto& r : R) {
        auto rv = half_coords(r);
        for (const auto& a1 : A)
            for (const auto& a2 : A) {
                Rat dist = box_distance(cell_box(a1, e),
                                        translate(cell_box(a2, e), rv));
                if (sep < 0 || dist < sep) sep = dist;
            }
    }
    if (sep <= 0) {
        out.failure_reason = "B touches B + R: zero separation";
        return out;
    }
    res.eps = sep / 2;

    // independent re-verification: every pair at sup-distance >= eps
    for (const auto& r : R) {
        auto rv = half_coords(r);
        for (const auto& a1 : A)
            for (const auto& a2 : A)
                if (box_distance(cell_box(a1, e),
                                 translate(cell_box(a2, e), rv)) < res.eps) {
                    out.failure_reason = "re-verification failed";
                    return out;
                }
    }
    out.result = std::move(res);
    return out;
}

}  // namespace recforge

#include "recforge/torus.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace recforge {

TorusPoint TorusPoint::reduce(std::vector<Rat> raw) {
    TorusPoint p;
    p.coords.reserve(raw.size());
    for (auto& c : raw) p.coords.push_back(frac_mod1(c));
    return p;
}

Rat circle_norm(const Rat& x) {
    Rat t = frac_mod1(x);
    return std::min(t, Rat(1 - t));
}

Rat sup_dist(const TorusPoint& a, const TorusPoint& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dim mismatch");
    Rat d = 0;
    for (int i = 0; i < a.dim(); ++i)
        d = std::max(d, circle_norm(a.coords[i] - b.coords[i]));
    return d;
}

TorusPoint scalar_mul(const Int& n, const TorusPoint& a) {
    TorusPoint p;
    p.coords.reserve(a.coords.size());
    for (const auto& c : a.coords) p.coords.push_back(frac_mod1(Rat(n) * c));
    return p;
}

TorusPoint half_point(const BitVector& v) {
    TorusPoint p;
    p.coords.reserve(v.dim);
    for (int i = 0; i < v.dim; ++i)
        p.coords.push_back(((v.bits >> i) & 1) ? Rat(1, 2) : Rat(0));
    return p;
}

bool tilde_h_member(const Int& n, const CopySpec& spec) {
    if (spec.epsilon <= 0 || spec.k < 0)
        throw std::invalid_argument("invalid copy spec");
    TorusPoint x = scalar_mul(n, spec.alpha);
    int off_half = 0;
    for (const auto& c : x.coords) {
        if (circle_norm(c - Rat(1, 2)) < spec.epsilon) continue;
        if (circle_norm(c) < spec.epsilon) {
            ++off_half;
            continue;
        }
        return false;
    }
    return off_half <= spec.k;
}

namespace {

// Common-denominator view of a rational torus point: coords = num[i]/den.
struct ScaledAlpha {
    Int den = 1;
    std::vector<Int> num;

    explicit ScaledAlpha(const TorusPoint& a) {
        using boost::multiprecision::denominator;
        using boost::multiprecision::numerator;
        using boost::multiprecision::lcm;
        for (const auto& c : a.coords) den = lcm(den, denominator(c));
        for (const auto& c : a.coords)
            num.push_back(numerator(c) * (den / denominator(c)));
    }

    // n*alpha coordinate i as an integer in [0, den)
    Int pos(const Int& n_mod_den, std::size_t i) const {
        return (n_mod_den * num[i]) % den;
    }
};

}  // namespace

AlphaOutcome choose_alpha(const IntStream& E, int d, const Rat& resolution,
                          std::uint64_t horizon) {
    AlphaOutcome out;
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (d < 1 || resolution <= 0 || resolution > 1 ||
        numerator(resolution) != 1) {
        out.failure_reason = "resolution must be 1/Q for a positive integer Q";
        return out;
    }
    long long Q = (long long)denominator(resolution);
    double cells_d = std::pow((double)Q, d);
    if (cells_d > (double)default_cell_cap()) {
        out.failure_reason = "grid cell count exceeds enumeration cap";
        return out;
    }
    std::uint64_t cells = 1;
    for (int i = 0; i < d; ++i) cells *= (std::uint64_t)Q;
    out.cells_total = cells;

    // deterministic candidate schedule
    std::vector<TorusPoint> candidates;
    Int twoQ = 2 * Q;
    {
        std::vector<Rat> c;
        Int p = 1;
        for (int j = 0; j < d; ++j) {
            p *= twoQ;
            c.emplace_back(Rat(1, p));
        }
        candidates.push_back(TorusPoint::reduce(c));
        if (E.kind() == IntStream::Kind::Arith && E.arith_step() > 1) {
            std::vector<Rat> c2;
            Int p2 = 1;
            for (int j = 0; j < d; ++j) {
                p2 *= twoQ;
                c2.emplace_back(Rat(1, p2 * E.arith_step()));
            }
            candidates.push_back(TorusPoint::reduce(c2));
        }
    }
    std::mt19937_64 rng(0x5eedf00d);  // fixed seed: deterministic schedule
    if (E.kind() == IntStream::Kind::Powers) {
        // denominators b^m - 1 make the orbit of the powers of b cyclic
        Int b = E.power_base();
        for (int m = 4; m <= 64; m += 2) {
            Int D = 1;
            for (int j = 0; j < m; ++j) D *= b;
            D -= 1;
            if (D < 2 * Q) continue;
            for (int attempt = 0; attempt < 4; ++attempt) {
                std::vector<Rat> c;
                for (int j = 0; j < d; ++j)
                    c.emplace_back(Rat(Int(rng() % 1000000007) % D, D));
                candidates.push_back(TorusPoint::reduce(c));
            }
        }
    }
    for (int t = 1; t <= 64; ++t) {
        Int D = 1;
        for (int j = 0; j < d; ++j) D *= twoQ;
        D = D * t + 1;
        std::vector<Rat> c;
        for (int j = 0; j < d; ++j)
            c.emplace_back(Rat(Int(rng() % 1000000007) % D, D));
        candidates.push_back(TorusPoint::reduce(c));
    }

    std::uint64_t best_cov = 0;
    for (const auto& alpha : candidates) {
        ScaledAlpha sa(alpha);
        std::vector<Int> hits(cells, Int(-1));
        std::uint64_t covered = 0;
        std::uint64_t examined = 0;
        for (std::uint64_t i = 0; covered < cells && examined < horizon; ++i) {
            if (E.finite() && i >= E.list_size()) break;
            Int n = E.element(i);
            ++examined;
            Int nm = n % sa.den;
            if (nm < 0) nm += sa.den;
            std::uint64_t idx = 0;
            for (int j = 0; j < d; ++j) {
                Int cell = (sa.pos(nm, j) * Q) / sa.den;  // floor(x*Q)
                idx = idx * (std::uint64_t)Q + (std::uint64_t)cell;
            }
            if (hits[idx] < 0) {
                hits[idx] = n;
                ++covered;
            }
        }
        best_cov = std::max(best_cov, covered);
        if (covered == cells) {
            AlphaChoice ch;
            ch.alpha = alpha;
            ch.witness_hits = std::move(hits);
            ch.grid_q = Q;
            out.result = std::move(ch);
            out.cells_covered = cells;
            return out;
        }
    }
    out.cells_covered = best_cov;
    out.failure_reason = "horizon exhausted: best candidate covered " +
                         std::to_string(best_cov) + " of " +
                         std::to_string(cells) + " cells";
    return out;
}

CopyVerticesOutcome copy_cayley_vertices(const IntStream& E,
                                         const TorusPoint& alpha,
                                         const std::vector<TorusPoint>& targets,
                                         const Rat& eps,
                                         std::uint64_t horizon) {
    CopyVerticesOutcome out;
    if (eps <= 0) {
        out.failure_reason = "eps must be positive";
        return out;
    }
    int d = alpha.dim();
    for (const auto& v : targets)
        if (v.dim() != d) {
            out.failure_reason = "target dimension mismatch";
            return out;
        }
    ScaledAlpha sa(alpha);
    Rat half_eps = eps / 2;
    // strict per-coordinate integer windows: pos in (L, L + eps*den) mod den
    // becomes pos in [a, b] or pos <= b - den
    struct Win {
        Int a, b;
    };
    std::vector<std::vector<Win>> win(targets.size());
    auto floor_rat = [](const Rat& r) {
        Int n = boost::multiprecision::numerator(r);
        Int dd = boost::multiprecision::denominator(r);
        Int q = n / dd;
        if (n < 0 && q * dd != n) --q;
        return q;
    };
    for (std::size_t t = 0; t < targets.size(); ++t) {
        win[t].reserve(d);
        for (int j = 0; j < d; ++j) {
            Rat L = frac_mod1(targets[t].coords[j] - half_eps) * sa.den;
            Rat H = L + eps * sa.den;
            win[t].push_back({floor_rat(L) + 1, -floor_rat(-H) - 1});
        }
    }
    std::vector<Int> pos(d);
    std::vector<Int> g(targets.size(), Int(-1));
    std::size_t matched = 0;
    // residue of the current element mod the common denominator, advanced
    // incrementally so geometric streams do not materialize huge integers
    Int nm = 0;
    bool have_nm = false;
    for (std::uint64_t i = 0; matched < targets.size() && i < horizon; ++i) {
        if (E.finite() && i >= E.list_size()) break;
        if (!have_nm) {
            nm = E.element(i) % sa.den;
            have_nm = true;
        } else {
            switch (E.kind()) {
                case IntStream::Kind::All:
                    nm = (nm + 1) % sa.den;
                    break;
                case IntStream::Kind::Arith:
                    nm = (nm + E.arith_step()) % sa.den;
                    break;
                case IntStream::Kind::Powers:
                case IntStream::Kind::Geometric:
                    nm = (nm * E.power_base()) % sa.den;
                    break;
                case IntStream::Kind::File:
                    nm = E.element(i) % sa.den;
                    break;
            }
        }
        if (nm < 0) nm += sa.den;
        for (int j = 0; j < d; ++j) pos[j] = sa.pos(nm, j);
        for (std::size_t t = 0; t < targets.size(); ++t) {
            if (g[t] >= 0) continue;
            bool ok = true;
            for (int j = 0; j < d && ok; ++j) {
                const Win& w = win[t][j];
                ok = (pos[j] >= w.a && pos[j] <= w.b) ||
                     pos[j] <= w.b - sa.den;
            }
            if (ok) {
                g[t] = E.element(i);
                ++matched;
            }
        }
    }
    out.matched_count = matched;
    if (matched < targets.size()) {
        for (std::size_t t = 0; t < targets.size(); ++t)
            if (g[t] < 0) {
                out.missing_index = (int)t;
                break;
            }
        out.failure_reason = "horizon exhausted before reaching target " +
                             std::to_string(out.missing_index);
        return out;
    }
    out.g = std::move(g);
    return out;
}

Rat empirical_box_density(const TorusPoint& alpha, const BoxSet& A,
                          std::uint64_t N) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    if (A.dim != alpha.dim()) throw std::invalid_argument("dim mismatch");
    ScaledAlpha sa(alpha);
    std::uint64_t count = 0;
    std::vector<Int> p(alpha.dim(), Int(0));
    std::vector<Rat> x(alpha.dim());
    for (std::uint64_t n = 1; n <= N; ++n) {
        for (int j = 0; j < alpha.dim(); ++j) {
            p[j] += sa.num[j] % sa.den;
            if (p[j] >= sa.den) p[j] -= sa.den;
            x[j] = Rat(p[j], sa.den);
        }
        for (const auto& b : A.boxes)
            if (box_contains(b, x)) {
                ++count;
                break;
            }
    }
    return Rat(Int(count), Int(N));
}

Rat empirical_box_density_fixedpoint(std::uint64_t alpha_frac64,
                                     const BoxSet& A, std::uint64_t N) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    if (A.dim != 1) throw std::invalid_argument("fixed-point path is 1-d");
    // round box endpoints once to 64 fractional bits
    auto to64 = [](const Rat& r) -> std::uint64_t {
        Rat t = frac_mod1(r);
        Int scaled = (boost::multiprecision::numerator(t) << 64) /
                     boost::multiprecision::denominator(t);
        return (std::uint64_t)scaled;
    };
    struct Arc {
        std::uint64_t lo, len;
        bool full;
    };
    std::vector<Arc> arcs;
    for (const auto& b : A.boxes) {
        const Interval& iv = b.at(0);
        arcs.push_back({to64(iv.lo), to64(iv.len), iv.len >= 1});
    }
    std::uint64_t x = 0, count = 0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        x += alpha_frac64;  // natural mod 2^64
        for (const auto& a : arcs)
            if (a.full || x - a.lo <= a.len) {  // wrap-aware offset compare
                ++count;
                break;
            }
    }
    return Rat(Int(count), Int(N));
}

}  // namespace recforge

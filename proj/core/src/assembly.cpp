#include "recforge/assembly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "recforge/boxes.hpp"
#include "recforge/f2.hpp"
#include "recforge/graph.hpp"

namespace recforge {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

Int floor_rat(const Rat& r) {
    Int n = numerator(r), d = denominator(r);
    Int q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}
Int ceil_rat(const Rat& r) { return -floor_rat(-r); }

long long to_ll(const Int& v) {
    if (v > Int(std::numeric_limits<long long>::max()) ||
        v < Int(std::numeric_limits<long long>::min()))
        throw std::overflow_error("value exceeds 64-bit range");
    return (long long)v;
}

bool sorted_contains(const std::vector<long long>& v, long long x) {
    return std::binary_search(v.begin(), v.end(), x);
}

// quick constructor-side sanity check of witness invariants (the
// independent checker used for verification lives elsewhere)
bool witness_invariants_hold(const NonrecurrenceWitness& w) {
    if (w.B.empty() || w.S.empty() || w.m <= 0) return false;
    std::vector<long long> b = w.B;
    std::sort(b.begin(), b.end());
    long long maxS = *std::max_element(w.S.begin(), w.S.end());
    long long minS = *std::min_element(w.S.begin(), w.S.end());
    if (minS <= 0) return false;
    if (b.front() < 0 || b.back() + 2 * maxS >= w.m) return false;
    if (!(Rat((long long)w.B.size()) > w.delta * w.m)) return false;
    for (long long x : b)
        for (long long s : w.S)
            if (std::binary_search(b.begin(), b.end(), x + s)) return false;
    return true;
}

}  // namespace

bool PeriodicSet::contains(long long n) const {
    if (halfline && n < 0) return false;
    long long r = (n - offset) % period;
    if (r < 0) r += period;
    return pattern[(std::size_t)r] != 0;
}

long long PeriodicSet::pattern_count() const {
    return std::count(pattern.begin(), pattern.end(), (char)1);
}

Rat PeriodicSet::density() const { return Rat(pattern_count(), period); }

PeriodicSet PeriodicSet::residues(long long period,
                                  std::vector<long long> rs) {
    if (period <= 0) throw std::invalid_argument("period must be positive");
    PeriodicSet s;
    s.period = period;
    s.pattern.assign((std::size_t)period, 0);
    for (long long r : rs) {
        long long m = r % period;
        if (m < 0) m += period;
        s.pattern[(std::size_t)m] = 1;
    }
    return s;
}

std::pair<long long, long long> best_window(const PeriodicSet& A,
                                            long long m) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    long long p = A.period;
    // prefix[i] = #{0 <= n < i : n in A} for i in [0, p]
    std::vector<long long> prefix((std::size_t)p + 1, 0);
    for (long long i = 0; i < p; ++i)
        prefix[(std::size_t)i + 1] =
            prefix[(std::size_t)i] + (A.contains(i) ? 1 : 0);
    long long per = prefix[(std::size_t)p];
    auto count_upto = [&](long long x) {  // #{0 <= n < x}
        return (x / p) * per + prefix[(std::size_t)(x % p)];
    };
    long long best_t = 0, best_c = -1;
    for (long long t = 0; t < p; ++t) {
        long long c = count_upto(t + m) - count_upto(t);
        if (c > best_c) {
            best_c = c;
            best_t = t;
        }
    }
    return {best_t, best_c};
}

WitnessOutcome witness_from_set(const std::vector<long long>& S,
                                const PeriodicSet& A, const Rat& delta,
                                long long m) {
    WitnessOutcome out;
    if (S.empty()) {
        out.failure_reason = "S is empty";
        out.precondition_error = true;
        return out;
    }
    long long k = *std::max_element(S.begin(), S.end());
    if (*std::min_element(S.begin(), S.end()) <= 0) {
        out.failure_reason = "S must contain positive integers";
        out.precondition_error = true;
        return out;
    }
    if (!(A.density() > delta)) {
        out.failure_reason = "density of A does not exceed delta";
        return out;
    }
    // (A - A) disjoint from S, exhaustively over one period
    for (long long s : S)
        for (long long r = 0; r < A.period; ++r)
            if (A.contains(r) && A.contains(r + s)) {
                out.failure_reason =
                    "difference set of A meets S at " + std::to_string(s);
                out.precondition_error = true;
                return out;
            }
    if (m <= 2 * k) {
        out.failure_reason = "m too small: window length m-2max(S) is empty";
        return out;
    }
    auto [t, cnt] = best_window(A, m);
    NonrecurrenceWitness w;
    w.m = m;
    w.S = S;
    std::sort(w.S.begin(), w.S.end());
    w.delta = delta;
    for (long long x = 0; x < m - 2 * k; ++x)
        if (A.contains(t + x)) w.B.push_back(x);
    if (!(Rat((long long)w.B.size()) > delta * m)) {
        out.failure_reason = "m too small: |B| = " +
                             std::to_string(w.B.size()) +
                             " does not exceed delta*m";
        return out;
    }
    out.witness = std::move(w);
    return out;
}

TwoPiecesOutcome two_pieces(const NonrecurrenceWitness& w_E,
                            const std::vector<long long>& B, long long l,
                            const std::vector<long long>& F, const Rat& eta,
                            long long e0, long long f0) {
    TwoPiecesOutcome out;
    auto error = [&](const std::string& why) {
        out.is_error = true;
        out.failure_reason = why;
        return out;
    };
    if (F.empty() || w_E.S.empty()) return error("E and F must be nonempty");
    if (!std::count(w_E.S.begin(), w_E.S.end(), e0))
        return error("e0 not in E");
    if (!std::count(F.begin(), F.end(), f0)) return error("f0 not in F");
    if (!witness_invariants_hold(w_E))
        return error("input witness (A,m) violates its invariants");
    NonrecurrenceWitness w_F{B, l, F, eta};
    if (!witness_invariants_hold(w_F))
        return error("input witness (B,l) violates its invariants");

    const std::vector<long long>& A = w_E.B;
    long long m = w_E.m;
    const Rat& delta = w_E.delta;

    std::vector<long long> EU = w_E.S;
    for (long long f : F) EU.push_back(m * f);
    std::sort(EU.begin(), EU.end());
    EU.erase(std::unique(EU.begin(), EU.end()), EU.end());
    long long k = EU.back();

    Rat delta_prime((long long)A.size(), m);
    if (!(delta_prime > delta))
        return error("|A|/m must strictly exceed delta");
    // threshold: 2 delta' eta l m - 2k > 2 delta eta l m
    out.l0 = Rat(k) / (eta * m * (delta_prime - delta));
    if (!(Rat(l) > out.l0)) {
        out.failure_reason = "l does not exceed the threshold l0 = " +
                             to_string(out.l0);
        out.is_error = true;
        return out;
    }

    std::vector<long long> U;
    U.reserve(2 * A.size() * B.size());
    for (long long b : B)
        for (long long a : A) {
            U.push_back(a + m * b);
            U.push_back(a + e0 + m * (b + f0));
        }
    std::sort(U.begin(), U.end());
    U.erase(std::unique(U.begin(), U.end()), U.end());

    long long lm = l * m;
    long long t1 = m * *std::min_element(B.begin(), B.end());
    std::vector<long long> C;
    for (long long x : U)
        if (x < lm - 2 * k) C.push_back(x - t1);
    // the proof's translation requires the designated copy of A to survive
    for (long long a : A)
        if (!sorted_contains(C, a))
            return error("translated C does not contain A");

    NonrecurrenceWitness w;
    w.B = std::move(C);
    w.m = lm;
    w.S = EU;
    w.delta = 2 * delta * eta;

    // re-verify the three displayed properties exhaustively
    if (!(Rat((long long)w.B.size()) > w.delta * lm)) {
        out.failure_reason = "|C| does not exceed 2*delta*eta*l*m";
        return out;
    }
    for (long long c : w.B)
        if (c < 0 || c + 2 * k >= lm) {
            out.failure_reason = "C + S + S escapes [lm]";
            return out;
        }
    std::unordered_set<long long> cs(w.B.begin(), w.B.end());
    for (long long c : w.B)
        for (long long s : EU)
            if (cs.count(c + s)) {
                out.failure_reason = "C meets C + (E u mF)";
                return out;
            }
    out.t1 = t1;
    out.witness = std::move(w);
    return out;
}

long long decomposition_count(long long value, const std::vector<long long>& A,
                              const std::vector<long long>& B, long long m,
                              long long e0, long long f0) {
    long long n = 0;
    for (int q = 0; q <= 1; ++q)
        for (long long a : A)
            for (long long b : B)
                if (a + q * e0 + m * (b + q * f0) == value) ++n;
    return n;
}

std::vector<long long> dilate(const std::vector<long long>& S, long long m) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    std::vector<long long> out;
    out.reserve(S.size());
    for (long long s : S) out.push_back(m * s);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<long long> quotient(const std::vector<long long>& S, long long m) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    std::vector<long long> out;
    for (long long s : S)
        if (s % m == 0) out.push_back(s / m);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// pipeline internals
// ---------------------------------------------------------------------------

namespace {

// Scaled view of alpha: coords num[j]/P with one common denominator P.
struct Scaled {
    Int P = 1;
    std::vector<Int> num;

    explicit Scaled(const TorusPoint& a) {
        using boost::multiprecision::lcm;
        for (const auto& c : a.coords) P = lcm(P, denominator(c));
        for (const auto& c : a.coords)
            num.push_back(numerator(c) * (P / denominator(c)));
    }
};

// Periodic preimage {n : n*alpha in union of cells of A, thickened to the
// closed tiling boxes with parameter eps}; period = common denominator.
PeriodicSet square_preimage(const TorusPoint& alpha,
                            const std::vector<BitVector>& A, const Rat& eps,
                            long long max_period) {
    Scaled sa(alpha);
    if (sa.P > max_period)
        throw std::length_error("tiling preimage period exceeds cap");
    long long P = to_ll(sa.P);
    int d = alpha.dim();
    std::unordered_set<std::uint64_t> cells;
    for (const auto& a : A) cells.insert(a.bits);
    // integer bounds of the two per-coordinate closed cell intervals
    Int lo0 = ceil_rat(eps * P), hi0 = floor_rat((Rat(1, 2) - eps) * P);
    Int lo1 = ceil_rat((Rat(1, 2) + eps) * P), hi1 = floor_rat((1 - eps) * P);
    std::vector<long long> nums(d);
    for (int j = 0; j < d; ++j) nums[j] = to_ll(sa.num[j]);
    PeriodicSet out;
    out.period = P;
    out.pattern.assign((std::size_t)P, 0);
    for (long long n = 0; n < P; ++n) {
        std::uint64_t mask = 0;
        bool ok = true;
        for (int j = 0; j < d && ok; ++j) {
            // pos = n*num[j] mod P, via 128-bit product
            long long pos = (long long)(((__int128)n * nums[j]) % P);
            if (pos >= (long long)lo0 && pos <= (long long)hi0) {
                // zero cell
            } else if (pos >= (long long)lo1 && pos <= (long long)hi1) {
                mask |= 1ull << j;
            } else {
                ok = false;
            }
        }
        if (ok && cells.count(mask)) out.pattern[(std::size_t)n] = 1;
    }
    return out;
}

struct PipelineParams {
    int level = 0;
    int kp = 0, ball_k = 0, d = 0, r = 0;
};

std::optional<PipelineParams> pick_dimensions(int level, int max_d) {
    PipelineParams p;
    p.level = level;
    p.kp = std::max(0, (level - 1) / 2);
    p.ball_k = 2 * p.kp + 1;
    for (int d = 2 * p.kp + 5; d <= max_d; d += 2) {  // odd d only
        int r = d / 2 - p.kp;
        if (r < 2 || r % 2 != 0) continue;
        if (d / 2 - p.ball_k < 0) continue;
        if (binomial(d, r) > 500) continue;
        p.d = d;
        p.r = r;
        return p;
    }
    return std::nullopt;
}

// alpha with coordinates 1/(s R^j) for j = 1..d-1 and their sum as the last
// coordinate; the orbit over {a + t s} behaves like a base-R counter, so the
// copy targets are reachable with one-sided approximation errors.
TorusPoint structured_alpha(int d, long long R, const Int& s) {
    std::vector<Rat> c;
    Int p = 1;
    Rat sum = 0;
    for (int j = 0; j < d - 1; ++j) {
        p *= R;
        Rat a(Int(1), s * p);
        c.push_back(a);
        sum += a;
    }
    c.push_back(sum);
    return TorusPoint::reduce(c);
}

struct CoreBuildInput {
    int level;
    Rat delta;  // density level the piece must beat
    const Caps* caps;
    IntStream E;        // substream the copy vertices must come from
    Int quotient_m = 1;  // emitted set is (differences)/quotient_m
};

PieceOutcome build_core(const CoreBuildInput& in) {
    PieceOutcome out;
    const Caps& caps = *in.caps;
    auto params = pick_dimensions(in.level, caps.max_d);
    if (!params) {
        out.stage = "dimension-search";
        out.failure_reason =
            "no admissible odd dimension within max_d for level " +
            std::to_string(in.level);
        return out;
    }
    int d = params->d, r = params->r, ball_k = params->ball_k;

    auto A_f2 = enumerate_ball(bv_zero(d), d / 2 - ball_k);

    // stride of the substream (1 for the full integers)
    Int stride = 1;
    if (in.E.kind() == IntStream::Kind::Arith) stride = in.E.arith_step();

    // epsilon schedule, most promising (largest measure above delta) first
    std::vector<Rat> eps_candidates;
    for (int q : {8, 10, 12, 16, 20, 24, 32, 48, 64}) {
        Rat e(1, q);
        Rat mu((long long)A_f2.size());
        for (int i = 0; i < d; ++i) mu *= (Rat(1, 2) - 2 * e);
        if (mu > in.delta) eps_candidates.push_back(e);
    }
    if (eps_candidates.empty()) {
        out.stage = "measure-bound";
        out.failure_reason =
            "no epsilon gives |A|(1/2-2eps)^d > delta (dimension too small "
            "for this delta)";
        return out;
    }

    std::string last_fail = "no epsilon/denominator candidate succeeded";
    for (const Rat& eps : eps_candidates) {
        // smallest even R keeping the one-sided error bound r/(2(R-1)) < eps
        long long Rmin = to_ll(floor_rat(Rat(r) / (2 * eps))) + 2;
        if (Rmin % 2) ++Rmin;
        for (long long R = Rmin; R <= Rmin + 8; R += 2) {
            // construction must stay within the period cap
            Int period = stride;
            for (int j = 0; j < d - 1; ++j) period *= R;
            if (period > caps.max_period) {
                last_fail = "orbit period exceeds period cap";
                continue;
            }
            TorusPoint alpha = structured_alpha(d, R, stride);
            Scaled sc(alpha);

            // copy targets: indicator points of the r-subsets, biased by
            // half the tolerance so matched orbit errors are one-sided
            auto subsets = kneser_vertices(d, r);
            Rat sigma = eps / 2 - Rat(1, 2 * sc.P);
            std::vector<TorusPoint> targets;
            for (auto mask : subsets) {
                TorusPoint v = half_point({d, mask});
                for (auto& c : v.coords) c = frac_mod1(c + sigma);
                targets.push_back(std::move(v));
            }
            // cheap probe first: the structured alpha reaches its first
            // target within a few R steps, so a stream matching nothing
            // early will never match and the full scan can be skipped
            auto copy = copy_cayley_vertices(in.E, alpha, targets, eps,
                                             std::min<std::uint64_t>(
                                                 caps.horizon, 20000));
            if (!copy.g && copy.matched_count == 0) {
                last_fail = "copy stage: no target reached within the probe "
                            "horizon (stream orbit misses the grid)";
                continue;
            }
            if (!copy.g)
                copy = copy_cayley_vertices(in.E, alpha, targets, eps,
                                            caps.horizon);
            if (!copy.g) {
                last_fail = "copy stage: " + copy.failure_reason;
                continue;
            }
            const auto& g = *copy.g;

            // differences across Kneser edges; verified one by one in the
            // eps-copy set, and divisible by the quotient when requested
            CopySpec spec{alpha, ball_k, eps};
            std::vector<long long> S;
            bool good = true;
            for (std::size_t i = 0; i < subsets.size() && good; ++i)
                for (std::size_t j = i + 1; j < subsets.size() && good; ++j) {
                    if (subsets[i] & subsets[j]) continue;
                    Int diff = g[i] > g[j] ? g[i] - g[j] : g[j] - g[i];
                    if (diff == 0 || !tilde_h_member(diff, spec) ||
                        diff % in.quotient_m != 0) {
                        good = false;
                        break;
                    }
                    Int q = diff / in.quotient_m;
                    if (q > caps.max_m) {
                        good = false;
                        break;
                    }
                    S.push_back(to_ll(q));
                }
            if (!good) {
                last_fail = "difference verification failed at R = " +
                            std::to_string(R);
                continue;
            }
            std::sort(S.begin(), S.end());
            S.erase(std::unique(S.begin(), S.end()), S.end());
            if ((long long)S.size() > caps.max_set) {
                last_fail = "emitted set exceeds size cap";
                continue;
            }

            // dense periodic set avoiding S - S: preimage of the tiling
            // boxes under n -> n*(quotient_m*alpha)
            TorusPoint beta = alpha;
            if (in.quotient_m > 1)
                beta = scalar_mul(in.quotient_m, alpha);
            PeriodicSet A_per;
            try {
                A_per = square_preimage(beta, A_f2, eps, caps.max_period);
            } catch (const std::length_error&) {
                last_fail = "tiling preimage period exceeds cap";
                continue;
            }
            Rat dens = A_per.density();
            if (!(dens > in.delta)) {
                last_fail = "orbit density " + to_string(dens) +
                            " does not exceed delta";
                continue;
            }

            PieceCore core;
            core.level = in.level;
            core.d = d;
            core.kp = params->kp;
            core.ball_k = ball_k;
            core.R = R;
            core.eps = eps;
            core.alpha = beta;
            core.S = std::move(S);
            core.A_per = std::move(A_per);
            core.dens = dens;
            core.max_S = core.S.back();
            core.kneser_n = d;
            core.kneser_r = r;
            core.chi_lower = d - 2 * r + 2;
            core.kneser_subsets = subsets;
            if (in.quotient_m > 1) {
                Int gmin = *std::min_element(g.begin(), g.end());
                for (const auto& gi : g)
                    core.vertex_integers.push_back((gi - gmin) /
                                                   in.quotient_m);
            } else {
                core.vertex_integers = g;
            }
            out.core = std::move(core);
            return out;
        }
    }
    out.stage = "alpha-search";
    out.failure_reason = last_fail;
    return out;
}

// smallest m for which witness_from_set succeeds at this density level
std::optional<NonrecurrenceWitness> minimal_witness(
    const std::vector<long long>& S, const PeriodicSet& A, const Rat& delta,
    long long max_m, std::string* why) {
    Rat dens = A.density();
    if (!(dens > delta)) {
        if (why) *why = "density does not exceed delta";
        return std::nullopt;
    }
    long long k = *std::max_element(S.begin(), S.end());
    long long m = to_ll(floor_rat(Rat(2 * k) / (dens - delta))) + 1;
    for (int tries = 0; tries < 64 && m <= max_m; ++tries) {
        auto w = witness_from_set(S, A, delta, m);
        if (w.precondition_error) {
            if (why) *why = w.failure_reason;
            return std::nullopt;
        }
        if (w.witness) return std::move(w.witness);
        m += std::max<long long>(1, m / 64);
    }
    if (why) *why = "no admissible m within the size cap";
    return std::nullopt;
}

}  // namespace

PieceOutcome finite_piece(int k, const Rat& delta, const Caps& caps) {
    PieceOutcome out;
    if (k < 0 || delta <= 0 || delta >= Rat(1, 2)) {
        out.stage = "validation";
        out.failure_reason = "require k >= 0 and 0 < delta < 1/2";
        return out;
    }
    if (k == 0) {
        // 0-chromatic recurrence is vacuous: S = {1} with the even numbers
        // as the dense set avoiding S - S
        PieceCore core;
        core.level = 0;
        core.S = {1};
        core.A_per = PeriodicSet::residues(2, {0});
        core.dens = Rat(1, 2);
        core.max_S = 1;
        core.kneser_n = 2;
        core.kneser_r = 1;
        core.chi_lower = 2;
        core.kneser_subsets = {1, 2};
        core.vertex_integers = {Int(0), Int(1)};
        std::string why;
        auto w = minimal_witness(core.S, core.A_per, delta, caps.max_m, &why);
        if (!w) {
            out.stage = "witness";
            out.failure_reason = why;
            return out;
        }
        out.core = std::move(core);
        out.witness = std::move(*w);
        return out;
    }
    CoreBuildInput in{k, delta, &caps, IntStream::all(), 1};
    out = build_core(in);
    if (!out.core) return out;
    std::string why;
    auto w = minimal_witness(out.core->S, out.core->A_per, delta, caps.max_m,
                             &why);
    if (!w) {
        out.stage = "witness";
        out.failure_reason = why;
        out.core.reset();
        return out;
    }
    out.witness = std::move(*w);
    return out;
}

namespace {

// infinite substream of E whose elements are mutually congruent mod m
std::optional<IntStream> congruent_substream(const IntStream& E, long long m,
                                             std::uint64_t horizon,
                                             std::string* why) {
    switch (E.kind()) {
        case IntStream::Kind::All:
            return IntStream::arith(0, m);
        case IntStream::Kind::Arith: {
            Int s = E.arith_step();
            Int g = boost::multiprecision::gcd(s, Int(m));
            return IntStream::arith(E.arith_start(), s * (Int(m) / g));
        }
        case IntStream::Kind::Powers: {
            // residues of b^j mod m are eventually periodic
            if (m > 2'000'000) {
                if (why) *why = "modulus too large for residue cycle search";
                return std::nullopt;
            }
            Int b = E.power_base();
            std::map<Int, long long> seen;
            Int r = 1 % m;
            for (long long j = 0; j <= m + 1; ++j) {
                auto it = seen.find(r);
                if (it != seen.end()) {
                    long long j0 = it->second, period = j - j0;
                    Int a = 1, ratio = 1;
                    for (long long q = 0; q < j0; ++q) a *= b;
                    for (long long q = 0; q < period; ++q) ratio *= b;
                    return IntStream::geometric(a, ratio);
                }
                seen[r] = j;
                r = (r * b) % m;
            }
            if (why) *why = "no residue cycle found";
            return std::nullopt;
        }
        case IntStream::Kind::Geometric: {
            if (why) *why = "nested geometric extraction unsupported";
            return std::nullopt;
        }
        case IntStream::Kind::File: {
            std::map<Int, std::vector<Int>> buckets;
            std::uint64_t n = std::min<std::uint64_t>(horizon, E.list_size());
            for (std::uint64_t i = 0; i < n; ++i) {
                Int e = E.element(i);
                Int rr = e % m;
                if (rr < 0) rr += m;
                buckets[rr].push_back(e);
            }
            std::size_t best = 0;
            const std::vector<Int>* pick = nullptr;
            for (const auto& [res, v] : buckets)
                if (v.size() > best) {
                    best = v.size();
                    pick = &v;
                }
            if (!pick || pick->size() < 2) {
                if (why) *why = "no residue class with enough elements";
                return std::nullopt;
            }
            return IntStream::from_list(*pick);
        }
    }
    return std::nullopt;
}

}  // namespace

PieceOutcome piece_in_difference_set(int k, long long m, const Rat& delta,
                                     const IntStream& E, const Caps& caps) {
    PieceOutcome out;
    if (k < 1 || m < 1 || delta <= 0 || delta >= Rat(1, 2)) {
        out.stage = "validation";
        out.failure_reason = "require k >= 1, m >= 1, 0 < delta < 1/2";
        return out;
    }
    std::string why;
    auto sub = congruent_substream(E, m, caps.horizon, &why);
    if (!sub) {
        out.stage = "substream-extraction";
        out.failure_reason = why;
        return out;
    }
    CoreBuildInput in{k, delta, &caps, *sub, Int(m)};
    out = build_core(in);
    if (!out.core) return out;
    // membership probes: m*S must consist of differences of elements of E
    for (long long s : out.core->S)
        if (!E.is_difference(Int(s) * m)) {
            out.stage = "difference-membership";
            out.failure_reason =
                "emitted element " + std::to_string(s) +
                " times m is not a difference of stream elements";
            out.core.reset();
            return out;
        }
    auto w = minimal_witness(out.core->S, out.core->A_per, delta, caps.max_m,
                             &why);
    if (!w) {
        out.stage = "witness";
        out.failure_reason = why;
        out.core.reset();
        return out;
    }
    out.witness = std::move(*w);
    return out;
}

// ---------------------------------------------------------------------------
// main iteration
// ---------------------------------------------------------------------------

namespace {

struct RoundPlan {
    Rat delta_tilde, eta;
    long long l = 0;
};

// picks (delta_tilde, eta, l) for combining the current state (ratio =
// |C|/m) with a fresh piece (density dens, largest element max_S); the
// output level 2*delta_tilde*eta must exceed the target delta
std::optional<RoundPlan> plan_round(const Rat& delta, const Rat& ratio,
                                    const Rat& dens, long long max_S,
                                    long long cur_m, long long max_S_cur,
                                    long long max_m, std::string* why) {
    long long k2 = std::max(max_S_cur, cur_m * max_S);
    std::optional<RoundPlan> best;
    for (int q : {4, 8, 16, 32, 64, 128}) {
        Rat dt(1, q);
        if (!(dt < ratio)) continue;
        // eta balancing the combination threshold against the witness
        // threshold: l0 = C1/eta, m0 = C2/(dens - eta)
        Rat C1 = Rat(k2) / (Rat(cur_m) * (ratio - dt));
        Rat C2 = Rat(2 * max_S);
        Rat eta = C1 * dens / (C1 + C2);
        Rat eta_lo = delta / (2 * dt);  // need 2*dt*eta > delta
        if (!(eta > eta_lo)) eta = (eta_lo + dens) / 2;
        if (!(eta > eta_lo) || !(eta < dens) || !(eta < Rat(1, 2))) continue;
        Rat l0 = C1 / eta;
        Rat m0 = C2 / (dens - eta);
        long long l = to_ll(floor_rat(std::max(l0, m0))) + 1;
        if (Int(l) * cur_m > max_m) continue;
        if (!best || l < best->l) best = RoundPlan{dt, eta, l};
    }
    if (best) return best;
    if (why) {
        std::ostringstream os;
        os << "no (delta_tilde, eta) works: piece density " << to_string(dens)
           << " must exceed eta > delta/(2*delta_tilde) with delta = "
           << to_string(delta) << ", and l*m with l ~ max(S)/eta must stay "
           << "within the size cap " << max_m;
        *why = os.str();
    }
    return std::nullopt;
}

// smallest strict witness for S = {t}: either B = {0} with m = 2t+1, or a
// window of the periodic set [t-1] + 2t*Z (the even numbers when t = 1)
NonrecurrenceWitness base_witness(long long t, const Rat& delta,
                                  long long max_m) {
    if (Rat(1) > delta * (2 * t + 1))
        return NonrecurrenceWitness{{0}, 2 * t + 1, {t}, delta};
    std::vector<long long> rs;
    if (t == 1)
        rs = {0};
    else
        for (long long i = 0; i + 1 < t; ++i) rs.push_back(i);
    auto A = PeriodicSet::residues(2 * t, rs);
    std::string why;
    auto w = minimal_witness({t}, A, delta, max_m, &why);
    if (!w)
        throw std::invalid_argument("no base witness for S = {" +
                                    std::to_string(t) + "}: " + why);
    return *w;
}

IterateResult run_iteration(const Rat& delta, int K, const Caps& caps,
                            const IntStream* E) {
    if (!(delta > 0) || !(delta < Rat(1, 2)))
        throw std::invalid_argument("delta must lie in the open interval (0, 1/2)");
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    if (E && E->finite() && E->list_size() < 2)
        throw std::invalid_argument("E must be infinite (or a large list)");

    IterateResult res;
    res.requested_K = K;

    // base case: S = {t} with t = 1, or the smallest admissible t in E - E
    long long t = 1;
    if (E) {
        Rat bound = Rat(1) / (Rat(1, 2) - delta);
        t = to_ll(floor_rat(bound)) + 1;
        std::uint64_t guard = 0;
        while (!E->is_difference(Int(t))) {
            ++t;
            if (++guard > caps.horizon)
                throw std::invalid_argument(
                    "no element of E - E above the base threshold");
        }
    }
    res.S = {t};
    res.witness = base_witness(t, delta, caps.max_m);
    res.evidence = ChromaticEvidence{2, 1, 2, {Int(0), Int(t)}};
    res.log.push_back("round 1: S = {" + std::to_string(t) + "}, |C| = " +
                      std::to_string(res.witness.B.size()) + ", m = " +
                      std::to_string(res.witness.m));
    res.rounds_completed = 1;

    for (int round = 2; round <= K; ++round) {
        auto fail = [&](const std::string& why) {
            res.degraded = true;
            res.degradation_reason =
                "round " + std::to_string(round) + ": " + why;
            res.log.push_back(res.degradation_reason +
                              " (returning the last certified state)");
            return res;
        };
        long long cur_m = res.witness.m;
        Rat ratio((long long)res.witness.B.size(), cur_m);
        if (!(ratio > delta)) return fail("state density fell to delta");

        // the combination needs piece density above eta > delta/(2*dt) for
        // some admissible dt, so demand that much from the piece builder
        Rat dt_max;
        for (int q : {4, 8, 16, 32, 64, 128})
            if (Rat(1, q) < ratio) {
                dt_max = Rat(1, q);
                break;
            }
        if (dt_max == 0) return fail("state ratio too small for any delta_tilde");

        // escalate the density demanded of the piece until a plan fits: a
        // piece barely above delta/(2*dt) forces l (hence m) past the cap
        PieceOutcome piece;
        std::optional<RoundPlan> plan;
        std::string why = "no piece candidate";
        for (int headroom : {1, 2, 4, 8, 16}) {
            Rat delta_piece =
                std::max(delta, Rat(headroom * delta / (2 * dt_max)));
            if (!(delta_piece < Rat(1, 2))) break;
            PieceOutcome p;
            if (!E) {
                CoreBuildInput in{round, delta_piece, &caps, IntStream::all(),
                                  1};
                p = build_core(in);
            } else {
                p = piece_in_difference_set(round, cur_m, delta_piece, *E,
                                            caps);
            }
            if (!p.core) {
                why = "piece construction failed at stage " + p.stage + ": " +
                      p.failure_reason;
                continue;
            }
            auto pl = plan_round(delta, ratio, p.core->dens, p.core->max_S,
                                 cur_m, res.S.back(), caps.max_m, &why);
            if (!pl) continue;
            piece = std::move(p);
            plan = pl;
            break;
        }
        if (!plan) return fail(why);
        const PieceCore& core = *piece.core;

        auto wf = witness_from_set(core.S, core.A_per, plan->eta, plan->l);
        for (int bump = 0; !wf.witness && !wf.precondition_error && bump < 32;
             ++bump) {
            plan->l += std::max<long long>(1, plan->l / 128);
            if (Int(plan->l) * cur_m > caps.max_m) break;
            wf = witness_from_set(core.S, core.A_per, plan->eta, plan->l);
        }
        if (!wf.witness)
            return fail("piece witness failed: " + wf.failure_reason);

        NonrecurrenceWitness state = res.witness;
        state.delta = plan->delta_tilde;  // |C| > delta_tilde * m re-checked
        if (!(Rat((long long)state.B.size()) > state.delta * state.m))
            return fail("delta_tilde choice inconsistent with state");
        auto combined =
            two_pieces(state, wf.witness->B, plan->l, core.S, plan->eta,
                       *std::min_element(res.S.begin(), res.S.end()),
                       *std::min_element(core.S.begin(), core.S.end()));
        if (!combined.witness)
            return fail("two-pieces combination failed: " +
                        combined.failure_reason);

        std::vector<long long> S_next = res.S;
        for (long long s : core.S) S_next.push_back(cur_m * s);
        std::sort(S_next.begin(), S_next.end());
        S_next.erase(std::unique(S_next.begin(), S_next.end()), S_next.end());
        if ((long long)S_next.size() > caps.max_set)
            return fail("set size cap exceeded");
        if (S_next != combined.witness->S)
            return fail("combined connection set mismatch");
        if (!(combined.witness->delta > delta))
            return fail("combined level 2*delta_tilde*eta does not exceed delta");

        // monotonicity: the previous dense set survives the translation
        for (long long c : res.witness.B)
            if (!sorted_contains(combined.witness->B, c))
                return fail("monotonicity C_k subset C_{k+1} violated");

        res.S = std::move(S_next);
        res.witness = std::move(*combined.witness);
        res.witness.delta = delta;  // certified level requested by the caller
        ChromaticEvidence ev;
        ev.kneser_n = core.kneser_n;
        ev.kneser_r = core.kneser_r;
        ev.chi_lower = core.chi_lower;
        for (const auto& gi : core.vertex_integers)
            ev.vertex_integers.push_back(gi * cur_m);
        res.evidence = std::move(ev);
        res.rounds_completed = round;
        std::ostringstream os;
        os << "round " << round << ": d = " << core.d << ", eps = "
           << to_string(core.eps) << ", R = " << core.R
           << ", eta = " << to_string(plan->eta)
           << ", delta_tilde = " << to_string(plan->delta_tilde)
           << ", l = " << plan->l << ", m = " << res.witness.m
           << ", |C| = " << res.witness.B.size()
           << ", |S| = " << res.S.size();
        res.log.push_back(os.str());
    }
    return res;
}

}  // namespace

IterateResult iterate(const Rat& delta, int K, const Caps& caps) {
    return run_iteration(delta, K, caps, nullptr);
}

IterateResult iterate_in_difference_set(const Rat& delta, int K,
                                        const IntStream& E, const Caps& caps) {
    return run_iteration(delta, K, caps, &E);
}

}  // namespace recforge

#include "recforge/verify.hpp"

#include <algorithm>
#include <bit>

#include "recforge/estream.hpp"

namespace recforge {

namespace {

bool in_sorted(const std::vector<Int>& v, const Int& x) {
    return std::binary_search(v.begin(), v.end(), x);
}

}  // namespace

VerifyReport verify_certificate(const Certificate& c) {
    VerifyReport rep;
    auto check = [&](const std::string& name, bool ok,
                     const std::string& detail = "") {
        rep.checks.push_back({name, ok, ok ? "" : detail});
    };

    std::vector<Int> S = c.S, B = c.B;
    std::sort(S.begin(), S.end());
    std::sort(B.begin(), B.end());

    // the witness must certify exactly the published set
    {
        std::vector<Int> ws = c.witness_S;
        std::sort(ws.begin(), ws.end());
        check("witness-sets-match", ws == S && !S.empty(),
              "witness_S differs from S (or S is empty)");
    }

    bool s_positive = !S.empty() && S.front() > 0;
    check("witness-positive", s_positive, "S must contain positive integers");

    {
        bool ok = c.m > 0 && !B.empty() &&
                  Int((long long)B.size()) * boost::multiprecision::denominator(c.witness_delta) >
                      boost::multiprecision::numerator(c.witness_delta) * c.m &&
                  c.witness_delta >= c.delta;
        check("witness-density", ok,
              "|B| must exceed witness_delta*m and witness_delta >= delta");
    }

    {
        bool ok = s_positive && !B.empty() && B.front() >= 0;
        if (ok) {
            Int k = S.back();
            ok = B.back() + 2 * k < c.m;
        }
        check("witness-range", ok, "B + S + S must stay inside [m]");
    }

    {
        bool ok = std::adjacent_find(B.begin(), B.end()) == B.end();
        for (std::size_t i = 0; ok && i < B.size(); ++i)
            for (const auto& s : S)
                if (in_sorted(B, B[i] + s)) {
                    ok = false;
                    break;
                }
        check("witness-disjoint", ok, "B meets B + S");
    }

    // chromatic evidence: a graph homomorphism KG(n,r) -> Cay(Z, S)
    int n = c.kneser_n, r = c.kneser_r;
    bool shape_ok = n >= 2 && r >= 1 && 2 * r <= n && n <= 24 &&
                    c.chi_lower == n - 2 * r + 2 && c.chi_lower > c.K;
    check("chromatic-bound", shape_ok,
          "need 1 <= r, 2r <= n <= 24, chi_lower = n-2r+2 > K");

    if (shape_ok) {
        // r-subsets of [n] in increasing mask order, enumerated from scratch
        std::vector<std::uint64_t> masks;
        for (std::uint64_t m = 0; m < (1ull << n); ++m)
            if (std::popcount(m) == r) masks.push_back(m);
        bool inj = masks.size() == c.vertex_integers.size();
        if (inj) {
            std::vector<Int> v = c.vertex_integers;
            std::sort(v.begin(), v.end());
            inj = std::adjacent_find(v.begin(), v.end()) == v.end();
        }
        check("embedding-injective", inj,
              "vertex list has wrong size or repeats");
        bool edges = inj;
        for (std::size_t i = 0; edges && i < masks.size(); ++i)
            for (std::size_t j = i + 1; j < masks.size(); ++j) {
                if (masks[i] & masks[j]) continue;  // not a Kneser edge
                Int d = c.vertex_integers[i] - c.vertex_integers[j];
                if (d < 0) d = -d;
                if (!in_sorted(S, d)) {
                    edges = false;
                    break;
                }
            }
        check("embedding-edges", edges,
              "some Kneser edge maps to a difference outside S");
    } else {
        check("embedding-injective", false, "skipped: bad evidence shape");
        check("embedding-edges", false, "skipped: bad evidence shape");
    }

    if (!c.e_spec.empty()) {
        auto E = IntStream::parse(c.e_spec);
        bool ok = E.has_value();
        if (ok)
            for (const auto& s : S)
                if (!E->is_difference(s)) {
                    ok = false;
                    break;
                }
        check("difference-set-membership", ok,
              "some element of S is not a difference of elements of E");
    }

    rep.all_passed = std::all_of(rep.checks.begin(), rep.checks.end(),
                                 [](const CheckResult& c) { return c.passed; });
    return rep;
}

}  // namespace recforge

#include <doctest.h>

#include <algorithm>
#include <recforge/assembly.hpp>
#include <set>

using namespace recforge;

namespace {

// Independent witness checker: nested loops only, no library calls.
bool witness_holds(const NonrecurrenceWitness& w) {
    if (!(Rat((long long)w.B.size()) > w.delta * w.m)) return false;
    std::set<long long> inB(w.B.begin(), w.B.end());
    for (long long b : w.B)
        for (long long s : w.S) {
            if (b + s < 0 || b + s >= w.m) return false;
            if (inB.count(b + s)) return false;
            for (long long s2 : w.S)
                if (b + s + s2 < 0 || b + s + s2 >= w.m) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("periodic sets") {
    PeriodicSet evens = PeriodicSet::residues(2, {0});
    CHECK(evens.contains(0));
    CHECK(evens.contains(-4));
    CHECK(!evens.contains(7));
    CHECK(evens.density() == Rat(1, 2));
    PeriodicSet thirds = PeriodicSet::residues(3, {0});
    CHECK(thirds.density() == Rat(1, 3));
}

TEST_CASE("best window counts") {
    CHECK(best_window(PeriodicSet::residues(2, {0}), 5).second == 3);
    CHECK(best_window(PeriodicSet::residues(1, {0}), 7).second == 7);
    CHECK(best_window(PeriodicSet::residues(3, {0}), 3).second == 1);
}

TEST_CASE("witness_from_set on evens") {
    PeriodicSet evens = PeriodicSet::residues(2, {0});
    auto out = witness_from_set({1}, evens, Rat(2, 5), 20);
    REQUIRE(out.witness.has_value());
    const auto& w = *out.witness;
    CHECK(w.B == std::vector<long long>{0, 2, 4, 6, 8, 10, 12, 14, 16});
    CHECK(w.m == 20);
    CHECK(witness_holds(w));

    auto small = witness_from_set({1}, evens, Rat(2, 5), 4);
    CHECK(!small.witness.has_value());
    CHECK(!small.precondition_error);  // search failure, not caller bug

    auto bad = witness_from_set({2}, evens, Rat(2, 5), 20);
    CHECK(!bad.witness.has_value());
    CHECK(bad.precondition_error);  // 2 is a difference of evens
}

TEST_CASE("two_pieces rejects l below the threshold") {
    NonrecurrenceWitness w_E{{0}, 3, {1}, Rat(1, 4)};
    auto out = two_pieces(w_E, {0}, 3, {1}, Rat(1, 4), 1, 1);
    CHECK(!out.witness.has_value());
    CHECK(out.is_error);
    // k = max({1} u 3*{1}) = 3, delta' = 1/3: l0 = 3 / ((1/4)*3*(1/12)) = 48
    CHECK(out.l0 == 48);
}

TEST_CASE("two_pieces combination verified by brute force") {
    NonrecurrenceWitness w_E{{0, 2, 4}, 7, {1}, Rat(1, 3)};
    std::vector<long long> B;
    for (long long b = 0; b <= 30; b += 2) B.push_back(b);
    long long l = 33;
    auto out = two_pieces(w_E, B, l, {1}, Rat(1, 3), 1, 1);
    REQUIRE(out.witness.has_value());
    const auto& w = *out.witness;
    CHECK(w.m == 231);
    CHECK(w.S == std::vector<long long>{1, 7});
    CHECK(w.delta == Rat(2, 9));
    CHECK(witness_holds(w));
    // the witness contains the inner piece and decomposes uniquely
    for (long long a : w_E.B) CHECK(std::count(w.B.begin(), w.B.end(), a) == 1);
    for (long long c : w.B)
        CHECK(decomposition_count(c + out.t1, w_E.B, B, 7, 1, 1) == 1);
}

TEST_CASE("decomposition counting") {
    // values a + q*e0 + m*(b + q*f0) over A={0}, B={0}, m=3, e0=f0=1
    CHECK(decomposition_count(0, {0}, {0}, 3, 1, 1) == 1);  // q=0
    CHECK(decomposition_count(4, {0}, {0}, 3, 1, 1) == 1);  // q=1
    CHECK(decomposition_count(2, {0}, {0}, 3, 1, 1) == 0);
}

TEST_CASE("dilate and quotient") {
    CHECK(dilate({1, 2}, 3) == std::vector<long long>{3, 6});
    CHECK(dilate({}, 5).empty());
    CHECK(dilate({1, 2}, 1) == std::vector<long long>{1, 2});
    CHECK(quotient({3, 6, 7}, 3) == std::vector<long long>{1, 2});
    CHECK(quotient({5}, 2).empty());
    for (long long m : {1, 2, 5}) {
        std::vector<long long> S = {2, 9, 14};
        CHECK(quotient(dilate(S, m), m) == S);
    }
}

TEST_CASE("finite piece for k=0 takes the trivial shortcut") {
    Caps caps;
    auto out = finite_piece(0, Rat(1, 4), caps);
    REQUIRE(out.witness.has_value());
    CHECK(out.core->S == std::vector<long long>{1});
    CHECK(witness_holds(*out.witness));
}

TEST_CASE("finite piece pipeline at k=1") {
    Caps caps;
    auto out = finite_piece(1, Rat(1, 64), caps);
    REQUIRE(out.core.has_value());
    REQUIRE(out.witness.has_value());
    const auto& core = *out.core;
    CHECK(core.level == 1);
    CHECK(core.kneser_n == 5);
    CHECK(core.kneser_r == 2);
    CHECK(core.chi_lower == 3);
    CHECK(core.vertex_integers.size() == 10);
    CHECK(witness_holds(*out.witness));
    CHECK(out.witness->delta >= Rat(1, 64));
    // S is the set of vertex differences that realize Kneser edges; every
    // element must separate at least one disjoint subset pair
    CHECK(!core.S.empty());
    CHECK(core.max_S == core.S.back());
    // (A - A) avoids S over one full period: recheck directly
    const auto& A = core.A_per;
    for (long long i = 0; i < A.period; ++i) {
        if (!A.pattern[i]) continue;
        for (long long j = 0; j < A.period; ++j) {
            if (!A.pattern[j]) continue;
            long long diff = (i - j) % A.period;
            if (diff < 0) diff += A.period;
            for (long long s : core.S)
                CHECK(s % A.period != diff);
        }
    }
}

TEST_CASE("iterate base case") {
    Caps caps;
    auto r = iterate(Rat(1, 4), 1, caps);
    CHECK(!r.degraded);
    CHECK(r.rounds_completed == 1);
    CHECK(r.S == std::vector<long long>{1});
    CHECK(witness_holds(r.witness));
    CHECK(r.witness.delta == Rat(1, 4));
}

TEST_CASE("difference-set base case honors the minimum-gap bound") {
    Caps caps;
    auto r = iterate_in_difference_set(Rat(1, 4), 1, IntStream::arith(0, 3),
                                       caps);
    CHECK(!r.degraded);
    // t must lie in E - E and exceed (1/2 - delta)^{-1} = 4: t = 6
    CHECK(r.S == std::vector<long long>{6});
    CHECK(witness_holds(r.witness));
}

TEST_CASE("stream difference membership") {
    IntStream pw = IntStream::powers(2);
    CHECK(pw.is_difference(3));    // 4 - 1
    CHECK(pw.is_difference(0));
    CHECK(!pw.is_difference(5));
    IntStream ar = IntStream::arith(1, 3);
    CHECK(ar.is_difference(6));
    CHECK(!ar.is_difference(5));
}

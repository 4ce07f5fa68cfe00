#include <doctest.h>

#include <algorithm>
#include <recforge/f2.hpp>
#include <set>

using namespace recforge;

namespace {

std::set<std::uint64_t> bits_of(const std::vector<BitVector>& vs) {
    std::set<std::uint64_t> out;
    for (const auto& v : vs) out.insert(v.bits);
    return out;
}

}  // namespace

TEST_CASE("hamming weight") {
    CHECK(hamming_weight({4, 0}) == 0);
    CHECK(hamming_weight(bv_ones(4)) == 4);
    CHECK(hamming_weight({10, 0b1010010001}) == 4);
}

TEST_CASE("enumerate_ball cardinalities") {
    CHECK(enumerate_ball(BitVector{3, 0b111}, 0).size() == 1);   // radius 0
    CHECK(enumerate_ball(bv_zero(3), 3).size() == 8);            // full space
    CHECK(enumerate_ball(bv_zero(10), 4).size() == 386);         // 1+10+45+120+210
    CHECK(ball_cardinality(10, 4) == 386);
    for (int d = 1; d <= 12; ++d)
        for (int r = 0; r <= d; ++r)
            CHECK(Int(enumerate_ball(bv_zero(d), r).size()) ==
                  ball_cardinality(d, r));
}

TEST_CASE("enumerate_ball membership is exact") {
    auto ball = enumerate_ball(bv_ones(6), 2);
    for (const auto& x : ball) CHECK(hamming_weight(bv_add(x, bv_ones(6))) <= 2);
    auto in = bits_of(ball);
    for (std::uint64_t b = 0; b < 64; ++b)
        CHECK(in.count(b) == (hamming_weight(bv_add({6, b}, bv_ones(6))) <= 2));
}

TEST_CASE("ball difference identity H_k - H_k = H_2k") {
    auto diff = ball_difference({5, 1, bv_zero(5)}, {5, 1, bv_zero(5)});
    CHECK(diff.size() == 16);  // 1+5+10
    CHECK(bits_of(diff) == bits_of(enumerate_ball(bv_zero(5), 2)));
    for (int d = 1; d <= 12; ++d)
        for (int k = 0; 2 * k <= d; ++k) {
            auto lhs = ball_difference({d, k, bv_zero(d)}, {d, k, bv_zero(d)});
            CHECK(bits_of(lhs) == bits_of(enumerate_ball(bv_zero(d), 2 * k)));
        }
}

TEST_CASE("balls around 0 and 1 are disjoint iff k + r < d") {
    for (int d = 1; d <= 12; ++d)
        for (int k = 0; k <= d; ++k)
            for (int r = 0; r <= d; ++r) {
                auto a = bits_of(enumerate_ball(bv_zero(d), k));
                auto b = bits_of(enumerate_ball(bv_ones(d), r));
                bool meets = false;
                for (auto x : a)
                    if (b.count(x)) meets = true;
                CHECK(meets == (k + r >= d));
            }
}

TEST_CASE("f2 nonrecurrence witness at d=10, k=1") {
    auto res = f2_nonrecurrence_witness(10, 1, Rat(1, 3));
    REQUIRE(res.witness.has_value());
    const auto& w = *res.witness;
    CHECK(w.radius == 4);
    CHECK(w.cardinality == 386);
    CHECK(w.density == Rat(386, 1024));
    // exhaustive: (A - A) avoids H_1(all-ones)
    auto forbidden = bits_of(enumerate_ball(bv_ones(10), 1));
    for (const auto& a : w.A)
        for (const auto& b : w.A)
            CHECK(!forbidden.count(bv_add(a, b).bits));
}

TEST_CASE("f2 witness fails on density and on degenerate geometry") {
    auto low = f2_nonrecurrence_witness(4, 1, Rat(45, 100));
    CHECK(!low.witness.has_value());  // |H_1| = 5 <= 7.2
    CHECK(!low.failure_reason.empty());

    // d=2, k=0: ball radius 1 but 2r + k >= d, so the disjointness guarantee
    // collapses; must fail rather than emit a bogus witness
    auto degen = f2_nonrecurrence_witness(2, 0, Rat(49, 100));
    CHECK(!degen.witness.has_value());
}

TEST_CASE("set_sum deduplicates") {
    std::vector<BitVector> a = {{3, 0b001}, {3, 0b010}};
    std::vector<BitVector> b = {{3, 0b001}, {3, 0b011}};
    auto s = set_sum(a, b);
    CHECK(bits_of(s) == std::set<std::uint64_t>{0b000, 0b010, 0b011, 0b001});
}

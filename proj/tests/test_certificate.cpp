#include <doctest.h>

#include <recforge/certificate.hpp>
#include <recforge/verify.hpp>

using namespace recforge;

namespace {

Certificate sample() {
    Caps caps;
    auto r = iterate(Rat(1, 4), 1, caps);
    REQUIRE(!r.degraded);
    return make_certificate(r, "");
}

bool verifies(const Certificate& c) { return verify_certificate(c).all_passed; }

}  // namespace

TEST_CASE("certificate json round trip is byte stable") {
    Certificate c = sample();
    std::string one = certificate_to_json(c);
    std::string err;
    auto back = certificate_from_json(one, &err);
    REQUIRE(back.has_value());
    CHECK(certificate_to_json(*back) == one);
    CHECK(back->S == c.S);
    CHECK(back->delta == c.delta);
    CHECK(back->K == c.K);
    CHECK(back->B == c.B);
    CHECK(back->m == c.m);
    CHECK(back->vertex_integers == c.vertex_integers);
}

TEST_CASE("parser accepts a wrapping document and rejects garbage") {
    Certificate c = sample();
    std::string doc = "{\"certificate\": " + certificate_to_json(c) +
                      ", \"checks\": []}";
    std::string err;
    CHECK(certificate_from_json(doc, &err).has_value());

    CHECK(!certificate_from_json("", &err).has_value());
    CHECK(!certificate_from_json("{]", &err).has_value());
    CHECK(!err.empty());
    CHECK(!certificate_from_json("{\"S\": [\"oops\"]}", &err).has_value());
}

TEST_CASE("verifier passes the genuine certificate") {
    Certificate c = sample();
    auto rep = verify_certificate(c);
    CHECK(rep.all_passed);
    for (const auto& chk : rep.checks) CHECK(chk.passed);
}

TEST_CASE("verifier rejects single-field mutations") {
    Certificate base = sample();
    REQUIRE(verifies(base));

    Certificate c = base;
    c.delta = Rat(499, 1000);  // claim stronger nonrecurrence than witnessed
    CHECK(!verifies(c));

    c = base;
    c.m += 1;  // breaks the density comparison
    CHECK(!verifies(c));

    c = base;
    c.B.push_back(c.B.back() + 1);  // meets B + S
    CHECK(!verifies(c));

    c = base;
    c.witness_S[0] += 1;  // witness no longer covers the claimed S
    CHECK(!verifies(c));

    c = base;
    c.chi_lower += 1;  // no longer matches n - 2r + 2
    CHECK(!verifies(c));

    c = base;
    c.kneser_n += 2;  // vertex list has the wrong cardinality now
    CHECK(!verifies(c));

    c = base;
    if (!c.vertex_integers.empty() && c.vertex_integers.size() > 1) {
        c.vertex_integers[1] = c.vertex_integers[0];  // not injective
        CHECK(!verifies(c));
    }

    c = base;
    c.e_spec = "arith:0,3";  // S = {1} is not a difference of multiples of 3
    CHECK(!verifies(c));
}

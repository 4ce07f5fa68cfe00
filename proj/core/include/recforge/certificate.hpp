#pragma once
// Self-contained certificate document: the set S, the chromatic lower-bound
// evidence (an embedded Kneser copy given by one integer per vertex), and
// the finite nonrecurrence witness. Serialization is deterministic: sorted
// keys, exact integers and rationals as strings, no timing data.
#include <optional>
#include <string>
#include <vector>

#include "recforge/assembly.hpp"
#include "recforge/numeric.hpp"

namespace recforge {

struct Certificate {
    std::string schema_version = "1";
    std::vector<Int> S;
    Rat delta;            // certified nonrecurrence level
    int K = 0;            // certified chromatic recurrence level
    int requested_K = 0;
    bool degraded = false;
    std::string degradation_reason;
    std::string e_spec;   // ambient-set grammar string; empty when S is free

    // chi(Cay(S)) >= chi(KG(n,r)) = n - 2r + 2 > K via the vertex map
    // i-th r-subset of [n] (increasing mask order) -> vertex_integers[i]
    int kneser_n = 0, kneser_r = 0, chi_lower = 0;
    std::vector<Int> vertex_integers;

    // (B, m) witnessing witness_delta-nonrecurrence of witness_S
    std::vector<Int> B;
    Int m = 0;
    std::vector<Int> witness_S;
    Rat witness_delta;

    std::vector<std::string> construction_log;
};

Certificate make_certificate(const IterateResult& r, const std::string& e_spec);

// deterministic JSON for the certificate subtree
std::string certificate_to_json(const Certificate& c);
// parses either a bare certificate object or a {"certificate": ..., } document
std::optional<Certificate> certificate_from_json(const std::string& text,
                                                 std::string* error);

}  // namespace recforge

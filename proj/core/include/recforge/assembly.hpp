#pragma once
// Integer-side witness algebra and the iterative construction of sets that
// are chromatically recurrent but not density recurrent: witness extraction
// from periodic sets, the two-pieces combination, dilation/quotient, the
// finite-piece pipeline, and the main iteration loops.
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "recforge/estream.hpp"
#include "recforge/numeric.hpp"
#include "recforge/torus.hpp"

namespace recforge {

// {n : (n - offset) mod period in pattern}, optionally cut to n >= 0.
struct PeriodicSet {
    long long period = 1;
    std::vector<char> pattern;  // size == period
    long long offset = 0;
    bool halfline = false;

    bool contains(long long n) const;
    long long pattern_count() const;
    Rat density() const;  // exact |pattern| / period

    static PeriodicSet residues(long long period,
                                std::vector<long long> residues);
};

// (B, m) witnessing the delta-nonrecurrence of S:
//   |B| > delta*m, B+S and B+S+S inside [m] = {0..m-1}, B disjoint from B+S.
struct NonrecurrenceWitness {
    std::vector<long long> B;
    long long m = 0;
    std::vector<long long> S;
    Rat delta;
};

struct Caps {
    long long max_m = 10'000'000;
    long long max_set = 10'000;
    int max_d = 12;
    std::uint64_t horizon = 2'000'000;
    std::uint64_t node_budget = 10'000'000;
    long long max_period = 5'000'000;
};

// t in [0, period) maximizing |A intersect ([m]+t)|; count >= density*m.
std::pair<long long, long long> best_window(const PeriodicSet& A, long long m);

struct WitnessOutcome {
    std::optional<NonrecurrenceWitness> witness;
    std::string failure_reason;   // set on failure (m too small, low density)
    bool precondition_error = false;  // (A-A) meets S: caller bug, not search
};

// B = (A - t) intersect [m - 2 max(S)] for the best window t.
WitnessOutcome witness_from_set(const std::vector<long long>& S,
                                const PeriodicSet& A, const Rat& delta,
                                long long m);

struct TwoPiecesOutcome {
    std::optional<NonrecurrenceWitness> witness;  // for (C, l*m, E u mF, 2*delta*eta)
    std::string failure_reason;
    bool is_error = false;  // precondition violation rather than search failure
    Rat l0;                 // threshold reported when l <= l0
    long long t1 = 0;       // final translation applied
};

// Combines (A,m) witnessing delta-nonrecurrence of E with (B,l) witnessing
// eta-nonrecurrence of F into a witness for E u mF at level 2*delta*eta.
TwoPiecesOutcome two_pieces(const NonrecurrenceWitness& w_E,
                            const std::vector<long long>& B, long long l,
                            const std::vector<long long>& F, const Rat& eta,
                            long long e0, long long f0);

// Number of (a,b,q) decompositions a + q*e0 + m*(b + q*f0) = value; the
// two-pieces construction makes this exactly 1 for every element it emits.
long long decomposition_count(long long value, const std::vector<long long>& A,
                              const std::vector<long long>& B, long long m,
                              long long e0, long long f0);

std::vector<long long> dilate(const std::vector<long long>& S, long long m);
std::vector<long long> quotient(const std::vector<long long>& S, long long m);

// Everything a pipeline run produces besides the witness: the set, the
// periodic high-density set avoiding its differences, and the embedded
// Kneser vertex data backing the chromatic lower bound.
struct PieceCore {
    int level = 0;  // guaranteed chi(Cay(S)) > level
    int d = 0, kp = 0, ball_k = 0;
    long long R = 0;
    Rat eps;
    TorusPoint alpha;       // orbit direction used for the integer copy
    std::vector<long long> S;
    PeriodicSet A_per;      // dense periodic set with (A-A) disjoint from S
    Rat dens;               // exact density of A_per
    long long max_S = 0;
    int kneser_n = 0, kneser_r = 0, chi_lower = 0;
    std::vector<std::uint64_t> kneser_subsets;
    std::vector<Int> vertex_integers;  // embedded copy: one integer per vertex
};

struct PieceOutcome {
    std::optional<PieceCore> core;
    std::optional<NonrecurrenceWitness> witness;
    std::string failure_reason;
    std::string stage;  // pipeline stage that failed
};

// S subset of the eps-copy set with chi(Cay(S)) > k and a (B,m) witness of
// delta-nonrecurrence. E restricts the ambient integers (default: all).
PieceOutcome finite_piece(int k, const Rat& delta, const Caps& caps);

// Same, with mS inside E-E: extracts a congruent-mod-m substream of E,
// builds the piece there, and divides by m.
PieceOutcome piece_in_difference_set(int k, long long m, const Rat& delta,
                                     const IntStream& E, const Caps& caps);

struct ChromaticEvidence {
    int kneser_n = 0, kneser_r = 0;
    int chi_lower = 0;  // n - 2r + 2
    std::vector<Int> vertex_integers;
};

struct IterateResult {
    std::vector<long long> S;
    NonrecurrenceWitness witness;  // (C_K, m_K) at level delta
    ChromaticEvidence evidence;    // chi(Cay(S)) > rounds_completed
    int rounds_completed = 0;
    int requested_K = 0;
    bool degraded = false;
    std::string degradation_reason;
    std::vector<std::string> log;
};

IterateResult iterate(const Rat& delta, int K, const Caps& caps);
IterateResult iterate_in_difference_set(const Rat& delta, int K,
                                        const IntStream& E, const Caps& caps);

}  // namespace recforge

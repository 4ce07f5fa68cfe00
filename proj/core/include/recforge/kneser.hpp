#pragma once
// Embedding of the Kneser graph KG(d, floor(d/2)-k) into the Cayley graph
// on F_2^d whose connection set is the Hamming ball of radius 2k+1 around
// the all-ones vector: each r-subset C maps to its indicator vector 1_C.
#include <vector>

#include "recforge/graph.hpp"

namespace recforge {

struct KneserEmbedding {
    int d = 0;
    int k = 0;
    int r = 0;                           // floor(d/2) - k
    std::vector<std::uint64_t> subsets;  // r-subsets of {1..d} as bitmasks
    std::vector<BitVector> images;       // 1_C per subset, same order
    bool verified = false;  // every disjoint pair's difference lies in
                            // H_{2k+1}(all-ones), checked exhaustively
};

KneserEmbedding kneser_embedding_into_hamming_cayley(int d, int k);

// True iff `map` (sub vertex index -> host vertex index) is injective and
// carries every edge of `sub` to an edge of `host`.
bool verify_embedding(const Graph& host, const Graph& sub,
                      const std::vector<int>& map);

}  // namespace recforge

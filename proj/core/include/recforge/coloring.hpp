#pragma once
// Exact chromatic number via DSATUR branch and bound, with certificates a
// third party can replay: a proper coloring for the upper bound and a
// clique (or exhaustion proof marker) for the lower bound.
#include <cstdint>
#include <optional>
#include <vector>

#include "recforge/graph.hpp"

namespace recforge {

struct ColoringResult {
    int chromatic_number = 0;       // best known upper bound
    bool exact = false;             // lower == upper, proven
    std::vector<int> coloring;      // proper coloring with chromatic_number colors
    std::vector<int> clique;        // vertices of a clique giving the lower bound
    int lower_bound = 0;
    std::uint64_t nodes_explored = 0;
};

// Exhaustive search with a node budget; when the budget is exhausted the
// result carries exact=false together with the best bounds found.
ColoringResult chromatic_number_exact(const Graph& g,
                                      std::uint64_t node_budget = 10'000'000);

bool is_proper_coloring(const Graph& g, const std::vector<int>& coloring);

// Greedy maximal clique by descending degree; used for the initial bound.
std::vector<int> greedy_clique(const Graph& g);

}  // namespace recforge

#pragma once
// Simple undirected graphs with bitset adjacency, plus the specific
// families this project needs: Kneser graphs and Cayley graphs of integer
// difference sets.
#include <cstdint>
#include <string>
#include <vector>

#include "recforge/f2.hpp"

namespace recforge {

class Graph {
  public:
    explicit Graph(int n = 0) : n_(n), words_((n + 63) / 64), adj_(std::size_t(n) * words_, 0) {}

    int size() const { return n_; }

    void add_edge(int u, int v) {
        if (u == v) return;
        adj_[std::size_t(u) * words_ + v / 64] |= 1ull << (v % 64);
        adj_[std::size_t(v) * words_ + u / 64] |= 1ull << (u % 64);
    }
    bool has_edge(int u, int v) const {
        return (adj_[std::size_t(u) * words_ + v / 64] >> (v % 64)) & 1;
    }
    const std::uint64_t* row(int u) const { return &adj_[std::size_t(u) * words_]; }
    int words() const { return words_; }

    long long edge_count() const {
        long long c = 0;
        for (auto w : adj_) c += __builtin_popcountll(w);
        return c / 2;
    }
    int degree(int u) const {
        int c = 0;
        for (int w = 0; w < words_; ++w)
            c += __builtin_popcountll(adj_[std::size_t(u) * words_ + w]);
        return c;
    }

    std::vector<std::string> labels;  // optional vertex labels

  private:
    int n_;
    int words_;
    std::vector<std::uint64_t> adj_;
};

// Kneser graph KG(n,r): vertices are r-subsets of {1..n}, edges join
// disjoint subsets. Vertex i corresponds to the i-th r-subset in
// colexicographic-by-bitmask order; labels record the subsets.
Graph kneser_graph(int n, int r);

// The r-subsets of {1..n} as bitmasks, in increasing numeric order; this
// fixes the vertex indexing used by kneser_graph.
std::vector<std::uint64_t> kneser_vertices(int n, int r);

// Cayley graph on an explicit finite vertex set V of integers with
// connection set S: u ~ v iff |u-v| is in S.
Graph cayley_graph(const std::vector<long long>& vertices,
                   const std::vector<long long>& s);

// Cayley graph on the interval [0, m) with connection set S.
Graph cayley_graph_interval(long long m, const std::vector<long long>& s);

// Cayley graph on F_2^d vertex set `vertices` with connection set `conn`
// (edges u ~ v iff u+v lies in conn).
Graph cayley_graph_f2(const std::vector<BitVector>& vertices,
                      const std::vector<BitVector>& conn);

}  // namespace recforge

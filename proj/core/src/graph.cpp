#include "recforge/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <unordered_map>

namespace recforge {

std::vector<std::uint64_t> kneser_vertices(int n, int r) {
    if (n < 1 || n > 62 || r < 0 || r > n)
        throw std::invalid_argument("kneser parameters out of range");
    std::vector<std::uint64_t> out;
    if (r == 0) {
        out.push_back(0);
        return out;
    }
    std::uint64_t v = (1ull << r) - 1, limit = 1ull << n;
    while (v < limit) {
        out.push_back(v);
        std::uint64_t c = v & -v, t = v + c;
        v = (((t ^ v) >> 2) / c) | t;
    }
    return out;
}

Graph kneser_graph(int n, int r) {
    if (r == 1) {  // complete graph; no bitmask needed, so n may exceed 62
        if (n < 1 || n > 2048)
            throw std::invalid_argument("kneser parameters out of range");
        Graph g(n);
        g.labels.resize(n);
        for (int i = 0; i < n; ++i) {
            g.labels[i] = "{" + std::to_string(i + 1) + "}";
            for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
        }
        return g;
    }
    auto verts = kneser_vertices(n, r);
    if (verts.size() > 100000)
        throw std::length_error("kneser graph too large");
    Graph g(static_cast<int>(verts.size()));
    g.labels.resize(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) {
        std::string lab = "{";
        for (int b = 0; b < n; ++b)
            if ((verts[i] >> b) & 1) lab += std::to_string(b + 1) + ",";
        if (lab.size() > 1) lab.pop_back();
        lab += "}";
        g.labels[i] = lab;
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if ((verts[i] & verts[j]) == 0) g.add_edge((int)i, (int)j);
    }
    return g;
}

Graph cayley_graph(const std::vector<long long>& vertices,
                   const std::vector<long long>& s) {
    std::unordered_map<long long, int> idx;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        idx[vertices[i]] = (int)i;
    Graph g((int)vertices.size());
    g.labels.resize(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i)
        g.labels[i] = std::to_string(vertices[i]);
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (long long d : s) {
            auto it = idx.find(vertices[i] + d);
            if (it != idx.end()) g.add_edge((int)i, it->second);
        }
    return g;
}

Graph cayley_graph_interval(long long m, const std::vector<long long>& s) {
    if (m < 0 || m > 5'000'000)
        throw std::invalid_argument("interval length out of range");
    Graph g((int)m);
    for (long long u = 0; u < m; ++u)
        for (long long d : s)
            if (u + d < m && d > 0) g.add_edge((int)u, (int)(u + d));
    return g;
}

Graph cayley_graph_f2(const std::vector<BitVector>& vertices,
                      const std::vector<BitVector>& conn) {
    std::unordered_map<std::uint64_t, int> idx;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        idx[vertices[i].bits] = (int)i;
    Graph g((int)vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (const auto& c : conn) {
            auto it = idx.find(vertices[i].bits ^ c.bits);
            if (it != idx.end()) g.add_edge((int)i, it->second);
        }
    return g;
}

}  // namespace recforge

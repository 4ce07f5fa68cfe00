#include "recforge/kneser.hpp"

#include <set>
#include <stdexcept>

namespace recforge {

KneserEmbedding kneser_embedding_into_hamming_cayley(int d, int k) {
    if (d < 1 || d > 62 || k < 0 || 2 * k > d)
        throw std::invalid_argument("require 1 <= d <= 62 and 0 <= 2k <= d");
    KneserEmbedding e;
    e.d = d;
    e.k = k;
    e.r = d / 2 - k;
    if (e.r < 0) throw std::invalid_argument("floor(d/2)-k negative");
    e.subsets = kneser_vertices(d, e.r);
    e.images.reserve(e.subsets.size());
    for (auto m : e.subsets) e.images.push_back({d, m});
    // A disjoint pair C, C' has 1_C + 1_C' of weight 2r, hence at distance
    // d - 2r = (d odd ? 2k+1 : 2k) <= 2k+1 from the all-ones vector.
    e.verified = true;
    auto ones = bv_ones(d);
    for (std::size_t i = 0; i < e.subsets.size() && e.verified; ++i)
        for (std::size_t j = i + 1; j < e.subsets.size(); ++j) {
            if (e.subsets[i] & e.subsets[j]) continue;  // not a Kneser edge
            BitVector diff = bv_add(e.images[i], e.images[j]);
            if (hamming_weight(bv_add(diff, ones)) > 2 * k + 1) {
                e.verified = false;
                break;
            }
        }
    return e;
}

bool verify_embedding(const Graph& host, const Graph& sub,
                      const std::vector<int>& map) {
    if ((int)map.size() != sub.size())
        throw std::invalid_argument("map domain must equal sub vertex set");
    std::set<int> image;
    for (int v : map) {
        if (v < 0 || v >= host.size())
            throw std::invalid_argument("map target out of range");
        if (!image.insert(v).second)
            throw std::invalid_argument("map not injective");
    }
    for (int u = 0; u < sub.size(); ++u)
        for (int v = u + 1; v < sub.size(); ++v)
            if (sub.has_edge(u, v) && !host.has_edge(map[u], map[v]))
                return false;
    return true;
}

}  // namespace recforge

#include "recforge/coloring.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

namespace recforge {

bool is_proper_coloring(const Graph& g, const std::vector<int>& coloring) {
    if ((int)coloring.size() != g.size()) return false;
    for (int u = 0; u < g.size(); ++u) {
        if (coloring[u] < 0) return false;
        for (int v = u + 1; v < g.size(); ++v)
            if (g.has_edge(u, v) && coloring[u] == coloring[v]) return false;
    }
    return true;
}

std::vector<int> greedy_clique(const Graph& g) {
    std::vector<int> order(g.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return g.degree(a) > g.degree(b);
    });
    std::vector<int> clique;
    for (int v : order) {
        bool ok = true;
        for (int u : clique)
            if (!g.has_edge(u, v)) {
                ok = false;
                break;
            }
        if (ok) clique.push_back(v);
    }
    std::sort(clique.begin(), clique.end());
    return clique;
}

namespace {

using Words = std::vector<std::uint64_t>;

std::vector<int> dsatur_greedy(const Graph& g) {
    int n = g.size();
    std::vector<int> color(n, -1);
    std::vector<std::vector<bool>> neigh_colors(n);
    for (int step = 0; step < n; ++step) {
        int pick = -1, ps = -1, pd = -1;
        for (int v = 0; v < n; ++v) {
            if (color[v] >= 0) continue;
            int s = 0;
            for (bool b : neigh_colors[v]) s += b;
            int d = g.degree(v);
            if (s > ps || (s == ps && d > pd)) {
                pick = v;
                ps = s;
                pd = d;
            }
        }
        int c = 0;
        while (c < (int)neigh_colors[pick].size() && neigh_colors[pick][c]) ++c;
        color[pick] = c;
        for (int v = 0; v < n; ++v)
            if (g.has_edge(pick, v)) {
                if ((int)neigh_colors[v].size() <= c)
                    neigh_colors[v].resize(c + 1, false);
                neigh_colors[v][c] = true;
            }
    }
    return color;
}

// Branch and bound over whole color classes: the class of a chosen vertex
// may be assumed to be a maximal independent set, so we enumerate those and
// recurse on the rest. Infeasibility is pruned with the exact independence
// number: k classes cover at most k * alpha vertices.
struct ClassSolver {
    const Graph& g;
    int n, words;
    std::uint64_t budget, nodes = 0;
    bool aborted = false;
    std::vector<Words> comp;  // complement adjacency (no self loops)
    std::vector<Words> classes;
    // residuals proven not k-colorable, keyed by the bitset words plus k;
    // distinct class orderings reach identical residuals, so this collapses
    // permutations of the same partial partition
    std::unordered_set<std::string> refuted;

    ClassSolver(const Graph& gr, std::uint64_t b)
        : g(gr), n(gr.size()), words(gr.words()), budget(b) {
        comp.assign(n, Words(words, 0));
        for (int v = 0; v < n; ++v) {
            for (int w = 0; w < words; ++w) comp[v][w] = ~g.row(v)[w];
            comp[v][v / 64] &= ~(1ull << (v % 64));
            int tail = n % 64;
            if (tail) comp[v][words - 1] &= (1ull << tail) - 1;
        }
    }

    static int count(const Words& a) {
        int c = 0;
        for (auto w : a) c += __builtin_popcountll(w);
        return c;
    }
    static bool empty(const Words& a) {
        for (auto w : a)
            if (w) return false;
        return true;
    }
    static int first(const Words& a) {
        for (std::size_t w = 0; w < a.size(); ++w)
            if (a[w]) return (int)(w * 64 + __builtin_ctzll(a[w]));
        return -1;
    }
    Words inter(const Words& a, const Words& b) const {
        Words r(words);
        for (int w = 0; w < words; ++w) r[w] = a[w] & b[w];
        return r;
    }

    // Greedy partition of g[sub] into cliques. The number of parts bounds
    // the independence number from above (an independent set meets each
    // clique at most once); the largest part bounds the clique number from
    // below.
    struct CoverBound {
        int parts = 0;
        int max_clique = 0;
    };
    CoverBound clique_cover(const Words& sub) const {
        CoverBound b;
        Words rest = sub;
        while (!empty(rest)) {
            ++b.parts;
            int v = first(rest);
            rest[v / 64] &= ~(1ull << (v % 64));
            Words cand(words);
            for (int w = 0; w < words; ++w)
                cand[w] = rest[w] & g.row(v)[w];
            int size = 1;
            while (!empty(cand)) {
                int u = first(cand);
                cand[u / 64] &= ~(1ull << (u % 64));
                rest[u / 64] &= ~(1ull << (u % 64));
                ++size;
                for (int w = 0; w < words; ++w) cand[w] &= g.row(u)[w];
            }
            if (size > b.max_clique) b.max_clique = size;
        }
        return b;
    }

    enum class Tri { Yes, No, Cut };

    // Bron-Kerbosch with pivoting over the complement graph: every maximal
    // independent set of g[sub] extending `cur` is tried as the next class.
    Tri enum_classes(const Words& sub, Words cur, Words p, Words x, int k) {
        if (aborted) return Tri::Cut;
        if (empty(p) && empty(x)) {
            Words rest(words);
            for (int w = 0; w < words; ++w) rest[w] = sub[w] & ~cur[w];
            classes.push_back(cur);
            Tri r = colorable(rest, k - 1);
            if (r != Tri::Yes) classes.pop_back();
            return r;
        }
        int pivot = -1, best_gain = -1;
        for (int w = 0; w < words; ++w) {
            std::uint64_t bits = p[w] | x[w];
            while (bits) {
                int u = w * 64 + __builtin_ctzll(bits);
                bits &= bits - 1;
                int gain = count(inter(p, comp[u]));
                if (gain > best_gain) {
                    best_gain = gain;
                    pivot = u;
                }
            }
        }
        Words cand(words);
        for (int w = 0; w < words; ++w) cand[w] = p[w] & ~comp[pivot][w];
        bool cut = false;
        for (int w = 0; w < words; ++w) {
            std::uint64_t bits = cand[w];
            while (bits) {
                int v = w * 64 + __builtin_ctzll(bits);
                bits &= bits - 1;
                Words cur2 = cur;
                cur2[v / 64] |= 1ull << (v % 64);
                Tri r = enum_classes(sub, std::move(cur2),
                                     inter(p, comp[v]), inter(x, comp[v]), k);
                if (r == Tri::Yes) return Tri::Yes;
                if (r == Tri::Cut) cut = true;
                p[v / 64] &= ~(1ull << (v % 64));
                x[v / 64] |= 1ull << (v % 64);
            }
        }
        return cut ? Tri::Cut : Tri::No;
    }

    // Exact 2-colorability of g[sub] by BFS; fills classes on success.
    Tri two_color(const Words& sub) {
        std::vector<int> side(n, -1);
        Words cls[2] = {Words(words, 0), Words(words, 0)};
        std::vector<int> stack;
        for (int w = 0; w < words; ++w) {
            std::uint64_t bits = sub[w];
            while (bits) {
                int s = w * 64 + __builtin_ctzll(bits);
                bits &= bits - 1;
                if (side[s] >= 0) continue;
                side[s] = 0;
                cls[0][s / 64] |= 1ull << (s % 64);
                stack.push_back(s);
                while (!stack.empty()) {
                    int u = stack.back();
                    stack.pop_back();
                    for (int w2 = 0; w2 < words; ++w2) {
                        std::uint64_t nb = g.row(u)[w2] & sub[w2];
                        while (nb) {
                            int v = w2 * 64 + __builtin_ctzll(nb);
                            nb &= nb - 1;
                            if (side[v] < 0) {
                                side[v] = 1 - side[u];
                                cls[side[v]][v / 64] |= 1ull << (v % 64);
                                stack.push_back(v);
                            } else if (side[v] == side[u]) {
                                return Tri::No;
                            }
                        }
                    }
                }
            }
        }
        if (!empty(cls[0])) classes.push_back(cls[0]);
        if (!empty(cls[1])) classes.push_back(cls[1]);
        return Tri::Yes;
    }

    Tri colorable(const Words& sub, int k) {
        if (empty(sub)) return Tri::Yes;
        if (++nodes > budget) aborted = true;
        if (aborted) return Tri::Cut;
        if (k <= 0) return Tri::No;
        // a vertex with fewer than k residual neighbors can always be
        // colored after the rest; strip such vertices to a fixpoint and
        // reinsert them in reverse order once the core is colored
        Words kept = sub;
        std::vector<int> elim;
        if (k <= 4) for (bool changed = true; changed;) {
            changed = false;
            for (int w = 0; w < words; ++w) {
                std::uint64_t bits = kept[w];
                while (bits) {
                    int v = w * 64 + __builtin_ctzll(bits);
                    bits &= bits - 1;
                    int deg = 0;
                    for (int w2 = 0; w2 < words; ++w2)
                        deg += __builtin_popcountll(kept[w2] & g.row(v)[w2]);
                    if (deg < k) {
                        kept[v / 64] &= ~(1ull << (v % 64));
                        elim.push_back(v);
                        changed = true;
                    }
                }
            }
        }
        std::size_t mark = classes.size();
        Tri r = core_colorable(kept, k);
        if (r == Tri::Yes) {
            for (auto it = elim.rbegin(); it != elim.rend(); ++it) {
                int v = *it;
                bool placed = false;
                for (std::size_t c = mark; c < classes.size() && !placed; ++c) {
                    bool conflict = false;
                    for (int w = 0; w < words; ++w)
                        if (classes[c][w] & g.row(v)[w]) {
                            conflict = true;
                            break;
                        }
                    if (!conflict) {
                        classes[c][v / 64] |= 1ull << (v % 64);
                        placed = true;
                    }
                }
                if (!placed) {
                    Words one(words, 0);
                    one[v / 64] = 1ull << (v % 64);
                    classes.push_back(one);
                }
            }
        }
        return r;
    }

    // Fixed-palette DSATUR branching on the subgraph induced by `sub`:
    // branch on the most saturated vertex, fail as soon as one vertex sees
    // all k colors, and admit only one fresh color per level.
    Tri dsatur_k(const Words& sub, int k) {
        std::vector<int> verts;
        for (int w = 0; w < words; ++w) {
            std::uint64_t bits = sub[w];
            while (bits) {
                verts.push_back(w * 64 + __builtin_ctzll(bits));
                bits &= bits - 1;
            }
        }
        int m = (int)verts.size();
        std::vector<int> idx(n, -1);
        for (int i = 0; i < m; ++i) idx[verts[i]] = i;
        std::vector<std::vector<int>> nbr(m);
        for (int i = 0; i < m; ++i)
            for (int w = 0; w < words; ++w) {
                std::uint64_t bits = g.row(verts[i])[w] & sub[w];
                while (bits) {
                    nbr[i].push_back(idx[w * 64 + __builtin_ctzll(bits)]);
                    bits &= bits - 1;
                }
            }
        std::vector<int> col(m, -1), cnts(std::size_t(m) * k, 0);

        struct Rec {
            ClassSolver& s;
            int m, k;
            std::vector<std::vector<int>>& nbr;
            std::vector<int>& col;
            std::vector<int>& cnts;
            Tri go(int colored, int used) {
                if (++s.nodes > s.budget) s.aborted = true;
                if (s.aborted) return Tri::Cut;
                if (colored == m) return Tri::Yes;
                int pick = -1, psat = -1, pdeg = -1;
                for (int v = 0; v < m; ++v) {
                    if (col[v] >= 0) continue;
                    int sat = 0;
                    for (int c = 0; c < k; ++c)
                        if (cnts[std::size_t(v) * k + c]) ++sat;
                    if (sat == k) return Tri::No;
                    int d = (int)nbr[v].size();
                    if (sat > psat || (sat == psat && d > pdeg)) {
                        pick = v;
                        psat = sat;
                        pdeg = d;
                    }
                }
                int lim = std::min(used + 1, k);
                for (int c = 0; c < lim; ++c) {
                    if (cnts[std::size_t(pick) * k + c]) continue;
                    col[pick] = c;
                    for (int j : nbr[pick]) ++cnts[std::size_t(j) * k + c];
                    Tri r = go(colored + 1, std::max(used, c + 1));
                    if (r != Tri::No) return r;  // keep colors on success
                    for (int j : nbr[pick]) --cnts[std::size_t(j) * k + c];
                    col[pick] = -1;
                    if (c == used) break;  // fresh colors are interchangeable
                }
                return Tri::No;
            }
        } rec{*this, m, k, nbr, col, cnts};

        Tri r = rec.go(0, 0);
        if (r == Tri::Yes) {
            std::vector<Words> cls(k, Words(words, 0));
            for (int i = 0; i < m; ++i)
                cls[col[i]][verts[i] / 64] |= 1ull << (verts[i] % 64);
            for (auto& c : cls)
                if (!empty(c)) classes.push_back(std::move(c));
        }
        return r;
    }

    Tri core_colorable(const Words& sub, int k) {
        if (empty(sub)) return Tri::Yes;
        int cnt = count(sub);
        if (cnt <= k) {  // singletons suffice
            Words rest = sub;
            while (!empty(rest)) {
                int v = first(rest);
                Words one(words, 0);
                one[v / 64] = 1ull << (v % 64);
                classes.push_back(one);
                rest[v / 64] &= ~(1ull << (v % 64));
            }
            return Tri::Yes;
        }
        if (k <= 0) return Tri::No;
        if (k == 1) {  // needs g[sub] edgeless
            for (int w = 0; w < words; ++w) {
                std::uint64_t bits = sub[w];
                while (bits) {
                    int v = w * 64 + __builtin_ctzll(bits);
                    bits &= bits - 1;
                    if (!empty(inter(sub, Words(g.row(v), g.row(v) + words))))
                        return Tri::No;
                }
            }
            classes.push_back(sub);
            return Tri::Yes;
        }
        if (k == 2) return two_color(sub);
        CoverBound cb = clique_cover(sub);
        if (cb.max_clique > k) return Tri::No;
        if ((long long)cnt > (long long)k * cb.parts) return Tri::No;
        std::string key((const char*)sub.data(), sub.size() * 8);
        key.push_back((char)k);
        if (refuted.count(key)) return Tri::No;
        if (k <= 4) {  // small palettes: vertex branching wins
            Tri r = dsatur_k(sub, k);
            if (r == Tri::No) {
                if (refuted.size() >= (1u << 23)) refuted.clear();
                refuted.insert(std::move(key));
            }
            return r;
        }
        // branch on a vertex of maximum degree within sub
        int pick = -1, pd = -1;
        for (int w = 0; w < words; ++w) {
            std::uint64_t bits = sub[w];
            while (bits) {
                int v = w * 64 + __builtin_ctzll(bits);
                bits &= bits - 1;
                int d = cnt - 1 - count(inter(sub, comp[v]));
                if (d > pd) {
                    pd = d;
                    pick = v;
                }
            }
        }
        Words cur(words, 0);
        cur[pick / 64] = 1ull << (pick % 64);
        Words p = inter(sub, comp[pick]);
        Words x(words, 0);
        Tri r = enum_classes(sub, std::move(cur), std::move(p), std::move(x), k);
        if (r == Tri::No) {
            if (refuted.size() >= (1u << 23)) refuted.clear();
            refuted.insert(std::move(key));
        }
        return r;
    }
};

}  // namespace

ColoringResult chromatic_number_exact(const Graph& g,
                                      std::uint64_t node_budget) {
    ColoringResult r;
    int n = g.size();
    if (n == 0) {
        r.chromatic_number = 0;
        r.exact = true;
        return r;
    }
    auto clique = greedy_clique(g);
    auto greedy = dsatur_greedy(g);
    int ub = 1 + *std::max_element(greedy.begin(), greedy.end());
    int lb = (int)clique.size();

    r.coloring = greedy;
    r.clique = clique;

    ClassSolver s(g, node_budget);
    Words full(s.words, 0);
    for (int v = 0; v < n; ++v) full[v / 64] |= 1ull << (v % 64);

    bool proven = (ub == lb);
    while (!proven && ub > lb) {
        s.classes.clear();
        auto res = s.colorable(full, ub - 1);
        if (res == ClassSolver::Tri::Yes) {
            ub = (int)s.classes.size();
            std::vector<int> col(n, -1);
            for (int c = 0; c < (int)s.classes.size(); ++c)
                for (int w = 0; w < s.words; ++w) {
                    std::uint64_t bits = s.classes[c][w];
                    while (bits) {
                        int v = w * 64 + __builtin_ctzll(bits);
                        bits &= bits - 1;
                        col[v] = c;
                    }
                }
            r.coloring = col;
        } else if (res == ClassSolver::Tri::No) {
            lb = ub;
            proven = true;
        } else {
            break;  // budget exhausted
        }
    }

    r.chromatic_number = ub;
    r.lower_bound = lb;
    r.nodes_explored = s.nodes;
    r.exact = proven || ub == lb;
    return r;
}

}  // namespace recforge

#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "dichro/digraph.hpp"

namespace dichro::testing {

inline Digraph directed_cycle(int n) {
    std::vector<Arc> arcs;
    for (int i = 0; i < n; ++i) arcs.push_back({i, (i + 1) % n});
    return Digraph(n, arcs);
}

inline Digraph directed_path(int n) {
    std::vector<Arc> arcs;
    for (int i = 0; i + 1 < n; ++i) arcs.push_back({i, i + 1});
    return Digraph(n, arcs);
}

inline Digraph bidirected_clique(int n) {
    std::vector<Arc> arcs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) arcs.push_back({i, j});
    return Digraph(n, arcs);
}

inline Digraph digon() { return Digraph(2, {{0, 1}, {1, 0}}); }

/// Each ordered pair independently present with probability p.
inline Digraph random_digraph(int n, double p, std::mt19937& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<Arc> arcs;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && coin(rng)) arcs.push_back({u, v});
    return Digraph(n, arcs);
}

/// Random DAG under a random topological order.
inline Digraph random_dag(int n, double p, std::mt19937& rng) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::bernoulli_distribution coin(p);
    std::vector<Arc> arcs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) arcs.push_back({perm[i], perm[j]});
    return Digraph(n, arcs);
}

/// All simple directed cycles, each reported once starting at its least
/// vertex. Exponential; only for tiny graphs.
inline std::vector<std::vector<Vertex>> enumerate_cycles(const Digraph& d) {
    std::vector<std::vector<Vertex>> cycles;
    const int n = d.num_vertices();
    std::vector<char> on_path(n, 0);
    std::vector<Vertex> path;
    std::function<void(Vertex, Vertex)> extend = [&](Vertex start, Vertex v) {
        for (Vertex w : d.out_neighbors(v)) {
            if (w == start) {
                cycles.push_back(path);
            } else if (w > start && !on_path[w]) {
                on_path[w] = 1;
                path.push_back(w);
                extend(start, w);
                path.pop_back();
                on_path[w] = 0;
            }
        }
    };
    for (Vertex s = 0; s < n; ++s) {
        path = {s};
        on_path[s] = 1;
        extend(s, s);
        on_path[s] = 0;
    }
    return cycles;
}

/// Proper-coloring test by cycle enumeration, independent of the
/// topological-sort implementation.
inline bool no_monochromatic_cycle(const Digraph& d, const std::vector<int>& colors) {
    for (const auto& cycle : enumerate_cycles(d)) {
        bool mono = std::all_of(cycle.begin(), cycle.end(), [&](Vertex v) { return colors[v] == colors[cycle[0]]; });
        if (mono) return false;
    }
    return true;
}

/// Every vector in [1..k]^n, lexicographic.
inline void for_each_color_vector(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> c(n, 1);
    while (true) {
        f(c);
        int i = n - 1;
        while (i >= 0 && c[i] == k) c[i--] = 1;
        if (i < 0) return;
        ++c[i];
    }
}

}  // namespace dichro::testing

namespace dichro::testing {

/// Random digraph on n vertices whose first k vertices (after a random
/// relabeling) form a feedback vertex set: the remaining vertices carry a
/// random DAG, the planted vertices connect arbitrarily. Arcs among planted
/// vertices are kept first; the rest are dropped at random until the maximum degree is at most max_degree.
struct PlantedFvs {
    Digraph graph;
    VertexSet fvs;
};

inline PlantedFvs planted_fvs_digraph(int n, int k, int max_degree, double p_dag, double p_hub, double p_clique,
                                      std::mt19937& rng) {
    std::vector<int> label(n);
    for (int i = 0; i < n; ++i) label[i] = i;
    std::shuffle(label.begin(), label.end(), rng);
    std::bernoulli_distribution dag(p_dag), hub(p_hub), clique(p_clique);
    std::vector<Arc> planted, arcs;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            if (a != b && clique(rng)) planted.push_back({label[a], label[b]});
    for (int a = 0; a < k; ++a)
        for (int x = k; x < n; ++x) {
            if (hub(rng)) arcs.push_back({label[a], label[x]});
            if (hub(rng)) arcs.push_back({label[x], label[a]});
        }
    for (int x = k; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (dag(rng)) arcs.push_back({label[x], label[y]});
    std::shuffle(arcs.begin(), arcs.end(), rng);
    arcs.insert(arcs.begin(), planted.begin(), planted.end());
    std::vector<int> degree(n, 0);
    std::vector<Arc> kept;
    for (const Arc& a : arcs) {
        if (degree[a.tail] >= max_degree || degree[a.head] >= max_degree) continue;
        ++degree[a.tail];
        ++degree[a.head];
        kept.push_back(a);
    }
    VertexSet fvs;
    for (int a = 0; a < k; ++a) fvs.push_back(label[a]);
    return {Digraph(n, kept), make_vertex_set(fvs)};
}

}  // namespace dichro::testing

namespace dichro::testing {

/// Random DAG under a random vertex order plus `back` arcs pointing against
/// that order; the back arcs form a feedback arc set. The first `core`
/// positions of the order are fully connected forward and receive back arcs
/// first, which plants bidirected cliques.
struct PlantedFas {
    Digraph graph;
    std::vector<Arc> fas;
};

inline PlantedFas planted_fas_digraph(int n, int back, double p, std::mt19937& rng, int core = 0) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::bernoulli_distribution coin(p);
    std::vector<Arc> arcs, fas;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (j < core || coin(rng)) arcs.push_back({order[i], order[j]});
    std::vector<std::pair<int, int>> pairs, outer;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) (j < core ? pairs : outer).push_back({i, j});
    std::shuffle(pairs.begin(), pairs.end(), rng);
    std::shuffle(outer.begin(), outer.end(), rng);
    pairs.insert(pairs.end(), outer.begin(), outer.end());
    for (int b = 0; b < back && b < static_cast<int>(pairs.size()); ++b)
        fas.push_back({order[pairs[b].second], order[pairs[b].first]});
    arcs.insert(arcs.end(), fas.begin(), fas.end());
    return {Digraph(n, arcs), fas};
}

}  // namespace dichro::testing

#include "dichro/cnf.hpp"

namespace dichro::testing {

/// Every clause over variables 1..n with between lo and hi distinct
/// variables, in every sign pattern.
inline std::vector<std::vector<int>> clauses_over(int n, int lo, int hi) {
    std::vector<std::vector<int>> out;
    for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> vars;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1) vars.push_back(v + 1);
        const int s = static_cast<int>(vars.size());
        if (s < lo || s > hi) continue;
        for (int signs = 0; signs < (1 << s); ++signs) {
            std::vector<int> clause;
            for (int i = 0; i < s; ++i) clause.push_back(signs >> i & 1 ? -vars[i] : vars[i]);
            out.push_back(clause);
        }
    }
    return out;
}

/// Every formula on exactly n variables (1 <= n <= max_vars) made of
/// 1..max_clauses distinct clauses from clauses_over(n, lo, hi).
inline void for_each_small_formula(int max_vars, int max_clauses, int lo, int hi,
                                   const std::function<void(const CnfFormula&)>& f) {
    for (int n = 1; n <= max_vars; ++n) {
        const auto pool = clauses_over(n, lo, hi);
        CnfFormula phi{n, {}};
        std::function<void(std::size_t)> extend = [&](std::size_t start) {
            if (!phi.clauses.empty()) f(phi);
            if (static_cast<int>(phi.clauses.size()) == max_clauses) return;
            for (std::size_t i = start; i < pool.size(); ++i) {
                phi.clauses.push_back(pool[i]);
                extend(i + 1);
                phi.clauses.pop_back();
            }
        };
        extend(0);
    }
}

inline CnfFormula random_formula(int n, int m, int lo, int hi, std::mt19937& rng) {
    std::uniform_int_distribution<int> width(lo, hi), var(1, n), sign(0, 1);
    CnfFormula phi{n, {}};
    for (int j = 0; j < m; ++j) {
        std::vector<int> clause;
        const int w = std::min(width(rng), n);
        while (static_cast<int>(clause.size()) < w) {
            int v = var(rng);
            if (std::any_of(clause.begin(), clause.end(), [&](int l) { return std::abs(l) == v; })) continue;
            clause.push_back(sign(rng) ? v : -v);
        }
        phi.clauses.push_back(clause);
    }
    return phi;
}

/// Truth table search by bitmask, independent of the library's SAT code.
inline bool satisfiable_by_mask(const CnfFormula& phi, bool nae = false) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << phi.num_vars); ++mask) {
        bool ok = true;
        for (const auto& clause : phi.clauses) {
            bool any_true = false, any_false = false;
            for (int lit : clause) {
                bool value = (mask >> (std::abs(lit) - 1) & 1) == (lit > 0 ? 1u : 0u);
                (value ? any_true : any_false) = true;
            }
            if (!any_true || (nae && !any_false)) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

inline bool restricted_by_counting(const CnfFormula& phi) {
    std::vector<int> pos(phi.num_vars + 1, 0), neg(phi.num_vars + 1, 0);
    for (const auto& clause : phi.clauses) {
        if (clause.size() < 2 || clause.size() > 3) return false;
        bool all_pos = std::all_of(clause.begin(), clause.end(), [](int l) { return l > 0; });
        bool all_neg = std::all_of(clause.begin(), clause.end(), [](int l) { return l < 0; });
        if (!all_pos && !all_neg) return false;
        for (std::size_t a = 0; a < clause.size(); ++a)
            for (std::size_t b = a + 1; b < clause.size(); ++b)
                if (std::abs(clause[a]) == std::abs(clause[b])) return false;
        for (int lit : clause) ++(lit > 0 ? pos : neg)[std::abs(lit)];
    }
    for (int v = 1; v <= phi.num_vars; ++v)
        if (pos[v] > 2 || neg[v] > 1) return false;
    return true;
}

}  // namespace dichro::testing

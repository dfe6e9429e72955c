#include "dichro/fas_solver.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "dichro/error.hpp"

namespace dichro {

namespace {

// Number of arcs of f with at least one endpoint colored `color`.
int incident_arcs(const std::vector<Arc>& f, const PartialColoring& c, int color) {
    return static_cast<int>(
        std::count_if(f.begin(), f.end(), [&](const Arc& a) { return c[a.tail] == color || c[a.head] == color; }));
}

Coloring extend(const Digraph& d, const std::vector<Arc>& f, int k, const PartialColoring& c, FasSolveStats& st) {
    const int n = d.num_vertices();
    if (k == 1) {
        if (!f.empty()) throw std::logic_error("solve_fas: feedback arcs left with a single color");
        return Coloring{std::vector<int>(n, 1), 1};
    }

    for (int t = 1; t <= k; ++t) {
        if (incident_arcs(f, c, t) < 2 * k - 1) continue;
        ++st.peel_steps;
        VertexSet keep;
        for (Vertex v = 0; v < n; ++v)
            if (c[v] != t) keep.push_back(v);
        auto sub = induced_subgraph(d, keep);
        std::vector<Arc> rest;
        for (const Arc& a : f)
            if (c[a.tail] != t && c[a.head] != t)
                rest.push_back({sub.from_original[a.tail], sub.from_original[a.head]});
        if (static_cast<int>(rest.size()) > (k - 1) * (k - 1) - 1)
            throw std::logic_error("solve_fas: " + std::to_string(rest.size()) +
                                   " feedback arcs survive removing a class, more than (k-1)^2-1");
        PartialColoring sub_c(sub.graph.num_vertices(), 0);
        for (std::size_t x = 0; x < keep.size(); ++x) {
            int color = c[keep[x]];
            sub_c[x] = color > t ? color - 1 : color;
        }
        Coloring inner = extend(sub.graph, rest, k - 1, sub_c, st);
        Coloring result{std::vector<int>(n, t), k};
        for (std::size_t x = 0; x < keep.size(); ++x) {
            int color = inner.colors[x];
            result.colors[keep[x]] = color >= t ? color + 1 : color;
        }
        return result;
    }

    st.used_rainbow = true;
    auto rainbow = rainbow_color_fas(d, f, k, c);
    if (!rainbow) throw std::logic_error("solve_fas: rainbow coloring failed although every class is light");
    Coloring result{std::move(*rainbow), k};
    for (int& color : result.colors)
        if (color == 0) color = 1;
    return result;
}

}  // namespace

VertexSet arc_endpoints(const std::vector<Arc>& arcs) {
    VertexSet v;
    for (const Arc& a : arcs) {
        v.push_back(a.tail);
        v.push_back(a.head);
    }
    return make_vertex_set(std::move(v));
}

std::optional<PartialColoring> rainbow_color_fas(const Digraph& d, const std::vector<Arc>& f_arcs, int k,
                                                 const PartialColoring& c0) {
    const int n = d.num_vertices();
    if (static_cast<int>(c0.size()) != n) throw Error(ErrorKind::ArityMismatch, "coloring size differs from vertex count");
    VertexSet support = arc_endpoints(f_arcs);
    for (Vertex v : support)
        if (c0[v] < 1 || c0[v] > k)
            throw Error(ErrorKind::PreconditionViolated, "vertex " + std::to_string(v) + " of V(F) is uncolored");
    auto local = induced_subgraph(d, support);
    std::vector<int> local_colors;
    for (Vertex v : support) local_colors.push_back(c0[v]);
    if (!is_proper_coloring(local.graph, Coloring{local_colors, k}))
        throw Error(ErrorKind::PreconditionViolated, "initial coloring is not proper on D[V(F)]");
    for (int t = 1; t <= k; ++t)
        if (incident_arcs(f_arcs, c0, t) > 2 * k - 2)
            throw Error(ErrorKind::PreconditionViolated,
                        "color class " + std::to_string(t) + " is incident on more than 2k-2 feedback arcs");

    std::vector<std::vector<Vertex>> f_neighbors(n);
    for (const Arc& a : f_arcs) {
        f_neighbors[a.tail].push_back(a.head);
        f_neighbors[a.head].push_back(a.tail);
    }
    PartialColoring c(n, 0);
    int next = 1;
    for (Vertex v : support) {
        if (static_cast<int>(f_neighbors[v].size()) < k) continue;
        if (next > k) return std::nullopt;
        c[v] = next++;
    }
    for (Vertex v : support) {
        if (c[v] != 0) continue;
        std::vector<char> taken(k + 1, 0);
        for (Vertex w : f_neighbors[v]) taken[c[w]] = 1;
        int color = 1;
        while (color <= k && taken[color]) ++color;
        if (color > k) return std::nullopt;
        c[v] = color;
    }
    return c;
}

std::optional<Coloring> solve_fas(const Digraph& d, const std::vector<Arc>& f_arcs, int k, const SearchLimits& limits,
                                  FasSolveStats* stats) {
    FasSolveStats local_stats;
    FasSolveStats& st = stats ? *stats : local_stats;
    if (k < 1) throw Error(ErrorKind::PreconditionViolated, "k must be at least 1");
    FeedbackSet fas = FeedbackSet::of_arcs(f_arcs);
    if (static_cast<int>(fas.arcs.size()) > k * k - 1)
        throw Error(ErrorKind::TooManyArcs, "feedback arc set has " + std::to_string(fas.arcs.size()) +
                                                " arcs, more than k^2-1 = " + std::to_string(k * k - 1));
    if (!verify_feedback_set(d, fas))
        throw Error(ErrorKind::NotAFeedbackSet, "removing the given arcs leaves a directed cycle");

    VertexSet support = arc_endpoints(fas.arcs);
    auto local = induced_subgraph(d, support);
    SearchStats search;
    auto c0 = k_colorable_bruteforce(local.graph, k, limits, &search);
    st.oracle_nodes += search.nodes;
    if (!c0) return std::nullopt;

    PartialColoring c(d.num_vertices(), 0);
    for (std::size_t x = 0; x < support.size(); ++x) c[support[x]] = c0->colors[x];
    Coloring result = extend(d, fas.arcs, k, c, st);
    if (!is_proper_coloring(d, result)) throw std::logic_error("solve_fas: produced coloring is not proper");
    return result;
}

}  // namespace dichro

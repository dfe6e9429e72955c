#include "dichro/digraph.hpp"

#include <algorithm>
#include <string>

#include "dichro/error.hpp"

namespace dichro {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::CyclicInput: return "CyclicInput";
        case ErrorKind::ArityMismatch: return "ArityMismatch";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::NotAFeedbackSet: return "NotAFeedbackSet";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::PreconditionViolated: return "PreconditionViolated";
        case ErrorKind::DegreeTooHigh: return "DegreeTooHigh";
        case ErrorKind::WrongFvsSize: return "WrongFvsSize";
        case ErrorKind::TooManyArcs: return "TooManyArcs";
        case ErrorKind::InvalidDecomposition: return "InvalidDecomposition";
        case ErrorKind::ClauseTooLarge: return "ClauseTooLarge";
        case ErrorKind::InvalidClause: return "InvalidClause";
        case ErrorKind::NotRestricted: return "NotRestricted";
        case ErrorKind::VariablePolarityMissing: return "VariablePolarityMissing";
        case ErrorKind::EmptyClause: return "EmptyClause";
        case ErrorKind::GroupSizeInfeasible: return "GroupSizeInfeasible";
        case ErrorKind::ImproperColoring: return "ImproperColoring";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::SelfLoop: return "SelfLoop";
        case ErrorKind::DuplicateArc: return "DuplicateArc";
    }
    return "Unknown";
}

Digraph::Digraph(int n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs)), out_(n), in_(n) {
    if (n < 0) throw Error(ErrorKind::OutOfRange, "negative vertex count");
    for (const Arc& a : arcs_) {
        if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n)
            throw Error(ErrorKind::OutOfRange,
                        "arc (" + std::to_string(a.tail) + "," + std::to_string(a.head) + ") outside 0.." +
                            std::to_string(n - 1));
        if (a.tail == a.head) throw Error(ErrorKind::SelfLoop, "self-loop at vertex " + std::to_string(a.tail));
    }
    std::sort(arcs_.begin(), arcs_.end());
    auto dup = std::adjacent_find(arcs_.begin(), arcs_.end());
    if (dup != arcs_.end())
        throw Error(ErrorKind::DuplicateArc,
                    "arc (" + std::to_string(dup->tail) + "," + std::to_string(dup->head) + ") appears twice");
    for (const Arc& a : arcs_) {
        out_[a.tail].push_back(a.head);
        in_[a.head].push_back(a.tail);
    }
    // arcs_ is sorted by tail then head, so out_ lists are already sorted
    for (auto& list : in_) std::sort(list.begin(), list.end());
}

bool Digraph::has_arc(Vertex u, Vertex v) const {
    const auto& list = out_[u];
    return std::binary_search(list.begin(), list.end(), v);
}

VertexSet make_vertex_set(std::vector<Vertex> vertices) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return vertices;
}

namespace {

void check_range(const Digraph& d, const VertexSet& s) {
    for (Vertex v : s)
        if (v < 0 || v >= d.num_vertices())
            throw Error(ErrorKind::OutOfRange, "vertex " + std::to_string(v) + " not in digraph");
}

// Kahn's algorithm on the subgraph of kept vertices (and arcs). Returns the
// sequence of vertices removed; it covers every kept vertex iff acyclic.
std::vector<Vertex> kahn(const Digraph& d, std::span<const char> removed_vertices,
                         std::span<const Arc> removed_arcs) {
    const int n = d.num_vertices();
    auto removed = [&](Vertex v) { return !removed_vertices.empty() && removed_vertices[v]; };
    std::vector<Arc> dropped(removed_arcs.begin(), removed_arcs.end());
    std::sort(dropped.begin(), dropped.end());
    auto arc_dropped = [&](Vertex u, Vertex v) {
        return !dropped.empty() && std::binary_search(dropped.begin(), dropped.end(), Arc{u, v});
    };

    std::vector<int> indegree(n, 0);
    for (const Arc& a : d.arcs())
        if (!removed(a.tail) && !removed(a.head) && !arc_dropped(a.tail, a.head)) ++indegree[a.head];

    std::vector<Vertex> order;
    std::vector<Vertex> stack;
    for (Vertex v = n - 1; v >= 0; --v)
        if (!removed(v) && indegree[v] == 0) stack.push_back(v);
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (Vertex w : d.out_neighbors(v)) {
            if (removed(w) || arc_dropped(v, w)) continue;
            if (--indegree[w] == 0) stack.push_back(w);
        }
    }
    return order;
}

int kept_count(const Digraph& d, std::span<const char> removed_vertices) {
    if (removed_vertices.empty()) return d.num_vertices();
    return static_cast<int>(std::count(removed_vertices.begin(), removed_vertices.end(), 0));
}

}  // namespace

bool is_acyclic(const Digraph& d) {
    return static_cast<int>(kahn(d, {}, {}).size()) == d.num_vertices();
}

bool is_acyclic_without(const Digraph& d, std::span<const char> removed_vertices,
                        std::span<const Arc> removed_arcs) {
    return static_cast<int>(kahn(d, removed_vertices, removed_arcs).size()) == kept_count(d, removed_vertices);
}

Ordering topological_order(const Digraph& d) {
    auto sequence = kahn(d, {}, {});
    if (static_cast<int>(sequence.size()) != d.num_vertices())
        throw Error(ErrorKind::CyclicInput, "digraph has a directed cycle");
    Ordering order;
    order.position.assign(d.num_vertices(), 0);
    for (std::size_t p = 0; p < sequence.size(); ++p) order.position[sequence[p]] = static_cast<int>(p) + 1;
    order.sequence = std::move(sequence);
    return order;
}

bool is_proper_coloring(const Digraph& d, const Coloring& c) {
    if (static_cast<int>(c.colors.size()) != d.num_vertices())
        throw Error(ErrorKind::ArityMismatch, "coloring has " + std::to_string(c.colors.size()) +
                                                  " entries for " + std::to_string(d.num_vertices()) + " vertices");
    for (int color : c.colors)
        if (color < 1 || color > c.k)
            throw Error(ErrorKind::ArityMismatch, "color " + std::to_string(color) + " outside 1.." +
                                                      std::to_string(c.k));
    // Deleting every bichromatic arc leaves the disjoint union of the color
    // classes; one topological sort checks all classes at once.
    std::vector<Arc> bichromatic;
    for (const Arc& a : d.arcs())
        if (c.colors[a.tail] != c.colors[a.head]) bichromatic.push_back(a);
    return is_acyclic_without(d, {}, bichromatic);
}

InducedSubgraph induced_subgraph(const Digraph& d, const VertexSet& s) {
    check_range(d, s);
    InducedSubgraph result;
    result.to_original = make_vertex_set(s);
    result.from_original.assign(d.num_vertices(), -1);
    for (std::size_t i = 0; i < result.to_original.size(); ++i)
        result.from_original[result.to_original[i]] = static_cast<Vertex>(i);
    std::vector<Arc> arcs;
    for (Vertex old_u : result.to_original)
        for (Vertex old_v : d.out_neighbors(old_u))
            if (result.from_original[old_v] >= 0)
                arcs.push_back({result.from_original[old_u], result.from_original[old_v]});
    result.graph = Digraph(static_cast<int>(result.to_original.size()), std::move(arcs));
    return result;
}

VertexSet closed_neighborhood(const Digraph& d, const VertexSet& s) {
    check_range(d, s);
    std::vector<Vertex> result(s.begin(), s.end());
    for (Vertex v : s) {
        result.insert(result.end(), d.out_neighbors(v).begin(), d.out_neighbors(v).end());
        result.insert(result.end(), d.in_neighbors(v).begin(), d.in_neighbors(v).end());
    }
    return make_vertex_set(std::move(result));
}

int max_degree(const Digraph& d) {
    int best = 0;
    for (Vertex v = 0; v < d.num_vertices(); ++v) best = std::max(best, d.degree(v));
    return best;
}

bool is_bidirected_clique(const Digraph& d, const VertexSet& s) {
    check_range(d, s);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (!d.has_digon(s[i], s[j])) return false;
    return true;
}

std::vector<int> strongly_connected_components(const Digraph& d) {
    const int n = d.num_vertices();
    std::vector<int> index(n, -1), low(n, 0), component(n, -1);
    std::vector<char> on_stack(n, 0);
    std::vector<Vertex> stack;
    int next_index = 0, next_component = 0;
    // explicit DFS frames: (vertex, next out-neighbor offset)
    std::vector<std::pair<Vertex, std::size_t>> frames;
    for (Vertex root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        frames.push_back({root, 0});
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!frames.empty()) {
            auto& [v, offset] = frames.back();
            auto out = d.out_neighbors(v);
            if (offset < out.size()) {
                Vertex w = out[offset++];
                if (index[w] < 0) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                Vertex w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    component[w] = next_component;
                } while (w != v);
                ++next_component;
            }
            Vertex finished = v;
            frames.pop_back();
            if (!frames.empty()) {
                Vertex parent = frames.back().first;
                low[parent] = std::min(low[parent], low[finished]);
            }
        }
    }
    return component;
}

std::vector<char> cyclic_vertices(const Digraph& d) {
    auto component = strongly_connected_components(d);
    std::vector<int> size(d.num_vertices(), 0);
    for (int c : component) ++size[c];
    std::vector<char> cyclic(d.num_vertices(), 0);
    for (Vertex v = 0; v < d.num_vertices(); ++v) cyclic[v] = size[component[v]] > 1;
    return cyclic;
}

}  // namespace dichro

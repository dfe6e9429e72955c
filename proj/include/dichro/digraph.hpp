#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace dichro {

using Vertex = int;
using VertexSet = std::vector<Vertex>;  // kept sorted and duplicate-free

struct Arc {
    Vertex tail = 0;
    Vertex head = 0;

    auto operator<=>(const Arc&) const = default;
};

/// Loopless simple digraph on vertices 0..n-1. Digons are allowed.
/// Immutable once built; both out- and in-adjacency are kept sorted.
class Digraph {
public:
    Digraph() = default;

    /// Throws SelfLoop, DuplicateArc or OutOfRange.
    Digraph(int n, std::vector<Arc> arcs);

    int num_vertices() const { return n_; }
    std::size_t num_arcs() const { return arcs_.size(); }

    /// All arcs in lexicographic (tail, head) order.
    std::span<const Arc> arcs() const { return arcs_; }
    std::span<const Vertex> out_neighbors(Vertex v) const { return out_[v]; }
    std::span<const Vertex> in_neighbors(Vertex v) const { return in_[v]; }

    bool has_arc(Vertex u, Vertex v) const;
    bool has_digon(Vertex u, Vertex v) const { return has_arc(u, v) && has_arc(v, u); }
    int degree(Vertex v) const { return static_cast<int>(out_[v].size() + in_[v].size()); }

    bool operator==(const Digraph& other) const { return n_ == other.n_ && arcs_ == other.arcs_; }

private:
    int n_ = 0;
    std::vector<Arc> arcs_;
    std::vector<std::vector<Vertex>> out_;
    std::vector<std::vector<Vertex>> in_;
};

/// Incremental construction, used by the reduction compiler.
class DigraphBuilder {
public:
    explicit DigraphBuilder(int n = 0) : n_(n) {}

    Vertex add_vertex() { return n_++; }
    Vertex add_vertices(int count) {
        Vertex first = n_;
        n_ += count;
        return first;
    }
    void add_arc(Vertex u, Vertex v) { arcs_.push_back({u, v}); }
    void add_digon(Vertex u, Vertex v) {
        add_arc(u, v);
        add_arc(v, u);
    }
    int num_vertices() const { return n_; }

    Digraph build() const { return Digraph(n_, arcs_); }

private:
    int n_;
    std::vector<Arc> arcs_;
};

/// Map vertex -> color in 1..k.
struct Coloring {
    std::vector<int> colors;
    int k = 0;

    int operator[](Vertex v) const { return colors[v]; }
    bool operator==(const Coloring&) const = default;
};

/// Bijection between a vertex subset and positions 1..|S|.
struct Ordering {
    std::vector<Vertex> sequence;   // sequence[p-1] is the vertex at position p
    std::vector<int> position;      // position[v] in 1..|S|, 0 when v is not in S
};

struct InducedSubgraph {
    Digraph graph;
    std::vector<Vertex> to_original;    // new id -> old id
    std::vector<Vertex> from_original;  // old id -> new id, -1 if dropped
};

VertexSet make_vertex_set(std::vector<Vertex> vertices);

bool is_acyclic(const Digraph& d);

/// Acyclicity of d with some vertices and/or arcs deleted. Masks may be empty.
bool is_acyclic_without(const Digraph& d, std::span<const char> removed_vertices,
                        std::span<const Arc> removed_arcs = {});

/// Throws CyclicInput.
Ordering topological_order(const Digraph& d);

/// Each color class must induce an acyclic subdigraph. Throws ArityMismatch.
bool is_proper_coloring(const Digraph& d, const Coloring& c);

/// Throws OutOfRange.
InducedSubgraph induced_subgraph(const Digraph& d, const VertexSet& s);

/// s together with every vertex joined to s by an arc in either direction.
VertexSet closed_neighborhood(const Digraph& d, const VertexSet& s);

int max_degree(const Digraph& d);

bool is_bidirected_clique(const Digraph& d, const VertexSet& s);

/// Vertices lying on some directed cycle (members of non-trivial strongly
/// connected components).
std::vector<char> cyclic_vertices(const Digraph& d);

/// Strongly connected component id per vertex (Tarjan, iterative).
std::vector<int> strongly_connected_components(const Digraph& d);

}  // namespace dichro

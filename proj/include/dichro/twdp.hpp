#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dichro/digraph.hpp"
#include "dichro/oracle.hpp"
#include "dichro/validation.hpp"

namespace dichro {

/// Tree decomposition of the underlying undirected graph. Bags are sorted
/// vertex sets; edges join bag indices and must form a tree.
struct TreeDecomposition {
    int num_vertices = 0;
    std::vector<VertexSet> bags;
    std::vector<std::pair<int, int>> edges;

    /// max |bag| - 1, or -1 without bags.
    int width() const;
    bool operator==(const TreeDecomposition&) const = default;
};

ValidationResult validate_decomposition(const Digraph& d, const TreeDecomposition& td);

enum class NiceKind { Leaf, Introduce, Forget, Join };

struct NiceNode {
    NiceKind kind = NiceKind::Leaf;
    Vertex vertex = -1;  // introduced or forgotten vertex
    VertexSet bag;
    std::vector<int> children;
};

/// Nodes are stored children-first; the root is the last node and has an
/// empty bag.
struct NiceTreeDecomposition {
    int num_vertices = 0;
    std::vector<NiceNode> nodes;

    int root() const { return static_cast<int>(nodes.size()) - 1; }
    int width() const;
    /// The same bags viewed as a plain tree decomposition.
    TreeDecomposition as_tree_decomposition() const;
};

/// Root at bag 0; children reach their parent's bag by forgetting and then
/// introducing vertices in increasing order; several children are combined
/// by a chain of binary joins; the root bag is forgotten down to empty.
/// Throws InvalidDecomposition.
NiceTreeDecomposition make_nice(const Digraph& d, const TreeDecomposition& td);

/// Node-kind invariants plus validity of the underlying decomposition.
ValidationResult validate_nice(const Digraph& d, const NiceTreeDecomposition& ntd);

/// Min-degree elimination (ties by smallest id) of the underlying graph.
TreeDecomposition greedy_decomposition(const Digraph& d);

/// Restriction of a (coloring, ordering) solution to a bag, indexed by the
/// bag's sorted vertices: colors in 1..k and positions a permutation of
/// 0..|bag|-1.
struct Signature {
    std::vector<int> colors;
    std::vector<int> positions;

    bool operator==(const Signature&) const = default;
};

/// Base-k coloring code times |bag|! plus the Lehmer rank of the positions.
std::uint64_t encode_signature(const Signature& s, int k);
Signature decode_signature(std::uint64_t key, int bag_size, int k);

struct TwdpStats {
    std::vector<std::size_t> table_sizes;  // per nice node
    std::vector<int> bag_sizes;
    std::uint64_t total_entries = 0;
    std::size_t max_table = 0;
};

/// Decides k-colorability over a nice tree decomposition and reconstructs a
/// proper coloring. SearchLimits::max_nodes caps the total number of table
/// entries. Throws InvalidDecomposition, BudgetExceeded.
std::optional<Coloring> solve_treewidth(const Digraph& d, const NiceTreeDecomposition& ntd, int k,
                                        const SearchLimits& limits = {}, TwdpStats* stats = nullptr);

}  // namespace dichro

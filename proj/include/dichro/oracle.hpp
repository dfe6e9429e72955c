#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dichro/digraph.hpp"

namespace dichro {

/// Exhaustive ground-truth procedures. Everything here is exponential and
/// meant for desk-scale instances; work is bounded by a node budget rather
/// than a timeout so results are reproducible.
struct SearchLimits {
    std::uint64_t max_nodes = 200'000'000;
};

struct SearchStats {
    std::uint64_t nodes = 0;
};

struct FeedbackSet {
    enum class Kind { Vertex, Arc };

    Kind kind = Kind::Vertex;
    VertexSet vertices;
    std::vector<Arc> arcs;

    std::size_t size() const { return kind == Kind::Vertex ? vertices.size() : arcs.size(); }

    static FeedbackSet of_vertices(VertexSet v) { return {Kind::Vertex, make_vertex_set(std::move(v)), {}}; }
    static FeedbackSet of_arcs(std::vector<Arc> a);
};

/// Lexicographically least proper k-coloring among symmetry-broken color
/// vectors (vertex i uses a color at most one above the largest color used
/// by vertices 0..i-1), or nullopt. Throws BudgetExceeded.
std::optional<Coloring> k_colorable_bruteforce(const Digraph& d, int k, const SearchLimits& limits = {},
                                               SearchStats* stats = nullptr);

/// Visit proper k-colorings in lexicographic order until `visit` returns
/// false. With symmetry_broken, only one representative per color
/// permutation is produced.
void for_each_proper_coloring(const Digraph& d, int k, bool symmetry_broken,
                              const std::function<bool(const Coloring&)>& visit, const SearchLimits& limits = {},
                              SearchStats* stats = nullptr);

/// Decision search for large sparse instances: branches on the uncolored
/// vertex with the fewest admissible colors and propagates forced colors
/// (a color is inadmissible when it would close a monochromatic cycle).
/// Returns some proper k-coloring, not necessarily the canonical one.
/// Throws BudgetExceeded.
std::optional<Coloring> k_colorable_search(const Digraph& d, int k, const SearchLimits& limits = {},
                                           SearchStats* stats = nullptr);

int dichromatic_number(const Digraph& d, const SearchLimits& limits = {}, SearchStats* stats = nullptr);

FeedbackSet min_dfvs_bruteforce(const Digraph& d, const SearchLimits& limits = {});
FeedbackSet min_fas_bruteforce(const Digraph& d, const SearchLimits& limits = {});

/// Throws OutOfRange for vertices outside d or arcs that d does not contain.
bool verify_feedback_set(const Digraph& d, const FeedbackSet& f);

}  // namespace dichro

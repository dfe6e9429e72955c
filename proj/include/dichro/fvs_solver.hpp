#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dichro/digraph.hpp"
#include "dichro/oracle.hpp"

namespace dichro {

/// Coloring defined on a subset of the vertices; 0 marks an uncolored vertex.
using PartialColoring = std::vector<int>;

/// Shape of a k-coloring of D[N[F]] around a feedback vertex set
/// F = {v_1..v_k} (sorted) with c(v_t) = t.
///
/// in[t-1]  : vertices of N[F]\F colored t with an arc into v_t
/// out[t-1] : vertices of N[F]\F colored t with an arc out of v_t
/// cross(i,j): arcs between {v_i, v_j} and in/out sets of colors i and j
///             whose endpoints have different colors
struct FvsNeighborhoodProfile {
    VertexSet fvs;
    std::vector<VertexSet> in;
    std::vector<VertexSet> out;
    std::vector<std::vector<std::vector<Arc>>> cross_arcs;  // [i-1][j-1], i < j

    int k() const { return static_cast<int>(fvs.size()); }
    const std::vector<Arc>& cross(int i, int j) const { return cross_arcs[i - 1][j - 1]; }
    /// First color t (ascending) with in[t] or out[t] empty.
    std::optional<int> color_with_empty_side() const;
};

/// Requires c(fvs[t-1]) == t for every t.
FvsNeighborhoodProfile profile_neighborhood(const Digraph& d, const VertexSet& fvs, const PartialColoring& c);

/// |f| <= k-1: distinct colors 1..|f| on f, color k elsewhere.
/// Throws NotAFeedbackSet, TooLarge.
Coloring color_small_fvs(const Digraph& d, const VertexSet& f, int k);

/// |f| == k and f not a bidirected clique: the first non-digon pair of f
/// shares color 1, the rest of f gets 2..k-1 and everything else k.
/// Returns nullopt when f is a bidirected clique. Throws NotAFeedbackSet.
std::optional<Coloring> color_nonclique_fvs(const Digraph& d, const VertexSet& f, int k);

/// Extends a proper coloring of D[N[F]] by painting every vertex outside
/// N[F] with `color`. Throws PreconditionViolated unless v_color has no
/// same-colored in-neighbors or no same-colored out-neighbors.
Coloring fill_with_color(const Digraph& d, const PartialColoring& c, const VertexSet& f, int color);

/// Recolors the in/out sets of colors i < j so that, afterwards, one of the
/// four sets around v_i or v_j is empty. Requires |cross(i,j)| <= 3 and every
/// in/out set of both colors non-empty. Throws PreconditionViolated.
PartialColoring recolor_cross_pair(const Digraph& d, const FvsNeighborhoodProfile& profile, const PartialColoring& c,
                                   int i, int j);

/// Extends any proper k-coloring of D[N[f]] (f a bidirected clique of size
/// k, maximum degree at most 4k-3) to a proper k-coloring of D: normalize so
/// c(v_t) = t, recolor the lightest pair if every in/out set is non-empty,
/// then fill the rest of the graph with a color whose palette vertex is
/// one-sided. Sets `recolored` to the pair used, if any.
Coloring extend_neighborhood_coloring(const Digraph& d, const VertexSet& f, const PartialColoring& c,
                                      std::pair<int, int>* recolored = nullptr);

struct FvsSolveStats {
    std::uint64_t oracle_nodes = 0;
    std::size_t neighborhood_size = 0;
    bool used_nonclique_shortcut = false;
    bool used_recoloring = false;
    std::pair<int, int> recolored_pair{0, 0};
};

/// k-coloring of a digraph with feedback vertex set f, |f| == k and maximum
/// degree at most 4k-3; nullopt iff D[N[f]] is not k-colorable.
/// Throws NotAFeedbackSet, DegreeTooHigh, WrongFvsSize.
std::optional<Coloring> solve_fvs_degree(const Digraph& d, const VertexSet& f, int k, const SearchLimits& limits = {},
                                         FvsSolveStats* stats = nullptr);

}  // namespace dichro

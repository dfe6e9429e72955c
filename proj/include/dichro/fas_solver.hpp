#pragma once

#include <optional>
#include <vector>

#include "dichro/digraph.hpp"
#include "dichro/fvs_solver.hpp"
#include "dichro/oracle.hpp"

namespace dichro {

/// Sorted endpoints of the given arcs, V(F).
VertexSet arc_endpoints(const std::vector<Arc>& arcs);

/// Colors V(f_arcs) with 1..k so that every arc of f_arcs is bichromatic.
/// Vertices incident on at least k arcs of f_arcs get distinct colors in
/// increasing id order; every other vertex of V(f_arcs), in increasing id
/// order, takes the smallest color absent from its f_arcs-neighbors. Vertices
/// outside V(f_arcs) stay 0. c0 must be a proper coloring of D[V(f_arcs)]
/// whose classes are each incident on at most 2k-2 arcs of f_arcs.
/// Throws PreconditionViolated; nullopt if the greedy step gets stuck.
std::optional<PartialColoring> rainbow_color_fas(const Digraph& d, const std::vector<Arc>& f_arcs, int k,
                                                 const PartialColoring& c0);

struct FasSolveStats {
    std::uint64_t oracle_nodes = 0;
    int peel_steps = 0;  // classes removed before the rainbow step
    bool used_rainbow = false;
};

/// k-coloring of a digraph with feedback arc set f_arcs, |f_arcs| <= k^2-1;
/// nullopt iff D[V(f_arcs)] is not k-colorable.
/// Throws NotAFeedbackSet, TooManyArcs, OutOfRange.
std::optional<Coloring> solve_fas(const Digraph& d, const std::vector<Arc>& f_arcs, int k,
                                  const SearchLimits& limits = {}, FasSolveStats* stats = nullptr);

}  // namespace dichro

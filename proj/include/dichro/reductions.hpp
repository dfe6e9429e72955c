#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dichro/cnf.hpp"
#include "dichro/digraph.hpp"
#include "dichro/validation.hpp"

namespace dichro {

/// Output of to_restricted_3sat with the bookkeeping needed to map a
/// satisfying assignment back to the input formula.
struct RestrictedCnf {
    CnfFormula formula;
    /// Per output variable (index v-1): the input variable it copies, or 0.
    std::vector<int> origin;
    /// Per input variable (index v-1): an output variable with the same truth
    /// value in every satisfying assignment, or 0 if the variable vanished.
    std::vector<int> representative;
};

/// Equisatisfiable Restricted-3-SAT instance: duplicate literals merged,
/// tautologies dropped, unit clauses (l) padded to (l | y) & (l | -y),
/// variables occurring at least four times (or with one literal three times)
/// split along an implication cycle, and every negative literal -x replaced
/// by a fresh x' together with (-x | -x').
/// Throws ClauseTooLarge, EmptyClause, OutOfRange.
RestrictedCnf to_restricted_3sat(const CnfFormula& phi);

/// Assignment for the variables 1..n of a source formula given one for the
/// encoded formula and a representative table (0 entries become false).
Assignment project_assignment(const std::vector<int>& representative, const Assignment& encoded);

enum class RoleKind {
    Palette,           // v_i / v^i                       color
    PaletteRow,        // v^i_{row,in|out}                color, row, out
    ClauseLiteral,     // l_{clause,position}             clause, position, literal
    ClauseSeparator,   // w_{clause,position}             clause, position
    VariableLink,      // w'_{variable,clause,neg_clause} variable, clause, neg_clause
    Hub,               // u
    GroupVertex,       // vertex `position` of V_group    group, position
    Satisfier,         // s^position of S_{clause,group,code}
    Connector,         // p from S_{clause,group,code} to S_{clause,next_group,next_code}
    AssignmentLiteral, // x_i / -x_i of the NAE assignment part   literal
    SatisfactionLiteral,  // NAE clause-cycle vertex                clause, position, literal
};

std::string to_string(RoleKind kind);
std::optional<RoleKind> role_kind_from_string(const std::string& name);

/// Role of a vertex in a reduction output. Fields not used by the kind stay
/// 0. Indices are 1-based.
struct Role {
    RoleKind kind = RoleKind::Palette;
    int color = 0;
    int row = 0;
    bool out = false;
    int clause = 0;
    int position = 0;
    int literal = 0;
    int variable = 0;
    int neg_clause = 0;
    int group = 0;
    int code = 0;
    int next_group = 0;
    int next_code = 0;

    bool operator==(const Role&) const = default;
};

enum class ReductionTarget { Dfvs, Degree, Treedepth, Nae };

std::string to_string(ReductionTarget target);
/// Throws SyntaxError for unknown names.
ReductionTarget reduction_target_from_string(const std::string& name);

struct ReductionCertificate {
    ReductionTarget target = ReductionTarget::Dfvs;
    int k = 2;
    int source_vars = 0;
    /// The formula the graph encodes, in the variables the roles refer to.
    CnfFormula formula;
    /// Per source variable: encoded variable carrying its value, or 0.
    std::vector<int> representative;
    /// Per encoded variable: 1 or -1 when fixed by simplification, else 0.
    std::vector<int> fixed;
    std::vector<Role> roles;
    std::optional<VertexSet> declared_dfvs;
    std::optional<std::vector<Arc>> declared_fas;
    /// Elimination forest as a parent array (-1 for roots).
    std::optional<std::vector<int>> td_forest;
    /// Encoded variables of each group (treedepth target).
    std::vector<std::vector<int>> groups;
    /// rho[g][code]: vertices of V_g in the order translating assignment code.
    std::vector<std::vector<std::vector<Vertex>>> rho;

    bool operator==(const ReductionCertificate&) const = default;
};

struct Reduction {
    Digraph graph;
    ReductionCertificate certificate;
};

/// How reduce_dfvs_k treats variables that occur with one polarity only.
/// Keep builds the graph as is (such variables get no w' vertices), Simplify
/// fixes pure literals to a fixpoint and drops satisfied clauses, Reject
/// throws VariablePolarityMissing.
enum class PolarityPolicy { Keep, Simplify, Reject };

/// Digraph with feedback vertex set {v_1..v_k} that is k-colorable iff phi
/// is satisfiable. Vertices: v_1..v_k, then each clause path
/// l_1 w_1 l_2 [w_2 l_3], then the w' vertices by variable. A formula left
/// without clauses is replaced by (a | b) & (-a | -b).
/// Throws NotRestricted, VariablePolarityMissing.
Reduction reduce_dfvs_k(const CnfFormula& phi, int k, PolarityPolicy policy = PolarityPolicy::Keep);

/// Assignment of the source formula read from a proper coloring of a
/// reduce_dfvs_k or reduce_bounded_degree output: after renaming colors so
/// palette vertex i has color i, x is true iff its negative literal vertex
/// has color 2 (true when there is none). Throws ImproperColoring.
Assignment extract_assignment_dfvs(const Reduction& r, const Coloring& c);

struct PaletteGadget {
    Digraph graph;
    std::vector<Role> roles;
};

/// Index of a gadget vertex: v^i is i-1; v^i_{row,in} and v^i_{row,out}
/// follow row by row.
Vertex palette_vertex(int k, int color);
Vertex palette_row_vertex(int k, int color, int row, bool out);

/// Bidirected k-clique v^1..v^k plus M rows of 2k vertices.
PaletteGadget build_palette_gadget(int k, int rows);

/// reduce_dfvs_k with the palette clique replaced by the gadget; the j-th
/// non-palette vertex is attached through row j. Declares the feedback
/// vertex set {v^i} and a feedback arc set of k^2 arcs.
Reduction reduce_bounded_degree(const CnfFormula& phi, int k, PolarityPolicy policy = PolarityPolicy::Keep);

struct TreedepthParams {
    /// Number of variable groups; 0 picks max(1, ceil(log2 n)).
    int groups = 0;
};

/// Least r with r! >= 2^bits.
int min_factorial_size(int bits);

/// 2-colorable iff phi is satisfiable. Vertices: hub u, groups V_1.., then
/// per clause its S-sets in (group, code) order followed by its connectors.
/// Throws EmptyClause, ClauseTooLarge, GroupSizeInfeasible.
Reduction reduce_treedepth(const CnfFormula& phi, const TreedepthParams& params = {});

/// Throws ImproperColoring.
Assignment extract_assignment_treedepth(const Reduction& r, const Coloring& c);

/// Occurrence cap for NAE instances: duplicate literals merged, clauses
/// containing x and -x dropped, and every variable with a literal occurring
/// more than twice split into copies chained by NAE(-x_i, x_{i+1}).
/// Throws InvalidClause, ClauseTooLarge.
RestrictedCnf cap_nae_occurrences(const CnfFormula& phi);

/// 2-colorable iff phi is NAE-satisfiable, maximum degree at most 6.
/// Vertex 2(i-1) is x_i, 2(i-1)+1 is -x_i; clause cycles follow.
Reduction reduce_nae_degree6(const CnfFormula& phi);

/// x_i is true iff the assignment vertex x_i has color 1.
Assignment extract_assignment_nae(const Reduction& r, const Coloring& c);

/// Whether the certificate's source formula is (NAE-)satisfied by a.
bool source_satisfied(const ReductionCertificate& cert, const CnfFormula& source, const Assignment& a);

/// Parent array check: a forest in which every arc joins a vertex and one
/// of its ancestors. Returns the depth (number of vertices on the longest
/// root path) through `depth` when valid.
ValidationResult validate_elimination_forest(const Digraph& d, const std::vector<int>& parent, int* depth = nullptr);

}  // namespace dichro

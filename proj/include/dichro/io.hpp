#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dichro/cnf.hpp"
#include "dichro/digraph.hpp"
#include "dichro/reductions.hpp"
#include "dichro/twdp.hpp"

namespace dichro {

// All formats are 1-indexed on disk and 0-indexed in memory. Lines starting
// with 'c' are comments. Parse errors carry the offending line number.

/// `p digraph <n> <m>` followed by m lines `a <u> <v>`.
/// Throws SyntaxError, SelfLoop, DuplicateArc.
Digraph parse_digraph(std::string_view text);
/// Header plus arcs in lexicographic order.
std::string emit_digraph(const Digraph& d);

/// DIMACS cnf. Throws SyntaxError, EmptyClause.
CnfFormula parse_cnf(std::string_view text);
std::string emit_cnf(const CnfFormula& phi);

/// PACE td: `s td <bags> <width+1> <n>`, `b <id> <v...>`, then `<i> <j>`
/// tree edges. Structure is not validated here. Throws SyntaxError.
TreeDecomposition parse_td(std::string_view text);
std::string emit_td(const TreeDecomposition& td);

/// Whitespace separated colors, or a JSON document with a "coloring"
/// array (as printed by `solve`). Throws SyntaxError.
std::vector<int> parse_coloring(std::string_view text);
std::string emit_coloring(const std::vector<int>& colors);

/// Line-oriented certificate sidecar: TARGET, K, SOURCE_VARS, FORMULA and
/// CLAUSE, REPRESENTATIVE, FIXED, then ROLE / DFVS / FAS / TDFOREST / GROUP /
/// RHO sections. Throws SyntaxError.
ReductionCertificate parse_certificate(std::string_view text);
std::string emit_certificate(const ReductionCertificate& cert);

/// Reads a whole file; "-" reads standard input. Throws SyntaxError when the
/// file cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace dichro

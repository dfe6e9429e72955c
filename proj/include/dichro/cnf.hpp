#pragma once

#include <optional>
#include <vector>

#include "dichro/validation.hpp"

namespace dichro {

/// CNF over variables 1..num_vars; a literal is +v or -v (DIMACS style).
struct CnfFormula {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;

    bool operator==(const CnfFormula&) const = default;
};

/// Truth values indexed by variable - 1.
using Assignment = std::vector<bool>;

/// Throws EmptyClause or OutOfRange.
void validate_formula(const CnfFormula& phi);

bool literal_value(int literal, const Assignment& a);
bool satisfies(const CnfFormula& phi, const Assignment& a);
/// Every clause has a true and a false literal.
bool nae_satisfies(const CnfFormula& phi, const Assignment& a);

/// Complete DPLL search (unit propagation, shortest-clause branching).
std::optional<Assignment> sat_solve(const CnfFormula& phi);
/// Exhaustive backtracking over variables 1..n; only for small n.
std::optional<Assignment> sat_bruteforce(const CnfFormula& phi);
std::optional<Assignment> nae_sat_bruteforce(const CnfFormula& phi);

/// Monotone clauses of size 2 or 3; each variable at most twice positive and
/// at most once negative.
ValidationResult check_restricted(const CnfFormula& phi);

}  // namespace dichro

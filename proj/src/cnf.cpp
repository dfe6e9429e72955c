#include "dichro/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <string>

#include "dichro/error.hpp"

namespace dichro {

namespace {

// 0 unassigned, 1 true, -1 false
using Partial = std::vector<signed char>;

int literal_state(int literal, const Partial& p) {
    int v = p[std::abs(literal) - 1];
    return literal > 0 ? v : -v;
}

bool dpll(const CnfFormula& phi, Partial& p) {
    std::vector<int> trail;
    auto undo = [&] {
        for (int v : trail) p[v] = 0;
    };
    // unit propagation to a fixpoint
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& clause : phi.clauses) {
            int unassigned = 0, last = 0;
            bool sat = false;
            for (int lit : clause) {
                int s = literal_state(lit, p);
                if (s > 0) {
                    sat = true;
                    break;
                }
                if (s == 0) {
                    ++unassigned;
                    last = lit;
                }
            }
            if (sat) continue;
            if (unassigned == 0) {
                undo();
                return false;
            }
            if (unassigned == 1) {
                int v = std::abs(last) - 1;
                p[v] = last > 0 ? 1 : -1;
                trail.push_back(v);
                changed = true;
            }
        }
    }
    const std::vector<int>* best = nullptr;
    int best_free = 0;
    for (const auto& clause : phi.clauses) {
        int free = 0;
        bool sat = false;
        for (int lit : clause) {
            int s = literal_state(lit, p);
            sat = sat || s > 0;
            free += s == 0;
        }
        if (!sat && (!best || free < best_free)) {
            best = &clause;
            best_free = free;
        }
    }
    if (!best) return true;
    int branch = 0;
    for (int lit : *best)
        if (literal_state(lit, p) == 0) {
            branch = lit;
            break;
        }
    int v = std::abs(branch) - 1;
    for (signed char value : {static_cast<signed char>(branch > 0 ? 1 : -1), static_cast<signed char>(branch > 0 ? -1 : 1)}) {
        p[v] = value;
        if (dpll(phi, p)) return true;
        p[v] = 0;
    }
    undo();
    return false;
}

std::optional<Assignment> backtrack(const CnfFormula& phi, const std::function<bool(const std::vector<int>&, const Assignment&, int)>& clause_ok) {
    const int n = phi.num_vars;
    // clauses become checkable once their largest variable is assigned
    std::vector<std::vector<const std::vector<int>*>> ready(n + 1);
    for (const auto& clause : phi.clauses) {
        int top = 0;
        for (int lit : clause) top = std::max(top, std::abs(lit));
        ready[top].push_back(&clause);
    }
    Assignment a(n, false);
    for (const auto* c : ready[0])
        if (!clause_ok(*c, a, 0)) return std::nullopt;
    std::function<bool(int)> go = [&](int v) {
        if (v > n) return true;
        for (bool value : {false, true}) {
            a[v - 1] = value;
            bool ok = true;
            for (const auto* c : ready[v])
                if (!clause_ok(*c, a, v)) {
                    ok = false;
                    break;
                }
            if (ok && go(v + 1)) return true;
        }
        return false;
    };
    if (!go(1)) return std::nullopt;
    return a;
}

}  // namespace

void validate_formula(const CnfFormula& phi) {
    if (phi.num_vars < 0) throw Error(ErrorKind::OutOfRange, "negative variable count");
    for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
        if (phi.clauses[i].empty()) throw Error(ErrorKind::EmptyClause, "clause " + std::to_string(i + 1) + " is empty");
        for (int lit : phi.clauses[i])
            if (lit == 0 || std::abs(lit) > phi.num_vars)
                throw Error(ErrorKind::OutOfRange, "literal " + std::to_string(lit) + " in clause " +
                                                       std::to_string(i + 1) + " is outside 1.." +
                                                       std::to_string(phi.num_vars));
    }
}

bool literal_value(int literal, const Assignment& a) {
    bool v = a[std::abs(literal) - 1];
    return literal > 0 ? v : !v;
}

bool satisfies(const CnfFormula& phi, const Assignment& a) {
    for (const auto& clause : phi.clauses) {
        bool sat = false;
        for (int lit : clause) sat = sat || literal_value(lit, a);
        if (!sat) return false;
    }
    return true;
}

bool nae_satisfies(const CnfFormula& phi, const Assignment& a) {
    for (const auto& clause : phi.clauses) {
        bool any_true = false, any_false = false;
        for (int lit : clause) (literal_value(lit, a) ? any_true : any_false) = true;
        if (!any_true || !any_false) return false;
    }
    return true;
}

std::optional<Assignment> sat_solve(const CnfFormula& phi) {
    validate_formula(phi);
    Partial p(phi.num_vars, 0);
    if (!dpll(phi, p)) return std::nullopt;
    Assignment a(phi.num_vars);
    for (int v = 0; v < phi.num_vars; ++v) a[v] = p[v] > 0;
    return a;
}

std::optional<Assignment> sat_bruteforce(const CnfFormula& phi) {
    validate_formula(phi);
    return backtrack(phi, [](const std::vector<int>& clause, const Assignment& a, int) {
        for (int lit : clause)
            if (literal_value(lit, a)) return true;
        return false;
    });
}

std::optional<Assignment> nae_sat_bruteforce(const CnfFormula& phi) {
    validate_formula(phi);
    return backtrack(phi, [](const std::vector<int>& clause, const Assignment& a, int) {
        bool any_true = false, any_false = false;
        for (int lit : clause) (literal_value(lit, a) ? any_true : any_false) = true;
        return any_true && any_false;
    });
}

ValidationResult check_restricted(const CnfFormula& phi) {
    std::vector<int> pos(phi.num_vars + 1, 0), neg(phi.num_vars + 1, 0);
    for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
        const auto& clause = phi.clauses[i];
        const std::string where = "clause " + std::to_string(i + 1);
        if (clause.size() < 2 || clause.size() > 3) return {false, where + " has size " + std::to_string(clause.size())};
        bool positive = clause[0] > 0;
        for (int lit : clause) {
            if (lit == 0 || std::abs(lit) > phi.num_vars) return {false, where + " has an out-of-range literal"};
            if ((lit > 0) != positive) return {false, where + " mixes positive and negative literals"};
            ++(lit > 0 ? pos : neg)[std::abs(lit)];
        }
        for (std::size_t a = 0; a < clause.size(); ++a)
            for (std::size_t b = a + 1; b < clause.size(); ++b)
                if (clause[a] == clause[b]) return {false, where + " repeats a literal"};
    }
    for (int v = 1; v <= phi.num_vars; ++v) {
        if (pos[v] > 2) return {false, "variable " + std::to_string(v) + " occurs positively " + std::to_string(pos[v]) + " times"};
        if (neg[v] > 1) return {false, "variable " + std::to_string(v) + " occurs negatively " + std::to_string(neg[v]) + " times"};
    }
    return {};
}

}  // namespace dichro

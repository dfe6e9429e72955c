#include <algorithm>
#include <cstdlib>
#include <string>

#include "dichro/error.hpp"
#include "dichro/reductions.hpp"

namespace dichro {

namespace {

// Merged duplicates; nullopt for a clause containing x and -x.
std::optional<std::vector<int>> normalize_clause(const std::vector<int>& clause) {
    std::vector<int> out;
    for (int lit : clause) {
        if (std::find(out.begin(), out.end(), -lit) != out.end()) return std::nullopt;
        if (std::find(out.begin(), out.end(), lit) == out.end()) out.push_back(lit);
    }
    return out;
}

void require_width(const CnfFormula& phi) {
    validate_formula(phi);
    for (std::size_t i = 0; i < phi.clauses.size(); ++i)
        if (phi.clauses[i].size() > 3)
            throw Error(ErrorKind::ClauseTooLarge, "clause " + std::to_string(i + 1) + " has " +
                                                       std::to_string(phi.clauses[i].size()) + " literals");
}

struct Occurrences {
    std::vector<int> pos, neg;
    explicit Occurrences(const CnfFormula& f) : pos(f.num_vars + 1, 0), neg(f.num_vars + 1, 0) {
        for (const auto& clause : f.clauses)
            for (int lit : clause) ++(lit > 0 ? pos : neg)[std::abs(lit)];
    }
    int total(int v) const { return pos[v] + neg[v]; }
};

// Renames variable v of `f` into copies: the t-th occurrence of v (in clause
// order) becomes copy t when split[v], else the single copy. Returns the new
// formula; first_copy[v] and copies[v] describe the numbering.
struct SplitResult {
    CnfFormula formula;
    std::vector<int> first_copy;
    std::vector<int> copies;
};

SplitResult split_occurrences(const CnfFormula& f, const std::vector<char>& split) {
    Occurrences occ(f);
    SplitResult r;
    r.first_copy.assign(f.num_vars + 1, 0);
    r.copies.assign(f.num_vars + 1, 0);
    int next = 1;
    for (int v = 1; v <= f.num_vars; ++v) {
        if (occ.total(v) == 0) continue;
        r.first_copy[v] = next;
        r.copies[v] = split[v] ? occ.total(v) : 1;
        next += r.copies[v];
    }
    r.formula.num_vars = next - 1;
    std::vector<int> seen(f.num_vars + 1, 0);
    for (const auto& clause : f.clauses) {
        std::vector<int> out;
        for (int lit : clause) {
            int v = std::abs(lit);
            int copy = r.first_copy[v] + (split[v] ? seen[v]++ : 0);
            out.push_back(lit > 0 ? copy : -copy);
        }
        r.formula.clauses.push_back(std::move(out));
    }
    return r;
}

}  // namespace

RestrictedCnf to_restricted_3sat(const CnfFormula& phi) {
    require_width(phi);
    const int n = phi.num_vars;

    CnfFormula padded{n, {}};
    for (const auto& clause : phi.clauses) {
        auto c = normalize_clause(clause);
        if (!c) continue;
        if (c->size() == 1) {
            int y = ++padded.num_vars;
            padded.clauses.push_back({(*c)[0], y});
            padded.clauses.push_back({(*c)[0], -y});
        } else {
            padded.clauses.push_back(std::move(*c));
        }
    }

    Occurrences occ(padded);
    std::vector<char> split(padded.num_vars + 1, 0);
    for (int v = 1; v <= padded.num_vars; ++v)
        split[v] = occ.total(v) >= 4 || occ.pos[v] >= 3 || occ.neg[v] >= 3;
    SplitResult s = split_occurrences(padded, split);
    CnfFormula f = s.formula;
    for (int v = 1; v <= padded.num_vars; ++v) {
        if (!split[v]) continue;
        const int first = s.first_copy[v], count = s.copies[v];
        for (int t = 0; t < count; ++t) f.clauses.push_back({-(first + t), first + (t + 1) % count});
    }

    const int base = f.num_vars;
    RestrictedCnf r;
    r.formula.num_vars = 2 * base;
    for (const auto& clause : f.clauses) {
        std::vector<int> out;
        for (int lit : clause) out.push_back(lit > 0 ? lit : base - lit);
        r.formula.clauses.push_back(std::move(out));
    }
    for (int b = 1; b <= base; ++b) r.formula.clauses.push_back({-b, -(base + b)});

    r.origin.assign(2 * base, 0);
    r.representative.assign(n, 0);
    for (int v = 1; v <= n; ++v) {
        if (s.first_copy[v] == 0) continue;
        r.representative[v - 1] = s.first_copy[v];
        for (int t = 0; t < s.copies[v]; ++t) r.origin[s.first_copy[v] + t - 1] = v;
    }
    return r;
}

RestrictedCnf cap_nae_occurrences(const CnfFormula& phi) {
    require_width(phi);
    const int n = phi.num_vars;
    CnfFormula cleaned{n, {}};
    for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
        auto c = normalize_clause(phi.clauses[i]);
        if (!c) continue;
        if (c->size() < 2)
            throw Error(ErrorKind::InvalidClause, "NAE clause " + std::to_string(i + 1) + " has fewer than two distinct literals");
        cleaned.clauses.push_back(std::move(*c));
    }
    Occurrences occ(cleaned);
    std::vector<char> split(n + 1, 0);
    for (int v = 1; v <= n; ++v) split[v] = occ.pos[v] > 2 || occ.neg[v] > 2;
    SplitResult s = split_occurrences(cleaned, split);
    RestrictedCnf r;
    r.formula = s.formula;
    for (int v = 1; v <= n; ++v) {
        if (!split[v]) continue;
        const int first = s.first_copy[v], count = s.copies[v];
        for (int t = 0; t < count; ++t) r.formula.clauses.push_back({-(first + t), first + (t + 1) % count});
    }
    r.origin.assign(r.formula.num_vars, 0);
    r.representative.assign(n, 0);
    for (int v = 1; v <= n; ++v) {
        if (s.first_copy[v] == 0) continue;
        r.representative[v - 1] = s.first_copy[v];
        for (int t = 0; t < s.copies[v]; ++t) r.origin[s.first_copy[v] + t - 1] = v;
    }
    return r;
}

Assignment project_assignment(const std::vector<int>& representative, const Assignment& encoded) {
    Assignment a(representative.size(), false);
    for (std::size_t v = 0; v < representative.size(); ++v)
        if (representative[v] != 0) a[v] = encoded[representative[v] - 1];
    return a;
}

}  // namespace dichro

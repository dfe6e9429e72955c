#include <cstdlib>
#include <string>

#include "dichro/error.hpp"
#include "dichro/reductions.hpp"

namespace dichro {

namespace {

Vertex assignment_vertex(int literal) { return 2 * (std::abs(literal) - 1) + (literal > 0 ? 0 : 1); }

}  // namespace

Reduction reduce_nae_degree6(const CnfFormula& phi) {
    RestrictedCnf capped = cap_nae_occurrences(phi);
    const CnfFormula& f = capped.formula;
    Reduction r;
    auto& cert = r.certificate;
    cert.target = ReductionTarget::Nae;
    cert.k = 2;
    cert.source_vars = phi.num_vars;
    cert.formula = f;
    cert.representative = capped.representative;
    cert.fixed.assign(f.num_vars, 0);

    DigraphBuilder b;
    for (int x = 1; x <= f.num_vars; ++x) {
        for (int lit : {x, -x}) {
            cert.roles.push_back({.kind = RoleKind::AssignmentLiteral, .literal = lit});
            b.add_vertex();
        }
        b.add_digon(assignment_vertex(x), assignment_vertex(-x));
    }
    for (int j = 1; j <= static_cast<int>(f.clauses.size()); ++j) {
        const auto& clause = f.clauses[j - 1];
        const Vertex first = b.num_vertices();
        const int size = static_cast<int>(clause.size());
        for (int p = 1; p <= size; ++p) {
            cert.roles.push_back({.kind = RoleKind::SatisfactionLiteral, .clause = j, .position = p, .literal = clause[p - 1]});
            Vertex v = b.add_vertex();
            b.add_digon(v, assignment_vertex(-clause[p - 1]));
        }
        if (size == 2) {
            b.add_digon(first, first + 1);
        } else {
            for (int p = 0; p < size; ++p) b.add_arc(first + p, first + (p + 1) % size);
        }
    }
    r.graph = b.build();
    return r;
}

Assignment extract_assignment_nae(const Reduction& r, const Coloring& c) {
    bool proper = false;
    try {
        proper = is_proper_coloring(r.graph, c) && c.k == 2;
    } catch (const Error&) {
    }
    if (!proper) throw Error(ErrorKind::ImproperColoring, "coloring is not a proper 2-coloring of the reduction output");
    const auto& cert = r.certificate;
    Assignment encoded(cert.formula.num_vars);
    for (int x = 1; x <= cert.formula.num_vars; ++x) encoded[x - 1] = c.colors[assignment_vertex(x)] == 1;
    return project_assignment(cert.representative, encoded);
}

}  // namespace dichro

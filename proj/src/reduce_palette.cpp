#include <algorithm>
#include <cstdlib>
#include <string>

#include "dichro/error.hpp"
#include "dichro/reductions.hpp"

namespace dichro {

namespace {

struct Built {
    Digraph graph;
    std::vector<Role> roles;
};

Built build_dfvs_graph(const CnfFormula& f, int k) {
    DigraphBuilder b;
    std::vector<Role> roles;
    auto add = [&](Role role) {
        roles.push_back(role);
        return b.add_vertex();
    };
    for (int i = 1; i <= k; ++i) add({.kind = RoleKind::Palette, .color = i});
    const Vertex v1 = 0, v2 = 1;

    std::vector<std::vector<std::pair<int, Vertex>>> pos_occ(f.num_vars + 1), neg_occ(f.num_vars + 1);
    for (int j = 1; j <= static_cast<int>(f.clauses.size()); ++j) {
        const auto& clause = f.clauses[j - 1];
        Vertex prev = -1;
        for (int p = 1; p <= static_cast<int>(clause.size()); ++p) {
            int lit = clause[p - 1];
            if (p > 1) {
                Vertex w = add({.kind = RoleKind::ClauseSeparator, .clause = j, .position = p - 1});
                b.add_arc(prev, w);
                b.add_digon(v1, w);
                prev = w;
            }
            Vertex l = add({.kind = RoleKind::ClauseLiteral, .clause = j, .position = p, .literal = lit});
            if (prev >= 0) b.add_arc(prev, l);
            else b.add_arc(v2, l);
            prev = l;
            if (lit > 0) {
                b.add_arc(v1, l);
                pos_occ[lit].push_back({j, l});
            } else {
                b.add_arc(l, v1);
                neg_occ[-lit].push_back({j, l});
            }
        }
        b.add_arc(prev, v2);
    }
    for (int x = 1; x <= f.num_vars; ++x)
        for (auto [i1, lp] : pos_occ[x])
            for (auto [i2, ln] : neg_occ[x]) {
                Vertex w = add({.kind = RoleKind::VariableLink, .clause = i1, .variable = x, .neg_clause = i2});
                b.add_arc(lp, w);
                b.add_arc(w, ln);
                b.add_digon(v2, w);
            }
    b.add_digon(v1, v2);
    const int n = b.num_vertices();
    for (Vertex t = 2; t < k; ++t)
        for (Vertex x = 0; x < n; ++x)
            if (x < 2 || x > t) b.add_digon(t, x);
    return {b.build(), std::move(roles)};
}

}  // namespace

std::string to_string(ReductionTarget target) {
    switch (target) {
        case ReductionTarget::Dfvs: return "dfvs";
        case ReductionTarget::Degree: return "degree";
        case ReductionTarget::Treedepth: return "treedepth";
        case ReductionTarget::Nae: return "nae";
    }
    return "?";
}

ReductionTarget reduction_target_from_string(const std::string& name) {
    for (auto t : {ReductionTarget::Dfvs, ReductionTarget::Degree, ReductionTarget::Treedepth, ReductionTarget::Nae})
        if (to_string(t) == name) return t;
    throw Error(ErrorKind::SyntaxError, "unknown reduction target '" + name + "'");
}

Reduction reduce_dfvs_k(const CnfFormula& phi, int k, PolarityPolicy policy) {
    if (k < 2) throw Error(ErrorKind::PreconditionViolated, "k must be at least 2");
    if (auto check = check_restricted(phi); !check) throw Error(ErrorKind::NotRestricted, check.reason);

    CnfFormula f = phi;
    std::vector<int> fixed(phi.num_vars, 0);
    auto polarity = [&] {
        std::vector<int> pos(f.num_vars + 1, 0), neg(f.num_vars + 1, 0);
        for (const auto& clause : f.clauses)
            for (int lit : clause) ++(lit > 0 ? pos : neg)[std::abs(lit)];
        return std::pair{pos, neg};
    };
    if (policy == PolarityPolicy::Reject) {
        auto [pos, neg] = polarity();
        for (int v = 1; v <= f.num_vars; ++v)
            if ((pos[v] == 0) != (neg[v] == 0))
                throw Error(ErrorKind::VariablePolarityMissing,
                            "variable " + std::to_string(v) + " occurs only " + (pos[v] ? "positively" : "negatively"));
    } else if (policy == PolarityPolicy::Simplify) {
        for (bool changed = true; changed;) {
            changed = false;
            auto [pos, neg] = polarity();
            for (int v = 1; v <= f.num_vars; ++v)
                if ((pos[v] == 0) != (neg[v] == 0)) {
                    fixed[v - 1] = pos[v] ? 1 : -1;
                    changed = true;
                }
            std::erase_if(f.clauses, [&](const std::vector<int>& clause) {
                return std::any_of(clause.begin(), clause.end(), [&](int lit) {
                    int s = fixed[std::abs(lit) - 1];
                    return lit > 0 ? s == 1 : s == -1;
                });
            });
        }
    }
    if (f.clauses.empty()) {
        int a = f.num_vars + 1, c = f.num_vars + 2;
        f.num_vars += 2;
        f.clauses = {{a, c}, {-a, -c}};
        fixed.resize(f.num_vars, 0);
    }

    Built built = build_dfvs_graph(f, k);
    Reduction r{std::move(built.graph), {}};
    auto& cert = r.certificate;
    cert.target = ReductionTarget::Dfvs;
    cert.k = k;
    cert.source_vars = phi.num_vars;
    cert.formula = f;
    for (int v = 1; v <= phi.num_vars; ++v) cert.representative.push_back(v);
    cert.fixed = fixed;
    cert.roles = std::move(built.roles);
    VertexSet dfvs;
    for (Vertex i = 0; i < k; ++i) dfvs.push_back(i);
    cert.declared_dfvs = dfvs;
    return r;
}

Assignment extract_assignment_dfvs(const Reduction& r, const Coloring& c) {
    const auto& cert = r.certificate;
    bool proper = false;
    try {
        proper = is_proper_coloring(r.graph, c);
    } catch (const Error&) {
    }
    if (!proper) throw Error(ErrorKind::ImproperColoring, "coloring is not a proper coloring of the reduction output");
    std::vector<int> rename(c.k + 1, 0);
    for (Vertex v = 0; v < r.graph.num_vertices(); ++v)
        if (cert.roles[v].kind == RoleKind::Palette) rename[c.colors[v]] = cert.roles[v].color;
    Assignment encoded(cert.formula.num_vars, true);
    for (Vertex v = 0; v < r.graph.num_vertices(); ++v) {
        const Role& role = cert.roles[v];
        if (role.kind == RoleKind::ClauseLiteral && role.literal < 0)
            encoded[-role.literal - 1] = rename[c.colors[v]] == 2;
    }
    for (std::size_t v = 0; v < cert.fixed.size(); ++v)
        if (cert.fixed[v] != 0) encoded[v] = cert.fixed[v] > 0;
    return project_assignment(cert.representative, encoded);
}

Vertex palette_vertex(int, int color) { return color - 1; }

Vertex palette_row_vertex(int k, int color, int row, bool out) {
    return k + (row - 1) * 2 * k + 2 * (color - 1) + (out ? 1 : 0);
}

PaletteGadget build_palette_gadget(int k, int rows) {
    if (k < 2 || rows < 1) throw Error(ErrorKind::PreconditionViolated, "palette gadget needs k >= 2 and at least one row");
    PaletteGadget g;
    const int n = k + 2 * k * rows;
    for (int i = 1; i <= k; ++i) g.roles.push_back({.kind = RoleKind::Palette, .color = i});
    for (int l = 1; l <= rows; ++l)
        for (int i = 1; i <= k; ++i)
            for (bool out : {false, true}) g.roles.push_back({.kind = RoleKind::PaletteRow, .color = i, .row = l, .out = out});
    auto V = [&](int i) { return palette_vertex(k, i); };
    auto in = [&](int i, int l) { return palette_row_vertex(k, i, l, false); };
    auto out = [&](int i, int l) { return palette_row_vertex(k, i, l, true); };
    std::vector<Arc> arcs;
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j) {
            if (i != j) arcs.push_back({V(i), V(j)});
            if (j >= i) arcs.push_back({V(i), out(j, 1)});
            if (j != i) arcs.push_back({V(i), in(j, 1)});
            if (j <= i) arcs.push_back({in(j, 1), V(i)});
        }
    for (int l = 1; l <= rows; ++l)
        for (int i = 1; i <= k; ++i)
            for (int j = i + 1; j <= k; ++j) {
                arcs.push_back({out(j, l), out(i, l)});
                arcs.push_back({out(i, l), in(j, l)});
                arcs.push_back({in(j, l), in(i, l)});
                arcs.push_back({out(j, l), in(i, l)});
            }
    for (int l = 1; l < rows; ++l) {
        for (int i = 1; i <= k; ++i) {
            arcs.push_back({out(i, l), out(i, l + 1)});
            arcs.push_back({in(i, l + 1), in(i, l)});
        }
        for (int i = 1; i <= k; ++i)
            for (int j = i + 1; j <= k; ++j) {
                arcs.push_back({out(i, l), in(j, l + 1)});
                arcs.push_back({out(i, l), out(j, l + 1)});
                arcs.push_back({in(i, l + 1), in(j, l)});
                arcs.push_back({out(j, l), in(i, l + 1)});
            }
    }
    g.graph = Digraph(n, arcs);
    return g;
}

Reduction reduce_bounded_degree(const CnfFormula& phi, int k, PolarityPolicy policy) {
    Reduction base = reduce_dfvs_k(phi, k, policy);
    const int n = base.graph.num_vertices();
    const int rows = n - k;
    PaletteGadget gadget = build_palette_gadget(k, rows);
    const int offset = gadget.graph.num_vertices();
    auto moved = [&](Vertex u) { return offset + (u - k); };
    auto row = [&](Vertex u) { return u - k + 1; };

    std::vector<Arc> arcs(gadget.graph.arcs().begin(), gadget.graph.arcs().end());
    for (const Arc& a : base.graph.arcs()) {
        bool tail_palette = a.tail < k, head_palette = a.head < k;
        if (tail_palette && head_palette) continue;
        if (tail_palette) arcs.push_back({palette_row_vertex(k, a.tail + 1, row(a.head), true), moved(a.head)});
        else if (head_palette) arcs.push_back({moved(a.tail), palette_row_vertex(k, a.head + 1, row(a.tail), false)});
        else arcs.push_back({moved(a.tail), moved(a.head)});
    }
    Reduction r{Digraph(offset + rows, arcs), base.certificate};
    auto& cert = r.certificate;
    cert.target = ReductionTarget::Degree;
    cert.roles = gadget.roles;
    cert.roles.insert(cert.roles.end(), base.certificate.roles.begin() + k, base.certificate.roles.end());
    std::vector<Arc> fas;
    for (int i = 1; i <= k; ++i) {
        for (int j = i + 1; j <= k; ++j) fas.push_back({palette_vertex(k, j), palette_vertex(k, i)});
        for (int j = i + 1; j <= k; ++j) fas.push_back({palette_row_vertex(k, i, 1, false), palette_vertex(k, j)});
        fas.push_back({palette_row_vertex(k, i, 1, false), palette_vertex(k, i)});
    }
    std::sort(fas.begin(), fas.end());
    cert.declared_fas = fas;
    return r;
}

}  // namespace dichro

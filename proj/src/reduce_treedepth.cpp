#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>

#include "dichro/error.hpp"
#include "dichro/permutation.hpp"
#include "dichro/reductions.hpp"

namespace dichro {

namespace {

constexpr int kMaxGroupVars = 20;

struct SatisfierSet {
    int group = 0;
    int code = 0;
    std::vector<Vertex> vertices;
};

}  // namespace

int min_factorial_size(int bits) {
    if (bits < 0 || bits > 62) throw Error(ErrorKind::TooLarge, "group of " + std::to_string(bits) + " variables");
    const std::uint64_t need = std::uint64_t{1} << bits;
    int r = 1;
    while (factorial(r) < need) ++r;
    return r;
}

Reduction reduce_treedepth(const CnfFormula& phi, const TreedepthParams& params) {
    validate_formula(phi);
    for (std::size_t j = 0; j < phi.clauses.size(); ++j)
        if (phi.clauses[j].size() > 3)
            throw Error(ErrorKind::ClauseTooLarge, "clause " + std::to_string(j + 1) + " has more than three literals");
    const int n = phi.num_vars;
    int group_count = params.groups;
    if (group_count == 0 && n > 0) group_count = std::max(1, static_cast<int>(std::ceil(std::log2(n))));
    if (group_count < 0 || group_count > n || (n > 0 && group_count == 0))
        throw Error(ErrorKind::GroupSizeInfeasible,
                    std::to_string(group_count) + " groups for " + std::to_string(n) + " variables");

    Reduction r;
    auto& cert = r.certificate;
    cert.target = ReductionTarget::Treedepth;
    cert.k = 2;
    cert.source_vars = n;
    cert.formula = phi;
    for (int v = 1; v <= n; ++v) cert.representative.push_back(v);
    cert.fixed.assign(n, 0);

    std::vector<int> group_of(n + 1, 0), bit_of(n + 1, 0);
    for (int g = 0, v = 1; g < group_count; ++g) {
        int size = n / group_count + (g < n % group_count ? 1 : 0);
        if (size > kMaxGroupVars)
            throw Error(ErrorKind::GroupSizeInfeasible, "group " + std::to_string(g + 1) + " would hold " +
                                                            std::to_string(size) + " variables");
        cert.groups.emplace_back();
        for (int b = 0; b < size; ++b, ++v) {
            cert.groups[g].push_back(v);
            group_of[v] = g + 1;
            bit_of[v] = b;
        }
    }

    DigraphBuilder b;
    auto add = [&](Role role) {
        cert.roles.push_back(role);
        return b.add_vertex();
    };
    const Vertex hub = add({.kind = RoleKind::Hub});
    std::vector<std::vector<Vertex>> V(group_count);
    for (int g = 1; g <= group_count; ++g) {
        int size = min_factorial_size(static_cast<int>(cert.groups[g - 1].size()));
        for (int p = 1; p <= size; ++p) {
            Vertex x = add({.kind = RoleKind::GroupVertex, .position = p, .group = g});
            b.add_digon(hub, x);
            V[g - 1].push_back(x);
        }
        auto& table = cert.rho.emplace_back();
        for (int code = 0; code < (1 << cert.groups[g - 1].size()); ++code) {
            std::vector<Vertex> order;
            for (int idx : permutation_unrank(static_cast<std::uint64_t>(code), size)) order.push_back(V[g - 1][idx]);
            table.push_back(std::move(order));
        }
    }

    std::vector<int> parent;
    auto set_parent = [&](Vertex v, int p) {
        if (static_cast<int>(parent.size()) <= v) parent.resize(v + 1, -1);
        parent[v] = p;
    };
    Vertex chain = hub;
    set_parent(hub, -1);
    for (const auto& group : V)
        for (Vertex x : group) {
            set_parent(x, chain);
            chain = x;
        }

    for (int j = 1; j <= static_cast<int>(phi.clauses.size()); ++j) {
        const auto& clause = phi.clauses[j - 1];
        std::vector<int> touched;
        for (int lit : clause) touched.push_back(group_of[std::abs(lit)]);
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

        std::vector<SatisfierSet> sets;
        for (int g : touched) {
            const int bits = static_cast<int>(cert.groups[g - 1].size());
            for (int code = 0; code < (1 << bits); ++code) {
                bool sat = std::any_of(clause.begin(), clause.end(), [&](int lit) {
                    int v = std::abs(lit);
                    if (group_of[v] != g) return false;
                    bool value = (code >> bit_of[v]) & 1;
                    return lit > 0 ? value : !value;
                });
                if (!sat) continue;
                SatisfierSet s{g, code, {}};
                const auto& order = cert.rho[g - 1][code];
                for (int p = 1; p < static_cast<int>(order.size()); ++p) {
                    Vertex x = add({.kind = RoleKind::Satisfier, .clause = j, .position = p, .group = g, .code = code});
                    b.add_arc(order[p - 1], x);
                    b.add_arc(x, order[p]);
                    s.vertices.push_back(x);
                }
                sets.push_back(std::move(s));
            }
        }
        const int count = static_cast<int>(sets.size());
        std::vector<Vertex> connectors;
        for (int t = 0; t < count; ++t) {
            const auto& from = sets[t];
            const auto& to = sets[(t + 1) % count];
            Vertex p = add({.kind = RoleKind::Connector, .clause = j, .group = from.group, .code = from.code,
                            .next_group = to.group, .next_code = to.code});
            for (Vertex x : from.vertices) b.add_arc(x, p);
            for (Vertex x : to.vertices) b.add_arc(p, x);
            b.add_digon(p, V[0][0]);
            connectors.push_back(p);
        }

        // the closing connector breaks the cycle; the remaining path
        // S_0 p_0 S_1 ... S_{count-1} is halved recursively at connectors
        set_parent(connectors.back(), chain);
        std::function<void(int, int, Vertex)> halve = [&](int lo, int hi, Vertex above) {
            if (lo == hi) {
                for (Vertex x : sets[lo].vertices) set_parent(x, above);
                return;
            }
            int mid = (lo + hi - 1) / 2;
            set_parent(connectors[mid], above);
            halve(lo, mid, connectors[mid]);
            halve(mid + 1, hi, connectors[mid]);
        };
        halve(0, count - 1, connectors.back());
    }
    r.graph = b.build();
    parent.resize(r.graph.num_vertices(), -1);
    cert.td_forest = parent;
    return r;
}

Assignment extract_assignment_treedepth(const Reduction& r, const Coloring& c) {
    const auto& cert = r.certificate;
    bool proper = false;
    try {
        proper = is_proper_coloring(r.graph, c) && c.k == 2;
    } catch (const Error&) {
    }
    if (!proper) throw Error(ErrorKind::ImproperColoring, "coloring is not a proper 2-coloring of the reduction output");
    // after renaming, the hub has color 2 and every group vertex color 1
    const int one = 3 - c.colors[0];
    const int clauses = static_cast<int>(cert.formula.clauses.size());
    // chosen[j]: first satisfier set of clause j fully colored 1
    std::vector<std::optional<std::pair<int, int>>> chosen(clauses + 1);
    std::map<std::tuple<int, int, int>, bool> all_one;
    for (Vertex v = 0; v < r.graph.num_vertices(); ++v) {
        const Role& role = cert.roles[v];
        if (role.kind != RoleKind::Satisfier) continue;
        auto key = std::make_tuple(role.clause, role.group, role.code);
        auto [it, inserted] = all_one.emplace(key, true);
        it->second = it->second && c.colors[v] == one;
    }
    std::vector<std::optional<int>> code_of_group(cert.groups.size());
    for (const auto& [key, ok] : all_one) {
        auto [j, g, code] = key;
        if (!ok || chosen[j]) continue;
        chosen[j] = std::pair{g, code};
        auto& slot = code_of_group[g - 1];
        if (slot && *slot != code)
            throw std::logic_error("extract_assignment_treedepth: two clauses fix different assignments of group " +
                                   std::to_string(g));
        slot = code;
    }
    for (int j = 1; j <= clauses; ++j)
        if (!chosen[j])
            throw Error(ErrorKind::ImproperColoring, "clause " + std::to_string(j) + " has no satisfier set colored like the groups");
    Assignment a(cert.formula.num_vars, false);
    for (std::size_t g = 0; g < cert.groups.size(); ++g)
        if (code_of_group[g])
            for (std::size_t bit = 0; bit < cert.groups[g].size(); ++bit)
                a[cert.groups[g][bit] - 1] = (*code_of_group[g] >> bit) & 1;
    return project_assignment(cert.representative, a);
}

}  // namespace dichro

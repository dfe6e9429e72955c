#include <algorithm>
#include <string>

#include "dichro/cnf.hpp"
#include "dichro/reductions.hpp"

namespace dichro {

namespace {

constexpr std::pair<RoleKind, const char*> kRoleNames[] = {
    {RoleKind::Palette, "palette"},
    {RoleKind::PaletteRow, "palette_row"},
    {RoleKind::ClauseLiteral, "clause_literal"},
    {RoleKind::ClauseSeparator, "clause_separator"},
    {RoleKind::VariableLink, "variable_link"},
    {RoleKind::Hub, "hub"},
    {RoleKind::GroupVertex, "group_vertex"},
    {RoleKind::Satisfier, "satisfier"},
    {RoleKind::Connector, "connector"},
    {RoleKind::AssignmentLiteral, "assignment_literal"},
    {RoleKind::SatisfactionLiteral, "satisfaction_literal"},
};

}  // namespace

std::string to_string(RoleKind kind) {
    for (auto [k, name] : kRoleNames)
        if (k == kind) return name;
    return "?";
}

std::optional<RoleKind> role_kind_from_string(const std::string& name) {
    for (auto [k, role_name] : kRoleNames)
        if (name == role_name) return k;
    return std::nullopt;
}

bool source_satisfied(const ReductionCertificate& cert, const CnfFormula& source, const Assignment& a) {
    return cert.target == ReductionTarget::Nae ? nae_satisfies(source, a) : satisfies(source, a);
}

ValidationResult validate_elimination_forest(const Digraph& d, const std::vector<int>& parent, int* depth) {
    const int n = d.num_vertices();
    if (static_cast<int>(parent.size()) != n) return {false, "forest has the wrong number of vertices"};
    std::vector<int> level(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        if (parent[v] < -1 || parent[v] >= n) return {false, "vertex " + std::to_string(v) + " has an invalid parent"};
        int steps = 0;
        for (int x = v; x != -1; x = parent[x])
            if (++steps > n) return {false, "parent pointers contain a cycle through vertex " + std::to_string(v)};
        level[v] = steps;
    }
    auto is_ancestor = [&](Vertex a, Vertex v) {
        for (int x = v; x != -1; x = parent[x])
            if (x == a) return true;
        return false;
    };
    for (const Arc& a : d.arcs())
        if (!is_ancestor(a.tail, a.head) && !is_ancestor(a.head, a.tail))
            return {false, "arc " + std::to_string(a.tail) + "->" + std::to_string(a.head) +
                               " joins vertices on different root paths"};
    if (depth) *depth = n == 0 ? 0 : *std::max_element(level.begin(), level.end());
    return {};
}

}  // namespace dichro

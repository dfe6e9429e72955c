#include "dichro/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dichro/error.hpp"

namespace dichro {

namespace {

struct Line {
    int number = 0;
    std::vector<std::string_view> tokens;
};

// Non-empty, non-comment lines split on whitespace.
std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    int number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(start, end - start);
        ++number;
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
            std::size_t j = i;
            while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
            if (j > i) line.tokens.push_back(raw.substr(i, j - i));
            i = j;
        }
        if (!line.tokens.empty() && line.tokens[0][0] != 'c') lines.push_back(std::move(line));
        start = end + 1;
    }
    return lines;
}

[[noreturn]] void syntax(int line, const std::string& message) {
    throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line) + ": " + message);
}

long long to_int(std::string_view token, int line) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        syntax(line, "expected an integer, got '" + std::string(token) + "'");
    return value;
}

int to_int_in(std::string_view token, int line, long long lo, long long hi, const char* what) {
    long long value = to_int(token, line);
    if (value < lo || value > hi)
        syntax(line, std::string(what) + " " + std::to_string(value) + " outside [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]");
    return static_cast<int>(value);
}

constexpr long long kMaxCount = 100'000'000;

void expect_tokens(const Line& line, std::size_t count, const char* shape) {
    if (line.tokens.size() != count) syntax(line.number, std::string("expected '") + shape + "'");
}

template <class Range>
std::string join(const Range& values) {
    std::string out;
    for (auto v : values) {
        if (!out.empty()) out += ' ';
        out += std::to_string(v);
    }
    return out;
}

}  // namespace

Digraph parse_digraph(std::string_view text) {
    auto lines = tokenize(text);
    if (lines.empty()) throw Error(ErrorKind::SyntaxError, "missing 'p digraph' header");
    const Line& header = lines[0];
    if (header.tokens.size() != 4 || header.tokens[0] != "p" || header.tokens[1] != "digraph")
        syntax(header.number, "expected 'p digraph <n> <m>'");
    const int n = to_int_in(header.tokens[2], header.number, 0, kMaxCount, "vertex count");
    const int m = to_int_in(header.tokens[3], header.number, 0, kMaxCount, "arc count");
    std::vector<Arc> arcs;
    std::set<Arc> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        if (line.tokens[0] != "a") syntax(line.number, "expected an arc line 'a <u> <v>'");
        expect_tokens(line, 3, "a <u> <v>");
        Vertex u = to_int_in(line.tokens[1], line.number, 1, n, "vertex") - 1;
        Vertex v = to_int_in(line.tokens[2], line.number, 1, n, "vertex") - 1;
        if (u == v) throw Error(ErrorKind::SelfLoop, "line " + std::to_string(line.number) + ": self-loop on vertex " + std::to_string(u + 1));
        if (!seen.insert({u, v}).second)
            throw Error(ErrorKind::DuplicateArc, "line " + std::to_string(line.number) + ": arc " + std::to_string(u + 1) +
                                                     " -> " + std::to_string(v + 1) + " repeated");
        arcs.push_back({u, v});
    }
    if (static_cast<int>(arcs.size()) != m)
        syntax(header.number, "header declares " + std::to_string(m) + " arcs, found " + std::to_string(arcs.size()));
    return Digraph(n, std::move(arcs));
}

std::string emit_digraph(const Digraph& d) {
    std::string out = "p digraph " + std::to_string(d.num_vertices()) + " " + std::to_string(d.num_arcs()) + "\n";
    for (const Arc& a : d.arcs()) out += "a " + std::to_string(a.tail + 1) + " " + std::to_string(a.head + 1) + "\n";
    return out;
}

CnfFormula parse_cnf(std::string_view text) {
    auto lines = tokenize(text);
    if (lines.empty()) throw Error(ErrorKind::SyntaxError, "missing 'p cnf' header");
    const Line& header = lines[0];
    if (header.tokens.size() != 4 || header.tokens[0] != "p" || header.tokens[1] != "cnf")
        syntax(header.number, "expected 'p cnf <vars> <clauses>'");
    CnfFormula phi;
    phi.num_vars = to_int_in(header.tokens[2], header.number, 0, kMaxCount, "variable count");
    const int m = to_int_in(header.tokens[3], header.number, 0, kMaxCount, "clause count");
    std::vector<int> clause;
    int last_line = header.number;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        last_line = line.number;
        if (line.tokens[0] == "%") break;
        for (std::string_view token : line.tokens) {
            int lit = to_int_in(token, line.number, -phi.num_vars, phi.num_vars, "literal");
            if (lit != 0) {
                clause.push_back(lit);
                continue;
            }
            if (clause.empty())
                throw Error(ErrorKind::EmptyClause, "line " + std::to_string(line.number) + ": empty clause");
            phi.clauses.push_back(std::move(clause));
            clause.clear();
        }
    }
    if (!clause.empty()) syntax(last_line, "last clause is not terminated by 0");
    if (static_cast<int>(phi.clauses.size()) != m)
        syntax(header.number,
               "header declares " + std::to_string(m) + " clauses, found " + std::to_string(phi.clauses.size()));
    return phi;
}

std::string emit_cnf(const CnfFormula& phi) {
    std::string out = "p cnf " + std::to_string(phi.num_vars) + " " + std::to_string(phi.clauses.size()) + "\n";
    for (const auto& clause : phi.clauses) out += join(clause) + (clause.empty() ? "0\n" : " 0\n");
    return out;
}

TreeDecomposition parse_td(std::string_view text) {
    auto lines = tokenize(text);
    if (lines.empty()) throw Error(ErrorKind::SyntaxError, "missing 's td' header");
    const Line& header = lines[0];
    if (header.tokens.size() != 5 || header.tokens[0] != "s" || header.tokens[1] != "td")
        syntax(header.number, "expected 's td <bags> <width+1> <vertices>'");
    const int bags = to_int_in(header.tokens[2], header.number, 0, kMaxCount, "bag count");
    const int max_bag = to_int_in(header.tokens[3], header.number, 0, kMaxCount, "bag size");
    TreeDecomposition td;
    td.num_vertices = to_int_in(header.tokens[4], header.number, 0, kMaxCount, "vertex count");
    td.bags.resize(bags);
    std::vector<char> defined(bags, 0);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        if (line.tokens[0] == "b") {
            if (line.tokens.size() < 2) syntax(line.number, "expected 'b <id> <vertices...>'");
            int id = to_int_in(line.tokens[1], line.number, 1, bags, "bag id") - 1;
            if (defined[id]) syntax(line.number, "bag " + std::to_string(id + 1) + " defined twice");
            defined[id] = 1;
            for (std::size_t t = 2; t < line.tokens.size(); ++t)
                td.bags[id].push_back(to_int_in(line.tokens[t], line.number, 1, td.num_vertices, "vertex") - 1);
        } else {
            expect_tokens(line, 2, "<bag> <bag>");
            int a = to_int_in(line.tokens[0], line.number, 1, bags, "bag id") - 1;
            int b = to_int_in(line.tokens[1], line.number, 1, bags, "bag id") - 1;
            td.edges.push_back({a, b});
        }
    }
    for (int id = 0; id < bags; ++id)
        if (!defined[id]) syntax(header.number, "bag " + std::to_string(id + 1) + " is never defined");
    int largest = 0;
    for (const auto& bag : td.bags) largest = std::max(largest, static_cast<int>(bag.size()));
    if (largest != max_bag)
        syntax(header.number, "header declares bag size " + std::to_string(max_bag) + ", largest bag has " +
                                  std::to_string(largest));
    return td;
}

std::string emit_td(const TreeDecomposition& td) {
    std::string out = "s td " + std::to_string(td.bags.size()) + " " + std::to_string(td.width() + 1) + " " +
                      std::to_string(td.num_vertices) + "\n";
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out += "b " + std::to_string(i + 1);
        for (Vertex v : td.bags[i]) out += " " + std::to_string(v + 1);
        out += "\n";
    }
    for (auto [a, b] : td.edges) out += std::to_string(a + 1) + " " + std::to_string(b + 1) + "\n";
    return out;
}

std::vector<int> parse_coloring(std::string_view text) {
    auto first = std::find_if(text.begin(), text.end(), [](char ch) { return !std::isspace(static_cast<unsigned char>(ch)); });
    if (first != text.end() && (*first == '{' || *first == '[')) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text.begin(), text.end());
        } catch (const nlohmann::json::parse_error& e) {
            throw Error(ErrorKind::SyntaxError, std::string("coloring JSON: ") + e.what());
        }
        const nlohmann::json& array = doc.is_object() ? doc.value("coloring", nlohmann::json()) : doc;
        if (!array.is_array()) throw Error(ErrorKind::SyntaxError, "coloring JSON has no \"coloring\" array");
        std::vector<int> colors;
        for (const auto& entry : array) {
            if (!entry.is_number_integer()) throw Error(ErrorKind::SyntaxError, "coloring entries must be integers");
            colors.push_back(entry.get<int>());
        }
        return colors;
    }
    std::vector<int> colors;
    for (const Line& line : tokenize(text))
        for (std::string_view token : line.tokens)
            colors.push_back(to_int_in(token, line.number, 1, kMaxCount, "color"));
    return colors;
}

std::string emit_coloring(const std::vector<int>& colors) { return join(colors) + "\n"; }

namespace {

struct RoleField {
    const char* key;
    int Role::*member;
};

constexpr RoleField kRoleFields[] = {
    {"color", &Role::color},       {"row", &Role::row},
    {"clause", &Role::clause},     {"position", &Role::position},
    {"literal", &Role::literal},   {"variable", &Role::variable},
    {"neg_clause", &Role::neg_clause}, {"group", &Role::group},
    {"code", &Role::code},         {"next_group", &Role::next_group},
    {"next_code", &Role::next_code},
};

std::vector<int> ints_after(const Line& line, std::size_t from) {
    std::vector<int> out;
    for (std::size_t t = from; t < line.tokens.size(); ++t)
        out.push_back(static_cast<int>(to_int_in(line.tokens[t], line.number, -kMaxCount, kMaxCount, "value")));
    return out;
}

}  // namespace

std::string emit_certificate(const ReductionCertificate& cert) {
    std::ostringstream out;
    out << "c reduction certificate, vertices and variables 1-indexed\n";
    out << "TARGET " << to_string(cert.target) << "\n";
    out << "K " << cert.k << "\n";
    out << "SOURCE_VARS " << cert.source_vars << "\n";
    out << "FORMULA " << cert.formula.num_vars << " " << cert.formula.clauses.size() << "\n";
    for (const auto& clause : cert.formula.clauses) out << "CLAUSE " << join(clause) << "\n";
    out << "REPRESENTATIVE " << join(cert.representative) << "\n";
    out << "FIXED " << join(cert.fixed) << "\n";
    for (std::size_t v = 0; v < cert.roles.size(); ++v) {
        const Role& role = cert.roles[v];
        out << "ROLE " << v + 1 << " " << to_string(role.kind);
        if (role.out) out << " out=1";
        for (const auto& field : kRoleFields)
            if (role.*field.member != 0) out << " " << field.key << "=" << role.*field.member;
        out << "\n";
    }
    if (cert.declared_dfvs) {
        out << "DFVS";
        for (Vertex v : *cert.declared_dfvs) out << " " << v + 1;
        out << "\n";
    }
    if (cert.declared_fas) {
        out << "FAS";
        for (const Arc& a : *cert.declared_fas) out << " " << a.tail + 1 << " " << a.head + 1;
        out << "\n";
    }
    if (cert.td_forest) {
        out << "TDFOREST";
        for (int p : *cert.td_forest) out << " " << p + 1;
        out << "\n";
    }
    for (std::size_t g = 0; g < cert.groups.size(); ++g) out << "GROUP " << g + 1 << " " << join(cert.groups[g]) << "\n";
    for (std::size_t g = 0; g < cert.rho.size(); ++g)
        for (std::size_t code = 0; code < cert.rho[g].size(); ++code) {
            out << "RHO " << g + 1 << " " << code;
            for (Vertex v : cert.rho[g][code]) out << " " << v + 1;
            out << "\n";
        }
    return out.str();
}

ReductionCertificate parse_certificate(std::string_view text) {
    ReductionCertificate cert;
    int declared_clauses = -1, formula_line = 0;
    for (const Line& line : tokenize(text)) {
        std::string_view key = line.tokens[0];
        auto need = [&](std::size_t at_least) {
            if (line.tokens.size() < at_least) syntax(line.number, "too few fields for " + std::string(key));
        };
        if (key == "TARGET") {
            expect_tokens(line, 2, "TARGET <name>");
            try {
                cert.target = reduction_target_from_string(std::string(line.tokens[1]));
            } catch (const Error& e) {
                syntax(line.number, e.what());
            }
        } else if (key == "K") {
            expect_tokens(line, 2, "K <k>");
            cert.k = to_int_in(line.tokens[1], line.number, 0, kMaxCount, "k");
        } else if (key == "SOURCE_VARS") {
            expect_tokens(line, 2, "SOURCE_VARS <n>");
            cert.source_vars = to_int_in(line.tokens[1], line.number, 0, kMaxCount, "variable count");
        } else if (key == "FORMULA") {
            expect_tokens(line, 3, "FORMULA <vars> <clauses>");
            cert.formula.num_vars = to_int_in(line.tokens[1], line.number, 0, kMaxCount, "variable count");
            declared_clauses = to_int_in(line.tokens[2], line.number, 0, kMaxCount, "clause count");
            formula_line = line.number;
        } else if (key == "CLAUSE") {
            cert.formula.clauses.push_back(ints_after(line, 1));
        } else if (key == "REPRESENTATIVE") {
            cert.representative = ints_after(line, 1);
        } else if (key == "FIXED") {
            cert.fixed = ints_after(line, 1);
        } else if (key == "ROLE") {
            need(3);
            int index = to_int_in(line.tokens[1], line.number, 1, kMaxCount, "vertex");
            if (index != static_cast<int>(cert.roles.size()) + 1)
                syntax(line.number, "roles must be listed for vertices 1, 2, ... in order");
            auto kind = role_kind_from_string(std::string(line.tokens[2]));
            if (!kind) syntax(line.number, "unknown role '" + std::string(line.tokens[2]) + "'");
            Role role;
            role.kind = *kind;
            for (std::size_t t = 3; t < line.tokens.size(); ++t) {
                std::string_view field = line.tokens[t];
                auto eq = field.find('=');
                if (eq == std::string_view::npos) syntax(line.number, "expected key=value, got '" + std::string(field) + "'");
                std::string_view name = field.substr(0, eq), value = field.substr(eq + 1);
                if (name == "out") {
                    role.out = to_int_in(value, line.number, 0, 1, "out flag") == 1;
                    continue;
                }
                auto it = std::find_if(std::begin(kRoleFields), std::end(kRoleFields),
                                       [&](const RoleField& f) { return name == f.key; });
                if (it == std::end(kRoleFields)) syntax(line.number, "unknown role field '" + std::string(name) + "'");
                role.*(it->member) = static_cast<int>(to_int_in(value, line.number, -kMaxCount, kMaxCount, "value"));
            }
            cert.roles.push_back(role);
        } else if (key == "DFVS") {
            VertexSet s;
            for (int v : ints_after(line, 1)) s.push_back(v - 1);
            cert.declared_dfvs = s;
        } else if (key == "FAS") {
            auto values = ints_after(line, 1);
            if (values.size() % 2) syntax(line.number, "FAS needs tail/head pairs");
            std::vector<Arc> arcs;
            for (std::size_t i = 0; i < values.size(); i += 2) arcs.push_back({values[i] - 1, values[i + 1] - 1});
            cert.declared_fas = arcs;
        } else if (key == "TDFOREST") {
            std::vector<int> parent;
            for (int p : ints_after(line, 1)) parent.push_back(p - 1);
            cert.td_forest = parent;
        } else if (key == "GROUP") {
            need(2);
            int g = to_int_in(line.tokens[1], line.number, 1, kMaxCount, "group");
            if (g != static_cast<int>(cert.groups.size()) + 1) syntax(line.number, "groups must be listed in order");
            cert.groups.push_back(ints_after(line, 2));
        } else if (key == "RHO") {
            need(3);
            int g = to_int_in(line.tokens[1], line.number, 1, kMaxCount, "group");
            int code = to_int_in(line.tokens[2], line.number, 0, kMaxCount, "code");
            if (g > static_cast<int>(cert.rho.size()) + 1) syntax(line.number, "RHO groups must be listed in order");
            if (g == static_cast<int>(cert.rho.size()) + 1) cert.rho.emplace_back();
            if (g != static_cast<int>(cert.rho.size()) || code != static_cast<int>(cert.rho.back().size()))
                syntax(line.number, "RHO entries must be listed in (group, code) order");
            std::vector<Vertex> order;
            for (int v : ints_after(line, 3)) order.push_back(v - 1);
            cert.rho.back().push_back(order);
        } else {
            syntax(line.number, "unknown section '" + std::string(key) + "'");
        }
    }
    if (declared_clauses >= 0 && declared_clauses != static_cast<int>(cert.formula.clauses.size()))
        syntax(formula_line, "FORMULA declares " + std::to_string(declared_clauses) + " clauses, found " +
                                 std::to_string(cert.formula.clauses.size()));
    return cert;
}

std::string read_text_file(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::SyntaxError, "cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace dichro

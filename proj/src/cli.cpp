#include "dichro/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dichro/error.hpp"
#include "dichro/fas_solver.hpp"
#include "dichro/fvs_solver.hpp"
#include "dichro/io.hpp"
#include "dichro/oracle.hpp"
#include "dichro/reductions.hpp"
#include "dichro/twdp.hpp"

namespace dichro {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, sep))
        if (!part.empty()) parts.push_back(part);
    return parts;
}

int parse_index(const std::string& token, const std::string& what) {
    try {
        std::size_t used = 0;
        int value = std::stoi(token, &used);
        if (used != token.size() || value < 1) throw std::invalid_argument(token);
        return value - 1;
    } catch (const std::exception&) {
        throw UsageError("bad " + what + " '" + token + "' (expected a 1-indexed vertex)");
    }
}

VertexSet parse_vertex_list(const std::string& text, const Digraph& d) {
    VertexSet out;
    for (const auto& token : split(text, ',')) {
        int v = parse_index(token, "vertex");
        if (v >= d.num_vertices()) throw UsageError("vertex " + token + " is not in the digraph");
        out.push_back(v);
    }
    return make_vertex_set(out);
}

std::vector<Arc> parse_arc_list(const std::string& text, const Digraph& d) {
    std::vector<Arc> out;
    for (const auto& token : split(text, ',')) {
        auto ends = split(token, '-');
        if (ends.size() != 2) throw UsageError("bad arc '" + token + "' (expected u-v)");
        Arc a{parse_index(ends[0], "vertex"), parse_index(ends[1], "vertex")};
        if (a.tail >= d.num_vertices() || a.head >= d.num_vertices() || !d.has_arc(a.tail, a.head))
            throw UsageError("arc " + token + " is not in the digraph");
        out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

json vertices_json(const VertexSet& s) {
    json out = json::array();
    for (Vertex v : s) out.push_back(v + 1);
    return out;
}

json arcs_json(const std::vector<Arc>& arcs) {
    json out = json::array();
    for (const Arc& a : arcs) out.push_back({a.tail + 1, a.head + 1});
    return out;
}

json coloring_json(const std::optional<Coloring>& c) { return c ? json(c->colors) : json(nullptr); }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + path + "'");
    file << text;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

// k^s * s! entries per table for bags of size s, saturating.
double table_bound(int k, int bag_size) {
    double bound = std::pow(static_cast<double>(k), bag_size);
    for (int i = 2; i <= bag_size; ++i) bound *= i;
    return bound;
}

struct SolveOptions {
    std::string graph;
    int k = 0;
    std::string strategy = "auto";
    std::string td;
    std::string fvs;
    std::string fas;
    std::uint64_t max_nodes = SearchLimits{}.max_nodes;
};

json run_twdp(const Digraph& d, const TreeDecomposition& td, int k, const SearchLimits& limits,
              std::optional<Coloring>& result) {
    auto nice = make_nice(d, td);
    TwdpStats stats;
    result = solve_treewidth(d, nice, k, limits, &stats);
    return {{"width", td.width()},
            {"nice_nodes", nice.nodes.size()},
            {"total_entries", stats.total_entries},
            {"max_table", stats.max_table}};
}

json run_oracle(const Digraph& d, int k, const SearchLimits& limits, std::optional<Coloring>& result) {
    SearchStats stats;
    result = k_colorable_search(d, k, limits, &stats);
    return {{"nodes", stats.nodes}};
}

int solve_command(const SolveOptions& o, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    Digraph d = parse_digraph(read_text_file(o.graph));
    if (o.k < 1) throw UsageError("--k must be at least 1");
    const int k = o.k;
    SearchLimits limits{o.max_nodes};
    std::optional<VertexSet> fvs;
    std::optional<std::vector<Arc>> fas;
    if (!o.fvs.empty()) fvs = parse_vertex_list(o.fvs, d);
    if (!o.fas.empty()) fas = parse_arc_list(o.fas, d);
    std::optional<TreeDecomposition> td;
    if (!o.td.empty()) td = parse_td(read_text_file(o.td));

    std::optional<Coloring> result;
    std::string used;
    json stats = json::object();
    json notes = json::array();

    auto run_fvs = [&] {
        if (!fvs) throw UsageError("strategy fvs needs --fvs");
        if (static_cast<int>(fvs->size()) < k) {
            result = color_small_fvs(d, *fvs, k);
            stats["path"] = "small";
            return;
        }
        FvsSolveStats s;
        result = solve_fvs_degree(d, *fvs, k, limits, &s);
        stats["path"] = s.used_nonclique_shortcut ? "nonclique" : "degree";
        stats["oracle_nodes"] = s.oracle_nodes;
        stats["neighborhood_size"] = s.neighborhood_size;
        if (s.used_recoloring) stats["recolored_pair"] = {s.recolored_pair.first, s.recolored_pair.second};
    };
    auto run_fas = [&] {
        if (!fas) throw UsageError("strategy fas needs --fas");
        FasSolveStats s;
        result = solve_fas(d, *fas, k, limits, &s);
        stats["oracle_nodes"] = s.oracle_nodes;
        stats["peel_steps"] = s.peel_steps;
        stats["used_rainbow"] = s.used_rainbow;
    };
    auto decomposition = [&]() -> TreeDecomposition {
        if (td) {
            if (auto check = validate_decomposition(d, *td)) return *td;
            else if (o.strategy == "twdp") throw Error(ErrorKind::InvalidDecomposition, check.reason);
            else notes.push_back("ignored invalid decomposition: " + check.reason);
        }
        return greedy_decomposition(d);
    };

    if (o.strategy == "fvs") {
        used = "fvs";
        run_fvs();
    } else if (o.strategy == "fas") {
        used = "fas";
        run_fas();
    } else if (o.strategy == "twdp") {
        used = "twdp";
        stats = run_twdp(d, decomposition(), k, limits, result);
    } else if (o.strategy == "oracle") {
        used = "oracle";
        stats = run_oracle(d, k, limits, result);
    } else {
        const int max_deg = max_degree(d);
        bool fvs_ok = fvs && verify_feedback_set(d, FeedbackSet::of_vertices(*fvs));
        bool fas_ok = fas && verify_feedback_set(d, FeedbackSet::of_arcs(*fas));
        if (fvs && !fvs_ok) notes.push_back("--fvs is not a feedback vertex set");
        if (fas && !fas_ok) notes.push_back("--fas is not a feedback arc set");
        if (fvs_ok && (static_cast<int>(fvs->size()) < k ||
                       (static_cast<int>(fvs->size()) == k && max_deg <= 4 * k - 3))) {
            used = "fvs";
            run_fvs();
        } else if (fas_ok && static_cast<long long>(fas->size()) <= static_cast<long long>(k) * k - 1) {
            used = "fas";
            run_fas();
        } else {
            if (fvs_ok) notes.push_back("feedback vertex set outside the size/degree regime");
            if (fas_ok) notes.push_back("feedback arc set larger than k^2-1");
            TreeDecomposition chosen = decomposition();
            bool twdp_done = false;
            if (table_bound(k, chosen.width() + 1) <= static_cast<double>(limits.max_nodes)) {
                try {
                    stats = run_twdp(d, chosen, k, limits, result);
                    used = "twdp";
                    twdp_done = true;
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::BudgetExceeded) throw;
                    notes.push_back("twdp exceeded its budget");
                }
            } else {
                notes.push_back("decomposition of width " + std::to_string(chosen.width()) + " is too wide");
            }
            if (!twdp_done) {
                used = "oracle";
                stats = run_oracle(d, k, limits, result);
            }
        }
    }
    if (result && !is_proper_coloring(d, *result))
        throw std::logic_error("solver returned an improper coloring");
    stats["wall_ms"] = elapsed_ms(start);
    if (!notes.empty()) stats["notes"] = notes;
    out << json{{"k", k}, {"colorable", result.has_value()}, {"coloring", coloring_json(result)}, {"strategy", used},
                {"stats", stats}}
                   .dump(2)
        << "\n";
    return kExitOk;
}

struct OracleOptions {
    std::string graph;
    bool dichromatic = false;
    int k = 0;
    bool min_dfvs = false;
    bool min_fas = false;
    std::uint64_t max_nodes = SearchLimits{}.max_nodes;
};

int oracle_command(const OracleOptions& o, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    if (!o.dichromatic && o.k == 0 && !o.min_dfvs && !o.min_fas)
        throw UsageError("oracle needs --dichromatic, --k, --min-dfvs or --min-fas");
    Digraph d = parse_digraph(read_text_file(o.graph));
    SearchLimits limits{o.max_nodes};
    SearchStats stats;
    json doc = json::object();
    if (o.dichromatic) {
        int chi = dichromatic_number(d, limits, &stats);
        doc["dichromatic_number"] = chi;
        doc["coloring"] = coloring_json(chi == 0 ? std::optional<Coloring>(Coloring{{}, 0})
                                                 : k_colorable_bruteforce(d, chi, limits, &stats));
    }
    if (o.k != 0) {
        if (o.k < 1) throw UsageError("--k must be at least 1");
        auto c = k_colorable_bruteforce(d, o.k, limits, &stats);
        doc["k"] = o.k;
        doc["colorable"] = c.has_value();
        if (!o.dichromatic) doc["coloring"] = coloring_json(c);
    }
    if (o.min_dfvs) doc["min_dfvs"] = vertices_json(min_dfvs_bruteforce(d, limits).vertices);
    if (o.min_fas) doc["min_fas"] = arcs_json(min_fas_bruteforce(d, limits).arcs);
    doc["strategy"] = "oracle";
    doc["stats"] = {{"nodes", stats.nodes}, {"wall_ms", elapsed_ms(start)}};
    out << doc.dump(2) << "\n";
    return kExitOk;
}

struct ReduceOptions {
    std::string formula;
    std::string target;
    int k = 2;
    int groups = 0;
    std::string polarity = "keep";
    std::string output;
    std::string certificate;
    std::uint64_t max_nodes = SearchLimits{}.max_nodes;
};

// Builds the requested reduction from an arbitrary CNF; inputs to the
// dfvs/degree targets that are not restricted go through to_restricted_3sat
// and the certificate maps back to the original variables.
Reduction build_reduction(const CnfFormula& phi, const ReduceOptions& o, bool& converted) {
    ReductionTarget target = reduction_target_from_string(o.target);
    converted = false;
    if (target == ReductionTarget::Treedepth || target == ReductionTarget::Nae) {
        if (o.k != 2) throw UsageError("target " + o.target + " produces 2-coloring instances; use --k 2");
        return target == ReductionTarget::Nae ? reduce_nae_degree6(phi) : reduce_treedepth(phi, {o.groups});
    }
    if (o.k < 2) throw UsageError("--k must be at least 2");
    PolarityPolicy policy = o.polarity == "simplify" ? PolarityPolicy::Simplify
                            : o.polarity == "reject" ? PolarityPolicy::Reject
                                                     : PolarityPolicy::Keep;
    auto reduce = [&](const CnfFormula& f) {
        return target == ReductionTarget::Dfvs ? reduce_dfvs_k(f, o.k, policy) : reduce_bounded_degree(f, o.k, policy);
    };
    if (check_restricted(phi)) return reduce(phi);
    converted = true;
    RestrictedCnf restricted = to_restricted_3sat(phi);
    Reduction r = reduce(restricted.formula);
    std::vector<int> composed(phi.num_vars, 0);
    for (int v = 0; v < phi.num_vars; ++v)
        if (int mid = restricted.representative[v]) composed[v] = r.certificate.representative[mid - 1];
    r.certificate.representative = composed;
    r.certificate.source_vars = phi.num_vars;
    return r;
}

json structure_json(const Reduction& r) {
    const auto& cert = r.certificate;
    json doc{{"vertices", r.graph.num_vertices()}, {"arcs", r.graph.num_arcs()}, {"max_degree", max_degree(r.graph)}};
    if (cert.declared_dfvs) {
        doc["declared_dfvs"] = vertices_json(*cert.declared_dfvs);
        doc["dfvs_verifies"] = verify_feedback_set(r.graph, FeedbackSet::of_vertices(*cert.declared_dfvs));
    }
    if (cert.declared_fas) {
        doc["declared_fas_size"] = cert.declared_fas->size();
        doc["fas_verifies"] = verify_feedback_set(r.graph, FeedbackSet::of_arcs(*cert.declared_fas));
    }
    if (cert.td_forest) {
        int depth = 0;
        bool ok = static_cast<bool>(validate_elimination_forest(r.graph, *cert.td_forest, &depth));
        doc["forest_valid"] = ok;
        if (ok) doc["forest_depth"] = depth;
    }
    return doc;
}

int reduce_command(const ReduceOptions& o, std::ostream& out) {
    CnfFormula phi = parse_cnf(read_text_file(o.formula));
    bool converted = false;
    Reduction r = build_reduction(phi, o, converted);
    json doc{{"target", o.target}, {"k", o.k}, {"converted_to_restricted", converted}};
    doc.update(structure_json(r));
    std::string graph_text = emit_digraph(r.graph), cert_text = emit_certificate(r.certificate);
    if (o.output.empty()) {
        doc["digraph"] = graph_text;
        doc["certificate"] = cert_text;
    } else {
        std::string cert_path = o.certificate.empty() ? o.output + ".cert" : o.certificate;
        write_file(o.output, graph_text);
        write_file(cert_path, cert_text);
        doc["digraph_file"] = o.output;
        doc["certificate_file"] = cert_path;
    }
    out << doc.dump(2) << "\n";
    return kExitOk;
}

int verify_command(const ReduceOptions& o, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    CnfFormula phi = parse_cnf(read_text_file(o.formula));
    bool converted = false;
    Reduction r = build_reduction(phi, o, converted);
    const auto& cert = r.certificate;
    const bool nae = cert.target == ReductionTarget::Nae;
    json checks = structure_json(r);
    bool structure_ok = checks.value("dfvs_verifies", true) && checks.value("fas_verifies", true) &&
                        checks.value("forest_valid", true);
    if (cert.target == ReductionTarget::Degree) {
        bool ok = max_degree(r.graph) <= 4 * o.k - 1;
        checks["degree_bound_holds"] = ok;
        structure_ok = structure_ok && ok;
    }
    if (nae) {
        bool ok = max_degree(r.graph) <= 6;
        checks["degree_bound_holds"] = ok;
        structure_ok = structure_ok && ok;
    }

    SearchStats stats;
    auto coloring = k_colorable_search(r.graph, cert.k, {o.max_nodes}, &stats);
    bool satisfiable = nae ? nae_sat_bruteforce(phi).has_value() : sat_solve(phi).has_value();
    json doc{{"target", o.target}, {"k", cert.k}, {"satisfiable", satisfiable}, {"colorable", coloring.has_value()}};
    bool extraction_ok = true;
    if (coloring) {
        Assignment a = nae                                        ? extract_assignment_nae(r, *coloring)
                       : cert.target == ReductionTarget::Treedepth ? extract_assignment_treedepth(r, *coloring)
                                                                   : extract_assignment_dfvs(r, *coloring);
        extraction_ok = source_satisfied(cert, phi, a);
        json values = json::array();
        for (bool b : a) values.push_back(b ? 1 : 0);
        doc["assignment"] = values;
        doc["assignment_satisfies"] = extraction_ok;
    }
    const bool holds = structure_ok && extraction_ok && satisfiable == coloring.has_value();
    doc["checks"] = checks;
    doc["equivalence_holds"] = holds;
    doc["message"] = holds ? "equivalence holds" : "equivalence fails";
    doc["stats"] = {{"nodes", stats.nodes}, {"wall_ms", elapsed_ms(start)}};
    out << doc.dump(2) << "\n";
    return holds ? kExitOk : kExitRejected;
}

int check_command(const std::string& graph, const std::string& coloring_path, int k, std::ostream& out) {
    Digraph d = parse_digraph(read_text_file(graph));
    std::vector<int> colors = parse_coloring(read_text_file(coloring_path));
    if (static_cast<int>(colors.size()) != d.num_vertices())
        throw Error(ErrorKind::ArityMismatch, "coloring has " + std::to_string(colors.size()) + " entries for " +
                                                  std::to_string(d.num_vertices()) + " vertices");
    int used = colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end());
    if (k == 0) k = used;
    bool in_range = used <= k;
    bool proper = in_range && is_proper_coloring(d, {colors, k});
    json doc{{"k", k}, {"vertices", d.num_vertices()}, {"proper", proper}};
    if (!in_range) doc["reason"] = "color " + std::to_string(used) + " exceeds k";
    out << doc.dump(2) << "\n";
    return proper ? kExitOk : kExitRejected;
}

int decompose_command(const std::string& graph, const std::string& output, std::ostream& out) {
    Digraph d = parse_digraph(read_text_file(graph));
    TreeDecomposition td = greedy_decomposition(d);
    json doc{{"width", td.width()}, {"bags", td.bags.size()}, {"vertices", d.num_vertices()}};
    if (output.empty()) {
        doc["td"] = emit_td(td);
    } else {
        write_file(output, emit_td(td));
        doc["td_file"] = output;
    }
    out << doc.dump(2) << "\n";
    return kExitOk;
}

int report(std::ostream& out, std::ostream& err, int code, const std::string& kind, const std::string& message) {
    err << "dichro: " << message << "\n";
    out << json{{"error", {{"kind", kind}, {"message", message}}}}.dump(2) << "\n";
    return code;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact digraph coloring solvers, oracles and reduction compiler", "dichro"};
    app.require_subcommand(1);
    const std::vector<std::string> targets{"dfvs", "degree", "treedepth", "nae"};

    SolveOptions solve;
    auto* solve_cmd = app.add_subcommand("solve", "Decide k-colorability and return a coloring");
    solve_cmd->add_option("graph", solve.graph, "Digraph file ('-' for stdin)")->required();
    solve_cmd->add_option("--k", solve.k, "Number of colors")->required();
    solve_cmd->add_option("--strategy", solve.strategy, "auto|oracle|fvs|fas|twdp")
        ->check(CLI::IsMember({"auto", "oracle", "fvs", "fas", "twdp"}));
    solve_cmd->add_option("--td", solve.td, "PACE tree decomposition file");
    solve_cmd->add_option("--fvs", solve.fvs, "Feedback vertex set, e.g. 1,4");
    solve_cmd->add_option("--fas", solve.fas, "Feedback arc set, e.g. 1-2,3-1");
    solve_cmd->add_option("--max-nodes", solve.max_nodes, "Search budget");

    OracleOptions oracle;
    auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive ground truth");
    oracle_cmd->add_option("graph", oracle.graph, "Digraph file")->required();
    oracle_cmd->add_flag("--dichromatic", oracle.dichromatic, "Compute the dichromatic number");
    oracle_cmd->add_option("--k", oracle.k, "Decide k-colorability");
    oracle_cmd->add_flag("--min-dfvs", oracle.min_dfvs, "Minimum feedback vertex set");
    oracle_cmd->add_flag("--min-fas", oracle.min_fas, "Minimum feedback arc set");
    oracle_cmd->add_option("--max-nodes", oracle.max_nodes, "Search budget");

    ReduceOptions reduce;
    auto* reduce_cmd = app.add_subcommand("reduce", "Compile a CNF formula into a coloring instance");
    ReduceOptions verify;
    auto* verify_cmd = app.add_subcommand("verify-reduction", "Reduce, solve, extract and evaluate");
    for (auto [cmd, o] : {std::pair{reduce_cmd, &reduce}, std::pair{verify_cmd, &verify}}) {
        cmd->add_option("formula", o->formula, "DIMACS cnf file")->required();
        cmd->add_option("--target", o->target, "dfvs|degree|treedepth|nae")->required()->check(CLI::IsMember(targets));
        cmd->add_option("--k", o->k, "Number of colors (2 for treedepth and nae)");
        cmd->add_option("--groups", o->groups, "Variable groups for the treedepth target (0 = automatic)");
        cmd->add_option("--polarity", o->polarity, "keep|simplify|reject pure variables")
            ->check(CLI::IsMember({"keep", "simplify", "reject"}));
        cmd->add_option("--max-nodes", o->max_nodes, "Search budget");
    }
    reduce_cmd->add_option("-o,--output", reduce.output, "Digraph output file");
    reduce_cmd->add_option("--certificate", reduce.certificate, "Certificate output file (default OUTPUT.cert)");

    std::string check_graph, check_coloring;
    int check_k = 0;
    auto* check_cmd = app.add_subcommand("check", "Check a coloring for properness");
    check_cmd->add_option("graph", check_graph, "Digraph file")->required();
    check_cmd->add_option("--coloring", check_coloring, "Coloring file")->required();
    check_cmd->add_option("--k", check_k, "Number of colors (default: largest color used)");

    std::string decompose_graph, decompose_output;
    auto* decompose_cmd = app.add_subcommand("decompose", "Greedy tree decomposition in PACE format");
    decompose_cmd->add_option("graph", decompose_graph, "Digraph file")->required();
    decompose_cmd->add_option("-o,--output", decompose_output, "Output file");

    std::vector<std::string> storage{"dichro"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        return report(out, err, kExitUsage, "UsageError", e.what());
    }

    try {
        if (solve_cmd->parsed()) return solve_command(solve, out);
        if (oracle_cmd->parsed()) return oracle_command(oracle, out);
        if (reduce_cmd->parsed()) return reduce_command(reduce, out);
        if (verify_cmd->parsed()) return verify_command(verify, out);
        if (check_cmd->parsed()) return check_command(check_graph, check_coloring, check_k, out);
        if (decompose_cmd->parsed()) return decompose_command(decompose_graph, decompose_output, out);
    } catch (const UsageError& e) {
        return report(out, err, kExitUsage, "UsageError", e.what());
    } catch (const Error& e) {
        int code = e.kind() == ErrorKind::BudgetExceeded ? kExitBudget : kExitUsage;
        return report(out, err, code, std::string(to_string(e.kind())), e.what());
    }
    return report(out, err, kExitUsage, "UsageError", "no subcommand");
}

}  // namespace dichro

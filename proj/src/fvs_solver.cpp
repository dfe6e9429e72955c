#include "dichro/fvs_solver.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "dichro/error.hpp"

namespace dichro {

namespace {

void require_feedback_set(const Digraph& d, const VertexSet& f) {
    if (!verify_feedback_set(d, FeedbackSet::of_vertices(f)))
        throw Error(ErrorKind::NotAFeedbackSet, "removing the given vertices leaves a directed cycle");
}

bool contains(const VertexSet& s, Vertex v) { return std::binary_search(s.begin(), s.end(), v); }

// Properness restricted to the colored vertices.
bool proper_on_colored(const Digraph& d, const PartialColoring& c, int k) {
    VertexSet colored;
    for (Vertex v = 0; v < d.num_vertices(); ++v)
        if (c[v] != 0) colored.push_back(v);
    auto sub = induced_subgraph(d, colored);
    Coloring restricted{std::vector<int>(colored.size()), k};
    for (std::size_t i = 0; i < colored.size(); ++i) restricted.colors[i] = c[colored[i]];
    return is_proper_coloring(sub.graph, restricted);
}


// Cross arcs of a pair together with the hypothetical arcs added to reach
// exactly three; the case analysis runs against this augmented arc set,
// which can only make properness harder to achieve.
struct CrossView {
    Vertex hub_p, hub_q;
    std::vector<Arc> arcs;

    int arcs_on(Vertex hub) const {
        return static_cast<int>(
            std::count_if(arcs.begin(), arcs.end(), [&](const Arc& a) { return a.tail == hub || a.head == hub; }));
    }
    int arcs_between(Vertex hub, const VertexSet& s) const {
        int count = 0;
        for (const Arc& a : arcs)
            if ((a.tail == hub && contains(s, a.head)) || (a.head == hub && contains(s, a.tail))) ++count;
        return count;
    }
    bool has(Vertex u, Vertex v) const { return std::find(arcs.begin(), arcs.end(), Arc{u, v}) != arcs.end(); }
    bool arc_from_hub_into(Vertex hub, const VertexSet& s) const {
        return std::any_of(arcs.begin(), arcs.end(), [&](const Arc& a) { return a.tail == hub && contains(s, a.head); });
    }
};

void paint(PartialColoring& c, const VertexSet& s, int color) {
    for (Vertex v : s) c[v] = color;
}

}  // namespace

std::optional<int> FvsNeighborhoodProfile::color_with_empty_side() const {
    for (int t = 1; t <= k(); ++t)
        if (in[t - 1].empty() || out[t - 1].empty()) return t;
    return std::nullopt;
}

FvsNeighborhoodProfile profile_neighborhood(const Digraph& d, const VertexSet& fvs, const PartialColoring& c) {
    FvsNeighborhoodProfile profile;
    profile.fvs = fvs;
    const int k = static_cast<int>(fvs.size());
    for (int t = 1; t <= k; ++t)
        if (c[fvs[t - 1]] != t)
            throw Error(ErrorKind::PreconditionViolated, "coloring is not normalized to c(v_t) = t");
    profile.in.assign(k, {});
    profile.out.assign(k, {});
    for (int t = 1; t <= k; ++t) {
        Vertex hub = fvs[t - 1];
        for (Vertex x : d.in_neighbors(hub))
            if (!contains(fvs, x) && c[x] == t) profile.in[t - 1].push_back(x);
        for (Vertex x : d.out_neighbors(hub))
            if (!contains(fvs, x) && c[x] == t) profile.out[t - 1].push_back(x);
    }
    profile.cross_arcs.assign(k, std::vector<std::vector<Arc>>(k));
    for (int i = 1; i <= k; ++i) {
        for (int j = i + 1; j <= k; ++j) {
            auto& list = profile.cross_arcs[i - 1][j - 1];
            auto collect = [&](Vertex hub, const VertexSet& s) {
                for (Vertex x : s) {
                    if (c[x] == c[hub]) continue;
                    if (d.has_arc(hub, x)) list.push_back({hub, x});
                    if (d.has_arc(x, hub)) list.push_back({x, hub});
                }
            };
            for (const VertexSet* s : {&profile.in[j - 1], &profile.out[j - 1]}) collect(fvs[i - 1], *s);
            for (const VertexSet* s : {&profile.in[i - 1], &profile.out[i - 1]}) collect(fvs[j - 1], *s);
            std::sort(list.begin(), list.end());
        }
    }
    return profile;
}

Coloring color_small_fvs(const Digraph& d, const VertexSet& f, int k) {
    VertexSet fvs = make_vertex_set(f);
    if (static_cast<int>(fvs.size()) >= k)
        throw Error(ErrorKind::TooLarge, "feedback vertex set of size " + std::to_string(fvs.size()) +
                                             " needs at most k-1 = " + std::to_string(k - 1) + " vertices");
    require_feedback_set(d, fvs);
    Coloring c{std::vector<int>(d.num_vertices(), k), k};
    for (std::size_t t = 0; t < fvs.size(); ++t) c.colors[fvs[t]] = static_cast<int>(t) + 1;
    return c;
}

std::optional<Coloring> color_nonclique_fvs(const Digraph& d, const VertexSet& f, int k) {
    VertexSet fvs = make_vertex_set(f);
    require_feedback_set(d, fvs);
    if (static_cast<int>(fvs.size()) != k)
        throw Error(ErrorKind::WrongFvsSize, "expected a feedback vertex set of size k = " + std::to_string(k));
    for (std::size_t a = 0; a < fvs.size(); ++a) {
        for (std::size_t b = a + 1; b < fvs.size(); ++b) {
            if (d.has_digon(fvs[a], fvs[b])) continue;
            Coloring c{std::vector<int>(d.num_vertices(), k), k};
            c.colors[fvs[a]] = c.colors[fvs[b]] = 1;
            int next = 2;
            for (Vertex v : fvs)
                if (v != fvs[a] && v != fvs[b]) c.colors[v] = next++;
            return c;
        }
    }
    return std::nullopt;
}

Coloring fill_with_color(const Digraph& d, const PartialColoring& c, const VertexSet& f, int color) {
    VertexSet fvs = make_vertex_set(f);
    const int k = static_cast<int>(fvs.size());
    if (color < 1 || color > k) throw Error(ErrorKind::PreconditionViolated, "fill color outside 1..k");
    auto profile = profile_neighborhood(d, fvs, c);
    if (!profile.in[color - 1].empty() && !profile.out[color - 1].empty())
        throw Error(ErrorKind::PreconditionViolated,
                    "v_" + std::to_string(color) + " has same-colored neighbors in both directions");
    Coloring result{c, k};
    for (int& x : result.colors)
        if (x == 0) x = color;
    return result;
}

PartialColoring recolor_cross_pair(const Digraph& d, const FvsNeighborhoodProfile& profile, const PartialColoring& c,
                                   int i, int j) {
    if (!(1 <= i && i < j && j <= profile.k())) throw Error(ErrorKind::PreconditionViolated, "need 1 <= i < j <= k");
    const auto& real = profile.cross(i, j);
    if (real.size() > 3)
        throw Error(ErrorKind::PreconditionViolated,
                    "pair (" + std::to_string(i) + "," + std::to_string(j) + ") has " + std::to_string(real.size()) +
                        " cross arcs");
    for (int t : {i, j})
        if (profile.in[t - 1].empty() || profile.out[t - 1].empty())
            throw Error(ErrorKind::PreconditionViolated, "recoloring needs all four in/out sets non-empty");

    // p is the color whose palette vertex carries strictly more cross arcs.
    int p = i, q = j;
    CrossView view{profile.fvs[p - 1], profile.fvs[q - 1], real};
    if (view.arcs_on(view.hub_p) < view.arcs_on(view.hub_q)) {
        std::swap(p, q);
        std::swap(view.hub_p, view.hub_q);
    }
    const VertexSet& p_in = profile.in[p - 1];
    const VertexSet& p_out = profile.out[p - 1];
    const VertexSet& q_in = profile.in[q - 1];
    const VertexSet& q_out = profile.out[q - 1];

    // pad with missing arcs on hub_p; (0,0)->(3,0), (1,0)->(3,0), (2,0)->(3,0), (1,1)->(2,1)
    for (const VertexSet* s : {&q_in, &q_out}) {
        for (Vertex x : *s) {
            for (Arc candidate : {Arc{view.hub_p, x}, Arc{x, view.hub_p}}) {
                if (view.arcs.size() >= 3) break;
                if (!d.has_arc(candidate.tail, candidate.head) && !view.has(candidate.tail, candidate.head))
                    view.arcs.push_back(candidate);
            }
        }
    }
    if (view.arcs.size() != 3) throw std::logic_error("recolor_cross_pair: could not pad the cross arcs to three");

    PartialColoring result = c;
    const int on_p = view.arcs_on(view.hub_p);
    if (on_p == 3) {
        // all three cross arcs sit on v_p
        const VertexSet& weak = view.arcs_between(view.hub_p, q_in) <= 1 ? q_in : q_out;
        paint(result, weak, p);
        paint(result, p_in, q);
        paint(result, p_out, q);
    } else if (view.arcs_between(view.hub_p, q_in) == 0 || view.arcs_between(view.hub_p, q_out) == 0) {
        // one Q set is untouched by v_p
        const VertexSet& untouched = view.arcs_between(view.hub_p, q_in) == 0 ? q_in : q_out;
        paint(result, untouched, p);
        const VertexSet& free_of_q = view.arcs_between(view.hub_q, p_in) == 0 ? p_in : p_out;
        paint(result, free_of_q, q);
    } else {
        // v_p has exactly one cross arc into each of Q_in and Q_out
        bool both_out = view.arc_from_hub_into(view.hub_p, q_in) && view.arc_from_hub_into(view.hub_p, q_out);
        bool both_in = !view.arc_from_hub_into(view.hub_p, q_in) && !view.arc_from_hub_into(view.hub_p, q_out);
        if (both_out || both_in) {
            paint(result, p_in, q);
            paint(result, p_out, q);
            paint(result, q_in, p);
            paint(result, q_out, p);
        } else if (view.arcs_between(view.hub_q, p_in) == 0) {
            // P_in moves to q; v_p keeps only out-neighbors of color p
            paint(result, p_in, q);
            const VertexSet& entered = view.arc_from_hub_into(view.hub_p, q_in) ? q_in : q_out;
            paint(result, entered, p);
        } else {
            // mirror: P_out moves to q; v_p keeps only in-neighbors of color p
            paint(result, p_out, q);
            const VertexSet& leaving = view.arc_from_hub_into(view.hub_p, q_in) ? q_out : q_in;
            paint(result, leaving, p);
        }
    }
    if (!proper_on_colored(d, result, profile.k()))
        throw std::logic_error("recolor_cross_pair produced an improper coloring of D[N[F]]");
    return result;
}

Coloring extend_neighborhood_coloring(const Digraph& d, const VertexSet& f, const PartialColoring& local,
                                      std::pair<int, int>* recolored) {
    VertexSet fvs = make_vertex_set(f);
    const int k = static_cast<int>(fvs.size());
    if (!is_bidirected_clique(d, fvs))
        throw Error(ErrorKind::PreconditionViolated, "feedback vertex set is not a bidirected clique");

    // f is a bidirected clique, so its colors are distinct; rename them so c(v_t) = t
    std::vector<int> rename(k + 1, 0);
    for (int t = 1; t <= k; ++t) rename[local[fvs[t - 1]]] = t;
    PartialColoring c(d.num_vertices(), 0);
    for (Vertex v = 0; v < d.num_vertices(); ++v)
        if (local[v] != 0) c[v] = rename[local[v]];
    if (!proper_on_colored(d, c, k))
        throw Error(ErrorKind::PreconditionViolated, "coloring of D[N[F]] is not proper");

    auto profile = profile_neighborhood(d, fvs, c);
    if (auto t = profile.color_with_empty_side()) return fill_with_color(d, c, fvs, *t);

    std::optional<std::pair<int, int>> light;
    for (int i = 1; i <= k && !light; ++i)
        for (int j = i + 1; j <= k && !light; ++j)
            if (profile.cross(i, j).size() <= 3) light = std::make_pair(i, j);
    // with maximum degree 4k-3 the degree sum of F rules this out
    if (!light) throw std::logic_error("extend_neighborhood_coloring: every pair has at least four cross arcs");

    if (recolored) *recolored = *light;
    c = recolor_cross_pair(d, profile, c, light->first, light->second);
    profile = profile_neighborhood(d, fvs, c);
    auto t = profile.color_with_empty_side();
    if (!t) throw std::logic_error("extend_neighborhood_coloring: recoloring left every in/out set non-empty");
    Coloring result = fill_with_color(d, c, fvs, *t);
    if (!is_proper_coloring(d, result))
        throw std::logic_error("extend_neighborhood_coloring: extension of the D[N[F]] coloring is not proper on D");
    return result;
}

std::optional<Coloring> solve_fvs_degree(const Digraph& d, const VertexSet& f, int k, const SearchLimits& limits,
                                         FvsSolveStats* stats) {
    FvsSolveStats local;
    FvsSolveStats& st = stats ? *stats : local;
    VertexSet fvs = make_vertex_set(f);
    if (k < 1 || static_cast<int>(fvs.size()) != k)
        throw Error(ErrorKind::WrongFvsSize, "feedback vertex set has size " + std::to_string(fvs.size()) +
                                                 ", expected k = " + std::to_string(k));
    require_feedback_set(d, fvs);
    if (max_degree(d) > 4 * k - 3)
        throw Error(ErrorKind::DegreeTooHigh, "maximum degree " + std::to_string(max_degree(d)) + " exceeds 4k-3 = " +
                                                  std::to_string(4 * k - 3));

    if (!is_bidirected_clique(d, fvs)) {
        st.used_nonclique_shortcut = true;
        return color_nonclique_fvs(d, fvs, k);
    }

    VertexSet closed = closed_neighborhood(d, fvs);
    st.neighborhood_size = closed.size();
    auto local_graph = induced_subgraph(d, closed);
    SearchStats search;
    auto local_coloring = k_colorable_bruteforce(local_graph.graph, k, limits, &search);
    st.oracle_nodes += search.nodes;
    if (!local_coloring) return std::nullopt;

    PartialColoring c(d.num_vertices(), 0);
    for (std::size_t x = 0; x < closed.size(); ++x) c[closed[x]] = local_coloring->colors[x];
    std::pair<int, int> pair{0, 0};
    Coloring result = extend_neighborhood_coloring(d, fvs, c, &pair);
    st.used_recoloring = pair.first != 0;
    st.recolored_pair = pair;
    return result;
}

}  // namespace dichro

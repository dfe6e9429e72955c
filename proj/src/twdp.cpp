#include "dichro/twdp.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "dichro/error.hpp"
#include "dichro/permutation.hpp"

namespace dichro {

namespace {

ValidationResult fail(std::string reason) { return {false, std::move(reason)}; }

bool contains(const VertexSet& s, Vertex v) { return std::binary_search(s.begin(), s.end(), v); }

int index_in(const VertexSet& bag, Vertex v) {
    return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
}

VertexSet without(const VertexSet& s, Vertex v) {
    VertexSet r;
    for (Vertex w : s)
        if (w != v) r.push_back(w);
    return r;
}

VertexSet with(const VertexSet& s, Vertex v) {
    VertexSet r = s;
    r.insert(std::lower_bound(r.begin(), r.end(), v), v);
    return r;
}

// Number of distinct signatures of a bag of the given size, or 0 on overflow.
std::uint64_t signature_space(int bag_size, int k) {
    if (bag_size > 20) return 0;
    std::uint64_t space = factorial(bag_size);
    for (int i = 0; i < bag_size; ++i) {
        if (space > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(k)) return 0;
        space *= static_cast<std::uint64_t>(k);
    }
    return space;
}

}  // namespace

int TreeDecomposition::width() const {
    int w = -1;
    for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
    return w;
}

int NiceTreeDecomposition::width() const {
    int w = -1;
    for (const auto& node : nodes) w = std::max(w, static_cast<int>(node.bag.size()) - 1);
    return w;
}

TreeDecomposition NiceTreeDecomposition::as_tree_decomposition() const {
    TreeDecomposition td;
    td.num_vertices = num_vertices;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
        td.bags.push_back(nodes[i].bag);
        for (int child : nodes[i].children) td.edges.push_back({child, i});
    }
    return td;
}

ValidationResult validate_decomposition(const Digraph& d, const TreeDecomposition& td) {
    const int n = d.num_vertices();
    const int nb = static_cast<int>(td.bags.size());
    if (td.num_vertices != n)
        return fail("decomposition is for " + std::to_string(td.num_vertices) + " vertices, digraph has " +
                    std::to_string(n));
    for (int b = 0; b < nb; ++b) {
        const auto& bag = td.bags[b];
        if (!std::is_sorted(bag.begin(), bag.end()) || std::adjacent_find(bag.begin(), bag.end()) != bag.end())
            return fail("bag " + std::to_string(b) + " is not a sorted set");
        for (Vertex v : bag)
            if (v < 0 || v >= n) return fail("bag " + std::to_string(b) + " contains unknown vertex " + std::to_string(v));
    }
    if (nb == 0) return n == 0 ? ValidationResult{} : fail("no bags");

    if (static_cast<int>(td.edges.size()) != nb - 1) return fail("tree must have exactly #bags-1 edges");
    std::vector<int> parent(nb);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [a, b] : td.edges) {
        if (a < 0 || a >= nb || b < 0 || b >= nb || a == b)
            return fail("invalid tree edge " + std::to_string(a) + "-" + std::to_string(b));
        if (find(a) == find(b)) return fail("tree edges contain a cycle");
        parent[find(a)] = find(b);
    }

    std::vector<std::vector<int>> bags_of(n);
    for (int b = 0; b < nb; ++b)
        for (Vertex v : td.bags[b]) bags_of[v].push_back(b);
    for (Vertex v = 0; v < n; ++v)
        if (bags_of[v].empty()) return fail("vertex " + std::to_string(v) + " is in no bag");
    for (const Arc& a : d.arcs()) {
        const auto& x = bags_of[a.tail];
        const auto& y = bags_of[a.head];
        std::vector<int> common;
        std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
        if (common.empty())
            return fail("no bag contains both endpoints of arc " + std::to_string(a.tail) + "->" + std::to_string(a.head));
    }
    std::vector<int> inner_edges(n, 0);
    for (auto [a, b] : td.edges) {
        std::vector<Vertex> common;
        std::set_intersection(td.bags[a].begin(), td.bags[a].end(), td.bags[b].begin(), td.bags[b].end(),
                              std::back_inserter(common));
        for (Vertex v : common) ++inner_edges[v];
    }
    for (Vertex v = 0; v < n; ++v)
        if (inner_edges[v] != static_cast<int>(bags_of[v].size()) - 1)
            return fail("bags containing vertex " + std::to_string(v) + " are not connected");
    return {};
}

NiceTreeDecomposition make_nice(const Digraph& d, const TreeDecomposition& td) {
    if (auto v = validate_decomposition(d, td); !v)
        throw Error(ErrorKind::InvalidDecomposition, v.reason);
    NiceTreeDecomposition ntd;
    ntd.num_vertices = td.num_vertices;
    auto add = [&](NiceKind kind, Vertex v, VertexSet bag, std::vector<int> children) {
        ntd.nodes.push_back({kind, v, std::move(bag), std::move(children)});
        return static_cast<int>(ntd.nodes.size()) - 1;
    };
    auto transition = [&](int idx, const VertexSet& from, const VertexSet& to) {
        VertexSet bag = from;
        for (Vertex v : from)
            if (!contains(to, v)) {
                bag = without(bag, v);
                idx = add(NiceKind::Forget, v, bag, {idx});
            }
        for (Vertex v : to)
            if (!contains(from, v)) {
                bag = with(bag, v);
                idx = add(NiceKind::Introduce, v, bag, {idx});
            }
        return idx;
    };

    const int nb = static_cast<int>(td.bags.size());
    if (nb == 0) {
        add(NiceKind::Leaf, -1, {}, {});
        return ntd;
    }
    std::vector<std::vector<int>> adj(nb);
    for (auto [a, b] : td.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> order, parent(nb, -1);
    std::vector<char> seen(nb, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        order.push_back(t);
        for (int u : adj[t])
            if (!seen[u]) {
                seen[u] = 1;
                parent[u] = t;
                stack.push_back(u);
            }
    }
    std::vector<int> top(nb, -1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int t = *it;
        std::vector<int> subs;
        for (int c : adj[t])
            if (c != parent[t]) subs.push_back(transition(top[c], td.bags[c], td.bags[t]));
        if (subs.empty()) {
            top[t] = transition(add(NiceKind::Leaf, -1, {}, {}), {}, td.bags[t]);
            continue;
        }
        int idx = subs[0];
        for (std::size_t i = 1; i < subs.size(); ++i) idx = add(NiceKind::Join, -1, td.bags[t], {idx, subs[i]});
        top[t] = idx;
    }
    transition(top[0], td.bags[0], {});
    return ntd;
}

ValidationResult validate_nice(const Digraph& d, const NiceTreeDecomposition& ntd) {
    const int count = static_cast<int>(ntd.nodes.size());
    if (count == 0) return fail("no nodes");
    if (!ntd.nodes.back().bag.empty()) return fail("root bag is not empty");
    std::vector<int> parents(count, 0);
    for (int i = 0; i < count; ++i) {
        const NiceNode& node = ntd.nodes[i];
        const std::string where = "node " + std::to_string(i);
        for (int c : node.children) {
            if (c < 0 || c >= i) return fail(where + " has a child that is not stored before it");
            ++parents[c];
        }
        switch (node.kind) {
            case NiceKind::Leaf:
                if (!node.children.empty() || !node.bag.empty()) return fail(where + ": leaf must be empty");
                break;
            case NiceKind::Introduce: {
                if (node.children.size() != 1) return fail(where + ": introduce needs one child");
                const auto& child = ntd.nodes[node.children[0]].bag;
                if (contains(child, node.vertex) || with(child, node.vertex) != node.bag)
                    return fail(where + ": introduce must add exactly its vertex");
                break;
            }
            case NiceKind::Forget: {
                if (node.children.size() != 1) return fail(where + ": forget needs one child");
                const auto& child = ntd.nodes[node.children[0]].bag;
                if (!contains(child, node.vertex) || without(child, node.vertex) != node.bag)
                    return fail(where + ": forget must drop exactly its vertex");
                break;
            }
            case NiceKind::Join:
                if (node.children.size() != 2) return fail(where + ": join needs two children");
                for (int c : node.children)
                    if (ntd.nodes[c].bag != node.bag) return fail(where + ": join children must share its bag");
                break;
        }
    }
    for (int i = 0; i + 1 < count; ++i)
        if (parents[i] != 1) return fail("node " + std::to_string(i) + " does not have exactly one parent");
    return validate_decomposition(d, ntd.as_tree_decomposition());
}

TreeDecomposition greedy_decomposition(const Digraph& d) {
    const int n = d.num_vertices();
    std::vector<std::set<Vertex>> adj(n);
    for (const Arc& a : d.arcs()) {
        adj[a.tail].insert(a.head);
        adj[a.head].insert(a.tail);
    }
    TreeDecomposition td;
    td.num_vertices = n;
    std::vector<char> gone(n, 0);
    std::vector<int> position(n, -1);
    std::vector<VertexSet> neighbors_at_elimination;
    for (int step = 0; step < n; ++step) {
        Vertex best = -1;
        for (Vertex v = 0; v < n; ++v)
            if (!gone[v] && (best < 0 || adj[v].size() < adj[best].size())) best = v;
        VertexSet nb(adj[best].begin(), adj[best].end());
        for (Vertex x : nb) {
            adj[x].erase(best);
            for (Vertex y : nb)
                if (x != y) adj[x].insert(y);
        }
        adj[best].clear();
        gone[best] = 1;
        position[best] = step;
        td.bags.push_back(with(nb, best));
        neighbors_at_elimination.push_back(std::move(nb));
    }
    int last_root = -1;
    for (int step = n - 1; step >= 0; --step) {
        const auto& nb = neighbors_at_elimination[step];
        if (nb.empty()) {
            if (last_root >= 0) td.edges.push_back({step, last_root});
            last_root = step;
            continue;
        }
        int next = n;
        for (Vertex w : nb) next = std::min(next, position[w]);
        td.edges.push_back({step, next});
    }
    return td;
}

std::uint64_t encode_signature(const Signature& s, int k) {
    const int size = static_cast<int>(s.colors.size());
    std::uint64_t code = 0;
    for (int i = size - 1; i >= 0; --i) code = code * static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(s.colors[i] - 1);
    return code * factorial(size) + permutation_rank(s.positions);
}

Signature decode_signature(std::uint64_t key, int bag_size, int k) {
    std::uint64_t f = factorial(bag_size);
    Signature s;
    s.positions = permutation_unrank(key % f, bag_size);
    std::uint64_t code = key / f;
    for (int i = 0; i < bag_size; ++i) {
        s.colors.push_back(static_cast<int>(code % static_cast<std::uint64_t>(k)) + 1);
        code /= static_cast<std::uint64_t>(k);
    }
    return s;
}

std::optional<Coloring> solve_treewidth(const Digraph& d, const NiceTreeDecomposition& ntd, int k,
                                        const SearchLimits& limits, TwdpStats* stats) {
    if (k < 1) throw Error(ErrorKind::PreconditionViolated, "k must be at least 1");
    if (auto v = validate_nice(d, ntd); !v) throw Error(ErrorKind::InvalidDecomposition, v.reason);
    TwdpStats local_stats;
    TwdpStats& st = stats ? *stats : local_stats;
    st = {};

    const int count = static_cast<int>(ntd.nodes.size());
    // table[t]: signature key -> key in the child it was derived from
    std::vector<std::unordered_map<std::uint64_t, std::uint64_t>> table(count);
    for (int t = 0; t < count; ++t) {
        const NiceNode& node = ntd.nodes[t];
        const int size = static_cast<int>(node.bag.size());
        const std::uint64_t space = signature_space(size, k);
        if (space == 0) throw Error(ErrorKind::BudgetExceeded, "signature space of a bag of size " + std::to_string(size) + " overflows");
        auto& out = table[t];
        switch (node.kind) {
            case NiceKind::Leaf:
                out.emplace(0, 0);
                break;
            case NiceKind::Introduce: {
                const int child = node.children[0];
                const int iu = index_in(node.bag, node.vertex);
                const Vertex u = node.vertex;
                for (const auto& [ckey, unused] : table[child]) {
                    Signature cs = decode_signature(ckey, size - 1, k);
                    Signature s;
                    s.colors.resize(size);
                    s.positions.resize(size);
                    for (int a = 1; a <= k; ++a) {
                        for (int q = 0; q < size; ++q) {
                            for (int j = 0; j < size - 1; ++j) {
                                int nj = j < iu ? j : j + 1;
                                s.colors[nj] = cs.colors[j];
                                s.positions[nj] = cs.positions[j] + (cs.positions[j] >= q ? 1 : 0);
                            }
                            s.colors[iu] = a;
                            s.positions[iu] = q;
                            bool ok = true;
                            for (int j = 0; j < size && ok; ++j) {
                                if (j == iu || s.colors[j] != a) continue;
                                Vertex w = node.bag[j];
                                if (d.has_arc(u, w) && s.positions[iu] > s.positions[j]) ok = false;
                                if (d.has_arc(w, u) && s.positions[j] > s.positions[iu]) ok = false;
                            }
                            if (ok) out.emplace(encode_signature(s, k), ckey);
                        }
                    }
                }
                break;
            }
            case NiceKind::Forget: {
                const int child = node.children[0];
                const VertexSet& cbag = ntd.nodes[child].bag;
                const int iu = index_in(cbag, node.vertex);
                for (const auto& [ckey, unused] : table[child]) {
                    Signature cs = decode_signature(ckey, size + 1, k);
                    Signature s;
                    for (int j = 0; j <= size; ++j) {
                        if (j == iu) continue;
                        s.colors.push_back(cs.colors[j]);
                        s.positions.push_back(cs.positions[j] - (cs.positions[j] > cs.positions[iu] ? 1 : 0));
                    }
                    out.emplace(encode_signature(s, k), ckey);
                }
                break;
            }
            case NiceKind::Join: {
                const auto& a = table[node.children[0]];
                const auto& b = table[node.children[1]];
                const auto& small = a.size() <= b.size() ? a : b;
                const auto& large = a.size() <= b.size() ? b : a;
                for (const auto& [key, unused] : small)
                    if (large.count(key)) out.emplace(key, key);
                break;
            }
        }
        if (out.size() > space) throw std::logic_error("solve_treewidth: table exceeds k^|bag| * |bag|!");
        st.table_sizes.push_back(out.size());
        st.bag_sizes.push_back(size);
        st.max_table = std::max(st.max_table, out.size());
        st.total_entries += out.size();
        if (st.total_entries > limits.max_nodes)
            throw Error(ErrorKind::BudgetExceeded, "treewidth DP exceeded " + std::to_string(limits.max_nodes) + " table entries");
    }

    const int root = ntd.root();
    if (table[root].empty()) return std::nullopt;
    Coloring result{std::vector<int>(d.num_vertices(), 0), k};
    std::vector<std::pair<int, std::uint64_t>> stack{{root, table[root].begin()->first}};
    while (!stack.empty()) {
        auto [t, key] = stack.back();
        stack.pop_back();
        const NiceNode& node = ntd.nodes[t];
        switch (node.kind) {
            case NiceKind::Leaf:
                break;
            case NiceKind::Introduce:
                stack.push_back({node.children[0], table[t].at(key)});
                break;
            case NiceKind::Forget: {
                const int child = node.children[0];
                std::uint64_t ckey = table[t].at(key);
                const VertexSet& cbag = ntd.nodes[child].bag;
                Signature cs = decode_signature(ckey, static_cast<int>(cbag.size()), k);
                result.colors[node.vertex] = cs.colors[index_in(cbag, node.vertex)];
                stack.push_back({child, ckey});
                break;
            }
            case NiceKind::Join:
                stack.push_back({node.children[0], key});
                stack.push_back({node.children[1], key});
                break;
        }
    }
    if (!is_proper_coloring(d, result)) throw std::logic_error("solve_treewidth: reconstructed coloring is not proper");
    return result;
}

}  // namespace dichro

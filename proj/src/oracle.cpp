#include "dichro/oracle.hpp"

#include <algorithm>
#include <string>

#include "dichro/error.hpp"

namespace dichro {

FeedbackSet FeedbackSet::of_arcs(std::vector<Arc> a) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return {Kind::Arc, {}, std::move(a)};
}

namespace {

class ColoringSearch {
public:
    ColoringSearch(const Digraph& d, int k, bool symmetry_broken, const SearchLimits& limits,
                   const std::function<bool(const Coloring&)>& visit)
        : d_(d), k_(k), symmetry_broken_(symmetry_broken), limits_(limits), visit_(visit),
          color_(d.num_vertices(), 0), stamp_(d.num_vertices(), 0) {}

    void run() {
        if (d_.num_vertices() == 0) {
            visit_(Coloring{{}, k_});
            return;
        }
        descend(0, 0);
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    // Assigning `color` to v closes a monochromatic cycle iff v reaches itself
    // through already-colored vertices of that color.
    bool closes_cycle(Vertex v, int color) {
        ++epoch_;
        stack_.clear();
        stack_.push_back(v);
        while (!stack_.empty()) {
            Vertex x = stack_.back();
            stack_.pop_back();
            for (Vertex y : d_.out_neighbors(x)) {
                if (y == v) return true;
                if (color_[y] != color || stamp_[y] == epoch_) continue;
                stamp_[y] = epoch_;
                stack_.push_back(y);
            }
        }
        return false;
    }

    // Returns false once the visitor asked to stop.
    bool descend(Vertex v, int max_used) {
        if (v == d_.num_vertices()) return visit_(Coloring{color_, k_});
        int limit = symmetry_broken_ ? std::min(k_, max_used + 1) : k_;
        for (int color = 1; color <= limit; ++color) {
            if (++nodes_ > limits_.max_nodes)
                throw Error(ErrorKind::BudgetExceeded,
                            "coloring search exceeded " + std::to_string(limits_.max_nodes) + " nodes");
            color_[v] = color;
            if (!closes_cycle(v, color) && !descend(v + 1, std::max(max_used, color))) return false;
            color_[v] = 0;
        }
        return true;
    }

    const Digraph& d_;
    int k_;
    bool symmetry_broken_;
    const SearchLimits& limits_;
    const std::function<bool(const Coloring&)>& visit_;
    std::vector<int> color_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
    std::vector<Vertex> stack_;
    std::uint64_t nodes_ = 0;
};

class PropagatingSearch {
public:
    PropagatingSearch(const Digraph& d, int k, const SearchLimits& limits)
        : d_(d), k_(k), limits_(limits), color_(d.num_vertices(), 0), stamp_(d.num_vertices(), 0) {}

    std::optional<Coloring> run() {
        if (solve()) return Coloring{color_, k_};
        return std::nullopt;
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    bool closes_cycle(Vertex v, int color) {
        ++epoch_;
        stack_.clear();
        stack_.push_back(v);
        while (!stack_.empty()) {
            Vertex x = stack_.back();
            stack_.pop_back();
            for (Vertex y : d_.out_neighbors(x)) {
                if (y == v) return true;
                if (color_[y] != color || stamp_[y] == epoch_) continue;
                stamp_[y] = epoch_;
                stack_.push_back(y);
            }
        }
        return false;
    }

    int max_used() const {
        int m = 0;
        for (int c : color_) m = std::max(m, c);
        return m;
    }

    // Admissible colors of v: the used colors that close no cycle, plus the
    // first unused color (all unused colors are interchangeable).
    std::vector<int> admissible(Vertex v, int used) {
        std::vector<int> out;
        for (int c = 1; c <= used; ++c)
            if (!closes_cycle(v, c)) out.push_back(c);
        if (used < k_) out.push_back(used + 1);
        return out;
    }

    bool solve() {
        if (++nodes_ > limits_.max_nodes)
            throw Error(ErrorKind::BudgetExceeded, "coloring search exceeded " + std::to_string(limits_.max_nodes) + " nodes");
        std::vector<Vertex> forced;
        Vertex branch = -1;
        std::vector<int> branch_colors;
        while (true) {
            const int used = max_used();
            branch = -1;
            bool progress = false;
            for (Vertex v = 0; v < d_.num_vertices(); ++v) {
                if (color_[v]) continue;
                auto options = admissible(v, used);
                if (options.empty()) {
                    for (Vertex f : forced) color_[f] = 0;
                    return false;
                }
                if (options.size() == 1) {
                    color_[v] = options[0];
                    forced.push_back(v);
                    progress = true;
                    break;
                }
                if (branch == -1 || options.size() < branch_colors.size()) {
                    branch = v;
                    branch_colors = std::move(options);
                }
            }
            if (!progress) break;
        }
        if (branch == -1) return true;
        for (int c : branch_colors) {
            color_[branch] = c;
            if (solve()) return true;
        }
        color_[branch] = 0;
        for (Vertex f : forced) color_[f] = 0;
        return false;
    }

    const Digraph& d_;
    int k_;
    const SearchLimits& limits_;
    std::vector<int> color_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
    std::vector<Vertex> stack_;
    std::uint64_t nodes_ = 0;
};

// Visit all size-`size` subsets of `pool` in lexicographic order until `accept` holds.
template <class T, class Accept>
std::optional<std::vector<T>> first_subset(const std::vector<T>& pool, std::size_t size, Accept&& accept,
                                           std::uint64_t& budget) {
    if (size > pool.size()) return std::nullopt;
    std::vector<std::size_t> index(size);
    for (std::size_t i = 0; i < size; ++i) index[i] = i;
    std::vector<T> chosen(size);
    while (true) {
        if (budget == 0) throw Error(ErrorKind::BudgetExceeded, "feedback set enumeration exhausted its budget");
        --budget;
        for (std::size_t i = 0; i < size; ++i) chosen[i] = pool[index[i]];
        if (accept(chosen)) return chosen;
        std::size_t i = size;
        while (i > 0 && index[i - 1] == pool.size() - size + (i - 1)) --i;
        if (i == 0) return std::nullopt;
        ++index[i - 1];
        for (std::size_t j = i; j < size; ++j) index[j] = index[j - 1] + 1;
    }
}

}  // namespace

void for_each_proper_coloring(const Digraph& d, int k, bool symmetry_broken,
                              const std::function<bool(const Coloring&)>& visit, const SearchLimits& limits,
                              SearchStats* stats) {
    if (k < 1) return;
    ColoringSearch search(d, k, symmetry_broken, limits, visit);
    try {
        search.run();
    } catch (...) {
        if (stats) stats->nodes += search.nodes();
        throw;
    }
    if (stats) stats->nodes += search.nodes();
}

std::optional<Coloring> k_colorable_bruteforce(const Digraph& d, int k, const SearchLimits& limits,
                                               SearchStats* stats) {
    std::optional<Coloring> found;
    for_each_proper_coloring(
        d, k, true,
        [&](const Coloring& c) {
            found = c;
            return false;
        },
        limits, stats);
    return found;
}

std::optional<Coloring> k_colorable_search(const Digraph& d, int k, const SearchLimits& limits, SearchStats* stats) {
    if (k < 1) return d.num_vertices() == 0 ? std::optional<Coloring>(Coloring{{}, k}) : std::nullopt;
    PropagatingSearch search(d, k, limits);
    try {
        auto result = search.run();
        if (stats) stats->nodes += search.nodes();
        return result;
    } catch (...) {
        if (stats) stats->nodes += search.nodes();
        throw;
    }
}

int dichromatic_number(const Digraph& d, const SearchLimits& limits, SearchStats* stats) {
    if (d.num_vertices() == 0) return 0;
    for (int k = 1;; ++k)
        if (k_colorable_bruteforce(d, k, limits, stats)) return k;
}

FeedbackSet min_dfvs_bruteforce(const Digraph& d, const SearchLimits& limits) {
    // A minimum feedback vertex set only ever uses vertices on cycles, so the
    // lexicographically least one is found among them.
    auto cyclic = cyclic_vertices(d);
    std::vector<Vertex> pool;
    for (Vertex v = 0; v < d.num_vertices(); ++v)
        if (cyclic[v]) pool.push_back(v);
    std::uint64_t budget = limits.max_nodes;
    std::vector<char> removed(d.num_vertices(), 0);
    for (std::size_t size = 0; size <= pool.size(); ++size) {
        auto hit = first_subset(
            pool, size,
            [&](const std::vector<Vertex>& s) {
                for (Vertex v : s) removed[v] = 1;
                bool ok = is_acyclic_without(d, removed);
                for (Vertex v : s) removed[v] = 0;
                return ok;
            },
            budget);
        if (hit) return FeedbackSet::of_vertices(*hit);
    }
    return FeedbackSet::of_vertices(pool);  // unreachable: the whole pool always works
}

FeedbackSet min_fas_bruteforce(const Digraph& d, const SearchLimits& limits) {
    auto component = strongly_connected_components(d);
    std::vector<Arc> pool;
    for (const Arc& a : d.arcs())
        if (component[a.tail] == component[a.head]) pool.push_back(a);
    std::uint64_t budget = limits.max_nodes;
    for (std::size_t size = 0; size <= pool.size(); ++size) {
        auto hit = first_subset(
            pool, size, [&](const std::vector<Arc>& s) { return is_acyclic_without(d, {}, s); }, budget);
        if (hit) return FeedbackSet::of_arcs(*hit);
    }
    return FeedbackSet::of_arcs(pool);
}

bool verify_feedback_set(const Digraph& d, const FeedbackSet& f) {
    if (f.kind == FeedbackSet::Kind::Vertex) {
        std::vector<char> removed(d.num_vertices(), 0);
        for (Vertex v : f.vertices) {
            if (v < 0 || v >= d.num_vertices())
                throw Error(ErrorKind::OutOfRange, "vertex " + std::to_string(v) + " not in digraph");
            removed[v] = 1;
        }
        return is_acyclic_without(d, removed);
    }
    for (const Arc& a : f.arcs) {
        if (a.tail < 0 || a.tail >= d.num_vertices() || a.head < 0 || a.head >= d.num_vertices() ||
            !d.has_arc(a.tail, a.head))
            throw Error(ErrorKind::OutOfRange,
                        "arc (" + std::to_string(a.tail) + "," + std::to_string(a.head) + ") not in digraph");
    }
    return is_acyclic_without(d, {}, f.arcs);
}

}  // namespace dichro

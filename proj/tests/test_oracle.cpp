#include <doctest.h>

#include <bit>
#include <random>

#include "dichro/error.hpp"
#include "dichro/oracle.hpp"
#include "helpers.hpp"

using namespace dichro;
using namespace dichro::testing;

namespace {

bool acyclic_by_enumeration(int n, const std::vector<Arc>& arcs) { return enumerate_cycles(Digraph(n, arcs)).empty(); }

// Minimum FAS size by bitmask enumeration over all arc subsets.
std::size_t min_fas_size_by_mask(const Digraph& d) {
    std::vector<Arc> all(d.arcs().begin(), d.arcs().end());
    std::size_t best = all.size();
    for (std::uint32_t mask = 0; mask < (1u << all.size()); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) >= best) continue;
        std::vector<Arc> kept;
        for (std::size_t i = 0; i < all.size(); ++i)
            if (!(mask >> i & 1)) kept.push_back(all[i]);
        if (acyclic_by_enumeration(d.num_vertices(), kept)) best = std::popcount(mask);
    }
    return best;
}

std::size_t min_dfvs_size_by_mask(const Digraph& d) {
    const int n = d.num_vertices();
    std::size_t best = n;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) >= best) continue;
        VertexSet keep;
        for (int v = 0; v < n; ++v)
            if (!(mask >> v & 1)) keep.push_back(v);
        if (enumerate_cycles(induced_subgraph(d, keep).graph).empty()) best = std::popcount(mask);
    }
    return best;
}

}  // namespace

TEST_CASE("k_colorable_bruteforce basics") {
    CHECK_FALSE(k_colorable_bruteforce(digon(), 1));
    auto c = k_colorable_bruteforce(digon(), 2);
    REQUIRE(c);
    CHECK(c->colors == std::vector<int>{1, 2});
    CHECK_FALSE(k_colorable_bruteforce(bidirected_clique(3), 2));
}

TEST_CASE("k_colorable_bruteforce returns the lexicographically least symmetry-broken coloring") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        Digraph d = random_digraph(6, 0.4, rng);
        for (int k = 1; k <= 3; ++k) {
            std::optional<std::vector<int>> expected;
            for_each_color_vector(6, k, [&](const std::vector<int>& colors) {
                if (expected) return;
                int max_used = 0;
                for (int color : colors) {
                    if (color > max_used + 1) return;
                    max_used = std::max(max_used, color);
                }
                if (no_monochromatic_cycle(d, colors)) expected = colors;
            });
            auto got = k_colorable_bruteforce(d, k);
            REQUIRE(got.has_value() == expected.has_value());
            if (got) CHECK(got->colors == *expected);
        }
    }
}

TEST_CASE("budget exhaustion is reported") {
    SearchLimits tiny{10};
    try {
        k_colorable_bruteforce(bidirected_clique(6), 5, tiny);
        FAIL("expected BudgetExceeded");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BudgetExceeded);
    }
}

TEST_CASE("dichromatic_number") {
    std::mt19937 rng(1);
    CHECK(dichromatic_number(random_dag(5, 0.5, rng)) == 1);
    CHECK(dichromatic_number(directed_cycle(5)) == 2);
    CHECK(dichromatic_number(bidirected_clique(4)) == 4);
    CHECK(dichromatic_number(Digraph()) == 0);
}

TEST_CASE("for_each_proper_coloring enumerates exactly the proper colorings") {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        Digraph d = random_digraph(5, 0.45, rng);
        std::vector<std::vector<int>> expected;
        for_each_color_vector(5, 2, [&](const std::vector<int>& colors) {
            if (no_monochromatic_cycle(d, colors)) expected.push_back(colors);
        });
        std::vector<std::vector<int>> got;
        for_each_proper_coloring(d, 2, false, [&](const Coloring& c) {
            got.push_back(c.colors);
            return true;
        });
        CHECK(got == expected);
    }
}

TEST_CASE("min_dfvs_bruteforce") {
    CHECK(min_dfvs_bruteforce(directed_cycle(3)).vertices == VertexSet{0});
    std::mt19937 rng(2);
    CHECK(min_dfvs_bruteforce(random_dag(6, 0.5, rng)).vertices.empty());
    Digraph two_digons(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
    CHECK(min_dfvs_bruteforce(two_digons).size() == 2);
}

TEST_CASE("min_fas_bruteforce") {
    CHECK(min_fas_bruteforce(digon()).size() == 1);
    std::mt19937 rng(4);
    CHECK(min_fas_bruteforce(random_dag(6, 0.5, rng)).arcs.empty());
    // oracle: no subset of at most two arcs of the bidirected triangle breaks all cycles
    Digraph k3 = bidirected_clique(3);
    CHECK(min_fas_size_by_mask(k3) == 3);
    auto fas = min_fas_bruteforce(k3);
    CHECK(fas.size() == 3);
    CHECK(verify_feedback_set(k3, fas));
}

TEST_CASE("verify_feedback_set") {
    CHECK(verify_feedback_set(directed_cycle(3), FeedbackSet::of_vertices({1})));
    CHECK_FALSE(verify_feedback_set(digon(), FeedbackSet::of_arcs({})));
    CHECK(verify_feedback_set(bidirected_clique(4), FeedbackSet::of_vertices({0, 1, 2, 3})));
    CHECK_THROWS_AS(verify_feedback_set(digon(), FeedbackSet::of_vertices({4})), Error);
    CHECK_THROWS_AS(verify_feedback_set(directed_path(3), FeedbackSet::of_arcs({{2, 0}})), Error);
}

TEST_CASE("oracle invariants on small random digraphs") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 120; ++trial) {
        std::uniform_int_distribution<int> size(1, 7);
        Digraph d = random_digraph(size(rng), 0.3, rng);
        auto dfvs = min_dfvs_bruteforce(d);
        auto fas = min_fas_bruteforce(d);
        CHECK(verify_feedback_set(d, dfvs));
        CHECK(verify_feedback_set(d, fas));
        CHECK(dfvs.size() == min_dfvs_size_by_mask(d));
        if (d.num_arcs() <= 14) CHECK(fas.size() == min_fas_size_by_mask(d));

        int chi = dichromatic_number(d);
        CHECK(chi <= static_cast<int>(dfvs.size()) + 1);
        auto c = k_colorable_bruteforce(d, chi);
        REQUIRE(c);
        CHECK(is_proper_coloring(d, *c));
        if (chi > 1) CHECK_FALSE(k_colorable_bruteforce(d, chi - 1));

        VertexSet s;
        for (Vertex v = 0; v < d.num_vertices(); ++v)
            if (rng() % 2) s.push_back(v);
        CHECK(dichromatic_number(induced_subgraph(d, s).graph) <= chi);
    }
}

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "dichro/error.hpp"
#include "dichro/permutation.hpp"
#include "dichro/twdp.hpp"
#include "helpers.hpp"

using namespace dichro;
using namespace dichro::testing;

namespace {

TreeDecomposition single_bag(int n) {
    VertexSet all(n);
    std::iota(all.begin(), all.end(), 0);
    return {n, {all}, {}};
}

// Both sides of the reformulation by brute force: a proper coloring exists
// iff some coloring and total order leave every arc bichromatic or forward.
bool colorable_via_orderings(const Digraph& d, int k) {
    const int n = d.num_vertices();
    bool found = false;
    for_each_color_vector(n, k, [&](const std::vector<int>& colors) {
        if (found) return;
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        do {
            std::vector<int> pos(n);
            for (int i = 0; i < n; ++i) pos[order[i]] = i;
            bool ok = std::all_of(d.arcs().begin(), d.arcs().end(), [&](const Arc& a) {
                return colors[a.tail] != colors[a.head] || pos[a.tail] < pos[a.head];
            });
            if (ok) {
                found = true;
                return;
            }
        } while (std::next_permutation(order.begin(), order.end()));
    });
    return found;
}

}  // namespace

TEST_CASE("permutation rank round trip") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(5) == 120);
    CHECK(permutation_rank({0, 1, 2}) == 0);
    CHECK(permutation_rank({2, 1, 0}) == 5);
    CHECK(permutation_rank({1, 0, 2}) == 2);
    for (int n = 0; n <= 5; ++n) {
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        std::uint64_t expected = 0;
        do {
            CHECK(permutation_rank(p) == expected);
            CHECK(permutation_unrank(expected, n) == p);
            ++expected;
        } while (std::next_permutation(p.begin(), p.end()));
    }
    CHECK_THROWS_AS(permutation_unrank(6, 3), Error);
}

TEST_CASE("signature encoding is a bijection onto k^s * s!") {
    for (int k = 1; k <= 3; ++k)
        for (int s = 0; s <= 4; ++s) {
            std::uint64_t space = factorial(s);
            for (int i = 0; i < s; ++i) space *= k;
            for (std::uint64_t key = 0; key < space; ++key) {
                Signature sig = decode_signature(key, s, k);
                CHECK(encode_signature(sig, k) == key);
            }
        }
}

TEST_CASE("validate_decomposition") {
    CHECK(validate_decomposition(directed_cycle(3), single_bag(3)));
    CHECK(validate_decomposition(directed_path(3), {3, {{0, 1}, {1, 2}}, {{0, 1}}}));
    auto bad = validate_decomposition(Digraph(3, {{0, 2}}), {3, {{0, 1}, {1, 2}}, {{0, 1}}});
    CHECK_FALSE(bad);
    CHECK(bad.reason.find("0->2") != std::string::npos);
    // vertex 1 in two bags separated by a bag without it
    CHECK_FALSE(validate_decomposition(directed_path(3), {3, {{0, 1}, {0, 2}, {1, 2}}, {{0, 1}, {1, 2}}}));
    CHECK_FALSE(validate_decomposition(directed_path(3), {3, {{0, 1}}, {}}));
    CHECK_FALSE(validate_decomposition(directed_path(3), {3, {{0, 1}, {1, 2}}, {}}));
    CHECK_FALSE(validate_decomposition(directed_path(3), {3, {{0, 1, 5}}, {}}));
    CHECK(validate_decomposition(Digraph(), {0, {}, {}}));
}

TEST_CASE("make_nice on one bag") {
    auto ntd = make_nice(digon(), single_bag(2));
    REQUIRE(ntd.nodes.size() == 5);
    CHECK(ntd.nodes[0].kind == NiceKind::Leaf);
    CHECK(ntd.nodes[1].kind == NiceKind::Introduce);
    CHECK(ntd.nodes[1].vertex == 0);
    CHECK(ntd.nodes[2].kind == NiceKind::Introduce);
    CHECK(ntd.nodes[2].vertex == 1);
    CHECK(ntd.nodes[3].kind == NiceKind::Forget);
    CHECK(ntd.nodes[4].kind == NiceKind::Forget);
    CHECK(ntd.nodes[4].bag.empty());
    CHECK(ntd.width() == 1);
}

TEST_CASE("make_nice merges equal adjacent bags without a join") {
    TreeDecomposition td{2, {{0, 1}, {0, 1}}, {{0, 1}}};
    auto ntd = make_nice(digon(), td);
    CHECK(std::none_of(ntd.nodes.begin(), ntd.nodes.end(), [](const NiceNode& x) { return x.kind == NiceKind::Join; }));
    CHECK(validate_nice(digon(), ntd));
    CHECK_THROWS_AS(make_nice(digon(), {2, {{0}, {1}}, {{0, 1}}}), Error);
}

TEST_CASE("greedy_decomposition widths") {
    // an oriented tree
    Digraph tree(6, {{0, 1}, {0, 2}, {3, 1}, {1, 4}, {5, 4}});
    auto td = greedy_decomposition(tree);
    CHECK(validate_decomposition(tree, td));
    CHECK(td.width() == 1);
    auto k4 = greedy_decomposition(bidirected_clique(4));
    CHECK(k4.width() == 3);
    for (int n = 3; n <= 8; ++n) {
        auto c = greedy_decomposition(directed_cycle(n));
        CHECK(validate_decomposition(directed_cycle(n), c));
        CHECK(c.width() <= 2);
    }
    CHECK(validate_decomposition(Digraph(4, {}), greedy_decomposition(Digraph(4, {}))));
}

TEST_CASE("nice decompositions of random graphs are valid") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        Digraph d = random_digraph(1 + static_cast<int>(rng() % 12), 0.2, rng);
        auto td = greedy_decomposition(d);
        REQUIRE(validate_decomposition(d, td));
        auto ntd = make_nice(d, td);
        auto v = validate_nice(d, ntd);
        CHECK_MESSAGE(v.ok, v.reason);
        CHECK(ntd.width() == td.width());
    }
}

TEST_CASE("validate_nice rejects broken node kinds") {
    auto ntd = make_nice(digon(), single_bag(2));
    auto broken = ntd;
    broken.nodes[2].vertex = 0;
    CHECK_FALSE(validate_nice(digon(), broken));
    broken = ntd;
    broken.nodes.pop_back();
    CHECK_FALSE(validate_nice(digon(), broken));
}

TEST_CASE("solve_treewidth examples") {
    auto c = solve_treewidth(digon(), make_nice(digon(), single_bag(2)), 2);
    REQUIRE(c);
    CHECK(is_proper_coloring(digon(), *c));
    CHECK(c->colors[0] != c->colors[1]);

    Digraph k3 = bidirected_clique(3);
    CHECK_FALSE(solve_treewidth(k3, make_nice(k3, single_bag(3)), 2));
    CHECK(solve_treewidth(k3, make_nice(k3, single_bag(3)), 3));

    auto e = solve_treewidth(Digraph(), make_nice(Digraph(), {0, {}, {}}), 2);
    REQUIRE(e);
    CHECK(e->colors.empty());

    NiceTreeDecomposition wrong = make_nice(digon(), single_bag(2));
    CHECK_THROWS_AS(solve_treewidth(directed_cycle(3), wrong, 2), Error);
}

TEST_CASE("solve_treewidth budget") {
    Digraph d = bidirected_clique(5);
    try {
        solve_treewidth(d, make_nice(d, greedy_decomposition(d)), 5, SearchLimits{100});
        FAIL("expected BudgetExceeded");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BudgetExceeded);
    }
}

TEST_CASE("ordering reformulation matches the coloring oracle") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        Digraph d = random_digraph(2 + static_cast<int>(rng() % 5), 0.4, rng);
        for (int k = 1; k <= 2; ++k)
            CHECK(colorable_via_orderings(d, k) == k_colorable_bruteforce(d, k).has_value());
    }
}

TEST_CASE("solve_treewidth matches the oracle") {
    std::mt19937 rng(5);
    int positives = 0, negatives = 0;
    for (int trial = 0; trial < 300; ++trial) {
        int n = 3 + static_cast<int>(rng() % 10);
        int k = 2 + static_cast<int>(trial % 2);
        Digraph d = random_digraph(n, k == 2 ? 0.25 : 0.4, rng);
        auto td = greedy_decomposition(d);
        if (td.width() > 4) continue;
        TwdpStats stats;
        auto got = solve_treewidth(d, make_nice(d, td), k, {}, &stats);
        auto expected = k_colorable_bruteforce(d, k);
        CHECK(got.has_value() == expected.has_value());
        if (got) {
            CHECK(no_monochromatic_cycle(d, got->colors));
            ++positives;
        } else {
            ++negatives;
        }
        for (std::size_t t = 0; t < stats.table_sizes.size(); ++t) {
            std::uint64_t bound = factorial(stats.bag_sizes[t]);
            for (int i = 0; i < stats.bag_sizes[t]; ++i) bound *= k;
            CHECK(stats.table_sizes[t] <= bound);
        }
    }
    CHECK(positives > 50);
    CHECK(negatives > 2);
}

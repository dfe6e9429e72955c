#include <doctest.h>

#include <random>

#include "dichro/digraph.hpp"
#include "dichro/error.hpp"
#include "helpers.hpp"

using namespace dichro;
using namespace dichro::testing;

TEST_CASE("construction rejects loops, duplicates and bad ids") {
    CHECK_THROWS_AS(Digraph(2, {{1, 1}}), Error);
    try {
        Digraph(2, {{0, 1}, {0, 1}});
        FAIL("expected DuplicateArc");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DuplicateArc);
    }
    try {
        Digraph(2, {{0, 2}});
        FAIL("expected OutOfRange");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OutOfRange);
    }
    Digraph d = digon();
    CHECK(d.has_digon(0, 1));
    CHECK(d.num_arcs() == 2);
}

TEST_CASE("is_acyclic") {
    CHECK(is_acyclic(Digraph(1, {})));
    CHECK_FALSE(is_acyclic(digon()));
    CHECK_FALSE(is_acyclic(directed_cycle(3)));
    CHECK(is_acyclic(directed_path(5)));
}

TEST_CASE("topological_order") {
    auto path = topological_order(directed_path(3));
    CHECK(path.position == std::vector<int>{1, 2, 3});

    try {
        topological_order(digon());
        FAIL("expected CyclicInput");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::CyclicInput);
    }

    Digraph dag(4, {{0, 2}, {1, 2}, {2, 3}});
    auto order = topological_order(dag);
    CHECK(order.position[0] < order.position[2]);
    CHECK(order.position[1] < order.position[2]);
    CHECK(order.position[2] < order.position[3]);
}

TEST_CASE("topological_order succeeds exactly on acyclic inputs") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        Digraph d = trial % 2 ? random_dag(8, 0.4, rng) : random_digraph(7, 0.2, rng);
        bool acyclic = is_acyclic(d);
        CHECK(acyclic == enumerate_cycles(d).empty());
        if (acyclic) {
            auto order = topological_order(d);
            for (const Arc& a : d.arcs()) CHECK(order.position[a.tail] < order.position[a.head]);
        } else {
            CHECK_THROWS_AS(topological_order(d), Error);
        }
    }
}

TEST_CASE("is_proper_coloring") {
    CHECK(is_proper_coloring(digon(), {{1, 2}, 2}));
    CHECK_FALSE(is_proper_coloring(digon(), {{1, 1}, 2}));
    CHECK(is_proper_coloring(directed_cycle(3), {{1, 1, 2}, 2}));
    try {
        is_proper_coloring(digon(), {{1}, 2});
        FAIL("expected ArityMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ArityMismatch);
    }
}

TEST_CASE("is_proper_coloring agrees with cycle enumeration") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        std::uniform_int_distribution<int> size(1, 8);
        Digraph d = random_digraph(size(rng), 0.3, rng);
        std::uniform_int_distribution<int> pick(1, 3);
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<int> colors(d.num_vertices());
            for (int& c : colors) c = pick(rng);
            CHECK(is_proper_coloring(d, {colors, 3}) == no_monochromatic_cycle(d, colors));
        }
    }
}

TEST_CASE("induced_subgraph") {
    auto sub = induced_subgraph(directed_cycle(3), {0, 1});
    CHECK(sub.graph == Digraph(2, {{0, 1}}));
    CHECK(induced_subgraph(directed_cycle(3), {}).graph.num_vertices() == 0);

    Digraph d(3, {{0, 1}, {1, 0}, {1, 2}});
    auto two = induced_subgraph(d, {0, 1});
    CHECK(two.graph == digon());
    CHECK(two.from_original[2] == -1);

    auto relabeled = induced_subgraph(d, {1, 2});
    CHECK(relabeled.graph == Digraph(2, {{0, 1}}));
    CHECK(relabeled.to_original == std::vector<Vertex>{1, 2});

    CHECK_THROWS_AS(induced_subgraph(d, {5}), Error);
}

TEST_CASE("induced_subgraph keeps exactly the inner arcs") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        Digraph d = random_digraph(9, 0.35, rng);
        VertexSet s;
        for (Vertex v = 0; v < 9; ++v)
            if (rng() % 2) s.push_back(v);
        auto sub = induced_subgraph(d, s);
        std::size_t inner = 0;
        for (const Arc& a : d.arcs()) {
            bool in_s = sub.from_original[a.tail] >= 0 && sub.from_original[a.head] >= 0;
            if (!in_s) continue;
            ++inner;
            CHECK(sub.graph.has_arc(sub.from_original[a.tail], sub.from_original[a.head]));
        }
        CHECK(sub.graph.num_arcs() == inner);
    }
}

TEST_CASE("closed_neighborhood") {
    CHECK(closed_neighborhood(directed_path(3), {1}) == VertexSet{0, 1, 2});
    CHECK(closed_neighborhood(Digraph(1, {}), {0}) == VertexSet{0});
    Digraph d(3, {{0, 1}, {1, 0}, {2, 0}});
    CHECK(closed_neighborhood(d, {0}) == VertexSet{0, 1, 2});
}

TEST_CASE("max_degree") {
    CHECK(max_degree(digon()) == 2);
    CHECK(max_degree(directed_cycle(3)) == 2);
    CHECK(max_degree(bidirected_clique(3)) == 4);
}

TEST_CASE("is_bidirected_clique") {
    CHECK(is_bidirected_clique(digon(), {0, 1}));
    CHECK_FALSE(is_bidirected_clique(directed_cycle(3), {0, 1, 2}));
    CHECK(is_bidirected_clique(directed_cycle(3), {2}));
}

TEST_CASE("cyclic_vertices marks non-trivial strong components") {
    Digraph d(5, {{0, 1}, {1, 0}, {1, 2}, {2, 3}, {3, 4}, {4, 2}});
    auto cyclic = cyclic_vertices(d);
    CHECK(cyclic == std::vector<char>{1, 1, 1, 1, 1});
    Digraph e(3, {{0, 1}, {1, 2}});
    CHECK(cyclic_vertices(e) == std::vector<char>{0, 0, 0});
}

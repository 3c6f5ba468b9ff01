#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gnc/catalog.hpp"
#include "gnc/relgraph.hpp"

using namespace gnc;

namespace {

ElementId by_label(const FiniteGroup& G, const std::string& s) {
    const auto id = G.find_label(s);
    REQUIRE(id.has_value());
    return *id;
}

// Adjacency recomputed straight from the definition, as the oracle for the
// RelGraph constructor.
bool oracle_adjacent(const FiniteGroup& G, const Subgroup& H, ElementId g, int x, int y) {
    if (x == y) return false;
    if (!H.contains(x) && !H.contains(y)) return false;
    const ElementId c = G.commutator(x, y);
    return c != g && c != G.inv(g);
}

SimpleGraph path_graph(int n) {
    SimpleGraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

SimpleGraph lollipop_graph(int clique, int path) {
    SimpleGraph g(clique + path);
    for (int i = 0; i < clique; ++i)
        for (int j = i + 1; j < clique; ++j) g.add_edge(i, j);
    for (int i = 0; i < path; ++i) g.add_edge(i == 0 ? 0 : clique + i - 1, clique + i);
    return g;
}

} // namespace

TEST_CASE("graph construction matches the adjacency definition") {
    for (const std::string& spec : {"S3", "D4", "Q8", "C2xC3"}) {
        const FiniteGroup G = build_group(spec);
        for (const Subgroup& H : all_subgroups(G))
            for (int g = 0; g < G.order(); ++g) {
                const RelGraph graph(G, H, g);
                int degree_sum = 0;
                for (int x = 0; x < G.order(); ++x) {
                    CHECK_FALSE(graph.adjacent(x, x));
                    degree_sum += graph.degree(x);
                    for (int y = 0; y < G.order(); ++y) {
                        CHECK(graph.adjacent(x, y) == oracle_adjacent(G, H, g, x, y));
                        CHECK(graph.adjacent(x, y) == graph.adjacent(y, x));
                        if (!H.contains(x) && !H.contains(y)) CHECK_FALSE(graph.adjacent(x, y));
                    }
                }
                CHECK(degree_sum == 2 * graph.edge_count()); // handshake
            }
    }
}

TEST_CASE("named instances: empty, star, join") {
    const FiniteGroup C4 = build_group("C4");
    const RelGraph empty(C4, Subgroup::whole(C4), 0);
    CHECK(empty.edge_count() == 0);
    CHECK(empty.classify_shape() == ShapeClass{ShapeClass::EmptyGraph});
    CHECK(empty.degree(2) == 0);

    const FiniteGroup S3 = build_group("S3");
    const Subgroup h2 = generated_subgroup(S3, {by_label(S3, "(12)")});
    const RelGraph star(S3, h2, by_label(S3, "(123)"));
    CHECK(star.edge_count() == 5);
    CHECK(star.degree(0) == 5);
    CHECK(star.classify_shape() == ShapeClass{ShapeClass::Star, 0});
    CHECK(star.is_triangle_free());

    const Subgroup a3 = generated_subgroup(S3, {by_label(S3, "(123)")});
    const RelGraph join(S3, a3, by_label(S3, "(12)"));
    CHECK(join.edge_count() == 12);
    CHECK(join.classify_shape() == ShapeClass{ShapeClass::JoinCompleteWithIsolatedRest, 3});
    for (int x = 0; x < 6; ++x) CHECK(join.degree(x) == (a3.contains(x) ? 5 : 3));
}

TEST_CASE("named instances: degrees and edges in D8 and S3") {
    const FiniteGroup D8 = build_group("D4");
    const Subgroup rot = generated_subgroup(D8, {by_label(D8, "r")});
    const RelGraph graph(D8, rot, by_label(D8, "r2"));
    CHECK(graph.edge_count() == 14);
    CHECK(graph.degree(by_label(D8, "r")) == 3); // 8 - |C_G(r)| - 1

    const FiniteGroup S3 = build_group("S3");
    const Subgroup a3 = generated_subgroup(S3, {by_label(S3, "(123)")});
    CHECK(RelGraph(S3, a3, 0).edge_count() == 6);
    CHECK(RelGraph(S3, Subgroup::whole(S3), 0).edge_count() == 9);
}

TEST_CASE("g = 1 graphs are never trees, stars or complete") {
    for (const std::string& spec : {"S3", "D4", "Q8"}) {
        const FiniteGroup G = build_group(spec);
        for (const Subgroup& H : all_subgroups(G)) {
            const ShapeClass shape = RelGraph(G, H, 0).classify_shape();
            CHECK(shape.kind != ShapeClass::Tree);
            CHECK(shape.kind != ShapeClass::Star);
            CHECK(shape.kind != ShapeClass::CompleteGraph);
        }
    }
}

TEST_CASE("triangle detection") {
    const FiniteGroup S3 = build_group("S3");
    const Subgroup a3 = generated_subgroup(S3, {by_label(S3, "(123)")});
    const RelGraph g(S3, a3, by_label(S3, "(123)"));
    CHECK_FALSE(g.is_triangle_free()); // 1, x, x^{-1} with x of order 3

    SimpleGraph empty(4);
    CHECK(empty.is_triangle_free());
    SimpleGraph triangle(3);
    triangle.add_edge(0, 1);
    triangle.add_edge(1, 2);
    triangle.add_edge(0, 2);
    CHECK_FALSE(triangle.is_triangle_free());
}

TEST_CASE("shape classification on synthetic graphs") {
    CHECK(SimpleGraph(1).classify_shape() == ShapeClass{ShapeClass::EmptyGraph});
    CHECK(path_graph(2).classify_shape() == ShapeClass{ShapeClass::CompleteGraph});
    CHECK(path_graph(4).classify_shape() == ShapeClass{ShapeClass::Tree});
    CHECK(lollipop_graph(3, 1).classify_shape() == ShapeClass{ShapeClass::Lollipop, 3, 1});
    CHECK(lollipop_graph(4, 3).classify_shape() == ShapeClass{ShapeClass::Lollipop, 4, 3});
    CHECK(lollipop_graph(3, 2).classify_shape() == ShapeClass{ShapeClass::Lollipop, 3, 2});

    SimpleGraph star5(6);
    for (int leaf = 1; leaf < 6; ++leaf) star5.add_edge(0, leaf);
    CHECK(star5.classify_shape() == ShapeClass{ShapeClass::Star, 0});

    SimpleGraph complete(4);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) complete.add_edge(i, j);
    CHECK(complete.classify_shape() == ShapeClass{ShapeClass::CompleteGraph});

    // Cycle: connected, no leaf, not complete -> Other.
    SimpleGraph cycle(5);
    for (int i = 0; i < 5; ++i) cycle.add_edge(i, (i + 1) % 5);
    CHECK(cycle.classify_shape() == ShapeClass{ShapeClass::Other});

    // Near-lollipop with an extra chord is rejected by the edge-count check.
    SimpleGraph chord = lollipop_graph(4, 2);
    chord.add_edge(1, 4);
    CHECK(chord.classify_shape() == ShapeClass{ShapeClass::Other});

    // Two triangles sharing a vertex plus a pendant: unique leaf but no clique.
    SimpleGraph bowtie(6);
    bowtie.add_edge(0, 1);
    bowtie.add_edge(1, 2);
    bowtie.add_edge(0, 2);
    bowtie.add_edge(2, 3);
    bowtie.add_edge(3, 4);
    bowtie.add_edge(2, 4);
    bowtie.add_edge(0, 5);
    CHECK(bowtie.classify_shape() == ShapeClass{ShapeClass::Other});
}

TEST_CASE("domination number") {
    const FiniteGroup S3 = build_group("S3");
    const Subgroup h2 = generated_subgroup(S3, {by_label(S3, "(12)")});
    CHECK(RelGraph(S3, h2, by_label(S3, "(123)")).domination_number() == 1);
    CHECK(RelGraph(S3, h2, 0).domination_number() == 2); // |Z(H,S3)| + 1, sharp

    const FiniteGroup C4 = build_group("C4");
    CHECK(RelGraph(C4, Subgroup::whole(C4), 0).domination_number() == 4); // empty graph

    CHECK(path_graph(6).domination_number() == 2);
    CHECK(lollipop_graph(3, 2).domination_number() == 2);

    SimpleGraph big(25);
    CHECK_THROWS_AS(big.domination_number(), TooLarge);

    // Any instance with g != 1 is dominated by the identity alone.
    for (const std::string& spec : {"S3", "D4", "Q8", "A4"}) {
        const FiniteGroup G = build_group(spec);
        for (const Subgroup& H : all_subgroups(G))
            for (int g = 1; g < G.order(); ++g)
                CHECK(RelGraph(G, H, g).domination_number() == 1);
    }
}

TEST_CASE("graph isomorphism") {
    const FiniteGroup S3 = build_group("S3");
    const Subgroup h2 = generated_subgroup(S3, {by_label(S3, "(12)")});
    const RelGraph star(S3, h2, by_label(S3, "(123)"));

    const auto self = graphs_isomorphic(star, star);
    REQUIRE(self.has_value());
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            CHECK(star.adjacent(a, b) ==
                  star.adjacent((*self)[static_cast<size_t>(a)], (*self)[static_cast<size_t>(b)]));

    // Two 5-edge stars with different centers are isomorphic, center to center.
    SimpleGraph other_center(6);
    for (int v = 0; v < 6; ++v)
        if (v != 3) other_center.add_edge(3, v);
    const auto map = graphs_isomorphic(star.graph(), other_center);
    REQUIRE(map.has_value());
    CHECK((*map)[0] == 3);

    // Same degree sequence, different structure: P4 vs K3 + isolated vertex.
    SimpleGraph p4 = path_graph(4);
    SimpleGraph k3_plus(4);
    k3_plus.add_edge(0, 1);
    k3_plus.add_edge(1, 2);
    k3_plus.add_edge(0, 2);
    CHECK_FALSE(graphs_isomorphic(p4, k3_plus).has_value());
    CHECK_FALSE(graphs_isomorphic(p4, path_graph(5)).has_value());

    SimpleGraph too_big(30);
    CHECK_THROWS_AS(graphs_isomorphic(too_big, too_big), TooLarge);
}

TEST_CASE("DOT export is deterministic and marks H with boxes") {
    const FiniteGroup S3 = build_group("S3");
    const Subgroup h2 = generated_subgroup(S3, {by_label(S3, "(12)")});
    const RelGraph star(S3, h2, by_label(S3, "(123)"));

    const std::string dot = star.to_dot();
    CHECK(dot.find("n0 [label=\"e\", shape=box]") != std::string::npos);
    CHECK(dot.find("shape=ellipse") != std::string::npos);

    const std::string path1 = "gnc_dot_a.dot";
    const std::string path2 = "gnc_dot_b.dot";
    star.export_dot(path1);
    star.export_dot(path2);
    std::ifstream f1(path1), f2(path2);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    CHECK(s1.str() == dot);
    // 6 nodes, 5 edges
    CHECK(std::count(dot.begin(), dot.end(), '[') == 6);
    CHECK(dot.find(" -- ") != std::string::npos);
    std::remove(path1.c_str());
    std::remove(path2.c_str());

    const FiniteGroup C2 = build_group("C2");
    const RelGraph empty(C2, Subgroup::whole(C2), 0);
    const std::string empty_dot = empty.to_dot();
    CHECK(std::count(empty_dot.begin(), empty_dot.end(), '[') == 2);
    CHECK(empty_dot.find(" -- ") == std::string::npos);

    CHECK_THROWS_AS(star.export_dot("no_such_dir/x.dot"), FileError);
}

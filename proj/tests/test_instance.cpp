#include "sfpd/instance.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace sfpd;

TEST_CASE("minimal well-formed file") {
    Instance inst = parse_instance("n 2\ne 0 1 3/2\np 0 1\n");
    CHECK(inst.vertex_count() == 2);
    REQUIRE(inst.edge_count() == 1);
    CHECK(inst.edge(0).cost == Rational(3, 2));
    REQUIRE(inst.pair_count() == 1);
    CHECK(inst.pair(0).s == 0);
    CHECK(inst.pair(0).t == 1);
}

TEST_CASE("parse errors carry line numbers") {
    auto expect_error = [](const std::string& text, int line) {
        try {
            parse_instance(text);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == line);
        }
    };
    expect_error("n 2\ne 0 1 0\np 0 1\n", 2);      // non-positive cost
    expect_error("n 2\ne 0 1 -1\np 0 1\n", 2);     // negative cost
    expect_error("n 2\ne 0 3 1\np 0 1\n", 2);      // out-of-range vertex
    expect_error("n 2\ne 0 1 1\np 1 1\n", 3);      // s == t
    expect_error("n 2\nq 0 1\n", 2);               // unknown record
    expect_error("n 2\ne 0 1\np 0 1\n", 2);        // malformed edge
    expect_error("e 0 1 1\n", 1);                  // edge before n
}

TEST_CASE("comments and record order") {
    Instance inst = parse_instance(
        "# steiner forest instance\n"
        "n 4\n"
        "p 0 3   # the only pair\n"
        "e 2 3 1/3\n"
        "e 0 1 1\n"
        "e 1 2 5\n");
    CHECK(inst.edge_count() == 3);
    // canonical order sorts edges by (u, v)
    CHECK(inst.edge(0).u == 0);
    CHECK(inst.edge(2).v == 3);
}

TEST_CASE("duplicate edges rejected") {
    CHECK_THROWS(parse_instance("n 2\ne 0 1 1\ne 1 0 2\np 0 1\n"));
}

TEST_CASE("emit then parse is identity") {
    Instance inst = parse_instance("n 3\ne 1 2 7/3\ne 0 1 0.5\np 0 2\np 1 0\n");
    Instance again = parse_instance(inst.emit());
    CHECK(inst == again);
    CHECK(inst.emit() == again.emit());
}

TEST_CASE("bidirect produces arc pairs at half cost") {
    Instance inst = parse_instance("n 2\ne 0 1 1\np 0 1\n");
    auto arcs = bidirect(inst);
    REQUIRE(arcs.size() == 2);
    CHECK(arcs[0].tail == 0);
    CHECK(arcs[0].head == 1);
    CHECK(arcs[0].cost == Rational(1, 2));
    CHECK(arcs[1].tail == 1);
    CHECK(arcs[1].head == 0);
    CHECK(arcs[1].cost == Rational(1, 2));
    CHECK(arcs[0].parent_edge == 0);
    CHECK(reverse_arc(0) == 1);
    CHECK(reverse_arc(1) == 0);
}

TEST_CASE("arc cost halves sum back to edge costs") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> nd(2, 9), numd(1, 20), dend(1, 10);
    for (int iter = 0; iter < 50; ++iter) {
        int n = nd(rng);
        std::vector<Edge> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng() % 2)
                    edges.push_back(Edge{u, v, Rational(numd(rng), dend(rng))});
        if (edges.empty()) continue;
        Instance inst(n, edges, {TerminalPair{0, 1}});
        auto arcs = bidirect(inst);
        CHECK(arcs.size() == 2 * edges.size());
        Rational arc_sum;
        for (const auto& a : arcs) arc_sum += a.cost;
        CHECK(arc_sum == inst.total_edge_cost());
    }
}

TEST_CASE("first_disconnected_pair") {
    Instance ok = parse_instance("n 3\ne 0 1 1\ne 1 2 1\np 0 2\n");
    CHECK(first_disconnected_pair(ok) == -1);
    Instance bad = parse_instance("n 4\ne 0 1 1\ne 2 3 1\np 0 1\np 1 2\n");
    CHECK(first_disconnected_pair(bad) == 1);
}

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "rcst/errors.hpp"
#include "rcst/graph.hpp"
#include "rcst/spanning_tree.hpp"

#include "helpers.hpp"

using namespace rcst;
using rcst_test::make_graph;
using rcst_test::parse;

TEST_CASE("parse_graph accepts the full directive set") {
    Graph g = parse("# comment\n"
                    "graph 4 4\n"
                    "edge 0 1 3\n"
                    "edge 1 2 0\n"
                    "edge 2 3 5\n"
                    "\n"
                    "edge 0 3 1\n"
                    "req 1 7\n"
                    "sources 0 3 3 2\n");
    REQUIRE(g.vertex_count() == 4);
    REQUIRE(g.edge_count() == 4);
    REQUIRE(g.edge(1).w == 0);
    REQUIRE(g.requirement(1) == 7);
    REQUIRE(g.requirement(0) == 0);
    REQUIRE(g.sources());
    CHECK(g.sources()->s1 == 0);
    CHECK(g.sources()->s2 == 3);
    CHECK(g.sources()->p == 3);
    CHECK(g.sources()->q == 2);
}

TEST_CASE("parse_graph reports the offending line") {
    auto line_of = [](const std::string& text) {
        try {
            parse(text);
        } catch (const ParseError& e) {
            return e.line;
        }
        return -1;
    };
    CHECK(line_of("graph 2 1\nedge 0 2 1\n") == 2);
    CHECK(line_of("graph 2 1\nedge 0 0 1\n") == 2);
    CHECK(line_of("graph 2 1\nedge 0 1 -4\n") == 2);
    CHECK(line_of("graph 3 2\nedge 0 1 1\nedge 1 0 2\n") == 3);
    CHECK(line_of("edge 0 1 1\n") == 1);
    CHECK(line_of("graph 2 1\nedge 0 1 1\nbogus 1\n") == 3);
    CHECK(line_of("graph 2 1\nedge 0 1 1x\n") == 2);
    CHECK(line_of("graph 2 1\nedge 0 1\n") == 2);
    CHECK(line_of("graph 0 0\n") == 1);
    CHECK(line_of("graph 2 1\ngraph 2 1\n") == 2);
    CHECK(line_of("graph 3 1\nedge 0 1 1\nreq 3 1\n") == 3);
    CHECK(line_of("graph 3 1\nedge 0 1 1\nreq 1 2\nreq 1 2\n") == 4);
    CHECK(line_of("graph 3 1\nedge 0 1 1\nsources 0 1 1 2\n") == 3);
    CHECK(line_of("graph 2 0\nedge 0 1 1\n") == 2);
    CHECK(line_of("") == 0);
    // declared edge count not met is only detectable at end of input
    CHECK_THROWS_AS(parse("graph 3 2\nedge 0 1 1\n"), ParseError);
}

TEST_CASE("graph constructor enforces invariants") {
    CHECK_THROWS_AS(make_graph(0, {}), InvariantError);
    CHECK_THROWS_AS(make_graph(2, {{0, 2, 1}}), InvariantError);
    CHECK_THROWS_AS(make_graph(2, {{1, 1, 1}}), InvariantError);
    CHECK_THROWS_AS(make_graph(2, {{0, 1, -1}}), InvariantError);
    CHECK_THROWS_AS(make_graph(3, {{0, 1, 1}, {1, 0, 2}}), InvariantError);
    CHECK_THROWS_AS(make_graph(2, {{0, 1, 1}}, {1}), InvariantError);
    CHECK_THROWS_AS(make_graph(2, {{0, 1, 1}}, {1, -2}), InvariantError);
    CHECK_THROWS_AS(make_graph(2, {{0, 1, 1}}, {}, TwoSourceSpec{0, 2, 1, 1}), InvariantError);
    CHECK_THROWS_AS(make_graph(2, {{0, 1, 1}}, {}, TwoSourceSpec{0, 1, 1, 2}), InvariantError);
    CHECK_NOTHROW(make_graph(1, {}));
}

TEST_CASE("find_edge is endpoint order insensitive") {
    Graph g = make_graph(4, {{0, 1, 2}, {2, 1, 3}, {3, 0, 4}});
    REQUIRE(g.find_edge(1, 2).has_value());
    CHECK(*g.find_edge(1, 2) == 1);
    CHECK(*g.find_edge(2, 1) == 1);
    CHECK(*g.find_edge(0, 3) == 2);
    CHECK_FALSE(g.find_edge(1, 3).has_value());
}

TEST_CASE("is_connected") {
    CHECK(is_connected(make_graph(1, {})));
    CHECK(is_connected(make_graph(3, {{0, 1, 1}, {1, 2, 1}})));
    CHECK_FALSE(is_connected(make_graph(3, {{0, 1, 1}})));
    CHECK_FALSE(is_connected(make_graph(2, {})));
}

TEST_CASE("zero_weight_spanning_tree finds a spanning zero subgraph") {
    // zero edges span: 0-1-2-3 all zero, extra positive edge ignored
    Graph g = make_graph(4, {{0, 1, 0}, {1, 2, 0}, {2, 3, 0}, {0, 3, 9}});
    auto tree = zero_weight_spanning_tree(g);
    REQUIRE(tree.has_value());
    SpanningTree t = verify_spanning_tree(g, *tree);
    for (int e : *tree) CHECK(g.edge(e).w == 0);

    // zero edges present but not spanning
    Graph h = make_graph(4, {{0, 1, 0}, {1, 2, 0}, {2, 3, 1}, {0, 3, 9}});
    CHECK_FALSE(zero_weight_spanning_tree(h).has_value());

    // no zero edges at all
    Graph p = make_graph(3, {{0, 1, 2}, {1, 2, 2}});
    CHECK_FALSE(zero_weight_spanning_tree(p).has_value());
}

TEST_CASE("verify_spanning_tree rejects non-trees") {
    Graph g = make_graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}, {0, 2, 1}});
    CHECK_NOTHROW(verify_spanning_tree(g, {0, 1, 2}));
    auto reason = [&](std::vector<int> ids) {
        try {
            verify_spanning_tree(g, std::move(ids));
        } catch (const NotATreeError& e) {
            return e.reason;
        }
        return NotATreeError::Reason::wrong_edge_count;
    };
    CHECK(reason({0, 1}) == NotATreeError::Reason::wrong_edge_count);
    CHECK(reason({0, 1, 2, 3}) == NotATreeError::Reason::wrong_edge_count);
    CHECK(reason({0, 1, 4}) == NotATreeError::Reason::cycle);
    CHECK_THROWS_AS(verify_spanning_tree(g, {0, 1, 1}), InvariantError);
    CHECK_THROWS_AS(verify_spanning_tree(g, {0, 1, 7}), InvariantError);
}

TEST_CASE("tree_path endpoints and orientation") {
    Graph g = make_graph(5, {{0, 1, 1}, {1, 2, 1}, {1, 3, 1}, {3, 4, 1}});
    SpanningTree t = verify_spanning_tree(g, {0, 1, 2, 3});
    Path p = tree_path(t, 2, 4);
    REQUIRE(p.vertices == std::vector<int>{2, 1, 3, 4});
    REQUIRE(p.edges.size() == 3);
    Path self = tree_path(t, 3, 3);
    CHECK(self.vertices == std::vector<int>{3});
    CHECK(self.empty());
}

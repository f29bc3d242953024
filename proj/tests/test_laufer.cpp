#include <plumb/laufer.hpp>

#include <plumb/error.hpp>
#include <plumb/io.hpp>

#include <doctest.h>

#include "support/corpus.hpp"

using namespace plumb;
using namespace plumb::testsupport;

TEST_CASE("fundamental cycle of the 4-star of (-2)s") {
    PlumbingGraph d4 = load_graph_fixture("d4.graph");
    LauferTrace t = fundamental_cycle(d4);
    CHECK(t.rational);
    CHECK(!t.violation.has_value());
    CHECK(t.final.at("c") == 2);
    CHECK(t.final.at("l1") == 1);
    CHECK(t.final.at("l2") == 1);
    CHECK(t.final.at("l3") == 1);
    CHECK(t.steps.size() == 4);  // everything after the seed vertex
    for (const LauferStep& s : t.steps) CHECK(s.pairing == 1);
    CHECK(lipman_cone_check(d4, t.final));
    CHECK(is_rational(d4));
}

TEST_CASE("the ADE fixtures are all rational") {
    for (const char* name : {"d4.graph", "d5.graph", "d6.graph", "e6.graph",
                             "e7.graph", "e8.graph"})
        CHECK(is_rational(load_graph_fixture(name)));
}

TEST_CASE("the triangle-singularity star fails the criterion with a pairing of 2") {
    PlumbingGraph tri = load_graph_fixture("triangle.graph");
    LauferTrace t = fundamental_cycle(tri);
    CHECK(!t.rational);
    REQUIRE(t.violation.has_value());
    CHECK(t.steps[*t.violation].pairing >= 2);
    CHECK(t.final.at("c") == 3);
    CHECK(t.final.at("l1") == 1);
    CHECK(t.final.at("l2") == 1);
    CHECK(t.final.at("l3") == 1);
    CHECK(lipman_cone_check(tri, t.final));
}

TEST_CASE("membership in the cone of non-positive pairings") {
    PlumbingGraph d4 = load_graph_fixture("d4.graph");
    Divisor z = fundamental_cycle(d4).final;

    Divisor doubled;
    for (const auto& [id, c] : z.coeff) doubled.set(id, 2 * c);
    CHECK(lipman_cone_check(d4, doubled));

    Divisor zeroed = z;
    zeroed.set("l1", 0);
    CHECK(!lipman_cone_check(d4, zeroed));  // not strictly positive

    Divisor bumped = z;   // a big leaf over a small center pairs positively
    bumped.set("l1", 5);  // with the center: (-2)(1) + 5 + 1 + 1 > 0 there
    bumped.set("c", 1);
    CHECK(!lipman_cone_check(d4, bumped));
}

TEST_CASE("the cycle and the verdict ignore insertion order, names, and seeds") {
    Rng rng = make_rng(55);
    CHECK(check_laufer_orders(load_graph_fixture("d4.graph"), rng, 20) == "");
    CHECK(check_laufer_orders(load_graph_fixture("triangle.graph"), rng, 20) == "");
    CHECK(check_laufer_orders(load_graph_fixture("e8.graph"), rng, 20) == "");
    auto corpus = negdef_tree_corpus(4);
    for (int rep = 0; rep < 40; ++rep)
        CHECK(check_laufer_orders(corpus[pick(rng, corpus.size())], rng, 5) == "");
}

TEST_CASE("every explicit seed vertex gives the same cycle") {
    for (const char* name : {"d4.graph", "triangle.graph", "e6.graph"}) {
        PlumbingGraph g = load_graph_fixture(name);
        LauferTrace base = fundamental_cycle(g);
        for (const Vertex& v : g.vertices()) {
            LauferTrace t = fundamental_cycle(g, v.id);
            CHECK(t.rational == base.rational);
            for (const Vertex& u : g.vertices())
                CHECK(t.final.at(u.id) == base.final.at(u.id));
        }
    }
}

TEST_CASE("preconditions are enforced") {
    PlumbingGraph semi;  // a single 0-framed vertex is not negative definite
    semi.add_vertex("v", 0);
    try {
        fundamental_cycle(semi);
        FAIL("expected NotNegativeDefinite");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotNegativeDefinite);
    }

    PlumbingGraph two;  // disconnected
    two.add_vertex("a", -2);
    two.add_vertex("b", -2);
    try {
        fundamental_cycle(two);
        FAIL("expected Disconnected");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Disconnected);
    }

    try {
        fundamental_cycle(load_graph_fixture("d4.graph"), "zz");
        FAIL("expected DanglingReference");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DanglingReference);
    }
}

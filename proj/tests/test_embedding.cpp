#include <plumb/embedding.hpp>

#include <plumb/blowdown.hpp>
#include <plumb/error.hpp>
#include <plumb/io.hpp>

#include <doctest.h>

#include "support/corpus.hpp"

using namespace plumb;
using namespace plumb::testsupport;

namespace {

// Induced subgraph on a set of vertex ids (assumed connected).
PlumbingGraph induced(const PlumbingGraph& g, const std::set<std::string>& ids) {
    PlumbingGraph out;
    for (const Vertex& v : g.vertices())
        if (ids.count(v.id)) out.add_vertex(v.id, v.framing);
    for (auto [i, j] : g.edges()) {
        const std::string &a = g.vertex(i).id, &b = g.vertex(j).id;
        if (ids.count(a) && ids.count(b)) out.add_edge(a, b);
    }
    return out;
}

}  // namespace

TEST_CASE("the shipped near-miss matrix fails only the subgraph condition") {
    PlumbingGraph tri = load_graph_fixture("triangle.graph");
    Embedding phi = parse_embedding(read_file(fixture_path("triangle.emb")));
    CHECK(phi.mode == EmbMode::S);
    CHECK(phi.basis_size == 5);

    VerifyResult r = verify_embedding(tri, phi);
    REQUIRE(r.outcome == VerifyOutcome::Violation);
    REQUIRE(r.violation.has_value());
    // Framings and pairwise pairings all reproduce; what breaks is a
    // connected subgraph whose summed image has a coefficient below -1.
    CHECK(r.violation->kind == EmbeddingViolation::Kind::SubgraphSum);
    CHECK(r.violation->detail.find("-2") != std::string::npos);
    CHECK(r.violation->vertices.size() == 4);

    // Downstream consumers refuse the unverifiable matrix outright.
    CHECK_THROWS_AS(classify_basis_elements(tri, phi), Error);

    // Damaging one pairing moves the failure forward to the Gram stage:
    // l1 keeps its self-pairing but no longer meets c's positive index.
    Embedding bad = phi;
    bad.image["l1"].negatives = {4, 5};
    VerifyResult r2 = verify_embedding(tri, bad);
    REQUIRE(r2.outcome == VerifyOutcome::Violation);
    CHECK(r2.violation->kind == EmbeddingViolation::Kind::GramPair);
    REQUIRE(r2.violation->vertices.size() == 2);
}

TEST_CASE("malformed embeddings throw instead of reporting violations") {
    PlumbingGraph d4 = load_graph_fixture("d4.graph");
    auto kind_of = [&](const Embedding& phi) {
        try {
            verify_embedding(d4, phi);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Internal;
    };

    Embedding phi;
    phi.mode = EmbMode::S;
    phi.basis_size = 2;
    CHECK(kind_of(phi) == ErrorKind::DimensionMismatch);  // covers no vertex

    phi.image["c"] = {1, {2}};
    phi.image["l1"] = {2, {}};
    phi.image["l2"] = {1, {}};
    phi.image["l3"] = {2, {9}};  // basis index out of range
    CHECK(kind_of(phi) == ErrorKind::DimensionMismatch);

    phi.image["l3"] = {2, {2, 1}};  // not strictly increasing
    CHECK(kind_of(phi) == ErrorKind::DimensionMismatch);

    phi.image["l3"] = {2, {1}};
    phi.image["ghost"] = {1, {}};  // image for a vertex the graph lacks
    CHECK(kind_of(phi) == ErrorKind::DimensionMismatch);
}

TEST_CASE("shape defects are reported as structure violations") {
    PlumbingGraph tri = load_graph_fixture("triangle.graph");
    Embedding phi = parse_embedding(read_file(fixture_path("triangle.emb")));
    auto structural = [&](const Embedding& e) {
        VerifyResult r = verify_embedding(tri, e);
        return r.outcome == VerifyOutcome::Violation &&
               r.violation->kind == EmbeddingViolation::Kind::Structure;
    };

    Embedding e = phi;
    e.image["c"].positive.reset();  // S mode: every image needs its positive
    CHECK(structural(e));

    e = phi;
    e.image["l1"].positive = 3;  // already l2's positive index
    CHECK(structural(e));

    e = phi;
    e.image["l1"].negatives = {1, 2, 5};  // contains l1's own positive
    CHECK(structural(e));

    e = phi;
    e.image["l1"].negatives = {1};  // square -2 against framing -3
    CHECK(structural(e));

    // Two pure images in P mode.
    PlumbingGraph a2;
    a2.add_vertex("a", -2);
    a2.add_vertex("b", -2);
    a2.add_edge("a", "b");
    Embedding two_pure;
    two_pure.mode = EmbMode::P;
    two_pure.basis_size = 2;
    two_pure.image["a"] = {std::nullopt, {1, 2}};
    two_pure.image["b"] = {std::nullopt, {1, 2}};
    VerifyResult r = verify_embedding(a2, two_pure);
    REQUIRE(r.outcome == VerifyOutcome::Violation);
    CHECK(r.violation->kind == EmbeddingViolation::Kind::Structure);
}

TEST_CASE("searches on the fixture graphs") {
    PlumbingGraph d4 = load_graph_fixture("d4.graph");
    PlumbingGraph fig1r = load_graph_fixture("fig1-right.graph");
    PlumbingGraph tri = load_graph_fixture("triangle.graph");

    SUBCASE("one-positive embeddings exist exactly for the blowdown-to-empty class") {
        CHECK(!find_embedding(d4, EmbMode::S).has_value());
        CHECK(!find_embedding(tri, EmbMode::S).has_value());
        auto phi = find_embedding(fig1r, EmbMode::S);
        REQUIRE(phi.has_value());
        CHECK(verify_embedding(fig1r, *phi).outcome == VerifyOutcome::Ok);
    }
    SUBCASE("allowing one pure image captures the 4-star") {
        auto phi = find_embedding(d4, EmbMode::P);
        REQUIRE(phi.has_value());
        CHECK(verify_embedding(d4, *phi).outcome == VerifyOutcome::Ok);
        CHECK(!find_embedding(load_graph_fixture("e6.graph"), EmbMode::P).has_value());
        CHECK(!find_embedding(load_graph_fixture("e8.graph"), EmbMode::P).has_value());
    }
    SUBCASE("every found embedding verifies, with coherent basis classification") {
        auto corpus = negdef_tree_corpus(4);
        Rng rng = make_rng(17);
        for (int rep = 0; rep < 80; ++rep) {
            const PlumbingGraph& g = corpus[pick(rng, corpus.size())];
            auto phi = find_embedding(g, rep % 2 ? EmbMode::S : EmbMode::P);
            if (!phi) continue;
            CAPTURE(emit_graph(g));
            CHECK(verify_embedding(g, *phi).outcome == VerifyOutcome::Ok);
            BasisTypeReport types = classify_basis_elements(g, *phi);
            CHECK(types.types.size() == phi->basis_size);
            CHECK(types.t1 + types.t2 + types.t3 + types.t4 == phi->basis_size);
        }
    }
}

TEST_CASE("connected subgraphs inherit one-positive embeddability") {
    Rng rng = make_rng(23);
    auto corpus = negdef_tree_corpus(5);
    int inherited = 0;
    for (int rep = 0; rep < 40 || inherited < 10; ++rep) {
        const PlumbingGraph& g = corpus[pick(rng, corpus.size())];
        if (!find_embedding(g, EmbMode::S)) continue;
        PlumbingGraph sub = induced(g, random_connected_subset(rng, g));
        CAPTURE(emit_graph(g));
        CAPTURE(emit_graph(sub));
        CHECK(find_embedding(sub, EmbMode::S).has_value());
        ++inherited;
        if (rep > 400) break;
    }
}

TEST_CASE("augmenting away the negative-only indices yields a blowdownable graph") {
    PlumbingGraph fig1r = load_graph_fixture("fig1-right.graph");
    auto phi = find_embedding(fig1r, EmbMode::S);
    REQUIRE(phi.has_value());
    auto [aug, psi] = augment_from_embedding(fig1r, *phi);
    CHECK(aug.size() == psi.basis_size);  // one basis element per vertex
    CHECK(verify_embedding(aug, psi).outcome == VerifyOutcome::Ok);
    BasisTypeReport types = classify_basis_elements(aug, psi);
    CHECK(types.t2 == 0);
    CHECK(blowdown_search(aug, BlowdownTarget::empty()).outcome == SearchOutcome::Found);

    // Augmentation is defined for one-positive embeddings only.
    PlumbingGraph d4 = load_graph_fixture("d4.graph");
    auto pure = find_embedding(d4, EmbMode::P);
    REQUIRE(pure.has_value());
    try {
        augment_from_embedding(d4, *pure);
        FAIL("expected UnverifiedEmbedding");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnverifiedEmbedding);
    }
}

TEST_CASE("decisions and replay-verified certificates on the fixtures") {
    PlumbingGraph d4 = load_graph_fixture("d4.graph");

    Decision s = decide_sandwiched(d4);
    CHECK(s.verdict == Tri::False);
    CHECK(!s.certificate.has_value());

    Decision p = decide_pm(d4);
    REQUIRE(p.verdict == Tri::True);
    REQUIRE(p.certificate.has_value());
    CHECK(p.certificate->target == BlowdownTarget::Kind::ZeroVertex);
    CHECK(p.certificate->added_leaves.size() == 1);
    PlumbingGraph end = replay_copy(p.certificate->augmented, p.certificate->blowdown);
    REQUIRE(end.size() == 1);
    CHECK(end.vertex(std::size_t{0}).framing == 0);
    // The augmented graph is the input plus exactly the listed leaves.
    CHECK(p.certificate->augmented.size() == d4.size() + 1);
    for (const auto& [parent, leaf] : p.certificate->added_leaves) {
        CHECK(d4.has_vertex(parent));
        CHECK(!d4.has_vertex(leaf));
        CHECK(p.certificate->augmented.framing(leaf) == -1);
        CHECK(p.certificate->augmented.has_edge(parent, leaf));
    }

    Decision s2 = decide_sandwiched(load_graph_fixture("fig1-right.graph"));
    REQUIRE(s2.verdict == Tri::True);
    REQUIRE(s2.certificate.has_value());
    CHECK(s2.certificate->target == BlowdownTarget::Kind::Empty);
    CHECK(replay_copy(s2.certificate->augmented, s2.certificate->blowdown).empty());

    CHECK(decide_sandwiched(load_graph_fixture("triangle.graph")).verdict == Tri::False);
    for (const char* name : {"d5.graph", "d6.graph"}) {
        PlumbingGraph dn = load_graph_fixture(name);
        CHECK(decide_sandwiched(dn).verdict == Tri::False);
        CHECK(decide_pm(dn).verdict == Tri::True);
    }
    CHECK(decide_pm(load_graph_fixture("e6.graph")).verdict == Tri::False);
    CHECK(decide_pm(load_graph_fixture("e8.graph")).verdict == Tri::False);
}

TEST_CASE("undersized budgets are inconclusive, never silently negative") {
    PlumbingGraph tri = load_graph_fixture("triangle.graph");
    CHECK_THROWS_AS(find_embedding(tri, EmbMode::S, 3), Error);
    try {
        find_embedding(tri, EmbMode::S, 3);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BudgetExceeded);
    }
    CHECK(decide_sandwiched(tri, 3).verdict == Tri::Inconclusive);
    CHECK(decide_pm(load_graph_fixture("e6.graph"), 3).verdict == Tri::Inconclusive);
    // A budget at or above the sound bound changes nothing.
    PlumbingGraph fig1r = load_graph_fixture("fig1-right.graph");
    CHECK(decide_sandwiched(fig1r, 9).verdict == Tri::True);
}

TEST_CASE("the subtree cap turns silent passes into inconclusive verdicts") {
    PlumbingGraph d4 = load_graph_fixture("d4.graph");
    auto phi = find_embedding(d4, EmbMode::P);
    REQUIRE(phi.has_value());
    CHECK(verify_embedding(d4, *phi, 1).outcome == VerifyOutcome::Inconclusive);
    CHECK(verify_embedding(d4, *phi).outcome == VerifyOutcome::Ok);
}

TEST_CASE("iterative deepening returns a smallest-basis embedding") {
    // For the 3-chain of (-2)s the natural one-positive embedding uses four
    // basis elements, but allowing one pure image fits into three (in rank
    // two every cross pairing of square -2 images is 0 or 2, so three is
    // minimal).  A first-fit search would be free to return the larger one.
    PlumbingGraph chain;
    chain.add_vertex("a", -2);
    chain.add_vertex("b", -2);
    chain.add_vertex("c", -2);
    chain.add_edge("a", "b");
    chain.add_edge("b", "c");
    auto phi = find_embedding(chain, EmbMode::P);
    REQUIRE(phi.has_value());
    CHECK(phi->basis_size == 3);

    auto s = find_embedding(chain, EmbMode::S);
    REQUIRE(s.has_value());
    CHECK(s->basis_size == 4);
}

TEST_CASE("decision preconditions") {
    PlumbingGraph two;
    two.add_vertex("a", -2);
    two.add_vertex("b", -2);
    CHECK_THROWS_AS(decide_sandwiched(two), Error);  // disconnected

    PlumbingGraph arrowed = load_graph_fixture("a3-multilink.graph");
    try {
        decide_pm(arrowed);
        FAIL("expected InconsistentArrows");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InconsistentArrows);
    }
}

#include <plumb/blowdown.hpp>

#include <plumb/error.hpp>
#include <plumb/io.hpp>
#include <plumb/moves.hpp>

#include <doctest.h>

#include <optional>
#include <string>

#include "support/corpus.hpp"

using namespace plumb;
using namespace plumb::testsupport;

namespace {

// Reachability by trying every applicable blowdown in every order, with no
// memoization and no pruning.  Legality is delegated to blow_down itself so
// any eligibility drift between search and calculus shows up as disagreement.
bool brute_reaches(const PlumbingGraph& g, const BlowdownTarget& target,
                   const std::string* last_blown = nullptr) {
    if (target.kind == BlowdownTarget::Kind::ZeroVertex) {
        if (g.size() == 1 && g.vertex(std::size_t{0}).framing == 0) return true;
    } else if (g.empty()) {
        return !target.ending_at || (last_blown && *last_blown == *target.ending_at);
    }
    for (const Vertex& v : g.vertices()) {
        PlumbingGraph h;
        try {
            h = blow_down(g, v.id);
        } catch (const Error&) {
            continue;
        }
        if (brute_reaches(h, target, &v.id)) return true;
    }
    return false;
}

void check_against_brute(const PlumbingGraph& g, const BlowdownTarget& target) {
    BlowdownResult res = blowdown_search(g, target);
    REQUIRE(res.outcome != SearchOutcome::Inconclusive);
    CAPTURE(emit_graph(g));
    CHECK((res.outcome == SearchOutcome::Found) == brute_reaches(g, target));
    if (res.outcome != SearchOutcome::Found) return;
    PlumbingGraph end = replay_copy(g, res.moves);
    if (target.kind == BlowdownTarget::Kind::Empty) {
        CHECK(end.empty());
        if (target.ending_at) CHECK(res.moves.back().a == *target.ending_at);
    } else {
        REQUIRE(end.size() == 1);
        CHECK(end.vertex(std::size_t{0}).framing == 0);
    }
}

}  // namespace

TEST_CASE("degenerate inputs hit their targets immediately") {
    PlumbingGraph one;
    one.add_vertex("v", -1);
    BlowdownResult r = blowdown_search(one, BlowdownTarget::empty());
    REQUIRE(r.outcome == SearchOutcome::Found);
    REQUIRE(r.moves.size() == 1);
    CHECK(r.moves[0].kind == MoveKind::BlowDown);
    CHECK(r.moves[0].a == "v");

    PlumbingGraph zero;
    zero.add_vertex("v", 0);
    BlowdownResult rz = blowdown_search(zero, BlowdownTarget::zero_vertex());
    REQUIRE(rz.outcome == SearchOutcome::Found);
    CHECK(rz.moves.empty());
    CHECK(blowdown_search(zero, BlowdownTarget::empty()).outcome == SearchOutcome::NotFound);

    PlumbingGraph a2;
    a2.add_vertex("a", -1);
    a2.add_vertex("b", -1);
    a2.add_edge("a", "b");
    BlowdownResult ra = blowdown_search(a2, BlowdownTarget::zero_vertex());
    REQUIRE(ra.outcome == SearchOutcome::Found);
    CHECK(ra.moves.size() == 1);
    CHECK(blowdown_search(a2, BlowdownTarget::empty()).outcome == SearchOutcome::NotFound);

    CHECK(blowdown_search(PlumbingGraph{}, BlowdownTarget::empty()).outcome ==
          SearchOutcome::Found);
}

TEST_CASE("search agrees with unmemoized all-order exploration") {
    auto corpus = negdef_tree_corpus(4);
    for (const PlumbingGraph& g : corpus) {
        check_against_brute(g, BlowdownTarget::empty());
        check_against_brute(g, BlowdownTarget::zero_vertex());
    }
}

TEST_CASE("agreement survives (-1)-leaf augmentation, pins included") {
    // Adding a leaf creates the stranded orders the memoization must not
    // paper over: blowing the leaf first can block its neighbor and vice
    // versa, so Found here genuinely depends on order exploration.  When the
    // augmented graph does empty, every choice of pinned final vertex is
    // checked against the brute variant as well.
    auto corpus = negdef_tree_corpus(4);
    Rng rng = make_rng(7);
    for (int rep = 0; rep < 200; ++rep) {
        PlumbingGraph g = corpus[pick(rng, corpus.size())];
        const std::string parent = g.vertex(pick(rng, g.size())).id;
        g.add_vertex("aux", -1);
        g.add_edge(parent, "aux");
        check_against_brute(g, BlowdownTarget::empty());
        check_against_brute(g, BlowdownTarget::zero_vertex());
    }

    // Deterministic sweep for the pinned-ending comparison: the first 30
    // augmentation sites whose graph empties (all-(-2) chains guarantee the
    // sweep finds some).
    int emptied = 0;
    for (const PlumbingGraph& base : corpus) {
        for (std::size_t i = 0; i < base.size() && emptied < 30; ++i) {
            PlumbingGraph g = base;
            g.add_vertex("aux", -1);
            g.add_edge(g.vertex(i).id, "aux");
            if (blowdown_search(g, BlowdownTarget::empty()).outcome != SearchOutcome::Found)
                continue;
            ++emptied;
            for (const Vertex& v : g.vertices())
                check_against_brute(g, BlowdownTarget::empty_ending_at(v.id));
        }
        if (emptied >= 30) break;
    }
    // All-(-2) chains and their relatives alone provide this many.
    CHECK(emptied >= 8);
}

TEST_CASE("a pinned final vertex is honored") {
    // In the two-vertex chain the order is forced: the (-1) goes first and
    // turns its neighbor into the closing (-1).  Pinning the closer succeeds
    // and returns a sequence ending there; pinning the opener is impossible.
    PlumbingGraph g;
    g.add_vertex("a", -1);
    g.add_vertex("b", -2);
    g.add_edge("a", "b");
    BlowdownResult r = blowdown_search(g, BlowdownTarget::empty_ending_at("b"));
    REQUIRE(r.outcome == SearchOutcome::Found);
    REQUIRE(r.moves.size() == 2);
    CHECK(r.moves.back().a == "b");
    CHECK(replay_copy(g, r.moves).empty());
    CHECK(blowdown_search(g, BlowdownTarget::empty_ending_at("a")).outcome ==
          SearchOutcome::NotFound);
}

TEST_CASE("reversing random blowup histories") {
    Rng rng = make_rng(19);
    for (int rep = 0; rep < 30; ++rep) {
        RandomBlowup rb = random_blowup_sequence(rng, 8);
        BlowdownResult r = blowdown_search(rb.result, BlowdownTarget::zero_vertex());
        REQUIRE(r.outcome == SearchOutcome::Found);
        PlumbingGraph end = replay_copy(rb.result, r.moves);
        REQUIRE(end.size() == 1);
        CHECK(end.vertex(std::size_t{0}).framing == 0);
    }
}

TEST_CASE("results are deterministic") {
    PlumbingGraph g = load_graph_fixture("d4.graph");
    g.add_vertex("aux", -1);
    g.add_edge("c", "aux");
    BlowdownResult r1 = blowdown_search(g, BlowdownTarget::zero_vertex());
    BlowdownResult r2 = blowdown_search(g, BlowdownTarget::zero_vertex());
    CHECK(r1.outcome == r2.outcome);
    CHECK(r1.nodes == r2.nodes);
    CHECK(emit_moves(r1.moves) == emit_moves(r2.moves));
}

TEST_CASE("an exhausted budget is reported, not converted to absence") {
    // D4 alone offers no blowdown at all, so its absence proof fits in one
    // node even at budget 1.  With a (-1) leaf attached the space is real:
    // budget 1 cannot exhaust it and must say so.
    PlumbingGraph d4 = load_graph_fixture("d4.graph");
    CHECK(blowdown_search(d4, BlowdownTarget::empty(), 1).outcome == SearchOutcome::NotFound);

    d4.add_vertex("aux", -1);
    d4.add_edge("c", "aux");
    CHECK(blowdown_search(d4, BlowdownTarget::empty(), 1).outcome ==
          SearchOutcome::Inconclusive);
    BlowdownResult full = blowdown_search(d4, BlowdownTarget::empty());
    CHECK(full.outcome == SearchOutcome::NotFound);
    CHECK(full.nodes > 1);
}

// Shared machinery for the test suite: exhaustive corpora of small framed
// trees, independent re-derivations of the library's verdicts (definiteness
// by principal minors, the two blowdown-reachability classes by brute-force
// augmentation), deterministic random generators, and reusable property
// checks shared between the unit tests and the acceptance runner.
//
// The re-derivations are deliberately written against the most naive correct
// definition available, trading speed for independence from the code under
// test.  Property checks return an empty string on success and a
// self-contained description of the first failure otherwise, so callers can
// assert on emptiness and print the message.
#pragma once

#include <plumb/graph.hpp>
#include <plumb/matrix.hpp>
#include <plumb/moves.hpp>
#include <plumb/nlf.hpp>

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace plumb::testsupport {

// --- fixtures ---------------------------------------------------------------

std::string fixture_path(const std::string& name);
PlumbingGraph load_graph_fixture(const std::string& name);

// --- corpus of small trees --------------------------------------------------

// Every connected negative definite tree with at most `max_vertices` (<= 6)
// vertices and framings in [-5, -1], one representative per isomorphism
// class.  Vertex ids are v0, v1, ...; shapes come from a fixed table of the
// unlabeled trees on up to six vertices.
std::vector<PlumbingGraph> negdef_tree_corpus(std::size_t max_vertices = 6);

// Same enumeration without the definiteness filter (still deduplicated).
std::vector<PlumbingGraph> all_tree_corpus(std::size_t max_vertices = 6);

// --- independent checks -----------------------------------------------------

// Negative definiteness via leading principal minors: (-1)^k det(Q_k) > 0
// for all k.  The determinants come from a fraction-free elimination written
// here, not from the library.
bool negdef_by_minors(const IntMat& q);

// Brute-force decision of "some augmentation by at most B (-1)-leaves blows
// down to the empty graph", B = sum_v(-framing - 1) - |V| + 1.  Leaves are
// attached at original vertices in all combinations; states that lose
// negative definiteness are pruned (a bigger lattice contains the smaller
// one, so definiteness never comes back), the blowdown search runs only on
// states of determinant +-1, and both the per-state search outcomes and the
// explored states are memoized on canonical forms.
bool oracle_sandwiched(const PlumbingGraph& g);

// Brute force for "some augmentation by at most B + 1 (-1)-leaves blows down
// to a single 0-framed vertex" with the same B.  Such a blowdown end state
// has a negative semidefinite form, so definite states only recurse,
// semidefinite states are searched and never grown (one more leaf always
// breaks semidefiniteness on a connected tree), and anything else is pruned.
bool oracle_pm(const PlumbingGraph& g);

// --- deterministic randomness ----------------------------------------------

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

inline std::size_t pick(Rng& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// A random pure-blowup sequence from a single 0-framed vertex v0, of length
// 1..max_moves, mixing vertex and edge blowups at random loci.
struct RandomBlowup {
    PlumbingGraph seed;
    MoveSequence moves;
    PlumbingGraph result;
};
RandomBlowup random_blowup_sequence(Rng& rng, std::size_t max_moves);

// A uniform-ish random nonempty vertex subset inducing a connected subgraph,
// grown from a random start vertex along edges.
std::set<std::string> random_connected_subset(Rng& rng, const PlumbingGraph& g);

// A random admissible factorization: disk or sphere page, 1..max_holes
// holes, a random orbit partition with spanning-tree interchanges, and
// 1..max_cycles vanishing cycles over random nonempty hole sets.
Factorization random_admissible_factorization(Rng& rng, std::size_t max_holes,
                                              std::size_t max_cycles);

// --- reusable property checks ----------------------------------------------

// One round of the blowup/keep-set pipeline: random blowup sequence, random
// connected keep-set, normalization to leaves, null divisor extraction; then
// checks that the divisor is the primitive positive null generator, that its
// Riemann-Roch value is exactly 1, and that the fiber over the kept graph is
// planar with Euler characteristic 2 - sum of arrow multiplicities.
std::string check_blowup_null_pipeline(Rng& rng, std::size_t max_moves = 10);

// For one factorization: the kernel Gram matrix is negative definite (by
// minors), and brute-force enumeration of kernel elements with basis
// coefficients in [-2, 2] finds genus-0 classes only of the permitted
// sphere shapes (one +1 with some -1s; on sphere pages also w = 1 with -1s
// alone), each of which the library's sphere-class enumeration also lists.
std::string check_sphere_shapes(const Factorization& f);

// Applies `moves` random blowups/blowdowns starting from `start` (which must
// classify as negative definite) and checks after every move that the graph
// stays negative definite with unchanged |det Q|.
std::string check_det_under_moves(const PlumbingGraph& start, Rng& rng, std::size_t moves);

// Recomputes the fundamental cycle of g `orders` times under random vertex
// renamings/insertion orders and random seed vertices, checking that the
// divisor and the rationality verdict never change.
std::string check_laufer_orders(const PlumbingGraph& g, Rng& rng, std::size_t orders);

}  // namespace plumb::testsupport

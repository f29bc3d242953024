// Embeddings of framed trees into diagonal negative definite lattices, and
// the decision procedures for the two graph classes they characterize:
// graphs that blow down to the empty graph after adding (−1) leaves, and
// graphs that blow down to a single 0-framed vertex the same way.
//
// An embedding sends each vertex v to  e_p − Σ_{i∈N_v} e_i  in a lattice
// with pairwise orthogonal generators of square −1; the positive term may be
// absent for at most one vertex in P mode.  Validity demands that the images
// reproduce the intersection matrix and that for every connected subgraph
// the summed image has coefficients in {−1, 0, +1} with exactly one +1
// (S mode) or at most one +1 (P mode).
#pragma once

#include "plumb/blowdown.hpp"
#include "plumb/graph.hpp"
#include "plumb/moves.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace plumb {

enum class EmbMode { S, P };

struct VertexImage {
    std::optional<std::size_t> positive;  // basis index, 1-based
    std::vector<std::size_t> negatives;   // sorted, distinct, 1-based
};

struct Embedding {
    EmbMode mode = EmbMode::S;
    std::size_t basis_size = 0;
    std::map<std::string, VertexImage> image;  // one entry per vertex
};

// --- verification -----------------------------------------------------------

inline constexpr std::uint64_t kDefaultSubtreeCap = std::uint64_t{1} << 18;

struct EmbeddingViolation {
    enum class Kind {
        Structure,     // shape/self-pairing/index-range defect; detail explains
        GramPair,      // pairing of two vertex images off; vertices names them
        SubgraphSum,   // a connected subgraph sum outside the allowed pattern
    } kind = Kind::Structure;
    std::string detail;
    std::vector<std::string> vertices;  // the failing pair or subgraph
};

enum class VerifyOutcome { Ok, Violation, Inconclusive };

struct VerifyResult {
    VerifyOutcome outcome = VerifyOutcome::Ok;
    std::optional<EmbeddingViolation> violation;
};

// Full validity check.  Subgraph sums are checked over all connected
// subgraphs; if there are more than `subtree_cap` of them the result is
// Inconclusive rather than a silent pass.
VerifyResult verify_embedding(const PlumbingGraph& g, const Embedding& phi,
                              std::uint64_t subtree_cap = kDefaultSubtreeCap);

// --- basis element classification ------------------------------------------

enum class BasisType { T1, T2, T3, T4 };  // +, −, +−, +−−

struct BasisTypeReport {
    std::vector<BasisType> types;  // index i-1 holds the type of basis index i
    std::size_t t1 = 0, t2 = 0, t3 = 0, t4 = 0;
};

// Classifies every basis index by its signed occurrences across the vertex
// images.  Throws UnverifiedEmbedding when φ does not verify against g.
BasisTypeReport classify_basis_elements(const PlumbingGraph& g, const Embedding& phi);

// --- search -----------------------------------------------------------------

// Exhaustive symmetry-reduced backtracking search, deepening over the basis
// size so the first embedding found uses as few basis elements as possible.
// Absence (nullopt) is proven up to the sound default budget Σ_v(−framing).
// A caller-supplied smaller budget that exhausts without an embedding throws
// BudgetExceeded, since absence is then not proven.
std::optional<Embedding> find_embedding(const PlumbingGraph& g, EmbMode mode,
                                        std::optional<std::size_t> basis_budget = std::nullopt);

// --- augmentation and decision ---------------------------------------------

// For every basis index occurring only negatively (type T2), attach a new
// (−1) leaf to the carrying vertex and extend φ by mapping the leaf to that
// index.  The result has no T2 indices and one basis element per vertex.
// S mode only; throws UnverifiedEmbedding when φ does not verify.
std::pair<PlumbingGraph, Embedding> augment_from_embedding(const PlumbingGraph& g,
                                                           const Embedding& phi);

struct SandwichCertificate {
    PlumbingGraph augmented;  // original graph plus added (−1) leaves
    std::vector<std::pair<std::string, std::string>> added_leaves;  // (attached to, leaf id)
    MoveSequence blowdown;    // replays on `augmented` to the target
    BlowdownTarget::Kind target = BlowdownTarget::Kind::Empty;
};

enum class Tri { True, False, Inconclusive };

const char* tri_name(Tri t);

struct Decision {
    Tri verdict = Tri::Inconclusive;
    std::optional<SandwichCertificate> certificate;  // present when verdict is True
};

// Does some (−1)-leaf augmentation of g blow down to the empty graph?
// True answers carry a replay-verified certificate; False answers are proven
// through the embedding search; Inconclusive appears only under caller-set
// basis budgets smaller than the sound default.
Decision decide_sandwiched(const PlumbingGraph& g,
                           std::optional<std::size_t> basis_budget = std::nullopt);

// Does some (−1)-leaf augmentation of g blow down to a single 0-framed
// vertex?  Same contract as decide_sandwiched.  On graphs with ≤ 5 vertices
// the verdict is cross-checked against the independent route through
// single-framing decrements and blowdowns pinned to end at a chosen vertex;
// a disagreement raises an internal error.
Decision decide_pm(const PlumbingGraph& g,
                   std::optional<std::size_t> basis_budget = std::nullopt);

}  // namespace plumb

// Blowup / blowdown calculus on plumbing graphs.
//
// Moves are recorded with stable vertex ids so sequences can be replayed and
// shipped as certificates.  Blowups may name the vertex they create; when the
// name is omitted, replay assigns fresh ids n1, n2, ... deterministically.
#pragma once

#include "plumb/graph.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace plumb {

enum class MoveKind { BlowUpVertex, BlowUpEdge, BlowDown };

struct Move {
    MoveKind kind;
    std::string a;                         // vertex (bu_v, bd) or first endpoint (bu_e)
    std::string b;                         // second endpoint (bu_e only)
    std::optional<std::string> created_id; // blowups only

    static Move up_vertex(std::string v, std::optional<std::string> id = std::nullopt) {
        return Move{MoveKind::BlowUpVertex, std::move(v), "", std::move(id)};
    }
    static Move up_edge(std::string u, std::string w,
                        std::optional<std::string> id = std::nullopt) {
        return Move{MoveKind::BlowUpEdge, std::move(u), std::move(w), std::move(id)};
    }
    static Move down(std::string v) {
        return Move{MoveKind::BlowDown, std::move(v), "", std::nullopt};
    }
};

using MoveSequence = std::vector<Move>;

// Blow up at a vertex: the new (−1)-vertex hangs off v and v's framing drops
// by one.  Throws MissingLocus if v does not exist.
PlumbingGraph blow_up_vertex(const PlumbingGraph& g, const std::string& v,
                             const std::string& new_id);

// Blow up an edge: the edge (u,w) is replaced by u — n — w with n framed −1,
// and both endpoint framings drop by one.  Throws MissingLocus if the edge
// does not exist.
PlumbingGraph blow_up_edge(const PlumbingGraph& g, const std::string& u, const std::string& w,
                           const std::string& new_id);

// Blow down a (−1)-vertex of edge-degree ≤ 2 carrying no arrow.  Degree-2
// blowdowns join the two neighbors and increment both framings; the neighbors
// must not already be adjacent (the result must stay a simple graph).
PlumbingGraph blow_down(const PlumbingGraph& g, const std::string& v);

// Smallest unused id of the form n<k>; `counter` keeps assignment monotone
// across one replay.
std::string fresh_vertex_id(const PlumbingGraph& g, std::size_t& counter);

// Apply one move; fills in move.created_id when absent.
PlumbingGraph apply_move(const PlumbingGraph& g, Move& move, std::size_t& fresh_counter);

// Replay a whole sequence from a seed graph.  Fills in absent created ids.
// Any invalid move is rethrown as InvalidSequence with its position.
PlumbingGraph replay(const PlumbingGraph& seed, MoveSequence& seq);
PlumbingGraph replay_copy(const PlumbingGraph& seed, const MoveSequence& seq);

// Rewrite a blowup sequence so that, of the graph it builds, every vertex
// outside `keep` becomes a framing-(−1) leaf, while the subgraph induced on
// `keep` is reproduced up to graph isomorphism with identical framings.
//
// Rules: a blowup creating a needed vertex (one with kept descendants) at a
// kept locus survives; at a non-kept locus the created vertex is identified
// with the locus' image instead (no move emitted).  An edge blowup with
// exactly one kept endpoint degenerates to a vertex blowup there.  Blowups
// with no kept locus and no kept descendant are dropped.  Framings lost to
// identification are restored by trailing compensating vertex blowups, each
// of which contributes one more (−1) leaf.  The output is replay-verified.
//
// `keep` must induce a connected nonempty subgraph of the final graph.
struct NormalizedAugmentation {
    PlumbingGraph graph;          // rebuilt graph: kept core + (−1) leaves
    MoveSequence sequence;        // rebuilt sequence (replays from the seed)
    // kept vertex id in the original final graph -> its id in `graph`
    std::map<std::string, std::string> kept_image;
};

NormalizedAugmentation normalize_augmentation(const PlumbingGraph& seed, const MoveSequence& seq,
                                              const std::set<std::string>& keep);

}  // namespace plumb

// Canonical encodings of labeled weighted trees and isomorphism testing for
// small weighted graphs.
//
// The canonical form is the classic rooted-subtree encoding evaluated at the
// tree's centroid(s): each vertex encodes as (label | sorted child encodings)
// where the label packs framing, genus, and the sorted multiset of arrow
// multiplicities.  Two trees get equal strings iff they are isomorphic as
// arrow-decorated framed trees, which gives the memoization key for blowdown
// search and the dedup key for enumerated corpora.
#pragma once

#include "plumb/graph.hpp"

#include <string>

namespace plumb {

// Canonical string of a framed tree (requires a tree or the empty graph).
// When `marked` names a vertex, its label is tagged so that only
// isomorphisms fixing the marked vertex identify two forms.
std::string canonical_tree_form(const PlumbingGraph& g);
std::string canonical_tree_form(const PlumbingGraph& g, const std::string& marked);

// Isomorphism of framed graphs (framings, genus, arrow multiplicity multisets
// must match vertex-wise, adjacency preserved).  Trees are compared through
// canonical forms; small non-tree graphs fall back to backtracking.  When
// `use_arrows` is false the arrow decorations are ignored.
bool weighted_isomorphic(const PlumbingGraph& a, const PlumbingGraph& b, bool use_arrows = true);

}  // namespace plumb

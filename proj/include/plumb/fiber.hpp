// Divisor/arrow arithmetic on framed trees and the surface invariants of the
// associated fibers: multiplicities against exceptional curves, Euler
// characteristic and boundary counts, null-space divisors of blowup
// sequences, an exact Riemann-Roch count, and boundary capping by
// Hirzebruch-Jung chains.
#pragma once

#include "plumb/graph.hpp"
#include "plumb/moves.hpp"
#include "plumb/numeric.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace plumb {

// a_v = -(d . E_v) for every vertex: the arrow multiplicities a divisor with
// these coefficients forces.  All values must come out non-negative.
std::map<std::string, Int> arrows_from_divisor(const PlumbingGraph& g, const Divisor& d);

// Inverse direction: solve Q r = -a exactly.  The result must be a positive
// integral vector to qualify; a fractional or non-positive solution raises
// NonIntegral / NonPositive naming the offending entry.
std::optional<Divisor> divisor_from_arrows(const PlumbingGraph& g,
                                           const std::map<std::string, Int>& arrow_totals);

struct BoundaryComponent {
    Arrow arrow;  // the arrow this boundary count belongs to
    Int count;    // gcd(r_v, multiplicity)
};

struct FiberInvariants {
    Int euler = 0;  // chi = sum over vertices of r_v (2 - d_v)
    std::vector<BoundaryComponent> boundary_components;
    Int total_boundary = 0;  // b
    Int genus = 0;           // solved from chi = 2 - 2g - b
    bool planar = false;     // genus == 0
};

// Fiber surface invariants for the function divisor d with the given arrows.
// The arrows must sum per vertex to exactly the multiplicities d forces;
// d_v counts incident edges plus incident arrows (each arrow once).
FiberInvariants fiber_invariants(const PlumbingGraph& g, const Divisor& d,
                                 const std::vector<Arrow>& arrows);

struct PmNullDivisor {
    PlumbingGraph full_graph;   // the replayed blowup result
    Divisor full_divisor;       // null-space generator, seed coefficient 1
    PlumbingGraph kept_graph;   // induced subgraph on `keep`
    Divisor kept_divisor;       // restriction of the generator
    std::vector<Arrow> arrows;  // one per removed leaf, carrying its coefficient
};

// Replays a pure-blowup sequence from a single 0-framed seed vertex, tracking
// coefficients: the seed starts at 1, a vertex blowup at v creates
// coefficient m_v, an edge blowup at (u,v) creates m_u + m_v.  Every vertex
// outside `keep` must end as a (-1) leaf attached to a kept vertex; each
// becomes an arrow with its coefficient as multiplicity.
PmNullDivisor pm_null_divisor(const PlumbingGraph& seed, const MoveSequence& seq,
                              const std::set<std::string>& keep);

// chi(d) = -(d.d + sum_v d_v (-framing(v) - 2)) / 2, computed exactly.  The
// canonical class never appears in coordinates; only its pairings
// -framing - 2 against the vertices enter (genus 0 adjunction).
Rat riemann_roch_chi(const PlumbingGraph& g, const Divisor& d);

struct HJChain {
    std::vector<Int> coefficients;  // c_1, c_2, ...
    std::vector<Int> framings;      // -c_1, -c_2, ...
};

// Negative continued fraction b/a = c_1 - 1/(c_2 - 1/(...)) for coprime
// positive b, a.  All coefficients are >= 2 when b > a; b = a = 1 gives the
// degenerate chain [1]; b < a starts with leading 1s.
HJChain hj_expansion(const Int& b, const Int& a);

// Removes one arrow at v (the first if several) and attaches the chain of
// the slope r_v over the arrow's multiplicity in its place, with the leading
// coefficient's vertex adjacent to v.  Chain vertices of framing -1 are
// blown down on the spot, so capping never introduces new -1 vertices; in
// the degenerate [1] case this collapses to incrementing framing(v).
PlumbingGraph cap_binding_component(const PlumbingGraph& g, const std::string& v,
                                    const Int& r_v);

}  // namespace plumb

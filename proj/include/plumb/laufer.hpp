// Computation sequence for the fundamental cycle on a negative definite tree,
// the rationality criterion read off from it, and Lipman cone membership.
#pragma once

#include "plumb/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace plumb {

struct LauferStep {
    std::string vertex;  // vertex added at this step
    Int pairing;         // value Z·E_v that triggered the addition (≥ 1)
};

struct LauferTrace {
    std::vector<LauferStep> steps;     // additions after the seed vertex
    Divisor final;                     // the fundamental cycle
    bool rational = false;             // true iff every step pairing equals 1
    std::optional<std::size_t> violation;  // first step index with pairing ≥ 2
};

// Grow Z from E_start (smallest vertex id by default), repeatedly adding any
// vertex with Z·E_v > 0, smallest id first.  The result is the coordinatewise
// minimal strictly positive divisor with all pairings ≤ 0 and does not depend
// on the seed or the tie-breaking order.  Arrows play no role here.
LauferTrace fundamental_cycle(const PlumbingGraph& g,
                              std::optional<std::string> start = std::nullopt);

// True iff every coefficient of d is strictly positive on every vertex and
// d·E_v ≤ 0 for all v.
bool lipman_cone_check(const PlumbingGraph& g, const Divisor& d);

// Convenience wrapper: the rationality verdict of the canonical trace.
bool is_rational(const PlumbingGraph& g);

}  // namespace plumb

// Exhaustive search for blowdown sequences.
//
// Blowdown is not confluent — the order of contractions can strand the search
// in a dead end another order avoids — so this is a depth-first search over
// all applicable blowdowns, memoized on canonical tree forms of failed
// states, with a node budget giving an honest three-valued outcome.
#pragma once

#include "plumb/graph.hpp"
#include "plumb/moves.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace plumb {

struct BlowdownTarget {
    enum class Kind { Empty, ZeroVertex } kind = Kind::Empty;
    // With Kind::Empty: require the distinguished vertex to be the final one
    // blown down (used by the cross-checks of the embedding module).
    std::optional<std::string> ending_at;

    static BlowdownTarget empty() { return {Kind::Empty, std::nullopt}; }
    static BlowdownTarget zero_vertex() { return {Kind::ZeroVertex, std::nullopt}; }
    static BlowdownTarget empty_ending_at(std::string v) {
        return {Kind::Empty, std::move(v)};
    }
};

enum class SearchOutcome { Found, NotFound, Inconclusive };

struct BlowdownResult {
    SearchOutcome outcome = SearchOutcome::NotFound;
    MoveSequence moves;          // meaningful when outcome == Found
    std::uint64_t nodes = 0;     // states visited
};

inline constexpr std::uint64_t kDefaultSearchBudget = 1'000'000;

// Search for a sequence of BlowDown moves from g to the target.  Successors
// are explored smallest-canonical-form first and states proven hopeless are
// memoized, so the result is deterministic and exhaustive within the budget.
// Distinct blowdowns leading to isomorphic states are explored once.
BlowdownResult blowdown_search(const PlumbingGraph& g, BlowdownTarget target,
                               std::uint64_t budget = kDefaultSearchBudget);

}  // namespace plumb

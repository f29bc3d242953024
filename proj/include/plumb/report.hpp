#pragma once
// One-call classification of a plumbing graph and report serialization.
//
// classify() runs the whole pipeline — rationality via the fundamental
// cycle, the two lattice-embedding searches, and both blowdown decisions —
// and gathers the results with timing metadata into a Report.  Arrows on
// the input are echoed but stripped before classification (the graph
// classes are properties of the plumbing alone); fiber invariants for an
// arrowed graph with a divisor come from classify_with_divisor.
//
// Reports serialize to human-readable text (certificates replayed line by
// line) or to versioned JSON.  Large integers are emitted as decimal
// strings so the output survives any JSON reader.

#include <plumb/embedding.hpp>
#include <plumb/fiber.hpp>
#include <plumb/graph.hpp>
#include <plumb/laufer.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace plumb {

struct ClassifyOptions {
    // Cap on the embedding basis size; absent means the sound default,
    // under which "no embedding" is a proof and never inconclusive.
    std::optional<std::size_t> basis_budget;
    // Echoed into the report; random corpora in the test suite use it, the
    // classification itself never does.
    std::optional<std::uint64_t> seed;
};

struct StageTiming {
    std::string stage;
    std::int64_t microseconds = 0;
};

struct Report {
    std::string input;  // canonical text of the graph as given (arrows kept)
    bool rational = false;
    LauferTrace laufer;
    Decision sandwiched;
    Decision pm;
    std::optional<Embedding> s_embedding;
    std::optional<Embedding> p_embedding;
    bool s_budget_hit = false;  // search for the mode hit the basis budget
    bool p_budget_hit = false;
    std::optional<FiberInvariants> fiber;
    std::optional<Rat> fiber_chi;  // Riemann–Roch value of the divisor
    std::optional<std::size_t> basis_budget;
    std::optional<std::uint64_t> seed;
    std::vector<StageTiming> timings;
};

Report classify(const PlumbingGraph& g, const ClassifyOptions& opts = {});

// classify() plus fiber invariants of the divisor against the graph's
// arrows.  The divisor must pair consistently with the arrow multiplicities.
Report classify_with_divisor(const PlumbingGraph& g, const Divisor& d,
                             const ClassifyOptions& opts = {});

enum class ReportFormat { Text, Json };

std::string emit_report(const Report& r, ReportFormat format);

}  // namespace plumb

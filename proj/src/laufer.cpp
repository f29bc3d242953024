#include "plumb/laufer.hpp"

#include "plumb/error.hpp"
#include "plumb/matrix.hpp"

#include <algorithm>

namespace plumb {

namespace {

// Z·E_v with the convention that edges pair 1 and arrows are ignored.
Int pairing_at(const PlumbingGraph& g, const std::vector<Int>& z, std::size_t v) {
    Int p = g.vertex(v).framing * z[v];
    for (std::size_t w : g.neighbors(v)) p += z[w];
    return p;
}

}  // namespace

LauferTrace fundamental_cycle(const PlumbingGraph& g, std::optional<std::string> start) {
    g.require_genus_zero();
    if (g.empty() || !g.is_connected()) fail(ErrorKind::Disconnected, "graph must be connected");
    if (g.edge_count() + 1 != g.size()) fail(ErrorKind::Disconnected, "graph must be a tree");
    // The O(n) leaf-peel classification keeps this usable inside sweeps that
    // run the sequence hundreds of thousands of times.
    if (classify_tree_form(g).cls != DefClass::NegativeDefinite)
        fail(ErrorKind::NotNegativeDefinite, "fundamental cycle needs a negative definite form");

    std::size_t n = g.size();
    std::size_t seed;
    if (start) {
        seed = g.index_of(*start);
    } else {
        seed = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (g.vertex(i).id < g.vertex(seed).id) seed = i;
    }

    // Scan order by vertex id, fixed once; the growth loop then maintains all
    // pairings incrementally and takes the first positive one it meets.
    std::vector<std::size_t> by_id(n);
    for (std::size_t i = 0; i < n; ++i) by_id[i] = i;
    std::sort(by_id.begin(), by_id.end(),
              [&](std::size_t a, std::size_t b) { return g.vertex(a).id < g.vertex(b).id; });

    std::vector<Int> z(n, 0), pair(n, 0);
    auto bump = [&](std::size_t v) {
        z[v] += 1;
        pair[v] += g.vertex(v).framing;
        for (std::size_t w : g.neighbors(v)) pair[w] += 1;
    };
    bump(seed);
    LauferTrace trace;
    for (;;) {
        std::size_t pick = n;
        for (std::size_t v : by_id)
            if (pair[v] > 0) {
                pick = v;
                break;
            }
        if (pick == n) break;
        trace.steps.push_back(LauferStep{g.vertex(pick).id, pair[pick]});
        bump(pick);
    }
    for (std::size_t v = 0; v < n; ++v) trace.final.set(g.vertex(v).id, z[v]);
    trace.rational = true;
    for (std::size_t i = 0; i < trace.steps.size(); ++i)
        if (trace.steps[i].pairing >= 2) {
            trace.rational = false;
            trace.violation = i;
            break;
        }
    return trace;
}

bool lipman_cone_check(const PlumbingGraph& g, const Divisor& d) {
    std::size_t n = g.size();
    std::vector<Int> z(n);
    for (std::size_t v = 0; v < n; ++v) {
        z[v] = d.at(g.vertex(v).id);
        if (z[v] <= 0) return false;
    }
    for (std::size_t v = 0; v < n; ++v)
        if (pairing_at(g, z, v) > 0) return false;
    return true;
}

bool is_rational(const PlumbingGraph& g) { return fundamental_cycle(g).rational; }

}  // namespace plumb

#include "plumb/blowdown.hpp"

#include "plumb/canonical.hpp"
#include "plumb/error.hpp"

#include <algorithm>
#include <unordered_set>

namespace plumb {

namespace {

struct Searcher {
    BlowdownTarget target;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::unordered_set<std::string> hopeless;  // canonical forms proven dead
    MoveSequence path;

    std::string key(const PlumbingGraph& g) const {
        return target.ending_at ? canonical_tree_form(g, *target.ending_at)
                                : canonical_tree_form(g);
    }

    bool at_target(const PlumbingGraph& g) const {
        if (target.kind == BlowdownTarget::Kind::Empty) return g.empty();
        return g.size() == 1 && g.vertex(std::size_t{0}).framing == 0 &&
               g.vertex(std::size_t{0}).genus == 0;
    }

    SearchOutcome dfs(const PlumbingGraph& g) {
        if (at_target(g)) return SearchOutcome::Found;
        if (++nodes > budget) return SearchOutcome::Inconclusive;
        std::string k = key(g);
        if (hopeless.count(k)) return SearchOutcome::NotFound;

        // regenerate candidates locally (successors() uses member scratch)
        std::vector<std::tuple<std::string, std::string, PlumbingGraph>> cand;
        for (const Vertex& v : g.vertices()) {
            if (v.framing != -1 || g.arrow_count_at(v.id) > 0) continue;
            if (target.ending_at && v.id == *target.ending_at && g.size() > 1) continue;
            std::vector<std::string> nb = g.neighbor_ids(v.id);
            if (nb.size() > 2) continue;
            if (nb.size() == 2 && g.has_edge(nb[0], nb[1])) continue;
            PlumbingGraph next = blow_down(g, v.id);
            cand.emplace_back(key(next), v.id, std::move(next));
        }
        std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) {
            return std::get<0>(a) < std::get<0>(b) ||
                   (std::get<0>(a) == std::get<0>(b) && std::get<1>(a) < std::get<1>(b));
        });
        bool inconclusive = false;
        const std::string* last_key = nullptr;
        for (auto& [ck, vid, next] : cand) {
            if (last_key && *last_key == ck) continue;  // isomorphic successor
            last_key = &ck;
            path.push_back(Move::down(vid));
            SearchOutcome sub = dfs(next);
            if (sub == SearchOutcome::Found) return SearchOutcome::Found;
            path.pop_back();
            if (sub == SearchOutcome::Inconclusive) inconclusive = true;
        }
        if (inconclusive) return SearchOutcome::Inconclusive;
        hopeless.insert(std::move(k));
        return SearchOutcome::NotFound;
    }
};

}  // namespace

BlowdownResult blowdown_search(const PlumbingGraph& g, BlowdownTarget target,
                               std::uint64_t budget) {
    for (const Arrow& a : g.arrows())
        fail(ErrorKind::InconsistentArrows,
             "blowdown search requires an arrowless graph (arrow at '" + a.vertex + "')");
    g.require_genus_zero();
    if (!g.empty() && !g.is_tree())
        fail(ErrorKind::Disconnected, "blowdown search requires a tree");
    Searcher s{target, budget};
    BlowdownResult res;
    res.outcome = s.dfs(g);
    res.nodes = s.nodes;
    if (res.outcome == SearchOutcome::Found) res.moves = std::move(s.path);
    return res;
}

}  // namespace plumb

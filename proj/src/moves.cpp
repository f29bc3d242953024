#include "plumb/moves.hpp"

#include "plumb/error.hpp"

#include <map>

namespace plumb {

PlumbingGraph blow_up_vertex(const PlumbingGraph& g, const std::string& v,
                             const std::string& new_id) {
    if (!g.has_vertex(v)) fail(ErrorKind::MissingLocus, "no vertex '" + v + "' to blow up");
    PlumbingGraph out = g;
    out.add_vertex(new_id, -1);
    out.add_edge(v, new_id);
    out.set_framing(v, g.framing(v) - 1);
    return out;
}

PlumbingGraph blow_up_edge(const PlumbingGraph& g, const std::string& u, const std::string& w,
                           const std::string& new_id) {
    if (!g.has_vertex(u) || !g.has_vertex(w) || !g.has_edge(u, w))
        fail(ErrorKind::MissingLocus, "no edge " + u + " -- " + w + " to blow up");
    PlumbingGraph out = g;
    out.remove_edge(u, w);
    out.add_vertex(new_id, -1);
    out.add_edge(u, new_id);
    out.add_edge(new_id, w);
    out.set_framing(u, g.framing(u) - 1);
    out.set_framing(w, g.framing(w) - 1);
    return out;
}

PlumbingGraph blow_down(const PlumbingGraph& g, const std::string& v) {
    if (!g.has_vertex(v)) fail(ErrorKind::MissingLocus, "no vertex '" + v + "' to blow down");
    if (g.framing(v) != -1)
        fail(ErrorKind::NotBlowdownable,
             "vertex '" + v + "' has framing " + g.framing(v).str() + ", need -1");
    if (g.arrow_count_at(v) > 0)
        fail(ErrorKind::NotBlowdownable, "vertex '" + v + "' carries an arrow");
    std::vector<std::string> nb = g.neighbor_ids(v);
    if (nb.size() > 2)
        fail(ErrorKind::NotBlowdownable,
             "vertex '" + v + "' has degree " + std::to_string(nb.size()));
    if (nb.size() == 2 && g.has_edge(nb[0], nb[1]))
        fail(ErrorKind::NotBlowdownable,
             "neighbors of '" + v + "' are already adjacent; contraction would leave a multi-edge");
    PlumbingGraph out = g;
    out.remove_vertex(v);
    for (const std::string& n : nb) out.set_framing(n, g.framing(n) + 1);
    if (nb.size() == 2) out.add_edge(nb[0], nb[1]);
    return out;
}

std::string fresh_vertex_id(const PlumbingGraph& g, std::size_t& counter) {
    for (;;) {
        std::string id = "n" + std::to_string(counter);
        ++counter;
        if (!g.has_vertex(id)) return id;
    }
}

PlumbingGraph apply_move(const PlumbingGraph& g, Move& move, std::size_t& fresh_counter) {
    switch (move.kind) {
        case MoveKind::BlowUpVertex:
            if (!move.created_id) move.created_id = fresh_vertex_id(g, fresh_counter);
            return blow_up_vertex(g, move.a, *move.created_id);
        case MoveKind::BlowUpEdge:
            if (!move.created_id) move.created_id = fresh_vertex_id(g, fresh_counter);
            return blow_up_edge(g, move.a, move.b, *move.created_id);
        case MoveKind::BlowDown:
            return blow_down(g, move.a);
    }
    fail(ErrorKind::Internal, "unknown move kind");
}

PlumbingGraph replay(const PlumbingGraph& seed, MoveSequence& seq) {
    PlumbingGraph g = seed;
    std::size_t counter = 1;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        try {
            g = apply_move(g, seq[i], counter);
        } catch (const Error& e) {
            throw Error(ErrorKind::InvalidSequence,
                        "move " + std::to_string(i + 1) + " failed: " + e.message());
        }
    }
    return g;
}

PlumbingGraph replay_copy(const PlumbingGraph& seed, const MoveSequence& seq) {
    MoveSequence copy = seq;
    return replay(seed, copy);
}

namespace {

// True when the subgraph of g induced on `keep` is connected and nonempty.
bool keep_connected(const PlumbingGraph& g, const std::set<std::string>& keep) {
    if (keep.empty()) return false;
    std::vector<std::string> stack{*keep.begin()};
    std::set<std::string> seen{*keep.begin()};
    while (!stack.empty()) {
        std::string v = stack.back();
        stack.pop_back();
        for (const std::string& n : g.neighbor_ids(v))
            if (keep.count(n) && !seen.count(n)) {
                seen.insert(n);
                stack.push_back(n);
            }
    }
    return seen.size() == keep.size();
}

}  // namespace

NormalizedAugmentation normalize_augmentation(const PlumbingGraph& seed, const MoveSequence& seq,
                                              const std::set<std::string>& keep) {
    for (const Move& m : seq)
        if (m.kind == MoveKind::BlowDown)
            fail(ErrorKind::InvalidSequence, "only blowup moves may appear in an augmentation");
    MoveSequence named = seq;
    PlumbingGraph final_graph = replay(seed, named);  // also fills created ids
    for (const std::string& k : keep)
        if (!final_graph.has_vertex(k))
            fail(ErrorKind::InvalidSequence, "kept vertex '" + k + "' not in the built graph");
    if (!keep_connected(final_graph, keep))
        fail(ErrorKind::InvalidSequence, "kept vertices must induce a connected nonempty subgraph");

    // Backward closure: a vertex is needed when it is kept or when a blowup
    // referencing it creates a needed vertex.
    std::set<std::string> need(keep.begin(), keep.end());
    for (auto it = named.rbegin(); it != named.rend(); ++it) {
        if (!need.count(*it->created_id)) continue;
        need.insert(it->a);
        if (it->kind == MoveKind::BlowUpEdge) need.insert(it->b);
    }

    NormalizedAugmentation out;
    out.graph = seed;
    std::map<std::string, std::string> rho;  // original id -> rebuilt id
    for (const Vertex& v : seed.vertices()) rho[v.id] = v.id;
    // rebuilt id -> kept original id it stands for (identification bookkeeping)
    std::map<std::string, std::string> claimed;
    for (const Vertex& v : seed.vertices())
        if (keep.count(v.id)) claimed[v.id] = v.id;
    std::size_t counter = 1;

    auto emit = [&](Move m) {
        try {
            out.graph = apply_move(out.graph, m, counter);
        } catch (const Error& e) {
            fail(ErrorKind::Internal, "rebuilt move invalid: " + e.message());
        }
        out.sequence.push_back(std::move(m));
    };
    auto identify = [&](const std::string& created, const std::string& locus) {
        const std::string& slot = rho.at(locus);
        if (keep.count(created)) {
            auto [it, fresh] = claimed.emplace(slot, created);
            if (!fresh)
                fail(ErrorKind::InvalidSequence,
                     "kept vertices '" + it->second + "' and '" + created +
                         "' collapse to one vertex; keep set is not connected to the seed");
        }
        rho[created] = slot;
    };

    for (const Move& m : named) {
        const std::string& c = *m.created_id;
        if (m.kind == MoveKind::BlowUpVertex) {
            if (keep.count(m.a)) {
                emit(Move::up_vertex(rho.at(m.a), c));
                rho[c] = c;
            } else if (need.count(c)) {
                identify(c, m.a);
            }  // else: drop
        } else {  // BlowUpEdge
            bool ka = keep.count(m.a) != 0, kb = keep.count(m.b) != 0;
            if (ka && kb) {
                if (rho.at(m.a) == rho.at(m.b))
                    fail(ErrorKind::Internal, "kept endpoints share a rebuilt vertex");
                emit(Move::up_edge(rho.at(m.a), rho.at(m.b), c));
                rho[c] = c;
            } else if (ka || kb) {
                // Degenerate to a vertex blowup on the kept side.
                emit(Move::up_vertex(rho.at(ka ? m.a : m.b), c));
                rho[c] = c;
            } else if (need.count(c)) {
                identify(c, m.a);
            }  // else: drop
        }
    }

    // Restore framings of kept vertices; each compensating blowup adds one
    // more (−1) leaf to the augmentation.
    for (const std::string& k : keep) {
        const std::string& slot = rho.at(k);
        Int delta = out.graph.framing(slot) - final_graph.framing(k);
        if (delta < 0)
            fail(ErrorKind::Internal, "rebuilt framing of '" + k + "' fell below the original");
        for (Int i = 0; i < delta; ++i) emit(Move::up_vertex(slot));
        out.kept_image[k] = slot;
    }

    // Replay-verify the contract before returning.
    PlumbingGraph check = replay_copy(seed, out.sequence);
    std::set<std::string> image;
    for (const auto& [k, s] : out.kept_image) {
        if (!image.insert(s).second) fail(ErrorKind::Internal, "kept image not injective");
        if (check.framing(s) != final_graph.framing(k))
            fail(ErrorKind::Internal, "kept framing mismatch at '" + k + "'");
    }
    for (const auto& [k1, s1] : out.kept_image)
        for (const auto& [k2, s2] : out.kept_image)
            if (k1 < k2 && final_graph.has_edge(k1, k2) != check.has_edge(s1, s2))
                fail(ErrorKind::Internal, "kept adjacency mismatch at " + k1 + " -- " + k2);
    for (const Vertex& v : check.vertices())
        if (!image.count(v.id) && !(v.framing == -1 && check.degree(v.id) == 1))
            fail(ErrorKind::Internal, "vertex '" + v.id + "' is not a (-1) leaf");
    return out;
}

}  // namespace plumb

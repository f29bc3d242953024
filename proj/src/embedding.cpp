#include "plumb/embedding.hpp"

#include "plumb/canonical.hpp"
#include "plumb/matrix.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace plumb {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

// Pairing of two vertex images in the basis with <e_i, e_j> = -delta_ij:
//   <x_a, x_b> = -[p_a = p_b] + [p_a in N_b] + [p_b in N_a] - |N_a cap N_b|.
bool holds(const std::optional<std::size_t>& p, const std::vector<std::size_t>& neg) {
    return p && std::binary_search(neg.begin(), neg.end(), *p);
}

std::size_t shared_count(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::size_t k = 0, i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            ++i;
        else if (a[i] > b[j])
            ++j;
        else
            ++k, ++i, ++j;
    }
    return k;
}

Int image_dot(const VertexImage& a, const VertexImage& b) {
    Int d = 0;
    if (a.positive && b.positive && *a.positive == *b.positive) d -= 1;
    if (holds(a.positive, b.negatives)) d += 1;
    if (holds(b.positive, a.negatives)) d += 1;
    d -= Int(shared_count(a.negatives, b.negatives));
    return d;
}

// Enumerates connected subgraphs by the exclusion scheme: emit the current
// set, then grow it by each eligible neighbour in ascending order, excluding
// already-tried neighbours from deeper levels so every set appears once.
// emit() returning false aborts the whole enumeration.
struct SubgraphEnum {
    const std::vector<std::vector<std::size_t>>& adj;
    std::vector<char> in_s;
    std::vector<std::size_t> members;
    std::function<bool(const std::vector<std::size_t>&)> emit;

    SubgraphEnum(const std::vector<std::vector<std::size_t>>& a,
                 std::function<bool(const std::vector<std::size_t>&)> e)
        : adj(a), in_s(a.size(), 0), emit(std::move(e)) {}

    bool extend(std::vector<char> excluded) {
        if (!emit(members)) return false;
        std::vector<std::size_t> frontier;
        for (std::size_t v : members)
            for (std::size_t w : adj[v])
                if (!in_s[w] && !excluded[w]) frontier.push_back(w);
        std::sort(frontier.begin(), frontier.end());
        frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
        for (std::size_t w : frontier) {
            in_s[w] = 1;
            members.push_back(w);
            if (!extend(excluded)) return false;
            members.pop_back();
            in_s[w] = 0;
            excluded[w] = 1;
        }
        return true;
    }

    // All connected subgraphs containing `root`, restricted to `allowed`.
    bool run_rooted(std::size_t root, const std::vector<char>& allowed) {
        std::vector<char> excluded(adj.size(), 0);
        for (std::size_t v = 0; v < adj.size(); ++v)
            if (!allowed[v]) excluded[v] = 1;
        in_s.assign(adj.size(), 0);
        in_s[root] = 1;
        members.assign(1, root);
        return extend(std::move(excluded));
    }

    // All nonempty connected subgraphs: each is produced from its smallest
    // vertex, with smaller vertices excluded.
    bool run_all() {
        std::vector<char> allowed(adj.size(), 1);
        for (std::size_t v = 0; v < adj.size(); ++v) {
            if (!run_rooted(v, allowed)) return false;
            allowed[v] = 0;
        }
        return true;
    }
};

std::vector<std::vector<std::size_t>> index_adjacency(const PlumbingGraph& g) {
    std::vector<std::vector<std::size_t>> adj(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j : g.neighbors(i)) adj[i].push_back(j);
        std::sort(adj[i].begin(), adj[i].end());
    }
    return adj;
}

}  // namespace

VerifyResult verify_embedding(const PlumbingGraph& g, const Embedding& phi,
                              std::uint64_t subtree_cap) {
    g.require_genus_zero();
    std::size_t n = g.size();
    if (phi.image.size() != n)
        fail(ErrorKind::DimensionMismatch, "embedding covers " + std::to_string(phi.image.size()) +
                                               " vertices but the graph has " + std::to_string(n));
    std::vector<const VertexImage*> img(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto it = phi.image.find(g.vertex(i).id);
        if (it == phi.image.end())
            fail(ErrorKind::DimensionMismatch, "no image for vertex '" + g.vertex(i).id + "'");
        const VertexImage& im = it->second;
        if (im.positive && (*im.positive < 1 || *im.positive > phi.basis_size))
            fail(ErrorKind::DimensionMismatch, "basis index " + std::to_string(*im.positive) +
                                                   " out of range at '" + g.vertex(i).id + "'");
        for (std::size_t k = 0; k < im.negatives.size(); ++k) {
            std::size_t e = im.negatives[k];
            if (e < 1 || e > phi.basis_size)
                fail(ErrorKind::DimensionMismatch, "basis index " + std::to_string(e) +
                                                       " out of range at '" + g.vertex(i).id + "'");
            if (k > 0 && im.negatives[k - 1] >= e)
                fail(ErrorKind::DimensionMismatch,
                     "negative indices not strictly increasing at '" + g.vertex(i).id + "'");
        }
        img[i] = &im;
    }

    auto violation = [](EmbeddingViolation::Kind kind, std::string detail,
                        std::vector<std::string> verts) {
        VerifyResult r;
        r.outcome = VerifyOutcome::Violation;
        r.violation = EmbeddingViolation{kind, std::move(detail), std::move(verts)};
        return r;
    };

    // Shape: positive terms present where the mode demands them, never
    // repeated inside one image, never shared by two images.
    std::size_t pure = 0;
    std::map<std::size_t, std::string> positive_owner;
    for (std::size_t i = 0; i < n; ++i) {
        const std::string& id = g.vertex(i).id;
        if (!img[i]->positive) {
            ++pure;
            if (phi.mode == EmbMode::S)
                return violation(EmbeddingViolation::Kind::Structure,
                                 "vertex lacks a positive term", {id});
        } else {
            if (holds(img[i]->positive, img[i]->negatives))
                return violation(EmbeddingViolation::Kind::Structure,
                                 "positive index reappears among the negatives", {id});
            auto [it, fresh] = positive_owner.emplace(*img[i]->positive, id);
            if (!fresh)
                return violation(EmbeddingViolation::Kind::Structure,
                                 "two vertices share positive index " +
                                     std::to_string(*img[i]->positive),
                                 {it->second, id});
        }
    }
    if (pure > 1)
        return violation(EmbeddingViolation::Kind::Structure,
                         "more than one vertex image is purely negative", {});

    // Gram reproduction: self-pairings match the framings, pair pairings
    // match the adjacency entries.
    for (std::size_t i = 0; i < n; ++i) {
        Int self = -Int(img[i]->positive ? 1 : 0) - Int(img[i]->negatives.size());
        if (self != g.vertex(i).framing)
            return violation(EmbeddingViolation::Kind::Structure,
                             "self-pairing " + to_string(self) + " differs from framing " +
                                 to_string(g.vertex(i).framing),
                             {g.vertex(i).id});
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Int expected = g.has_edge(g.vertex(i).id, g.vertex(j).id) ? 1 : 0;
            Int got = image_dot(*img[i], *img[j]);
            if (got != expected)
                return violation(EmbeddingViolation::Kind::GramPair,
                                 "pairing is " + to_string(got) + ", expected " +
                                     to_string(expected),
                                 {g.vertex(i).id, g.vertex(j).id});
        }

    // Connected subgraph sums: every coefficient in {-1,0,+1}, and the +1
    // count as the mode demands.
    auto adj = index_adjacency(g);
    std::vector<Int> coeff(phi.basis_size + 1, 0);
    std::uint64_t seen = 0;
    std::optional<VerifyResult> found_bad;
    SubgraphEnum en(adj, [&](const std::vector<std::size_t>& members) {
        if (++seen > subtree_cap) return false;
        std::fill(coeff.begin(), coeff.end(), Int(0));
        for (std::size_t v : members) {
            if (img[v]->positive) coeff[*img[v]->positive] += 1;
            for (std::size_t e : img[v]->negatives) coeff[e] -= 1;
        }
        std::size_t plus = 0;
        std::optional<std::string> detail;
        for (std::size_t e = 1; e <= phi.basis_size && !detail; ++e) {
            if (coeff[e] < -1 || coeff[e] > 1)
                detail = "coefficient of basis index " + std::to_string(e) + " is " +
                         to_string(coeff[e]);
            else if (coeff[e] == 1)
                ++plus;
        }
        if (!detail && (phi.mode == EmbMode::S ? plus != 1 : plus > 1))
            detail = "sum has " + std::to_string(plus) + " coefficients equal to +1";
        if (!detail) return true;
        std::vector<std::string> ids;
        for (std::size_t v : members) ids.push_back(g.vertex(v).id);
        found_bad = violation(EmbeddingViolation::Kind::SubgraphSum, std::move(*detail),
                              std::move(ids));
        return false;
    });
    if (!en.run_all()) {
        if (found_bad) return *found_bad;
        VerifyResult r;
        r.outcome = VerifyOutcome::Inconclusive;
        return r;
    }
    return VerifyResult{};
}

namespace {

[[noreturn]] void fail_unverified(const VerifyResult& vr, const std::string& doing) {
    if (vr.outcome == VerifyOutcome::Inconclusive)
        fail(ErrorKind::UnverifiedEmbedding,
             "subgraph sweep exceeded the cap; cannot " + doing);
    std::string msg = "embedding does not verify: " + vr.violation->detail;
    if (!vr.violation->vertices.empty()) {
        msg += " (";
        for (std::size_t i = 0; i < vr.violation->vertices.size(); ++i) {
            if (i) msg += ", ";
            msg += vr.violation->vertices[i];
        }
        msg += ")";
    }
    fail(ErrorKind::UnverifiedEmbedding, msg);
}

}  // namespace

BasisTypeReport classify_basis_elements(const PlumbingGraph& g, const Embedding& phi) {
    VerifyResult vr = verify_embedding(g, phi);
    if (vr.outcome != VerifyOutcome::Ok) fail_unverified(vr, "classify");
    std::vector<std::size_t> pos(phi.basis_size + 1, 0), neg(phi.basis_size + 1, 0);
    for (const auto& [id, im] : phi.image) {
        if (im.positive) ++pos[*im.positive];
        for (std::size_t e : im.negatives) ++neg[e];
    }
    BasisTypeReport rep;
    rep.types.reserve(phi.basis_size);
    for (std::size_t e = 1; e <= phi.basis_size; ++e) {
        std::size_t p = pos[e], m = neg[e];
        BasisType t;
        if (p == 1 && m == 0)
            t = BasisType::T1, ++rep.t1;
        else if (p == 0 && m == 1)
            t = BasisType::T2, ++rep.t2;
        else if (p == 1 && m == 1)
            t = BasisType::T3, ++rep.t3;
        else if (p == 1 && m == 2)
            t = BasisType::T4, ++rep.t4;
        else
            fail(ErrorKind::UnverifiedEmbedding,
                 "basis index " + std::to_string(e) + " occurs +" + std::to_string(p) + "/-" +
                     std::to_string(m) + " times, outside the four basis types");
        rep.types.push_back(t);
    }
    return rep;
}

namespace {

// Backtracking search for an embedding with at most `cap` basis indices.
// Vertices are assigned in breadth-first order from a centroid, so every
// prefix is connected; basis indices are allocated in first-use order, which
// quotients away the symmetry of permuting the diagonal basis.
struct EmbeddingSearch {
    const PlumbingGraph& g;
    EmbMode mode;
    std::size_t n;
    std::size_t cap = 0;
    std::vector<std::vector<std::size_t>> adj;
    std::vector<std::size_t> order;  // assignment order (vertex indices)
    std::vector<std::size_t> need;   // -framing per vertex
    std::vector<std::size_t> parent0, depth0;
    std::vector<char> path_bits;  // (u*n + w)*n + v for u <= w; empty on big graphs

    std::size_t used = 0;
    std::vector<std::size_t> pos_owner;               // index -> vertex, or npos
    std::vector<std::vector<std::size_t>> neg_owner;  // index -> carrying vertices
    std::vector<std::optional<std::size_t>> vpos;     // vertex -> positive index
    std::vector<std::vector<std::size_t>> vneg;       // vertex -> negative indices
    std::vector<char> assigned;
    std::size_t depth = 0;
    bool pure_used = false;
    std::optional<Embedding> found;

    EmbeddingSearch(const PlumbingGraph& graph, EmbMode m) : g(graph), mode(m), n(graph.size()) {
        adj = index_adjacency(g);
        need.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            need[i] = static_cast<std::size_t>(Int(-g.vertex(i).framing));
        order = bfs_order_from(centroid());
        build_paths();
        vpos.resize(n);
        vneg.resize(n);
        assigned.assign(n, 0);
    }

    std::size_t centroid() const {
        std::vector<std::size_t> size(n, 1), parent(n, npos), stack{0}, post;
        std::vector<char> seen(n, 0);
        seen[0] = 1;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            post.push_back(v);
            for (std::size_t w : adj[v])
                if (!seen[w]) seen[w] = 1, parent[w] = v, stack.push_back(w);
        }
        for (auto it = post.rbegin(); it != post.rend(); ++it)
            if (parent[*it] != npos) size[parent[*it]] += size[*it];
        std::size_t best = 0, best_score = n;
        for (std::size_t v = 0; v < n; ++v) {
            std::size_t score = parent[v] == npos ? 0 : n - size[v];
            for (std::size_t w : adj[v])
                if (parent[w] == v) score = std::max(score, size[w]);
            if (score < best_score) best_score = score, best = v;
        }
        return best;
    }

    std::vector<std::size_t> bfs_order_from(std::size_t root) const {
        std::vector<std::size_t> out{root};
        std::vector<char> seen(n, 0);
        seen[root] = 1;
        for (std::size_t head = 0; head < out.size(); ++head)
            for (std::size_t w : adj[out[head]])
                if (!seen[w]) seen[w] = 1, out.push_back(w);
        return out;
    }

    void build_paths() {
        parent0.assign(n, npos);
        depth0.assign(n, 0);
        std::vector<std::size_t> bfs{0};
        std::vector<char> seen(n, 0);
        seen[0] = 1;
        for (std::size_t head = 0; head < bfs.size(); ++head)
            for (std::size_t w : adj[bfs[head]])
                if (!seen[w]) {
                    seen[w] = 1;
                    parent0[w] = bfs[head];
                    depth0[w] = depth0[bfs[head]] + 1;
                    bfs.push_back(w);
                }
        if (n > 64) return;  // fall back to on-demand path walks
        path_bits.assign(n * n * n, 0);
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t w = u; w < n; ++w) {
                std::size_t a = u, b = w;
                while (a != b) {
                    if (depth0[a] < depth0[b]) std::swap(a, b);
                    path_bits[(u * n + w) * n + a] = 1;
                    a = parent0[a];
                }
                path_bits[(u * n + w) * n + a] = 1;
            }
    }

    // Is v on the tree path between u and w (endpoints included)?
    bool path_has(std::size_t u, std::size_t w, std::size_t v) const {
        if (u > w) std::swap(u, w);
        if (!path_bits.empty()) return path_bits[(u * n + w) * n + v] != 0;
        std::size_t a = u, b = w;
        while (a != b) {
            if (depth0[a] < depth0[b]) std::swap(a, b);
            if (a == v) return true;
            a = parent0[a];
        }
        return a == v;
    }

    bool cross(std::size_t a, std::size_t b) const {  // [p_a in N_b]
        return vpos[a] && std::binary_search(vneg[b].begin(), vneg[b].end(), *vpos[a]);
    }

    // Pair consistency of newly assigned v against assigned u: adjacent
    // vertices share no negatives and cross exactly once; non-adjacent pairs
    // pair to zero.
    bool pair_ok(std::size_t v, std::size_t u) const {
        std::size_t sh = shared_count(vneg[v], vneg[u]);
        std::size_t cr = (cross(v, u) ? 1 : 0) + (cross(u, v) ? 1 : 0);
        if (std::binary_search(adj[v].begin(), adj[v].end(), u)) return sh == 0 && cr == 1;
        bool collide = vpos[v] && vpos[u] && *vpos[v] == *vpos[u];
        return !collide && cr == sh;
    }

    // All connected subgraphs of the assigned prefix that contain v must sum
    // with coefficients in {-1,0,+1} and the +1 count the mode allows.  The
    // prefix is connected and every new subgraph contains v, so checking here
    // at each assignment covers every subgraph of the completed tree once.
    bool subtree_sums_ok(std::size_t v) {
        std::vector<long> coeff(used + 1, 0);
        bool ok = true;
        SubgraphEnum en(adj, [&](const std::vector<std::size_t>& members) {
            std::fill(coeff.begin(), coeff.end(), 0L);
            for (std::size_t w : members) {
                if (vpos[w]) ++coeff[*vpos[w]];
                for (std::size_t e : vneg[w]) --coeff[e];
            }
            std::size_t plus = 0;
            for (std::size_t e = 1; e <= used; ++e) {
                if (coeff[e] < -1 || coeff[e] > 1) {
                    ok = false;
                    return false;
                }
                if (coeff[e] == 1) ++plus;
            }
            if (mode == EmbMode::S ? plus != 1 : plus > 1) {
                ok = false;
                return false;
            }
            return true;
        });
        std::vector<char> allowed(assigned.begin(), assigned.end());
        en.run_rooted(v, allowed);
        return ok;
    }

    void grow_owner_tables() {
        pos_owner.resize(used + 1, npos);
        neg_owner.resize(used + 1);
    }

    void place(std::size_t v, const std::optional<std::size_t>& p,
               std::vector<std::size_t> negs) {
        vpos[v] = p;
        vneg[v] = std::move(negs);
        if (p && *p > used) used = *p;
        for (std::size_t e : vneg[v])
            if (e > used) used = e;
        grow_owner_tables();
        if (p) pos_owner[*p] = v;
        for (std::size_t e : vneg[v]) neg_owner[e].push_back(v);
        assigned[v] = 1;
    }

    void unplace(std::size_t v, std::size_t used_before) {
        if (vpos[v]) pos_owner[*vpos[v]] = npos;
        for (std::size_t e : vneg[v])
            if (e <= used_before) neg_owner[e].pop_back();
        vpos[v].reset();
        vneg[v].clear();
        assigned[v] = 0;
        used = used_before;
        pos_owner.resize(used + 1);
        neg_owner.resize(used + 1);
    }

    bool try_assign(std::size_t v, const std::optional<std::size_t>& p,
                    std::vector<std::size_t> negs) {
        std::size_t used_before = used;
        place(v, p, std::move(negs));
        bool ok = true;
        for (std::size_t u = 0; ok && u < n; ++u)
            if (assigned[u] && u != v) ok = pair_ok(v, u);
        if (ok) ok = subtree_sums_ok(v);
        if (ok) {
            ++depth;
            if (search()) return true;
            --depth;
        }
        unplace(v, used_before);
        return false;
    }

    // A second negative occurrence of index e is only legal when e's positive
    // owner is already placed strictly between the two carriers; otherwise
    // the path between them sums e's coefficient to -2.
    bool second_negative_ok(std::size_t e, std::size_t v) const {
        std::size_t u = neg_owner[e][0];
        std::size_t w = pos_owner[e];
        return w != npos && w != u && w != v && path_has(u, v, w);
    }

    std::size_t used_with(const std::optional<std::size_t>& p,
                          const std::vector<std::size_t>& acc) const {
        std::size_t u = used;
        if (p && *p > u) u = *p;
        for (std::size_t e : acc)
            if (e > u) u = e;
        return u;
    }

    // Enumerate negative sets of size `want`: an ascending subset of eligible
    // existing indices completed by fresh ones.  Fresh indices are mutually
    // interchangeable, so only their count matters and they always take the
    // next unused numbers.
    bool negatives_rec(std::size_t v, const std::optional<std::size_t>& p, std::size_t want,
                       std::size_t from, std::vector<std::size_t>& acc) {
        std::size_t high = used_with(p, acc);
        std::size_t missing = want - acc.size();
        if (missing <= cap - high) {
            std::vector<std::size_t> negs = acc;
            for (std::size_t k = 1; k <= missing; ++k) negs.push_back(high + k);
            std::sort(negs.begin(), negs.end());
            if (try_assign(v, p, std::move(negs))) return true;
        }
        if (acc.size() == want) return false;
        for (std::size_t e = from; e <= used; ++e) {
            if (p && *p == e) continue;
            if (neg_owner[e].size() >= 2) continue;
            if (neg_owner[e].size() == 1 && !second_negative_ok(e, v)) continue;
            acc.push_back(e);
            if (negatives_rec(v, p, want, e + 1, acc)) return true;
            acc.pop_back();
        }
        return false;
    }

    bool search() {
        if (depth == n) {
            Embedding emb;
            emb.mode = mode;
            emb.basis_size = used;
            for (std::size_t i = 0; i < n; ++i) {
                VertexImage im;
                im.positive = vpos[i];
                im.negatives = vneg[i];
                emb.image[g.vertex(i).id] = std::move(im);
            }
            VerifyResult vr = verify_embedding(g, emb);
            if (vr.outcome == VerifyOutcome::Violation)
                fail(ErrorKind::Internal, "search produced an embedding that does not verify: " +
                                              vr.violation->detail);
            found = std::move(emb);
            return true;
        }
        std::size_t v = order[depth];
        // Candidate positives: an existing unowned index whose negative
        // carriers admit v between them, or one fresh index.
        std::vector<std::size_t> positives;
        for (std::size_t e = 1; e <= used; ++e) {
            if (pos_owner[e] != npos) continue;
            if (neg_owner[e].size() == 2) {
                std::size_t a = neg_owner[e][0], b = neg_owner[e][1];
                if (v == a || v == b || !path_has(a, b, v)) continue;
            }
            positives.push_back(e);
        }
        if (used < cap) positives.push_back(used + 1);
        std::vector<std::size_t> acc;
        for (std::size_t p : positives) {
            acc.clear();
            if (negatives_rec(v, p, need[v] - 1, 1, acc)) return true;
        }
        if (mode == EmbMode::P && !pure_used) {
            pure_used = true;
            acc.clear();
            if (negatives_rec(v, std::nullopt, need[v], 1, acc)) return true;
            pure_used = false;
        }
        return false;
    }

    bool run(std::size_t basis_cap) {
        cap = basis_cap;
        used = 0;
        pos_owner.assign(1, npos);
        neg_owner.assign(1, {});
        std::fill(assigned.begin(), assigned.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            vpos[i].reset();
            vneg[i].clear();
        }
        depth = 0;
        pure_used = false;
        found.reset();
        return search();
    }
};

}  // namespace

std::optional<Embedding> find_embedding(const PlumbingGraph& g, EmbMode mode,
                                        std::optional<std::size_t> basis_budget) {
    g.require_genus_zero();
    if (g.size() == 0) {
        Embedding emb;
        emb.mode = mode;
        return emb;
    }
    if (!g.is_tree()) fail(ErrorKind::Disconnected, "embedding search requires a connected tree");
    Int total = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        Int f = g.vertex(i).framing;
        if (f >= 0) {
            // Nonempty images pair to a negative square, so a nonnegative
            // framing only fits the empty image: an isolated 0-framed vertex
            // in P mode.
            if (mode == EmbMode::P && g.size() == 1 && f == 0) {
                Embedding emb;
                emb.mode = mode;
                emb.image[g.vertex(0).id] = VertexImage{};
                return emb;
            }
            return std::nullopt;
        }
        total += -f;
    }
    std::size_t sound = static_cast<std::size_t>(total);
    std::size_t limit = std::min(sound, basis_budget.value_or(sound));
    std::size_t start = g.size() - (mode == EmbMode::P ? 1 : 0);
    if (start < 1) start = 1;
    EmbeddingSearch search(g, mode);
    for (std::size_t capk = std::min(start, limit); capk <= limit; ++capk)
        if (search.run(capk)) return search.found;
    if (limit < sound)
        fail(ErrorKind::BudgetExceeded, "basis budget " + std::to_string(limit) +
                                            " exhausted below the sound bound " +
                                            std::to_string(sound));
    return std::nullopt;
}

namespace {

struct AugmentOut {
    PlumbingGraph graph;
    Embedding phi;
    std::vector<std::pair<std::string, std::string>> added;
};

// Attach a fresh (-1) leaf for every basis index that occurs only negatively,
// mapped to the plain basis vector; repeat until none remain, then renumber
// the basis so unused indices disappear.
AugmentOut augment_impl(const PlumbingGraph& g, const Embedding& phi) {
    AugmentOut out{g, phi, {}};
    std::size_t counter = 0;
    for (;;) {
        std::vector<std::size_t> pos(out.phi.basis_size + 1, 0);
        std::vector<std::vector<std::string>> neg(out.phi.basis_size + 1);
        for (const auto& [id, im] : out.phi.image) {
            if (im.positive) ++pos[*im.positive];
            for (std::size_t e : im.negatives) neg[e].push_back(id);
        }
        std::size_t target = 0;
        for (std::size_t e = 1; e <= out.phi.basis_size && target == 0; ++e) {
            if (pos[e] != 0 || neg[e].empty()) continue;
            if (neg[e].size() != 1)
                fail(ErrorKind::Internal, "index without a positive occurs negatively " +
                                              std::to_string(neg[e].size()) + " times");
            target = e;
        }
        if (target == 0) break;
        const std::string& carrier = neg[target][0];
        std::string leaf = fresh_vertex_id(out.graph, counter);
        out.graph.add_vertex(leaf, -1);
        out.graph.add_edge(carrier, leaf);
        VertexImage im;
        im.positive = target;
        out.phi.image[leaf] = std::move(im);
        out.added.emplace_back(carrier, leaf);
    }
    std::vector<std::size_t> remap(out.phi.basis_size + 1, 0);
    for (const auto& [id, im] : out.phi.image) {
        if (im.positive) remap[*im.positive] = 1;
        for (std::size_t e : im.negatives) remap[e] = 1;
    }
    std::size_t next = 0;
    for (std::size_t e = 1; e <= out.phi.basis_size; ++e)
        if (remap[e]) remap[e] = ++next;
    for (auto& [id, im] : out.phi.image) {
        if (im.positive) im.positive = remap[*im.positive];
        for (std::size_t& e : im.negatives) e = remap[e];
    }
    out.phi.basis_size = next;
    return out;
}

// Blow down vertices whose image is a plain basis vector, one at a time,
// projecting the blown-down index out of the remaining images.  Ends at the
// empty graph, or at `stop` as a single 0-framed vertex when given.
MoveSequence projection_blowdown(PlumbingGraph graph, Embedding phi,
                                 const std::optional<std::string>& stop) {
    MoveSequence ms;
    std::size_t floor_size = stop ? 1 : 0;
    while (graph.size() > floor_size) {
        std::string pick;
        std::size_t pick_index = 0;
        for (std::size_t i = 0; i < graph.size(); ++i) {
            const std::string& id = graph.vertex(i).id;
            if (stop && id == *stop) continue;
            const VertexImage& im = phi.image.at(id);
            if (im.positive && im.negatives.empty() && (pick.empty() || id < pick)) {
                pick = id;
                pick_index = *im.positive;
            }
        }
        if (pick.empty())
            fail(ErrorKind::Internal, "projection stuck: no vertex with a plain positive image");
        try {
            graph = blow_down(graph, pick);
        } catch (const Error& e) {
            fail(ErrorKind::Internal,
                 std::string("projection produced an invalid blowdown: ") + e.what());
        }
        ms.push_back(Move::down(pick));
        phi.image.erase(pick);
        for (auto& [id, im] : phi.image) {
            auto it = std::lower_bound(im.negatives.begin(), im.negatives.end(), pick_index);
            if (it != im.negatives.end() && *it == pick_index) im.negatives.erase(it);
        }
    }
    if (stop && (graph.size() != 1 || graph.vertex(0).id != *stop || graph.vertex(0).framing != 0))
        fail(ErrorKind::Internal, "projection did not end at the pinned 0-framed vertex");
    return ms;
}

void require_decidable(const PlumbingGraph& g) {
    g.require_genus_zero();
    if (!g.is_tree())
        fail(ErrorKind::Disconnected, "decision procedures require a nonempty connected tree");
    if (!g.arrows().empty())
        fail(ErrorKind::InconsistentArrows, "decision procedures require an arrowless graph");
}

// Certificate sanity: the recorded moves must replay to the stated target.
void check_certificate(const SandwichCertificate& cert) {
    PlumbingGraph end = replay_copy(cert.augmented, cert.blowdown);
    if (cert.target == BlowdownTarget::Kind::Empty) {
        if (end.size() != 0) fail(ErrorKind::Internal, "certificate does not replay to empty");
    } else if (end.size() != 1 || end.vertex(0).framing != 0) {
        fail(ErrorKind::Internal, "certificate does not replay to a single 0-framed vertex");
    }
}

// Does some augmentation of h by at most B (-1)-leaves on h's own vertices
// blow down to nothing with the final blowdown removing `last`?  B is the
// leaf bound sound for the framing-decrement route.  Cached on the canonical
// form of (h, last) so repeated sweeps stay cheap.
Tri empties_ending_at(const PlumbingGraph& h, const std::string& last) {
    static std::map<std::string, Tri> cache;
    std::string key = canonical_tree_form(h, last);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    Tri out = Tri::False;
    bool inconclusive = false;
    if (classify_tree_form(h).cls == DefClass::NegativeDefinite) {
        Int bound_i = 1 - Int(h.size());
        for (std::size_t i = 0; i < h.size(); ++i) bound_i += -h.vertex(i).framing - 1;
        std::size_t bound = bound_i > 0 ? static_cast<std::size_t>(bound_i) : 0;
        std::size_t counter = 0;
        // Depth-first over leaf multisets, attachment points nondecreasing;
        // definiteness is monotone under adding vertices, and a graph that
        // blows down to empty has determinant of absolute value 1, so both
        // prune hard.
        std::function<bool(const PlumbingGraph&, std::size_t, std::size_t)> dfs =
            [&](const PlumbingGraph& cur, std::size_t from, std::size_t left) -> bool {
            TreeFormReport tf = classify_tree_form(cur);
            if (tf.cls != DefClass::NegativeDefinite) return false;
            if (tf.det == 1 || tf.det == -1) {
                BlowdownResult r = blowdown_search(cur, BlowdownTarget::empty_ending_at(last));
                if (r.outcome == SearchOutcome::Found) return true;
                if (r.outcome == SearchOutcome::Inconclusive) inconclusive = true;
            }
            if (left == 0) return false;
            for (std::size_t i = from; i < h.size(); ++i) {
                PlumbingGraph next = cur;
                std::string leaf = fresh_vertex_id(next, counter);
                next.add_vertex(leaf, -1);
                next.add_edge(h.vertex(i).id, leaf);
                if (dfs(next, i, left - 1)) return true;
            }
            return false;
        };
        if (dfs(h, 0, bound))
            out = Tri::True;
        else
            out = inconclusive ? Tri::Inconclusive : Tri::False;
    }
    cache.emplace(std::move(key), out);
    return out;
}

// The decrement route to the same decision: a graph augments-and-blows-down
// to a single 0-framed vertex exactly when it does so to the empty graph, or
// some single framing decrement yields a graph whose augmented blowdown can
// end at the decremented vertex.
Tri pm_by_decrement(const PlumbingGraph& g) {
    Decision s = decide_sandwiched(g);
    if (s.verdict == Tri::True) return Tri::True;
    bool inconclusive = s.verdict == Tri::Inconclusive;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const std::string& v = g.vertex(i).id;
        PlumbingGraph h = g;
        h.set_framing(v, g.vertex(i).framing - 1);
        Tri t = empties_ending_at(h, v);
        if (t == Tri::True) return Tri::True;
        if (t == Tri::Inconclusive) inconclusive = true;
    }
    return inconclusive ? Tri::Inconclusive : Tri::False;
}

}  // namespace

std::pair<PlumbingGraph, Embedding> augment_from_embedding(const PlumbingGraph& g,
                                                           const Embedding& phi) {
    VerifyResult vr = verify_embedding(g, phi);
    if (vr.outcome != VerifyOutcome::Ok) fail_unverified(vr, "augment");
    if (phi.mode != EmbMode::S)
        fail(ErrorKind::UnverifiedEmbedding, "leaf augmentation applies to S-mode embeddings");
    AugmentOut out = augment_impl(g, phi);
    return {std::move(out.graph), std::move(out.phi)};
}

const char* tri_name(Tri t) {
    switch (t) {
        case Tri::True: return "true";
        case Tri::False: return "false";
        case Tri::Inconclusive: return "inconclusive";
    }
    return "?";
}

Decision decide_sandwiched(const PlumbingGraph& g,
                           std::optional<std::size_t> basis_budget) {
    require_decidable(g);
    if (classify_definiteness(intersection_matrix(g).m).cls != DefClass::NegativeDefinite)
        return {Tri::False, std::nullopt};
    std::optional<Embedding> phi;
    try {
        phi = find_embedding(g, EmbMode::S, basis_budget);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::BudgetExceeded) return {Tri::Inconclusive, std::nullopt};
        throw;
    }
    if (!phi) return {Tri::False, std::nullopt};
    AugmentOut aug = augment_impl(g, *phi);
    MoveSequence ms = projection_blowdown(aug.graph, aug.phi, std::nullopt);
    SandwichCertificate cert{std::move(aug.graph), std::move(aug.added), std::move(ms),
                             BlowdownTarget::Kind::Empty};
    check_certificate(cert);
    return {Tri::True, std::move(cert)};
}

Decision decide_pm(const PlumbingGraph& g, std::optional<std::size_t> basis_budget) {
    require_decidable(g);
    DefinitenessReport rep = classify_definiteness(intersection_matrix(g).m);
    Decision result;
    if (rep.cls == DefClass::Other) {
        result = {Tri::False, std::nullopt};
    } else if (rep.cls == DefClass::NegativeSemidefinite) {
        if (rep.nullity != 1)
            fail(ErrorKind::Internal, "connected graph classified with nullity >= 2");
        // Attaching a leaf to a semidefinite graph whose null direction has
        // full support creates an isotropic vector that is no longer null,
        // i.e. a positive direction, and positive directions survive
        // blowdowns.  So only the graph itself can reach the target.
        BlowdownResult r = blowdown_search(g, BlowdownTarget::zero_vertex());
        if (r.outcome == SearchOutcome::Found) {
            SandwichCertificate cert{g, {}, r.moves, BlowdownTarget::Kind::ZeroVertex};
            check_certificate(cert);
            result = {Tri::True, std::move(cert)};
        } else if (r.outcome == SearchOutcome::NotFound) {
            result = {Tri::False, std::nullopt};
        } else {
            result = {Tri::Inconclusive, std::nullopt};
        }
    } else {
        std::optional<Embedding> phi;
        bool capped = false;
        try {
            phi = find_embedding(g, EmbMode::P, basis_budget);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::BudgetExceeded) throw;
            capped = true;
        }
        if (capped) {
            result = {Tri::Inconclusive, std::nullopt};
        } else if (!phi) {
            result = {Tri::False, std::nullopt};
        } else {
            AugmentOut aug = augment_impl(g, *phi);
            std::optional<std::string> pure;
            for (const auto& [id, im] : aug.phi.image)
                if (!im.positive) pure = id;
            SandwichCertificate cert;
            if (pure) {
                MoveSequence ms = projection_blowdown(aug.graph, aug.phi, pure);
                cert = {std::move(aug.graph), std::move(aug.added), std::move(ms),
                        BlowdownTarget::Kind::ZeroVertex};
            } else {
                // Every vertex carries a positive term, so the embedding also
                // writes the graph as a blowdown to empty.  Grafting one more
                // (-1) leaf onto the last vertex blown down turns that same
                // sequence into one ending at a single 0-framed vertex: the
                // leaf rides along untouched and absorbs the final blowdown's
                // framing bump.
                MoveSequence ms = projection_blowdown(aug.graph, aug.phi, std::nullopt);
                if (ms.empty()) fail(ErrorKind::Internal, "empty projection on a nonempty graph");
                std::string z = ms.back().a;
                std::size_t counter = 0;
                std::string leaf = fresh_vertex_id(aug.graph, counter);
                aug.graph.add_vertex(leaf, -1);
                aug.graph.add_edge(z, leaf);
                aug.added.emplace_back(z, leaf);
                cert = {std::move(aug.graph), std::move(aug.added), std::move(ms),
                        BlowdownTarget::Kind::ZeroVertex};
            }
            check_certificate(cert);
            result = {Tri::True, std::move(cert)};
        }
    }
    if (g.size() <= 5 && result.verdict != Tri::Inconclusive) {
        Tri other = pm_by_decrement(g);
        if (other != Tri::Inconclusive && other != result.verdict)
            fail(ErrorKind::Internal, "decision disagrees with the framing-decrement route");
    }
    return result;
}

}  // namespace plumb

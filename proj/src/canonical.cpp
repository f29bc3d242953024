#include "plumb/canonical.hpp"

#include "plumb/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace plumb {

namespace {

std::string vertex_label(const PlumbingGraph& g, std::size_t i, bool use_arrows,
                         const std::string* marked = nullptr) {
    const Vertex& v = g.vertex(i);
    std::string s = v.framing.str();
    if (marked && *marked == v.id) s += "*";
    if (v.genus != 0) s += "g" + v.genus.str();
    if (use_arrows) {
        std::vector<Int> mults;
        for (const Arrow& a : g.arrows())
            if (a.vertex == v.id) mults.push_back(a.multiplicity);
        std::sort(mults.begin(), mults.end());
        for (const Int& m : mults) s += "a" + m.str();
    }
    return s;
}

// Rooted canonical encoding of the subtree at v coming from parent p.
std::string encode_rooted(const PlumbingGraph& g, std::size_t v, std::size_t p, bool use_arrows,
                          const std::string* marked = nullptr) {
    std::vector<std::string> kids;
    for (std::size_t w : g.neighbors(v))
        if (w != p) kids.push_back(encode_rooted(g, w, v, use_arrows, marked));
    std::sort(kids.begin(), kids.end());
    std::string s = "(" + vertex_label(g, v, use_arrows, marked);
    for (const std::string& k : kids) s += k;
    return s + ")";
}

// Centroids of a tree: one or two vertices minimizing the largest component
// of the complement.
std::vector<std::size_t> centroids(const PlumbingGraph& g) {
    std::size_t n = g.size();
    std::vector<std::size_t> sub(n, 1), best;
    std::size_t best_weight = n + 1;
    // subtree sizes from an arbitrary root (vertex 0), iterative post-order
    std::vector<std::size_t> order, parent(n, n);
    order.reserve(n);
    std::vector<std::size_t> stack{0};
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (std::size_t w : g.neighbors(v))
            if (!seen[w]) {
                seen[w] = 1;
                parent[w] = v;
                stack.push_back(w);
            }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (parent[*it] != n) sub[parent[*it]] += sub[*it];
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t weight = n - sub[v];  // component through the parent
        for (std::size_t w : g.neighbors(v))
            if (w != parent[v]) weight = std::max(weight, sub[w]);
        if (weight < best_weight) {
            best_weight = weight;
            best = {v};
        } else if (weight == best_weight) {
            best.push_back(v);
        }
    }
    return best;
}

}  // namespace

std::string canonical_tree_form(const PlumbingGraph& g) {
    if (g.empty()) return "()";
    if (!g.is_tree()) fail(ErrorKind::Internal, "canonical form requested for a non-tree");
    std::string best;
    for (std::size_t c : centroids(g)) {
        std::string s = encode_rooted(g, c, g.size(), true);
        if (best.empty() || s < best) best = s;
    }
    return best;
}

std::string canonical_tree_form(const PlumbingGraph& g, const std::string& marked) {
    if (g.empty()) return "()";
    if (!g.is_tree()) fail(ErrorKind::Internal, "canonical form requested for a non-tree");
    std::string best;
    for (std::size_t c : centroids(g)) {
        std::string s = encode_rooted(g, c, g.size(), true, &marked);
        if (best.empty() || s < best) best = s;
    }
    return best;
}

bool weighted_isomorphic(const PlumbingGraph& a, const PlumbingGraph& b, bool use_arrows) {
    std::size_t n = a.size();
    if (n != b.size() || a.edge_count() != b.edge_count()) return false;
    if (n == 0) return true;

    // label + degree multisets must agree
    auto profile = [&](const PlumbingGraph& g) {
        std::vector<std::string> p;
        for (std::size_t i = 0; i < g.size(); ++i)
            p.push_back(vertex_label(g, i, use_arrows) + "d" + std::to_string(g.degree(i)));
        std::sort(p.begin(), p.end());
        return p;
    };
    if (profile(a) != profile(b)) return false;

    bool a_tree = a.is_tree(), b_tree = b.is_tree();
    if (a_tree != b_tree) return false;
    if (a_tree && use_arrows) return canonical_tree_form(a) == canonical_tree_form(b);

    // Backtracking on an explicit vertex mapping (desk-scale graphs only).
    std::vector<std::string> la(n), lb(n);
    for (std::size_t i = 0; i < n; ++i) {
        la[i] = vertex_label(a, i, use_arrows);
        lb[i] = vertex_label(b, i, use_arrows);
    }
    std::vector<std::size_t> map_ab(n, n);
    std::vector<char> used(n, 0);
    std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
        if (i == n) return true;
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j] || la[i] != lb[j] || a.degree(i) != b.degree(j)) continue;
            bool ok = true;
            for (std::size_t k = 0; k < i && ok; ++k) {
                bool ea = std::find(a.neighbors(i).begin(), a.neighbors(i).end(), k) !=
                          a.neighbors(i).end();
                bool eb = std::find(b.neighbors(j).begin(), b.neighbors(j).end(), map_ab[k]) !=
                          b.neighbors(j).end();
                if (ea != eb) ok = false;
            }
            if (!ok) continue;
            used[j] = 1;
            map_ab[i] = j;
            if (go(i + 1)) return true;
            used[j] = 0;
            map_ab[i] = n;
        }
        return false;
    };
    return go(0);
}

}  // namespace plumb

#include "support/corpus.hpp"

#include <plumb/blowdown.hpp>
#include <plumb/canonical.hpp>
#include <plumb/fiber.hpp>
#include <plumb/io.hpp>
#include <plumb/laufer.hpp>

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace plumb::testsupport {

namespace {

std::string join_ints(const std::vector<Int>& xs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
    return os.str();
}

}  // namespace

// --- fixtures ---------------------------------------------------------------

std::string fixture_path(const std::string& name) {
#ifdef FIXTURE_DIR
    return std::string(FIXTURE_DIR) + "/" + name;
#else
    return "tests/fixtures/" + name;
#endif
}

PlumbingGraph load_graph_fixture(const std::string& name) {
    return parse_graph(read_file(fixture_path(name)));
}

// --- corpus of small trees --------------------------------------------------

namespace {

struct TreeShape {
    std::size_t n;
    std::vector<std::pair<int, int>> edges;
};

// The unlabeled trees on 1..6 vertices (1, 1, 1, 2, 3, 6 of them).
const std::vector<TreeShape>& tree_shapes() {
    static const std::vector<TreeShape> shapes = {
        {1, {}},
        {2, {{0, 1}}},
        {3, {{0, 1}, {1, 2}}},
        {4, {{0, 1}, {1, 2}, {2, 3}}},                  // path
        {4, {{0, 1}, {0, 2}, {0, 3}}},                  // star
        {5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}},          // path
        {5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}},          // star
        {5, {{0, 1}, {0, 2}, {0, 3}, {3, 4}}},          // arms 1,1,2
        {6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}}},  // path
        {6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}}},  // star
        {6, {{0, 1}, {0, 2}, {0, 3}, {3, 4}, {4, 5}}},  // arms 1,1,3
        {6, {{0, 1}, {0, 2}, {2, 3}, {0, 4}, {4, 5}}},  // arms 1,2,2
        {6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {4, 5}}},  // arms 1,1,1,2
        {6, {{0, 1}, {0, 2}, {0, 3}, {3, 4}, {3, 5}}},  // two adjacent 3-valent vertices
    };
    return shapes;
}

PlumbingGraph build_shape(const TreeShape& s, const std::vector<int>& framings) {
    PlumbingGraph g;
    for (std::size_t i = 0; i < s.n; ++i)
        g.add_vertex("v" + std::to_string(i), framings[i]);
    for (auto [a, b] : s.edges)
        g.add_edge("v" + std::to_string(a), "v" + std::to_string(b));
    return g;
}

std::vector<PlumbingGraph> enumerate_trees(std::size_t max_vertices, bool negdef_only) {
    std::vector<PlumbingGraph> out;
    std::set<std::string> seen;
    for (const TreeShape& s : tree_shapes()) {
        if (s.n > max_vertices) continue;
        std::vector<int> f(s.n, -1);
        for (;;) {
            PlumbingGraph g = build_shape(s, f);
            if (seen.insert(canonical_tree_form(g)).second &&
                (!negdef_only || classify_tree_form(g).cls == DefClass::NegativeDefinite))
                out.push_back(std::move(g));
            // odometer over framings -1..-5
            std::size_t i = 0;
            while (i < s.n && f[i] == -5) f[i++] = -1;
            if (i == s.n) break;
            --f[i];
        }
    }
    return out;
}

}  // namespace

std::vector<PlumbingGraph> negdef_tree_corpus(std::size_t max_vertices) {
    return enumerate_trees(max_vertices, true);
}

std::vector<PlumbingGraph> all_tree_corpus(std::size_t max_vertices) {
    return enumerate_trees(max_vertices, false);
}

// --- independent definiteness ----------------------------------------------

bool negdef_by_minors(const IntMat& q) {
    std::size_t n = q.size();
    IntMat a = q;
    Int prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        // After k elimination rounds a[k][k] is the leading principal minor
        // of order k+1; negative definiteness needs its sign to be (-1)^(k+1).
        const Int& minor = a[k][k];
        if ((k + 1) % 2 == 0 ? minor <= 0 : minor >= 0) return false;
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return true;
}

// --- brute-force augmentation oracles ---------------------------------------

namespace {

// Upper bound on the number of added leaves in a successful blowdown to the
// empty graph: building the augmented graph back up from a single (-1)
// vertex adds at least 1 to sum_v(-framing - 1) per blowup while the added
// leaves contribute 0 to that sum.
Int empty_leaf_bound(const PlumbingGraph& g) {
    Int s = 0;
    for (const Vertex& v : g.vertices()) s += -v.framing - 1;
    return s - Int(g.size()) + 1;
}

// Memoized blowdown search keyed on the canonical form (reachability of the
// target is an isomorphism invariant, so outcomes transfer between
// augmentations of different corpus graphs).
bool search_reaches(const PlumbingGraph& h, bool to_zero) {
    static std::map<std::string, bool> cache_empty, cache_zero;
    auto& cache = to_zero ? cache_zero : cache_empty;
    std::string key = canonical_tree_form(h);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    BlowdownResult res = blowdown_search(
        h, to_zero ? BlowdownTarget::zero_vertex() : BlowdownTarget::empty());
    if (res.outcome == SearchOutcome::Inconclusive)
        throw std::runtime_error("reference oracle: blowdown search ran out of budget");
    bool found = res.outcome == SearchOutcome::Found;
    cache.emplace(std::move(key), found);
    return found;
}

// DFS over augmentation states.  A state is the base graph plus some (-1)
// leaves attached at original vertices; states are deduplicated up to
// isomorphisms that preserve the original/added split, which is encoded by
// canonicalizing with added leaves reframed to a sentinel value.
struct AugmentSearch {
    std::vector<std::string> originals;
    bool to_zero = false;
    Int bound = 0;
    std::set<std::string> seen;

    std::string marked_key(const PlumbingGraph& g, const std::vector<std::string>& added) {
        PlumbingGraph copy = g;
        for (const std::string& id : added) copy.set_framing(id, Int(-1000003));
        return canonical_tree_form(copy);
    }

    std::string fresh_leaf(const PlumbingGraph& g) {
        for (std::size_t k = 0;; ++k) {
            std::string id = "q" + std::to_string(k);
            if (!g.has_vertex(id)) return id;
        }
    }

    // Precondition: g classifies as negative definite.
    bool run(const PlumbingGraph& g, std::vector<std::string>& added) {
        if (!to_zero) {
            Int d = classify_tree_form(g).det;
            if ((d == 1 || d == -1) && search_reaches(g, false)) return true;
        }
        if (Int(added.size()) >= bound) return false;
        for (const std::string& v : originals) {
            PlumbingGraph child = g;
            std::string leaf = fresh_leaf(child);
            child.add_vertex(leaf, -1);
            child.add_edge(v, leaf);
            added.push_back(leaf);
            bool found = false;
            if (seen.insert(marked_key(child, added)).second) {
                DefClass cls = classify_tree_form(child).cls;
                if (cls == DefClass::NegativeDefinite)
                    found = run(child, added);
                else if (to_zero && cls == DefClass::NegativeSemidefinite)
                    found = search_reaches(child, true);
            }
            added.pop_back();
            if (found) return true;
        }
        return false;
    }
};

}  // namespace

bool oracle_sandwiched(const PlumbingGraph& g) {
    // A graph reaching the empty graph under blowdowns has intersection form
    // congruent to a diagonal of -1s: negative definite, determinant +-1.
    // Neither property can be restored by attaching more (-1) leaves.
    if (classify_tree_form(g).cls != DefClass::NegativeDefinite) return false;
    AugmentSearch search;
    for (const Vertex& v : g.vertices()) search.originals.push_back(v.id);
    search.to_zero = false;
    search.bound = empty_leaf_bound(g);
    if (search.bound < 0) return false;
    std::vector<std::string> added;
    return search.run(g, added);
}

bool oracle_pm(const PlumbingGraph& g) {
    // The target here is a single 0-framed vertex, whose form is negative
    // semidefinite of nullity one; only definite states can still grow into
    // one (adding a leaf to a semidefinite connected tree always yields an
    // indefinite form, because the null vector has full support).
    DefClass cls = classify_tree_form(g).cls;
    if (cls == DefClass::NegativeSemidefinite) return search_reaches(g, true);
    if (cls != DefClass::NegativeDefinite) return false;
    AugmentSearch search;
    for (const Vertex& v : g.vertices()) search.originals.push_back(v.id);
    search.to_zero = true;
    search.bound = empty_leaf_bound(g) + 1;
    if (search.bound < 0) return false;
    std::vector<std::string> added;
    return search.run(g, added);
}

// --- random generators ------------------------------------------------------

RandomBlowup random_blowup_sequence(Rng& rng, std::size_t max_moves) {
    RandomBlowup rb;
    rb.seed.add_vertex("v0", 0);
    PlumbingGraph cur = rb.seed;
    std::size_t fresh = 0;
    std::size_t len = 1 + pick(rng, max_moves);
    for (std::size_t i = 0; i < len; ++i) {
        Move m = Move::up_vertex("");
        if (cur.edge_count() > 0 && pick(rng, 2) == 0) {
            auto es = cur.edges();
            auto [a, b] = es[pick(rng, es.size())];
            m = Move::up_edge(cur.vertex(a).id, cur.vertex(b).id);
        } else {
            m = Move::up_vertex(cur.vertex(pick(rng, cur.size())).id);
        }
        cur = apply_move(cur, m, fresh);
        rb.moves.push_back(m);
    }
    rb.result = std::move(cur);
    return rb;
}

std::set<std::string> random_connected_subset(Rng& rng, const PlumbingGraph& g) {
    std::size_t target = 1 + pick(rng, g.size());
    std::set<std::string> out;
    std::vector<std::size_t> frontier;  // indices adjacent to the chosen set
    std::size_t start = pick(rng, g.size());
    out.insert(g.vertex(start).id);
    for (std::size_t j : g.neighbors(start)) frontier.push_back(j);
    while (out.size() < target && !frontier.empty()) {
        std::size_t at = pick(rng, frontier.size());
        std::size_t v = frontier[at];
        frontier.erase(frontier.begin() + at);
        if (!out.insert(g.vertex(v).id).second) continue;
        for (std::size_t j : g.neighbors(v))
            if (!out.count(g.vertex(j).id)) frontier.push_back(j);
    }
    return out;
}

Factorization random_admissible_factorization(Rng& rng, std::size_t max_holes,
                                              std::size_t max_cycles) {
    Factorization f;
    f.page.shape = pick(rng, 2) == 0 ? PageShape::Disk : PageShape::Sphere;
    std::size_t nh = 1 + pick(rng, max_holes);
    for (std::size_t i = 0; i < nh; ++i) f.page.holes.push_back("h" + std::to_string(i + 1));

    // Random partition of a shuffled hole list into consecutive blocks.
    std::vector<std::string> pool = f.page.holes;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::size_t at = 0, orbit_no = 0;
    while (at < pool.size()) {
        std::size_t block = 1 + pick(rng, pool.size() - at);
        Orbit o;
        o.id = "o" + std::to_string(++orbit_no);
        o.holes.assign(pool.begin() + at, pool.begin() + at + block);
        at += block;
        // Spanning tree of the orbit: join each hole to a random earlier one.
        for (std::size_t i = 1; i < o.holes.size(); ++i)
            f.interchanges.emplace_back(o.holes[pick(rng, i)], o.holes[i]);
        f.orbits.orbits.push_back(std::move(o));
    }

    std::size_t nc = 1 + pick(rng, max_cycles);
    for (std::size_t c = 0; c < nc; ++c) {
        VanishingCycle vc;
        vc.id = "a" + std::to_string(c + 1);
        while (vc.holes.empty())
            for (const std::string& h : f.page.holes)
                if (pick(rng, 2) == 0) vc.holes.insert(h);
        f.cycles.push_back(std::move(vc));
    }
    return f;
}

// --- property checks --------------------------------------------------------

std::string check_blowup_null_pipeline(Rng& rng, std::size_t max_moves) {
    RandomBlowup rb = random_blowup_sequence(rng, max_moves);
    std::set<std::string> keep = random_connected_subset(rng, rb.result);
    NormalizedAugmentation norm = normalize_augmentation(rb.seed, rb.moves, keep);
    std::set<std::string> kept_ids;
    for (const auto& [orig, img] : norm.kept_image) kept_ids.insert(img);

    PmNullDivisor nd = pm_null_divisor(rb.seed, norm.sequence, kept_ids);

    // The full divisor must be the primitive positive generator of the null
    // space of the full graph's intersection matrix.
    IntersectionMatrix q = intersection_matrix(nd.full_graph);
    IntVec d;
    for (const std::string& id : q.ids) d.push_back(nd.full_divisor.at(id));
    for (const Int& c : d)
        if (c <= 0) return "null divisor has a non-positive coefficient";
    for (const Int& y : mat_apply(q.m, d))
        if (y != 0) return "claimed null divisor does not annihilate Q";
    if (igcd(d) != 1) return "null divisor is not primitive";
    DefinitenessReport rep = classify_definiteness(q.m);
    if (rep.cls != DefClass::NegativeSemidefinite || rep.nullity != 1)
        return "full graph is not semidefinite of nullity 1";
    if (rep.null_generator != std::optional<IntVec>(d))
        return "null divisor differs from the classifier's null generator";

    if (riemann_roch_chi(nd.full_graph, nd.full_divisor) != 1)
        return "Riemann-Roch value of the null divisor is not 1";

    Int msum = 0;
    for (const Arrow& a : nd.arrows) msum += a.multiplicity;
    FiberInvariants fi = fiber_invariants(nd.kept_graph, nd.kept_divisor, nd.arrows);
    if (fi.genus != 0) return "fiber genus " + fi.genus.str() + ", expected 0";
    if (fi.euler != 2 - msum)
        return "fiber Euler characteristic " + fi.euler.str() + ", expected " +
               Int(2 - msum).str();
    if (!fi.planar) return "fiber not flagged planar";
    return "";
}

std::string check_sphere_shapes(const Factorization& f) {
    std::vector<HomologyClass> basis = h2_kernel(f);
    IntMat gram = intersection_form(f, basis);
    if (!negdef_by_minors(gram)) return "kernel Gram matrix is not negative definite";

    std::size_t k = basis.size();
    std::size_t m = f.cycles.size();
    bool sphere = f.page.shape == PageShape::Sphere;

    // Library-enumerated sphere classes, keyed for membership tests.
    std::set<std::string> listed;
    for (const HomologyClass& x : classify_sphere_classes(f)) {
        if (f.page.shape == PageShape::Disk) {
            std::size_t pos = 0;
            for (const Int& a : x.a) pos += a == 1;
            if (pos != 1) return "disk-page enumeration produced a class without a single +1";
        }
        listed.insert(x.w.str() + ":" + join_ints(x.a));
    }
    if (k == 0) return "";

    // Small-integer copies of the basis for the box enumeration.
    std::vector<long long> bw(k);
    std::vector<std::vector<long long>> ba(k, std::vector<long long>(m));
    for (std::size_t i = 0; i < k; ++i) {
        bw[i] = basis[i].w.convert_to<long long>();
        for (std::size_t j = 0; j < m; ++j) ba[i][j] = basis[i].a[j].convert_to<long long>();
    }

    std::vector<long long> a(m, 0);
    long long w = 0;
    std::vector<int> coeff(k, 0);
    std::string failure;

    auto eval_leaf = [&]() {
        if (std::all_of(coeff.begin(), coeff.end(), [](int c) { return c == 0; })) return;
        long long sa = 0, sa2 = 0;
        bool has_pos = false, nonzero = w != 0;
        for (long long x : a) {
            sa += x;
            sa2 += x * x;
            has_pos |= x > 0;
            nonzero |= x != 0;
        }
        if (2 * w + sa + sa2 != 2) return;  // adjunction excludes genus 0 outright

        HomologyClass x;
        x.w = w;
        for (long long v : a) x.a.push_back(Int(v));
        bool representable = w >= 0 && !(w == 0 && nonzero && !has_pos);
        bool lib_genus0 = adjunction_genus(x) == std::optional<Int>(0);
        if (lib_genus0 != representable) {
            failure = "adjunction genus disagrees with the direct evaluation";
            return;
        }
        if (!representable) return;

        std::size_t pos1 = 0;
        bool rest_ok = true, any_neg = false;
        for (long long v : a) {
            if (v == 1)
                ++pos1;
            else if (v == -1)
                any_neg = true;
            else if (v != 0)
                rest_ok = false;
        }
        bool shape_one_pos = w == 0 && pos1 == 1 && rest_ok;
        bool shape_fiberless = sphere && w == 1 && pos1 == 0 && rest_ok && any_neg;
        if (!shape_one_pos && !shape_fiberless) {
            failure = "genus-0 class of unexpected shape: w=" + std::to_string(w);
            return;
        }
        if (!listed.count(x.w.str() + ":" + join_ints(x.a))) {
            failure = "genus-0 class missing from the sphere-class enumeration";
            return;
        }
    };

    // Depth-first walk of coefficient vectors in [-2,2]^k, updating the
    // accumulated class by one basis-vector addition per step.
    auto add = [&](std::size_t i, long long t) {
        w += t * bw[i];
        for (std::size_t j = 0; j < m; ++j) a[j] += t * ba[i][j];
    };
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (!failure.empty()) return;
        if (i == k) {
            eval_leaf();
            return;
        }
        add(i, -2);
        for (int c = -2; c <= 2; ++c) {
            coeff[i] = c;
            self(self, i + 1);
            if (c < 2) add(i, 1);
        }
        coeff[i] = 0;
        add(i, -2);
    };
    rec(rec, 0);
    return failure;
}

std::string check_det_under_moves(const PlumbingGraph& start, Rng& rng, std::size_t moves) {
    TreeFormReport tf = classify_tree_form(start);
    if (tf.cls != DefClass::NegativeDefinite)
        return "starting graph is not negative definite";
    Int target = tf.det < 0 ? Int(-tf.det) : tf.det;

    PlumbingGraph cur = start;
    std::size_t fresh = 0;
    for (std::size_t step = 0; step < moves; ++step) {
        std::vector<Move> options;
        for (const Vertex& v : cur.vertices()) {
            options.push_back(Move::up_vertex(v.id));
            if (v.framing == -1 && cur.degree(v.id) <= 2 && cur.size() > 1)
                options.push_back(Move::down(v.id));
        }
        for (auto [i, j] : cur.edges())
            options.push_back(Move::up_edge(cur.vertex(i).id, cur.vertex(j).id));
        Move m = options[pick(rng, options.size())];
        cur = apply_move(cur, m, fresh);

        TreeFormReport now = classify_tree_form(cur);
        if (now.cls != DefClass::NegativeDefinite)
            return "lost negative definiteness after move " + std::to_string(step + 1);
        Int d = now.det < 0 ? Int(-now.det) : now.det;
        if (d != target)
            return "|det| changed from " + target.str() + " to " + d.str() +
                   " after move " + std::to_string(step + 1);
    }
    return "";
}

std::string check_laufer_orders(const PlumbingGraph& g, Rng& rng, std::size_t orders) {
    LauferTrace base = fundamental_cycle(g);
    std::size_t n = g.size();
    for (std::size_t t = 0; t < orders; ++t) {
        std::vector<std::size_t> order(n), name(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = name[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        std::shuffle(name.begin(), name.end(), rng);

        std::vector<std::string> renamed(n);
        for (std::size_t i = 0; i < n; ++i) renamed[i] = "r" + std::to_string(name[i]);
        PlumbingGraph h;
        for (std::size_t i : order) h.add_vertex(renamed[i], g.vertex(i).framing);
        for (auto [i, j] : g.edges()) h.add_edge(renamed[i], renamed[j]);

        LauferTrace trace = fundamental_cycle(h, renamed[pick(rng, n)]);
        if (trace.rational != base.rational)
            return "rationality verdict changed under a relabeling";
        for (std::size_t i = 0; i < n; ++i)
            if (trace.final.at(renamed[i]) != base.final.at(g.vertex(i).id))
                return "fundamental cycle changed under a relabeling";
    }
    return "";
}

}  // namespace plumb::testsupport

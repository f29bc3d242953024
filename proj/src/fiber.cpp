#include "plumb/fiber.hpp"

#include "plumb/matrix.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace plumb {

namespace {

// d . E_v = framing(v) d_v + sum of d over the neighbours of v.
Int pair_with_vertex(const PlumbingGraph& g, const Divisor& d, std::size_t i) {
    Int s = g.vertex(i).framing * d.at(g.vertex(i).id);
    for (std::size_t j : g.neighbors(i)) s += d.at(g.vertex(j).id);
    return s;
}

void require_known_ids(const PlumbingGraph& g, const std::map<std::string, Int>& m,
                       const char* what) {
    for (const auto& [id, value] : m)
        if (!g.has_vertex(id))
            fail(ErrorKind::DanglingReference,
                 std::string(what) + " names unknown vertex '" + id + "'");
}

}  // namespace

std::map<std::string, Int> arrows_from_divisor(const PlumbingGraph& g, const Divisor& d) {
    g.require_genus_zero();
    require_known_ids(g, d.coeff, "divisor");
    std::map<std::string, Int> out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        Int a = -pair_with_vertex(g, d, i);
        if (a < 0)
            fail(ErrorKind::NotInLipmanCone, "divisor pairs to " + Int(-a).str() +
                                                 " > 0 against vertex '" + g.vertex(i).id + "'");
        out[g.vertex(i).id] = std::move(a);
    }
    return out;
}

std::optional<Divisor> divisor_from_arrows(const PlumbingGraph& g,
                                           const std::map<std::string, Int>& arrow_totals) {
    g.require_genus_zero();
    require_known_ids(g, arrow_totals, "arrow totals");
    for (const auto& [id, a] : arrow_totals)
        if (a < 0)
            fail(ErrorKind::NonPositive, "arrow total at '" + id + "' is negative");
    IntersectionMatrix q = intersection_matrix(g);
    if (classify_definiteness(q.m).cls != DefClass::NegativeDefinite)
        fail(ErrorKind::NotNegativeDefinite,
             "recovering a divisor from arrows needs a negative definite graph");
    RatVec rhs(q.ids.size());
    for (std::size_t i = 0; i < q.ids.size(); ++i) {
        auto it = arrow_totals.find(q.ids[i]);
        rhs[i] = it == arrow_totals.end() ? Rat(0) : Rat(-it->second);
    }
    std::optional<RatVec> sol = solve_q(q.m, rhs);
    if (!sol) return std::nullopt;
    Divisor d;
    for (std::size_t i = 0; i < q.ids.size(); ++i) {
        const Rat& r = (*sol)[i];
        if (boost::multiprecision::denominator(r) != 1)
            fail(ErrorKind::NonIntegral,
                 "solution entry " + to_string(r) + " at '" + q.ids[i] + "' is not an integer");
        Int v(boost::multiprecision::numerator(r));
        if (v <= 0)
            fail(ErrorKind::NonPositive,
                 "solution entry " + to_string(v) + " at '" + q.ids[i] + "' is not positive");
        d.set(q.ids[i], std::move(v));
    }
    return d;
}

FiberInvariants fiber_invariants(const PlumbingGraph& g, const Divisor& d,
                                 const std::vector<Arrow>& arrows) {
    std::map<std::string, Int> required = arrows_from_divisor(g, d);
    std::map<std::string, Int> provided;
    std::map<std::string, std::size_t> arrow_count;
    for (const Arrow& a : arrows) {
        if (!g.has_vertex(a.vertex))
            fail(ErrorKind::InconsistentArrows,
                 "arrow names unknown vertex '" + a.vertex + "'");
        if (a.multiplicity <= 0)
            fail(ErrorKind::InconsistentArrows,
                 "arrow at '" + a.vertex + "' has non-positive multiplicity");
        provided[a.vertex] += a.multiplicity;
        ++arrow_count[a.vertex];
    }
    for (const auto& [id, want] : required) {
        Int have = provided.count(id) ? provided.at(id) : Int(0);
        if (have != want)
            fail(ErrorKind::InconsistentArrows,
                 "arrows at '" + id + "' sum to " + to_string(have) + ", divisor forces " +
                     to_string(want));
    }

    FiberInvariants inv;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const std::string& id = g.vertex(i).id;
        Int dv = Int(g.degree(id));
        if (auto it = arrow_count.find(id); it != arrow_count.end()) dv += Int(it->second);
        inv.euler += d.at(id) * (2 - dv);
    }
    for (const Arrow& a : arrows) {
        Int count = igcd(d.at(a.vertex), a.multiplicity);
        inv.total_boundary += count;
        inv.boundary_components.push_back({a, std::move(count)});
    }
    Int twice_genus = 2 - inv.euler - inv.total_boundary;
    if (twice_genus < 0 || twice_genus % 2 != 0)
        fail(ErrorKind::InconsistentArrows,
             "euler count " + to_string(inv.euler) + " with " + to_string(inv.total_boundary) +
                 " boundary circles admits no non-negative genus");
    inv.genus = twice_genus / 2;
    inv.planar = inv.genus == 0;
    return inv;
}

PmNullDivisor pm_null_divisor(const PlumbingGraph& seed, const MoveSequence& seq,
                              const std::set<std::string>& keep) {
    if (seed.size() != 1 || seed.vertex(0).framing != 0 || seed.vertex(0).genus != 0 ||
        !seed.arrows().empty())
        fail(ErrorKind::InvalidSequence, "seed must be a single 0-framed plain vertex");
    for (const Move& m : seq)
        if (m.kind == MoveKind::BlowDown)
            fail(ErrorKind::InvalidSequence, "sequence must consist of blowups only");

    MoveSequence s = seq;
    PlumbingGraph full = replay(seed, s);

    std::map<std::string, Int> mult;
    mult[seed.vertex(0).id] = 1;
    for (const Move& m : s) {
        const std::string& created = *m.created_id;
        mult[created] = m.kind == MoveKind::BlowUpVertex ? mult.at(m.a)
                                                         : mult.at(m.a) + mult.at(m.b);
    }

    for (const std::string& id : keep)
        if (!full.has_vertex(id))
            fail(ErrorKind::InvalidSequence, "kept vertex '" + id + "' is not in the result");

    PmNullDivisor out;
    out.full_graph = full;
    for (std::size_t i = 0; i < full.size(); ++i)
        out.full_divisor.set(full.vertex(i).id, mult.at(full.vertex(i).id));

    std::vector<std::string> removed;
    for (std::size_t i = 0; i < full.size(); ++i) {
        const std::string& id = full.vertex(i).id;
        if (keep.count(id)) continue;
        if (full.vertex(i).framing != -1 || full.degree(id) != 1)
            fail(ErrorKind::InvalidSequence,
                 "vertex '" + id + "' outside the kept set is not a (-1) leaf");
        const std::string& nb = full.neighbor_ids(id).front();
        if (!keep.count(nb))
            fail(ErrorKind::InvalidSequence,
                 "removed leaf '" + id + "' is attached to the removed vertex '" + nb + "'");
        removed.push_back(id);
    }
    std::sort(removed.begin(), removed.end());

    for (std::size_t i = 0; i < full.size(); ++i) {
        const Vertex& v = full.vertex(i);
        if (keep.count(v.id)) {
            out.kept_graph.add_vertex(v.id, v.framing, v.genus);
            out.kept_divisor.set(v.id, mult.at(v.id));
        }
    }
    for (const auto& [u, w] : full.edges()) {
        const std::string& uid = full.vertex(u).id;
        const std::string& wid = full.vertex(w).id;
        if (keep.count(uid) && keep.count(wid)) out.kept_graph.add_edge(uid, wid);
    }
    for (const std::string& id : removed)
        out.arrows.push_back({full.neighbor_ids(id).front(), mult.at(id)});

    // The tracking rules make the coefficient vector a null vector of the
    // replayed graph's intersection form; anything else is a bug.
    IntersectionMatrix q = intersection_matrix(full);
    IntVec f(q.ids.size());
    for (std::size_t i = 0; i < q.ids.size(); ++i) f[i] = out.full_divisor.at(q.ids[i]);
    for (const Int& entry : mat_apply(q.m, f))
        if (entry != 0)
            fail(ErrorKind::Internal, "tracked coefficients are not a null vector");
    return out;
}

Rat riemann_roch_chi(const PlumbingGraph& g, const Divisor& d) {
    g.require_genus_zero();
    require_known_ids(g, d.coeff, "divisor");
    Int dd = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        Int di = d.at(g.vertex(i).id);
        dd += di * di * g.vertex(i).framing;
    }
    for (const auto& [u, w] : g.edges())
        dd += 2 * d.at(g.vertex(u).id) * d.at(g.vertex(w).id);
    Int dk = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
        dk += d.at(g.vertex(i).id) * (-g.vertex(i).framing - 2);
    return Rat(-(dd + dk)) / 2;
}

HJChain hj_expansion(const Int& b, const Int& a) {
    if (b <= 0 || a <= 0) fail(ErrorKind::NonPositive, "both chain parameters must be positive");
    if (igcd(b, a) != 1)
        fail(ErrorKind::NotCoprime,
             "chain parameters " + to_string(b) + ", " + to_string(a) + " share a factor");
    HJChain chain;
    Int num = b, den = a;
    while (den > 0) {
        Int c = ceil_div(num, den);
        chain.coefficients.push_back(c);
        chain.framings.push_back(-c);
        Int rem = c * den - num;
        num = den;
        den = rem;
    }
    return chain;
}

PlumbingGraph cap_binding_component(const PlumbingGraph& g, const std::string& v,
                                    const Int& r_v) {
    if (!g.has_vertex(v)) fail(ErrorKind::DanglingReference, "no vertex '" + v + "'");
    if (r_v <= 0) fail(ErrorKind::NonPositive, "divisor coefficient at '" + v + "' must be positive");
    const std::vector<Arrow>& arrows = g.arrows();
    std::size_t pick = arrows.size();
    for (std::size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].vertex == v) {
            pick = i;
            break;
        }
    if (pick == arrows.size()) fail(ErrorKind::MissingArrow, "no arrow at vertex '" + v + "'");

    Int a = arrows[pick].multiplicity;
    Int common = igcd(r_v, a);
    HJChain chain = hj_expansion(r_v / common, a / common);

    PlumbingGraph out = g;
    out.arrows_mut().erase(out.arrows_mut().begin() + static_cast<std::ptrdiff_t>(pick));
    std::size_t counter = 0;
    std::vector<std::string> added;
    std::string attach = v;
    for (const Int& f : chain.framings) {
        std::string id = fresh_vertex_id(out, counter);
        out.add_vertex(id, f);
        out.add_edge(attach, id);
        added.push_back(id);
        attach = id;
    }
    // Normalize: collapse any -1 vertices the chain brought in (leading 1s of
    // a shallow slope); each blowdown bumps its neighbours and may cascade.
    for (bool changed = true; changed;) {
        changed = false;
        for (auto it = added.begin(); it != added.end(); ++it) {
            if (!out.has_vertex(*it)) continue;
            if (out.framing(*it) != -1) continue;
            out = blow_down(out, *it);
            added.erase(it);
            changed = true;
            break;
        }
    }
    return out;
}

}  // namespace plumb

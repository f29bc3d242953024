#include <plumb/error.hpp>
#include <plumb/matrix.hpp>
#include <plumb/nlf.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace plumb {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

// Positional index of a factorization's page: hole id -> position and
// hole position -> orbit position.  Rejects structurally broken input.
struct PageIndex {
    std::map<std::string, std::size_t> hole_pos;
    std::vector<std::size_t> orbit_of;
};

PageIndex index_page(const Factorization& f) {
    PageIndex ix;
    for (std::size_t i = 0; i < f.page.holes.size(); ++i)
        if (!ix.hole_pos.emplace(f.page.holes[i], i).second)
            fail(ErrorKind::DuplicateId, "duplicate hole id '" + f.page.holes[i] + "'");
    if (f.page.shape == PageShape::Sphere && f.page.holes.empty())
        fail(ErrorKind::Inadmissible, "a sphere page needs at least one hole");

    ix.orbit_of.assign(f.page.holes.size(), npos);
    std::set<std::string> orbit_ids;
    for (std::size_t c = 0; c < f.orbits.orbits.size(); ++c) {
        const Orbit& orb = f.orbits.orbits[c];
        if (!orbit_ids.insert(orb.id).second)
            fail(ErrorKind::DuplicateId, "duplicate orbit id '" + orb.id + "'");
        if (orb.holes.empty())
            fail(ErrorKind::Inadmissible, "orbit '" + orb.id + "' contains no holes");
        for (const std::string& h : orb.holes) {
            auto it = ix.hole_pos.find(h);
            if (it == ix.hole_pos.end())
                fail(ErrorKind::DanglingReference,
                     "orbit '" + orb.id + "' references unknown hole '" + h + "'");
            if (ix.orbit_of[it->second] != npos)
                fail(ErrorKind::Inadmissible,
                     "hole '" + h + "' is assigned to more than one orbit");
            ix.orbit_of[it->second] = c;
        }
    }
    for (std::size_t i = 0; i < f.page.holes.size(); ++i)
        if (ix.orbit_of[i] == npos)
            fail(ErrorKind::Inadmissible,
                 "hole '" + f.page.holes[i] + "' belongs to no orbit");

    std::set<std::string> cycle_ids;
    for (const VanishingCycle& cyc : f.cycles) {
        if (!cycle_ids.insert(cyc.id).second)
            fail(ErrorKind::DuplicateId, "duplicate cycle id '" + cyc.id + "'");
        for (const std::string& h : cyc.holes)
            if (!ix.hole_pos.count(h))
                fail(ErrorKind::DanglingReference,
                     "cycle '" + cyc.id + "' references unknown hole '" + h + "'");
    }
    for (const auto& [a, b] : f.interchanges)
        for (const std::string* h : {&a, &b})
            if (!ix.hole_pos.count(*h))
                fail(ErrorKind::DanglingReference,
                     "interchange references unknown hole '" + *h + "'");
    return ix;
}

void require_admissible(const Factorization& f) {
    AdmissibilityReport rep = check_admissible(f);
    if (!rep.ok)
        fail(ErrorKind::Inadmissible,
             rep.violations.empty() ? std::string("inadmissible factorization")
                                    : rep.violations.front());
}

// Per-orbit enclosure counts: row c, column i holds the number of holes of
// orbit c enclosed by cycle i.  The winding total of a class around orbit c
// is the dot product of row c with the coefficient vector.
IntMat orbit_windings(const Factorization& f, const PageIndex& ix) {
    IntMat n(f.orbits.orbits.size(), IntVec(f.cycles.size(), 0));
    for (std::size_t i = 0; i < f.cycles.size(); ++i)
        for (const std::string& h : f.cycles[i].holes)
            n[ix.orbit_of[ix.hole_pos.at(h)]][i] += 1;
    return n;
}

std::size_t uf_find(std::vector<std::size_t>& parent, std::size_t x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

}  // namespace

AdmissibilityReport check_admissible(const Factorization& f) {
    PageIndex ix = index_page(f);
    AdmissibilityReport rep;

    // Interchange-level defects, in declaration order.
    std::set<std::pair<std::string, std::string>> seen;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> per_orbit(
        f.orbits.orbits.size());
    for (const auto& [a, b] : f.interchanges) {
        std::size_t pa = ix.hole_pos.at(a);
        std::size_t pb = ix.hole_pos.at(b);
        if (pa == pb) {
            rep.violations.push_back("interchange (" + a + ", " + b +
                                     ") pairs a hole with itself");
            continue;
        }
        if (ix.orbit_of[pa] != ix.orbit_of[pb]) {
            rep.violations.push_back("interchange (" + a + ", " + b +
                                     ") joins holes from different orbits");
            continue;
        }
        auto key = std::minmax(a, b);
        if (!seen.insert(key).second) {
            rep.violations.push_back("duplicate interchange (" + key.first + ", " +
                                     key.second + ")");
            continue;
        }
        per_orbit[ix.orbit_of[pa]].emplace_back(pa, pb);
    }

    // Per-orbit count and connectivity, in orbit order.  An orbit of m holes
    // needs exactly m - 1 distinct interchanges forming a spanning tree.
    for (std::size_t c = 0; c < f.orbits.orbits.size(); ++c) {
        const Orbit& orb = f.orbits.orbits[c];
        std::size_t need = orb.holes.size() - 1;
        if (per_orbit[c].size() != need)
            rep.violations.push_back("orbit '" + orb.id + "' has " +
                                     std::to_string(per_orbit[c].size()) +
                                     " interchanges, needs " + std::to_string(need));
        std::vector<std::size_t> parent(f.page.holes.size());
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        std::size_t components = orb.holes.size();
        for (const auto& [pa, pb] : per_orbit[c]) {
            std::size_t ra = uf_find(parent, pa);
            std::size_t rb = uf_find(parent, pb);
            if (ra != rb) {
                parent[ra] = rb;
                --components;
            }
        }
        if (components != 1)
            rep.violations.push_back("interchanges do not connect orbit '" + orb.id +
                                     "'");
    }

    rep.ok = rep.violations.empty();
    return rep;
}

H1Presentation h1_smooth_part(const Factorization& f) {
    require_admissible(f);
    H1Presentation pres;
    for (const Orbit& orb : f.orbits.orbits) pres.generators.push_back(orb.id);
    if (f.page.shape == PageShape::Sphere) {
        IntVec row;
        for (const Orbit& orb : f.orbits.orbits)
            row.push_back(Int(orb.holes.size()));
        pres.relations.push_back(std::move(row));
    }
    std::vector<Int> factors = smith_invariant_factors(pres.relations);
    pres.free_rank = pres.generators.size() - factors.size();
    for (const Int& d : factors)
        if (d > 1) pres.torsion.push_back(d);
    return pres;
}

std::vector<HomologyClass> h2_kernel(const Factorization& f) {
    require_admissible(f);
    PageIndex ix = index_page(f);
    IntMat n = orbit_windings(f, ix);
    std::size_t k = f.cycles.size();

    std::vector<HomologyClass> basis;
    if (f.page.shape == PageShape::Disk) {
        // Winding totals vanish around every orbit; w is identically zero.
        if (n.empty()) {
            for (std::size_t i = 0; i < k; ++i) {
                HomologyClass x;
                x.a.assign(k, 0);
                x.a[i] = 1;
                basis.push_back(std::move(x));
            }
            return basis;
        }
        for (IntVec& v : kernel_basis(n)) {
            HomologyClass x;
            x.a = std::move(v);
            basis.push_back(std::move(x));
        }
        return basis;
    }

    // Sphere page: winding totals are a common multiple t of the orbit
    // multiplicities.  Solve for (a, t) jointly and record w = -t.
    IntMat m(n.size(), IntVec(k + 1, 0));
    for (std::size_t c = 0; c < n.size(); ++c) {
        for (std::size_t i = 0; i < k; ++i) m[c][i] = n[c][i];
        m[c][k] = -Int(f.orbits.orbits[c].holes.size());
    }
    for (const IntVec& v : kernel_basis(m)) {
        HomologyClass x;
        x.a.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
        x.w = -v[k];
        basis.push_back(std::move(x));
    }
    return basis;
}

IntMat intersection_form(const Factorization& f,
                         const std::vector<HomologyClass>& xs) {
    for (const HomologyClass& x : xs)
        if (x.a.size() != f.cycles.size())
            fail(ErrorKind::MixedContexts,
                 "homology class with " + std::to_string(x.a.size()) +
                     " coefficients does not belong to a factorization with " +
                     std::to_string(f.cycles.size()) + " cycles");
    IntMat gram(xs.size(), IntVec(xs.size(), 0));
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j)
            gram[i][j] = -dot(xs[i].a, xs[j].a);
    return gram;
}

Int c1_evaluate(const HomologyClass& x) {
    Int total = 2 * x.w;
    for (const Int& ai : x.a) total += ai;
    return total;
}

std::optional<Int> adjunction_genus(const HomologyClass& x) {
    Int s1 = 0, s2 = 0;
    bool nonzero = (x.w != 0);
    bool has_positive = false;
    for (const Int& ai : x.a) {
        s1 += ai;
        s2 += ai * ai;
        if (ai != 0) nonzero = true;
        if (ai > 0) has_positive = true;
    }
    // A symplectic representative forces a non-negative fiber coefficient,
    // and a nonzero class with w = 0 must wind positively somewhere.
    if (x.w < 0) return std::nullopt;
    if (x.w == 0 && nonzero && !has_positive) return std::nullopt;
    Int num = 2 - 2 * x.w - s1 - s2;
    if (num % 2 != 0) return std::nullopt;
    Int g = num / 2;
    if (g < 0) return std::nullopt;
    return g;
}

std::vector<HomologyClass> classify_sphere_classes(const Factorization& f) {
    require_admissible(f);
    PageIndex ix = index_page(f);
    IntMat n = orbit_windings(f, ix);
    std::size_t k = f.cycles.size();
    if (k > 63)
        fail(ErrorKind::DimensionMismatch,
             "too many cycles to enumerate sphere shapes");

    auto orbit_sums = [&](const IntVec& a) {
        IntVec s(n.size(), 0);
        for (std::size_t c = 0; c < n.size(); ++c)
            for (std::size_t i = 0; i < k; ++i) s[c] += n[c][i] * a[i];
        return s;
    };

    std::vector<HomologyClass> out;
    std::uint64_t end = k == 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << k);

    // One +1 coefficient against a set of -1s; winding totals must vanish,
    // which pins w = 0 and adjunction genus 0.
    for (std::size_t j = 0; j < k; ++j) {
        for (std::uint64_t mask = 0; mask < end; ++mask) {
            if (mask & (std::uint64_t{1} << j)) continue;
            IntVec a(k, 0);
            a[j] = 1;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (std::uint64_t{1} << i)) a[i] = -1;
            IntVec s = orbit_sums(a);
            if (std::all_of(s.begin(), s.end(), [](const Int& v) { return v == 0; }))
                out.push_back(HomologyClass{std::move(a), 0});
        }
    }
    if (f.page.shape == PageShape::Disk) return out;

    // Pure sets of -1s exist only over sphere pages: every orbit's winding
    // total must equal the negated multiplicity, pinning w = 1.
    for (std::uint64_t mask = 1; mask < end; ++mask) {
        IntVec a(k, 0);
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (std::uint64_t{1} << i)) a[i] = -1;
        IntVec s = orbit_sums(a);
        bool ok = true;
        for (std::size_t c = 0; c < n.size() && ok; ++c)
            ok = (s[c] == -Int(f.orbits.orbits[c].holes.size()));
        if (ok) out.push_back(HomologyClass{std::move(a), 1});
    }
    return out;
}

bool match_plumbing(const Factorization& f,
                    const std::vector<HomologyClass>& xs,
                    const PlumbingGraph& g) {
    IntMat a = intersection_form(f, xs);
    IntMat b = intersection_matrix(g).m;
    std::size_t n = a.size();
    if (b.size() != n) return false;
    if (n == 0) return true;

    // Row profile: diagonal entry plus the sorted off-diagonal multiset.
    // Equal-profile rows are the only candidates for matching, which prunes
    // the bijection search to near nothing at desk scale.
    auto profile = [](const IntMat& m, std::size_t i) {
        IntVec off;
        for (std::size_t j = 0; j < m.size(); ++j)
            if (j != i) off.push_back(m[i][j]);
        std::sort(off.begin(), off.end());
        return std::make_pair(m[i][i], std::move(off));
    };
    std::vector<std::pair<Int, IntVec>> pa, pb;
    for (std::size_t i = 0; i < n; ++i) {
        pa.push_back(profile(a, i));
        pb.push_back(profile(b, i));
    }
    {
        auto sa = pa;
        auto sb = pb;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return false;
    }

    std::vector<std::size_t> assign(n, npos);
    std::vector<bool> used(n, false);
    auto backtrack = [&](auto&& self, std::size_t i) -> bool {
        if (i == n) return true;
        for (std::size_t cand = 0; cand < n; ++cand) {
            if (used[cand] || pa[cand] != pb[i]) continue;
            bool ok = (a[cand][cand] == b[i][i]);
            for (std::size_t j = 0; j < i && ok; ++j)
                ok = (a[cand][assign[j]] == b[i][j] && a[assign[j]][cand] == b[j][i]);
            if (!ok) continue;
            assign[i] = cand;
            used[cand] = true;
            if (self(self, i + 1)) return true;
            used[cand] = false;
            assign[i] = npos;
        }
        return false;
    };
    return backtrack(backtrack, 0);
}

}  // namespace plumb

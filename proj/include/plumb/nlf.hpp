#pragma once
// Homology of planar nearly-Lefschetz fibrations.
//
// A fibration is described combinatorially by a factorization: a planar page
// (disk or sphere with holes), a partition of the holes into boundary orbits
// (the orbit size is the multiplicity of the binding component behind it),
// a list of vanishing cycles — each recorded by the set of holes it
// encloses — and a list of boundary interchanges pairing holes.
//
// Second homology of the total space is computed as the lattice of integer
// combinations of vanishing cycles that die in the first homology of the
// fibration over the smooth part; on sphere pages a class carries an extra
// fiber coefficient w recording how it sits against the closed fiber.  The
// intersection pairing of two classes is the negated dot product of their
// cycle coefficient vectors, so the page model reduces intersection theory
// to exact integer linear algebra.

#include <plumb/graph.hpp>
#include <plumb/matrix.hpp>

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace plumb {

enum class PageShape { Disk, Sphere };

// A planar page: a disk or a sphere with holes.  Sphere pages must have at
// least one hole.  Hole ids are arbitrary tokens, kept in declaration order.
struct PlanarPage {
    PageShape shape = PageShape::Disk;
    std::vector<std::string> holes;
};

// One monodromy orbit of page boundary components.  Orbits partition the
// holes; the binding multiplicity of the orbit is the number of holes in it.
struct Orbit {
    std::string id;
    std::vector<std::string> holes;
};

struct OrbitStructure {
    std::vector<Orbit> orbits;
};

// A vanishing cycle, recorded by the set of holes it encloses (for sphere
// pages: the holes on the side away from the reference point).
struct VanishingCycle {
    std::string id;
    std::set<std::string> holes;
};

// Complete combinatorial description of a planar nearly-Lefschetz fibration.
struct Factorization {
    PlanarPage page;
    OrbitStructure orbits;
    std::vector<VanishingCycle> cycles;
    // Unordered hole pairs, one per boundary interchange.
    std::vector<std::pair<std::string, std::string>> interchanges;
};

// Result of the admissibility check.  `violations` lists every defect found,
// in a deterministic order; `ok` iff it is empty.
struct AdmissibilityReport {
    bool ok = false;
    std::vector<std::string> violations;
};

// A factorization is admissible when every interchange pairs two distinct
// holes of a single orbit, no pair repeats, and each orbit of m holes has
// exactly m - 1 interchanges connecting it (a spanning tree of the orbit).
// Structural breakage (unknown hole ids, holes missed or repeated by the
// orbit partition, a sphere page without holes) throws instead of being
// reported, since such input describes no fibration at all.
AdmissibilityReport check_admissible(const Factorization& f);

// A second-homology class: integer coefficients over f.cycles (by position)
// plus the fiber coefficient w.  Disk pages force w = 0.
struct HomologyClass {
    IntVec a;
    Int w = 0;
};

// Presentation of the first homology of the fibration over the smooth part:
// one generator per orbit; no relations for disk pages, the single relation
// sum(m_c * mu_c) = 0 for sphere pages.  free_rank and torsion summarize the
// presented group (torsion lists the invariant factors exceeding 1).
struct H1Presentation {
    std::vector<std::string> generators;
    IntMat relations;
    std::size_t free_rank = 0;
    std::vector<Int> torsion;
};

H1Presentation h1_smooth_part(const Factorization& f);

// Basis of the full lattice of homology classes: all (w, a) whose per-orbit
// winding totals vanish (disk) or are a common multiple t of the orbit
// multiplicities (sphere, with w = -t).  Basis vectors are primitive.
std::vector<HomologyClass> h2_kernel(const Factorization& f);

// Gram matrix of the classes under the intersection pairing -sum(a_i a_i').
// Classes built over a different factorization (wrong coefficient length)
// raise MixedContexts.
IntMat intersection_form(const Factorization& f,
                         const std::vector<HomologyClass>& xs);

// Evaluation of the first Chern class: 2w + sum(a_i).
Int c1_evaluate(const HomologyClass& x);

// Genus of a smooth symplectic representative, solved from
// 2w + sum(a_i) + sum(a_i^2) = 2 - 2g.  Absent when no such representative
// exists: negative or fractional g, negative w, or a nonzero class with
// w = 0 and no positive coefficient.
std::optional<Int> adjunction_genus(const HomologyClass& x);

// All classes of the two sphere shapes present in the homology lattice:
// one coefficient +1 and a set of -1s (any page), or a nonempty set of -1s
// alone (sphere pages only).  Every returned class has adjunction genus 0.
// Deterministic order; enumeration is exponential in the cycle count.
std::vector<HomologyClass> classify_sphere_classes(const Factorization& f);

// True iff the Gram matrix of xs equals the intersection matrix of g under
// some vertex bijection.  The search is exact: profiles of rows prefilter
// the candidates, then a backtracking matcher tries the bijections.
bool match_plumbing(const Factorization& f,
                    const std::vector<HomologyClass>& xs,
                    const PlumbingGraph& g);

}  // namespace plumb

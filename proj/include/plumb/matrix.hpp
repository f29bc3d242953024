// Exact linear algebra over arbitrary-precision integers and rationals:
// intersection matrices, symmetric definiteness classification, linear
// solving, integer kernels, determinants, and Smith normal form.
//
// Matrices are dense row-major vectors of vectors; everything here is exact.
#pragma once

#include "plumb/graph.hpp"
#include "plumb/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace plumb {

using IntMat = std::vector<std::vector<Int>>;
using RatVec = std::vector<Rat>;
using IntVec = std::vector<Int>;

// Symmetric intersection matrix of a plumbing graph together with the vertex
// order it is indexed by (the graph's insertion order).
struct IntersectionMatrix {
    std::vector<std::string> ids;
    IntMat m;

    std::size_t size() const { return ids.size(); }
};

IntersectionMatrix intersection_matrix(const PlumbingGraph& g);

enum class DefClass { NegativeDefinite, NegativeSemidefinite, Other };

const char* def_class_name(DefClass c);

struct DefinitenessReport {
    DefClass cls = DefClass::Other;
    std::size_t nullity = 0;
    // Present exactly when cls == NegativeSemidefinite and nullity == 1:
    // the primitive integer generator of the null space, sign-normalized so
    // that an all-positive representative is chosen when one exists.
    std::optional<IntVec> null_generator;
};

// Exact classification of a symmetric integer matrix by symmetric rational
// elimination.  A positive diagonal pivot, or a zero pivot whose residual row
// is nonzero, proves the form is not negative semidefinite; zero pivots with
// zero rows contribute to the nullity.
DefinitenessReport classify_definiteness(const IntMat& q);

// Solve Qx = b exactly.  Unique solution -> value; singular but consistent
// (solution set nonempty, not unique) -> nullopt; inconsistent -> throws
// Error(SingularInconsistent).
std::optional<RatVec> solve_q(const IntMat& q, const RatVec& b);

// Definiteness of a connected framed tree by leaf peeling: eliminating a
// leaf with effective weight a < 0 adds −1/a to its neighbor's weight, so
// the pivots stream out in O(n) rational operations.  Agrees with
// classify_definiteness on the intersection matrix (property-tested) but is
// much faster inside enumeration loops.  Also reports det(Q) = Π pivots,
// meaningful whenever cls != Other (the peel aborts early on a positive
// direction, so det is then left at 0).
struct TreeFormReport {
    DefClass cls = DefClass::Other;
    Int det = 0;  // determinant of the intersection matrix; see above
};
TreeFormReport classify_tree_form(const PlumbingGraph& g);

// Determinant by fraction-free Bareiss elimination.
Int det(const IntMat& a);

// Basis of the integer kernel {x : Mx = 0} computed by unimodular column
// reduction; the result generates the full kernel lattice (saturated).
std::vector<IntVec> kernel_basis(const IntMat& m);

// Invariant factors d_1 | d_2 | ... of the Smith normal form, nonnegative,
// including any zero factors (rank deficiencies).
std::vector<Int> smith_invariant_factors(IntMat a);

// --- small helpers ---------------------------------------------------------

IntVec mat_apply(const IntMat& m, const IntVec& x);
Int dot(const IntVec& a, const IntVec& b);

// x^T Q y for a symmetric pairing matrix.
Int pair_q(const IntMat& q, const IntVec& x, const IntVec& y);

}  // namespace plumb

#include "plumb/matrix.hpp"

#include "plumb/error.hpp"

#include <algorithm>
#include <numeric>

namespace plumb {

IntersectionMatrix intersection_matrix(const PlumbingGraph& g) {
    std::size_t n = g.size();
    IntersectionMatrix out;
    out.m.assign(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        out.ids.push_back(g.vertex(i).id);
        out.m[i][i] = g.vertex(i).framing;
        for (std::size_t j : g.neighbors(i)) out.m[i][j] = 1;
    }
    return out;
}

const char* def_class_name(DefClass c) {
    switch (c) {
        case DefClass::NegativeDefinite: return "NegativeDefinite";
        case DefClass::NegativeSemidefinite: return "NegativeSemidefinite";
        case DefClass::Other: return "Other";
    }
    return "?";
}

DefinitenessReport classify_definiteness(const IntMat& q) {
    std::size_t n = q.size();
    for (const auto& row : q)
        if (row.size() != n) fail(ErrorKind::DimensionMismatch, "matrix not square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (q[i][j] != q[j][i]) fail(ErrorKind::DimensionMismatch, "matrix not symmetric");

    // Symmetric rational elimination.  Processing order is the given order;
    // symmetry is maintained so only entries (i,j) with i,j >= k matter.
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(q[i][j]);

    DefinitenessReport rep;
    std::size_t nullity = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] > 0) {
            rep.cls = DefClass::Other;
            return rep;
        }
        if (a[k][k] == 0) {
            // A zero pivot with any nonzero residual entry gives a 2x2 block
            // [[0, c], [c, d]] which takes both signs, so the form is
            // indefinite.  A fully zero row adds one to the nullity.
            bool zero_row = true;
            for (std::size_t j = k + 1; j < n; ++j)
                if (a[k][j] != 0) {
                    zero_row = false;
                    break;
                }
            if (!zero_row) {
                rep.cls = DefClass::Other;
                return rep;
            }
            ++nullity;
            continue;
        }
        // Negative pivot: clear column k below the diagonal.  Row operations
        // alone keep the active block equal to the (symmetric) Schur
        // complement, so the pivot signs read off the inertia.
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            Rat f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    rep.nullity = nullity;
    rep.cls = nullity == 0 ? DefClass::NegativeDefinite : DefClass::NegativeSemidefinite;
    if (rep.cls == DefClass::NegativeSemidefinite && nullity == 1) {
        std::vector<IntVec> ker = kernel_basis(q);
        if (ker.size() != 1) fail(ErrorKind::Internal, "nullity-1 form with kernel rank != 1");
        IntVec gen = ker[0];
        Int g = igcd(gen);
        if (g > 1)
            for (Int& x : gen) x /= g;
        // Prefer the all-positive representative when one exists; otherwise
        // make the first nonzero entry positive for determinism.
        bool any_pos = false, any_neg = false;
        for (const Int& x : gen) {
            if (x > 0) any_pos = true;
            if (x < 0) any_neg = true;
        }
        bool flip = false;
        if (any_neg && !any_pos) {
            flip = true;
        } else if (any_pos && any_neg) {
            for (const Int& x : gen)
                if (x != 0) {
                    flip = x < 0;
                    break;
                }
        }
        if (flip)
            for (Int& x : gen) x = -x;
        rep.null_generator = std::move(gen);
    }
    return rep;
}

std::optional<RatVec> solve_q(const IntMat& q, const RatVec& b) {
    std::size_t n = q.size();
    if (b.size() != n) fail(ErrorKind::DimensionMismatch, "rhs length mismatch");
    // Augmented rational Gaussian elimination with row pivoting.
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        if (q[i].size() != n) fail(ErrorKind::DimensionMismatch, "matrix not square");
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(q[i][j]);
        a[i][n] = b[i];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t p = row;
        while (p < n && a[p][col] == 0) ++p;
        if (p == n) continue;
        std::swap(a[p], a[row]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || a[i][col] == 0) continue;
            Rat f = a[i][col] / a[row][col];
            for (std::size_t j = col; j <= n; ++j) a[i][j] -= f * a[row][j];
        }
        pivot_col.push_back(col);
        ++row;
    }
    // Inconsistency: a zero row with nonzero rhs.
    for (std::size_t i = row; i < n; ++i)
        if (a[i][n] != 0)
            fail(ErrorKind::SingularInconsistent, "linear system has no solution");
    if (pivot_col.size() < n) return std::nullopt;  // consistent, not unique
    RatVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[pivot_col[i]] = a[i][n] / a[i][pivot_col[i]];
    return x;
}

Int det(const IntMat& a0) {
    std::size_t n = a0.size();
    if (n == 0) return 1;
    IntMat a = a0;
    // Bareiss fraction-free elimination; every division below is exact.
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

std::vector<IntVec> kernel_basis(const IntMat& m0) {
    std::size_t rows = m0.size();
    std::size_t cols = rows == 0 ? 0 : m0[0].size();
    IntMat a = m0;
    // Column reduction by unimodular operations; u tracks them so that the
    // reduced matrix equals m * u at all times.
    IntMat u(cols, IntVec(cols, 0));
    for (std::size_t i = 0; i < cols; ++i) u[i][i] = 1;

    auto col_combine = [&](std::size_t c1, std::size_t c2, const Int& x, const Int& y,
                           const Int& nb, const Int& na) {
        // (col c1, col c2) <- (x*c1 + y*c2, nb*c1 + na*c2), unimodular when
        // x*na - y*nb == ±1.
        for (std::size_t r = 0; r < rows; ++r) {
            Int v1 = a[r][c1], v2 = a[r][c2];
            a[r][c1] = x * v1 + y * v2;
            a[r][c2] = nb * v1 + na * v2;
        }
        for (std::size_t r = 0; r < cols; ++r) {
            Int v1 = u[r][c1], v2 = u[r][c2];
            u[r][c1] = x * v1 + y * v2;
            u[r][c2] = nb * v1 + na * v2;
        }
    };

    std::size_t lead = 0;
    for (std::size_t r = 0; r < rows && lead < cols; ++r) {
        std::size_t p = lead;
        while (p < cols && a[r][p] == 0) ++p;
        if (p == cols) continue;
        if (p != lead) {
            for (std::size_t rr = 0; rr < rows; ++rr) std::swap(a[rr][lead], a[rr][p]);
            for (std::size_t rr = 0; rr < cols; ++rr) std::swap(u[rr][lead], u[rr][p]);
        }
        for (std::size_t j = lead + 1; j < cols; ++j) {
            if (a[r][j] == 0) continue;
            Int x, y;
            Int g = exgcd(a[r][lead], a[r][j], x, y);
            Int ca = a[r][lead] / g, cb = a[r][j] / g;
            // [x y; -cb ca] has determinant x*ca + y*cb = 1.
            col_combine(lead, j, x, y, -cb, ca);
        }
        ++lead;
    }
    std::vector<IntVec> basis;
    for (std::size_t j = lead; j < cols; ++j) {
        IntVec v(cols);
        for (std::size_t r = 0; r < cols; ++r) v[r] = u[r][j];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Int> smith_invariant_factors(IntMat a) {
    std::size_t rows = a.size();
    std::size_t cols = rows == 0 ? 0 : a[0].size();
    std::vector<Int> factors;
    std::size_t t = 0;  // top-left corner of the active block
    while (t < rows && t < cols) {
        // find a nonzero entry in the active block
        std::size_t pr = rows, pc = cols;
        for (std::size_t i = t; i < rows && pr == rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a[i][j] != 0) {
                    pr = i;
                    pc = j;
                    break;
                }
        if (pr == rows) break;  // all-zero block
        std::swap(a[t], a[pr]);
        for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pc]);
        // clear row and column t by euclidean steps until both are clean
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                Int qv = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j) a[i][j] -= qv * a[t][j];
                if (a[i][t] != 0) {
                    std::swap(a[t], a[i]);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                Int qv = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i) a[i][j] -= qv * a[i][t];
                if (a[t][j] != 0) {
                    for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][j]);
                    dirty = true;
                }
            }
        }
        // enforce divisibility of the remaining block by the pivot
        bool fixed = true;
        for (std::size_t i = t + 1; i < rows && fixed; ++i)
            for (std::size_t j = t + 1; j < cols && fixed; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    for (std::size_t jj = t; jj < cols; ++jj) a[t][jj] += a[i][jj];
                    fixed = false;
                }
        if (!fixed) continue;  // redo the cleaning with the enlarged row
        Int d = a[t][t];
        factors.push_back(d < 0 ? Int(-d) : d);
        ++t;
    }
    while (t < std::min(rows, cols)) {
        factors.push_back(0);
        ++t;
    }
    return factors;
}

IntVec mat_apply(const IntMat& m, const IntVec& x) {
    std::size_t n = m.size();
    IntVec out(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != x.size()) fail(ErrorKind::DimensionMismatch, "matrix/vector mismatch");
        for (std::size_t j = 0; j < x.size(); ++j) out[i] += m[i][j] * x[j];
    }
    return out;
}

Int dot(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) fail(ErrorKind::DimensionMismatch, "vector length mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int pair_q(const IntMat& q, const IntVec& x, const IntVec& y) { return dot(x, mat_apply(q, y)); }

namespace {

// The leaf peel below is written once, generic over the fraction type.  The
// everyday path runs on a two-word fraction that bails out (by throwing) the
// moment any value threatens its safe range; classify_tree_form retries the
// rare escapee on exact rationals.
struct FracOverflow {};

struct Frac64 {
    long long p = 0;  // numerator
    long long q = 1;  // denominator, always > 0, gcd(p, q) == 1

    static constexpr long long kCap = 1ll << 31;

    static Frac64 reduced(__int128 p, __int128 q) {
        if (q < 0) {
            p = -p;
            q = -q;
        }
        long long pl = static_cast<long long>(p), ql = static_cast<long long>(q);
        long long d = std::gcd(pl < 0 ? -pl : pl, ql);
        if (d > 1) {
            pl /= d;
            ql /= d;
        }
        if (pl > kCap || pl < -kCap || ql > kCap) throw FracOverflow{};
        return Frac64{pl, ql};
    }

    static Frac64 from_int(const Int& v) {
        if (v > kCap || v < -kCap) throw FracOverflow{};
        return Frac64{v.convert_to<long long>(), 1};
    }

    int sign() const { return p < 0 ? -1 : p > 0 ? 1 : 0; }
    // this -= 1 / a; products stay below 2^62 thanks to the cap.
    void sub_recip(const Frac64& a) {
        *this = reduced(static_cast<__int128>(p) * a.p - static_cast<__int128>(q) * a.q,
                        static_cast<__int128>(q) * a.p);
    }
    void mul(const Frac64& a) {
        *this = reduced(static_cast<__int128>(p) * a.p, static_cast<__int128>(q) * a.q);
    }
    bool is_integer() const { return q == 1; }
    Int numerator_int() const { return Int(p); }
};

struct RatFrac {
    Rat value = Rat(0);

    static RatFrac from_int(const Int& v) { return RatFrac{Rat(v)}; }
    int sign() const { return value < 0 ? -1 : value > 0 ? 1 : 0; }
    void sub_recip(const RatFrac& a) { value -= Rat(1) / a.value; }
    void mul(const RatFrac& a) { value *= a.value; }
    bool is_integer() const { return boost::multiprecision::denominator(value) == 1; }
    Int numerator_int() const { return Int(boost::multiprecision::numerator(value)); }
};

template <typename F>
TreeFormReport peel_tree(const PlumbingGraph& g) {
    std::size_t n = g.size();
    std::vector<F> weight(n);
    std::vector<std::size_t> deg(n);
    for (std::size_t i = 0; i < n; ++i) {
        weight[i] = F::from_int(g.vertex(i).framing);
        deg[i] = g.degree(i);
    }
    std::vector<char> gone(n, 0);
    std::vector<std::size_t> leaves;
    for (std::size_t i = 0; i < n; ++i)
        if (deg[i] <= 1) leaves.push_back(i);

    TreeFormReport rep;
    F det = F::from_int(Int(1));
    std::size_t remaining = n;
    while (remaining > 1) {
        std::size_t l = leaves.back();
        leaves.pop_back();
        if (gone[l] || deg[l] != 1) continue;  // stale queue entry
        const F& a = weight[l];
        if (a.sign() >= 0) {
            // A nonnegative pivot that still meets an edge certifies either a
            // positive direction (a > 0) or an indefinite 2x2 block (a == 0).
            rep.cls = DefClass::Other;
            return rep;
        }
        std::size_t v = 0;
        for (std::size_t w : g.neighbors(l))
            if (!gone[w]) v = w;
        weight[v].sub_recip(a);
        det.mul(a);
        gone[l] = 1;
        --remaining;
        if (--deg[v] <= 1) leaves.push_back(v);
    }
    std::size_t last = 0;
    while (gone[last]) ++last;
    const F& a = weight[last];
    det.mul(a);
    if (!det.is_integer())
        fail(ErrorKind::Internal, "tree peel produced a fractional determinant");
    rep.det = det.numerator_int();
    if (a.sign() < 0)
        rep.cls = DefClass::NegativeDefinite;
    else if (a.sign() == 0)
        rep.cls = DefClass::NegativeSemidefinite;
    else
        rep.cls = DefClass::Other;
    return rep;
}

}  // namespace

TreeFormReport classify_tree_form(const PlumbingGraph& g) {
    if (!g.is_tree()) fail(ErrorKind::Disconnected, "tree form requires a nonempty connected tree");
    try {
        return peel_tree<Frac64>(g);
    } catch (const FracOverflow&) {
        return peel_tree<RatFrac>(g);
    }
}

}  // namespace plumb

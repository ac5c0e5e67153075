#pragma once

#include <vector>

#include "nilwreath/matrix.hpp"

namespace nilwreath {

// Dense integer matrix, row-major; only what the lattice kernels need.
class ZMat {
public:
    ZMat() = default;
    ZMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

    static ZMat identity(size_t n) {
        ZMat m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Int& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const Int& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const ZMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    void swap_columns(size_t j, size_t k) {
        if (j == k) return;
        for (size_t i = 0; i < rows_; ++i) std::swap(at(i, j), at(i, k));
    }

    // column j += f * column k
    void add_column(size_t j, size_t k, const Int& f) {
        if (f == 0) return;
        for (size_t i = 0; i < rows_; ++i) at(i, j) += f * at(i, k);
    }

    void negate_column(size_t j) {
        for (size_t i = 0; i < rows_; ++i) at(i, j) = -at(i, j);
    }

    QMat to_rational() const {
        QMat m(rows_, cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) m.at(i, j) = Rat(at(i, j));
        return m;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

struct HnfResult {
    ZMat h;               // same shape as the input, pivot columns on the right
    std::vector<long> pivot_row;  // for column j: its pivot row, or -1
    size_t rank = 0;
    ZMat transform;       // unimodular U with  input * U == h  (when requested)
};

// Canonical column Hermite form: pivot columns end up rightmost and upper
// triangular (pivot of the j-th kept column sits in row j when the input has
// full row rank), pivots positive, entries to the right of a pivot reduced
// into [0, pivot).  Column operations only, so the column span is unchanged.
inline HnfResult hnf_columns(ZMat m, bool want_transform = false) {
    HnfResult res;
    size_t rows = m.rows(), cols = m.cols();
    ZMat u;
    if (want_transform) u = ZMat::identity(cols);
    std::vector<long> pivot_of_column(cols, -1);
    size_t active = cols;  // columns [0, active) still unassigned
    for (size_t ri = rows; ri-- > 0;) {
        if (active == 0) break;
        // Euclidean sweep: concentrate the gcd of row ri into one column.
        while (true) {
            size_t best = active;
            for (size_t j = 0; j < active; ++j) {
                if (m.at(ri, j) == 0) continue;
                if (best == active || mpz_cmpabs(m.at(ri, j).get_mpz_t(), m.at(ri, best).get_mpz_t()) < 0)
                    best = j;
            }
            if (best == active) break;  // row is zero on the active block
            bool reduced_all = true;
            for (size_t j = 0; j < active; ++j) {
                if (j == best || m.at(ri, j) == 0) continue;
                Int q = int_fdiv(m.at(ri, j), m.at(ri, best));
                m.add_column(j, best, -q);
                if (want_transform) u.add_column(j, best, -q);
                if (m.at(ri, j) != 0) reduced_all = false;
            }
            if (reduced_all) {
                // move pivot column to the right edge of the active block
                m.swap_columns(best, active - 1);
                if (want_transform) u.swap_columns(best, active - 1);
                --active;
                if (m.at(ri, active) < 0) {
                    m.negate_column(active);
                    if (want_transform) u.negate_column(active);
                }
                pivot_of_column[active] = static_cast<long>(ri);
                break;
            }
        }
    }
    res.rank = cols - active;
    // Reduce entries right of each pivot into [0, pivot).  For a fixed
    // column k, reductions run bottom pivot row up so earlier reductions
    // are not disturbed (column j only touches rows <= its pivot row).
    for (size_t k = active + 1; k < cols; ++k) {
        for (size_t j = k; j-- > active;) {
            size_t pr = static_cast<size_t>(pivot_of_column[j]);
            Int q = int_fdiv(m.at(pr, k), m.at(pr, j));
            m.add_column(k, j, -q);
            if (want_transform) u.add_column(k, j, -q);
        }
    }
    res.h = std::move(m);
    res.pivot_row = std::move(pivot_of_column);
    if (want_transform) res.transform = std::move(u);
    return res;
}

// Integer kernel of a rational matrix: columns generate {x in Z^cols : m x = 0},
// which is saturated by construction.
inline ZMat integer_kernel(const QMat& m) {
    size_t rows = m.rows(), cols = m.cols();
    ZMat zm(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        Int den(1);
        for (size_t j = 0; j < cols; ++j) den = int_lcm(den, m.at(i, j).get_den());
        for (size_t j = 0; j < cols; ++j) {
            Rat v = m.at(i, j) * Rat(den);
            zm.at(i, j) = v.get_num();
        }
    }
    HnfResult r = hnf_columns(std::move(zm), true);
    size_t k = cols - r.rank;
    ZMat ker(cols, k);
    for (size_t j = 0; j < k; ++j)
        for (size_t i = 0; i < cols; ++i) ker.at(i, j) = r.transform.at(i, j);
    return ker;
}

// Full-rank lattice in Q^n: columns of basis scaled by 1/den.  basis is the
// canonical column Hermite form (upper triangular, positive diagonal, entries
// right of the diagonal reduced), den > 0 and coprime to the basis content,
// so equal lattices compare equal componentwise.
struct IntLattice {
    size_t n = 0;
    ZMat basis;
    Int den = 1;

    bool operator==(const IntLattice& o) const {
        return n == o.n && den == o.den && basis == o.basis;
    }
};

inline IntLattice standard_lattice(size_t n) {
    IntLattice l;
    l.n = n;
    l.basis = ZMat::identity(n);
    l.den = 1;
    return l;
}

inline Rat lattice_det(const IntLattice& l) {
    Rat d(1);
    for (size_t i = 0; i < l.n; ++i) d *= Rat(l.basis.at(i, i));
    return d / rat_pow(Rat(l.den), static_cast<long>(l.n));
}

namespace detail {
inline IntLattice lattice_normalize(ZMat h, Int den, size_t n) {
    Int content(0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) content = int_gcd(content, h.at(i, j));
    Int g = int_gcd(content, den);
    if (g > 1) {
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) h.at(i, j) = int_divexact(h.at(i, j), g);
        den = int_divexact(den, g);
    }
    IntLattice l;
    l.n = n;
    l.basis = std::move(h);
    l.den = den;
    return l;
}
}  // namespace detail

// Lattice (1/extra_den) * span of the given columns; requires full rank n.
inline IntLattice lattice_from_columns(const QMat& gens, const Int& extra_den = Int(1)) {
    size_t n = gens.rows();
    if (n == 0) throw DomainError("empty lattice");
    if (gens.cols() < n) throw DomainError("rank-deficient generating set: too few columns");
    if (extra_den <= 0) throw DomainError("lattice denominator must be positive");
    Int scale(1);  // gens * scale is integral
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < gens.cols(); ++j) scale = int_lcm(scale, gens.at(i, j).get_den());
    Int den = extra_den * scale;
    ZMat zm(n, gens.cols());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < gens.cols(); ++j) {
            Rat w = gens.at(i, j) * Rat(scale);
            if (w.get_den() != 1) throw InternalError("lattice denominator clearing failed");
            zm.at(i, j) = w.get_num();
        }
    HnfResult r = hnf_columns(std::move(zm));
    if (r.rank != n) throw DomainError("rank-deficient generating set: full lattice required");
    ZMat h(n, n);
    size_t offset = gens.cols() - n;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) h.at(i, j) = r.h.at(i, offset + j);
    return detail::lattice_normalize(std::move(h), den, n);
}

inline IntLattice lattice_from_columns(size_t n, const std::vector<QVec>& gens,
                                       const Int& extra_den = Int(1)) {
    QMat m(n, gens.size());
    for (size_t j = 0; j < gens.size(); ++j) {
        if (gens[j].size() != n) throw DomainError("generator dimension mismatch");
        for (size_t i = 0; i < n; ++i) m.at(i, j) = gens[j][i];
    }
    return lattice_from_columns(m, extra_den);
}

inline QMat lattice_rational_basis(const IntLattice& l) {
    QMat m = l.basis.to_rational();
    return m.scaled(Rat(Int(1), l.den));
}

// Solves basis * t = den * x by back substitution; true iff x is in the lattice.
inline bool lattice_member(const IntLattice& l, const QVec& x) {
    if (x.size() != l.n) throw DomainError("vector dimension mismatch");
    QVec t(l.n, Rat(0));
    for (size_t i = l.n; i-- > 0;) {
        Rat rhs = x[i] * Rat(l.den);
        for (size_t j = i + 1; j < l.n; ++j) rhs -= Rat(l.basis.at(i, j)) * t[j];
        t[i] = rhs / Rat(l.basis.at(i, i));
        if (t[i].get_den() != 1) return false;
    }
    return true;
}

// Dual lattice {y : <x,y> in Z for all x in L}.
inline IntLattice lattice_dual(const IntLattice& l) {
    QMat b = lattice_rational_basis(l);
    QMat binv = inverse(b);
    return lattice_from_columns(binv.transposed());
}

inline IntLattice lattice_sum(const IntLattice& a, const IntLattice& b) {
    if (a.n != b.n) throw DomainError("lattice dimension mismatch");
    QMat cols(a.n, 2 * a.n);
    QMat ra = lattice_rational_basis(a), rb = lattice_rational_basis(b);
    for (size_t i = 0; i < a.n; ++i)
        for (size_t j = 0; j < a.n; ++j) {
            cols.at(i, j) = ra.at(i, j);
            cols.at(i, a.n + j) = rb.at(i, j);
        }
    return lattice_from_columns(cols);
}

// Intersection through duality: (A cap B)* = A* + B*.
inline IntLattice lattice_intersect(const IntLattice& a, const IntLattice& b) {
    return lattice_dual(lattice_sum(lattice_dual(a), lattice_dual(b)));
}

inline bool lattice_subset(const IntLattice& sub, const IntLattice& sup) {
    QMat b = lattice_rational_basis(sub);
    for (size_t j = 0; j < sub.n; ++j) {
        if (!lattice_member(sup, b.column(j))) return false;
    }
    return true;
}

// [sup : sub] for sub a finite-index sublattice of sup.
inline Int lattice_index(const IntLattice& sub, const IntLattice& sup) {
    if (sub.n != sup.n) throw DomainError("lattice dimension mismatch");
    if (!lattice_subset(sub, sup)) throw DomainError("index of non-nested lattices");
    Rat idx = lattice_det(sub) / lattice_det(sup);
    if (idx.get_den() != 1) throw InternalError("non-integral lattice index");
    return abs(idx.get_num());
}

inline IntLattice lattice_scale(const IntLattice& l, const Rat& c) {
    if (c == 0) throw DomainError("scaling lattice by zero");
    return lattice_from_columns(lattice_rational_basis(l).scaled(c));
}

// Image h(L); h must be invertible to keep full rank.
inline IntLattice lattice_apply(const QMat& h, const IntLattice& l) {
    return lattice_from_columns(h * lattice_rational_basis(l));
}

// L intersected with the column span of a rational matrix: a basis (columns,
// possibly fewer than n) of the sublattice of points inside the subspace.
inline QMat lattice_meet_subspace(const IntLattice& l, const QMat& span) {
    // rows annihilating the span
    QMat st = span.transposed();
    std::vector<QVec> ann = kernel_basis(std::move(st));
    QMat b = lattice_rational_basis(l);
    if (ann.empty()) return b;  // span is everything
    QMat rowsm(ann.size(), l.n);
    for (size_t i = 0; i < ann.size(); ++i)
        for (size_t j = 0; j < l.n; ++j) rowsm.at(i, j) = ann[i][j];
    ZMat ker = integer_kernel(rowsm * b);
    QMat out(l.n, ker.cols());
    for (size_t j = 0; j < ker.cols(); ++j) {
        QVec t(l.n, Rat(0));
        for (size_t i = 0; i < l.n; ++i) t[i] = Rat(ker.at(i, j));
        QVec v = b * t;
        for (size_t i = 0; i < l.n; ++i) out.at(i, j) = v[i];
    }
    return out;
}

}  // namespace nilwreath

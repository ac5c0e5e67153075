#pragma once

#include <string>
#include <vector>

#include "nilwreath/poly.hpp"

namespace nilwreath {

using QVec = std::vector<Rat>;

inline QVec qvec_zero(size_t n) { return QVec(n, Rat(0)); }

inline bool qvec_is_zero(const QVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline QVec qvec_add(const QVec& a, const QVec& b) {
    QVec r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline QVec qvec_sub(const QVec& a, const QVec& b) {
    QVec r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

inline QVec qvec_scale(const QVec& a, const Rat& s) {
    QVec r(a);
    for (auto& x : r) x *= s;
    return r;
}

inline QVec qvec_neg(const QVec& a) { return qvec_scale(a, Rat(-1)); }

// Dense rational matrix, row-major.
class QMat {
public:
    QMat() = default;
    QMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

    static QMat identity(size_t n) {
        QMat m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static QMat from_columns(const std::vector<QVec>& cols) {
        if (cols.empty()) return QMat();
        QMat m(cols[0].size(), cols.size());
        for (size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != m.rows_) throw DomainError("ragged column list");
            for (size_t i = 0; i < m.rows_; ++i) m.at(i, j) = cols[j][i];
        }
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rat& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    QVec column(size_t j) const {
        QVec v(rows_);
        for (size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
        return v;
    }

    std::vector<QVec> columns() const {
        std::vector<QVec> out(cols_);
        for (size_t j = 0; j < cols_; ++j) out[j] = column(j);
        return out;
    }

    bool operator==(const QMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    QMat operator*(const QMat& o) const {
        if (cols_ != o.rows_) throw DomainError("matrix product shape mismatch");
        QMat r(rows_, o.cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                const Rat& x = at(i, k);
                if (x == 0) continue;
                for (size_t j = 0; j < o.cols_; ++j) r.at(i, j) += x * o.at(k, j);
            }
        return r;
    }

    QVec operator*(const QVec& v) const {
        if (cols_ != v.size()) throw DomainError("matrix-vector shape mismatch");
        QVec r(rows_, Rat(0));
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                if (at(i, j) != 0) r[i] += at(i, j) * v[j];
        return r;
    }

    QMat operator+(const QMat& o) const {
        QMat r(*this);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
        return r;
    }

    QMat operator-(const QMat& o) const {
        QMat r(*this);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
        return r;
    }

    QMat scaled(const Rat& s) const {
        QMat r(*this);
        for (auto& x : r.a_) x *= s;
        return r;
    }

    QMat transposed() const {
        QMat r(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

    Rat trace() const {
        Rat t(0);
        for (size_t i = 0; i < rows_; ++i) t += at(i, i);
        return t;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

// Reduced row echelon form in place; returns pivot column indices.
inline std::vector<size_t> rref(QMat& m) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        size_t sel = row;
        while (sel < m.rows() && m.at(sel, col) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
        Rat inv = Rat(1) / m.at(row, col);
        for (size_t j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            Rat f = m.at(i, col);
            for (size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline size_t rank(QMat m) { return rref(m).size(); }

// Columns spanning the kernel, one per free column, deterministic order.
inline std::vector<QVec> kernel_basis(QMat m) {
    size_t n = m.cols();
    std::vector<size_t> pivots = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (size_t p : pivots) is_pivot[p] = true;
    std::vector<QVec> basis;
    for (size_t j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        QVec v(n, Rat(0));
        v[j] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Rat det(QMat m) {
    if (!m.is_square()) throw DomainError("determinant of non-square matrix");
    size_t n = m.rows();
    Rat d(1);
    for (size_t col = 0; col < n; ++col) {
        size_t sel = col;
        while (sel < n && m.at(sel, col) == 0) ++sel;
        if (sel == n) return Rat(0);
        if (sel != col) {
            for (size_t j = 0; j < n; ++j) std::swap(m.at(sel, j), m.at(col, j));
            d = -d;
        }
        d *= m.at(col, col);
        Rat inv = Rat(1) / m.at(col, col);
        for (size_t i = col + 1; i < n; ++i) {
            if (m.at(i, col) == 0) continue;
            Rat f = m.at(i, col) * inv;
            for (size_t j = col; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return d;
}

inline bool try_inverse(const QMat& m, QMat& inv) {
    if (!m.is_square()) throw DomainError("inverse of non-square matrix");
    size_t n = m.rows();
    QMat work(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) work.at(i, j) = m.at(i, j);
        work.at(i, n + i) = 1;
    }
    std::vector<size_t> pivots = rref(work);
    if (pivots.size() != n || pivots.back() != n - 1) return false;
    inv = QMat(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv.at(i, j) = work.at(i, n + j);
    return true;
}

inline QMat inverse(const QMat& m) {
    QMat inv;
    if (!try_inverse(m, inv)) throw DomainError("singular matrix");
    return inv;
}

// Solves A x = b; false when inconsistent.  A need not be square; the
// returned solution has free coordinates set to zero.
inline bool try_solve(const QMat& a, const QVec& b, QVec& x) {
    if (a.rows() != b.size()) throw DomainError("solve shape mismatch");
    QMat work(a.rows(), a.cols() + 1);
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) work.at(i, j) = a.at(i, j);
        work.at(i, a.cols()) = b[i];
    }
    std::vector<size_t> pivots = rref(work);
    if (!pivots.empty() && pivots.back() == a.cols()) return false;
    x = qvec_zero(a.cols());
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = work.at(r, a.cols());
    return true;
}

// Membership of v in the column span of m.
inline bool in_column_span(const QMat& m, const QVec& v) {
    QVec x;
    return try_solve(m, v, x);
}

// Characteristic polynomial det(tI - m), monic, by Faddeev-LeVerrier.
inline RatPoly charpoly(const QMat& m) {
    if (!m.is_square()) throw DomainError("characteristic polynomial of non-square matrix");
    size_t n = m.rows();
    std::vector<Rat> c(n + 1, Rat(0));
    c[n] = 1;
    QMat mk = QMat::identity(n);
    for (size_t k = 1; k <= n; ++k) {
        mk = m * mk;
        Rat ck = -mk.trace() / Rat(Int(k));
        c[n - k] = ck;
        for (size_t i = 0; i < n; ++i) mk.at(i, i) += ck;
    }
    return RatPoly(std::move(c));
}

// p(m) by Horner.
inline QMat poly_apply(const RatPoly& p, const QMat& m) {
    size_t n = m.rows();
    QMat r(n, n);
    if (p.is_zero()) return r;
    for (size_t i = p.c.size(); i-- > 0;) {
        r = m * r;
        for (size_t d = 0; d < n; ++d) r.at(d, d) += p.c[i];
    }
    return r;
}

inline QMat poly_apply(const IntPoly& p, const QMat& m) { return poly_apply(RatPoly(p), m); }

// Canonical basis of the span of the given vectors: nonzero rows of the
// reduced row echelon form.  Two spans are equal iff their bases are equal.
inline std::vector<QVec> row_echelon_basis(const std::vector<QVec>& vecs) {
    if (vecs.empty()) return {};
    QMat m(vecs.size(), vecs[0].size());
    for (size_t i = 0; i < vecs.size(); ++i) {
        if (vecs[i].size() != m.cols()) throw DomainError("ragged vector list");
        for (size_t j = 0; j < m.cols(); ++j) m.at(i, j) = vecs[i][j];
    }
    std::vector<size_t> pivots = rref(m);
    std::vector<QVec> out;
    for (size_t i = 0; i < pivots.size(); ++i) {
        QVec row(m.cols());
        for (size_t j = 0; j < m.cols(); ++j) row[j] = m.at(i, j);
        out.push_back(std::move(row));
    }
    return out;
}

// Membership in the span of a row_echelon_basis result.
inline bool in_echelon_span(const std::vector<QVec>& echelon, QVec v) {
    for (const QVec& r : echelon) {
        size_t p = 0;
        while (p < r.size() && r[p] == 0) ++p;
        if (p == r.size()) continue;
        if (v[p] != 0) v = qvec_sub(v, qvec_scale(r, v[p]));
    }
    return qvec_is_zero(v);
}

inline std::string matrix_to_string(const QMat& m) {
    std::string s = "[";
    for (size_t i = 0; i < m.rows(); ++i) {
        s += i ? "; " : "";
        for (size_t j = 0; j < m.cols(); ++j) s += (j ? " " : "") + format_rat(m.at(i, j));
    }
    return s + "]";
}

}  // namespace nilwreath

#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "nilwreath/matrix.hpp"

namespace nilwreath {

// Finite-dimensional nilpotent Lie algebra over Q, given by structure
// constants on a fixed basis e_1..e_n.  Instances are built through
// make_algebra, which checks antisymmetry input conventions, the Jacobi
// identity, and nilpotency, and precomputes the lower central series.

struct AlgebraInfo {
    long nil_class{0};                  // abelian algebras have class 1
    std::vector<size_t> lcs_dims;       // dim C^1, ..., dim C^class
    std::vector<std::vector<QVec>> lcs; // echelon bases; lcs[0] = whole algebra
    std::vector<QVec> center;           // echelon basis of the center
    bool filiform{false};
};

struct NilLieAlg {
    size_t dim{0};
    // c[i][j] = coordinates of [e_i, e_j]; full antisymmetric table.
    std::vector<std::vector<QVec>> c;
    AlgebraInfo info;

    QVec bracket(const QVec& x, const QVec& y) const {
        QVec out = qvec_zero(dim);
        for (size_t i = 0; i < dim; ++i) {
            if (x[i] == 0) continue;
            for (size_t j = 0; j < dim; ++j) {
                if (y[j] == 0) continue;
                const QVec& cij = c[i][j];
                if (qvec_is_zero(cij)) continue;
                Rat s = x[i] * y[j];
                for (size_t k = 0; k < dim; ++k)
                    if (cij[k] != 0) out[k] += s * cij[k];
            }
        }
        return out;
    }

    QVec basis_vector(size_t i) const {
        QVec v = qvec_zero(dim);
        v[i] = 1;
        return v;
    }
};

// One structure constant entry: [e_i, e_j] = v with i < j (0-based).
using BracketEntry = std::tuple<size_t, size_t, QVec>;

namespace detail {

inline AlgebraInfo analyze(const NilLieAlg& alg) {
    size_t n = alg.dim;
    AlgebraInfo info;
    // Jacobi on basis triples.
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            for (size_t k = j + 1; k < n; ++k) {
                QVec s = alg.bracket(alg.basis_vector(i), alg.c[j][k]);
                s = qvec_add(s, alg.bracket(alg.basis_vector(j), alg.c[k][i]));
                s = qvec_add(s, alg.bracket(alg.basis_vector(k), alg.c[i][j]));
                if (!qvec_is_zero(s))
                    throw DomainError("Jacobi identity fails on basis triple (" +
                                      std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                                      std::to_string(k + 1) + ")");
            }
        }
    }
    // Lower central series C^1 = g, C^{m+1} = [g, C^m].
    std::vector<QVec> current;
    for (size_t i = 0; i < n; ++i) current.push_back(alg.basis_vector(i));
    current = row_echelon_basis(current);
    while (!current.empty()) {
        info.lcs.push_back(current);
        info.lcs_dims.push_back(current.size());
        std::vector<QVec> next_gen;
        for (size_t i = 0; i < n; ++i)
            for (const QVec& v : current) next_gen.push_back(alg.bracket(alg.basis_vector(i), v));
        std::vector<QVec> next = row_echelon_basis(next_gen);
        if (next.size() == current.size() && !next.empty())
            throw DomainError("algebra is not nilpotent: lower central series stabilizes at dimension " +
                              std::to_string(next.size()));
        current = std::move(next);
    }
    info.nil_class = static_cast<long>(info.lcs.size());
    // Center: x with [x, e_j] = 0 for all j; rows indexed by (j, k).
    QMat sys(n * n, n);
    for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k)
            for (size_t i = 0; i < n; ++i) sys.at(j * n + k, i) = alg.c[i][j][k];
    info.center = row_echelon_basis(kernel_basis(sys));
    if (info.center.empty()) throw DomainError("nilpotent algebra with trivial center");
    info.filiform = (n >= 3 && info.nil_class == static_cast<long>(n) - 1);
    return info;
}

}  // namespace detail

inline NilLieAlg make_algebra(size_t dim, const std::vector<BracketEntry>& entries) {
    if (dim == 0) throw DomainError("algebra dimension must be positive");
    NilLieAlg alg;
    alg.dim = dim;
    alg.c.assign(dim, std::vector<QVec>(dim, qvec_zero(dim)));
    std::vector<std::vector<bool>> seen(dim, std::vector<bool>(dim, false));
    for (const auto& [i, j, v] : entries) {
        if (i >= dim || j >= dim) throw DomainError("bracket index out of range");
        if (i == j) throw DomainError("bracket [e_i, e_i] must be zero");
        if (v.size() != dim) throw DomainError("bracket value dimension mismatch");
        if (seen[i][j] || seen[j][i])
            throw DomainError("duplicate bracket entry (" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + ")");
        seen[i][j] = seen[j][i] = true;
        alg.c[i][j] = v;
        alg.c[j][i] = qvec_neg(v);
    }
    alg.info = detail::analyze(alg);
    return alg;
}

// -- stock constructions ----------------------------------------------------

inline NilLieAlg abelian_algebra(size_t n) { return make_algebra(n, {}); }

// Heisenberg: [e1, e2] = e3.
inline NilLieAlg heisenberg_algebra() {
    QVec z = qvec_zero(3);
    z[2] = 1;
    return make_algebra(3, {{0, 1, z}});
}

// Five-dimensional Heisenberg: [e1, e2] = e5, [e3, e4] = e5.
inline NilLieAlg heisenberg5_algebra() {
    QVec z = qvec_zero(5);
    z[4] = 1;
    return make_algebra(5, {{0, 1, z}, {2, 3, z}});
}

// Filiform L_n: [e1, e_i] = e_{i+1} for 2 <= i <= n-1; class n-1.
inline NilLieAlg filiform_algebra(size_t n) {
    if (n < 3 || n > 8) throw DomainError("filiform model supported for 3 <= n <= 8");
    std::vector<BracketEntry> entries;
    for (size_t i = 1; i + 1 < n; ++i) {
        QVec v = qvec_zero(n);
        v[i + 1] = 1;
        entries.push_back({0, i, v});
    }
    return make_algebra(n, entries);
}

// Free nilpotent of class 2 on three generators; dim 6.
inline NilLieAlg free_nilpotent_2_3() {
    auto unit = [](size_t k) {
        QVec v = qvec_zero(6);
        v[k] = 1;
        return v;
    };
    return make_algebra(6, {{0, 1, unit(3)}, {0, 2, unit(4)}, {1, 2, unit(5)}});
}

// Free nilpotent of class 3 on two generators; dim 5.
// Basis: x, y, [x,y], [x,[x,y]], [y,[x,y]].
inline NilLieAlg free_nilpotent_3_2() {
    auto unit = [](size_t k) {
        QVec v = qvec_zero(5);
        v[k] = 1;
        return v;
    };
    return make_algebra(5, {{0, 1, unit(2)}, {0, 2, unit(3)}, {1, 2, unit(4)}});
}

// Free nilpotent of class 4 on two generators; dim 8.
// Basis: x, y, [x,y], [x,[x,y]], [y,[x,y]], [x,[x,[x,y]]], [y,[x,[x,y]]],
// [y,[y,[x,y]]]; note [x,[y,[x,y]]] = [y,[x,[x,y]]] by Jacobi.
inline NilLieAlg free_nilpotent_4_2() {
    auto unit = [](size_t k) {
        QVec v = qvec_zero(8);
        v[k] = 1;
        return v;
    };
    return make_algebra(8, {{0, 1, unit(2)},
                            {0, 2, unit(3)},
                            {1, 2, unit(4)},
                            {0, 3, unit(5)},
                            {1, 3, unit(6)},
                            {0, 4, unit(6)},
                            {1, 4, unit(7)}});
}

}  // namespace nilwreath

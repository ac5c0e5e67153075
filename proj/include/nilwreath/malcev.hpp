#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilwreath/bch.hpp"

namespace nilwreath {

// A finitely generated torsion-free nilpotent group presented as a
// multiplicative lattice: the group of products prod exp(u_i)^{t_i}, t_i
// integral, inside the simply connected group of a rational nilpotent
// algebra.  The basis columns u_i must be adapted to the lower central
// series (the trailing dim C^j columns span C^j); closure under products is
// certified by checking words in the generators up to `depth` letters.  For
// class <= 2 algebras a depth-2 check is a complete certificate.

struct MultLattice {
    NilLieAlg alg;
    QMat u;       // columns: log coordinates of the polycyclic generators
    QMat u_inv;
    size_t verified_depth{0};
};

// Second-kind coordinates: exp(y) = prod_i exp(u_i)^{t_i}, by peeling top
// down.  Adaptation keeps bracket corrections in strictly later columns, so
// coordinate i is settled at step i.
inline QVec malcev_coordinates(const MultLattice& lat, const QVec& y) {
    size_t n = lat.alg.dim;
    if (y.size() != n) throw DomainError("vector dimension mismatch");
    QVec rest = y;
    QVec t(n, Rat(0));
    for (size_t i = 0; i < n; ++i) {
        QVec c = lat.u_inv * rest;
        for (size_t j = 0; j < i; ++j)
            if (c[j] != 0) throw InternalError("peeling disturbed an earlier coordinate");
        t[i] = c[i];
        if (t[i] == 0) continue;
        rest = bch_product(lat.alg, qvec_scale(lat.u.column(i), -t[i]), rest);
    }
    if (!qvec_is_zero(lat.u_inv * rest)) throw InternalError("peeling left a remainder");
    return t;
}

// Membership of exp(y) in the lattice group: integral Malcev coordinates.
inline bool lattice_group_member(const MultLattice& lat, const QVec& y) {
    for (const Rat& c : malcev_coordinates(lat, y))
        if (!rat_is_integer(c)) return false;
    return true;
}

inline QVec from_malcev_coordinates(const MultLattice& lat, const QVec& t) {
    QVec y = qvec_zero(lat.alg.dim);
    for (size_t i = 0; i < lat.alg.dim; ++i) {
        if (t[i] == 0) continue;
        y = bch_product(lat.alg, y, qvec_scale(lat.u.column(i), t[i]));
    }
    return y;
}

inline MultLattice make_mult_lattice(const NilLieAlg& alg, const QMat& u, size_t depth = 2) {
    if (u.rows() != alg.dim || u.cols() != alg.dim)
        throw DomainError("lattice basis must be square of the algebra dimension");
    MultLattice lat;
    lat.alg = alg;
    lat.u = u;
    if (!try_inverse(u, lat.u_inv)) throw DomainError("lattice basis is singular");
    // Adaptation: the last dim C^j columns span C^j for every j >= 2.
    for (size_t level = 1; level < alg.info.lcs.size(); ++level) {
        const auto& term = alg.info.lcs[level];
        size_t d = term.size();
        std::vector<QVec> tail;
        for (size_t j = alg.dim - d; j < alg.dim; ++j) tail.push_back(u.column(j));
        std::vector<QVec> echelon = row_echelon_basis(tail);
        if (echelon.size() != d)
            throw DomainError("basis not adapted to the lower central series");
        for (const QVec& v : term) {
            if (!in_echelon_span(echelon, v))
                throw DomainError("basis not adapted to the lower central series");
        }
    }
    // Closure: every word in the generators and their inverses, up to
    // `depth` letters, has integral coordinates.
    if (depth < 2) throw DomainError("closure check needs depth >= 2");
    std::vector<QVec> frontier{qvec_zero(alg.dim)};
    for (size_t len = 1; len <= depth; ++len) {
        std::vector<QVec> next;
        for (const QVec& w : frontier) {
            for (size_t i = 0; i < alg.dim; ++i) {
                for (int sign : {1, -1}) {
                    QVec prod = bch_product(alg, w, qvec_scale(u.column(i), Rat(sign)));
                    lat.verified_depth = len - 1;
                    if (!lattice_group_member(lat, prod))
                        throw DomainError("generators are not closed under products at depth " +
                                          std::to_string(len));
                    next.push_back(std::move(prod));
                }
            }
        }
        frontier = std::move(next);
    }
    lat.verified_depth = depth;
    return lat;
}

}  // namespace nilwreath

#pragma once

#include <utility>
#include <vector>

#include "nilwreath/factor.hpp"
#include "nilwreath/lattice.hpp"

namespace nilwreath {

// Height of a rational matrix: the product, over the Galois orbits of its
// spectrum, of the denominator of each orbit (the leading coefficient of the
// primitive integer minimal polynomial) raised to the orbit's multiplicity
// in the characteristic polynomial.

struct GaloisOrbitDatum {
    IntPoly min_poly;  // primitive irreducible, positive leading coefficient
    int multiplicity{0};
    Int d;  // leading coefficient: denominator of the orbit
    bool is_alg_integer{false};          // d == 1
    bool inverse_is_alg_integer{false};  // |constant coefficient| == 1
    bool is_root_of_unity{false};
    long cyclotomic_index{0};  // m with min_poly the m-th cyclotomic; 0 otherwise
};

inline std::vector<GaloisOrbitDatum> orbit_data(const QMat& h) {
    if (h.rows() != h.cols()) throw DomainError("orbit data of a non-square matrix");
    FactoredSpectrum fs = factor_rational(charpoly(h));
    std::vector<GaloisOrbitDatum> out;
    for (const auto& [f, mult] : fs.factors) {
        GaloisOrbitDatum datum;
        datum.min_poly = f;
        datum.multiplicity = mult;
        datum.d = f.lc();
        datum.is_alg_integer = (datum.d == 1);
        const Int& c0 = f.coeff(0);
        datum.inverse_is_alg_integer = (c0 == 1 || c0 == -1);
        auto [cyc, m] = is_cyclotomic(f);
        datum.is_root_of_unity = cyc;
        datum.cyclotomic_index = m;
        out.push_back(std::move(datum));
    }
    return out;
}

inline Int height(const std::vector<GaloisOrbitDatum>& orbits) {
    Int h(1);
    for (const auto& o : orbits) h *= int_pow(o.d, static_cast<unsigned long>(o.multiplicity));
    return h;
}

inline Int height(const QMat& h) {
    if (det(h) == 0) throw DomainError("height of a singular matrix");
    return height(orbit_data(h));
}

// Complexity of h at a lattice: the index [L : L n h^-1(L)].
inline Int cp_lattice(const QMat& h, const IntLattice& l) {
    QMat hinv;
    if (!try_inverse(h, hinv)) throw DomainError("complexity of a singular matrix");
    IntLattice pre = lattice_apply(hinv, l);
    IntLattice e = lattice_intersect(l, pre);
    Int cp = lattice_index(e, l);
    if (cp < height(h)) throw InternalError("complexity below height");
    return cp;
}

struct MinimalSearchReport {
    bool minimal{false};  // certified: complexity == height at `lattice`
    Int complexity;
    Int height;
    size_t iterations{0};
    IntLattice lattice;
};

// Iterates L <- L n h^-1(L) looking for a lattice whose complexity matches
// the height.  Stops honestly at `cap` iterations when no certificate found.
inline MinimalSearchReport minimal_lattice_search(const QMat& h, const IntLattice& start,
                                                  size_t cap = 64, CancelToken token = {}) {
    QMat hinv;
    if (!try_inverse(h, hinv)) throw DomainError("minimal search for a singular matrix");
    MinimalSearchReport rep;
    rep.height = height(h);
    rep.lattice = start;
    for (size_t it = 0;; ++it) {
        token.check();
        rep.iterations = it;
        rep.complexity = cp_lattice(h, rep.lattice);
        if (rep.complexity == rep.height) {
            rep.minimal = true;
            return rep;
        }
        if (it == cap) return rep;  // minimal stays false: no certificate
        IntLattice next = lattice_intersect(rep.lattice, lattice_apply(hinv, rep.lattice));
        if (next == rep.lattice) return rep;  // stabilized without certificate
        rep.lattice = next;
    }
}

struct BlockHeightReport {
    std::vector<Int> block_heights;
    Int product;
    Int full;
    bool equal{false};
    bool direct_sum{false};
};

// For h block upper triangular with square diagonal blocks of the given
// sizes: height(h) >= prod of block heights, with equality for direct sums.
inline BlockHeightReport block_height_check(const QMat& h, const std::vector<size_t>& sizes) {
    size_t total = 0;
    for (size_t s : sizes) total += s;
    if (total != h.rows() || h.rows() != h.cols())
        throw DomainError("block sizes do not partition the matrix");
    std::vector<size_t> offset{0};
    for (size_t s : sizes) offset.push_back(offset.back() + s);
    // Below-diagonal blocks must vanish.
    for (size_t bi = 0; bi < sizes.size(); ++bi) {
        for (size_t bj = 0; bj < bi; ++bj) {
            for (size_t i = offset[bi]; i < offset[bi + 1]; ++i) {
                for (size_t j = offset[bj]; j < offset[bj + 1]; ++j) {
                    if (h.at(i, j) != 0)
                        throw DomainError("matrix is not block upper triangular: nonzero at (" +
                                          std::to_string(i) + "," + std::to_string(j) + ")");
                }
            }
        }
    }
    BlockHeightReport rep;
    rep.direct_sum = true;
    for (size_t bi = 0; bi < sizes.size(); ++bi) {
        for (size_t bj = bi + 1; bj < sizes.size(); ++bj) {
            for (size_t i = offset[bi]; i < offset[bi + 1]; ++i)
                for (size_t j = offset[bj]; j < offset[bj + 1]; ++j)
                    if (h.at(i, j) != 0) rep.direct_sum = false;
        }
    }
    rep.product = 1;
    for (size_t b = 0; b < sizes.size(); ++b) {
        QMat block(sizes[b], sizes[b]);
        for (size_t i = 0; i < sizes[b]; ++i)
            for (size_t j = 0; j < sizes[b]; ++j) block.at(i, j) = h.at(offset[b] + i, offset[b] + j);
        Int bh = height(block);
        rep.product *= bh;
        rep.block_heights.push_back(std::move(bh));
    }
    rep.full = height(h);
    rep.equal = (rep.full == rep.product);
    if (rep.full < rep.product) throw InternalError("full height below block product");
    if (rep.direct_sum && !rep.equal) throw InternalError("direct sum with unequal height");
    return rep;
}

struct RefinedMinimalityReport {
    bool minimal{false};
    bool congruence_ok{false};
    Int complexity;
    Int height;
};

// For h with rational spectrum and n*ambient <= gamma <= ambient: if every
// eigenvalue l satisfies v_p(l - 1) >= v_p(n) at all primes p | n, then
// gamma has minimal complexity; certified here by direct computation.
inline RefinedMinimalityReport refined_minimality_check(const QMat& h, const IntLattice& gamma,
                                                        const IntLattice& ambient, const Int& n) {
    if (n <= 0) throw DomainError("refined check requires n >= 1");
    std::vector<GaloisOrbitDatum> orbits = orbit_data(h);
    std::vector<Rat> eigenvalues;
    for (const auto& o : orbits) {
        if (o.min_poly.degree() != 1) throw DomainError("unsupported spectrum: irrational eigenvalue");
        eigenvalues.push_back(Rat(-o.min_poly.coeff(0)) / Rat(o.min_poly.coeff(1)));
    }
    if (!lattice_subset(gamma, ambient)) throw DomainError("gamma is not inside the ambient lattice");
    if (!lattice_subset(lattice_scale(ambient, n), gamma))
        throw DomainError("gamma does not contain n times the ambient lattice");
    RefinedMinimalityReport rep;
    rep.height = height(orbits);
    rep.congruence_ok = true;
    for (const auto& [p, e] : factor_int(n)) {
        for (const Rat& lam : eigenvalues) {
            Rat shifted = lam - 1;
            if (shifted == 0) continue;  // infinite valuation
            if (rat_valuation(shifted, p) < static_cast<long>(e)) {
                rep.congruence_ok = false;
                break;
            }
        }
        if (!rep.congruence_ok) break;
    }
    if (!rep.congruence_ok) return rep;
    rep.complexity = cp_lattice(h, gamma);
    if (rep.complexity != rep.height)
        throw DomainError("congruence holds but complexity exceeds height: hypotheses violated");
    rep.minimal = true;
    return rep;
}

}  // namespace nilwreath

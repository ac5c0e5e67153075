#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "nilwreath/heights.hpp"
#include "nilwreath/lie.hpp"

namespace nilwreath {

// Gradings n = sum over k of n_k with [n_k, n_m] <= n_{k+m}, and the spectral
// classification of rational automorphisms.

struct Grading {
    // Sorted by degree; each piece a nonempty column basis.
    std::vector<std::pair<long, QMat>> pieces;
};

struct GradingCheck {
    bool valid{false};
    bool special{false};       // n_0 meets the center trivially
    bool very_special{false};  // n_0 = 0
    bool non_negative{false};
    bool positive{false};
    Int e;  // sum over k > 0 of k * dim n_k
};

namespace detail {
inline void require_automorphism(const NilLieAlg& alg, const QMat& f) {
    if (f.rows() != alg.dim || f.cols() != alg.dim)
        throw DomainError("map dimension does not match the algebra");
    if (det(f) == 0) throw DomainError("map is singular");
    for (size_t i = 0; i < alg.dim; ++i) {
        for (size_t j = i + 1; j < alg.dim; ++j) {
            QVec lhs = alg.bracket(f.column(i), f.column(j));
            QVec rhs = f * alg.c[i][j];
            if (!(lhs == rhs))
                throw DomainError("not an automorphism: bracket of images differs on pair (" +
                                  std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        }
    }
}
}  // namespace detail

inline GradingCheck check_grading(const NilLieAlg& alg, const Grading& g) {
    GradingCheck out;
    size_t total = 0;
    std::vector<QVec> all;
    std::map<long, const QMat*> by_degree;
    for (const auto& [k, basis] : g.pieces) {
        if (basis.cols() == 0 || basis.rows() != alg.dim)
            throw DomainError("grading piece must be a nonempty basis of ambient dimension");
        if (by_degree.count(k)) throw DomainError("duplicate grading degree " + std::to_string(k));
        by_degree[k] = &basis;
        total += basis.cols();
        for (size_t j = 0; j < basis.cols(); ++j) all.push_back(basis.column(j));
    }
    // Direct sum: the union of the bases is a basis of the whole algebra.
    if (total != alg.dim || row_echelon_basis(all).size() != alg.dim) return out;
    out.valid = true;
    // Bracket compatibility: [n_k, n_m] inside n_{k+m}, zero when absent.
    for (const auto& [k, ub] : by_degree) {
        for (const auto& [m, vb] : by_degree) {
            auto it = by_degree.find(k + m);
            std::vector<QVec> target;
            if (it != by_degree.end())
                for (size_t j = 0; j < it->second->cols(); ++j)
                    target.push_back(it->second->column(j));
            std::vector<QVec> span = row_echelon_basis(target);
            for (size_t a = 0; a < ub->cols(); ++a) {
                for (size_t b = 0; b < vb->cols(); ++b) {
                    QVec w = alg.bracket(ub->column(a), vb->column(b));
                    if (qvec_is_zero(w)) continue;
                    if (!in_echelon_span(span, w)) {
                        out.valid = false;
                        return out;
                    }
                }
            }
        }
    }
    out.non_negative = by_degree.empty() || by_degree.begin()->first >= 0;
    out.positive = by_degree.empty() || by_degree.begin()->first > 0;
    out.very_special = !by_degree.count(0);
    if (out.very_special) {
        out.special = true;
    } else {
        // n_0 meets the center trivially: kernel of [U0 | -Z] has no nonzero
        // solution pairing a piece vector with a central vector.
        const QMat& u0 = *by_degree[0];
        const auto& z = alg.info.center;
        QMat sys(alg.dim, u0.cols() + z.size());
        for (size_t j = 0; j < u0.cols(); ++j)
            for (size_t i = 0; i < alg.dim; ++i) sys.at(i, j) = u0.at(i, j);
        for (size_t j = 0; j < z.size(); ++j)
            for (size_t i = 0; i < alg.dim; ++i) sys.at(i, u0.cols() + j) = -z[j][i];
        out.special = kernel_basis(sys).empty();
    }
    out.e = 0;
    for (const auto& [k, basis] : by_degree)
        if (k > 0) out.e += Int(k) * Int(basis->cols());
    return out;
}

inline Int e_invariant(const NilLieAlg& alg, const Grading& g) {
    GradingCheck c = check_grading(alg, g);
    if (!c.valid) throw DomainError("not a grading");
    if (!c.non_negative) throw DomainError("e-invariant needs a non-negative grading");
    return c.e;
}

struct SpectralReport {
    bool in_s{false};      // no algebraic-integer eigenvalue on the center
    bool in_v{false};      // no algebraic-integer eigenvalue at all
    bool in_f{false};      // in_s and the inverse spectrum is integral
    bool in_f_plus{false}; // in_f and in_v
    std::vector<GaloisOrbitDatum> center_orbits;
    std::vector<GaloisOrbitDatum> full_orbits;
};

// Restriction of f to the center, in the center's echelon basis.  Rejects
// maps that move the center out of itself (never automorphisms).
inline QMat center_restriction(const NilLieAlg& alg, const QMat& f) {
    const auto& z = alg.info.center;
    QMat zmat = QMat::from_columns(z);
    QMat out(z.size(), z.size());
    for (size_t j = 0; j < z.size(); ++j) {
        QVec img = f * z[j];
        QVec coords;
        if (!try_solve(zmat, img, coords))
            throw DomainError("map does not preserve the center");
        for (size_t i = 0; i < z.size(); ++i) out.at(i, j) = coords[i];
    }
    return out;
}

// Spectral flags from the Galois orbits on the center and the whole algebra.
inline SpectralReport spectral_flags(std::vector<GaloisOrbitDatum> center_orbits,
                                     std::vector<GaloisOrbitDatum> full_orbits) {
    SpectralReport rep;
    rep.center_orbits = std::move(center_orbits);
    rep.full_orbits = std::move(full_orbits);
    auto no_integer = [](const std::vector<GaloisOrbitDatum>& orbits) {
        for (const auto& o : orbits)
            if (o.is_alg_integer) return false;
        return true;
    };
    auto inverse_integral = [](const std::vector<GaloisOrbitDatum>& orbits) {
        for (const auto& o : orbits)
            if (!o.inverse_is_alg_integer) return false;
        return true;
    };
    rep.in_s = no_integer(rep.center_orbits);
    rep.in_v = no_integer(rep.full_orbits);
    rep.in_f = rep.in_s && inverse_integral(rep.full_orbits);
    rep.in_f_plus = rep.in_f && rep.in_v;
    return rep;
}

inline SpectralReport spectral_class(const NilLieAlg& alg, const QMat& f) {
    detail::require_automorphism(alg, f);
    return spectral_flags(orbit_data(center_restriction(alg, f)), orbit_data(f));
}

// Grading induced by an automorphism with rational spectrum: pieces are the
// generalized eigenspaces, degrees separate the eigenvalue exponents.
inline Grading grading_from_automorphism(const NilLieAlg& alg, const QMat& f) {
    detail::require_automorphism(alg, f);
    FactoredSpectrum fs = factor_rational(charpoly(f));
    std::vector<Rat> eigenvalues;
    for (const auto& [p, m] : fs.factors) {
        if (p.degree() != 1)
            throw DomainError("unsupported spectrum: eigenvalues must be rational");
        eigenvalues.push_back(Rat(-p.coeff(0)) / Rat(p.coeff(1)));
    }
    // Exponent vectors over the primes dividing any eigenvalue.
    std::vector<Int> primes;
    for (const Rat& lam : eigenvalues) {
        for (const Int& part : {Int(lam.get_num()), Int(lam.get_den())}) {
            for (const auto& [p, e] : factor_int(part)) {
                (void)e;
                if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
            }
        }
    }
    std::sort(primes.begin(), primes.end());
    std::vector<std::vector<long>> expo(eigenvalues.size(), std::vector<long>(primes.size(), 0));
    for (size_t i = 0; i < eigenvalues.size(); ++i)
        for (size_t j = 0; j < primes.size(); ++j) expo[i][j] = rat_valuation(eigenvalues[i], primes[j]);
    long maxabs = 0;
    for (const auto& row : expo)
        for (long v : row) maxabs = std::max(maxabs, v < 0 ? -v : v);
    long base = maxabs + 1;
    auto weight = [&](size_t i) {
        long w = 0;
        long power = 1;
        for (size_t j = 0; j < primes.size(); ++j) {
            w += expo[i][j] * power;
            power *= base;
        }
        return w;
    };
    // Group generalized eigenspaces by weight.
    std::map<long, std::vector<QVec>> groups;
    for (size_t i = 0; i < eigenvalues.size(); ++i) {
        QMat shifted = f - QMat::identity(alg.dim).scaled(eigenvalues[i]);
        QMat power = QMat::identity(alg.dim);
        for (size_t k = 0; k < alg.dim; ++k) power = power * shifted;
        for (QVec& v : kernel_basis(power)) groups[weight(i)].push_back(std::move(v));
    }
    // Canonical degrees: divide by the gcd, orient so the positive side
    // carries more weighted dimension, tie broken toward the smallest
    // off-unit-circle eigenvalue.
    std::vector<long> degrees;
    for (const auto& [w, vecs] : groups) degrees.push_back(w);
    long g = 0;
    for (long w : degrees) g = static_cast<long>(int_gcd(Int(g), Int(w)).get_si());
    if (g == 0) g = 1;
    auto weighted_dim = [&](long sign) {
        Int acc(0);
        for (const auto& [w, vecs] : groups)
            if (sign * w > 0) acc += Int(sign * (w / g)) * Int(vecs.size());
        return acc;
    };
    long flip = 1;
    Int pos = weighted_dim(1), neg = weighted_dim(-1);
    if (neg > pos) {
        flip = -1;
    } else if (neg == pos && pos != 0) {
        // Tie: give positive degree to the group holding the smallest
        // eigenvalue of absolute value != 1.
        Rat best;
        long best_w = 0;
        bool found = false;
        for (size_t i = 0; i < eigenvalues.size(); ++i) {
            Rat a = rat_abs(eigenvalues[i]);
            if (a == 1) continue;
            if (!found || a < best) {
                best = a;
                best_w = weight(i);
                found = true;
            }
        }
        if (found && best_w < 0) flip = -1;
    }
    Grading out;
    for (auto& [w, vecs] : groups)
        out.pieces.emplace_back(flip * (w / g), QMat::from_columns(row_echelon_basis(vecs)));
    std::sort(out.pieces.begin(), out.pieces.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    GradingCheck chk = check_grading(alg, out);
    if (!chk.valid) throw InternalError("eigenspace grading failed validation");
    return out;
}

// Non-negative grading attached to an automorphism whose inverse has integral
// spectrum: degree of a piece is the number of prime factors, counted with
// multiplicity, of the inverse eigenvalue.  Degrees are reported raw.
inline Grading nonneg_grading_from_f(const NilLieAlg& alg, const QMat& f) {
    detail::require_automorphism(alg, f);
    SpectralReport rep = spectral_class(alg, f);
    if (!rep.in_f) throw DomainError("automorphism is not in class F");
    QMat g = inverse(f);
    FactoredSpectrum fs = factor_rational(charpoly(g));
    std::map<long, std::vector<QVec>> groups;
    for (const auto& [p, m] : fs.factors) {
        if (p.degree() != 1)
            throw DomainError("unsupported spectrum: eigenvalues must be rational");
        Rat mu = Rat(-p.coeff(0)) / Rat(p.coeff(1));
        if (!rat_is_integer(mu)) throw InternalError("class F inverse with non-integer eigenvalue");
        Int n = mu.get_num();
        long deg = static_cast<long>(prime_omega(n));
        QMat shifted = g - QMat::identity(alg.dim).scaled(mu);
        QMat power = QMat::identity(alg.dim);
        for (size_t k = 0; k < alg.dim; ++k) power = power * shifted;
        for (QVec& v : kernel_basis(power)) groups[deg].push_back(std::move(v));
    }
    Grading out;
    for (auto& [deg, vecs] : groups)
        out.pieces.emplace_back(deg, QMat::from_columns(row_echelon_basis(vecs)));
    GradingCheck chk = check_grading(alg, out);
    if (!chk.valid) throw InternalError("inverse-spectrum grading failed validation");
    if (!chk.non_negative || !chk.special)
        throw InternalError("class F grading must be non-negative and special");
    return out;
}

// Automorphism diag(q^k) in a basis adapted to the grading.
inline QMat automorphism_from_grading(const NilLieAlg& alg, const Grading& g,
                                      const Rat& base = Rat(2, 3)) {
    if (base == 0 || base == 1 || base == -1)
        throw DomainError("grading automorphism base must avoid 0 and units");
    GradingCheck chk = check_grading(alg, g);
    if (!chk.valid) throw DomainError("not a grading");
    QMat p(alg.dim, alg.dim);
    std::vector<Rat> scales;
    size_t col = 0;
    for (const auto& [k, basis] : g.pieces) {
        for (size_t j = 0; j < basis.cols(); ++j, ++col) {
            for (size_t i = 0; i < alg.dim; ++i) p.at(i, col) = basis.at(i, j);
            scales.push_back(rat_pow(base, k));
        }
    }
    QMat d(alg.dim, alg.dim);
    for (size_t i = 0; i < alg.dim; ++i) d.at(i, i) = scales[i];
    QMat f = p * d * inverse(p);
    detail::require_automorphism(alg, f);
    return f;
}

}  // namespace nilwreath

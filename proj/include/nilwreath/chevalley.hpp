#pragma once

#include "nilwreath/matrix.hpp"

namespace nilwreath {

// Jordan-Chevalley decomposition m = s + n over Q: s semisimple, n nilpotent,
// both polynomials in m.  Computed by Newton iteration against the squarefree
// part of the characteristic polynomial; no factorization needed.
struct JordanChevalley {
    QMat s;          // semisimple part
    QMat n;          // nilpotent part, m = s + n
    QMat u;          // unipotent part, m = s * u (only when m invertible)
    bool u_valid{false};
};

inline JordanChevalley jordan_chevalley(const QMat& m) {
    if (m.rows() != m.cols()) throw DomainError("jordan-chevalley of a non-square matrix");
    size_t n = m.rows();
    RatPoly chi = charpoly(m);
    RatPoly g = rat_poly_gcd(chi, rat_poly_derivative(chi));
    RatPoly sf, rem;
    rat_poly_divmod(chi, g, sf, rem);  // squarefree part; annihilates s
    if (!rem.is_zero()) throw InternalError("charpoly not divisible by its gcd with derivative");

    JordanChevalley out{m, QMat(n, n), QMat(n, n), false};
    RatPoly dsf = rat_poly_derivative(sf);
    // Newton: s <- s - sf(s) / sf'(s); converges quadratically since the
    // nilpotency order is at most the dimension.
    size_t cap = 1;
    while ((size_t{1} << cap) < (n == 0 ? 1 : n)) ++cap;
    cap += 3;
    for (size_t it = 0; it <= cap; ++it) {
        QMat val = poly_apply(sf, out.s);
        if (val.is_zero()) break;
        if (it == cap) throw InternalError("jordan-chevalley iteration did not converge");
        QMat dval = poly_apply(dsf, out.s);
        QMat inv;
        if (!try_inverse(dval, inv))
            throw InternalError("jordan-chevalley derivative not invertible");
        out.s = out.s - inv * val;
    }
    out.n = m - out.s;

    QMat nil = out.n;
    for (size_t i = 1; i < n && !nil.is_zero(); ++i) nil = nil * out.n;
    if (!nil.is_zero()) throw InternalError("nilpotent part is not nilpotent");
    if (!(out.s * out.n == out.n * out.s))
        throw InternalError("jordan-chevalley parts do not commute");

    QMat sinv;
    if (try_inverse(out.s, sinv)) {
        out.u = sinv * m;
        out.u_valid = true;
        QMat w = out.u - QMat::identity(n);
        QMat acc = w;
        for (size_t i = 1; i < n && !acc.is_zero(); ++i) acc = acc * w;
        if (n > 0 && !acc.is_zero()) throw InternalError("unipotent part check failed");
    }
    return out;
}

// The multiplicative decomposition m = s*u; errors when m is singular.
inline JordanChevalley jordan_chevalley_multiplicative(const QMat& m) {
    JordanChevalley jc = jordan_chevalley(m);
    if (!jc.u_valid) throw DomainError("non-invertible m when u is requested");
    return jc;
}

}  // namespace nilwreath

#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "nilwreath/poly.hpp"

namespace nilwreath {

// Rational factorization: squarefree decomposition (Yun), then factorization
// modulo a small good prime (Berlekamp), Hensel lifting to a Mignotte-sized
// modulus, and subset recombination.  See Cohen, "A Course in Computational
// Algebraic Number Theory", ch. 3, and von zur Gathen & Gerhard ch. 15.

constexpr long kFactorDegreeCap = 16;

struct FactoredSpectrum {
    // p = constant * prod factors[i].first ^ factors[i].second, each factor
    // primitive irreducible with positive leading coefficient, ordered by
    // degree then lexicographically by coefficient vector.
    Rat constant;
    std::vector<std::pair<IntPoly, int>> factors;
};

namespace fp {

// F_p[x] with p a small prime; coefficients in [0, p).
using Poly = std::vector<long>;

inline long norm_mod(long x, long p) {
    x %= p;
    return x < 0 ? x + p : x;
}
inline long mul_mod(long a, long b, long p) {
    return static_cast<long>(static_cast<__int128>(a) * b % p);
}
inline long pow_mod(long a, long e, long p) {
    long r = 1;
    a = norm_mod(a, p);
    while (e) {
        if (e & 1) r = mul_mod(r, a, p);
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    return r;
}
inline long inv_mod(long a, long p) { return pow_mod(norm_mod(a, p), p - 2, p); }

inline void normalize(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
inline long degree(const Poly& f) { return static_cast<long>(f.size()) - 1; }

inline Poly reduce(const IntPoly& f, long p) {
    Poly out(f.c.size());
    for (size_t i = 0; i < f.c.size(); ++i) {
        out[i] = norm_mod(mpz_fdiv_ui(f.c[i].get_mpz_t(), static_cast<unsigned long>(p)), p);
    }
    normalize(out);
    return out;
}

inline Poly mul(const Poly& a, const Poly& b, long p) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = norm_mod(out[i + j] + mul_mod(a[i], b[j], p), p);
    }
    normalize(out);
    return out;
}

inline Poly sub(const Poly& a, const Poly& b, long p) {
    Poly out(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < out.size(); ++i) {
        long x = (i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0);
        out[i] = norm_mod(x, p);
    }
    normalize(out);
    return out;
}

inline Poly monic(Poly f, long p) {
    normalize(f);
    if (f.empty() || f.back() == 1) return f;
    long inv = inv_mod(f.back(), p);
    for (auto& x : f) x = mul_mod(x, inv, p);
    return f;
}

// a = q*b + r
inline void divmod(const Poly& a, const Poly& b, long p, Poly& q, Poly& r) {
    r = a;
    normalize(r);
    q.clear();
    if (degree(r) >= degree(b)) q.assign(static_cast<size_t>(degree(r) - degree(b)) + 1, 0);
    long inv = inv_mod(b.back(), p);
    for (long k = degree(r) - degree(b); k >= 0; --k) {
        long f = mul_mod(r[static_cast<size_t>(k + degree(b))], inv, p);
        if (f == 0) continue;
        q[static_cast<size_t>(k)] = f;
        for (size_t i = 0; i < b.size(); ++i) {
            size_t idx = static_cast<size_t>(k) + i;
            r[idx] = norm_mod(r[idx] - mul_mod(f, b[i], p), p);
        }
    }
    normalize(r);
}

inline Poly gcd(Poly a, Poly b, long p) {
    normalize(a);
    normalize(b);
    while (!b.empty()) {
        Poly q, r;
        divmod(a, b, p, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(std::move(a), p);
}

// g*s + h*t = 1 for coprime g, h; deg s < deg h, deg t < deg g.
inline void bezout(const Poly& g, const Poly& h, long p, Poly& s, Poly& t) {
    Poly r0 = g, r1 = h, s0 = {1}, s1 = {};
    while (!r1.empty()) {
        Poly q, r;
        divmod(r0, r1, p, q, r);
        Poly s2 = sub(s0, mul(q, s1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 = gcd (a unit); s0 * g = r0 mod h
    if (degree(r0) != 0) throw InternalError("bezout of non-coprime polynomials");
    long inv = inv_mod(r0[0], p);
    for (auto& x : s0) x = mul_mod(x, inv, p);
    Poly q, srem;
    divmod(s0, h, p, q, srem);
    s = std::move(srem);
    // t = (1 - s*g)/h
    Poly num = sub(Poly{1}, mul(s, g, p), p);
    Poly trem;
    divmod(num, h, p, t, trem);
    if (!trem.empty()) throw InternalError("bezout division not exact");
}

inline Poly pow_mod_poly(Poly base, long e, const Poly& f, long p) {
    Poly r{1}, q, rem;
    while (e) {
        if (e & 1) {
            r = mul(r, base, p);
            divmod(r, f, p, q, rem);
            r = rem;
        }
        base = mul(base, base, p);
        divmod(base, f, p, q, rem);
        base = rem;
        e >>= 1;
    }
    return r;
}

// Distinct monic irreducible factors of a monic squarefree f, deterministic.
inline std::vector<Poly> berlekamp(const Poly& f, long p) {
    long n = degree(f);
    if (n <= 1) return {f};
    // Frobenius matrix: column j holds x^(j*p) mod f.
    Poly xp = pow_mod_poly(Poly{0, 1}, p, f, p);
    std::vector<Poly> cols(static_cast<size_t>(n));
    cols[0] = Poly{1};
    for (size_t j = 1; j < static_cast<size_t>(n); ++j) {
        Poly q, rem;
        Poly prod = mul(cols[j - 1], xp, p);
        divmod(prod, f, p, q, rem);
        cols[j] = rem;
    }
    // Kernel of (B - I) by Gauss-Jordan mod p.
    std::vector<std::vector<long>> m(static_cast<size_t>(n), std::vector<long>(static_cast<size_t>(n), 0));
    for (size_t j = 0; j < static_cast<size_t>(n); ++j) {
        for (size_t i = 0; i < cols[j].size(); ++i) m[i][j] = cols[j][i];
        m[j][j] = norm_mod(m[j][j] - 1, p);
    }
    std::vector<long> pivot_col;
    size_t row = 0;
    for (size_t col = 0; col < static_cast<size_t>(n) && row < static_cast<size_t>(n); ++col) {
        size_t sel = row;
        while (sel < static_cast<size_t>(n) && m[sel][col] == 0) ++sel;
        if (sel == static_cast<size_t>(n)) continue;
        std::swap(m[sel], m[row]);
        long inv = inv_mod(m[row][col], p);
        for (auto& x : m[row]) x = mul_mod(x, inv, p);
        for (size_t i = 0; i < static_cast<size_t>(n); ++i) {
            if (i == row || m[i][col] == 0) continue;
            long fmul = m[i][col];
            for (size_t j2 = 0; j2 < static_cast<size_t>(n); ++j2)
                m[i][j2] = norm_mod(m[i][j2] - mul_mod(fmul, m[row][j2], p), p);
        }
        pivot_col.push_back(static_cast<long>(col));
        ++row;
    }
    std::vector<Poly> kernel;
    std::vector<bool> is_pivot(static_cast<size_t>(n), false);
    for (long c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
    for (size_t j = 0; j < static_cast<size_t>(n); ++j) {
        if (is_pivot[j]) continue;
        Poly v(static_cast<size_t>(n), 0);
        v[j] = 1;
        for (size_t r2 = 0; r2 < pivot_col.size(); ++r2)
            v[static_cast<size_t>(pivot_col[r2])] = norm_mod(-m[r2][j], p);
        normalize(v);
        kernel.push_back(std::move(v));
    }
    size_t nfactors = kernel.size();
    std::vector<Poly> factors{f};
    if (nfactors <= 1) return factors;
    for (const Poly& v : kernel) {
        if (degree(v) < 1) continue;  // the constants split nothing
        if (factors.size() == nfactors) break;
        std::vector<Poly> next;
        for (const Poly& g : factors) {
            if (degree(g) <= 1) {
                next.push_back(g);
                continue;
            }
            Poly rest = g;
            for (long s = 0; s < p && degree(rest) > 0; ++s) {
                Poly shifted = v;
                if (shifted.empty()) shifted = Poly{0};
                shifted[0] = norm_mod(shifted[0] - s, p);
                normalize(shifted);
                Poly d = gcd(rest, shifted, p);
                if (degree(d) > 0 && degree(d) < degree(rest)) {
                    next.push_back(d);
                    Poly q, rem;
                    divmod(rest, d, p, q, rem);
                    rest = monic(std::move(q), p);
                }
            }
            if (degree(rest) > 0) next.push_back(rest);
        }
        factors = std::move(next);
    }
    std::sort(factors.begin(), factors.end(), [](const Poly& a, const Poly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return factors;
}

}  // namespace fp

namespace hensel {

// Z/M[x] helpers; coefficients kept in [0, M).
inline IntPoly reduce(const IntPoly& f, const Int& m) {
    std::vector<Int> out(f.c.size());
    for (size_t i = 0; i < f.c.size(); ++i) out[i] = int_fmod(f.c[i], m);
    return IntPoly(std::move(out));
}

inline IntPoly mul_mod(const IntPoly& a, const IntPoly& b, const Int& m) {
    return reduce(poly_mul(a, b), m);
}

inline IntPoly sub_mod(const IntPoly& a, const IntPoly& b, const Int& m) {
    return reduce(poly_sub(a, b), m);
}

// a = q*b + r mod m with b monic.
inline void divmod_mod(const IntPoly& a, const IntPoly& b, const Int& m, IntPoly& q, IntPoly& r) {
    if (!b.is_monic()) throw InternalError("modular division by non-monic polynomial");
    std::vector<Int> rem(a.c);
    std::vector<Int> quo;
    long db = b.degree(), da = a.degree();
    if (da >= db) quo.assign(static_cast<size_t>(da - db) + 1, Int(0));
    for (long k = da - db; k >= 0; --k) {
        Int f = int_fmod(rem[static_cast<size_t>(k + db)], m);
        quo[static_cast<size_t>(k)] = f;
        if (f == 0) continue;
        for (size_t i = 0; i < b.c.size(); ++i) {
            size_t idx = static_cast<size_t>(k) + i;
            rem[idx] = int_fmod(rem[idx] - f * b.c[i], m);
        }
    }
    q = IntPoly(std::move(quo));
    r = reduce(IntPoly(std::move(rem)), m);
}

struct PairLift {
    IntPoly g, h, s, t;
};

// One quadratic step: from f = g*h and s*g + t*h = 1 (mod m) to the same mod m^2.
inline PairLift step(const IntPoly& f, const PairLift& in, const Int& m) {
    Int m2 = m * m;
    IntPoly e = sub_mod(reduce(f, m2), mul_mod(in.g, in.h, m2), m2);
    IntPoly q, r;
    divmod_mod(mul_mod(in.s, e, m2), in.h, m2, q, r);
    PairLift out;
    out.g = reduce(poly_add(in.g, poly_add(mul_mod(in.t, e, m2), mul_mod(q, in.g, m2))), m2);
    out.h = reduce(poly_add(in.h, r), m2);
    IntPoly one = int_poly_from({1});
    IntPoly b = sub_mod(poly_add(mul_mod(in.s, out.g, m2), mul_mod(in.t, out.h, m2)), one, m2);
    IntPoly c, d;
    divmod_mod(mul_mod(in.s, b, m2), out.h, m2, c, d);
    out.s = sub_mod(in.s, d, m2);
    out.t = sub_mod(in.t, poly_add(mul_mod(in.t, b, m2), mul_mod(c, out.g, m2)), m2);
    return out;
}

inline IntPoly from_fp(const fp::Poly& f) {
    std::vector<Int> c(f.size());
    for (size_t i = 0; i < f.size(); ++i) c[i] = f[i];
    return IntPoly(std::move(c));
}

// Lifts the factorization f = prod(parts) from mod p to mod >= target;
// returns the lifted factors and the modulus reached.  f monic, parts monic
// and pairwise coprime mod p.
inline std::vector<IntPoly> lift_factors(const IntPoly& f, const std::vector<fp::Poly>& parts,
                                         long p, const Int& target, Int& modulus_out) {
    Int modulus(p);
    while (modulus < target) modulus *= modulus;
    modulus_out = modulus;
    if (parts.size() == 1) return {reduce(f, modulus)};
    size_t half = parts.size() / 2;
    std::vector<fp::Poly> left(parts.begin(), parts.begin() + static_cast<long>(half));
    std::vector<fp::Poly> right(parts.begin() + static_cast<long>(half), parts.end());
    fp::Poly g0{1}, h0{1};
    for (const auto& q : left) g0 = fp::mul(g0, q, p);
    for (const auto& q : right) h0 = fp::mul(h0, q, p);
    fp::Poly s0, t0;
    fp::bezout(g0, h0, p, s0, t0);
    PairLift cur{from_fp(g0), from_fp(h0), from_fp(s0), from_fp(t0)};
    Int m(p);
    while (m < target) {
        cur = step(f, cur, m);
        m *= m;
    }
    Int sub_mod_reached;
    std::vector<IntPoly> out = lift_factors(cur.g, left, p, target, sub_mod_reached);
    std::vector<IntPoly> rhs = lift_factors(cur.h, right, p, target, sub_mod_reached);
    out.insert(out.end(), rhs.begin(), rhs.end());
    modulus_out = m;
    return out;
}

}  // namespace hensel

namespace detail {

inline IntPoly balance(const IntPoly& f, const Int& m) {
    Int half = m / 2;
    std::vector<Int> c(f.c);
    for (auto& x : c) {
        x = int_fmod(x, m);
        if (x > half) x -= m;
    }
    return IntPoly(std::move(c));
}

inline bool poly_less(const IntPoly& a, const IntPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    }
    return false;
}

// Factors a primitive squarefree polynomial with positive leading coefficient.
inline std::vector<IntPoly> factor_squarefree(const IntPoly& s) {
    long n = s.degree();
    if (n <= 1) return {s};
    // Monic transform T(y) = lc^(n-1) * S(y/lc) so lifting needs no leading
    // coefficient bookkeeping; undone at the end.
    const Int& l = s.lc();
    IntPoly t;
    t.c.assign(s.c.begin(), s.c.end());
    if (l != 1) {
        Int power(1);  // l^(n-1-k)
        for (long k = n - 1; k >= 0; --k) {
            t.c[static_cast<size_t>(k)] *= power;
            power *= l;
        }
        t.c[static_cast<size_t>(n)] = 1;
    }
    // Smallest prime keeping T squarefree.
    long p = 0;
    for (long cand : primes_up_to(100000)) {
        fp::Poly tp = fp::reduce(t, cand);
        if (fp::degree(tp) != n) continue;
        fp::Poly dtp = fp::reduce(poly_derivative(t), cand);
        if (fp::degree(fp::gcd(tp, dtp, cand)) == 0) {
            p = cand;
            break;
        }
    }
    if (p == 0) throw InternalError("no good prime below 100000");
    std::vector<fp::Poly> parts = fp::berlekamp(fp::monic(fp::reduce(t, p), p), p);
    if (parts.size() == 1) return {s};
    // Mignotte-style bound for coefficients of monic factors of T.
    Int bound = (Int(n) + 1) * poly_max_abs(t);
    bound <<= static_cast<unsigned long>(n);
    Int target = 2 * bound + 1;
    Int modulus;
    std::vector<IntPoly> lifted = hensel::lift_factors(t, parts, p, target, modulus);

    // Zassenhaus subset recombination over the lifted factors.
    std::vector<IntPoly> found;
    std::vector<size_t> avail(lifted.size());
    for (size_t i = 0; i < lifted.size(); ++i) avail[i] = i;
    IntPoly remaining = t;
    size_t take = 1;
    while (2 * take <= avail.size()) {
        std::vector<size_t> comb(take);
        for (size_t i = 0; i < take; ++i) comb[i] = i;
        bool split = false;
        while (true) {
            IntPoly candidate = int_poly_from({1});
            for (size_t i : comb) candidate = hensel::mul_mod(candidate, lifted[avail[i]], modulus);
            candidate = balance(candidate, modulus);
            IntPoly quotient;
            if (poly_try_divide(remaining, candidate, quotient)) {
                found.push_back(candidate);
                std::vector<size_t> rest;
                for (size_t i = 0, c = 0; i < avail.size(); ++i) {
                    if (c < comb.size() && comb[c] == i) {
                        ++c;
                        continue;
                    }
                    rest.push_back(avail[i]);
                }
                avail = std::move(rest);
                remaining = quotient;
                split = true;
                break;
            }
            // next combination
            long pos = static_cast<long>(take) - 1;
            while (pos >= 0 && comb[static_cast<size_t>(pos)] ==
                                   avail.size() - take + static_cast<size_t>(pos))
                --pos;
            if (pos < 0) break;
            ++comb[static_cast<size_t>(pos)];
            for (size_t i = static_cast<size_t>(pos) + 1; i < take; ++i) comb[i] = comb[i - 1] + 1;
        }
        if (!split) ++take;
    }
    if (remaining.degree() > 0) found.push_back(remaining);

    // Undo the monic transform and verify the product.
    std::vector<IntPoly> out;
    for (const IntPoly& g : found) {
        if (l == 1) {
            out.push_back(poly_primitive(g));
            continue;
        }
        IntPoly back = g;
        Int power(1);
        for (size_t k = 0; k < back.c.size(); ++k) {
            back.c[k] *= power;
            power *= l;
        }
        back.normalize();
        out.push_back(poly_primitive(back));
    }
    IntPoly check = int_poly_from({1});
    for (const IntPoly& g : out) check = poly_mul(check, g);
    if (!(check == s)) throw InternalError("factor recombination mismatch");
    std::sort(out.begin(), out.end(), poly_less);
    return out;
}

// Yun's squarefree decomposition of a primitive polynomial: f = prod a_i^i.
inline std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& f) {
    std::vector<std::pair<IntPoly, int>> out;
    RatPoly a(f), da = rat_poly_derivative(a);
    RatPoly g = rat_poly_gcd(a, da);
    if (g.degree() == 0) {
        out.emplace_back(f, 1);
        return out;
    }
    RatPoly c, d, q, r;
    rat_poly_divmod(a, g, c, r);
    rat_poly_divmod(da, g, d, r);
    d = rat_poly_sub(d, rat_poly_derivative(c));
    for (int i = 1; c.degree() > 0; ++i) {
        RatPoly ai = rat_poly_gcd(c, d);
        if (ai.degree() > 0) out.emplace_back(rat_poly_primitive(ai), i);
        rat_poly_divmod(c, ai, q, r);
        c = q;
        rat_poly_divmod(d, ai, q, r);
        d = rat_poly_sub(q, rat_poly_derivative(c));
    }
    return out;
}

}  // namespace detail

inline FactoredSpectrum factor_rational(const RatPoly& p, long degree_cap = kFactorDegreeCap) {
    if (p.is_zero()) throw DomainError("factorization of the zero polynomial");
    if (p.degree() > degree_cap)
        throw BudgetError("factorization cap exceeded: degree " + std::to_string(p.degree()) +
                          " > " + std::to_string(degree_cap));
    FactoredSpectrum out;
    if (p.degree() == 0) {
        out.constant = p.c[0];
        return out;
    }
    IntPoly prim = rat_poly_primitive(p);
    out.constant = p.lc() / Rat(prim.lc());
    for (const auto& [sq, mult] : detail::squarefree_decomposition(prim)) {
        for (const IntPoly& irr : detail::factor_squarefree(sq)) {
            out.factors.emplace_back(irr, mult);
        }
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return detail::poly_less(a.first, b.first); });
    // Exactness check: multiply everything back.
    RatPoly check(std::vector<Rat>{out.constant});
    for (const auto& [f, m] : out.factors)
        for (int i = 0; i < m; ++i) check = rat_poly_mul(check, RatPoly(f));
    if (!(check == p)) throw InternalError("factorization product mismatch");
    return out;
}

inline FactoredSpectrum factor_rational(const IntPoly& p, long degree_cap = kFactorDegreeCap) {
    return factor_rational(RatPoly(p), degree_cap);
}

// Cyclotomic polynomial via divide-out of x^m - 1.
inline IntPoly cyclotomic(long m) {
    std::vector<long> divisors;
    for (long d = 1; d <= m; ++d)
        if (m % d == 0) divisors.push_back(d);
    std::map<long, IntPoly> phi;
    for (long d : divisors) {
        std::vector<Int> xm(static_cast<size_t>(d) + 1, Int(0));
        xm[0] = -1;
        xm[static_cast<size_t>(d)] = 1;
        IntPoly q(std::move(xm));
        for (long e : divisors) {
            if (e >= d || d % e != 0) continue;
            IntPoly quotient;
            if (!poly_try_divide(q, phi[e], quotient))
                throw InternalError("cyclotomic division not exact");
            q = quotient;
        }
        phi[d] = q;
    }
    return phi[m];
}

// True (with the smallest m) iff p is the m-th cyclotomic polynomial.
inline std::pair<bool, long> is_cyclotomic(const IntPoly& p) {
    long n = p.degree();
    if (n < 1 || !p.is_monic()) return {false, 0};
    if (p.coeff(0) != 1 && p.coeff(0) != -1) return {false, 0};
    long bound = 2 * n * n + 4;
    for (long m = 1; m <= bound; ++m) {
        if (euler_phi(m) != n) continue;
        if (cyclotomic(m) == p) return {true, m};
    }
    return {false, 0};
}

}  // namespace nilwreath

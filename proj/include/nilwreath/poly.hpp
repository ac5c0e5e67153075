#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "nilwreath/numeric.hpp"

namespace nilwreath {

// Dense univariate polynomials, coefficients ascending (c[i] is the t^i
// coefficient).  The zero polynomial is the empty vector; everything else is
// kept trailing-zero free.

struct IntPoly {
    std::vector<Int> c;

    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { normalize(); }

    void normalize() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    long degree() const { return static_cast<long>(c.size()) - 1; }  // -1 for zero
    const Int& lc() const { return c.back(); }
    Int coeff(size_t i) const { return i < c.size() ? c[i] : Int(0); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }

    bool operator==(const IntPoly& o) const { return c == o.c; }
};

struct RatPoly {
    std::vector<Rat> c;

    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { normalize(); }
    explicit RatPoly(const IntPoly& p) {
        c.reserve(p.c.size());
        for (const auto& x : p.c) c.emplace_back(x);
    }

    void normalize() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    long degree() const { return static_cast<long>(c.size()) - 1; }
    const Rat& lc() const { return c.back(); }
    Rat coeff(size_t i) const { return i < c.size() ? c[i] : Rat(0); }

    bool operator==(const RatPoly& o) const { return c == o.c; }
};

inline IntPoly int_poly_from(std::initializer_list<long> coeffs) {
    std::vector<Int> v;
    for (long x : coeffs) v.emplace_back(x);
    return IntPoly(std::move(v));
}

inline Int poly_content(const IntPoly& p) {
    Int g = 0;
    for (const auto& x : p.c) g = int_gcd(g, x);
    return g;
}

// Primitive part with positive leading coefficient.
inline IntPoly poly_primitive(const IntPoly& p) {
    if (p.is_zero()) return p;
    Int g = poly_content(p);
    if (p.lc() < 0) g = -g;
    std::vector<Int> out(p.c.size());
    for (size_t i = 0; i < p.c.size(); ++i) out[i] = int_divexact(p.c[i], g);
    return IntPoly(std::move(out));
}

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<Int> out(a.c.size() + b.c.size() - 1, Int(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) out[i + j] += a.c[i] * b.c[j];
    return IntPoly(std::move(out));
}

inline IntPoly poly_add(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> out(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
    return IntPoly(std::move(out));
}

inline IntPoly poly_sub(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> out(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) - b.coeff(i);
    return IntPoly(std::move(out));
}

inline IntPoly poly_neg(const IntPoly& a) {
    std::vector<Int> out(a.c);
    for (auto& x : out) x = -x;
    return IntPoly(std::move(out));
}

inline IntPoly poly_derivative(const IntPoly& p) {
    if (p.c.size() <= 1) return IntPoly();
    std::vector<Int> out(p.c.size() - 1);
    for (size_t i = 1; i < p.c.size(); ++i) out[i - 1] = Int(i) * p.c[i];
    return IntPoly(std::move(out));
}

// Division in Z[t] when the divisor's leading coefficient divides exactly at
// every step; returns false otherwise (used as a trial-division test).
inline bool poly_try_divide(const IntPoly& a, const IntPoly& b, IntPoly& quotient) {
    if (b.is_zero()) throw DomainError("division by zero polynomial");
    if (a.is_zero()) {
        quotient = IntPoly();
        return true;
    }
    if (a.degree() < b.degree()) return false;
    std::vector<Int> rem(a.c);
    std::vector<Int> q(static_cast<size_t>(a.degree() - b.degree()) + 1, Int(0));
    for (long k = a.degree() - b.degree(); k >= 0; --k) {
        Int top = rem[static_cast<size_t>(k + b.degree())];
        if (top == 0) continue;
        if (!int_divisible(top, b.lc())) return false;
        Int f = int_divexact(top, b.lc());
        q[static_cast<size_t>(k)] = f;
        for (size_t i = 0; i < b.c.size(); ++i) rem[static_cast<size_t>(k) + i] -= f * b.c[i];
    }
    for (const auto& x : rem) {
        if (x != 0) return false;
    }
    quotient = IntPoly(std::move(q));
    return true;
}

inline Rat poly_eval(const IntPoly& p, const Rat& x) {
    Rat r(0);
    for (size_t i = p.c.size(); i-- > 0;) r = r * x + Rat(p.c[i]);
    return r;
}

inline Int poly_eval_int(const IntPoly& p, const Int& x) {
    Int r(0);
    for (size_t i = p.c.size(); i-- > 0;) r = r * x + p.c[i];
    return r;
}

inline Int poly_max_abs(const IntPoly& p) {
    Int m(0);
    for (const auto& x : p.c) {
        Int a = abs(x);
        if (a > m) m = a;
    }
    return m;
}

// t^deg * p(1/t): the minimal polynomial of the inverses of the roots, up to
// normalization.
inline IntPoly poly_reverse(const IntPoly& p) {
    std::vector<Int> out(p.c.rbegin(), p.c.rend());
    return IntPoly(std::move(out));
}

inline RatPoly rat_poly_add(const RatPoly& a, const RatPoly& b) {
    std::vector<Rat> out(std::max(a.c.size(), b.c.size()), Rat(0));
    for (size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
    return RatPoly(std::move(out));
}

inline RatPoly rat_poly_sub(const RatPoly& a, const RatPoly& b) {
    std::vector<Rat> out(std::max(a.c.size(), b.c.size()), Rat(0));
    for (size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) - b.coeff(i);
    return RatPoly(std::move(out));
}

inline RatPoly rat_poly_mul(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return RatPoly();
    std::vector<Rat> out(a.c.size() + b.c.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) out[i + j] += a.c[i] * b.c[j];
    return RatPoly(std::move(out));
}

inline RatPoly rat_poly_scale(const RatPoly& a, const Rat& s) {
    std::vector<Rat> out(a.c);
    for (auto& x : out) x *= s;
    return RatPoly(std::move(out));
}

inline void rat_poly_divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r) {
    if (b.is_zero()) throw DomainError("division by zero polynomial");
    std::vector<Rat> rem(a.c);
    std::vector<Rat> quo;
    if (a.degree() >= b.degree()) quo.assign(static_cast<size_t>(a.degree() - b.degree()) + 1, Rat(0));
    for (long k = a.degree() - b.degree(); k >= 0; --k) {
        Rat f = rem[static_cast<size_t>(k + b.degree())] / b.lc();
        quo[static_cast<size_t>(k)] = f;
        if (f == 0) continue;
        for (size_t i = 0; i < b.c.size(); ++i) rem[static_cast<size_t>(k) + i] -= f * b.c[i];
    }
    q = RatPoly(std::move(quo));
    r = RatPoly(std::move(rem));
}

inline RatPoly rat_poly_derivative(const RatPoly& p) {
    if (p.c.size() <= 1) return RatPoly();
    std::vector<Rat> out(p.c.size() - 1);
    for (size_t i = 1; i < p.c.size(); ++i) out[i - 1] = Rat(Int(i)) * p.c[i];
    return RatPoly(std::move(out));
}

inline RatPoly rat_poly_monic(const RatPoly& p) {
    if (p.is_zero()) return p;
    return rat_poly_scale(p, Rat(1) / p.lc());
}

// Monic gcd via the Euclidean algorithm over Q.
inline RatPoly rat_poly_gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        RatPoly q, r;
        rat_poly_divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return rat_poly_monic(a);
}

inline Rat rat_poly_eval(const RatPoly& p, const Rat& x) {
    Rat r(0);
    for (size_t i = p.c.size(); i-- > 0;) r = r * x + p.c[i];
    return r;
}

// Clears denominators and strips content: the primitive integer polynomial
// with positive leading coefficient spanning the same rational line.
inline IntPoly rat_poly_primitive(const RatPoly& p) {
    if (p.is_zero()) return IntPoly();
    Int den(1);
    for (const auto& x : p.c) den = int_lcm(den, x.get_den());
    std::vector<Int> out(p.c.size());
    for (size_t i = 0; i < p.c.size(); ++i) {
        Rat v = p.c[i] * Rat(den);
        out[i] = v.get_num();
    }
    return poly_primitive(IntPoly(std::move(out)));
}

inline std::string poly_to_string(const IntPoly& p, const std::string& var = "t") {
    if (p.is_zero()) return "0";
    std::string s;
    for (size_t i = p.c.size(); i-- > 0;) {
        const Int& a = p.c[i];
        if (a == 0) continue;
        if (!s.empty()) s += a > 0 ? " + " : " - ";
        else if (a < 0) s += "-";
        Int m = abs(a);
        bool unit = (m == 1) && i > 0;
        if (!unit) s += m.get_str();
        if (i > 0) {
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

}  // namespace nilwreath

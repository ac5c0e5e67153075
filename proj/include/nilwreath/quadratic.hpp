#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilwreath/heights.hpp"
#include "nilwreath/lattice.hpp"

namespace nilwreath {

// Imaginary quadratic fields Q(sqrt(-d)), d squarefree positive, with exact
// ideal arithmetic in the maximal order, and the invariant
//
//   F(d) = min norm of a primitive O-ideal pi with pi + conj(pi) = O and
//          pi^2 principal,
//
// which controls the least complexity of lattice endomorphisms with
// eigenvalues in the field.

struct QuadField {
    Int d;     // squarefree, positive
    Int disc;  // -d or -4d
    bool ramified_two;  // whether omega = (1 + sqrt(-d))/2

    explicit QuadField(const Int& d_in) : d(d_in) {
        if (d <= 0) throw DomainError("d must be positive");
        if (squarefree_part(d) != d) throw DomainError("d must be squarefree");
        ramified_two = int_fmod(d, Int(4)) == 3;
        disc = ramified_two ? Int(-d) : Int(-4 * d);
    }

    // Norm of b + c*omega with omega the standard generator of O.
    Int elem_norm(const Int& b, const Int& c) const {
        if (ramified_two) return b * b + b * c + c * c * (d + 1) / 4;
        return b * b + c * c * d;
    }

    // Trace of b + c*omega.
    Int elem_trace(const Int& b, const Int& c) const {
        return ramified_two ? Int(2 * b + c) : Int(2 * b);
    }

    // Conjugate of b + c*omega in the (1, omega) basis.
    std::pair<Int, Int> elem_conj(const Int& b, const Int& c) const {
        if (ramified_two) return {b + c, -c};  // conj(omega) = 1 - omega
        return {b, -c};                        // conj(omega) = -omega
    }

    // Product (b1 + c1 w)(b2 + c2 w) in the (1, omega) basis.
    std::pair<Int, Int> elem_mul(const Int& b1, const Int& c1, const Int& b2,
                                 const Int& c2) const {
        if (ramified_two) {
            // w^2 = w - (1+d)/4
            Int k = (d + 1) / 4;
            return {b1 * b2 - c1 * c2 * k, b1 * c2 + c1 * b2 + c1 * c2};
        }
        return {b1 * b2 - c1 * c2 * d, b1 * c2 + c1 * b2};  // w^2 = -d
    }
};

// Ideal a Z + (b + c omega) Z in canonical HNF: a, c > 0, c | a, c | b,
// 0 <= b < a.  Norm a*c.
struct QuadIdeal {
    Int a, b, c;

    Int norm() const { return a * c; }
    bool operator==(const QuadIdeal& o) const { return a == o.a && b == o.b && c == o.c; }
};

namespace detail {

// Canonical HNF of the Z-module spanned by (x_i, y_i) in the (1, omega)
// basis; must have rank 2.
inline QuadIdeal module_hnf(const std::vector<std::pair<Int, Int>>& gens) {
    ZMat m(2, gens.size());
    for (size_t j = 0; j < gens.size(); ++j) {
        m.at(0, j) = gens[j].first;
        m.at(1, j) = gens[j].second;
    }
    HnfResult h = hnf_columns(m);
    if (h.rank != 2) throw InternalError("ideal module has rank below two");
    // Pivot columns sit at the right edge: (a, 0) then (b, c).
    size_t k = gens.size();
    QuadIdeal q;
    q.a = h.h.at(0, k - 2);
    q.b = h.h.at(0, k - 1);
    q.c = h.h.at(1, k - 1);
    return q;
}

}  // namespace detail

// Is the HNF module a Z + (b + c w) Z an ideal, i.e. closed under w?
inline bool is_ideal(const QuadField& k, const QuadIdeal& q) {
    if (q.a <= 0 || q.c <= 0) return false;
    // w * a = a*w and w * (b + c w); both must lie in the module.
    auto contains = [&](const Int& x, const Int& y) {
        if (!int_divisible(y, q.c)) return false;
        Int t = y / q.c;
        return int_divisible(x - t * q.b, q.a);
    };
    auto wa = k.elem_mul(Int(0), Int(1), q.a, Int(0));
    auto wb = k.elem_mul(Int(0), Int(1), q.b, q.c);
    return contains(wa.first, wa.second) && contains(wb.first, wb.second);
}

inline QuadIdeal whole_ring_ideal() { return QuadIdeal{1, 0, 1}; }

inline QuadIdeal ideal_from_element(const QuadField& k, const Int& b, const Int& c) {
    if (b == 0 && c == 0) throw DomainError("zero element generates no ideal");
    auto w = k.elem_mul(Int(0), Int(1), b, c);
    return detail::module_hnf({{b, c}, {w.first, w.second}});
}

inline QuadIdeal ideal_mul(const QuadField& k, const QuadIdeal& p, const QuadIdeal& q) {
    std::vector<std::pair<Int, Int>> gens;
    std::vector<std::pair<Int, Int>> pg{{p.a, Int(0)}, {p.b, p.c}};
    std::vector<std::pair<Int, Int>> qg{{q.a, Int(0)}, {q.b, q.c}};
    for (const auto& [x1, y1] : pg)
        for (const auto& [x2, y2] : qg) gens.push_back(k.elem_mul(x1, y1, x2, y2));
    return detail::module_hnf(gens);
}

inline QuadIdeal ideal_conj(const QuadField& k, const QuadIdeal& q) {
    auto cb = k.elem_conj(q.b, q.c);
    return detail::module_hnf({{q.a, Int(0)}, {cb.first, cb.second}});
}

inline QuadIdeal ideal_add(const QuadIdeal& p, const QuadIdeal& q) {
    return detail::module_hnf({{p.a, Int(0)}, {p.b, p.c}, {q.a, Int(0)}, {q.b, q.c}});
}

// Content: the largest rational integer dividing the ideal.
inline Int ideal_content(const QuadIdeal& q) { return int_gcd(q.a, int_gcd(q.b, q.c)); }

inline bool ideal_is_primitive(const QuadIdeal& q) { return ideal_content(q) == 1; }

// Principality test: q = (b + c w) for some element iff the norm form
// represents norm(q) by an element of q; search the finitely many candidates
// with bounded coordinates inside the lattice q.
inline bool ideal_is_principal(const QuadField& k, const QuadIdeal& q) {
    Int n = q.norm();
    // Elements of q with |H(x + y w)| = n: x + y w = s a + t (b + c w);
    // norm is a positive definite quadratic form in (s, t), so the search
    // box is small: |y| = |t c| <= sqrt(n / (d/4-ish)) handled generously.
    // Using: norm(x + y w) >= y^2 * d / 4 in both parametrizations.
    Int ybound = int_sqrt(4 * n / k.d) + 1;
    for (Int y = -ybound; y <= ybound; y += 1) {
        if (!int_divisible(y, q.c)) continue;
        Int t = y / q.c;
        // norm(x + y w) = n as quadratic in x: x^2 + trace-term.
        // d != 3 mod 4: x^2 + y^2 d = n; else x^2 + x y + y^2 (1+d)/4 = n.
        Int aq(1), bq, cq;
        if (k.ramified_two) {
            bq = y;
            cq = y * y * (k.d + 1) / 4 - n;
        } else {
            bq = 0;
            cq = y * y * k.d - n;
        }
        Int discq = bq * bq - 4 * aq * cq;
        if (discq < 0) continue;
        if (!is_square(discq)) continue;
        Int r = int_sqrt(discq);
        std::vector<Int> roots;
        if (int_divisible(-bq + r, Int(2))) roots.push_back((-bq + r) / 2);
        if (int_divisible(-bq - r, Int(2))) roots.push_back((-bq - r) / 2);
        for (const Int& x : roots) {
            if (x == 0 && y == 0) continue;
            // x + y w must lie in q: y = t c handled, x - t b divisible by a.
            if (!int_divisible(x - t * q.b, q.a)) continue;
            if (ideal_from_element(k, x, y) == q) return true;
        }
    }
    return false;
}

struct FdWitness {
    Int n;  // the norm F(d)
    Int a;  // trace of the witness element or solution parameter
    Int b;  // coordinate along sqrt(-d)
};

struct FdReport {
    Int f;
    FdWitness witness;
};

// F(d) by direct ideal search: the least norm of a primitive ideal pi,
// coprime to its conjugate, whose square is principal.
inline FdReport fd_ideals(const Int& d, const Int& norm_cap = Int(10000), CancelToken token = {}) {
    QuadField k(d);
    for (Int m = 2; m <= norm_cap; m += 1) {
        token.check();
        // Primitive ideals of norm m: c = 1, a = m, 0 <= b < m with
        // m | norm(b + w).
        for (Int b = 0; b < m; b += 1) {
            if (!int_divisible(k.elem_norm(b, Int(1)), m)) continue;
            QuadIdeal pi{m, b, 1};
            if (!is_ideal(k, pi)) throw InternalError("norm divisibility did not give an ideal");
            if (!ideal_is_primitive(pi)) continue;
            if (!(ideal_add(pi, ideal_conj(k, pi)) == whole_ring_ideal())) continue;
            QuadIdeal sq = ideal_mul(k, pi, pi);
            if (!ideal_is_principal(k, sq)) continue;
            return FdReport{m, FdWitness{m, b, 1}};
        }
    }
    throw BudgetError("no admissible ideal of norm up to " + format_int(norm_cap));
}

// Primitive solution (a, b) of 4 n^2 = a^2 + d b^2 with gcd(n, a) = 1 and
// b != 0 at this specific n, smallest a first.
inline std::optional<FdWitness> solution_at(const Int& d, const Int& n) {
    for (Int a = 1; a < 2 * n; a += 1) {
        Int rest = 4 * n * n - a * a;
        if (rest <= 0) break;
        if (!int_divisible(rest, d)) continue;
        Int bb = rest / d;
        if (!is_square(bb)) continue;
        Int b = int_sqrt(bb);
        if (b == 0) continue;
        if (int_gcd(n, a) != 1) continue;
        return FdWitness{n, a, b};
    }
    return std::nullopt;
}

// F(d) by the diophantine characterization (valid for d not in {1, 3}):
// the least n >= 2 admitting integers a, b with 4 n^2 = a^2 + d b^2, b != 0,
// and gcd(n, a) = 1.
inline FdReport fd_diophantine(const Int& d, const Int& n_cap = Int(100000),
                               CancelToken token = {}) {
    if (d == 1 || d == 3) throw DomainError("units beyond -1 require the ideal search");
    QuadField k(d);  // validates d squarefree positive
    for (Int n = 2; n <= n_cap; n += 1) {
        token.check();
        if (std::optional<FdWitness> w = solution_at(d, n)) return FdReport{n, *w};
    }
    throw BudgetError("no primitive solution with n up to " + format_int(n_cap));
}

inline FdReport fd(const Int& d, const Int& cap = Int(100000), CancelToken token = {}) {
    if (d == 1 || d == 3) return fd_ideals(d, cap, token);
    return fd_diophantine(d, cap, token);
}

// Every admissible d satisfies 4 F(d)^2 >= 1 + d.
inline bool fd_lower_bound_holds(const Int& d, const FdReport& rep) {
    return 4 * rep.f * rep.f >= 1 + d;
}

// The rank-two lattice endomorphism attached to a primitive solution
// (n, a, b): multiplication by z = (a + b sqrt(-d)) / (2n) on the maximal
// order in its (1, omega) basis.  Its minimal polynomial is n t^2 - a t + n.
struct SolutionDatum {
    QMat mult;        // multiplication-by-z matrix on the maximal order
    IntPoly min_poly; // primitive integer minimal polynomial
    Int denominator;  // d(z) = n
};

inline SolutionDatum solution_datum(const Int& d, const Int& n, const Int& a, const Int& b) {
    QuadField k(d);  // validates d
    if (n < 2) throw DomainError("n must be at least 2");
    if (b == 0) throw DomainError("b must be nonzero");
    if (4 * n * n != a * a + d * b * b) throw DomainError("not a solution of 4n^2 = a^2 + d b^2");
    if (int_gcd(n, a) != 1) throw DomainError("solution is not primitive: gcd(n, a) > 1");
    SolutionDatum out;
    out.mult = QMat(2, 2);
    if (k.ramified_two) {
        // omega = (1 + sqrt(-d))/2: z*1 = (a-b)/(2n) + (b/n) omega,
        // z*omega = -b(1+d)/(4n) + ((a+b)/(2n)) omega.
        out.mult.at(0, 0) = Rat(a - b) / Rat(2 * n);
        out.mult.at(0, 1) = Rat(-b * (1 + d)) / Rat(4 * n);
        out.mult.at(1, 0) = Rat(b) / Rat(n);
        out.mult.at(1, 1) = Rat(a + b) / Rat(2 * n);
    } else {
        out.mult.at(0, 0) = Rat(a) / Rat(2 * n);
        out.mult.at(0, 1) = Rat(-d * b) / Rat(2 * n);
        out.mult.at(1, 0) = Rat(b) / Rat(2 * n);
        out.mult.at(1, 1) = Rat(a) / Rat(2 * n);
    }
    out.min_poly = IntPoly(std::vector<Int>{n, -a, n});
    out.denominator = n;

    // The charpoly route and the denominator-ideal route must agree on d(z).
    std::vector<GaloisOrbitDatum> orbits = orbit_data(out.mult);
    if (orbits.size() != 1 || orbits[0].d != n)
        throw InternalError("orbit denominator disagrees with the solution parameter");
    if (!(orbits[0].min_poly == out.min_poly))
        throw InternalError("minimal polynomial disagrees with the solution parameters");
    QMat inv;
    if (!try_inverse(out.mult, inv)) throw InternalError("multiplication by z is singular");
    IntLattice ambient = standard_lattice(2);
    IntLattice pre = lattice_apply(inv, ambient);
    Int idx = lattice_index(lattice_intersect(ambient, pre), ambient);
    if (idx != n) throw InternalError("denominator ideal norm disagrees with the solution");
    return out;
}

// Squarefree d with Q(sqrt(disc)) = Q(sqrt(-d)) for the positive definite
// binary form A x^2 + B x y + C y^2.
inline Int form_field_parameter(const Int& a, const Int& b, const Int& c) {
    Int disc = b * b - 4 * a * c;
    if (a <= 0 || disc >= 0) throw DomainError("form is not positive definite");
    return squarefree_part(-disc);
}

// F(d)^e as an exact integer.
inline Int complexity_class_value(const Int& d, long e, const Int& cap = Int(100000),
                                  CancelToken token = {}) {
    if (e < 0) throw DomainError("exponent must be non-negative");
    FdReport rep = fd(d, cap, token);
    return int_pow(rep.f, static_cast<unsigned long>(e));
}

}  // namespace nilwreath

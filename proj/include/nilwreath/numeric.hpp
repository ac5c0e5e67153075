#pragma once

#include <gmpxx.h>

#include <atomic>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nilwreath/errors.hpp"

namespace nilwreath {

using Int = mpz_class;
using Rat = mpq_class;

struct CancelToken {
    const std::atomic<bool>* flag = nullptr;
    bool cancelled() const { return flag && flag->load(std::memory_order_relaxed); }
    void check() const {
        if (cancelled()) throw CancelledError();
    }
};

inline Int int_gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// Floor division; GMP's fdiv, so -7 fdiv 2 == -4.
inline Int int_fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int int_fmod(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline bool int_divisible(const Int& a, const Int& b) {
    return mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()) != 0;
}

inline Int int_divexact(const Int& a, const Int& b) {
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline bool is_square(const Int& a) {
    return a >= 0 && mpz_perfect_square_p(a.get_mpz_t()) != 0;
}

inline Int int_sqrt(const Int& a) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

inline bool is_prime(const Int& p) {
    return mpz_probab_prime_p(p.get_mpz_t(), 40) != 0;
}

// p-adic valuation of a nonzero integer.
inline unsigned long valuation(const Int& n, const Int& p) {
    if (n == 0) throw DomainError("valuation of zero");
    Int m;
    unsigned long v = mpz_remove(m.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    return v;
}

// Trial-division factorization, smallest prime first.  Inputs here are small
// by contract (caps guard every caller); no need for anything cleverer.
inline std::vector<std::pair<Int, unsigned long>> factor_int(Int n) {
    if (n < 0) n = -n;
    if (n == 0) throw DomainError("factorization of zero");
    std::vector<std::pair<Int, unsigned long>> out;
    auto strip = [&](const Int& p) {
        if (int_divisible(n, p)) {
            unsigned long v = mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
            out.emplace_back(p, v);
        }
    };
    strip(2);
    strip(3);
    Int p = 5;
    while (p * p <= n) {
        strip(p);
        strip(p + 2);
        p += 6;
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline Int squarefree_part(const Int& n) {
    if (n == 0) throw DomainError("squarefree part of zero");
    Int r = n < 0 ? Int(-1) : Int(1);
    for (const auto& [p, e] : factor_int(n)) {
        if (e % 2 == 1) r *= p;
    }
    return r;
}

// Number of prime divisors counted with multiplicity (of |n|).
inline unsigned long prime_omega(const Int& n) {
    unsigned long total = 0;
    for (const auto& [p, e] : factor_int(n)) total += e;
    return total;
}

inline std::vector<long> primes_up_to(long bound) {
    std::vector<bool> sieve(static_cast<size_t>(bound) + 1, true);
    std::vector<long> primes;
    for (long i = 2; i <= bound; ++i) {
        if (!sieve[static_cast<size_t>(i)]) continue;
        primes.push_back(i);
        for (long j = 2 * i; j <= bound; j += i) sieve[static_cast<size_t>(j)] = false;
    }
    return primes;
}

inline Int int_factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline long euler_phi(long m) {
    long result = m, n = m;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw DomainError("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool rat_is_integer(const Rat& r) { return r.get_den() == 1; }

inline Int rat_floor(const Rat& r) { return int_fdiv(r.get_num(), r.get_den()); }

// Valuation extends to nonzero rationals.
inline long rat_valuation(const Rat& r, const Int& p) {
    if (r == 0) throw DomainError("valuation of zero");
    return static_cast<long>(valuation(r.get_num(), p)) -
           static_cast<long>(valuation(r.get_den(), p));
}

inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (base == 0) {
        if (e < 0) throw DomainError("negative power of zero");
        return Rat(0);
    }
    Rat b = e < 0 ? Rat(1) / base : base;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    Rat r(1);
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline std::string format_int(const Int& n) { return n.get_str(); }

// Canonical rational rendering: "p/q" reduced, "p" when q == 1.
inline std::string format_rat(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline bool parse_int_checked(const std::string& s, Int& out) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (size_t j = i; j < s.size(); ++j) {
        if (s[j] < '0' || s[j] > '9') return false;
    }
    out = Int(s, 10);
    return true;
}

inline Int parse_int(const std::string& s, const std::string& where = "") {
    Int v;
    if (!parse_int_checked(s, v)) {
        throw SchemaError("not an integer: \"" + s + "\"" + (where.empty() ? "" : " at " + where));
    }
    return v;
}

inline Rat parse_rat(const std::string& s, const std::string& where = "") {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        return Rat(parse_int(s, where));
    }
    Int num = parse_int(s.substr(0, slash), where);
    Int den = parse_int(s.substr(slash + 1), where);
    if (den == 0) throw SchemaError("zero denominator in \"" + s + "\"" + (where.empty() ? "" : " at " + where));
    Rat r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace nilwreath

#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nilwreath/lie.hpp"

namespace nilwreath {

// Baker-Campbell-Hausdorff products, exact, for nilpotency class <= 8.
//
// Dynkin's form: log(exp x exp y) is the sum, over tuples of blocks
// (r_1,s_1),...,(r_m,s_m) with r_i + s_i >= 1, of
//
//   (-1)^(m-1) / (m * w * prod r_i! s_i!) * [x^r_1 y^s_1 ... x^r_m y^s_m]
//
// where w is the total letter count and the bracket is the right-nested
// commutator of the spelled-out word.  Contributions are aggregated per word
// into a table computed once; products then evaluate the table against a
// specific algebra's bracket.

constexpr long kBchClassCap = 8;

namespace detail {

struct BchTableBuilder {
    std::map<std::string, Rat> acc;
    std::vector<std::pair<long, long>> blocks;

    void emit() {
        size_t m = blocks.size();
        std::string word;
        Rat denom(1);
        for (const auto& [r, s] : blocks) {
            word.append(static_cast<size_t>(r), 'x');
            word.append(static_cast<size_t>(s), 'y');
            denom *= Rat(int_factorial(r) * int_factorial(s));
        }
        long w = static_cast<long>(word.size());
        // Words whose two last letters agree have vanishing bracket.
        if (w >= 2 && word[word.size() - 1] == word[word.size() - 2]) return;
        denom *= Rat(Int(m) * Int(w));
        Rat coeff = Rat(m % 2 == 1 ? 1 : -1) / denom;
        acc[word] += coeff;
    }

    void extend(long remaining) {
        if (!blocks.empty()) emit();
        if (remaining == 0) return;
        for (long total = 1; total <= remaining; ++total) {
            for (long r = 0; r <= total; ++r) {
                blocks.push_back({r, total - r});
                extend(remaining - total);
                blocks.pop_back();
            }
        }
    }
};

inline const std::vector<std::pair<std::string, Rat>>& bch_table() {
    static const std::vector<std::pair<std::string, Rat>> table = [] {
        BchTableBuilder b;
        b.extend(kBchClassCap);
        std::vector<std::pair<std::string, Rat>> out;
        for (auto& [word, coeff] : b.acc) {
            if (coeff != 0) out.emplace_back(word, coeff);
        }
        // Ascending length so evaluation can stop at the nilpotency class.
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b2) {
            if (a.first.size() != b2.first.size()) return a.first.size() < b2.first.size();
            return a.first < b2.first;
        });
        return out;
    }();
    return table;
}

}  // namespace detail

// log(exp x exp y) in the given algebra; exact.
inline QVec bch_product(const NilLieAlg& alg, const QVec& x, const QVec& y) {
    if (alg.info.nil_class > kBchClassCap)
        throw BudgetError("nilpotency class " + std::to_string(alg.info.nil_class) +
                          " exceeds the product expansion cap " + std::to_string(kBchClassCap));
    if (x.size() != alg.dim || y.size() != alg.dim) throw DomainError("vector dimension mismatch");
    QVec out = qvec_zero(alg.dim);
    long cls = alg.info.nil_class;
    for (const auto& [word, coeff] : detail::bch_table()) {
        if (static_cast<long>(word.size()) > cls) break;
        QVec val = (word.back() == 'x') ? x : y;
        for (size_t i = word.size() - 1; i-- > 0;) {
            val = alg.bracket(word[i] == 'x' ? x : y, val);
            if (qvec_is_zero(val)) break;
        }
        if (qvec_is_zero(val)) continue;
        out = qvec_add(out, qvec_scale(val, coeff));
    }
    return out;
}

inline QVec bch_inverse(const QVec& x) { return qvec_neg(x); }

// x^t in the group: scaling in log coordinates.
inline QVec bch_power(const QVec& x, const Rat& t) { return qvec_scale(x, t); }

// Conjugate a^-1 * x * a.
inline QVec bch_conjugate(const NilLieAlg& alg, const QVec& a, const QVec& x) {
    return bch_product(alg, bch_product(alg, qvec_neg(a), x), a);
}

// Commutator x^-1 y^-1 x y.
inline QVec bch_commutator(const NilLieAlg& alg, const QVec& x, const QVec& y) {
    return bch_product(alg, bch_product(alg, qvec_neg(x), qvec_neg(y)), bch_product(alg, x, y));
}

}  // namespace nilwreath

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nilwreath/grading.hpp"
#include "nilwreath/malcev.hpp"

namespace nilwreath {

// Virtual endomorphisms of a lattice group and the induced self-similar
// action on the rooted tree over the coset alphabet.
//
// Data: a lattice group G with log basis U and a log-linear morphism f of
// the ambient algebra.  The domain subgroup is G' = {g in G : f(g) in G};
// its left cosets in G are the alphabet, and g(a w) = b g_a(w) with
// b = the coset of g a and g_a = f(tau_b^-1 g tau_a).

struct VirtualEndo {
    MultLattice lat;
    QMat f;
    std::vector<QVec> transversal;  // identity first, BFS order
    Int index;
    bool cross_checked{false};  // additive index agreed with the coset count
};

namespace detail {

inline void require_morphism(const NilLieAlg& alg, const QMat& f) {
    if (f.rows() != alg.dim || f.cols() != alg.dim)
        throw DomainError("map dimension does not match the algebra");
    for (size_t i = 0; i < alg.dim; ++i) {
        for (size_t j = i + 1; j < alg.dim; ++j) {
            QVec lhs = alg.bracket(f.column(i), f.column(j));
            QVec rhs = f * alg.c[i][j];
            if (!(lhs == rhs))
                throw DomainError("not a morphism: bracket of images differs on pair (" +
                                  std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        }
    }
}

// Left cosets of the subgroup cut out by `member` inside the group generated
// by `gens`, by breadth-first multiplication.  Optionally reports every
// residual rep(g t)^-1 (g t) to `schreier` (the subgroup's generators).
inline std::vector<QVec> coset_transversal(const NilLieAlg& alg, const std::vector<QVec>& gens,
                                           const std::function<bool(const QVec&)>& member,
                                           size_t cap,
                                           const std::function<void(const QVec&)>& schreier = {},
                                           CancelToken token = {}) {
    std::vector<QVec> reps{qvec_zero(alg.dim)};
    for (size_t at = 0; at < reps.size(); ++at) {
        token.check();
        for (size_t i = 0; i < gens.size(); ++i) {
            for (int sign : {1, -1}) {
                QVec g = sign == 1 ? gens[i] : qvec_neg(gens[i]);
                QVec delta = bch_product(alg, g, reps[at]);
                bool placed = false;
                for (const QVec& tau : reps) {
                    QVec residual = bch_product(alg, qvec_neg(tau), delta);
                    if (member(residual)) {
                        if (schreier && !qvec_is_zero(residual)) schreier(residual);
                        placed = true;
                        break;
                    }
                }
                if (!placed) {
                    reps.push_back(delta);
                    if (reps.size() > cap)
                        throw BudgetError("coset enumeration exceeded the cap of " +
                                          std::to_string(cap));
                }
            }
        }
    }
    return reps;
}

}  // namespace detail

inline bool domain_member(const VirtualEndo& e, const QVec& x) {
    return lattice_group_member(e.lat, x) && lattice_group_member(e.lat, e.f * x);
}

inline VirtualEndo build_endo(const MultLattice& lat, const QMat& f, size_t coset_cap = 4096,
                              CancelToken token = {}) {
    detail::require_morphism(lat.alg, f);
    VirtualEndo e;
    e.lat = lat;
    e.f = f;
    std::vector<QVec> gens = lat.u.columns();
    auto member = [&](const QVec& x) {
        return lattice_group_member(lat, x) && lattice_group_member(lat, f * x);
    };
    e.transversal = detail::coset_transversal(lat.alg, gens, member, coset_cap, {}, token);
    e.index = Int(e.transversal.size());

    // When the log lattice is closed under addition the group coincides with
    // the additive lattice, and the coset count must match the additive
    // index [L : L n f^-1 L]; checked whenever both sides are available.
    bool additive = true;
    for (size_t i = 0; i < lat.alg.dim && additive; ++i) {
        for (size_t j = 0; j < lat.alg.dim && additive; ++j) {
            QVec prod = bch_product(lat.alg, lat.u.column(i), lat.u.column(j));
            for (const Rat& c : lat.u_inv * prod)
                if (!rat_is_integer(c)) {
                    additive = false;
                    break;
                }
        }
    }
    QMat finv;
    if (additive && try_inverse(f, finv)) {
        IntLattice ambient = lattice_from_columns(lat.u);
        IntLattice pre = lattice_apply(finv, ambient);
        Int add_index = lattice_index(lattice_intersect(ambient, pre), ambient);
        if (add_index != e.index)
            throw InternalError("coset count disagrees with the additive index");
        e.cross_checked = true;
    }
    return e;
}

struct CertifyReport {
    bool self_similar{false};  // no algebraic-integer eigenvalue on the center
    bool free_action{false};   // no algebraic-integer eigenvalue at all
    bool fractal{false};       // f maps the domain subgroup onto the group
    SpectralReport spectral;
};

inline CertifyReport certify_datum(const VirtualEndo& e) {
    CertifyReport rep;
    rep.spectral = spectral_flags(orbit_data(center_restriction(e.lat.alg, e.f)), orbit_data(e.f));
    rep.self_similar = rep.spectral.in_s;
    rep.free_action = rep.spectral.in_v;
    QMat finv;
    rep.fractal = true;
    if (!try_inverse(e.f, finv)) {
        rep.fractal = false;  // a singular map is never onto the group
    } else {
        for (size_t i = 0; i < e.lat.alg.dim; ++i) {
            if (!lattice_group_member(e.lat, finv * e.lat.u.column(i))) {
                rep.fractal = false;
                break;
            }
        }
    }
    return rep;
}

// -- stabilizer tower -------------------------------------------------------

// Sifting table: one row per leading Malcev position, lead positive; rows
// generate the subgroup of everything sifted in.  Euclid on lead values,
// with all rewriting staying inside the generated subgroup.
class SiftTable {
public:
    explicit SiftTable(const MultLattice* lat)
        : lat_(lat), rows_(lat->alg.dim), coords_(lat->alg.dim) {}

    void sift(QVec x) {
        while (true) {
            QVec t = malcev_coordinates(*lat_, x);
            size_t k = 0;
            while (k < t.size() && t[k] == 0) ++k;
            if (k == t.size()) return;  // identity
            if (!rat_is_integer(t[k])) throw InternalError("sifting a non-group element");
            if (t[k] < 0) {
                x = qvec_neg(x);
                t[k] = -t[k];
            }
            if (!rows_[k]) {
                rows_[k] = x;
                coords_[k] = t;
                return;
            }
            Int a = (*coords_[k])[k].get_num();
            Int b = t[k].get_num();
            Int q = int_fdiv(b, a);
            QVec reduced = bch_product(lat_->alg, qvec_scale(*rows_[k], Rat(-q)), x);
            if (int_fmod(b, a) == 0) {
                x = std::move(reduced);  // lead eliminated, continue deeper
            } else {
                QVec old = *rows_[k];
                QVec tr = malcev_coordinates(*lat_, reduced);
                for (const Rat& c : tr)
                    if (!rat_is_integer(c)) throw InternalError("sifting left the group");
                rows_[k] = std::move(reduced);
                coords_[k] = std::move(tr);
                x = std::move(old);  // re-sift the displaced row (Euclid)
            }
        }
    }

    std::vector<QVec> generators() const {
        std::vector<QVec> out;
        for (const auto& r : rows_)
            if (r) out.push_back(*r);
        return out;
    }

private:
    const MultLattice* lat_;
    std::vector<std::optional<QVec>> rows_;
    std::vector<std::optional<QVec>> coords_;
};

struct GoodnessReport {
    std::vector<Int> indices;  // [G_l : G_{l+1}] for l = 0..depth-1
    bool is_good{false};
};

// G_l = elements whose first l+1 images under iterated f stay in G; the
// datum is good (to the checked depth) when all successive indices agree.
inline GoodnessReport goodness(const VirtualEndo& e, size_t depth, size_t coset_cap = 4096,
                               CancelToken token = {}) {
    if (depth == 0) throw DomainError("goodness depth must be at least 1");
    const NilLieAlg& alg = e.lat.alg;
    GoodnessReport rep;
    std::vector<QVec> gens = e.lat.u.columns();
    for (size_t level = 0; level < depth; ++level) {
        auto member = [&](const QVec& x) {
            QVec y = x;
            for (size_t j = 0; j <= level + 1; ++j) {
                if (!lattice_group_member(e.lat, y)) return false;
                if (j <= level) y = e.f * y;
            }
            return true;
        };
        SiftTable next(&e.lat);
        auto schreier = [&](const QVec& residual) { next.sift(residual); };
        std::vector<QVec> reps =
            detail::coset_transversal(alg, gens, member, coset_cap, schreier, token);
        rep.indices.push_back(Int(reps.size()));
        if (level == 0 && rep.indices[0] != e.index)
            throw InternalError("level zero index differs from the coset count");
        if (level > 0 && rep.indices[level] > rep.indices[level - 1])
            throw InternalError("stabilizer indices increased along the tower");
        gens = next.generators();
    }
    rep.is_good = true;
    for (const Int& idx : rep.indices)
        if (idx != rep.indices[0]) rep.is_good = false;
    return rep;
}

// -- the tree action ----------------------------------------------------------

// Memoizes the wreath recursion step (state, letter) -> (image, next state);
// the states of a contracting datum form a small set, so orbit computations
// revisit the same steps constantly.
struct ActCache {
    std::map<std::pair<QVec, size_t>, std::pair<size_t, QVec>> step;
};

inline std::vector<size_t> act(const VirtualEndo& e, QVec gamma, const std::vector<size_t>& word,
                               ActCache* cache = nullptr) {
    if (!lattice_group_member(e.lat, gamma)) throw DomainError("element is not in the group");
    std::vector<size_t> out;
    out.reserve(word.size());
    for (size_t letter : word) {
        if (letter >= e.transversal.size())
            throw DomainError("letter " + std::to_string(letter) + " outside the alphabet");
        if (cache) {
            auto it = cache->step.find({gamma, letter});
            if (it != cache->step.end()) {
                out.push_back(it->second.first);
                gamma = it->second.second;
                continue;
            }
        }
        QVec delta = bch_product(e.lat.alg, gamma, e.transversal[letter]);
        bool placed = false;
        for (size_t j = 0; j < e.transversal.size(); ++j) {
            QVec residual = bch_product(e.lat.alg, qvec_neg(e.transversal[j]), delta);
            if (domain_member(e, residual)) {
                out.push_back(j);
                QVec next = e.f * residual;
                if (cache) cache->step[{gamma, letter}] = {j, next};
                gamma = std::move(next);
                placed = true;
                break;
            }
        }
        if (!placed) throw InternalError("transversal does not cover the group");
    }
    return out;
}

struct TransitivityReport {
    bool transitive{false};
    Int orbit_size;
    Int full_size;
};

// Orbit of the leftmost branch under the generators; the action is level
// transitive at `depth` iff the orbit is the whole level.
inline TransitivityReport level_transitive(const VirtualEndo& e, size_t depth,
                                           size_t node_budget = 100000, CancelToken token = {}) {
    TransitivityReport rep;
    rep.full_size = int_pow(e.index, depth);
    if (rep.full_size > Int(static_cast<unsigned long>(node_budget)))
        throw BudgetError("level of size " + format_int(rep.full_size) +
                          " exceeds the node budget");
    std::set<std::vector<size_t>> orbit;
    std::vector<std::vector<size_t>> queue{std::vector<size_t>(depth, 0)};
    orbit.insert(queue[0]);
    ActCache cache;
    for (size_t at = 0; at < queue.size(); ++at) {
        token.check();
        for (size_t i = 0; i < e.lat.alg.dim; ++i) {
            for (int sign : {1, -1}) {
                QVec g = qvec_scale(e.lat.u.column(i), Rat(sign));
                std::vector<size_t> img = act(e, g, queue[at], &cache);
                if (orbit.insert(img).second) {
                    queue.push_back(std::move(img));
                    if (orbit.size() > node_budget)
                        throw BudgetError("orbit enumeration exceeded the node budget");
                }
            }
        }
    }
    rep.orbit_size = Int(orbit.size());
    rep.transitive = (rep.orbit_size == rep.full_size);
    return rep;
}

// Does gamma fix some vertex at the given depth?  Depth-first over the
// letters whose subtree gamma enters.
inline bool has_fixed_point(const VirtualEndo& e, const QVec& gamma, size_t depth,
                            size_t node_budget = 1000000, CancelToken token = {}) {
    if (!lattice_group_member(e.lat, gamma)) throw DomainError("element is not in the group");
    size_t visited = 0;
    std::function<bool(const QVec&, size_t)> dfs = [&](const QVec& g, size_t d) -> bool {
        token.check();
        if (++visited > node_budget)
            throw BudgetError("fixed-point search exceeded the node budget");
        if (d == 0) return true;
        for (const QVec& tau : e.transversal) {
            QVec conj = bch_product(e.lat.alg, bch_product(e.lat.alg, qvec_neg(tau), g), tau);
            if (!domain_member(e, conj)) continue;
            if (dfs(e.f * conj, d - 1)) return true;
        }
        return false;
    };
    return dfs(gamma, depth);
}

// -- fractal data from gradings ----------------------------------------------

struct FractalReport {
    long d{0};  // accepted expansion parameter; the base is d + 1
    VirtualEndo endo;
    CertifyReport cert;
};

// Searches for an integer-expansion automorphism along a non-negative
// special grading, scaling degree-k pieces by (d+1)^k, and returns the
// induced virtual endomorphism (its inverse), certified fractal.
inline FractalReport build_fractal_datum(const MultLattice& lat, const Grading& grading,
                                         long d_cap = 64, size_t coset_cap = 4096,
                                         CancelToken token = {}) {
    GradingCheck chk = check_grading(lat.alg, grading);
    if (!chk.valid) throw DomainError("not a grading");
    if (!chk.non_negative || !chk.special)
        throw DomainError("fractal construction needs a non-negative special grading");
    // The lattice basis must be graded: each column inside a single piece.
    for (size_t i = 0; i < lat.alg.dim; ++i) {
        bool found = false;
        for (const auto& [deg, basis] : grading.pieces) {
            std::vector<QVec> cols;
            for (size_t j = 0; j < basis.cols(); ++j) cols.push_back(basis.column(j));
            if (in_echelon_span(row_echelon_basis(cols), lat.u.column(i))) {
                found = true;
                break;
            }
        }
        if (!found) throw DomainError("lattice basis is not adapted to the grading");
    }
    for (long d = 1; d <= d_cap; ++d) {
        token.check();
        QMat g = automorphism_from_grading(lat.alg, grading, Rat(d + 1));
        bool scales = true;
        for (size_t i = 0; i < lat.alg.dim && scales; ++i)
            scales = lattice_group_member(lat, g * lat.u.column(i));
        if (!scales) continue;
        FractalReport rep;
        rep.d = d;
        rep.endo = build_endo(lat, inverse(g), coset_cap, token);
        rep.cert = certify_datum(rep.endo);
        if (!rep.cert.fractal) throw InternalError("scaling automorphism produced a non-fractal datum");
        return rep;
    }
    throw DomainError("no expanding automorphism scales the lattice within the search cap of " +
                      std::to_string(d_cap));
}

// -- morphisms from generator images -------------------------------------------

// The unique linear extension of v_k -> w_k that is a bracket morphism,
// obtained by closing the assignment under brackets.  Fails when the inputs
// do not generate the algebra or the forced images are inconsistent.
inline QMat extend_morphism(const NilLieAlg& alg, const std::vector<std::pair<QVec, QVec>>& images) {
    if (images.empty()) throw DomainError("no generator images given");
    for (const auto& [v, w] : images)
        if (v.size() != alg.dim || w.size() != alg.dim)
            throw DomainError("generator image dimension does not match the algebra");

    std::vector<std::pair<QVec, QVec>> span_pairs;
    std::vector<QVec> echelon;
    auto try_add = [&](const QVec& v, const QVec& w) {
        if (in_echelon_span(echelon, v)) return;
        span_pairs.emplace_back(v, w);
        std::vector<QVec> rows = echelon;
        rows.push_back(v);
        echelon = row_echelon_basis(rows);
    };
    for (const auto& [v, w] : images) try_add(v, w);
    // Bracket closure: images of brackets are forced by the morphism law.
    for (size_t i = 0; i < span_pairs.size(); ++i) {
        for (size_t j = 0; j < i; ++j) {
            QVec bv = alg.bracket(span_pairs[i].first, span_pairs[j].first);
            if (qvec_is_zero(bv)) continue;
            QVec bw = alg.bracket(span_pairs[i].second, span_pairs[j].second);
            try_add(bv, bw);
        }
    }
    if (span_pairs.size() < alg.dim)
        throw DomainError("generators span only dimension " + std::to_string(span_pairs.size()) +
                          " of " + std::to_string(alg.dim) + " after bracket closure");

    QMat v_mat(alg.dim, alg.dim), w_mat(alg.dim, alg.dim);
    for (size_t k = 0; k < alg.dim; ++k) {
        for (size_t i = 0; i < alg.dim; ++i) {
            v_mat.at(i, k) = span_pairs[k].first[i];
            w_mat.at(i, k) = span_pairs[k].second[i];
        }
    }
    QMat f = w_mat * inverse(v_mat);
    for (size_t k = 0; k < images.size(); ++k)
        if (!(f * images[k].first == images[k].second))
            throw DomainError("inconsistent image for generator " + std::to_string(k + 1));
    detail::require_morphism(alg, f);
    return f;
}

}  // namespace nilwreath

// Acceptance gate: one PASS/FAIL line per criterion, each with its wall time
// and limit; the exit code is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nilwreath/bch.hpp"
#include "nilwreath/chevalley.hpp"
#include "nilwreath/run.hpp"

using namespace nilwreath;

namespace {

struct Check {
    bool ok = true;
    std::string note;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            note = what;
        }
    }
};

struct Gate {
    int failures = 0;

    void criterion(int num, const std::string& label, double limit_s,
                   const std::function<void(Check&)>& body) {
        Check c;
        auto t0 = std::chrono::steady_clock::now();
        try {
            body(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.ok && dt >= limit_s) c.expect(false, "time limit exceeded");
        if (!c.ok) ++failures;
        std::printf("%s  %2d  %-58s  %7.3f s  (limit %g s)%s%s\n", c.ok ? "PASS" : "FAIL", num,
                    label.c_str(), dt, limit_s, c.note.empty() ? "" : "  -- ", c.note.c_str());
        std::fflush(stdout);
    }
};

// -- shared random helpers (fixed seeds keep every run identical) -------------

Rat rand_rat(std::mt19937& rng, int num_bound, int den_bound) {
    std::uniform_int_distribution<int> num(-num_bound, num_bound);
    std::uniform_int_distribution<int> den(1, den_bound);
    return make_rat(Int(num(rng)), Int(den(rng)));
}

Rat rand_rat_nonzero(std::mt19937& rng, int num_bound, int den_bound) {
    for (;;) {
        Rat r = rand_rat(rng, num_bound, den_bound);
        if (r != 0) return r;
    }
}

QMat rand_invertible(std::mt19937& rng, size_t n, int num_bound = 4, int den_bound = 3) {
    for (;;) {
        QMat m(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) m.at(i, j) = rand_rat(rng, num_bound, den_bound);
        if (det(m) != 0) return m;
    }
}

// Product of integer shears: determinant 1, integral inverse.
QMat rand_unimodular(std::mt19937& rng, size_t n) {
    QMat g = QMat::identity(n);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int step = 0; step < 6; ++step) {
        int i = pick(rng), j = pick(rng);
        int k = coef(rng);
        if (i == j || k == 0) continue;
        for (size_t c = 0; c < n; ++c)
            g.at(static_cast<size_t>(j), c) += Rat(k) * g.at(static_cast<size_t>(i), c);
    }
    return g;
}

QMat direct_sum(const QMat& a, const QMat& b) {
    QMat m(a.rows() + b.rows(), a.cols() + b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return m;
}

QMat conjugate(const QMat& g, const QMat& h) { return g * h * inverse(g); }

// Multiplication by z = (a + b sqrt(-d)) / m on the maximal order of
// Q(sqrt(-d)) in its (1, omega) basis.
QMat mult_matrix(const Int& d, const Int& a, const Int& b, const Int& m) {
    bool ramified = int_fmod(d, 4) == 3;
    QMat f(2, 2);
    if (ramified) {
        Rat u = make_rat(a - b, m), v = make_rat(2 * b, m);
        f.at(0, 0) = u;
        f.at(0, 1) = -v * make_rat(1 + d, 4);
        f.at(1, 0) = v;
        f.at(1, 1) = u + v;
    } else {
        Rat u = make_rat(a, m), v = make_rat(b, m);
        f.at(0, 0) = u;
        f.at(0, 1) = Rat(-d) * v;
        f.at(1, 0) = v;
        f.at(1, 1) = u;
    }
    return f;
}

Grading natural_grading(const NilLieAlg& alg, const std::vector<long>& weights) {
    std::vector<std::pair<long, std::vector<QVec>>> buckets;
    for (size_t i = 0; i < weights.size(); ++i) {
        long w = weights[i];
        auto it = std::find_if(buckets.begin(), buckets.end(),
                               [w](const auto& b) { return b.first == w; });
        if (it == buckets.end()) {
            buckets.push_back({w, {alg.basis_vector(i)}});
        } else {
            it->second.push_back(alg.basis_vector(i));
        }
    }
    Grading g;
    for (auto& [w, cols] : buckets) g.pieces.emplace_back(w, QMat::from_columns(cols));
    return g;
}

json load_demo(const std::string& name) {
    std::ifstream in(std::string(NILWREATH_DEMOS) + "/" + name);
    if (!in) throw DomainError("missing demo file: " + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return json::parse(ss.str());
}

}  // namespace

int main() {
    Gate gate;

    gate.criterion(1, "exact F(d) values at d = 1, 3, 7, 15", 1.0, [](Check& c) {
        // Limit is per value; the two routes agree on which one applies.
        double slowest = 0;
        auto timed = [&](const std::function<Int()>& f) {
            auto t0 = std::chrono::steady_clock::now();
            Int v = f();
            slowest = std::max(
                slowest,
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
            return v;
        };
        c.expect(timed([] { return fd_ideals(Int(1)).f; }) == 5, "F(1) != 5");
        c.expect(timed([] { return fd_ideals(Int(3)).f; }) == 7, "F(3) != 7");
        c.expect(timed([] { return fd(Int(7)).f; }) == 2, "F(7) != 2");
        c.expect(timed([] { return fd(Int(15)).f; }) == 2, "F(15) != 2");
        c.expect(slowest < 1.0, "a single F(d) took over a second");
    });

    gate.criterion(2, "diophantine route agrees with ideal route, d <= 200", 30.0, [](Check& c) {
        for (Int d = 2; d <= 200; d += 1) {
            if (squarefree_part(d) != d || d == 3) continue;
            Int dio = fd_diophantine(d).f;
            Int ide = fd_ideals(d).f;
            c.expect(dio == ide, "routes disagree at d = " + format_int(d));
            if (!c.ok) return;
        }
    });

    gate.criterion(3, "dichotomy: F >= 3 outside {7, 15}, 4F^2 >= 1 + d", 30.0, [](Check& c) {
        for (Int d = 1; d <= 200; d += 1) {
            if (squarefree_part(d) != d) continue;
            FdReport rep = fd(d);
            if (d != 7 && d != 15)
                c.expect(rep.f >= 3, "F(" + format_int(d) + ") < 3");
            c.expect(fd_lower_bound_holds(d, rep), "lower bound fails at d = " + format_int(d));
            if (!c.ok) return;
        }
    });

    gate.criterion(4, "cp class at discriminant -7 with e = 126 is 2^126", 1.0, [](Check& c) {
        Int v = complexity_class_value(Int(7), 126);
        c.expect(v == Int("85070591730234615865843651857942052864"), "wrong value");
        c.expect(v == int_pow(Int(2), 126), "value is not 2^126");
    });

    gate.criterion(5, "denominator of quadratic z: minpoly = ideal norm, 30 samples", 5.0,
                   [](Check& c) {
        std::mt19937 rng(20260819);
        const long ds[] = {1, 2, 3, 5, 6, 7, 10, 11, 13, 15, 17, 19, 21, 23};
        std::uniform_int_distribution<int> pick_d(0, 13);
        std::uniform_int_distribution<long> pick_a(-30, 30);
        std::uniform_int_distribution<long> pick_b(1, 6);
        std::uniform_int_distribution<long> pick_m(1, 15);
        for (int s = 0; s < 30; ++s) {
            Int d(ds[pick_d(rng)]);
            Int a(pick_a(rng)), b(pick_b(rng)), m(pick_m(rng));
            // Leading coefficient of the primitive minimal polynomial of
            // z = (a + b sqrt(-d)) / m.
            Int lead = m * m, mid = 2 * a * m, norm = a * a + d * b * b;
            Int content = int_gcd(lead, int_gcd(mid, norm));
            Int from_poly = int_divexact(lead, content);
            // The same number from the matrix spectrum and from the
            // definitional denominator-ideal index in the maximal order.
            QMat f = mult_matrix(d, a, b, m);
            std::vector<GaloisOrbitDatum> orbits = orbit_data(f);
            c.expect(orbits.size() == 1 && orbits[0].multiplicity == 1, "not a single orbit");
            if (!c.ok) return;
            c.expect(orbits[0].d == from_poly, "orbit d differs from the minpoly lead");
            IntLattice o2 = standard_lattice(2);
            Int ideal_norm =
                lattice_index(lattice_intersect(o2, lattice_apply(inverse(f), o2)), o2);
            c.expect(ideal_norm == from_poly, "denominator-ideal norm differs");
            c.expect(height(f) == from_poly, "height differs from d(z)");
            if (!c.ok) return;
        }
    });

    gate.criterion(6, "height laws: conjugation, direct sums, semisimple part", 30.0,
                   [](Check& c) {
        std::mt19937 rng(6283185);
        for (int s = 0; s < 50 && c.ok; ++s) {
            bool big = s % 2;  // alternate 3x3 and 4x4
            // Block sums multiply heights; integral conjugation preserves them.
            QMat a = rand_invertible(rng, 2);
            QMat b = big ? rand_invertible(rng, 2) : rand_invertible(rng, 1);
            QMat h = direct_sum(a, b);
            c.expect(height(h) == height(a) * height(b), "block sum height is not the product");
            QMat g = rand_unimodular(rng, h.rows());
            c.expect(height(conjugate(g, h)) == height(h), "conjugation changed the height");

            // s*u with commuting factors: the height lives on the semisimple part.
            QMat semi, uni;
            if (big) {
                // Twice the same irreducible companion block, sheared across copies.
                Rat c2(std::uniform_int_distribution<int>(1, 4)(rng));
                Rat c1(std::uniform_int_distribution<int>(-4, 4)(rng));
                Rat c0 = c1 * c1 + c2;  // negative discriminant: irreducible
                QMat comp(2, 2);
                comp.at(0, 1) = -c0 / c2;
                comp.at(1, 0) = 1;
                comp.at(1, 1) = -c1 / c2;
                semi = direct_sum(comp, comp);
                uni = QMat::identity(4);
                uni.at(2, 0) = 1;
                uni.at(3, 1) = 1;
            } else {
                Rat r = rand_rat_nonzero(rng, 4, 3);
                Rat r2 = rand_rat_nonzero(rng, 4, 3);
                semi = QMat(3, 3);
                semi.at(0, 0) = r;
                semi.at(1, 1) = r;
                semi.at(2, 2) = r2;
                uni = QMat::identity(3);
                uni.at(0, 1) = 1;  // shears the repeated-eigenvalue plane
            }
            QMat g2 = rand_unimodular(rng, semi.rows());
            QMat m = conjugate(g2, semi * uni);
            JordanChevalley jc = jordan_chevalley_multiplicative(m);
            c.expect(jc.s == conjugate(g2, semi), "recovered semisimple part differs");
            c.expect(height(m) == height(semi), "ht(h) != ht(h_s)");
        }
    });

    gate.criterion(7, "lattice bound cp >= ht, equality on constructed lattices", 30.0,
                   [](Check& c) {
        std::mt19937 rng(314159);
        std::uniform_int_distribution<int> entry(-5, 5);
        // 50 random pairs for the inequality.
        for (int s = 0; s < 50 && c.ok; ++s) {
            size_t n = 2 + static_cast<size_t>(s % 2);
            QMat h = rand_invertible(rng, n);
            QMat basis(n, n);
            do {
                for (size_t i = 0; i < n; ++i)
                    for (size_t j = 0; j < n; ++j) basis.at(i, j) = Rat(entry(rng));
            } while (det(basis) == 0);
            IntLattice lat = lattice_from_columns(basis);
            c.expect(cp_lattice(h, lat) >= height(h), "cp below height");
        }
        // 48 conjugated diagonals: the search certifies a minimal lattice.
        for (int s = 0; s < 48 && c.ok; ++s) {
            size_t n = 2 + static_cast<size_t>(s % 2);
            QMat h0(n, n);
            for (size_t i = 0; i < n; ++i) h0.at(i, i) = rand_rat_nonzero(rng, 4, 3);
            QMat h = conjugate(rand_unimodular(rng, n), h0);
            MinimalSearchReport rep = minimal_lattice_search(h, standard_lattice(n));
            c.expect(rep.minimal, "no certificate for a conjugated diagonal");
            c.expect(rep.complexity == height(h), "certificate with wrong complexity");
            c.expect(cp_lattice(h, rep.lattice) == height(h), "cp != ht at the minimal lattice");
        }
        // Two fixed quadratic witnesses round out the 100 pairs.
        QMat rot(2, 2);
        rot.at(0, 1) = Rat(-1, 2);
        rot.at(1, 0) = 1;
        c.expect(cp_lattice(rot, standard_lattice(2)) == height(rot), "rotation not minimal at Z^2");
        QMat wit = mult_matrix(Int(7), Int(3), Int(1), Int(4));
        c.expect(cp_lattice(wit, standard_lattice(2)) == Int(2), "d = 7 witness not minimal at Z^2");
    });

    gate.criterion(8, "BCH group axioms on the shipped algebras", 60.0, [](Check& c) {
        std::mt19937 rng(1729);
        std::vector<NilLieAlg> algebras = {heisenberg_algebra(),  heisenberg5_algebra(),
                                           filiform_algebra(4),   filiform_algebra(5),
                                           filiform_algebra(6),   free_nilpotent_2_3()};
        for (const NilLieAlg& alg : algebras) {
            for (int t = 0; t < 100 && c.ok; ++t) {
                auto rand_vec = [&] {
                    QVec v(alg.dim);
                    for (Rat& x : v) x = rand_rat(rng, 2, 2);
                    return v;
                };
                QVec x = rand_vec(), y = rand_vec(), z = rand_vec();
                QVec xy = bch_product(alg, x, y);
                c.expect(bch_product(alg, xy, z) == bch_product(alg, x, bch_product(alg, y, z)),
                         "associativity fails");
                c.expect(bch_product(alg, x, qvec_zero(alg.dim)) == x, "right identity fails");
                c.expect(bch_product(alg, qvec_zero(alg.dim), x) == x, "left identity fails");
                c.expect(qvec_is_zero(bch_product(alg, x, qvec_neg(x))), "inverse fails");
                QVec pow = x;
                for (int n = 2; n <= 4; ++n) {
                    pow = bch_product(alg, pow, x);
                    c.expect(pow == qvec_scale(x, Rat(n)), "x^n != nx");
                }
            }
            if (!c.ok) return;
        }
    });

    gate.criterion(9, "Heisenberg end-to-end: fractal datum, goodness, orbits", 60.0,
                   [](Check& c) {
        NilLieAlg alg = heisenberg_algebra();
        MultLattice lat = make_mult_lattice(alg, QMat::identity(3));
        Grading g;
        g.pieces.emplace_back(1, QMat::from_columns({alg.basis_vector(0), alg.basis_vector(1)}));
        g.pieces.emplace_back(2, QMat::from_columns({alg.basis_vector(2)}));
        FractalReport fr = build_fractal_datum(lat, g);
        QMat expect(3, 3);
        expect.at(0, 0) = Rat(1, 2);
        expect.at(1, 1) = Rat(1, 2);
        expect.at(2, 2) = Rat(1, 4);
        c.expect(fr.endo.f == expect, "f is not diag(1/2, 1/2, 1/4)");
        c.expect(fr.endo.index == 16, "index is not 16");
        GoodnessReport good = goodness(fr.endo, 4);
        c.expect(good.indices == std::vector<Int>{16, 16, 16, 16}, "goodness sequence differs");
        c.expect(good.is_good, "datum not good");
        CertifyReport cert = certify_datum(fr.endo);
        c.expect(cert.self_similar && cert.free_action && cert.fractal, "certification differs");
        for (size_t depth = 1; depth <= 3; ++depth) {
            TransitivityReport tr = level_transitive(fr.endo, depth);
            c.expect(tr.transitive && tr.orbit_size == tr.full_size,
                     "not transitive at depth " + std::to_string(depth));
        }
        std::mt19937 rng(20240811);
        std::uniform_int_distribution<int> coord(-3, 3);
        int tested = 0;
        while (tested < 50) {
            QVec t(3);
            for (Rat& x : t) x = Rat(coord(rng));
            if (qvec_is_zero(t)) continue;
            ++tested;
            QVec gamma = from_malcev_coordinates(lat, t);
            c.expect(!has_fixed_point(fr.endo, gamma, 6), "nontrivial element fixes a level-6 word");
            if (!c.ok) return;
        }
    });

    gate.criterion(10, "gradings: special -> S, very special -> V, F round trip", 10.0,
                   [](Check& c) {
        struct Case {
            NilLieAlg alg;
            Grading g;
            bool very_special;
        };
        std::vector<Case> cases;
        cases.push_back({heisenberg_algebra(), {}, true});
        cases.back().g = natural_grading(cases.back().alg, {1, 1, 2});
        cases.push_back({heisenberg5_algebra(), {}, true});
        cases.back().g = natural_grading(cases.back().alg, {1, 1, 1, 1, 2});
        for (size_t n = 4; n <= 6; ++n) {
            std::vector<long> w = {1, 1};
            for (size_t k = 3; k <= n; ++k) w.push_back(static_cast<long>(k) - 1);
            cases.push_back({filiform_algebra(n), {}, true});
            cases.back().g = natural_grading(cases.back().alg, w);
        }
        cases.push_back({free_nilpotent_2_3(), {}, true});
        cases.back().g = natural_grading(cases.back().alg, {1, 1, 1, 2, 2, 2});
        // Special but not very special: a degree-0 piece off the center.
        cases.push_back({heisenberg_algebra(), {}, false});
        cases.back().g = natural_grading(cases.back().alg, {0, 1, 1});
        cases.push_back({free_nilpotent_2_3(), {}, false});
        cases.back().g = natural_grading(cases.back().alg, {0, 1, 1, 1, 1, 2});

        for (const Case& tc : cases) {
            GradingCheck chk = check_grading(tc.alg, tc.g);
            c.expect(chk.valid && chk.special, "shipped grading not special");
            c.expect(chk.very_special == tc.very_special, "very-special flag differs");
            SpectralReport rep = spectral_class(tc.alg, automorphism_from_grading(tc.alg, tc.g));
            c.expect(rep.in_s, "special grading gave an automorphism outside S");
            c.expect(rep.in_v == tc.very_special, "V membership differs from very-specialness");
            if (!c.ok) return;
        }
        // f in F with rational spectrum: the returned grading is non-negative
        // and special.
        std::vector<std::pair<NilLieAlg, QMat>> fs;
        {
            NilLieAlg h3 = heisenberg_algebra();
            fs.emplace_back(h3, automorphism_from_grading(h3, natural_grading(h3, {1, 1, 2}),
                                                          Rat(1, 2)));
            NilLieAlg l4 = filiform_algebra(4);
            fs.emplace_back(l4, automorphism_from_grading(l4, natural_grading(l4, {1, 1, 2, 3}),
                                                          Rat(1, 2)));
            NilLieAlg f23 = free_nilpotent_2_3();
            fs.emplace_back(f23, automorphism_from_grading(
                                     f23, natural_grading(f23, {1, 1, 1, 2, 2, 2}), Rat(1, 2)));
        }
        for (const auto& [alg, f] : fs) {
            c.expect(spectral_class(alg, f).in_f, "constructed automorphism is not in F");
            GradingCheck chk = check_grading(alg, nonneg_grading_from_f(alg, f));
            c.expect(chk.valid && chk.non_negative && chk.special,
                     "F round trip grading not non-negative special");
            if (!c.ok) return;
        }
    });

    gate.criterion(11, "filiform models L_4..L_8 with one-dimensional center", 1.0, [](Check& c) {
        for (size_t n = 4; n <= 8; ++n) {
            NilLieAlg alg = filiform_algebra(n);
            c.expect(alg.info.filiform, "L_" + std::to_string(n) + " not detected filiform");
            c.expect(alg.info.center.size() == 1, "center dimension is not 1");
            c.expect(alg.info.nil_class == static_cast<long>(n) - 1, "class is not n - 1");
        }
    });

    gate.criterion(12, "shipped candidate set: 4 and 16, both certified", 5.0, [](Check& c) {
        json doc = load_demo("heisenberg_complexity.json");
        json resp = run_request(doc, "complexity-min");
        c.expect(resp.at("min_height") == "4", "minimum is not 4");
        c.expect(resp.at("best_candidate") == "1", "best is not the quadratic candidate");
        const json& rows = resp.at("candidates");
        c.expect(rows.size() == 4, "candidate set size differs");
        c.expect(rows[0].at("height") == "16" && rows[0].at("certified_complexity") == "16" &&
                     rows[0].at("certified_minimal") == true,
                 "diagonal candidate not certified at 16");
        c.expect(rows[1].at("height") == "4" && rows[1].at("certified_complexity") == "4" &&
                     rows[1].at("certified_minimal") == true,
                 "quadratic candidate not certified at 4");
        c.expect(rows[2].at("admissible") == false && rows[3].at("admissible") == false,
                 "integral-spectrum candidates were not filtered");
    });

    if (gate.failures == 0) {
        std::printf("acceptance: 12/12 criteria passed\n");
    } else {
        std::printf("acceptance: %d criteria FAILED\n", gate.failures);
    }
    return gate.failures;
}

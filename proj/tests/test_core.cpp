#include <catch2/catch_amalgamated.hpp>

#include "nilwreath/chevalley.hpp"
#include "nilwreath/factor.hpp"
#include "nilwreath/heights.hpp"
#include "nilwreath/lattice.hpp"

using namespace nilwreath;

TEST_CASE("integer helpers") {
    CHECK(int_gcd(12, -18) == 6);
    CHECK(int_lcm(4, 6) == 12);
    CHECK(int_pow(Int(3), 4) == 81);
    CHECK(int_fdiv(Int(-7), Int(2)) == -4);
    CHECK(int_fmod(Int(-7), Int(2)) == 1);
    CHECK(is_square(Int(49)));
    CHECK_FALSE(is_square(Int(50)));
    CHECK(int_sqrt(Int(49)) == 7);
    CHECK(valuation(Int(48), Int(2)) == 4);
    CHECK(squarefree_part(Int(360)) == 10);
    CHECK(squarefree_part(Int(-12)) == -3);
    CHECK(prime_omega(Int(12)) == 3);
    CHECK(euler_phi(12) == 4);
    auto f = factor_int(Int(360));
    REQUIRE(f.size() == 3);
    CHECK(f[0].first == 2);
    CHECK(f[0].second == 3);
    CHECK(f[1].first == 3);
    CHECK(f[1].second == 2);
    CHECK(f[2].first == 5);
    CHECK(f[2].second == 1);
    CHECK(is_prime(Int("170141183460469231731687303715884105727")));  // 2^127 - 1
}

TEST_CASE("rational helpers") {
    CHECK(format_rat(make_rat(Int(4), Int(-6))) == "-2/3");
    CHECK(format_rat(Rat(5)) == "5");
    CHECK(rat_valuation(Rat(3, 8), Int(2)) == -3);
    CHECK(rat_valuation(Rat(12), Int(2)) == 2);
    CHECK(rat_floor(Rat(-7, 2)) == -4);
    CHECK(parse_rat("-2/3") == Rat(-2, 3));
    CHECK(parse_rat("7") == Rat(7));
    CHECK_THROWS_AS(parse_rat("1/0"), SchemaError);
    CHECK_THROWS_AS(parse_rat("x"), SchemaError);
    CHECK_THROWS_AS(parse_int("2/3"), SchemaError);
    CHECK(rat_pow(Rat(2, 3), -2) == Rat(9, 4));
}

TEST_CASE("integer polynomial arithmetic") {
    IntPoly a = int_poly_from({-1, 0, 1});  // t^2 - 1
    IntPoly b = int_poly_from({1, 1});      // t + 1
    IntPoly q;
    REQUIRE(poly_try_divide(a, b, q));
    CHECK(q == int_poly_from({-1, 1}));
    CHECK_FALSE(poly_try_divide(int_poly_from({1, 0, 1}), b, q));
    CHECK(poly_content(int_poly_from({6, -9, 12})) == 3);
    CHECK(poly_primitive(int_poly_from({2, -4})) == int_poly_from({-1, 2}));
    CHECK(poly_reverse(int_poly_from({2, 3, 1})) == int_poly_from({1, 3, 2}));
    CHECK(poly_eval(a, Rat(1, 2)) == Rat(-3, 4));
    CHECK(poly_max_abs(int_poly_from({3, -7, 2})) == 7);
}

TEST_CASE("rational polynomial gcd and division") {
    RatPoly f(int_poly_from({-1, 0, 0, 0, 1}));  // t^4 - 1
    RatPoly g(int_poly_from({-1, 0, 1}));        // t^2 - 1
    RatPoly d = rat_poly_gcd(f, g);
    CHECK(d.degree() == 2);
    CHECK(d.c[2] == 1);  // monic
    RatPoly q, r;
    rat_poly_divmod(f, g, q, r);
    CHECK(r.is_zero());
    CHECK(q == RatPoly(int_poly_from({1, 0, 1})));
    CHECK(rat_poly_primitive(RatPoly(std::vector<Rat>{Rat(1, 4), Rat(-1), Rat(1)})) ==
          int_poly_from({1, -4, 4}));
}

TEST_CASE("matrix kernels and inverses") {
    QMat m(2, 3);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(0, 2) = 3;
    m.at(1, 0) = 2;
    m.at(1, 1) = 4;
    m.at(1, 2) = 6;
    CHECK(rank(m) == 1);
    auto k = kernel_basis(m);
    REQUIRE(k.size() == 2);
    for (const auto& v : k) CHECK(qvec_is_zero(m * v));

    QMat a(2, 2);
    a.at(0, 0) = Rat(1, 2);
    a.at(0, 1) = 1;
    a.at(1, 0) = 0;
    a.at(1, 1) = Rat(-3, 1);
    CHECK(det(a) == Rat(-3, 2));
    QMat ainv = inverse(a);
    CHECK(a * ainv == QMat::identity(2));

    QVec x;
    QVec bvec{Rat(1), Rat(2)};
    REQUIRE(try_solve(a, bvec, x));
    CHECK(a * x == bvec);

    QMat sing(2, 2);
    sing.at(0, 0) = 1;
    sing.at(1, 0) = 1;
    QVec bad{Rat(1), Rat(2)};
    CHECK_FALSE(try_solve(sing, bad, x));
}

TEST_CASE("characteristic polynomial") {
    QMat m(2, 2);
    m.at(0, 1) = Rat(-1, 2);
    m.at(1, 0) = 1;
    RatPoly chi = charpoly(m);  // t^2 + 1/2
    REQUIRE(chi.degree() == 2);
    CHECK(chi.c[2] == 1);
    CHECK(chi.c[1] == 0);
    CHECK(chi.c[0] == Rat(1, 2));

    QMat d(2, 2);
    d.at(0, 0) = Rat(1, 2);
    d.at(1, 1) = Rat(1, 3);
    RatPoly chi2 = charpoly(d);
    CHECK(chi2.c[0] == Rat(1, 6));
    CHECK(chi2.c[1] == Rat(-5, 6));
    CHECK(poly_apply(chi2, d).is_zero());  // Cayley-Hamilton
}

TEST_CASE("hermite normal form") {
    ZMat m(2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 0;
    m.at(1, 0) = 1;
    m.at(1, 1) = 3;
    HnfResult h = hnf_columns(m, true);
    CHECK(h.rank == 2);
    // Canonical: upper triangular, pivots positive, entries right of a pivot
    // reduced modulo it.  span{(1,1),(0,3)} -> columns (3,0), (1,1).
    CHECK(h.h.at(0, 0) == 3);
    CHECK(h.h.at(0, 1) == 1);
    CHECK(h.h.at(1, 0) == 0);
    CHECK(h.h.at(1, 1) == 1);
    // transform property: m * u == h
    QMat mu = h.h.to_rational();
    CHECK(m.to_rational() * h.transform.to_rational() == mu);
}

TEST_CASE("integer kernel is saturated") {
    QMat m(1, 3);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(0, 2) = Rat(3, 2);
    ZMat k = integer_kernel(m);
    REQUIRE(k.cols() == 2);
    for (size_t j = 0; j < k.cols(); ++j) {
        Rat dot;
        for (size_t i = 0; i < 3; ++i) dot += m.at(0, i) * Rat(k.at(i, j));
        CHECK(dot == 0);
    }
    // Saturation: gcd of each column survives, content of the kernel lattice
    // basis columns is 1 after HNF.
    HnfResult h = hnf_columns(k);
    CHECK(h.rank == 2);
}

TEST_CASE("lattice index and membership") {
    IntLattice z2 = standard_lattice(2);
    std::vector<QVec> gens{{Rat(1), Rat(1)}, {Rat(0), Rat(3)}};
    IntLattice sub = lattice_from_columns(2, gens);
    CHECK(lattice_index(sub, z2) == 3);
    CHECK(lattice_member(sub, QVec{Rat(1), Rat(4)}));
    CHECK_FALSE(lattice_member(sub, QVec{Rat(1), Rat(3)}));
    CHECK(lattice_det(sub) == 3);

    IntLattice doubled = lattice_scale(z2, Int(2));
    CHECK(lattice_index(doubled, z2) == 4);
    CHECK(lattice_subset(doubled, sub) == false);
}

TEST_CASE("lattice sum, intersection, dual") {
    std::vector<QVec> g1{{Rat(2), Rat(0)}, {Rat(0), Rat(1)}};
    std::vector<QVec> g2{{Rat(1), Rat(0)}, {Rat(0), Rat(3)}};
    IntLattice l1 = lattice_from_columns(2, g1);
    IntLattice l2 = lattice_from_columns(2, g2);
    IntLattice s = lattice_sum(l1, l2);
    CHECK(s == standard_lattice(2));
    IntLattice i = lattice_intersect(l1, l2);
    CHECK(lattice_det(i) == 6);
    CHECK(lattice_member(i, QVec{Rat(2), Rat(0)}));
    CHECK(lattice_member(i, QVec{Rat(0), Rat(3)}));
    CHECK_FALSE(lattice_member(i, QVec{Rat(1), Rat(0)}));
    CHECK(lattice_dual(lattice_dual(l1)) == l1);

    // Rational lattice: apply diag(1/2, 1/3).
    QMat h(2, 2);
    h.at(0, 0) = Rat(1, 2);
    h.at(1, 1) = Rat(1, 3);
    IntLattice img = lattice_apply(h, standard_lattice(2));
    CHECK(lattice_member(img, QVec{Rat(1, 2), Rat(0)}));
    CHECK(lattice_member(img, QVec{Rat(0), Rat(1, 3)}));
    CHECK_FALSE(lattice_member(img, QVec{Rat(1, 3), Rat(0)}));
    CHECK(lattice_index(standard_lattice(2), img) == 6);
}

TEST_CASE("lattice meets a subspace") {
    IntLattice z2 = standard_lattice(2);
    QMat span(2, 1);
    span.at(0, 0) = 1;
    span.at(1, 0) = 1;
    QMat basis = lattice_meet_subspace(z2, span);
    REQUIRE(basis.cols() == 1);
    // The meet is Z * (1,1) up to sign.
    CHECK(rat_abs(basis.at(0, 0)) == 1);
    CHECK(basis.at(0, 0) == basis.at(1, 0));
}

TEST_CASE("rational factorization") {
    FactoredSpectrum fs = factor_rational(RatPoly(int_poly_from({-1, 0, 0, 0, 1})));
    REQUIRE(fs.factors.size() == 3);
    CHECK(fs.constant == 1);
    CHECK(fs.factors[0].first == int_poly_from({-1, 1}));
    CHECK(fs.factors[1].first == int_poly_from({1, 1}));
    CHECK(fs.factors[2].first == int_poly_from({1, 0, 1}));
    for (const auto& [f, m] : fs.factors) CHECK(m == 1);

    // (2t-1)^2 from t^2 - t + 1/4
    FactoredSpectrum sq = factor_rational(RatPoly(std::vector<Rat>{Rat(1, 4), Rat(-1), Rat(1)}));
    REQUIRE(sq.factors.size() == 1);
    CHECK(sq.factors[0].first == int_poly_from({-1, 2}));
    CHECK(sq.factors[0].second == 2);
    CHECK(sq.constant == Rat(1, 4));

    // t^2 + 1/2 -> 2t^2 + 1, constant 1/2
    FactoredSpectrum ir = factor_rational(RatPoly(std::vector<Rat>{Rat(1, 2), Rat(0), Rat(1)}));
    REQUIRE(ir.factors.size() == 1);
    CHECK(ir.factors[0].first == int_poly_from({1, 0, 2}));
    CHECK(ir.constant == Rat(1, 2));

    // (t^2-2)(t^2-3): recombination exercise
    FactoredSpectrum rc = factor_rational(RatPoly(int_poly_from({6, 0, -5, 0, 1})));
    REQUIRE(rc.factors.size() == 2);
    CHECK(rc.factors[0].first == int_poly_from({-3, 0, 1}));
    CHECK(rc.factors[1].first == int_poly_from({-2, 0, 1}));

    // multiplicities from the squarefree decomposition
    FactoredSpectrum mu = factor_rational(RatPoly(int_poly_from({2, -3, 0, 1})));
    REQUIRE(mu.factors.size() == 2);
    CHECK(mu.factors[0].first == int_poly_from({-1, 1}));
    CHECK(mu.factors[0].second == 2);
    CHECK(mu.factors[1].first == int_poly_from({2, 1}));
    CHECK(mu.factors[1].second == 1);

    CHECK_THROWS_AS(factor_rational(RatPoly()), DomainError);
    std::vector<Rat> big(20, Rat(1));
    CHECK_THROWS_AS(factor_rational(RatPoly(big)), BudgetError);
}

TEST_CASE("cyclotomic recognition") {
    CHECK(is_cyclotomic(int_poly_from({-1, 1})) == std::pair<bool, long>{true, 1});
    CHECK(is_cyclotomic(int_poly_from({1, 1})) == std::pair<bool, long>{true, 2});
    CHECK(is_cyclotomic(int_poly_from({1, 1, 1})) == std::pair<bool, long>{true, 3});
    CHECK(is_cyclotomic(int_poly_from({1, 0, 1})) == std::pair<bool, long>{true, 4});
    CHECK(is_cyclotomic(int_poly_from({1, -1, 1})) == std::pair<bool, long>{true, 6});
    CHECK(is_cyclotomic(int_poly_from({1, 1, 1, 1})).first == false);  // (t+1)(t^2+1)
    CHECK(is_cyclotomic(int_poly_from({-2, 1})).first == false);
    CHECK(is_cyclotomic(int_poly_from({-1, 2})).first == false);   // not monic
    CHECK(is_cyclotomic(int_poly_from({-1, -1, 1})).first == false);  // t^2-t-1
    CHECK(cyclotomic(12) == int_poly_from({1, 0, -1, 0, 1}));
}

TEST_CASE("jordan-chevalley decomposition") {
    QMat m(2, 2);
    m.at(0, 0) = Rat(1, 2);
    m.at(0, 1) = 1;
    m.at(1, 1) = Rat(1, 2);
    JordanChevalley jc = jordan_chevalley(m);
    CHECK(jc.s.at(0, 0) == Rat(1, 2));
    CHECK(jc.s.at(0, 1) == 0);
    CHECK(jc.s.at(1, 1) == Rat(1, 2));
    CHECK(jc.n.at(0, 1) == 1);
    REQUIRE(jc.u_valid);
    CHECK(jc.u.at(0, 1) == 2);
    CHECK(jc.s * jc.u == m);

    // distinct eigenvalues: m is already semisimple
    QMat d(2, 2);
    d.at(0, 0) = 1;
    d.at(0, 1) = 1;
    d.at(1, 1) = 2;
    JordanChevalley jd = jordan_chevalley(d);
    CHECK(jd.s == d);
    CHECK(jd.n.is_zero());

    QMat sing(2, 2);
    sing.at(0, 1) = 1;
    CHECK_THROWS_AS(jordan_chevalley_multiplicative(sing), DomainError);
}

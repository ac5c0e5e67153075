#include <catch2/catch_amalgamated.hpp>

#include "nilwreath/bch.hpp"
#include "nilwreath/grading.hpp"
#include "nilwreath/lie.hpp"

using namespace nilwreath;

namespace {

QVec unit(size_t n, size_t k) {
    QVec v(n, Rat(0));
    v[k] = 1;
    return v;
}

QMat diag(const std::vector<Rat>& d) {
    QMat m(d.size(), d.size());
    for (size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
    return m;
}

QMat piece(size_t n, const std::vector<size_t>& idx) {
    QMat m(n, idx.size());
    for (size_t j = 0; j < idx.size(); ++j) m.at(idx[j], j) = 1;
    return m;
}

}  // namespace

TEST_CASE("algebra validation and invariants") {
    NilLieAlg h3 = heisenberg_algebra();
    CHECK(h3.info.nil_class == 2);
    CHECK(h3.info.lcs_dims == std::vector<size_t>{3, 1});
    CHECK(h3.info.center.size() == 1);
    CHECK(h3.info.center[0] == unit(3, 2));
    CHECK(h3.info.filiform);

    NilLieAlg ab = abelian_algebra(4);
    CHECK(ab.info.nil_class == 1);
    CHECK(ab.info.center.size() == 4);
    CHECK_FALSE(ab.info.filiform);

    NilLieAlg l5 = filiform_algebra(5);
    CHECK(l5.info.nil_class == 4);
    CHECK(l5.info.lcs_dims == std::vector<size_t>{5, 3, 2, 1});
    CHECK(l5.info.filiform);

    NilLieAlg fn = free_nilpotent_2_3();
    CHECK(fn.info.nil_class == 2);
    CHECK(fn.info.lcs_dims == std::vector<size_t>{6, 3});
    CHECK(fn.info.center.size() == 3);
    CHECK_FALSE(fn.info.filiform);

    NilLieAlg h5 = heisenberg5_algebra();
    CHECK(h5.info.nil_class == 2);
    CHECK(h5.info.center.size() == 1);
}

TEST_CASE("invalid algebras are rejected") {
    // Jacobi violation: [e1,e2]=e3, [e1,e3]=e4, [e2,e4]=e5.
    CHECK_THROWS_WITH(make_algebra(5, {{0, 1, unit(5, 2)}, {0, 2, unit(5, 3)}, {1, 3, unit(5, 4)}}),
                      Catch::Matchers::ContainsSubstring("(1,2,3)"));
    // Not nilpotent: [e1,e2]=e3, [e1,e3]=e2.
    CHECK_THROWS_WITH(make_algebra(3, {{0, 1, unit(3, 2)}, {0, 2, unit(3, 1)}}),
                      Catch::Matchers::ContainsSubstring("not nilpotent"));
    // Duplicate entries.
    CHECK_THROWS_AS(make_algebra(3, {{0, 1, unit(3, 2)}, {1, 0, unit(3, 2)}}), DomainError);
}

TEST_CASE("group products in log coordinates") {
    NilLieAlg h3 = heisenberg_algebra();
    QVec xy = bch_product(h3, unit(3, 0), unit(3, 1));
    CHECK(xy == QVec{Rat(1), Rat(1), Rat(1, 2)});
    QVec yx = bch_product(h3, unit(3, 1), unit(3, 0));
    CHECK(yx == QVec{Rat(1), Rat(1), Rat(-1, 2)});
    CHECK(qvec_is_zero(bch_product(h3, xy, bch_inverse(xy))));
    CHECK(bch_product(h3, xy, qvec_zero(3)) == xy);
    CHECK(bch_commutator(h3, unit(3, 0), unit(3, 1)) == unit(3, 2));

    NilLieAlg ab = abelian_algebra(2);
    CHECK(bch_product(ab, QVec{Rat(1, 3), Rat(2)}, QVec{Rat(1), Rat(-1)}) ==
          QVec{Rat(4, 3), Rat(1)});
}

TEST_CASE("classical series coefficients") {
    // deg 3: x + y + [x,y]/2 + [x,[x,y]]/12 - [y,[x,y]]/12
    NilLieAlg f32 = free_nilpotent_3_2();
    QVec z3 = bch_product(f32, unit(5, 0), unit(5, 1));
    CHECK(z3 == QVec{Rat(1), Rat(1), Rat(1, 2), Rat(1, 12), Rat(-1, 12)});

    // deg 4 adds -[y,[x,[x,y]]]/24
    NilLieAlg f42 = free_nilpotent_4_2();
    QVec z4 = bch_product(f42, unit(8, 0), unit(8, 1));
    CHECK(z4 == QVec{Rat(1), Rat(1), Rat(1, 2), Rat(1, 12), Rat(-1, 12), Rat(0), Rat(-1, 24),
                     Rat(0)});
}

TEST_CASE("associativity deep in the series") {
    NilLieAlg l8 = filiform_algebra(8);  // class 7
    QVec a{Rat(1), Rat(1, 2), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)};
    QVec b{Rat(-1, 3), Rat(1), Rat(1, 5), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)};
    QVec c{Rat(2), Rat(-1), Rat(0), Rat(1, 7), Rat(0), Rat(0), Rat(0), Rat(0)};
    QVec left = bch_product(l8, bch_product(l8, a, b), c);
    QVec right = bch_product(l8, a, bch_product(l8, b, c));
    CHECK(left == right);
    CHECK(qvec_is_zero(bch_product(l8, a, bch_inverse(a))));
}

TEST_CASE("grading checks") {
    NilLieAlg h3 = heisenberg_algebra();
    Grading g;
    g.pieces.emplace_back(1, piece(3, {0, 1}));
    g.pieces.emplace_back(2, piece(3, {2}));
    GradingCheck c = check_grading(h3, g);
    CHECK(c.valid);
    CHECK(c.special);
    CHECK(c.very_special);
    CHECK(c.non_negative);
    CHECK(c.positive);
    CHECK(c.e == 4);
    CHECK(e_invariant(h3, g) == 4);

    // Everything in degree 1 fails bracket compatibility.
    Grading flat;
    flat.pieces.emplace_back(1, piece(3, {0, 1, 2}));
    CHECK_FALSE(check_grading(h3, flat).valid);

    // Degree zero plus degree one: special but not very special.
    Grading mixed;
    mixed.pieces.emplace_back(0, piece(3, {0}));
    mixed.pieces.emplace_back(1, piece(3, {1, 2}));
    GradingCheck cm = check_grading(h3, mixed);
    CHECK(cm.valid);
    CHECK(cm.special);
    CHECK_FALSE(cm.very_special);
    CHECK_FALSE(cm.positive);
    CHECK(cm.non_negative);
    CHECK(cm.e == 2);

    // All of an abelian algebra in degree zero: valid, not special.
    NilLieAlg ab = abelian_algebra(3);
    Grading zero;
    zero.pieces.emplace_back(0, piece(3, {0, 1, 2}));
    GradingCheck cz = check_grading(ab, zero);
    CHECK(cz.valid);
    CHECK_FALSE(cz.special);
    CHECK(cz.e == 0);
}

TEST_CASE("spectral classes") {
    NilLieAlg h3 = heisenberg_algebra();
    SpectralReport s = spectral_class(h3, diag({Rat(1, 2), Rat(1, 2), Rat(1, 4)}));
    CHECK(s.in_s);
    CHECK(s.in_v);
    CHECK(s.in_f);
    CHECK(s.in_f_plus);
    REQUIRE(s.center_orbits.size() == 1);
    CHECK(s.center_orbits[0].min_poly == int_poly_from({-1, 4}));

    SpectralReport t = spectral_class(h3, diag({Rat(2), Rat(2), Rat(4)}));
    CHECK_FALSE(t.in_s);
    CHECK_FALSE(t.in_v);
    CHECK_FALSE(t.in_f);

    // Class F without F+: an eigenvalue 1 away from the center.
    NilLieAlg h5 = heisenberg5_algebra();
    SpectralReport u =
        spectral_class(h5, diag({Rat(1, 2), Rat(1, 2), Rat(1), Rat(1, 4), Rat(1, 4)}));
    CHECK(u.in_s);
    CHECK_FALSE(u.in_v);
    CHECK(u.in_f);
    CHECK_FALSE(u.in_f_plus);

    // Not an automorphism.
    QMat bad = QMat::identity(3);
    bad.at(2, 2) = 2;
    CHECK_THROWS_AS(spectral_class(h3, bad), DomainError);
}

TEST_CASE("grading from an automorphism") {
    NilLieAlg ab = abelian_algebra(3);
    Grading g = grading_from_automorphism(ab, diag({Rat(2, 3), Rat(3, 2), Rat(1)}));
    REQUIRE(g.pieces.size() == 3);
    CHECK(g.pieces[0].first == -1);
    CHECK(g.pieces[1].first == 0);
    CHECK(g.pieces[2].first == 1);
    // The eigenvector of 2/3 carries positive degree.
    CHECK(g.pieces[2].second.at(0, 0) == 1);
    CHECK(g.pieces[0].second.at(1, 0) == 1);

    NilLieAlg h3 = heisenberg_algebra();
    Grading gh = grading_from_automorphism(h3, diag({Rat(1, 2), Rat(1, 2), Rat(1, 4)}));
    REQUIRE(gh.pieces.size() == 2);
    CHECK(gh.pieces[0].first == 1);
    CHECK(gh.pieces[0].second.cols() == 2);
    CHECK(gh.pieces[1].first == 2);
    CHECK(gh.pieces[1].second.cols() == 1);

    // Degrees are divided by their gcd.
    NilLieAlg ab2 = abelian_algebra(2);
    Grading g2 = grading_from_automorphism(ab2, diag({Rat(1, 4), Rat(1, 16)}));
    REQUIRE(g2.pieces.size() == 2);
    CHECK(g2.pieces[0].first == 1);
    CHECK(g2.pieces[1].first == 2);

    QMat rot(2, 2);
    rot.at(0, 1) = -1;
    rot.at(1, 0) = 1;
    CHECK_THROWS_AS(grading_from_automorphism(ab2, rot), DomainError);
}

TEST_CASE("non-negative grading from class F") {
    NilLieAlg h3 = heisenberg_algebra();
    Grading g = nonneg_grading_from_f(h3, diag({Rat(1, 2), Rat(1, 2), Rat(1, 4)}));
    REQUIRE(g.pieces.size() == 2);
    CHECK(g.pieces[0].first == 1);
    CHECK(g.pieces[0].second.cols() == 2);
    CHECK(g.pieces[1].first == 2);

    // Degrees are reported raw, without canonicalization.
    Grading g6 = nonneg_grading_from_f(h3, diag({Rat(1, 6), Rat(1, 6), Rat(1, 36)}));
    REQUIRE(g6.pieces.size() == 2);
    CHECK(g6.pieces[0].first == 2);
    CHECK(g6.pieces[0].second.cols() == 2);
    CHECK(g6.pieces[1].first == 4);

    CHECK_THROWS_AS(nonneg_grading_from_f(h3, diag({Rat(2), Rat(2), Rat(4)})), DomainError);
}

TEST_CASE("automorphism from a grading") {
    NilLieAlg h3 = heisenberg_algebra();
    Grading g;
    g.pieces.emplace_back(1, piece(3, {0, 1}));
    g.pieces.emplace_back(2, piece(3, {2}));
    QMat f = automorphism_from_grading(h3, g, Rat(1, 2));
    CHECK(f == diag({Rat(1, 2), Rat(1, 2), Rat(1, 4)}));
    QMat fd = automorphism_from_grading(h3, g);  // default base 2/3
    CHECK(fd == diag({Rat(2, 3), Rat(2, 3), Rat(4, 9)}));
    CHECK_THROWS_AS(automorphism_from_grading(h3, g, Rat(1)), DomainError);
    CHECK_THROWS_AS(automorphism_from_grading(h3, g, Rat(0)), DomainError);
    CHECK_THROWS_AS(automorphism_from_grading(h3, g, Rat(-1)), DomainError);
}

#include <catch2/catch_amalgamated.hpp>

#include "nilwreath/heights.hpp"

using namespace nilwreath;

namespace {
QMat diag2(const Rat& a, const Rat& b) {
    QMat m(2, 2);
    m.at(0, 0) = a;
    m.at(1, 1) = b;
    return m;
}
}  // namespace

TEST_CASE("orbit data and height of diagonal matrices") {
    QMat h = diag2(Rat(1, 2), Rat(1, 3));
    auto orbits = orbit_data(h);
    REQUIRE(orbits.size() == 2);
    CHECK(orbits[0].min_poly == int_poly_from({-1, 2}));
    CHECK(orbits[0].d == 2);
    CHECK(orbits[0].multiplicity == 1);
    CHECK(orbits[1].min_poly == int_poly_from({-1, 3}));
    CHECK(orbits[1].d == 3);
    CHECK(height(h) == 6);

    CHECK(height(diag2(Rat(1, 2), Rat(1, 2))) == 4);  // (2t-1)^2
    CHECK(height(QMat::identity(3)) == 1);
    CHECK_THROWS_AS(height(QMat(2, 2)), DomainError);  // singular
}

TEST_CASE("orbit flags") {
    QMat rot(2, 2);
    rot.at(0, 1) = -1;
    rot.at(1, 0) = 1;
    auto orbits = orbit_data(rot);  // t^2 + 1
    REQUIRE(orbits.size() == 1);
    CHECK(orbits[0].is_alg_integer);
    CHECK(orbits[0].inverse_is_alg_integer);
    CHECK(orbits[0].is_root_of_unity);
    CHECK(orbits[0].cyclotomic_index == 4);

    QMat two(1, 1);
    two.at(0, 0) = 2;
    auto o2 = orbit_data(two);
    CHECK(o2[0].is_alg_integer);
    CHECK_FALSE(o2[0].inverse_is_alg_integer);
    CHECK_FALSE(o2[0].is_root_of_unity);

    // Companion of t^2 + t + 1/2: eigenvalues (-1 +- i)/2, inverses -1 -+ i.
    QMat c(2, 2);
    c.at(0, 1) = Rat(-1, 2);
    c.at(1, 0) = 1;
    c.at(1, 1) = -1;
    auto oc = orbit_data(c);
    REQUIRE(oc.size() == 1);
    CHECK(oc[0].min_poly == int_poly_from({1, 2, 2}));
    CHECK(oc[0].d == 2);
    CHECK_FALSE(oc[0].is_alg_integer);
    CHECK(oc[0].inverse_is_alg_integer);
    CHECK(height(c) == 2);
}

TEST_CASE("complexity at a lattice") {
    QMat h = diag2(Rat(1, 2), Rat(1, 3));
    CHECK(cp_lattice(h, standard_lattice(2)) == 6);  // equals the height

    // Swap composed with scaling: complexity 2 at Z^2 but height 1.
    QMat s(2, 2);
    s.at(0, 1) = 2;
    s.at(1, 0) = Rat(1, 2);
    CHECK(height(s) == 1);  // charpoly t^2 - 1
    CHECK(cp_lattice(s, standard_lattice(2)) == 2);
}

TEST_CASE("minimal lattice search") {
    QMat h = diag2(Rat(1, 2), Rat(1, 3));
    MinimalSearchReport rep = minimal_lattice_search(h, standard_lattice(2));
    CHECK(rep.minimal);
    CHECK(rep.iterations == 0);
    CHECK(rep.complexity == 6);
    CHECK(rep.height == 6);

    QMat s(2, 2);
    s.at(0, 1) = 2;
    s.at(1, 0) = Rat(1, 2);
    MinimalSearchReport r2 = minimal_lattice_search(s, standard_lattice(2));
    CHECK(r2.minimal);
    CHECK(r2.iterations == 1);
    CHECK(r2.complexity == 1);
    CHECK(r2.height == 1);
    // The certifying lattice is span{(2,0),(0,1)}.
    CHECK(lattice_member(r2.lattice, QVec{Rat(2), Rat(0)}));
    CHECK(lattice_member(r2.lattice, QVec{Rat(0), Rat(1)}));
    CHECK_FALSE(lattice_member(r2.lattice, QVec{Rat(1), Rat(0)}));

    std::atomic<bool> stop{true};
    CHECK_THROWS_AS(minimal_lattice_search(h, standard_lattice(2), 64, CancelToken{&stop}),
                    CancelledError);
}

TEST_CASE("block height comparison") {
    QMat h(3, 3);
    h.at(0, 0) = Rat(1, 2);
    h.at(0, 1) = 7;
    h.at(1, 1) = Rat(1, 3);
    h.at(2, 2) = Rat(1, 5);
    BlockHeightReport rep = block_height_check(h, {1, 1, 1});
    REQUIRE(rep.block_heights.size() == 3);
    CHECK(rep.block_heights[0] == 2);
    CHECK(rep.block_heights[1] == 3);
    CHECK(rep.block_heights[2] == 5);
    CHECK(rep.product == 30);
    CHECK(rep.full == 30);
    CHECK(rep.equal);
    CHECK_FALSE(rep.direct_sum);

    BlockHeightReport ds = block_height_check(diag2(Rat(1, 2), Rat(1, 3)), {1, 1});
    CHECK(ds.direct_sum);
    CHECK(ds.equal);

    QMat bad(2, 2);
    bad.at(0, 0) = Rat(1, 2);
    bad.at(1, 0) = 1;
    bad.at(1, 1) = Rat(1, 3);
    CHECK_THROWS_WITH(block_height_check(bad, {1, 1}),
                      Catch::Matchers::ContainsSubstring("(1,0)"));
    CHECK_THROWS_AS(block_height_check(bad, {1, 2}), DomainError);
}

TEST_CASE("refined minimality via eigenvalue congruences") {
    QMat fifth(1, 1);
    fifth.at(0, 0) = Rat(1, 5);
    RefinedMinimalityReport ok =
        refined_minimality_check(fifth, standard_lattice(1), standard_lattice(1), Int(2));
    CHECK(ok.congruence_ok);  // v_2(1/5 - 1) = v_2(-4/5) = 2 >= v_2(2)
    CHECK(ok.minimal);
    CHECK(ok.complexity == 5);
    CHECK(ok.height == 5);

    QMat half(1, 1);
    half.at(0, 0) = Rat(1, 2);
    RefinedMinimalityReport no =
        refined_minimality_check(half, standard_lattice(1), standard_lattice(1), Int(2));
    CHECK_FALSE(no.congruence_ok);  // v_2(-1/2) = -1 < 1
    CHECK_FALSE(no.minimal);

    // gamma must sit between n*ambient and ambient.
    IntLattice four = lattice_scale(standard_lattice(1), Int(4));
    CHECK_THROWS_AS(refined_minimality_check(fifth, four, standard_lattice(1), Int(2)),
                    DomainError);

    // Irrational spectrum is rejected.
    QMat rot(2, 2);
    rot.at(0, 1) = -1;
    rot.at(1, 0) = 1;
    CHECK_THROWS_AS(refined_minimality_check(rot, standard_lattice(2), standard_lattice(2), Int(2)),
                    DomainError);
}

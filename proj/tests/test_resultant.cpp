#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace factorforge;

namespace {

DensePoly X(int v, int e = 1) { return DensePoly::variable(2, v, e); }

// Oracle for the gcd criterion: substitute random values for x, take the
// univariate gcd in y, majority vote over 5 points.
bool oracle_gcd_nontrivial(const DensePoly& g, const DensePoly& h, int yvar, Rng& rng) {
    int votes = 0;
    for (int t = 0; t < 5; ++t) {
        std::vector<Fp> pt = random_point(rng, std::size_t(g.nvars()));
        auto to_uni = [&](const DensePoly& p) {
            std::vector<Fp> coeff(std::size_t(p.degree_in(yvar)) + 1);
            for (int i = 0; i <= p.degree_in(yvar); ++i)
                coeff[std::size_t(i)] = p.coefficient_of_power(yvar, i).eval(pt);
            return UniPoly(std::move(coeff));
        };
        UniPoly gu = to_uni(g), hu = to_uni(h);
        if (gu.is_zero() || hu.is_zero()) { ++votes; continue; }
        if (uni_gcd(gu, hu).deg() >= 1) ++votes;
    }
    return votes >= 3;
}

} // namespace

TEST_CASE("sylvester layout worked examples") {
    // g = y - x (d1 = 1), h = y^2 - x (d2 = 2): columns (-x,1,0),(0,-x,1),(-x,0,1)
    DensePoly g = X(1) - X(0);
    DensePoly h = X(1, 2) - X(0);
    SylvesterMatrix s = sylvester(y_coefficient_vector(g, 1), y_coefficient_vector(h, 1));
    REQUIRE(s.dim() == 3);
    DensePoly mx = X(0).scaled(-Fp::one());
    REQUIRE(s.at(0, 0) == mx);
    REQUIRE(s.at(1, 0) == DensePoly::constant(2, Fp::one()));
    REQUIRE(s.at(2, 0).is_zero());
    REQUIRE(s.at(0, 1).is_zero());
    REQUIRE(s.at(1, 1) == mx);
    REQUIRE(s.at(2, 1) == DensePoly::constant(2, Fp::one()));
    REQUIRE(s.at(0, 2) == mx);
    REQUIRE(s.at(1, 2).is_zero());
    REQUIRE(s.at(2, 2) == DensePoly::constant(2, Fp::one()));

    // g = h = y + 1 gives [[1,1],[1,1]]
    DensePoly yp1 = X(1) + DensePoly::constant(2, Fp::one());
    SylvesterMatrix t = sylvester(y_coefficient_vector(yp1, 1), y_coefficient_vector(yp1, 1));
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) REQUIRE(t.at(r, c) == DensePoly::constant(2, Fp::one()));

    // monic inputs put a 1 at the bottom of each column family
    Rng rng(31);
    DensePoly gm = random_y_monic(rng, 2, 1, 3);
    DensePoly hm = random_y_monic(rng, 2, 1, 2);
    SylvesterMatrix sm = sylvester(y_coefficient_vector(gm, 1), y_coefficient_vector(hm, 1));
    // bottom entry of each column family is the (monic) leading coefficient
    REQUIRE(sm.at(0 + 3, 0) == DensePoly::constant(2, Fp::one()));
    REQUIRE(sm.at(1 + 3, 1) == DensePoly::constant(2, Fp::one()));
    REQUIRE(sm.at(0 + 2, 2) == DensePoly::constant(2, Fp::one()));
    REQUIRE(sm.at(2 + 2, 4) == DensePoly::constant(2, Fp::one()));

    // zero leading coefficient is a domain error
    std::vector<DensePoly> bad{X(0), DensePoly::zero(2)};
    REQUIRE_THROWS_AS(sylvester(bad, y_coefficient_vector(hm, 1)), Error);
}

TEST_CASE("resultant worked examples") {
    DensePoly g = X(1) - X(0);
    DensePoly h = X(1, 2) - X(0);
    REQUIRE(resultant_y(g, h, 1) == X(0, 2) - X(0));

    DensePoly gx = X(1) + X(0);
    REQUIRE(resultant_y(gx, gx, 1).is_zero());

    // The global sign of the resultant depends on which of the two column
    // conventions one reads off the definition; only rank and |det| are pinned
    // down, so unit resultants are checked up to sign.
    DensePoly a = X(1) + DensePoly::constant(2, Fp(1));
    DensePoly b = X(1) + DensePoly::constant(2, Fp(2));
    DensePoly r = resultant_y(a, b, 1);
    REQUIRE((r == DensePoly::constant(2, Fp::one()) || r == DensePoly::constant(2, -Fp::one())));

    REQUIRE_THROWS_AS(resultant_y(X(0), b, 1), Error); // no y-degree
}

TEST_CASE("gcd criterion worked examples") {
    DensePoly g = X(1) - X(0);
    DensePoly h = X(1, 2) - X(0);
    REQUIRE_FALSE(gcd_is_nontrivial(g, h, 1));

    DensePoly shared = X(1) + X(0);
    DensePoly h2 = shared * (X(1) + DensePoly::constant(2, Fp::one()));
    REQUIRE(gcd_is_nontrivial(shared, h2, 1));

    DensePoly a = X(1) + DensePoly::constant(2, Fp(1));
    DensePoly b = X(1) + DensePoly::constant(2, Fp(2));
    REQUIRE_FALSE(gcd_is_nontrivial(a, b, 1));
}

TEST_CASE("gcd criterion agrees with the univariate oracle") {
    Rng rng(32);
    int nontrivial = 0;
    for (int iter = 0; iter < 60; ++iter) {
        int nvars = 2 + int(rng.below(2));
        int yvar = nvars - 1;
        DensePoly g = random_y_monic(rng, nvars, yvar, 1 + int(rng.below(3)), 2);
        DensePoly h = random_y_monic(rng, nvars, yvar, 1 + int(rng.below(3)), 2);
        if (rng.below(2)) {
            DensePoly w = random_y_monic(rng, nvars, yvar, 1 + int(rng.below(2)), 2);
            g = g * w;
            h = h * w;
        }
        bool res = gcd_is_nontrivial(g, h, yvar);
        bool oracle = oracle_gcd_nontrivial(g, h, yvar, rng);
        REQUIRE(res == oracle);
        nontrivial += res ? 1 : 0;
    }
    REQUIRE(nontrivial > 5); // the mix actually exercises both directions
}

TEST_CASE("resultant degree bound") {
    Rng rng(33);
    for (int iter = 0; iter < 25; ++iter) {
        int d1 = 1 + int(rng.below(3)), d2 = 1 + int(rng.below(3));
        DensePoly g = random_y_monic(rng, 2, 1, d1, 3);
        DensePoly h = random_y_monic(rng, 2, 1, d2, 3);
        REQUIRE(resultant_y(g, h, 1).degree() <= 2 * d1 * d2);
    }
}

TEST_CASE("jacobian worked examples") {
    UniPoly gseed({Fp(1), Fp(1)}); // y + 1
    UniPoly hseed({Fp(2), Fp(1)}); // y + 2
    FpMatrix a = jacobian_at_seed(gseed, hseed);
    REQUIRE(a.at(0, 0) == Fp(2));
    REQUIRE(a.at(0, 1) == Fp(1));
    REQUIRE(a.at(1, 0) == Fp(1));
    REQUIRE(a.at(1, 1) == Fp(1));
    REQUIRE(a.determinant() == Fp::one());

    UniPoly y = UniPoly::x();
    REQUIRE(jacobian_at_seed(y, y).determinant().is_zero()); // shared root

    REQUIRE_THROWS_AS(jacobian_at_seed(gseed.scaled(Fp(2)), hseed), Error); // non-monic
}

TEST_CASE("jacobian matches the sylvester matrix up to permutation") {
    Rng rng(34);
    for (int iter = 0; iter < 100; ++iter) {
        int d1 = 1 + int(rng.below(4)), d2 = 1 + int(rng.below(4));
        UniPoly g = random_unipoly(rng, d1, true);
        UniPoly h = random_unipoly(rng, d2, true);
        if (rng.below(2)) { // plant a shared root half the time
            Fp r = rng.field_element();
            g = random_unipoly(rng, d1 - 1, true) * UniPoly::linear_from_root(r);
            h = random_unipoly(rng, d2 - 1, true) * UniPoly::linear_from_root(r);
        }
        FpMatrix j = jacobian_at_seed(g, h);
        FpMatrix s = sylvester_at_seed(g, h);
        REQUIRE(j.rank() == s.rank());
        Fp dj = j.determinant(), ds = s.determinant();
        REQUIRE((dj == ds || dj == -ds));
        bool coprime = uni_gcd(g, h).deg() == 0;
        REQUIRE(coprime == !dj.is_zero());
    }
}

#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace factorforge;

namespace {

UniPoly linear(std::int64_t root) { return UniPoly::linear_from_root(Fp::from_int(root)); }

bool has_root(const UniPoly& u) {
    // gcd(y^p - y, u) collects the linear factors
    UniPoly yp = uni_powmod(UniPoly::x(), Fp::modulus(), u);
    return uni_gcd(yp - UniPoly::x(), u).deg() >= 1;
}

} // namespace

TEST_CASE("squarefree decomposition worked examples") {
    // (y+1)^2 (y+2)
    UniPoly u = linear(-1) * linear(-1) * linear(-2);
    auto parts = squarefree_decompose(u); // emitted in multiplicity order
    REQUIRE(parts.size() == 2);
    REQUIRE(parts[0].first == linear(-2));
    REQUIRE(parts[0].second == 1);
    REQUIRE(parts[1].first == linear(-1));
    REQUIRE(parts[1].second == 2);

    // already squarefree
    UniPoly sf = linear(-1) * linear(-2) * linear(-3);
    auto single = squarefree_decompose(sf);
    REQUIRE(single.size() == 1);
    REQUIRE(single[0].first == sf);
    REQUIRE(single[0].second == 1);

    // pure power (y+3)^4
    UniPoly pw = linear(-3) * linear(-3) * linear(-3) * linear(-3);
    auto pp = squarefree_decompose(pw);
    REQUIRE(pp.size() == 1);
    REQUIRE(pp[0].first == linear(-3));
    REQUIRE(pp[0].second == 4);
}

TEST_CASE("squarefree parts reconstruct the input") {
    Rng rng(41);
    for (int iter = 0; iter < 40; ++iter) {
        UniPoly u = UniPoly::constant(Fp::one());
        int mults[3] = {1, 1 + int(rng.below(3)), 1 + int(rng.below(4))};
        for (int i = 0; i < 3; ++i) {
            UniPoly f = random_unipoly(rng, 1 + int(rng.below(2)), true);
            for (int m = 0; m < mults[i]; ++m) u = u * f;
        }
        UniPoly recon = UniPoly::constant(Fp::one());
        for (const auto& [p, m] : squarefree_decompose(u))
            for (int i = 0; i < m; ++i) recon = recon * p;
        REQUIRE(recon == u);
    }
}

TEST_CASE("factor_univariate worked examples") {
    Rng rng(42);
    // y^2 + 3y + 2 = (y+1)(y+2)
    UniPoly u({Fp(2), Fp(3), Fp(1)});
    auto fs = factor_univariate(u, rng);
    REQUIRE(fs.size() == 2);
    REQUIRE(fs[0] == linear(-1));
    REQUIRE(fs[1] == linear(-2));

    // y^2 + 1 is irreducible since p = 3 mod 4
    REQUIRE(Fp::modulus() % 4 == 3);
    UniPoly quad({Fp(1), Fp(0), Fp(1)});
    auto qs = factor_univariate(quad, rng);
    REQUIRE(qs.size() == 1);
    REQUIRE(qs[0] == quad);

    // linear input comes back as itself
    auto ls = factor_univariate(linear(-7), rng);
    REQUIRE(ls.size() == 1);
    REQUIRE(ls[0] == linear(-7));
}

TEST_CASE("factor_univariate on random monic inputs") {
    Rng rng(43);
    for (int iter = 0; iter < 100; ++iter) {
        int deg = 1 + int(rng.below(8));
        UniPoly u = random_unipoly(rng, deg, true);
        // make it squarefree (random polynomials essentially always are; keep
        // the guarantee anyway)
        if (uni_gcd(u, u.derivative()).deg() != 0) continue;
        auto fs = factor_univariate(u, rng);
        UniPoly recon = UniPoly::constant(Fp::one());
        for (const auto& f : fs) {
            recon = recon * f;
            REQUIRE(f.is_monic());
            if (f.deg() > 1) REQUIRE_FALSE(has_root(f));
            // trial splitting: re-factoring an irreducible returns itself
            auto again = factor_univariate(f, rng);
            REQUIRE(again.size() == 1);
            REQUIRE(again[0] == f);
        }
        REQUIRE(recon == u);
    }
}

TEST_CASE("seed_factorization groups multiplicities") {
    Rng rng(44);
    UniPoly u = linear(-1) * linear(-1) * linear(-2) * linear(-5) * linear(-5) * linear(-5);
    SeedFactorization sf = seed_factorization(u, rng);
    REQUIRE(sf.factors.size() == 3);
    REQUIRE(sf.product() == u);
    for (const auto& [f, m] : sf.factors) {
        if (f == linear(-1)) REQUIRE(m == 2);
        if (f == linear(-2)) REQUIRE(m == 1);
        if (f == linear(-5)) REQUIRE(m == 3);
    }
}

TEST_CASE("eth_root worked examples") {
    Rng rng(45);
    auto r = eth_root(Fp(4), 2, rng);
    REQUIRE(r.has_value());
    REQUIRE((*r == Fp(2) || *r == -Fp(2)));

    auto one = eth_root(Fp(1), 7, rng);
    REQUIRE(one.has_value());
    REQUIRE(one->pow(7) == Fp::one());

    // find a quadratic non-residue by the Euler criterion, expect no root
    Fp nr;
    for (std::uint64_t c = 2;; ++c) {
        nr = Fp(c);
        if (nr.pow((Fp::modulus() - 1) / 2) != Fp::one()) break;
    }
    REQUIRE_FALSE(eth_root(nr, 2, rng).has_value());

    REQUIRE_THROWS_AS(eth_root(Fp::zero(), 2, rng), Error);
}

TEST_CASE("eth_root inverts powers") {
    Rng rng(46);
    for (int iter = 0; iter < 30; ++iter) {
        Fp r = rng.nonzero_field_element();
        std::uint64_t e = 2 + rng.below(6);
        auto back = eth_root(r.pow(e), e, rng);
        REQUIRE(back.has_value());
        REQUIRE(back->pow(e) == r.pow(e));
    }
}

// keep this last: it swaps the global modulus and restores it
TEST_CASE("squarefree decomposition needs a large characteristic") {
    Fp::set_modulus(5);
    std::vector<Fp> c(8, Fp::one()); // degree 7 > p = 5
    try {
        squarefree_decompose(UniPoly(std::move(c)));
        FAIL("expected an unsupported-characteristic error");
    } catch (const Error& e) {
        REQUIRE(e.kind() == Errc::unsupported);
    }
    Fp::set_modulus(Fp::kMersenne61);
}

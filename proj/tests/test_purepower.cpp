#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace factorforge;

namespace {

Circuit power_circuit(const DensePoly& g, int e, std::uint32_t nvars) {
    CircuitBuilder b(nvars);
    std::vector<GateId> bind(nvars);
    for (std::uint32_t v = 0; v < nvars; ++v) bind[v] = b.input(v);
    Circuit gc = dense_to_circuit(g, nvars);
    auto map = append_circuit(b, gc, bind);
    return b.build({b.power(map[gc.outputs()[0]], std::uint64_t(e))});
}

int ceil_log2(int e) {
    int k = 0;
    while ((1 << k) < e) ++k;
    return k;
}

DensePoly dense_pow(const DensePoly& g, int e) {
    DensePoly acc = DensePoly::constant(g.nvars(), Fp::one());
    for (int i = 0; i < e; ++i) acc = acc * g;
    return acc;
}

} // namespace

TEST_CASE("power instance size bound") {
    Rng rng(71);
    for (int e = 2; e <= 8; ++e) {
        DensePoly g = random_dense(rng, 2, 3, 4);
        Circuit f = dense_to_circuit(g, 2);
        PowerInstance pi = build_power_instance(f, e);
        REQUIRE(expand(pi.fext)[0] ==
                DensePoly::variable(3, 2, e) - g.extended(3)); // z^e - f over (x, y, z)
        // growth in binary gates: the z^e ladder plus negate plus add
        std::size_t growth = pi.fext.num_binary_gates() - f.num_binary_gates();
        REQUIRE(growth <= 2 * std::size_t(ceil_log2(e)) + 2);
    }
    REQUIRE_THROWS_AS(build_power_instance(dense_to_circuit(DensePoly::variable(1, 0), 1), 1),
                      Error);
}

TEST_CASE("extract_root worked example: (y+x)^2") {
    DensePoly g = DensePoly::variable(2, 1) + DensePoly::variable(2, 0);
    Circuit f = power_circuit(g, 2, 2);
    Rng rng(72);
    Circuit got = extract_root(f, 2, rng, 2);
    DensePoly gd = expand(got)[0];
    REQUIRE(dense_pow(gd, 2) == dense_pow(g, 2));
}

TEST_CASE("extract_root worked example: (y^2+1)^2") {
    DensePoly g = DensePoly::variable(1, 0, 2) + DensePoly::constant(1, Fp::one());
    Circuit f = power_circuit(g, 2, 1);
    Rng rng(73);
    Circuit got = extract_root(f, 2, rng, 4);
    REQUIRE(dense_pow(expand(got)[0], 2) == dense_pow(g, 2));
}

TEST_CASE("extract_root rejects e = 1 and non-powers") {
    DensePoly g = DensePoly::variable(2, 1) + DensePoly::variable(2, 0);
    Circuit f = power_circuit(g, 2, 2);
    Rng rng(74);
    REQUIRE_THROWS_AS(extract_root(f, 1, rng, 2), Error);

    // y^2 + x is not a square
    DensePoly np = DensePoly::variable(2, 1, 2) + DensePoly::variable(2, 0);
    Circuit nf = dense_to_circuit(np, 2);
    try {
        extract_root(nf, 2, rng, 2);
        FAIL("expected not_a_pure_power");
    } catch (const Error& e) {
        REQUIRE(e.kind() == Errc::not_a_pure_power);
    }
}

TEST_CASE("seed coprimality: the cofactor does not vanish at the root") {
    Rng rng(75);
    for (int iter = 0; iter < 40; ++iter) {
        Fp r = rng.nonzero_field_element();
        int e = 2 + int(rng.below(6));
        // cofactor(z) = (z^e - r^e) / (z - r); at z = r it equals e * r^{e-1}
        std::vector<Fp> ext(std::size_t(e) + 1);
        ext[0] = -r.pow(std::uint64_t(e));
        ext[std::size_t(e)] = Fp::one();
        UniPoly cofactor = uni_divrem(UniPoly(std::move(ext)), UniPoly::linear_from_root(r)).first;
        REQUIRE(cofactor.eval(r) == Fp(std::uint64_t(e)) * r.pow(std::uint64_t(e - 1)));
        REQUIRE(uni_gcd(UniPoly::linear_from_root(r), cofactor).deg() == 0);
    }
}

TEST_CASE("planted pure powers across exponents") {
    Rng rng(76);
    for (int e = 2; e <= 5; ++e) {
        for (int iter = 0; iter < 2; ++iter) {
            int nvars = 2 + int(rng.below(2));
            DensePoly g = random_y_monic(rng, nvars, nvars - 1, 1 + int(rng.below(2)), 3);
            Circuit f = power_circuit(g, e, std::uint32_t(nvars));
            Circuit got = extract_root(f, e, rng, e * g.degree());
            REQUIRE(dense_pow(expand(got)[0], e) == dense_pow(g, e));
        }
    }
}

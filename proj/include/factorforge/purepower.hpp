#pragma once

#include <optional>
#include <vector>

#include "circuit.hpp"
#include "circuit_ops.hpp"
#include "error.hpp"
#include "lift.hpp"
#include "rng.hpp"
#include "seed.hpp"

namespace factorforge {

/// The z^e - f construction: one fresh variable z (appended last), a
/// square-and-multiply ladder for z^e, and a subtraction. Gate growth is at
/// most 2*ceil(log2 e) + 2 binary gates on top of f's copy.
struct PowerInstance {
    Circuit f;
    int e = 0;
    Circuit fext; // over nvars+1 variables, computes z^e - f
};

inline PowerInstance build_power_instance(const Circuit& f, int e) {
    if (e < 2) fail(Errc::domain, "pure-power extraction needs exponent >= 2");
    if (f.num_outputs() != 1) fail(Errc::structural, "build_power_instance expects one output");
    const std::uint32_t n = f.nvars();
    CircuitBuilder b(n + 1);
    std::vector<GateId> bind(n);
    for (std::uint32_t v = 0; v < n; ++v) bind[v] = b.input(v);
    std::vector<GateId> map = append_circuit(b, f, bind);
    GateId z = b.input(n);
    GateId ladder = b.power(z, std::uint64_t(e));
    GateId out = b.add(ladder, b.scaled(map[f.outputs()[0]], -Fp::one()));
    PowerInstance pi;
    pi.f = f;
    pi.e = e;
    pi.fext = b.build({out});
    return pi;
}

/// Recovers g with g^e = f by lifting the coprime split
/// z^e - f = (z - g) * (z^{e-1} + ... + g^{e-1}) seeded at a translated point.
/// Only the z - g side is lifted to full precision; the recovered circuit is
/// verified by g^e = f identity testing (throws not_a_pure_power on failure).
/// total_degree is deg(f); pass a negative value to have it probed.
inline Circuit extract_root(const Circuit& f, int e, Rng& rng, int total_degree = -1,
                            int trials = 20, int degree_cap = 64) {
    if (e < 2) fail(Errc::domain, "extract_root needs exponent >= 2");
    if (std::uint64_t(e) >= Fp::modulus())
        fail(Errc::unsupported, "exponent must be smaller than the characteristic");
    if (total_degree < 0) total_degree = degree_probe(f, rng, degree_cap);
    if (total_degree < 1 || total_degree % e != 0)
        fail(Errc::not_a_pure_power, "degree is not a multiple of the exponent");
    const int dg = total_degree / e;
    const std::uint32_t n = f.nvars();
    PowerInstance pi = build_power_instance(f, e);
    const std::uint64_t grid =
        std::max<std::uint64_t>(4 * std::uint64_t(total_degree) * std::uint64_t(total_degree), 64);

    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Fp> b(n);
        for (auto& v : b) v = rng.grid_element(grid);
        Fp c = f.eval(b)[0];
        if (c.is_zero()) continue;
        std::optional<Fp> r = eth_root(c, std::uint64_t(e), rng);
        if (!r) continue; // c is not an e-th power at this translation

        UniPoly seedg = UniPoly::linear_from_root(*r);
        std::vector<Fp> ext(std::size_t(e) + 1);
        ext[0] = -c;
        ext[std::size_t(e)] = Fp::one();
        UniPoly cofactor = uni_divrem(UniPoly(std::move(ext)), seedg).first;
        if (uni_gcd(seedg, cofactor).deg() != 0) continue; // r = 0 is excluded, so unreachable

        Normalization norm;
        norm.nvars = n + 1;
        norm.yvar = n; // z is the distinguished variable; fext is already monic in it
        norm.shift.assign(n + 1, Fp::zero());
        norm.translate.assign(n + 1, Fp::zero());
        for (std::uint32_t v = 0; v < n; ++v) norm.translate[v] = b[v];

        LiftRun run(pi.fext, seedg, cofactor, norm, dg);
        run.run_to_target();

        // -trunc(g~_0) is g itself in the translated coordinates
        const std::size_t gside[] = {0};
        Circuit gshift = run.truncated_coefficients(gside, dg, -Fp::one());
        Circuit gtrans = restrict_nvars(gshift, n);
        AffineMap untranslate = AffineMap::identity(n);
        for (std::uint32_t v = 0; v < n; ++v) untranslate.exprs[v].constant = -b[v];
        Circuit g = prune(substitute_affine(gtrans, untranslate));

        std::vector<Fp> point(n);
        bool ok = true;
        for (int t = 0; t < trials && ok; ++t) {
            for (auto& v : point) v = rng.field_element();
            ok = g.eval(point)[0].pow(std::uint64_t(e)) == f.eval(point)[0];
        }
        if (!ok) fail(Errc::not_a_pure_power, "candidate root failed the g^e identity test");
        return g;
    }
    fail(Errc::not_a_pure_power,
         "no usable translation found in 64 attempts (no e-th root at any probe)");
}

} // namespace factorforge

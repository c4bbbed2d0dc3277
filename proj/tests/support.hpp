#pragma once

#include <factorforge/factorforge.hpp>

#include <vector>

namespace ff = factorforge;

// Random dense polynomial: up to `terms` random monomials of total degree <= deg.
inline ff::DensePoly random_dense(ff::Rng& rng, int nvars, int deg, int terms) {
    ff::DensePoly p = ff::DensePoly::zero(nvars);
    for (int t = 0; t < terms; ++t) {
        ff::DensePoly mono = ff::DensePoly::constant(nvars, rng.field_element());
        int budget = deg;
        for (int v = 0; v < nvars; ++v) {
            int e = int(rng.below(std::uint64_t(budget) + 1));
            if (e) mono = mono * ff::DensePoly::variable(nvars, v, e);
            budget -= e;
        }
        p = p + mono;
    }
    return p;
}

inline ff::UniPoly random_unipoly(ff::Rng& rng, int deg, bool monic) {
    std::vector<ff::Fp> c(std::size_t(deg) + 1);
    for (auto& v : c) v = rng.field_element();
    if (monic)
        c[std::size_t(deg)] = ff::Fp::one();
    else
        while (c[std::size_t(deg)].is_zero()) c[std::size_t(deg)] = rng.field_element();
    return ff::UniPoly(std::move(c));
}

// Monic in yvar with total degree exactly ydeg: coefficient of y^i is a random
// dense polynomial of degree <= ydeg - i in the other variables.
inline ff::DensePoly random_y_monic(ff::Rng& rng, int nvars, int yvar, int ydeg, int terms = 4) {
    ff::DensePoly p = ff::DensePoly::variable(nvars, yvar, ydeg);
    for (int i = 0; i < ydeg; ++i) {
        ff::DensePoly ci = ff::DensePoly::zero(nvars);
        for (int t = 0; t < terms; ++t) {
            ff::DensePoly mono = ff::DensePoly::constant(nvars, rng.field_element());
            int budget = ydeg - i;
            for (int v = 0; v < nvars; ++v) {
                if (v == yvar) continue;
                int e = int(rng.below(std::uint64_t(budget) + 1));
                if (e) mono = mono * ff::DensePoly::variable(nvars, v, e);
                budget -= e;
            }
            ci = ci + mono;
        }
        p = p + ci * ff::DensePoly::variable(nvars, yvar, i);
    }
    return p;
}

inline ff::UniPoly image_at_origin(const ff::DensePoly& p, int yvar) {
    std::vector<ff::Fp> c(std::size_t(p.degree_in(yvar)) + 1);
    for (int i = 0; i <= p.degree_in(yvar); ++i)
        c[std::size_t(i)] = p.coefficient_of_power(yvar, i).constant_term();
    return ff::UniPoly(std::move(c));
}

// Product circuit of dense factors.
inline ff::Circuit product_circuit(const std::vector<ff::DensePoly>& polys, std::uint32_t nvars) {
    ff::CircuitBuilder b(nvars);
    std::vector<ff::GateId> bind(nvars);
    for (std::uint32_t v = 0; v < nvars; ++v) bind[v] = b.input(v);
    std::vector<ff::GateId> parts;
    for (const auto& p : polys) {
        ff::Circuit c = ff::dense_to_circuit(p, nvars);
        auto map = ff::append_circuit(b, c, bind);
        parts.push_back(map[c.outputs()[0]]);
    }
    ff::GateId acc = parts.at(0);
    for (std::size_t i = 1; i < parts.size(); ++i) acc = b.mul(acc, parts[i]);
    return b.build({acc});
}

inline ff::Normalization identity_norm(std::uint32_t nvars, std::uint32_t yvar) {
    ff::Normalization n;
    n.nvars = nvars;
    n.yvar = yvar;
    n.shift.assign(nvars, ff::Fp::zero());
    n.translate.assign(nvars, ff::Fp::zero());
    return n;
}

// A planted coprime split, already in lifting position (f monic in the last
// variable, seed images coprime with nonzero constant terms).
struct PlantedSplit {
    int nvars = 0;
    int yvar = 0;
    int d1 = 0, d2 = 0;
    ff::DensePoly g, h, f;
    ff::UniPoly sg, sh;
    ff::Circuit fc;
};

inline PlantedSplit plant_split(ff::Rng& rng, int nvars, int d1, int d2, int terms = 3) {
    const int yvar = nvars - 1;
    for (;;) {
        ff::DensePoly g = random_y_monic(rng, nvars, yvar, d1, terms);
        ff::DensePoly h = random_y_monic(rng, nvars, yvar, d2, terms);
        ff::UniPoly sg = image_at_origin(g, yvar);
        ff::UniPoly sh = image_at_origin(h, yvar);
        if (sg[0].is_zero() || sh[0].is_zero()) continue;
        if (ff::uni_gcd(sg, sh).deg() != 0) continue;
        PlantedSplit ps;
        ps.nvars = nvars;
        ps.yvar = yvar;
        ps.d1 = d1;
        ps.d2 = d2;
        ps.g = g;
        ps.h = h;
        ps.f = g * h;
        ps.sg = sg;
        ps.sh = sh;
        ps.fc = product_circuit({g, h}, std::uint32_t(nvars));
        return ps;
    }
}

// Random circuit with bounded output degree, for the structural passes.
inline ff::Circuit random_circuit(ff::Rng& rng, int nvars, int binary_gates, int maxdeg) {
    ff::CircuitBuilder b{std::uint32_t(nvars)};
    std::vector<ff::GateId> pool;
    std::vector<int> degs;
    for (int v = 0; v < nvars; ++v) {
        pool.push_back(b.input(std::uint32_t(v)));
        degs.push_back(1);
    }
    pool.push_back(b.constant(rng.field_element()));
    degs.push_back(0);
    for (int i = 0; i < binary_gates; ++i) {
        for (int tries = 0;; ++tries) {
            std::size_t a = rng.below(pool.size());
            std::size_t c = rng.below(pool.size());
            bool mul = rng.below(2) == 0;
            int nd = mul ? degs[a] + degs[c] : std::max(degs[a], degs[c]);
            if (nd > maxdeg && tries < 8) continue;
            if (nd > maxdeg) { mul = false; nd = std::max(degs[a], degs[c]); }
            pool.push_back(mul ? b.mul(pool[a], pool[c]) : b.add(pool[a], pool[c]));
            degs.push_back(nd);
            break;
        }
    }
    return b.build({pool.back()});
}

inline std::vector<ff::Fp> random_point(ff::Rng& rng, std::size_t n) {
    std::vector<ff::Fp> p(n);
    for (auto& v : p) v = rng.field_element();
    return p;
}

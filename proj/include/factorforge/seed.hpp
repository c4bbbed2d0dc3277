#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rng.hpp"
#include "unipoly.hpp"

namespace factorforge {

/// The factorization of the univariate image f(0,y) that bootstraps a lift:
/// the one piece of data the construction does not produce by itself.
struct SeedFactorization {
    UniPoly image;                                 // monic
    std::vector<std::pair<UniPoly, int>> factors;  // (irreducible monic, multiplicity)

    int distinct_count() const { return int(factors.size()); }

    UniPoly product() const {
        UniPoly acc = UniPoly::constant(Fp::one());
        for (const auto& [f, m] : factors)
            for (int i = 0; i < m; ++i) acc = acc * f;
        return acc;
    }
};

/// Yun's squarefree decomposition. Pairwise-coprime monic squarefree parts
/// with multiplicities whose weighted product reconstructs u. Needs the
/// characteristic to exceed deg(u).
inline std::vector<std::pair<UniPoly, int>> squarefree_decompose(const UniPoly& u) {
    if (!u.is_monic() || u.deg() < 1)
        fail(Errc::domain, "squarefree decomposition expects a monic nonconstant input");
    if (Fp::modulus() <= std::uint64_t(u.deg()))
        fail(Errc::unsupported, "characteristic too small for squarefree decomposition");

    std::vector<std::pair<UniPoly, int>> out;
    UniPoly a = uni_gcd(u, u.derivative());
    UniPoly b = uni_divrem(u, a).first;
    UniPoly c = uni_divrem(u.derivative(), a).first;
    UniPoly d = c - b.derivative();
    for (int i = 1; b.deg() != 0; ++i) {
        if (i > u.deg() + 1) fail(Errc::internal, "squarefree decomposition failed to terminate");
        UniPoly ai = uni_gcd(b, d);
        if (ai.deg() > 0) out.push_back({ai, i});
        b = uni_divrem(b, ai).first;
        c = uni_divrem(d, ai).first;
        d = c - b.derivative();
    }
    return out;
}

namespace detail {

/// One Cantor-Zassenhaus probe: gcd(a^((p^k-1)/2) - 1, w). The big exponent is
/// taken as ((p-1)/2) * (1 + p + ... + p^{k-1}); the inner norm-style factor is
/// accumulated with k-1 Frobenius powerings, so no big-integer arithmetic is
/// needed.
inline UniPoly cz_probe(const UniPoly& a, const UniPoly& w, int k) {
    UniPoly amod = uni_divrem(a, w).second;
    UniPoly t = amod;
    for (int i = 1; i < k; ++i)
        t = uni_divrem(uni_powmod(t, Fp::modulus(), w) * amod, w).second;
    UniPoly b = uni_powmod(t, (Fp::modulus() - 1) / 2, w);
    return uni_gcd(b - UniPoly::constant(Fp::one()), w);
}

inline void equal_degree_split(const UniPoly& w, int k, Rng& rng, std::vector<UniPoly>& out) {
    if (w.deg() == k) {
        out.push_back(w);
        return;
    }
    for (int attempt = 0; attempt < 64; ++attempt) {
        UniPoly a;
        if (k == 1) {
            a = UniPoly({rng.field_element(), Fp::one()}); // random linear shift
        } else {
            std::vector<Fp> coeffs(std::size_t(2 * k));
            for (auto& c : coeffs) c = rng.field_element();
            a = UniPoly(std::move(coeffs));
            if (a.is_zero()) continue;
        }
        UniPoly g = cz_probe(a, w, k);
        if (g.deg() > 0 && g.deg() < w.deg()) {
            equal_degree_split(g, k, rng, out);
            equal_degree_split(uni_divrem(w, g).first.monic(), k, rng, out);
            return;
        }
    }
    fail(Errc::internal, "equal-degree splitting exhausted its retry budget");
}

} // namespace detail

/// Monic irreducible factors of a monic squarefree polynomial over F_p,
/// by distinct-degree then equal-degree splitting. Randomized but fully
/// determined by the rng state; output is canonically sorted.
inline std::vector<UniPoly> factor_univariate(const UniPoly& u, Rng& rng) {
    if (!u.is_monic() || u.deg() < 1)
        fail(Errc::domain, "factor_univariate expects a monic nonconstant input");

    std::vector<std::pair<UniPoly, int>> classes; // (product of degree-k irreducibles, k)
    UniPoly v = u;
    UniPoly x = UniPoly::x();
    UniPoly h = x;
    for (int k = 1; v.deg() >= 2 * k; ++k) {
        h = uni_powmod(h, Fp::modulus(), v);
        UniPoly g = uni_gcd(h - x, v);
        if (g.deg() > 0) {
            classes.push_back({g, k});
            v = uni_divrem(v, g).first.monic();
            h = uni_divrem(h, v).second;
        }
    }
    if (v.deg() > 0) classes.push_back({v, v.deg()});

    std::vector<UniPoly> out;
    for (const auto& [w, k] : classes) detail::equal_degree_split(w, k, rng, out);
    std::sort(out.begin(), out.end(), UniPoly::canonical_less);
    return out;
}

/// Full seed factorization of a monic image: irreducibles with multiplicities.
inline SeedFactorization seed_factorization(const UniPoly& image, Rng& rng) {
    SeedFactorization sf;
    sf.image = image;
    for (const auto& [part, mult] : squarefree_decompose(image))
        for (const UniPoly& irr : factor_univariate(part, rng)) sf.factors.push_back({irr, mult});
    std::sort(sf.factors.begin(), sf.factors.end(),
              [](const auto& a, const auto& b) { return UniPoly::canonical_less(a.first, b.first); });
    return sf;
}

/// Some r with r^e = c, found by factoring z^e - c and reading a linear
/// factor's root; empty if c has no e-th root. c must be nonzero.
inline std::optional<Fp> eth_root(Fp c, std::uint64_t e, Rng& rng) {
    if (c.is_zero()) fail(Errc::domain, "eth_root of zero (normalization guarantees nonzero)");
    if (e < 1 || e > Fp::modulus() - 1) fail(Errc::domain, "eth_root exponent out of range");
    if (e == 1) return c;
    std::vector<Fp> coeffs(std::size_t(e) + 1);
    coeffs[0] = -c;
    coeffs[std::size_t(e)] = Fp::one();
    UniPoly pe(std::move(coeffs)); // z^e - c, squarefree since c != 0 and p does not divide e
    for (const UniPoly& f : factor_univariate(pe, rng))
        if (f.deg() == 1) return -f[0];
    return std::nullopt;
}

} // namespace factorforge

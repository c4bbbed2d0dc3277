#pragma once

#include <span>

#include "densepoly.hpp"
#include "unipoly.hpp"

namespace factorforge {

/// Reduction of a dense polynomial modulo <x_S>^k where S is given as a
/// variable bitmask: drops every term of total degree >= k in those variables.
/// Idempotent and linear.
inline DensePoly truncate_mod_ideal(const DensePoly& a, std::uint32_t varmask, int k) {
    return a.truncate_mod_ideal(varmask, k);
}

/// First-order composition: Q(base) + sum_i dQ/dz_i(base) * delta_i. When
/// every delta_i has all terms of degree >= k, this is congruent to
/// Q(base + delta) mod <x>^{k+1}; the quadratic and higher correction terms
/// land in the ideal.
inline DensePoly linearized_compose(const DensePoly& q, std::span<const DensePoly> base,
                                    std::span<const DensePoly> delta, int /*k*/) {
    if (base.size() != delta.size() || int(base.size()) != q.nvars())
        fail(Errc::structural, "linearized_compose arity mismatch");
    DensePoly acc = q.compose(base);
    for (std::size_t i = 0; i < delta.size(); ++i) {
        if (delta[i].is_zero()) continue;
        acc = acc + q.derivative(int(i)).compose(base) * delta[i];
    }
    return acc;
}

} // namespace factorforge

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "circuit.hpp"
#include "densepoly.hpp"
#include "error.hpp"

namespace factorforge {

namespace detail {

inline std::vector<DensePoly> expand_impl(const Circuit& c, std::uint32_t varmask, int trunc,
                                          int degree_cap) {
    if (c.nvars() > DensePoly::kMaxVars)
        fail(Errc::capacity, "dense expansion supports at most 8 variables");
    std::vector<bool> need = c.reachable();
    std::vector<DensePoly> val(c.gates().size());
    for (std::size_t i = 0; i < c.gates().size(); ++i) {
        if (!need[i]) continue;
        const Gate& g = c.gates()[i];
        switch (g.kind) {
            case GateKind::Input: val[i] = DensePoly::variable(int(c.nvars()), int(g.a)); break;
            case GateKind::Const: val[i] = DensePoly::constant(int(c.nvars()), g.c); break;
            case GateKind::Add: val[i] = val[g.a] + val[g.b]; break;
            case GateKind::Mul:
                val[i] = DensePoly::mul_truncated(val[g.a], val[g.b], varmask, trunc);
                break;
        }
        if (trunc >= 0 && g.kind != GateKind::Mul)
            val[i] = val[i].truncate_mod_ideal(varmask, trunc);
        if (val[i].degree() > degree_cap)
            fail(Errc::capacity, "circuit expansion exceeded the degree cap");
    }
    std::vector<DensePoly> out;
    out.reserve(c.num_outputs());
    for (GateId o : c.outputs()) out.push_back(val[o]);
    return out;
}

} // namespace detail

/// Exact dense polynomial for every output. Throws a capacity error if any
/// reachable gate's polynomial exceeds `degree_cap`; this is the desk-scale
/// oracle bridge, not a general-purpose evaluator.
inline std::vector<DensePoly> expand(const Circuit& c, int degree_cap = DensePoly::kDegreeCap) {
    return detail::expand_impl(c, 0, -1, degree_cap);
}

/// Dense expansion in the quotient ring mod <masked vars>^k: every gate value
/// is truncated as it is formed, which keeps the lift circuits (whose
/// untruncated garbage degrees grow exponentially) expandable.
inline std::vector<DensePoly> expand_mod_ideal(const Circuit& c, std::uint32_t varmask, int k,
                                               int degree_cap = DensePoly::kDegreeCap) {
    if (k < 0) fail(Errc::structural, "ideal power must be nonnegative");
    return detail::expand_impl(c, varmask, k, degree_cap);
}

/// Univariate truncated power series of fixed length; the coefficient of eps^j
/// sits at index j. Used to evaluate truncation-of-a-circuit at a point
/// without materializing the truncating circuit: run the gates over
/// F[eps]/<eps^K> at the scaled point (eps*v) and read off components.
class TruncSeries {
public:
    TruncSeries() = default;
    TruncSeries(std::size_t len, Fp c0) : c_(len) {
        if (len) c_[0] = c0;
    }

    std::size_t length() const { return c_.size(); }
    Fp operator[](std::size_t i) const { return c_[i]; }
    Fp& operator[](std::size_t i) { return c_[i]; }

    Fp sum_of_coefficients() const {
        Fp s;
        for (Fp v : c_) s += v;
        return s;
    }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        TruncSeries r(a.c_.size(), Fp());
        for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        TruncSeries r(a.c_.size(), Fp());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; i + j < a.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }

private:
    std::vector<Fp> c_;
};

/// Evaluates the circuit over the truncated series ring, one series per input
/// variable.
inline std::vector<TruncSeries> eval_series(const Circuit& c, std::span<const TruncSeries> point,
                                            std::size_t len) {
    if (point.size() != c.nvars()) fail(Errc::structural, "series point arity mismatch");
    std::vector<bool> need = c.reachable();
    std::vector<TruncSeries> val(c.gates().size());
    for (std::size_t i = 0; i < c.gates().size(); ++i) {
        if (!need[i]) continue;
        const Gate& g = c.gates()[i];
        switch (g.kind) {
            case GateKind::Input: val[i] = point[g.a]; break;
            case GateKind::Const: val[i] = TruncSeries(len, g.c); break;
            case GateKind::Add: val[i] = val[g.a] + val[g.b]; break;
            case GateKind::Mul: val[i] = val[g.a] * val[g.b]; break;
        }
    }
    std::vector<TruncSeries> out;
    out.reserve(c.num_outputs());
    for (GateId o : c.outputs()) out.push_back(val[o]);
    return out;
}

} // namespace factorforge

#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "densepoly.hpp"
#include "error.hpp"
#include "fp.hpp"

namespace factorforge {

/// Univariate polynomial over F_p, coefficients indexed by power (lowest
/// first). Leading coefficient is nonzero unless the polynomial is zero.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Fp> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPoly zero() { return UniPoly(); }
    static UniPoly constant(Fp c) { return UniPoly({c}); }
    static UniPoly x() { return UniPoly({Fp::zero(), Fp::one()}); }

    /// x - root
    static UniPoly linear_from_root(Fp root) { return UniPoly({-root, Fp::one()}); }

    int deg() const { return int(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == Fp::one(); }

    Fp operator[](int i) const { return (i >= 0 && i < int(c_.size())) ? c_[i] : Fp::zero(); }
    Fp leading() const { return c_.empty() ? Fp::zero() : c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == Fp::one(); }

    const std::vector<Fp>& coeffs() const { return c_; }

    Fp eval(Fp at) const {
        Fp acc;
        for (int i = deg(); i >= 0; --i) acc = acc * at + c_[i];
        return acc;
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Fp> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[int(i)] + b[int(i)];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        std::vector<Fp> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[int(i)] - b[int(i)];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        std::vector<Fp> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(r));
    }

    UniPoly scaled(Fp s) const {
        std::vector<Fp> r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * s;
        return UniPoly(std::move(r));
    }

    UniPoly monic() const {
        if (is_zero()) fail(Errc::domain, "monic() of the zero polynomial");
        return scaled(leading().inverse());
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return zero();
        std::vector<Fp> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Fp(std::uint64_t(i));
        return UniPoly(std::move(r));
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    /// Canonical comparison used for deterministic orderings: by degree, then
    /// coefficients from the top down.
    static bool canonical_less(const UniPoly& a, const UniPoly& b) {
        if (a.deg() != b.deg()) return a.deg() < b.deg();
        for (int i = a.deg(); i >= 0; --i)
            if (a[i] != b[i]) return a[i].value() < b[i].value();
        return false;
    }

    std::string to_string(const std::string& name = "y") const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = deg(); i >= 0; --i) {
            if (c_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            if (i == 0 || c_[i] != Fp::one()) out += c_[i].to_string();
            if (i > 0) {
                if (c_[i] != Fp::one()) out += "*";
                out += name;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

    DensePoly to_dense(int nvars, int var) const {
        DensePoly r = DensePoly::zero(nvars);
        for (int i = 0; i <= deg(); ++i) {
            if (c_[i].is_zero()) continue;
            r = r + DensePoly::variable(nvars, var, i).scaled(c_[i]);
        }
        return r;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Fp> c_;
};

/// Quotient and remainder with deg(rem) < deg(b).
inline std::pair<UniPoly, UniPoly> uni_divrem(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) fail(Errc::domain, "univariate division by zero");
    std::vector<Fp> rem(a.coeffs());
    int db = b.deg();
    if (a.deg() < db) return {UniPoly::zero(), a};
    std::vector<Fp> quot(a.deg() - db + 1);
    Fp invlead = b.leading().inverse();
    for (int i = a.deg(); i >= db; --i) {
        Fp q = rem[i] * invlead;
        if (q.is_zero()) continue;
        quot[i - db] = q;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= q * b[j];
    }
    return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

/// Monic greatest common divisor by the Euclidean algorithm. Errors if both
/// inputs are zero.
inline UniPoly uni_gcd(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() && b.is_zero())
        fail(Errc::domain, "gcd of two zero polynomials");
    UniPoly r0 = a, r1 = b;
    while (!r1.is_zero()) {
        UniPoly r2 = uni_divrem(r0, r1).second;
        r0 = std::move(r1);
        r1 = std::move(r2);
    }
    return r0.monic();
}

/// Lagrange interpolation through distinct sample points.
inline UniPoly uni_interpolate(std::span<const Fp> xs, std::span<const Fp> ys) {
    if (xs.size() != ys.size() || xs.empty())
        fail(Errc::structural, "interpolation needs matching nonempty samples");
    UniPoly acc = UniPoly::zero();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        UniPoly basis = UniPoly::constant(Fp::one());
        Fp denom = Fp::one();
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (i == j) continue;
            basis = basis * UniPoly::linear_from_root(xs[j]);
            denom *= xs[i] - xs[j];
        }
        if (denom.is_zero()) fail(Errc::domain, "interpolation nodes must be distinct");
        acc = acc + basis.scaled(ys[i] / denom);
    }
    return acc;
}

/// b^e mod m by square and multiply.
inline UniPoly uni_powmod(const UniPoly& b, std::uint64_t e, const UniPoly& m) {
    UniPoly result = UniPoly::constant(Fp::one());
    UniPoly base = uni_divrem(b, m).second;
    while (e) {
        if (e & 1) result = uni_divrem(result * base, m).second;
        base = uni_divrem(base * base, m).second;
        e >>= 1;
    }
    return result;
}

} // namespace factorforge

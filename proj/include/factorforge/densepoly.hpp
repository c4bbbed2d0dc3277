#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"
#include "fp.hpp"

namespace factorforge {

/// Exact multivariate polynomial over F_p, the brute-force oracle everything
/// else is checked against. Terms are kept in a sorted vector keyed by a packed
/// exponent word: variable i occupies bits [8i, 8i+8). That caps the oracle at
/// 8 variables and total degree 64, which is all the desk-scale verification
/// here ever needs; circuit evaluation itself has no such limits.
class DensePoly {
public:
    static constexpr int kMaxVars = 8;
    static constexpr int kDegreeCap = 64;

    using Key = std::uint64_t;

    DensePoly() : nvars_(0) {}

    explicit DensePoly(int nvars) : nvars_(nvars) { check_nvars(nvars); }

    static DensePoly zero(int nvars) { return DensePoly(nvars); }

    static DensePoly constant(int nvars, Fp c) {
        DensePoly p(nvars);
        if (!c.is_zero()) p.terms_.push_back({0, c});
        return p;
    }

    static DensePoly variable(int nvars, int var, int power = 1) {
        DensePoly p(nvars);
        if (var < 0 || var >= nvars) fail(Errc::structural, "variable index out of range");
        if (power < 0 || power > kDegreeCap) fail(Errc::capacity, "monomial degree exceeds oracle cap");
        p.terms_.push_back({pack_single(var, power), Fp::one()});
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0);
    }
    Fp constant_term() const {
        if (!terms_.empty() && terms_[0].first == 0) return terms_[0].second;
        return Fp::zero();
    }

    /// Total degree; -1 for the zero polynomial.
    int degree() const {
        int d = -1;
        for (const auto& [k, c] : terms_) d = std::max(d, key_total_degree(k));
        return d;
    }

    int degree_in(int var) const {
        int d = terms_.empty() ? -1 : 0;
        for (const auto& [k, c] : terms_) d = std::max(d, key_exponent(k, var));
        return d;
    }

    Fp coefficient(Key key) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                                   [](const Term& t, Key k) { return t.first < k; });
        if (it != terms_.end() && it->first == key) return it->second;
        return Fp::zero();
    }

    static int key_exponent(Key k, int var) { return int((k >> (8 * var)) & 0xFF); }

    static int key_total_degree(Key k) {
        int d = 0;
        while (k) { d += int(k & 0xFF); k >>= 8; }
        return d;
    }

    static Key pack_single(int var, int power) { return Key(power) << (8 * var); }

    friend DensePoly operator+(const DensePoly& a, const DensePoly& b) {
        require_same_arity(a, b);
        DensePoly r(a.nvars_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
                r.terms_.push_back(b.terms_[j++]);
            } else {
                Fp c = a.terms_[i].second + b.terms_[j].second;
                if (!c.is_zero()) r.terms_.push_back({a.terms_[i].first, c});
                ++i; ++j;
            }
        }
        return r;
    }

    friend DensePoly operator-(const DensePoly& a, const DensePoly& b) { return a + b.scaled(-Fp::one()); }

    friend DensePoly operator*(const DensePoly& a, const DensePoly& b) {
        require_same_arity(a, b);
        if (a.is_zero() || b.is_zero()) return zero(a.nvars_);
        if (a.degree() + b.degree() > kDegreeCap)
            fail(Errc::capacity, "dense product degree exceeds oracle cap of 64");
        return mul_impl(a, b, /*mask=*/0, /*trunc=*/-1);
    }

    DensePoly scaled(Fp c) const {
        DensePoly r(nvars_);
        if (c.is_zero()) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& [k, v] : terms_) r.terms_.push_back({k, v * c});
        return r;
    }

    friend bool operator==(const DensePoly& a, const DensePoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const DensePoly& a, const DensePoly& b) { return !(a == b); }

    Fp eval(std::span<const Fp> point) const {
        if (int(point.size()) != nvars_)
            fail(Errc::structural, "evaluation point arity mismatch");
        Fp acc;
        for (const auto& [k, c] : terms_) {
            Fp m = c;
            Key kk = k;
            for (int v = 0; kk; ++v, kk >>= 8) {
                int e = int(kk & 0xFF);
                if (e) m *= point[v].pow(e);
            }
            acc += m;
        }
        return acc;
    }

    /// Drops every term whose total degree over the variables in `varmask`
    /// (bit v set = variable v counted) is >= k. This is reduction mod the
    /// ideal generated by degree-k products of those variables.
    DensePoly truncate_mod_ideal(std::uint32_t varmask, int k) const {
        if (k < 0) fail(Errc::structural, "ideal power must be nonnegative");
        DensePoly r(nvars_);
        for (const auto& [key, c] : terms_)
            if (masked_degree(key, varmask) < k) r.terms_.push_back({key, c});
        return r;
    }

    /// Sum of the terms of total degree exactly j (all variables weighted 1).
    DensePoly homogeneous_component(int j) const {
        DensePoly r(nvars_);
        for (const auto& [key, c] : terms_)
            if (key_total_degree(key) == j) r.terms_.push_back({key, c});
        return r;
    }

    DensePoly truncate_total_degree(int d) const {
        DensePoly r(nvars_);
        for (const auto& [key, c] : terms_)
            if (key_total_degree(key) <= d) r.terms_.push_back({key, c});
        return r;
    }

    DensePoly derivative(int var) const {
        DensePoly r(nvars_);
        for (const auto& [key, c] : terms_) {
            int e = key_exponent(key, var);
            if (e == 0) continue;
            Fp nc = c * Fp(std::uint64_t(e));
            if (!nc.is_zero()) r.terms_.push_back({key - pack_single(var, 1), nc});
        }
        sort_by_key(r.terms_);
        return r;
    }

    /// Extracts the coefficient of var^power as a polynomial (still over the
    /// same variable set; the extracted variable no longer occurs in it).
    DensePoly coefficient_of_power(int var, int power) const {
        DensePoly r(nvars_);
        for (const auto& [key, c] : terms_)
            if (key_exponent(key, var) == power)
                r.terms_.push_back({key - pack_single(var, power), c});
        sort_by_key(r.terms_);
        return r;
    }

    /// Substitutes a fixed value for one variable.
    DensePoly substitute(int var, Fp value) const {
        DensePoly r(nvars_);
        std::unordered_map<Key, Fp> acc;
        for (const auto& [key, c] : terms_) {
            int e = key_exponent(key, var);
            Fp nc = e ? c * value.pow(e) : c;
            acc[key - pack_single(var, e)] += nc;
        }
        r.terms_ = flush(acc);
        return r;
    }

    /// Full composition: every variable i is replaced by args[i]. All args must
    /// share an arity, which becomes the arity of the result.
    DensePoly compose(std::span<const DensePoly> args) const {
        if (int(args.size()) != nvars_) fail(Errc::structural, "compose arity mismatch");
        int out_vars = args.empty() ? 0 : args[0].nvars();
        for (const auto& a : args)
            if (a.nvars() != out_vars) fail(Errc::structural, "compose argument arity mismatch");
        DensePoly acc = zero(out_vars);
        for (const auto& [key, c] : terms_) {
            DensePoly m = constant(out_vars, c);
            Key kk = key;
            for (int v = 0; kk; ++v, kk >>= 8) {
                int e = int(kk & 0xFF);
                for (int t = 0; t < e; ++t) m = m * args[v];
            }
            acc = acc + m;
        }
        return acc;
    }

    /// Same polynomial over a wider variable set (the new variables do not
    /// occur in it).
    DensePoly extended(int new_nvars) const {
        if (new_nvars < nvars_) fail(Errc::structural, "extended() cannot drop variables");
        check_nvars(new_nvars);
        DensePoly r = *this;
        r.nvars_ = new_nvars;
        return r;
    }

    /// Exact division; empty optional if b does not divide *this.
    static std::optional<DensePoly> try_divide_exact(const DensePoly& a, const DensePoly& b);

    std::string to_string(const std::vector<std::string>& names = {}) const;

    const std::vector<std::pair<Key, Fp>>& terms() const { return terms_; }

    /// Truncating product used by the expansion oracle: drops result terms with
    /// masked degree >= trunc as it goes (trunc < 0 means no truncation).
    static DensePoly mul_truncated(const DensePoly& a, const DensePoly& b,
                                   std::uint32_t varmask, int trunc) {
        require_same_arity(a, b);
        if (a.is_zero() || b.is_zero()) return zero(a.nvars_);
        return mul_impl(a, b, varmask, trunc);
    }

    static int masked_degree(Key k, std::uint32_t varmask) {
        int d = 0;
        for (int v = 0; k; ++v, k >>= 8)
            if (varmask & (1u << v)) d += int(k & 0xFF);
        return d;
    }

private:
    using Term = std::pair<Key, Fp>;

    static void check_nvars(int nvars) {
        if (nvars < 0 || nvars > kMaxVars)
            fail(Errc::capacity, "dense oracle supports at most 8 variables");
    }

    static void sort_by_key(std::vector<Term>& terms) {
        std::sort(terms.begin(), terms.end(),
                  [](const Term& x, const Term& y) { return x.first < y.first; });
    }

    static void require_same_arity(const DensePoly& a, const DensePoly& b) {
        if (a.nvars_ != b.nvars_) fail(Errc::structural, "dense polynomial arity mismatch");
    }

    static std::vector<Term> flush(std::unordered_map<Key, Fp>& acc) {
        std::vector<Term> out;
        out.reserve(acc.size());
        for (auto& [k, c] : acc)
            if (!c.is_zero()) out.push_back({k, c});
        std::sort(out.begin(), out.end(),
                  [](const Term& x, const Term& y) { return x.first < y.first; });
        return out;
    }

    static DensePoly mul_impl(const DensePoly& a, const DensePoly& b,
                              std::uint32_t varmask, int trunc) {
        DensePoly r(a.nvars_);
        std::unordered_map<Key, Fp> acc;
        acc.reserve(a.terms_.size() * 2);
        for (const auto& [ka, ca] : a.terms_) {
            if (trunc >= 0 && masked_degree(ka, varmask) >= trunc) continue;
            for (const auto& [kb, cb] : b.terms_) {
                Key k = ka + kb;
                if (trunc >= 0 && masked_degree(k, varmask) >= trunc) continue;
                acc[k] += ca * cb;
            }
        }
        r.terms_ = flush(acc);
        return r;
    }

    int nvars_;
    std::vector<Term> terms_; // sorted by key, no zero coefficients
};

/// Free-function spellings of the oracle operations.
inline DensePoly poly_mul(const DensePoly& a, const DensePoly& b) { return a * b; }

inline Fp poly_eval(const DensePoly& a, std::span<const Fp> point) { return a.eval(point); }

inline std::optional<DensePoly> DensePoly::try_divide_exact(const DensePoly& a, const DensePoly& b) {
    if (b.is_zero()) fail(Errc::domain, "division by the zero polynomial");
    if (a.is_zero()) return zero(a.nvars());
    require_same_arity(a, b);
    // Repeated cancellation of the lex-largest term. The packed key order is a
    // valid monomial order for this purpose (it is a graded order per variable
    // block and multiplicative: key(m1*m2) = key(m1) + key(m2), no carries
    // below the degree cap).
    DensePoly rem = a;
    DensePoly quot(a.nvars());
    const auto& bl = b.terms_.back(); // leading term of b
    std::vector<Term> qterms;
    while (!rem.is_zero()) {
        const auto& rl = rem.terms_.back();
        // divisibility of the leading monomials, per variable
        Key kq = 0;
        bool ok = true;
        for (int v = 0; v < a.nvars(); ++v) {
            int er = key_exponent(rl.first, v), eb = key_exponent(bl.first, v);
            if (er < eb) { ok = false; break; }
            kq += pack_single(v, er - eb);
        }
        if (!ok) return std::nullopt;
        Fp cq = rl.second / bl.second;
        DensePoly mono(a.nvars());
        mono.terms_.push_back({kq, cq});
        qterms.push_back({kq, cq});
        rem = rem - mul_impl(mono, b, 0, -1);
    }
    std::sort(qterms.begin(), qterms.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    quot.terms_ = std::move(qterms);
    return quot;
}

inline std::string DensePoly::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    // Highest total degree first, ties by descending key: a stable order for
    // printed output.
    std::vector<Term> sorted = terms_;
    std::sort(sorted.begin(), sorted.end(), [](const Term& x, const Term& y) {
        int dx = key_total_degree(x.first), dy = key_total_degree(y.first);
        if (dx != dy) return dx > dy;
        return x.first > y.first;
    });
    std::string out;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i) out += " + ";
        const auto& [key, c] = sorted[i];
        bool printed = false;
        if (key == 0 || c != Fp::one()) {
            out += c.to_string();
            printed = true;
        }
        for (int v = 0; v < nvars_; ++v) {
            int e = key_exponent(key, v);
            if (!e) continue;
            if (printed) out += "*";
            out += (v < int(names.size())) ? names[v] : "x" + std::to_string(v + 1);
            if (e > 1) out += "^" + std::to_string(e);
            printed = true;
        }
    }
    return out;
}

} // namespace factorforge

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace factorforge {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

} // namespace detail

/// Element of the prime field F_p. The modulus is process-global state: set it
/// once (before creating any elements) and leave it alone; every operation
/// afterwards is a pure value computation. Default is the Mersenne prime 2^61-1.
class Fp {
public:
    static constexpr std::uint64_t kMersenne61 = (1ULL << 61) - 1;

    Fp() = default;
    explicit Fp(std::uint64_t v) : v_(v % mod_) {}

    static Fp from_int(std::int64_t v) {
        std::int64_t m = static_cast<std::int64_t>(mod_);
        std::int64_t r = v % m;
        if (r < 0) r += m;
        return Fp(static_cast<std::uint64_t>(r));
    }

    static void set_modulus(std::uint64_t p) {
        if (p < 3 || p >= (1ULL << 62))
            throw std::invalid_argument("field modulus must be an odd prime in [3, 2^62)");
        if (!detail::is_prime_u64(p))
            throw std::invalid_argument("field modulus " + std::to_string(p) + " is not prime");
        mod_ = p;
    }
    static std::uint64_t modulus() { return mod_; }

    std::uint64_t value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    static Fp zero() { return Fp(); }
    static Fp one() { return Fp(1); }

    Fp& operator+=(Fp o) {
        v_ += o.v_;
        if (v_ >= mod_) v_ -= mod_;
        return *this;
    }
    Fp& operator-=(Fp o) {
        v_ = (v_ >= o.v_) ? v_ - o.v_ : v_ + mod_ - o.v_;
        return *this;
    }
    Fp& operator*=(Fp o) {
        if (mod_ == kMersenne61) {
            unsigned __int128 z = static_cast<unsigned __int128>(v_) * o.v_;
            std::uint64_t lo = static_cast<std::uint64_t>(z) & kMersenne61;
            std::uint64_t hi = static_cast<std::uint64_t>(z >> 61);
            std::uint64_t s = lo + hi;
            if (s >= kMersenne61) s -= kMersenne61;
            v_ = s;
        } else {
            v_ = detail::mulmod_u64(v_, o.v_, mod_);
        }
        return *this;
    }

    friend Fp operator+(Fp a, Fp b) { return a += b; }
    friend Fp operator-(Fp a, Fp b) { return a -= b; }
    friend Fp operator*(Fp a, Fp b) { return a *= b; }
    friend Fp operator-(Fp a) { return Fp() - a; }
    friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }
    friend bool operator!=(Fp a, Fp b) { return a.v_ != b.v_; }

    Fp pow(std::uint64_t e) const { return Fp(detail::powmod_u64(v_, e, mod_)); }

    Fp inverse() const {
        if (v_ == 0) throw std::domain_error("inverse of zero field element");
        return pow(mod_ - 2);
    }

    std::string to_string() const { return std::to_string(v_); }

private:
    static inline std::uint64_t mod_ = kMersenne61;
    std::uint64_t v_ = 0;
};

inline Fp operator/(Fp a, Fp b) { return a * b.inverse(); }

} // namespace factorforge

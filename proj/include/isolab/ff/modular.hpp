#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <cmath>
#include <random>

#include <boost/multiprecision/miller_rabin.hpp>

#include "../bigint.hpp"

namespace isolab::ff {

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

/// x mod p for a fixed p by Barrett reduction with floor((2^64 - 1) / p).
struct FastMod {
    u64 p = 1, m = 0;
    FastMod() = default;
    explicit FastMod(u64 modulus) : p(modulus), m(~u64{0} / modulus) {}
    u64 reduce(u64 x) const {
        const u64 q = static_cast<u64>((static_cast<u128>(x) * m) >> 64);
        u64 r = x - q * p;
        while (r >= p) r -= p;
        return r;
    }
};

inline u64 add_mod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    if (s >= m || s < a) s -= m;
    return s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Inverse of a modulo m, or nothing when gcd(a, m) != 1.
inline std::optional<u64> inverse_mod(u64 a, u64 m) {
    if (m == 1) return 0;
    i64 t = 0, new_t = 1;
    u64 r = m, new_r = a % m;
    while (new_r != 0) {
        u64 q = r / new_r;
        i64 tmp_t = t - static_cast<i64>(q) * new_t;
        t = new_t;
        new_t = tmp_t;
        u64 tmp_r = r - q * new_r;
        r = new_r;
        new_r = tmp_r;
    }
    if (r != 1) return std::nullopt;
    if (t < 0) t += static_cast<i64>(m);
    return static_cast<u64>(t);
}

/// Reduce a signed value into [0, m).
inline u64 reduce_signed(i64 v, u64 m) {
    i64 r = v % static_cast<i64>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

namespace detail {
inline std::mt19937_64& primality_engine() {
    thread_local std::mt19937_64 engine(0x9e3779b97f4a7c15ULL);
    return engine;
}
}  // namespace detail

/// Probabilistic primality (Miller-Rabin, 25 rounds, fixed-seed witnesses).
inline bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    return boost::multiprecision::miller_rabin_test(n, 25, detail::primality_engine());
}

inline bool is_prime(u64 n) { return is_prime(BigInt(n)); }

inline u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace isolab::ff

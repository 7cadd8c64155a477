#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "../bigint.hpp"
#include "../config.hpp"
#include "../error.hpp"
#include "modular.hpp"

namespace isolab::ff {

/// n = (prod prime^exp) * cofactor. A cofactor of 1 means the factorization is complete;
/// a cofactor > 1 is whatever could not be split within the effort budget.
struct Factorization {
    BigInt n = 1;
    std::vector<std::pair<BigInt, unsigned>> factors;  // ascending primes
    BigInt cofactor = 1;

    bool complete() const { return cofactor == 1; }

    BigInt known_part() const {
        BigInt prod = 1;
        for (const auto& [q, e] : factors) prod *= boost::multiprecision::pow(q, e);
        return prod;
    }

    std::vector<BigInt> primes() const {
        std::vector<BigInt> out;
        for (const auto& f : factors) out.push_back(f.first);
        return out;
    }

    /// All divisors of the fully factored part, ascending.
    std::vector<BigInt> divisors() const {
        std::vector<BigInt> divs{1};
        for (const auto& [q, e] : factors) {
            const std::size_t base = divs.size();
            BigInt power = 1;
            for (unsigned i = 1; i <= e; ++i) {
                power *= q;
                for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * power);
            }
        }
        std::sort(divs.begin(), divs.end());
        return divs;
    }

    std::string to_string() const {
        std::string s = n.str() + " =";
        bool first = true;
        for (const auto& [q, e] : factors) {
            s += first ? " " : " * ";
            first = false;
            s += q.str();
            if (e > 1) s += "^" + std::to_string(e);
        }
        if (cofactor != 1) s += (first ? " [" : " * [") + cofactor.str() + "]";
        if (first && cofactor == 1) s += " 1";
        return s;
    }
};

struct FactorEffort {
    u64 trial_division_bound = 1'000'000;
    u64 rho_iterations = 10'000'000;

    static FactorEffort from(const Budgets& b) { return {b.trial_division_bound, b.rho_iterations}; }
};

namespace detail {

inline const std::vector<u64>& small_primes() {
    static const std::vector<u64> primes = [] {
        constexpr u64 limit = 1'000'000;
        std::vector<bool> composite(limit + 1, false);
        std::vector<u64> out;
        for (u64 i = 2; i <= limit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

inline u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

/// Brent's variant of Pollard rho on a 64-bit composite. Returns a nontrivial divisor or 0.
inline u64 rho_u64(u64 n, u64& budget) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1; budget > 0 && c < 64; ++c) {
        u64 y = 2 + c, x = y, g = 1, q = 1, ys = y;
        const u64 m = 128;
        u64 r = 1;
        auto f = [&](u64 v) { return add_mod(mul_mod(v, v, n), c, n); };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                budget = budget > std::min(m, r - k) ? budget - std::min(m, r - k) : 0;
                g = gcd_u64(q, n);
                k += m;
            } while (k < r && g == 1 && budget > 0);
            r *= 2;
        } while (g == 1 && budget > 0);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd_u64(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != 1 && g != n) return g;
    }
    return 0;
}

inline BigInt rho_big(const BigInt& n, u64& budget) {
    if (n % 2 == 0) return 2;
    for (unsigned c = 1; budget > 0 && c < 16; ++c) {
        BigInt x = 2, y = 2, d = 1;
        auto f = [&](const BigInt& v) { return (v * v + c) % n; };
        while (d == 1 && budget > 0) {
            BigInt prod = 1;
            for (int i = 0; i < 64 && budget > 0; ++i, --budget) {
                x = f(x);
                y = f(f(y));
                prod = (prod * (x > y ? x - y : y - x)) % n;
            }
            d = boost::multiprecision::gcd(prod, n);
        }
        if (d != 1 && d != n) return d;
    }
    return 0;
}

inline void split(const BigInt& n, u64& budget, std::map<BigInt, unsigned>& found, BigInt& cofactor) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++found[n];
        return;
    }
    BigInt d = 0;
    if (fits_u64(n)) {
        d = rho_u64(static_cast<u64>(n), budget);
    } else {
        d = rho_big(n, budget);
    }
    if (d == 0) {
        cofactor *= n;
        return;
    }
    split(d, budget, found, cofactor);
    split(n / d, budget, found, cofactor);
}

}  // namespace detail

/// Trial division up to the effort bound, then rho splitting within the iteration budget.
inline Factorization factor(const BigInt& n, const FactorEffort& effort = {}) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "factor requires n >= 1");
    Factorization out;
    out.n = n;
    std::map<BigInt, unsigned> found;
    BigInt rest = n;
    const auto& primes = detail::small_primes();
    for (u64 q : primes) {
        if (q > effort.trial_division_bound) break;
        if (BigInt(q) * q > rest) break;
        unsigned e = 0;
        while (rest % q == 0) {
            rest /= q;
            ++e;
        }
        if (e) found[BigInt(q)] = e;
    }
    BigInt cofactor = 1;
    u64 budget = effort.rho_iterations;
    detail::split(rest, budget, found, cofactor);
    for (const auto& [q, e] : found) out.factors.emplace_back(q, e);
    out.cofactor = cofactor;
    return out;
}

inline Factorization factor(u64 n, const FactorEffort& effort = {}) { return factor(BigInt(n), effort); }

/// Euler phi of a completely factored integer, returned factored.
inline Factorization totient_factorization(const Factorization& n, const FactorEffort& effort = {}) {
    if (!n.complete()) throw Error(ErrorCode::IncompleteFactorization, "totient needs " + n.to_string());
    std::map<BigInt, unsigned> acc;
    BigInt phi = 1;
    for (const auto& [q, e] : n.factors) {
        if (e > 1) acc[q] += e - 1;
        phi *= boost::multiprecision::pow(q, e - 1) * (q - 1);
        auto sub = factor(q - 1, effort);
        if (!sub.complete()) throw Error(ErrorCode::IncompleteFactorization, "cannot factor " + BigInt(q - 1).str());
        for (const auto& [r, f] : sub.factors) acc[r] += f;
    }
    Factorization out;
    out.n = phi;
    for (const auto& [q, e] : acc) out.factors.emplace_back(q, e);
    return out;
}

}  // namespace isolab::ff

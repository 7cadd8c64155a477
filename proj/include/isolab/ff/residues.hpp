#pragma once

#include <cmath>
#include <optional>
#include <unordered_map>

#include "../error.hpp"
#include "factor.hpp"
#include "modular.hpp"

namespace isolab::ff {

/// Exact order of x in a group whose order is `group_order` (fully factored).
/// `pow(x, e)` and `is_one(y)` define the group; this is the usual divisor descent.
template <class T, class Pow, class IsOne>
BigInt order_by_descent(const T& x, const Factorization& group_order, Pow&& pow, IsOne&& is_one) {
    if (!group_order.complete()) {
        throw Error(ErrorCode::IncompleteFactorization, "group order " + group_order.to_string());
    }
    BigInt ord = group_order.n;
    for (const auto& [q, e] : group_order.factors) {
        for (unsigned i = 0; i < e; ++i) {
            if (!is_one(pow(x, ord / q))) break;
            ord /= q;
        }
    }
    return ord;
}

inline void require_unit(u64 x, u64 modulus, const char* what) {
    if (modulus == 0) throw Error(ErrorCode::InvalidArgument, "modulus must be positive");
    if (modulus > 1 && std::gcd(x % modulus, modulus) != 1) {
        throw Error(ErrorCode::NotAUnit, std::string(what) + " = " + std::to_string(x) + " mod " +
                                             std::to_string(modulus));
    }
}

/// Multiplicative order of a residue, given the factored order of a group containing it
/// (for example phi(modulus) or any multiple of ord(x)).
inline u64 element_order(u64 x, u64 modulus, const Factorization& group_order) {
    require_unit(x, modulus, "x");
    auto ord = order_by_descent(
        x % modulus, group_order, [&](u64 b, const BigInt& e) { return pow_mod(b, static_cast<u64>(e), modulus); },
        [&](u64 y) { return y == 1 % modulus; });
    return static_cast<u64>(ord);
}

/// Multiplicative order modulo `modulus`, factoring phi(modulus) on the way.
inline u64 element_order(u64 x, u64 modulus, const FactorEffort& effort = {}) {
    require_unit(x, modulus, "x");
    if (modulus == 1) return 1;
    auto phi = totient_factorization(factor(modulus, effort), effort);
    return element_order(x, modulus, phi);
}

/// Least j >= 0 with g^j = x (mod modulus) when x lies in <g>, by baby-step/giant-step.
inline std::optional<u64> subgroup_dlog(u64 x, u64 g, u64 modulus) {
    require_unit(x, modulus, "x");
    require_unit(g, modulus, "g");
    x %= modulus;
    g %= modulus;
    if (x == 1 % modulus) return 0;
    const u64 m = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(modulus)))) + 1;
    std::unordered_map<u64, u64> baby;
    baby.reserve(m * 2);
    u64 cur = 1 % modulus;
    for (u64 j = 0; j < m; ++j) {
        baby.try_emplace(cur, j);
        cur = mul_mod(cur, g, modulus);
    }
    // g^{-m}
    const u64 step = *inverse_mod(pow_mod(g, m, modulus), modulus);
    u64 gamma = x;
    for (u64 i = 0; i * m <= modulus; ++i) {
        if (auto it = baby.find(gamma); it != baby.end()) return i * m + it->second;
        gamma = mul_mod(gamma, step, modulus);
    }
    return std::nullopt;
}

}  // namespace isolab::ff

#pragma once

#include <optional>
#include <vector>

#include "../bigint.hpp"
#include "factor.hpp"
#include "modular.hpp"

// Dense polynomials over a prime field, coefficients low -> high in std::vector<u64>.
// Only what level construction and inversion need lives here.
namespace isolab::ff::fp_poly {

using Poly = std::vector<u64>;

inline void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

inline Poly sub(Poly a, const Poly& b, u64 p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = sub_mod(a[i], b[i], p);
    trim(a);
    return a;
}

inline Poly mul(const Poly& a, const Poly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = add_mod(out[i + j], mul_mod(a[i], b[j], p), p);
    }
    trim(out);
    return out;
}

/// a = q*b + r with deg r < deg b; b nonzero.
inline void divrem(const Poly& a, const Poly& b, u64 p, Poly* q, Poly* r) {
    Poly rem = a;
    trim(rem);
    const int db = degree(b);
    const u64 inv_lead = *inverse_mod(b.back(), p);
    Poly quot(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 0, 0);
    for (int i = degree(rem); i >= db; --i) {
        const u64 c = mul_mod(rem[i], inv_lead, p);
        if (!c) continue;
        quot[i - db] = c;
        for (int j = 0; j <= db; ++j) rem[i - db + j] = sub_mod(rem[i - db + j], mul_mod(c, b[j], p), p);
    }
    trim(rem);
    trim(quot);
    if (q) *q = std::move(quot);
    if (r) *r = std::move(rem);
}

inline Poly mod(const Poly& a, const Poly& b, u64 p) {
    Poly r;
    divrem(a, b, p, nullptr, &r);
    return r;
}

inline Poly monic(Poly f, u64 p) {
    trim(f);
    if (f.empty()) return f;
    const u64 inv = *inverse_mod(f.back(), p);
    for (auto& c : f) c = mul_mod(c, inv, p);
    return f;
}

inline Poly gcd(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

inline Poly powmod(Poly base, BigInt e, const Poly& m, u64 p) {
    Poly result{1 % p};
    base = mod(base, m, p);
    while (e > 0) {
        if ((e & 1) != 0) result = mod(mul(result, base, p), m, p);
        base = mod(mul(base, base, p), m, p);
        e >>= 1;
    }
    return result;
}

/// Inverse of a modulo m (m irreducible), by the extended Euclidean algorithm.
inline std::optional<Poly> inverse(const Poly& a, const Poly& m, u64 p) {
    Poly r0 = m, r1 = a;
    trim(r1);
    if (r1.empty()) return std::nullopt;
    Poly s0{}, s1{1 % p};
    while (!r1.empty()) {
        Poly q, r;
        divrem(r0, r1, p, &q, &r);
        Poly s = sub(s0, mul(q, s1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.size() != 1) return std::nullopt;
    const u64 inv = *inverse_mod(r0[0], p);
    for (auto& c : s0) c = mul_mod(c, inv, p);
    return s0;
}

/// Rabin's test: f of degree k is irreducible iff x^{p^k} = x mod f and
/// gcd(x^{p^{k/l}} - x, f) = 1 for every prime l | k.
inline bool is_irreducible(const Poly& f_in, u64 p) {
    Poly f = monic(f_in, p);
    const int k = degree(f);
    if (k < 1) return false;
    if (k == 1) return true;
    const Poly x{0, 1 % p};
    std::vector<Poly> frob_powers(k + 1);
    frob_powers[0] = x;
    for (int i = 1; i <= k; ++i) frob_powers[i] = powmod(frob_powers[i - 1], p, f, p);
    if (sub(frob_powers[k], x, p) != Poly{}) return false;
    for (const auto& [l, e] : factor(static_cast<u64>(k)).factors) {
        const int i = k / static_cast<int>(l);
        if (degree(gcd(sub(frob_powers[i], x, p), f, p)) > 0) return false;
    }
    return true;
}

}  // namespace isolab::ff::fp_poly

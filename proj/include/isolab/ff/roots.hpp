#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace isolab::ff {

struct PolyFactor {
    Poly factor;
    int multiplicity;
};

namespace detail {

/// g with g(X)^p = f(X); f must be a p-th power (only exponents divisible by p).
inline Poly pth_root(const Poly& f) {
    const Level& L = f.level();
    const u64 p = L.characteristic();
    std::vector<FieldElement> c;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) c.push_back(f.coeff(i).frobenius(L.degree() - 1));
    return Poly(L, std::move(c));
}

inline Poly random_poly(const Level& L, int below_degree, Rng& rng) {
    std::vector<FieldElement> c;
    for (int i = 0; i < below_degree; ++i) c.push_back(L.random(rng));
    return Poly(L, std::move(c));
}

}  // namespace detail

/// Squarefree decomposition f = prod g_i^{m_i} with the g_i squarefree and pairwise coprime.
inline std::vector<PolyFactor> squarefree_factorization(const Poly& f_in) {
    std::vector<PolyFactor> out;
    if (f_in.degree() < 1) return out;
    const Poly f = f_in.monic();
    const int p = static_cast<int>(f.level().characteristic());
    Poly c = gcd(f, f.derivative());
    Poly w = f / c;
    int i = 1;
    while (w.degree() > 0) {
        Poly y = gcd(w, c);
        Poly fac = w / y;
        if (fac.degree() > 0) out.push_back({fac.monic(), i});
        w = y;
        c = c / y;
        ++i;
    }
    if (c.degree() > 0) {
        for (auto& [g, m] : squarefree_factorization(detail::pth_root(c))) out.push_back({g, m * p});
    }
    return out;
}

/// Distinct-degree factorization of a squarefree monic f: pairs (product of all irreducible
/// factors of degree d, d).
inline std::vector<PolyFactor> distinct_degree_factorization(const Poly& f_in) {
    std::vector<PolyFactor> out;
    Poly f = f_in.monic();
    const Level& L = f.level();
    const Poly x = Poly::x(L);
    Poly h = x % f;
    int d = 1;
    while (f.degree() >= 2 * d) {
        h = powmod(h, L.order(), f);
        Poly g = gcd(f, h - x);
        if (g.degree() > 0) {
            out.push_back({g, d});
            f = f / g;
            h = h % f;
        }
        ++d;
    }
    if (f.degree() > 0) out.push_back({f, f.degree()});
    return out;
}

/// Cantor-Zassenhaus splitting of f (monic, product of distinct irreducibles of degree d).
inline std::vector<Poly> equal_degree_factorization(const Poly& f, int d, Rng& rng) {
    if (f.degree() <= d) return {f.monic()};
    const Level& L = f.level();
    const BigInt e = (boost::multiprecision::pow(L.order(), static_cast<unsigned>(d)) - 1) / 2;
    for (;;) {
        Poly a = detail::random_poly(L, f.degree(), rng);
        if (a.degree() < 1) continue;
        Poly b = powmod(a, e, f) - Poly::constant(L.one());
        Poly g = gcd(f, b);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            auto left = equal_degree_factorization(g, d, rng);
            auto right = equal_degree_factorization(f / g, d, rng);
            left.insert(left.end(), right.begin(), right.end());
            return left;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities, sorted by
/// (degree, coefficients) for reproducibility.
inline std::vector<PolyFactor> factor_poly(const Poly& f, Rng& rng) {
    std::vector<PolyFactor> out;
    for (const auto& [sq, mult] : squarefree_factorization(f)) {
        for (const auto& [part, d] : distinct_degree_factorization(sq)) {
            for (auto& irr : equal_degree_factorization(part, d, rng)) out.push_back({irr, mult});
        }
    }
    std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
        if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
        const auto& ca = a.factor.coeffs();
        const auto& cb = b.factor.coeffs();
        return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
    });
    return out;
}

/// One root of f, which must split into distinct linear factors over its level.
inline FieldElement one_root(Poly f, Rng& rng) {
    f = f.monic();
    const Level& L = f.level();
    const BigInt e = (L.order() - 1) / 2;
    while (f.degree() > 1) {
        Poly a = Poly::x(L) + Poly::constant(L.random(rng));
        Poly g = gcd(f, powmod(a, e, f) - Poly::constant(L.one()));
        if (g.degree() > 0 && g.degree() < f.degree()) {
            Poly other = f / g;
            f = g.degree() <= other.degree() ? g : other.monic();
        }
    }
    if (f.degree() != 1) throw Error(ErrorCode::InvalidArgument, "one_root: polynomial has no linear factor");
    return -f.coeff(0);
}

/// Distinct roots of f lying in its coefficient level, sorted.
inline std::vector<FieldElement> roots_in_level(const Poly& f_in, Rng& rng) {
    std::vector<FieldElement> roots;
    if (f_in.degree() < 1) return roots;
    const Poly f = f_in.monic();
    const Level& L = f.level();
    const Poly x = Poly::x(L);
    Poly split = gcd(f, powmod(x, L.order(), f) - x);
    if (split.degree() < 1) return roots;
    for (const auto& lin : equal_degree_factorization(split, 1, rng)) roots.push_back(-lin.monic().coeff(0));
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace isolab::ff

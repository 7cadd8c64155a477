#pragma once

#include <numeric>
#include <unordered_map>
#include <vector>

#include "../config.hpp"
#include "../error.hpp"
#include "../ff/factor.hpp"
#include "../ff/modular.hpp"
#include "curve.hpp"

namespace isolab::ec {

struct Point {
    FieldElement x, y;
    bool infinity = false;

    static Point at_infinity() { return {{}, {}, true}; }
    friend bool operator==(const Point& a, const Point& b) {
        if (a.infinity || b.infinity) return a.infinity == b.infinity;
        return a.x == b.x && a.y == b.y;
    }
};

/// Affine group law on one curve.
class Arithmetic {
public:
    explicit Arithmetic(const Curve& E) : E_(E) {}

    Point neg(const Point& P) const { return P.infinity ? P : Point{P.x, -P.y}; }

    Point dbl(const Point& P) const {
        if (P.infinity || P.y.is_zero()) return Point::at_infinity();
        const FieldElement l = (P.x * P.x).scaled(3) + E_.A;
        const FieldElement lam = l / P.y.scaled(2);
        const FieldElement x3 = lam * lam - P.x.scaled(2);
        return {x3, lam * (P.x - x3) - P.y};
    }

    Point add(const Point& P, const Point& Q) const {
        if (P.infinity) return Q;
        if (Q.infinity) return P;
        if (P.x == Q.x) {
            if ((P.y + Q.y).is_zero()) return Point::at_infinity();
            return dbl(P);
        }
        const FieldElement lam = (Q.y - P.y) / (Q.x - P.x);
        const FieldElement x3 = lam * lam - P.x - Q.x;
        return {x3, lam * (P.x - x3) - P.y};
    }

    /// pts[i] += D for every i, sharing one field inversion.
    void add_batch(std::vector<Point>& pts, const Point& D) const {
        std::vector<std::size_t> idx;
        std::vector<FieldElement> prefix;
        idx.reserve(pts.size());
        prefix.reserve(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (D.infinity || pts[i].infinity || pts[i].x == D.x) {
                pts[i] = add(pts[i], D);
                continue;
            }
            const FieldElement den = D.x - pts[i].x;
            prefix.push_back(prefix.empty() ? den : prefix.back() * den);
            idx.push_back(i);
        }
        if (idx.empty()) return;
        FieldElement inv = prefix.back().inverse();
        for (std::size_t n = idx.size(); n-- > 0;) {
            Point& P = pts[idx[n]];
            const FieldElement den = D.x - P.x;
            const FieldElement den_inv = n ? inv * prefix[n - 1] : inv;
            inv *= den;
            const FieldElement lam = (D.y - P.y) * den_inv;
            const FieldElement x3 = lam * lam - P.x - D.x;
            P = {x3, lam * (P.x - x3) - P.y};
        }
    }

    Point mul(const Point& P, u64 n) const {
        Point r = Point::at_infinity();
        Point base = P;
        while (n) {
            if (n & 1) r = add(r, base);
            n >>= 1;
            if (n) base = dbl(base);
        }
        return r;
    }

    bool on_curve(const Point& P) const { return P.infinity || P.y * P.y == E_.rhs(P.x); }

private:
    const Curve& E_;
};

/// Square roots in F_q (q odd) by Tonelli-Shanks.
class SquareRoots {
public:
    SquareRoots(const ff::Level& L, ff::Rng& rng) : L_(L) {
        const BigInt qm1 = L.order() - 1;
        half_ = qm1 / 2;
        odd_ = qm1;
        while ((odd_ & 1) == 0) {
            odd_ >>= 1;
            ++s_;
        }
        FieldElement z = L.random(rng);
        while (z.is_zero() || is_square(z)) z = L.random(rng);
        nonresidue_ = z;
        c0_ = z.pow(odd_);
    }

    bool is_square(const FieldElement& a) const { return a.is_zero() || a.pow(half_).is_one(); }
    const FieldElement& nonresidue() const { return nonresidue_; }

    std::optional<FieldElement> sqrt(const FieldElement& a) const {
        if (a.is_zero()) return a;
        if (!is_square(a)) return std::nullopt;
        unsigned m = s_;
        FieldElement c = c0_;
        FieldElement t = a.pow(odd_);
        FieldElement r = a.pow(BigInt((odd_ + 1) / 2));
        while (!t.is_one()) {
            unsigned i = 0;
            FieldElement t2 = t;
            while (!t2.is_one()) {
                t2 *= t2;
                ++i;
            }
            FieldElement b = c;
            for (unsigned j = 0; j + i + 1 < m; ++j) b *= b;
            m = i;
            c = b * b;
            t *= c;
            r *= b;
        }
        return r;
    }

private:
    const ff::Level& L_;
    BigInt half_, odd_;
    unsigned s_ = 0;
    FieldElement nonresidue_, c0_;
};

/// #E(F_q) by enumerating x and tabulating squares. Refuses fields above the naive limit.
inline u64 count_points_naive(const Curve& E, const Budgets& budgets = {}) {
    const auto& L = E.level();
    require_large_characteristic(L.characteristic());
    const auto q = L.order_u64();
    if (!q || *q > budgets.naive_count_limit)
        throw Error(ErrorCode::BudgetExceeded, "field of size " + L.order().str() + " exceeds naive count limit");
    std::vector<std::uint8_t> roots(*q, 0);
    for (u64 i = 0; i < *q; ++i) {
        const FieldElement y = L.element(i);
        ++roots[L.index_of(y * y)];
    }
    u64 n = 1;
    for (u64 i = 0; i < *q; ++i) n += roots[L.index_of(E.rhs(L.element(i)))];
    return n;
}

namespace detail {

inline u64 lcm_u64(u64 a, u64 b) { return a / std::gcd(a, b) * b; }

inline Point random_point(const Curve& E, const SquareRoots& roots, ff::Rng& rng) {
    for (;;) {
        const FieldElement x = E.level().random(rng);
        if (auto y = roots.sqrt(E.rhs(x))) return {x, *y};
    }
}

/// Exact order of P given any multiple M of it.
inline u64 order_from_multiple(const Arithmetic& ar, const Point& P, u64 M) {
    const auto f = ff::factor(M);
    for (const auto& [q, e] : f.factors) {
        const u64 l = static_cast<u64>(q);
        for (unsigned i = 0; i < e; ++i) {
            if (!ar.mul(P, M / l).infinity) break;
            M /= l;
        }
    }
    return M;
}

/// Some t in [lo, hi] with [t]Q = O, by baby-step/giant-step. Such a t must exist.
inline std::optional<u64> killing_multiple(const Arithmetic& ar, const Point& Q, u64 lo, u64 hi) {
    constexpr u64 kBatch = 32;
    const ff::Level& L = Q.x.level();
    const u64 width = hi - lo + 1;
    const u64 m = ff::isqrt(width) + 1;
    std::unordered_map<u64, u64> baby;
    baby.reserve(2 * m);

    std::vector<Point> cur;
    Point jQ = Q;
    for (u64 j = 1; j <= kBatch; ++j) {
        cur.push_back(jQ);
        jQ = ar.add(jQ, Q);
    }
    const Point batch_step = ar.mul(Q, kBatch);
    for (u64 first = 1; first < m; first += kBatch) {
        for (u64 c = 0; c < kBatch && first + c < m; ++c)
            if (!cur[c].infinity) baby.emplace(L.index_of(cur[c].x), first + c);
        ar.add_batch(cur, batch_step);
    }

    auto check = [&](const Point& R, u64 base) -> std::optional<u64> {
        if (R.infinity) return base >= lo && base <= hi ? std::optional<u64>(base) : std::nullopt;
        auto it = baby.find(L.index_of(R.x));
        if (it == baby.end()) return std::nullopt;
        // R = [base]Q equals +-[j]Q
        const u64 j = it->second;
        const Point jP = ar.mul(Q, j);
        if (R == jP && base >= lo + j && base - j <= hi) return base - j;
        if (R == ar.neg(jP) && base + j <= hi) return base + j;
        return std::nullopt;
    };

    const Point giant = ar.mul(Q, m);
    std::vector<Point> chains;
    Point R = ar.mul(Q, lo);
    for (u64 c = 0; c < kBatch; ++c) {
        chains.push_back(R);
        R = ar.add(R, giant);
    }
    const Point chain_step = ar.mul(Q, kBatch * m);
    const u64 rounds = (width / m + 2 + kBatch - 1) / kBatch;
    for (u64 r = 0; r < rounds; ++r) {
        for (u64 c = 0; c < kBatch; ++c)
            if (auto t = check(chains[c], lo + (r * kBatch + c) * m)) return t;
        ar.add_batch(chains, chain_step);
    }
    return std::nullopt;
}

}  // namespace detail

/// #E(F_q) by Mestre's baby-step/giant-step over the Hasse interval using E and its twist.
inline u64 count_points_bsgs(const Curve& E, const Budgets& budgets = {}) {
    const auto& L = E.level();
    require_large_characteristic(L.characteristic());
    const auto qo = L.order_u64();
    if (!qo || *qo > budgets.point_count_limit)
        throw Error(ErrorCode::BudgetExceeded, "field of size " + L.order().str() + " exceeds point count limit");
    const u64 q = *qo;
    const u64 w = ff::isqrt(4 * q);
    const u64 lo = q + 1 - w, hi = q + 1 + w;

    ff::Rng rng(0x636f756e74ULL ^ q);
    const SquareRoots roots(L, rng);
    const Curve twist = quadratic_twist(E, roots.nonresidue());
    const Curve* curves[2] = {&E, &twist};
    u64 exponent[2] = {1, 1};

    for (int round = 0; round < 400; ++round) {
        const int side = round % 2;
        const Arithmetic ar(*curves[side]);
        const Point P = detail::random_point(*curves[side], roots, rng);
        const u64 Lside = exponent[side];
        const Point Q = ar.mul(P, Lside);
        if (!Q.infinity) {
            const u64 tlo = (lo + Lside - 1) / Lside, thi = hi / Lside;
            auto t = detail::killing_multiple(ar, Q, tlo, thi);
            if (!t) throw Error(ErrorCode::InvalidArgument, "no group order in the Hasse interval; curve is singular?");
            exponent[side] = detail::lcm_u64(Lside, detail::order_from_multiple(ar, P, *t * Lside));
        }
        // Candidate orders N of E: N = 0 mod exponent[0], 2q + 2 - N = 0 mod exponent[1].
        const int big = exponent[0] >= exponent[1] ? 0 : 1;
        const u64 step = exponent[big];
        if ((hi - lo) / step > 4096) continue;
        std::vector<u64> candidates;
        const u64 two_q2 = 2 * q + 2;
        for (u64 M = (lo + step - 1) / step * step; M <= hi; M += step) {
            const u64 N = big == 0 ? M : two_q2 - M;
            const u64 Nt = two_q2 - N;
            if (N % exponent[0] == 0 && Nt % exponent[1] == 0) candidates.push_back(N);
        }
        if (candidates.size() == 1) return candidates.front();
        if (candidates.empty()) throw Error(ErrorCode::InvalidArgument, "inconsistent group exponents");
    }
    throw Error(ErrorCode::BudgetExceeded, "point count did not converge");
}

/// Fields up to this size are counted by enumeration.
inline constexpr u64 kEnumerationCountLimit = 4096;

/// #E(F_q) including the point at infinity.
inline u64 count_points(const Curve& E, const Budgets& budgets = {}) {
    const auto q = E.level().order_u64();
    if (q && *q <= kEnumerationCountLimit && *q <= budgets.naive_count_limit) return count_points_naive(E, budgets);
    return count_points_bsgs(E, budgets);
}

}  // namespace isolab::ec

#include <gtest/gtest.h>

#include <set>

#include "isolab/ec/label.hpp"
#include "isolab/ff/tower.hpp"

using namespace isolab;
using namespace isolab::ec;
using ff::make_tower;

namespace {

// Exhaustive #E(F_p) with plain integers.
i64 oracle_count_prime(i64 A, i64 B, i64 p) {
    std::vector<int> sq(p, 0);
    for (i64 y = 0; y < p; ++y) ++sq[y * y % p];
    i64 n = 1;
    for (i64 x = 0; x < p; ++x) n += sq[(((x * x % p) * x + A * x + B) % p + p) % p];
    return n;
}

// Exhaustive #E over any level by checking every (x, y).
u64 oracle_count_pairs(const Curve& E) {
    const auto& L = E.level();
    const u64 q = *L.order_u64();
    u64 n = 1;
    for (u64 i = 0; i < q; ++i) {
        const auto x = L.element(i);
        const auto r = E.rhs(x);
        for (u64 k = 0; k < q; ++k) {
            const auto y = L.element(k);
            if (y * y == r) ++n;
        }
    }
    return n;
}

Curve embed_curve(const ff::FieldTower& t, const Curve& E, int K) { return {t.embed(E.A, K), t.embed(E.B, K)}; }

}  // namespace

TEST(Curve, SpecialModels) {
    auto t = make_tower(5, {1});
    const auto& F = t->level(1);
    auto E0 = curve_from_j(JInvariant(F.zero()));
    EXPECT_EQ(E0.A, F.zero());
    EXPECT_EQ(E0.B, F.one());
    auto E1728 = curve_from_j(JInvariant(F.from_int(1728)));
    EXPECT_EQ(E1728.A, F.one());
    EXPECT_EQ(E1728.B, F.zero());
    auto E2 = curve_from_j(JInvariant(F.from_int(2)));
    EXPECT_TRUE(E2.is_nonsingular());
    EXPECT_EQ(E2.j_invariant(), F.from_int(2));
    try {
        curve_from_j(JInvariant::cusp());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CuspInput);
    }
}

TEST(Curve, ModelHasRequestedJ) {
    auto t = make_tower(11, {3});
    ff::Rng rng(1);
    for (int i = 0; i < 200; ++i) {
        auto j = t->level(3).random(rng);
        auto E = curve_from_j(j);
        ASSERT_TRUE(E.is_nonsingular());
        EXPECT_EQ(E.j_invariant(), j);
    }
}

TEST(PointCount, SmallExamples) {
    auto t = make_tower(5, {1});
    const auto& F = t->level(1);
    EXPECT_EQ(count_points({F.zero(), F.one()}), 6u);
    EXPECT_EQ(count_points({F.one(), F.zero()}), 4u);
    auto t7 = make_tower(7, {1});
    const auto& F7 = t7->level(1);
    for (int A = 0; A < 7; ++A)
        for (int B = 0; B < 7; ++B) {
            Curve E{F7.from_int(A), F7.from_int(B)};
            if (!E.is_nonsingular()) continue;
            const u64 n = count_points(E);
            EXPECT_GE(n, 3u);
            EXPECT_LE(n, 13u);
            EXPECT_EQ(static_cast<i64>(n), oracle_count_prime(A, B, 7));
        }
}

TEST(PointCount, BsgsMatchesPrimeFieldOracle) {
    ff::Rng rng(2);
    for (u64 p : {4099u, 10007u, 65537u, 1000003u}) {
        auto t = make_tower(p, {1});
        const auto& F = t->level(1);
        for (int i = 0; i < 6; ++i) {
            const i64 A = static_cast<i64>(rng() % p), B = static_cast<i64>(rng() % p);
            Curve E{F.from_int(A), F.from_int(B)};
            if (!E.is_nonsingular()) continue;
            EXPECT_EQ(static_cast<i64>(count_points_bsgs(E)), oracle_count_prime(A, B, static_cast<i64>(p)))
                << p << " " << A << " " << B;
        }
    }
}

TEST(PointCount, BsgsMatchesEnumerationOverExtensions) {
    ff::Rng rng(3);
    for (auto [p, k] : std::vector<std::pair<u64, int>>{{5, 6}, {7, 5}, {101, 2}, {13, 4}}) {
        auto t = make_tower(p, {k});
        const auto& L = t->level(k);
        for (int i = 0; i < 5; ++i) {
            Curve E = curve_from_j(L.random(rng));
            EXPECT_EQ(count_points_bsgs(E), count_points_naive(E)) << p << "^" << k;
        }
        // j = 0 and 1728 have extra automorphisms; exercise them too.
        for (i64 j : {0, 1728}) {
            Curve E = curve_from_j(L.from_int(j));
            EXPECT_EQ(count_points_bsgs(E), count_points_naive(E)) << p << "^" << k << " j=" << j;
        }
    }
}

TEST(PointCount, NaiveRespectsBudget) {
    auto t = make_tower(101, {2});
    Budgets b;
    b.naive_count_limit = 100;
    try {
        count_points_naive(curve_from_j(t->level(2).from_int(3)), b);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
    }
}

TEST(Trace, RecurrenceExamples) {
    auto t = make_tower(5, {2});
    JInvariant j0(t->level(1).zero());
    EXPECT_EQ(frobenius_trace(j0, 1), 0);
    EXPECT_EQ(frobenius_trace(j0, 2), -10);
    const Curve E25 = embed_curve(*t, curve_from_j(j0.value()), 2);
    EXPECT_EQ(BigInt(26) - BigInt(oracle_count_pairs(E25)), -10);

    auto t7 = make_tower(7, {2});
    JInvariant j3(t7->level(1).from_int(3));
    const BigInt a = frobenius_trace(j3, 1);
    const Curve E7 = curve_from_j(j3.value());
    EXPECT_EQ(a, 8 - oracle_count_prime(static_cast<i64>(E7.A.coeffs()[0]), static_cast<i64>(E7.B.coeffs()[0]), 7));
    EXPECT_EQ(frobenius_trace(j3, 2), a * a - 14);
    const Curve E49 = embed_curve(*t7, curve_from_j(j3.value()), 2);
    EXPECT_EQ(BigInt(50) - BigInt(oracle_count_pairs(E49)), a * a - 14);
}

TEST(Trace, RecurrenceAgreesWithQuadraticExtensionCounts) {
    for (u64 p : {5u, 7u, 11u, 13u}) {
        auto t = make_tower(p, {2});
        for (u64 v = 0; v < p; ++v) {
            JInvariant j(t->level(1).from_int(static_cast<i64>(v)));
            const Curve E = embed_curve(*t, curve_from_j(j.value()), 2);
            const BigInt q2 = BigInt(p) * p;
            EXPECT_EQ(frobenius_trace(j, 2), q2 + 1 - BigInt(oracle_count_pairs(E))) << p << " " << v;
        }
    }
}

TEST(Supersingular, SmallPrimes) {
    auto t5 = make_tower(5, {1});
    EXPECT_TRUE(is_supersingular(JInvariant(t5->level(1).zero())));
    EXPECT_FALSE(is_supersingular(JInvariant(t5->level(1).from_int(1728))));

    // Oracle: trace from exhaustive counts of the standard models over F_7.
    const bool j0_ss = (8 - oracle_count_prime(0, 1, 7)) % 7 == 0;
    const bool j1728_ss = (8 - oracle_count_prime(1, 0, 7)) % 7 == 0;
    EXPECT_FALSE(j0_ss);
    EXPECT_TRUE(j1728_ss);
    auto t7 = make_tower(7, {1});
    EXPECT_EQ(is_supersingular(JInvariant(t7->level(1).zero())), j0_ss);
    EXPECT_EQ(is_supersingular(JInvariant(t7->level(1).from_int(1728))), j1728_ss);
}

TEST(Label, Examples) {
    auto t5 = make_tower(5, {1});
    auto ss = isogeny_class_label(JInvariant(t5->level(1).zero()));
    EXPECT_TRUE(ss.supersingular());
    EXPECT_EQ(ss.p, 5u);
    auto l1728 = isogeny_class_label(JInvariant(t5->level(1).from_int(1728)));
    EXPECT_FALSE(l1728.supersingular());
    EXPECT_EQ(l1728.disc, -4);
    EXPECT_EQ(abs(frobenius_trace(JInvariant(t5->level(1).from_int(1728)))), 2);
    EXPECT_FALSE(geometric_isogeny_test(JInvariant(t5->level(1).zero()), JInvariant(t5->level(1).from_int(1728))));
    EXPECT_TRUE(geometric_isogeny_test(JInvariant::cusp(), JInvariant::cusp()));
    EXPECT_FALSE(geometric_isogeny_test(JInvariant::cusp(), JInvariant(t5->level(1).zero())));
}

TEST(Label, FundamentalDiscriminants) {
    EXPECT_EQ(fundamental_discriminant(-16), -4);
    EXPECT_EQ(fundamental_discriminant(-3), -3);
    EXPECT_EQ(fundamental_discriminant(-12), -3);
    EXPECT_EQ(fundamental_discriminant(-20), -20);
    EXPECT_EQ(fundamental_discriminant(-72), -8);
    EXPECT_EQ(fundamental_discriminant(-75), -3);
    EXPECT_EQ(fundamental_discriminant(-7 * 49), -7);
}

TEST(Label, OrdinaryInvariants) {
    for (u64 p : {5u, 7u, 11u, 13u, 101u}) {
        auto t = make_tower(p, {2});
        for (u64 i = 0; i < std::min<u64>(p * p, 200); ++i) {
            auto l = isogeny_class_label(JInvariant(t->level(2).element(i)));
            if (l.supersingular()) continue;
            EXPECT_LT(l.disc, 0);
            const BigInt r = ((l.disc % 4) + 4) % 4;
            EXPECT_TRUE(r == 0 || r == 1);
            EXPECT_NE(l.disc % p, 0);
            EXPECT_EQ(fundamental_discriminant(l.disc), l.disc);
        }
    }
}

TEST(Label, TwistInvariance) {
    auto t = make_tower(7, {3});
    const auto& L = t->level(3);
    ff::Rng rng(5);
    ec::SquareRoots roots(L, rng);
    for (int i = 0; i < 60; ++i) {
        auto j = L.random(rng);
        if (j.is_zero() || j == L.from_int(1728)) continue;
        const Curve E = curve_from_j(j);
        FieldElement c = L.random(rng);
        while (c.is_zero() || roots.is_square(c)) c = L.random(rng);
        const Curve Et = quadratic_twist(E, c);
        const BigInt q = L.order();
        const BigInt a = q + 1 - count_points(E), at = q + 1 - count_points(Et);
        EXPECT_EQ(a, -at);
        EXPECT_EQ(a * a - 4 * q, at * at - 4 * q);
    }
}

TEST(Label, ExceptionalJTwistsKeepDiscriminant) {
    // All twists y^2 = x^3 + B and y^2 = x^3 + A x over F_p: ordinary ones share one discriminant.
    for (u64 p : {7u, 13u, 19u, 37u}) {
        auto t = make_tower(p, {1});
        const auto& F = t->level(1);
        for (bool zero : {true, false}) {
            std::set<BigInt> discs;
            for (u64 c = 1; c < p; ++c) {
                Curve E = zero ? Curve{F.zero(), F.from_int(static_cast<i64>(c))}
                               : Curve{F.from_int(static_cast<i64>(c)), F.zero()};
                const BigInt a = BigInt(p) + 1 - count_points(E);
                if (a % p == 0) continue;
                discs.insert(fundamental_discriminant(a * a - 4 * BigInt(p)));
            }
            EXPECT_LE(discs.size(), 1u) << p;
        }
    }
}

TEST(Label, FrobeniusInvariance) {
    auto t = make_tower(5, {4});
    ff::Rng rng(6);
    for (int i = 0; i < 60; ++i) {
        auto j = t->level(4).random(rng);
        EXPECT_EQ(isogeny_class_label(JInvariant(j)), isogeny_class_label(JInvariant(j.frobenius(1))));
    }
}

TEST(Label, IndependentOfLevel) {
    auto t = make_tower(11, {6});
    ff::Rng rng(7);
    for (int i = 0; i < 40; ++i) {
        auto j = t->level(2).random(rng);
        auto l2 = isogeny_class_label(JInvariant(j));
        EXPECT_EQ(l2, isogeny_class_label(JInvariant(t->embed(j, 6))));
        EXPECT_EQ(JInvariant(t->embed(j, 6)).min_level(), JInvariant(j).min_level());
    }
}

TEST(Label, CacheIsConsistent) {
    auto t = make_tower(13, {2});
    LabelCache cache;
    for (u64 i = 0; i < 169; ++i) {
        JInvariant j(t->level(2).element(i));
        EXPECT_EQ(isogeny_class_label(j, {}, &cache), isogeny_class_label(j));
    }
    // Conjugates share a minimal polynomial and therefore one cache entry.
    EXPECT_LE(cache.size(), 13u + (169u - 13u) / 2);
}

TEST(Label, EquivalenceRelation) {
    auto t = make_tower(7, {1});
    std::vector<JInvariant> js;
    for (int v = 0; v < 7; ++v) js.emplace_back(t->level(1).from_int(v));
    js.push_back(JInvariant::cusp());
    for (const auto& a : js)
        for (const auto& b : js) {
            EXPECT_EQ(geometric_isogeny_test(a, b), geometric_isogeny_test(b, a));
            for (const auto& c : js)
                if (geometric_isogeny_test(a, b) && geometric_isogeny_test(b, c)) {
                    EXPECT_TRUE(geometric_isogeny_test(a, c));
                }
        }
}

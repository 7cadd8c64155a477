#include <gtest/gtest.h>
#include <gmpxx.h>

#include <fstream>
#include <sstream>

#include "isolab/ec/label.hpp"
#include "isolab/hecke/modular_polynomial.hpp"
#include "isolab/hecke/neighbors.hpp"

using namespace isolab;
using namespace isolab::hecke;
using ec::JInvariant;
using ff::make_tower;

namespace {

const std::vector<int> kShipped{1, 2, 3, 5, 7, 11, 13};

// Independent reading of a data file into (i, j) -> mpz, completed symmetrically.
std::map<std::pair<int, int>, mpz_class> read_with_gmp(int N) {
    std::ifstream in(default_data_dir() + "/phi" + std::to_string(N) + ".txt");
    std::map<std::pair<int, int>, mpz_class> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int i, j;
        std::string c;
        ls >> i >> j >> c;
        out[{i, j}] = mpz_class(c);
        out[{j, i}] = mpz_class(c);
    }
    return out;
}

u64 mod_u64(const mpz_class& v, u64 p) {
    mpz_class r = v % static_cast<unsigned long>(p);
    if (r < 0) r += static_cast<unsigned long>(p);
    return r.get_ui();
}

}  // namespace

TEST(ModularPolynomial, PhiOneIsDiagonal) {
    auto phi = load_phi(1);
    EXPECT_EQ(phi->degree(), 1);
    EXPECT_EQ(phi->coefficient(1, 0), 1);
    EXPECT_EQ(phi->coefficient(0, 1), -1);
    EXPECT_EQ(phi->monomial_count(), 2u);
}

TEST(ModularPolynomial, PhiTwoMatchesClassicalCoefficients) {
    auto phi = load_phi(2);
    EXPECT_EQ(phi->degree(), 3);
    EXPECT_EQ(phi->orbits().size(), 7u);
    EXPECT_EQ(phi->monomial_count(), 11u);
    EXPECT_EQ(phi->coefficient(3, 0), 1);
    EXPECT_EQ(phi->coefficient(2, 2), -1);
    EXPECT_EQ(phi->coefficient(2, 1), 1488);
    EXPECT_EQ(phi->coefficient(1, 2), 1488);
    EXPECT_EQ(phi->coefficient(2, 0), -162000);
    EXPECT_EQ(phi->coefficient(1, 1), 40773375);
    EXPECT_EQ(phi->coefficient(1, 0), BigInt("8748000000"));
    EXPECT_EQ(phi->coefficient(0, 0), BigInt("-157464000000000"));
}

TEST(ModularPolynomial, ShippedLevelsAreSymmetricWithDegreePsi) {
    const std::map<int, int> psi_expected{{1, 1}, {2, 3}, {3, 4}, {5, 6}, {7, 8}, {11, 12}, {13, 14}};
    for (int N : kShipped) {
        auto phi = load_phi(N);
        EXPECT_EQ(phi->degree(), psi(N));
        EXPECT_EQ(psi(N), psi_expected.at(N));
        if (N > 1) EXPECT_TRUE(phi->is_symmetric()) << N;
    }
    EXPECT_EQ(psi(4), 6);
    EXPECT_EQ(psi(6), 12);
}

TEST(ModularPolynomial, KroneckerCongruence) {
    // Phi_l(X, Y) = (X^l - Y)(X - Y^l) mod l.
    for (int l : {2, 3, 5, 7, 11, 13}) {
        auto phi = load_phi(l);
        std::map<std::pair<int, int>, i64> expect{{{l + 1, 0}, 1}, {{0, l + 1}, 1}, {{l, l}, -1}, {{1, 1}, -1}};
        for (int i = 0; i <= l + 1; ++i)
            for (int j = 0; j <= l + 1; ++j) {
                BigInt c = phi->coefficient(i, j) - (expect.count({i, j}) ? expect.at({i, j}) : 0);
                EXPECT_EQ(c % l, 0) << "l=" << l << " (" << i << "," << j << ")";
            }
    }
}

TEST(ModularPolynomial, UnknownLevel) {
    for (int N : {0, 4, 6, 17}) {
        try {
            load_phi(N);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::UnknownLevel);
        }
    }
}

TEST(ModularPolynomial, MalformedData) {
    const std::vector<std::string> bad{
        "3 0 1\n2 2 -1\n",                 // degree fine but a coefficient row i < j follows below
        "3 0 1\n1 2 5\n",                  // i < j
        "4 0 1\n",                         // wrong degree for N = 2
        "3 0 2\n",                         // not monic
        "3 0 1\n2 x 7\n",                  // garbage
        "3 0 1\n3 0 1\n",                  // duplicate
        "3 0 1 9\n",                       // extra column
    };
    for (std::size_t i = 1; i < bad.size(); ++i) {
        std::istringstream in(bad[i]);
        try {
            parse_phi(2, in);
            FAIL() << bad[i];
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::MalformedData) << bad[i];
        }
    }
    std::istringstream ok("# comment\n\n3 0 1\n  \n2 2 -1\n");
    EXPECT_EQ(parse_phi(2, ok)->degree(), 3);
}

TEST(PhiEval, AgreesWithIndependentBignumEvaluation) {
    for (int N : {2, 3, 5, 7, 11, 13}) {
        const auto coeffs = read_with_gmp(N);
        for (u64 p : {5u, 17u, 97u}) {
            if (p == static_cast<u64>(N)) continue;
            auto t = make_tower(p, {1});
            const auto& F = t->level(1);
            for (i64 x : {0, 1, 3})
                for (i64 y : {0, 1, 4}) {
                    mpz_class acc = 0;
                    for (const auto& [ij, c] : coeffs) {
                        mpz_class term = c;
                        for (int a = 0; a < ij.first; ++a) term *= x;
                        for (int b = 0; b < ij.second; ++b) term *= y;
                        acc += term;
                    }
                    EXPECT_EQ(phi_eval(N, F.from_int(x), F.from_int(y)).coeffs()[0], mod_u64(acc, p))
                        << N << " " << p << " " << x << " " << y;
                }
        }
    }
}

TEST(PhiEval, DiagonalAndLevelMismatch) {
    auto t = make_tower(7, {2});
    ff::Rng rng(1);
    for (int i = 0; i < 20; ++i) {
        auto j = t->level(2).random(rng);
        EXPECT_TRUE(phi_eval(1, j, j).is_zero());
    }
    try {
        phi_eval(2, t->level(1).one(), t->level(2).one());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::LevelMismatch);
    }
}

TEST(HeckeNeighbors, LevelOneIsIdentity) {
    auto t = make_tower(11, {2});
    ff::Rng rng(2);
    auto j = t->level(2).random(rng);
    auto n = hecke_neighbors(JInvariant(j), *load_phi(1));
    ASSERT_EQ(n.size(), 1u);
    EXPECT_TRUE(t->same_point(n[0].value(), j));
}

TEST(HeckeNeighbors, CountIsPsiAndRootsVanish) {
    for (u64 p : {5u, 13u, 31u}) {
        auto t = make_tower(p, {1});
        ff::Rng rng(p);
        for (int N : kShipped) {
            if (static_cast<u64>(N) == p) continue;
            auto phi = load_phi(N);
            for (int trial = 0; trial < 5; ++trial) {
                JInvariant j(t->level(1).random(rng));
                auto n = hecke_neighbors(j, *phi);
                EXPECT_EQ(static_cast<int>(n.size()), psi(N));
                for (const auto& y : n) {
                    const int K = y.value().degree();
                    EXPECT_TRUE(phi->evaluate(t->embed(j.value(), K), y.value()).is_zero());
                }
            }
        }
    }
}

TEST(HeckeNeighbors, SupersingularNeighborsAreSupersingular) {
    for (u64 p : {5u, 7u, 11u, 13u}) {
        auto t = make_tower(p, {2});
        for (u64 i = 0; i < p * p; ++i) {
            JInvariant j(t->level(2).element(i));
            if (!ec::is_supersingular(j)) continue;
            for (const auto& y : hecke_neighbors(j, *load_phi(2))) EXPECT_TRUE(ec::is_supersingular(y)) << p;
        }
    }
}

TEST(HeckeNeighbors, OrdinaryNeighborsShareDiscriminantField) {
    for (u64 p : {13u, 29u}) {
        auto t = make_tower(p, {1});
        for (u64 v = 0; v < p; ++v) {
            JInvariant j(t->level(1).from_int(static_cast<i64>(v)));
            const auto label = ec::isogeny_class_label(j);
            if (label.supersingular()) continue;
            for (int N : {2, 3})
                for (const auto& y : hecke_neighbors(j, *load_phi(N))) EXPECT_EQ(ec::isogeny_class_label(y), label);
        }
    }
}

TEST(HeckeNeighbors, PhiTwoRootPairOverF13HasEqualLabels) {
    auto t = make_tower(13, {1});
    int pairs = 0;
    for (u64 v = 0; v < 13; ++v) {
        JInvariant j(t->level(1).from_int(static_cast<i64>(v)));
        for (const auto& y : hecke_neighbors(j, *load_phi(2))) {
            if (y.value().degree() != 1) continue;
            EXPECT_TRUE(phi_eval(2, j.value(), y.value()).is_zero());
            EXPECT_EQ(ec::isogeny_class_label(j), ec::isogeny_class_label(y));
            ++pairs;
        }
    }
    EXPECT_GT(pairs, 0);
}

TEST(PathSearch, Examples) {
    auto t = make_tower(11, {2});
    JInvariant j(t->level(1).from_int(5));
    auto same = isogeny_path_search(j, j, {2}, 2);
    ASSERT_TRUE(same.has_value());
    EXPECT_TRUE(same->empty());

    JInvariant g(t->level(2).generator());
    auto frob = isogeny_path_search(g, JInvariant(g.value().frobenius(1)), {2}, 1);
    ASSERT_TRUE(frob.has_value());
    ASSERT_EQ(frob->size(), 1u);
    EXPECT_EQ((*frob)[0].kind, HeckeEdge::Kind::Frobenius);

    for (u64 v = 0; v < 11; ++v) {
        JInvariant a(t->level(1).from_int(static_cast<i64>(v)));
        for (const auto& b : hecke_neighbors(a, *load_phi(2))) {
            if (t->same_point(a.value(), b.value()) || t->same_point(a.value().frobenius(1), b.value())) continue;
            auto path = isogeny_path_search(a, b, {2}, 1);
            ASSERT_TRUE(path.has_value());
            ASSERT_EQ(path->size(), 1u);
            EXPECT_EQ((*path)[0].kind, HeckeEdge::Kind::Cyclic);
            EXPECT_EQ((*path)[0].N, 2);
            EXPECT_TRUE(verify_edge((*path)[0]));
            EXPECT_EQ(ec::isogeny_class_label(a), ec::isogeny_class_label(b));
        }
    }
    EXPECT_THROW(isogeny_path_search(j, j, {11}, 1), Error);
}

TEST(PathSearch, EndpointsShareLabels) {
    auto t = make_tower(7, {1}, {.seed = 1, .max_degree = 12});
    for (u64 a = 0; a < 7; ++a)
        for (u64 b = 0; b < 7; ++b) {
            JInvariant ja(t->level(1).from_int(static_cast<i64>(a))), jb(t->level(1).from_int(static_cast<i64>(b)));
            auto path = isogeny_path_search(ja, jb, {2, 3}, 2);
            if (!path) continue;
            for (const auto& e : *path) EXPECT_TRUE(verify_edge(e));
            EXPECT_EQ(ec::isogeny_class_label(ja), ec::isogeny_class_label(jb));
        }
}

// One line per acceptance criterion; exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "isolab/isolab.hpp"

using namespace isolab;
using ec::JInvariant;
using ff::FieldElement;

namespace {

constexpr int kMaxDegree = 25;
constexpr u64 kLambdaMax = 10'000;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool cond, const std::string& why) {
        if (!cond && pass) {
            pass = false;
            detail = why;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- machine-word oracles, no library arithmetic ----

u64 powmod(u64 b, u64 e, u64 m) {
    unsigned __int128 r = 1 % m, x = b % m;
    for (; e; e >>= 1, x = x * x % m)
        if (e & 1) r = r * x % m;
    return static_cast<u64>(r);
}

u64 order_mod(u64 a, u64 m) {
    u64 x = a % m;
    for (u64 k = 1; k <= m; ++k, x = static_cast<u64>(static_cast<unsigned __int128>(x) * a % m))
        if (x == 1) return k;
    return 0;
}

u64 gcd(u64 a, u64 b) { return b ? gcd(b, a % b) : a; }

/// Least N < ord with a p^N = b mod lambda, by exhaustion.
std::optional<u64> exponent_oracle(u64 a, u64 b, u64 p, u64 lambda) {
    const u64 k = order_mod(p, lambda);
    for (u64 N = 0; N < k; ++N)
        if (static_cast<unsigned __int128>(a) * powmod(p, N, lambda) % lambda == b % lambda) return N;
    return std::nullopt;
}

/// #E(F_p) for the curve with j-invariant j, by summing Legendre symbols.
i64 count_fp(u64 j, u64 p) {
    u64 A = 0, B = 0;
    const u64 c = 1728 % p;
    if (j % p == 0) {
        B = 1;
    } else if (j % p == c) {
        A = 1;
    } else {
        const u64 k = j % p * ((c + p - j % p) % p) % p;
        A = 3 * k % p;
        B = 2 * k % p * ((c + p - j % p) % p) % p;
    }
    i64 n = 1;
    for (u64 x = 0; x < p; ++x) {
        const u64 r = (x * x % p * x + A * x + B) % p;
        n += r == 0 ? 1 : (powmod(r, (p - 1) / 2, p) == 1 ? 2 : 0);
    }
    return n;
}

/// #E(F_{p^k}) over a library level, by summing quadratic characters.
i64 count_level(const FieldElement& j) {
    const ff::Level& L = j.level();
    FieldElement A = L.zero(), B = L.zero();
    const FieldElement c = L.from_int(1728);
    if (j.is_zero()) {
        B = L.one();
    } else if (j == c) {
        A = L.one();
    } else {
        const FieldElement k = j * (c - j);
        A = k.scaled(3);
        B = (k * (c - j)).scaled(2);
    }
    const BigInt half = (L.order() - 1) / 2;
    i64 n = 1;
    for (u64 i = 0; i < *L.order_u64(); ++i) {
        const FieldElement x = L.element(i);
        const FieldElement r = x * x * x + A * x + B;
        n += r.is_zero() ? 1 : (r.pow(half).is_one() ? 2 : 0);
    }
    return n;
}

bool supersingular_oracle(const FieldElement& j) {
    const i64 q = static_cast<i64>(*j.level().order_u64());
    return (q + 1 - count_level(j)) % static_cast<i64>(j.characteristic()) == 0;
}

// ---- shared state between criteria ----

struct Shared {
    ec::LabelCache cache;
    std::optional<constructions::MonomialCurvePair> gamma_pair, general_pair;
    constructions::Thm21Result gamma, general;
    std::optional<constructions::TranslateCurveSpec> spec22;
    constructions::Thm22Result thm22;
};

constructions::Thm21Options thm21_options(ec::LabelCache* cache) {
    constructions::Thm21Options opt;
    opt.m_max = 8;
    opt.lambda_max = kLambdaMax;
    opt.budgets.max_extension_degree = kMaxDegree;
    opt.cache = cache;
    return opt;
}

Outcome criterion1(Shared& S) {
    Outcome o;
    const auto pair = constructions::MonomialCurvePair::make(5, {3, 5}, {6, 20});
    S.gamma_pair = pair;
    const auto t0 = std::chrono::steady_clock::now();
    S.gamma = constructions::thm21_search(pair, thm21_options(&S.cache));
    const double elapsed = seconds_since(t0);

    // Oracle: every lambda <= 10^4 dividing 5^m - 2 (m <= 8), prime to 10, with both congruences
    // solvable by exhaustion and ord_lambda(5) within the degree cap.
    std::set<u64> expected;
    for (u64 lambda = 3; lambda <= kLambdaMax; ++lambda) {
        if (gcd(lambda, 10) != 1) continue;
        bool divides = false;
        for (u64 m = 1; m <= 8; ++m) divides |= (powmod(5, m, lambda) + lambda - 2 % lambda) % lambda == 0;
        if (!divides || order_mod(5, lambda) > kMaxDegree) continue;
        if (exponent_oracle(3, 6, 5, lambda) && exponent_oracle(5, 20, 5, lambda)) expected.insert(lambda);
    }
    const std::set<u64> frozen{3, 7, 9, 17, 23, 41, 123};
    std::set<u64> got;
    for (const auto& w : S.gamma.witnesses) {
        got.insert(w.lambda);
        const auto v = constructions::verify_witness21(pair, w, {true, thm21_options(nullptr).budgets, &S.cache});
        o.require(v.ok && v.labels == constructions::LabelCheck::Agree,
                  "lambda=" + std::to_string(w.lambda) + " fails independent verification");
        for (std::size_t i = 0; i < pair.n(); ++i)
            o.require(w.N[i] == exponent_oracle(pair.a[i], pair.b[i], 5, w.lambda),
                      "non-minimal N for lambda=" + std::to_string(w.lambda));
    }
    o.require(got.size() == S.gamma.witnesses.size(), "repeated lambda");
    o.require(got.size() >= 3, "fewer than 3 witnesses");
    o.require(got == expected, "witness lambda set differs from the exhaustive oracle");
    o.require(expected == frozen, "oracle lambda set changed from the frozen set");
    o.require(elapsed <= 60.0, "search took " + std::to_string(elapsed) + " s");
    std::ostringstream d;
    d << got.size() << " witnesses, lambda = {";
    for (u64 l : got) d << (l == *got.begin() ? "" : ",") << l;
    d << "}, " << std::fixed;
    d.precision(1);
    d << elapsed << " s";
    if (o.pass) o.detail = d.str();
    return o;
}

Outcome criterion2(Shared& S) {
    Outcome o;
    const auto pair = constructions::MonomialCurvePair::make(5, {2, 3}, {4, 9});
    S.general_pair = pair;
    o.require(!pair.gamma.has_value(), "unexpected common base");
    S.general = constructions::thm21_search(pair, thm21_options(&S.cache));
    o.require(!S.general.witnesses.empty(), "no witness");
    for (const auto& w : S.general.witnesses) {
        o.require(order_mod(5, w.lambda) == w.lambda - 1, "5 is not primitive mod " + std::to_string(w.lambda));
        for (std::size_t i = 0; i < pair.n(); ++i) {
            const BigInt e = BigInt(pair.a[i]) * big_pow(5, w.N[i]);
            o.require(w.t.pow(e) == w.t.pow(pair.b[i]), "field identity fails at lambda=" + std::to_string(w.lambda));
        }
        o.require(w.t.pow(w.lambda).is_one() && !w.t.is_one(), "t is not a nontrivial lambda-th root of unity");
    }
    if (o.pass) {
        const auto& w = S.general.witnesses.front();
        o.detail = std::to_string(S.general.witnesses.size()) + " witnesses, first lambda=" + std::to_string(w.lambda) +
                   " N=(" + std::to_string(w.N[0]) + "," + std::to_string(w.N[1]) + ")";
    }
    return o;
}

Outcome criterion3(Shared& S) {
    Outcome o;
    auto T = ff::make_tower(5, {1});
    const auto& F = T->level(1);
    const auto spec = constructions::TranslateCurveSpec::make(T, 1, {F.zero(), F.one(), F.from_int(2), F.from_int(3)});
    S.spec22 = spec;
    constructions::Thm22Options opt;
    opt.check_labels = false;
    S.thm22 = constructions::thm22_search(spec, {1, 5}, opt);
    o.require(S.thm22.hypothesis, "hypothesis rejected");
    std::map<int, std::set<FieldElement>> by_d;
    for (int d : {1, 5}) {
        const auto sols = ff::solve_affine_frobenius(*T, d, F.one());
        const BigInt qd = big_pow(5, static_cast<u64>(d));
        o.require(S.thm22.solution_counts[d] == qd && BigInt(sols.size()) == qd,
                  "solution count at d=" + std::to_string(d) + " is not 5^d");
        for (const auto& s : sols) {
            for (u64 i = 1; i <= 3; ++i)
                o.require(s.frobenius(static_cast<u64>(d) * i) == s + s.level().from_int(static_cast<i64>(i)),
                          "identity " + std::to_string(i) + " fails at d=" + std::to_string(d));
            o.require(s.frobenius(static_cast<u64>(5 * d)) == s && s.frobenius(static_cast<u64>(d)) != s,
                      "solution outside F_{5^{5d}} \\ F_{5^d}");
            o.require(constructions::frobenius_orbit_size(s, static_cast<u64>(d)) == 5, "orbit size is not 5");
        }
    }
    for (const auto& w : S.thm22.witnesses) {
        o.require(w.verified && w.orbit_size == 5, "witness not verified");
        by_d[w.d].insert(T->canonical(w.s));
    }
    for (const auto& s : by_d[1]) o.require(!by_d[5].count(s), "witness repeated across d=1 and d=5");
    o.require(!by_d[1].empty() && !by_d[5].empty(), "missing witnesses at some scale");
    if (o.pass)
        o.detail = "5 and 3125 solutions; " + std::to_string(by_d[1].size()) + " + " + std::to_string(by_d[5].size()) +
                   " distinct witnesses";
    return o;
}

Outcome criterion4(Shared& S) {
    Outcome o;
    u64 pairs = 0;
    for (u64 p : {5u, 7u, 11u, 13u}) {
        std::vector<std::vector<i64>> traces(p);
        for (u64 j = 0; j < p; ++j) {
            const i64 a1 = static_cast<i64>(p) + 1 - count_fp(j, p);
            std::vector<i64>& a = traces[j];
            a = {2, a1};
            for (int m = 2; m <= 12; ++m) a.push_back(a1 * a[m - 1] - static_cast<i64>(p) * a[m - 2]);
        }
        auto T = ff::make_tower(p, {1});
        for (u64 x = 0; x < p; ++x) {
            for (u64 y = 0; y < p; ++y) {
                bool oracle = false;
                for (int m = 1; m <= 12 && !oracle; ++m) oracle = std::abs(traces[x][m]) == std::abs(traces[y][m]);
                const bool lib = ec::geometric_isogeny_test(T->level(1).from_int(static_cast<i64>(x)),
                                                            T->level(1).from_int(static_cast<i64>(y)), {}, &S.cache);
                o.require(lib == oracle, "disagreement at p=" + std::to_string(p) + " (" + std::to_string(x) + ", " +
                                             std::to_string(y) + ")");
                ++pairs;
            }
        }
    }
    if (o.pass) o.detail = std::to_string(pairs) + " pairs agree";
    return o;
}

Outcome criterion5(Shared& S) {
    Outcome o;
    using census::Goodness;
    namespace V = census::varieties;
    for (u64 p : {5u, 7u}) {
        auto T = ff::make_tower(p, {2});
        std::size_t bad = 0, expected_bad = 0;
        for (int e : {1, 2}) {
            const auto& L = T->level(e);
            std::vector<census::ParametricVariety> zs{V::diagonal(T, e, 2), V::full(T, e, 2)};
            for (u64 i = 0; i < *L.order_u64(); ++i) {
                const FieldElement c = L.element(i);
                const bool ss = supersingular_oracle(T->embed(c, 2));
                for (int axis : {0, 1}) {
                    const auto v = census::classify_goodness(V::line(T, e, axis, c), {}, &S.cache).verdict;
                    o.require(v == (ss ? Goodness::Bad : Goodness::Good), "line at " + c.to_string() + " misclassified");
                    bad += v == Goodness::Bad;
                    expected_bad += ss;
                }
                if (!c.is_zero()) zs.push_back(V::translate(T, e, {L.zero(), c}));
            }
            for (u64 a = 1; a <= 4; ++a)
                for (u64 b = 1; b <= 4; ++b)
                    if (a + b > 2) zs.push_back(V::monomial(T, e, {a, b}));
            for (const auto& z : zs) {
                const auto v = census::classify_goodness(z, {}, &S.cache).verdict;
                o.require(v == Goodness::Good, z.name + " is not good over F_" + std::to_string(p) + "^" + std::to_string(e));
                bad += v == Goodness::Bad;
            }
        }
        o.require(bad == expected_bad, "bad count differs at p=" + std::to_string(p));
    }

    std::ostringstream counts;
    for (u64 p : {5u, 7u, 11u, 13u}) {
        auto T = ff::make_tower(p, {2});
        const auto& L = T->level(2);
        u64 lib = 0, oracle = 0;
        for (u64 i = 0; i < *L.order_u64(); ++i) {
            lib += ec::is_supersingular(L.element(i));
            oracle += supersingular_oracle(L.element(i));
        }
        const u64 eichler = p / 12 + (p % 12 == 5 || p % 12 == 7 ? 1 : 0) + (p % 12 == 11 ? 2 : 0);
        o.require(lib == oracle && oracle == eichler, "supersingular count differs at p=" + std::to_string(p));
        counts << (p == 5 ? "" : ", ") << p << ":" << oracle;
    }
    if (o.pass) o.detail = "bad set = supersingular lines; #ss = {" + counts.str() + "}";
    return o;
}

Outcome criterion6(Shared& S) {
    Outcome o;
    auto T = ff::make_tower(5, {1});
    const auto& F = T->level(1);
    const auto delta = census::varieties::diagonal(T, 1, 2);
    std::ostringstream d;
    for (const auto& Z : {delta, census::varieties::translate(T, 1, {F.zero(), F.one()})}) {
        o.require(census::classify_goodness(Z, {}, &S.cache).verdict == census::Goodness::Good, Z.name + " is not good");
        const auto rep = census::census(Z, delta, 8, {1, {}, &S.cache});
        int increases = 0;
        u64 prev = 0;
        for (const auto& row : rep.rows) {
            increases += row.cumulative_matched_v > prev;
            prev = row.cumulative_matched_v;
        }
        o.require(increases >= 3, Z.name + ": only " + std::to_string(increases) + " increases");
        d << (Z.name == "diagonal" ? "" : "; ") << Z.name << " " << increases << " increases to " << prev;
    }
    if (o.pass) o.detail = d.str();
    return o;
}

Outcome criterion7(Shared& S) {
    Outcome o;
    auto T = ff::make_tower(5, {1});
    const auto rows = census::heuristic_table(T, 1, 1, 6, {}, &S.cache);
    std::ostringstream d;
    for (const auto& r : rows) {
        const double predicted = std::pow(5.0, r.m / 2.0);
        const double ratio = static_cast<double>(r.distinct_labels) / predicted;
        o.require(r.undecided == 0, "undecided labels at m=" + std::to_string(r.m));
        o.require(ratio >= 1.0 / 8 && ratio <= 8, "ratio " + std::to_string(ratio) + " at m=" + std::to_string(r.m));
        d << (r.m == 1 ? "" : " ") << census::format_double(ratio);
    }
    if (o.pass) o.detail = "ratios " + d.str();
    return o;
}

Outcome criterion8() {
    Outcome o;
    std::vector<u64> primes;
    for (u64 p = 5; p <= 97; ++p)
        if (ff::is_prime(p)) primes.push_back(p);
    u64 checks = 0;
    for (int N : {1, 2, 3, 5, 7, 11, 13}) {
        const auto phi = hecke::load_phi(N);
        o.require(phi->degree() == hecke::psi(N), "degree of Phi_" + std::to_string(N));
        for (int i = 0; i <= phi->degree(); ++i)
            for (int j = 0; j <= phi->degree(); ++j)
                if (N > 1)
                    o.require(phi->coefficient(i, j) == phi->coefficient(j, i), "Phi_" + std::to_string(N) + " not symmetric");
        if (N == 1)
            o.require(phi->coefficient(1, 0) == 1 && phi->coefficient(0, 1) == -1 && phi->monomial_count() == 2,
                      "Phi_1 is not x - y");
        for (u64 p : primes) {
            if (p == static_cast<u64>(N)) continue;
            auto T = ff::make_tower(p, {1});
            ff::Rng rng = ff::make_rng(1, {p, static_cast<u64>(N)});
            for (int k = 0; k < 100; ++k) {
                const auto nb = hecke::hecke_neighbors(JInvariant(T->level(1).random(rng)), *phi);
                o.require(static_cast<int>(nb.size()) == hecke::psi(N),
                          "neighbor count at N=" + std::to_string(N) + ", p=" + std::to_string(p));
                ++checks;
            }
        }
    }
    if (o.pass) o.detail = std::to_string(checks) + " neighbor multisets of size psi(N)";
    return o;
}

Outcome criterion9(Shared& S) {
    Outcome o;
    u64 pairs = 0;
    for (const auto* run : {&S.gamma, &S.general}) {
        const auto& pair = run == &S.gamma ? *S.gamma_pair : *S.general_pair;
        for (const auto& w : run->witnesses) {
            std::vector<JInvariant> v, ww;
            for (std::size_t i = 0; i < pair.n(); ++i) {
                v.emplace_back(w.t.pow(pair.a[i]));
                ww.emplace_back(w.t.pow(pair.b[i]));
            }
            o.require(census::signature_of(v, {}, &S.cache) == census::signature_of(ww, {}, &S.cache),
                      "witness21 lambda=" + std::to_string(w.lambda) + " signatures differ");
            ++pairs;
        }
    }
    for (const auto& w : S.thm22.witnesses) {
        const auto& T = *S.spec22->tower;
        const int K = w.s.degree();
        std::vector<JInvariant> c, diag;
        for (const auto& b : S.spec22->b) {
            c.emplace_back(w.s + T.embed(b, K));
            diag.emplace_back(w.s + T.embed(S.spec22->b[0], K));
        }
        o.require(census::signature_of(c, {}, &S.cache) == census::signature_of(diag, {}, &S.cache),
                  "witness22 at d=" + std::to_string(w.d) + " signatures differ");
        ++pairs;
    }
    if (o.pass) o.detail = std::to_string(pairs) + " witness pairs with equal signatures";
    return o;
}

std::string run_artifacts() {
    std::ostringstream out;
    const auto pair = constructions::MonomialCurvePair::make(5, {3, 5}, {6, 20});
    auto opt = thm21_options(nullptr);
    opt.workers = 2;
    for (const auto& w : constructions::thm21_search(pair, opt).witnesses) out << io::to_json(pair, w).dump() << "\n";
    auto T = ff::make_tower(5, {1});
    const auto& F = T->level(1);
    const auto spec = constructions::TranslateCurveSpec::make(T, 1, {F.zero(), F.one(), F.from_int(2), F.from_int(3)});
    constructions::Thm22Options o22;
    o22.check_labels = false;
    o22.workers = 2;
    for (const auto& w : constructions::thm22_search(spec, {1, 5}, o22).witnesses)
        out << io::to_json(spec, w).dump() << "\n";
    const auto rep = census::census(census::varieties::translate(T, 1, {F.zero(), F.one()}),
                                    census::varieties::diagonal(T, 1, 2), 5);
    out << census::to_json(rep).dump() << "\n" << census::to_csv(rep);
    return out.str();
}

Outcome criterion10() {
    Outcome o;
    const auto dir = std::filesystem::temp_directory_path() / "isolab_acceptance";
    std::filesystem::create_directories(dir);
    for (int run : {1, 2}) std::ofstream(dir / ("run" + std::to_string(run) + ".txt"), std::ios::binary) << run_artifacts();
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    const std::string a = slurp(dir / "run1.txt"), b = slurp(dir / "run2.txt");
    o.require(!a.empty() && a == b, "witness and report files differ between runs");
    if (o.pass) o.detail = std::to_string(a.size()) + " bytes identical across two runs";
    return o;
}

}  // namespace

int main() {
    Shared S;
    const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
        {1, [&] { return criterion1(S); }}, {2, [&] { return criterion2(S); }}, {3, [&] { return criterion3(S); }},
        {4, [&] { return criterion4(S); }}, {5, [&] { return criterion5(S); }}, {6, [&] { return criterion6(S); }},
        {7, [&] { return criterion7(S); }}, {8, [] { return criterion8(); }},   {9, [&] { return criterion9(S); }},
        {10, [] { return criterion10(); }},
    };
    int failures = 0;
    for (const auto& [id, run] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failures += !o.pass;
        std::printf("criterion %2d: %s  %s (%.1f s)\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}

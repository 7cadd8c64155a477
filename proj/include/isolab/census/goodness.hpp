#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "../ff/roots.hpp"
#include "census.hpp"

namespace isolab::census {

enum class Goodness { Good, Bad, Unknown };

inline std::string to_string(Goodness g) {
    switch (g) {
        case Goodness::Good: return "good";
        case Goodness::Bad: return "bad";
        case Goodness::Unknown: return "unknown";
    }
    return "unknown";
}

struct Classification {
    Goodness verdict = Goodness::Unknown;
    int dimension = -1;
    std::string reason;
};

/// Good/bad for an irreducible Z in X(1)^2 given by a parametrization.
inline Classification classify_goodness(const ParametricVariety& Z, const Budgets& budgets = {},
                                        ec::LabelCache* cache = nullptr) {
    if (Z.n() != 2) throw Error(ErrorCode::InvalidArgument, "goodness is defined for subvarieties of X(1)^2");
    for (const auto& map : Z.maps)
        if (map.den.is_zero()) throw Error(ErrorCode::InvalidArgument, "denominator is identically zero");
    std::optional<FieldElement> c[2];
    for (int i = 0; i < 2; ++i) c[i] = Z.maps[static_cast<std::size_t>(i)].constant_value();
    try {
        if (Z.params == 0 || (c[0] && c[1])) {
            if (!c[0] || !c[1]) throw Error(ErrorCode::InvalidArgument, "point coordinates must be constant");
            const bool iso = ec::geometric_isogeny_test(*c[0], *c[1], budgets, cache);
            return {iso ? Goodness::Good : Goodness::Bad, 0,
                    iso ? "coordinates are isogenous" : "coordinates are not isogenous"};
        }
        if (c[0] || c[1]) {
            const FieldElement& fixed = c[0] ? *c[0] : *c[1];
            const std::string what = (c[0] ? "{" + fixed.to_string() + "} x X(1)" : "X(1) x {" + fixed.to_string() + "}");
            if (ec::is_supersingular(fixed, budgets))
                return {Goodness::Bad, 1, what + " with supersingular fixed coordinate"};
            return {Goodness::Good, 1, what + " with ordinary fixed coordinate"};
        }
    } catch (const Error& e) {
        if (e.code() != ErrorCode::BudgetExceeded && e.code() != ErrorCode::IncompleteFactorization) throw;
        return {Goodness::Unknown, Z.params == 0 ? 0 : 1, std::string("label undecided: ") + e.what()};
    }
    if (Z.params == 1) return {Goodness::Good, 1, "both coordinates vary; not a horizontal or vertical line"};
    return {Goodness::Good, -1, "both coordinates vary; a non-line curve or all of X(1)^2"};
}

struct HeuristicRow {
    int m = 0;
    u64 points = 0;
    u64 distinct_labels = 0;
    u64 undecided = 0;
    double distinct_signatures = 0;
    double predicted = 0;
    double ratio = 0;
};

/// Distinct labels among all j in F_{q^m} against the q^{nm/2} estimate.
inline std::vector<HeuristicRow> heuristic_table(const ff::TowerPtr& tower, int e, int n, int m_max,
                                                 const Budgets& budgets = {}, ec::LabelCache* cache = nullptr) {
    if (n < 1 || e < 1) throw Error(ErrorCode::InvalidArgument, "n and e must be positive");
    std::vector<HeuristicRow> rows;
    const double q = std::pow(static_cast<double>(tower->characteristic()), e);
    for (int m = 1; m <= m_max; ++m) {
        const ff::Level& L = tower->ensure_level(e * m);
        LabelInterner interner;
        LevelLabeler labeler(L, interner, budgets, cache);
        HeuristicRow row;
        row.m = m;
        row.points = *L.order_u64();
        for (u64 i = 0; i < row.points; ++i)
            if (labeler.id(JInvariant(L.element(i))) == LevelLabeler::kUndecided) ++row.undecided;
        row.distinct_labels = interner.size();
        row.distinct_signatures = std::pow(static_cast<double>(row.distinct_labels), n);
        row.predicted = std::pow(q, n * m / 2.0);
        row.ratio = row.distinct_signatures / row.predicted;
        rows.push_back(row);
    }
    return rows;
}

struct Cor33Match {
    int m = 0;
    Point family_point;
    std::vector<JInvariant> divisor_point;
};

/// Points of V(F) over F_{q^m}, found by solving F for its last variable that actually occurs.
inline std::vector<std::vector<FieldElement>> divisor_points(const ff::FieldTower& tower, const MultiPoly& F, int e,
                                                             int m, const Budgets& budgets = {}) {
    const int n = F.nvars();
    int solve = -1;
    for (int i = n - 1; i >= 0 && solve < 0; --i)
        if (F.degree_in(i) > 0) solve = i;
    if (solve < 0) throw Error(ErrorCode::InvalidArgument, "F is constant");
    const int K = e * m;
    const ff::Level& L = tower.ensure_level(K);
    const BigInt others = boost::multiprecision::pow(L.order(), static_cast<unsigned>(n - 1));
    if (others > budgets.enumeration_limit)
        throw Error(ErrorCode::BudgetExceeded, others.str() + " tuples exceed the enumeration limit");
    const BoundPoly bound(tower, F, K);
    const u64 q = static_cast<u64>(L.order());
    ff::Rng rng = ff::make_rng(tower.seed(), {static_cast<u64>(K), 0x636f7233});
    std::vector<std::vector<FieldElement>> out;
    for (u64 idx = 0; idx < static_cast<u64>(others); ++idx) {
        std::vector<FieldElement> x(static_cast<std::size_t>(n), L.zero());
        u64 rest = idx;
        for (int i = 0; i < n; ++i) {
            if (i == solve) continue;
            x[static_cast<std::size_t>(i)] = L.element(rest % q);
            rest /= q;
        }
        std::vector<FieldElement> coeffs(static_cast<std::size_t>(F.degree_in(solve) + 1), L.zero());
        for (const auto& [c, ex] : bound.terms()) {
            FieldElement t = c;
            for (int i = 0; i < n; ++i)
                if (i != solve && ex[static_cast<std::size_t>(i)])
                    t *= x[static_cast<std::size_t>(i)].pow(static_cast<u64>(ex[static_cast<std::size_t>(i)]));
            coeffs[static_cast<std::size_t>(ex[static_cast<std::size_t>(solve)])] += t;
        }
        const ff::Poly f(L, std::move(coeffs));
        std::vector<FieldElement> roots;
        if (f.is_zero()) {
            if (out.size() + q > budgets.enumeration_limit)
                throw Error(ErrorCode::BudgetExceeded, "divisor has too many points");
            for (u64 r = 0; r < q; ++r) roots.push_back(L.element(r));
        } else {
            roots = ff::roots_in_level(f, rng);
        }
        for (const auto& r : roots) {
            x[static_cast<std::size_t>(solve)] = r;
            out.push_back(x);
        }
    }
    return out;
}

/// Family points whose signature agrees with some point of V(F), each with one certificate point.
inline std::vector<Cor33Match> cor33_probe(const ParametricVariety& family, const MultiPoly& F, int m_max,
                                           const Budgets& budgets = {}, ec::LabelCache* cache = nullptr) {
    family.validate();
    if (F.nvars() != family.n()) throw Error(ErrorCode::InvalidArgument, "F must have one variable per coordinate");
    if (F.level().degree() != family.e) throw Error(ErrorCode::LevelMismatch, "F must have coefficients in F_q");
    if (F.is_constant()) throw Error(ErrorCode::InvalidArgument, "F is constant");
    const ff::FieldTower& T = *family.tower;
    std::vector<Cor33Match> out;
    LabelInterner interner;
    for (int m = 1; m <= m_max; ++m) {
        const PointEnumeration en(family, m, budgets);
        LevelLabeler labeler(en.level(), interner, budgets, cache);
        std::map<SignatureKey, std::vector<JInvariant>> certificates;
        for (const auto& x : divisor_points(T, F, family.e, m, budgets)) {
            SignatureKey k;
            std::vector<JInvariant> js;
            for (const auto& c : x) {
                js.emplace_back(c);
                k.push_back(labeler.id(js.back()));
            }
            if (decided(k)) certificates.emplace(k, std::move(js));
        }
        for (u64 i = 0; i < en.size(); ++i) {
            Point pt = en.at(i);
            SignatureKey k;
            for (const auto& j : pt.coords) k.push_back(labeler.id(j));
            if (!decided(k)) continue;
            auto it = certificates.find(k);
            if (it == certificates.end()) continue;
            out.push_back({m, std::move(pt), it->second});
        }
    }
    return out;
}

}  // namespace isolab::census

#pragma once

#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "../config.hpp"
#include "../error.hpp"
#include "../ff/factor.hpp"
#include "../ff/minpoly.hpp"
#include "curve.hpp"
#include "jinvariant.hpp"
#include "point_count.hpp"

namespace isolab::ec {

/// Geometric isogeny class: all supersingular curves in characteristic p, or the
/// ordinary curves with CM by the imaginary quadratic field of discriminant `disc`.
struct IsogenyClassLabel {
    enum class Kind { Supersingular, Ordinary };
    Kind kind = Kind::Supersingular;
    BigInt disc = 0;
    u64 p = 0;

    bool supersingular() const { return kind == Kind::Supersingular; }

    friend bool operator==(const IsogenyClassLabel& a, const IsogenyClassLabel& b) {
        return a.kind == b.kind && a.disc == b.disc && a.p == b.p;
    }
    friend bool operator<(const IsogenyClassLabel& a, const IsogenyClassLabel& b) {
        if (a.p != b.p) return a.p < b.p;
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.disc < b.disc;
    }

    std::string to_string() const {
        if (supersingular()) return "SS(" + std::to_string(p) + ")";
        return "ORD(" + disc.str() + ")";
    }
};

/// Fundamental discriminant of Q(sqrt(D)) for D < 0.
inline BigInt fundamental_discriminant(const BigInt& D, const ff::FactorEffort& effort = {}) {
    if (D >= 0) throw Error(ErrorCode::InvalidArgument, "discriminant must be negative");
    const auto f = ff::factor(BigInt(-D), effort);
    if (!f.complete()) throw Error(ErrorCode::IncompleteFactorization, f.to_string());
    BigInt core = 1;
    for (const auto& [q, e] : f.factors)
        if (e % 2) core *= q;
    const BigInt d = -core;
    const BigInt r = ((d % 4) + 4) % 4;
    return r == 1 ? d : 4 * d;
}

/// Trace over F_{Q^m} from the trace a over F_Q: a_m = a a_{m-1} - Q a_{m-2}.
inline BigInt trace_recurrence(const BigInt& a, const BigInt& Q, unsigned m) {
    if (m == 0) return 2;
    BigInt prev = 2, cur = a;
    for (unsigned i = 1; i < m; ++i) {
        BigInt next = a * cur - Q * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Trace data of the standard model over the minimal field F_{p^d} of j.
struct MinimalTrace {
    u64 p = 0;
    int degree = 0;  // d
    BigInt q;        // p^d
    BigInt a;        // q + 1 - #E(F_q)
};

namespace detail {

inline MinimalTrace minimal_trace_of(const std::vector<u64>& minpoly, u64 p, const Budgets& budgets) {
    require_large_characteristic(p);
    const auto L = ff::make_detached_level(p, minpoly);
    const Curve E = curve_from_j(L->generator());
    const u64 n = count_points(E, budgets);
    MinimalTrace t;
    t.p = p;
    t.degree = L->degree();
    t.q = L->order();
    t.a = t.q + 1 - n;
    return t;
}

inline IsogenyClassLabel label_from_trace(const MinimalTrace& t, const Budgets& budgets) {
    IsogenyClassLabel label;
    label.p = t.p;
    if (t.a % t.p == 0) return label;
    label.kind = IsogenyClassLabel::Kind::Ordinary;
    label.disc = fundamental_discriminant(t.a * t.a - 4 * t.q, ff::FactorEffort::from(budgets));
    return label;
}

}  // namespace detail

/// Memo of labels keyed by (p, minimal polynomial of j). Safe for concurrent use.
class LabelCache {
public:
    using Key = std::pair<u64, std::vector<u64>>;

    std::optional<IsogenyClassLabel> find(const Key& key) const {
        std::shared_lock lock(mu_);
        auto it = map_.find(key);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }
    void insert(const Key& key, const IsogenyClassLabel& label) {
        std::unique_lock lock(mu_);
        map_.emplace(key, label);
    }
    std::size_t size() const {
        std::shared_lock lock(mu_);
        return map_.size();
    }

private:
    mutable std::shared_mutex mu_;
    std::map<Key, IsogenyClassLabel> map_;
};

inline MinimalTrace minimal_trace(const JInvariant& j, const Budgets& budgets = {}) {
    if (j.is_cusp()) throw Error(ErrorCode::CuspInput, "no trace at the cusp");
    const auto& v = j.value();
    return detail::minimal_trace_of(ff::minimal_polynomial(v), v.characteristic(), budgets);
}

/// Trace of Frobenius of the standard model over the degree-m extension of the minimal field of j.
inline BigInt frobenius_trace(const JInvariant& j, unsigned m = 1, const Budgets& budgets = {}) {
    const MinimalTrace t = minimal_trace(j, budgets);
    return trace_recurrence(t.a, t.q, m);
}

inline bool is_supersingular(const JInvariant& j, const Budgets& budgets = {}) {
    return minimal_trace(j, budgets).a % j.value().characteristic() == 0;
}

inline IsogenyClassLabel isogeny_class_label(const JInvariant& j, const Budgets& budgets = {},
                                             LabelCache* cache = nullptr) {
    if (j.is_cusp()) throw Error(ErrorCode::CuspInput, "the cusp has no isogeny class label");
    const auto& v = j.value();
    LabelCache::Key key{v.characteristic(), ff::minimal_polynomial(v)};
    if (cache)
        if (auto hit = cache->find(key)) return *hit;
    const auto label = detail::label_from_trace(detail::minimal_trace_of(key.second, key.first, budgets), budgets);
    if (cache) cache->insert(key, label);
    return label;
}

/// Label equality; the cusp is isogenous only to the cusp.
inline bool geometric_isogeny_test(const JInvariant& j1, const JInvariant& j2, const Budgets& budgets = {},
                                   LabelCache* cache = nullptr) {
    if (j1.is_cusp() || j2.is_cusp()) return j1.is_cusp() && j2.is_cusp();
    return isogeny_class_label(j1, budgets, cache) == isogeny_class_label(j2, budgets, cache);
}

}  // namespace isolab::ec

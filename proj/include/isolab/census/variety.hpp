#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "../config.hpp"
#include "../ec/jinvariant.hpp"
#include "../error.hpp"
#include "../ff/tower.hpp"

namespace isolab::census {

using ff::FieldElement;
using ec::JInvariant;

/// Polynomial in nvars variables with coefficients in one level of a tower.
class MultiPoly {
public:
    using Exponents = std::vector<int>;

    MultiPoly(const ff::Level& level, int nvars) : level_(&level), nvars_(nvars) {}

    static MultiPoly constant(const FieldElement& c, int nvars) {
        MultiPoly f(c.level(), nvars);
        f.add_term(c, Exponents(static_cast<std::size_t>(nvars), 0));
        return f;
    }
    static MultiPoly variable(const ff::Level& level, int i, int nvars) {
        MultiPoly f(level, nvars);
        Exponents e(static_cast<std::size_t>(nvars), 0);
        e[static_cast<std::size_t>(i)] = 1;
        f.add_term(level.one(), e);
        return f;
    }

    void add_term(const FieldElement& c, const Exponents& e) {
        if (static_cast<int>(e.size()) != nvars_)
            throw Error(ErrorCode::InvalidArgument, "exponent vector has the wrong length");
        for (int x : e)
            if (x < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
        if (c.level_ptr() != level_) throw Error(ErrorCode::LevelMismatch, "coefficient lies in another level");
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    const ff::Level& level() const { return *level_; }
    int nvars() const { return nvars_; }
    const std::map<Exponents, FieldElement>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int degree_in(int i) const {
        int d = terms_.empty() ? -1 : 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(i)]);
        return d;
    }
    bool is_constant() const {
        for (const auto& [e, c] : terms_)
            for (int x : e)
                if (x) return false;
        return true;
    }

    /// c with *this = c * other, if one exists.
    std::optional<FieldElement> ratio_to(const MultiPoly& other) const {
        if (other.is_zero()) return std::nullopt;
        const auto& [e0, d0] = *other.terms_.begin();
        auto it = terms_.find(e0);
        const FieldElement c = it == terms_.end() ? level_->zero() : it->second / d0;
        if (terms_.size() != (c.is_zero() ? 0 : other.terms_.size())) return std::nullopt;
        for (const auto& [e, d] : other.terms_) {
            if (c.is_zero()) break;
            auto jt = terms_.find(e);
            if (jt == terms_.end() || jt->second != c * d) return std::nullopt;
        }
        return c;
    }

private:
    const ff::Level* level_;
    int nvars_;
    std::map<Exponents, FieldElement> terms_;
};

/// MultiPoly with coefficients moved into a larger level, ready for repeated evaluation.
class BoundPoly {
public:
    BoundPoly(const ff::FieldTower& tower, const MultiPoly& f, int K) : level_(&tower.ensure_level(K)) {
        for (const auto& [e, c] : f.terms()) terms_.emplace_back(tower.embed(c, K), e);
    }

    FieldElement evaluate(const std::vector<FieldElement>& x) const {
        FieldElement acc = level_->zero();
        for (const auto& [c, e] : terms_) {
            FieldElement t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i]) t *= x[i].pow(static_cast<u64>(e[i]));
            acc += t;
        }
        return acc;
    }
    const std::vector<std::pair<FieldElement, MultiPoly::Exponents>>& terms() const { return terms_; }

private:
    const ff::Level* level_;
    std::vector<std::pair<FieldElement, MultiPoly::Exponents>> terms_;
};

struct RationalMap {
    MultiPoly num;
    MultiPoly den;

    /// The constant value, if num / den does not depend on the parameters.
    std::optional<FieldElement> constant_value() const { return num.ratio_to(den); }
};

enum class Marker { Diagonal, ProductOfPoints, General };

inline std::string to_string(Marker m) {
    switch (m) {
        case Marker::Diagonal: return "diagonal";
        case Marker::ProductOfPoints: return "product_of_points";
        case Marker::General: return "general";
    }
    return "general";
}

/// Image of F_q-rational maps (F_q^params) -> X(1)^n; coefficients live at level e.
struct ParametricVariety {
    ff::TowerPtr tower;
    int e = 1;
    int params = 1;
    std::vector<RationalMap> maps;
    Marker marker = Marker::General;
    std::string name;

    int n() const { return static_cast<int>(maps.size()); }

    void validate() const {
        if (!tower) throw Error(ErrorCode::InvalidArgument, "variety has no field");
        if (maps.empty()) throw Error(ErrorCode::InvalidArgument, "variety needs at least one coordinate");
        if (params < 0) throw Error(ErrorCode::InvalidArgument, "negative parameter count");
        bool all_constant = true;
        for (const auto& m : maps) {
            if (m.den.is_zero()) throw Error(ErrorCode::InvalidArgument, "denominator is identically zero");
            if (m.num.nvars() != params || m.den.nvars() != params)
                throw Error(ErrorCode::InvalidArgument, "map uses the wrong number of parameters");
            if (m.num.level().degree() != e || m.den.level().degree() != e)
                throw Error(ErrorCode::LevelMismatch, "map coefficients must lie in F_q");
            all_constant = all_constant && m.constant_value().has_value();
        }
        if (params > 0 && all_constant)
            throw Error(ErrorCode::InvalidArgument, "every coordinate map is constant");
    }
};

namespace varieties {

inline RationalMap polynomial_map(MultiPoly f) {
    MultiPoly one = MultiPoly::constant(f.level().one(), f.nvars());
    return {std::move(f), std::move(one)};
}

/// {(t, ..., t)}
inline ParametricVariety diagonal(ff::TowerPtr tower, int e, int n) {
    const ff::Level& L = tower->ensure_level(e);
    ParametricVariety v{tower, e, 1, {}, Marker::Diagonal, "diagonal"};
    for (int i = 0; i < n; ++i) v.maps.push_back(polynomial_map(MultiPoly::variable(L, 0, 1)));
    return v;
}

/// {(t + b_0, ..., t + b_{n-1})}
inline ParametricVariety translate(ff::TowerPtr tower, int e, const std::vector<FieldElement>& shifts) {
    const ff::Level& L = tower->ensure_level(e);
    ParametricVariety v{tower, e, 1, {}, Marker::General, "translate"};
    for (const auto& b : shifts) {
        MultiPoly f = MultiPoly::variable(L, 0, 1);
        f.add_term(tower->embed(tower->canonical(b), e), {0});
        v.maps.push_back(polynomial_map(std::move(f)));
    }
    return v;
}

/// {(t^{a_1}, ..., t^{a_n})}
inline ParametricVariety monomial(ff::TowerPtr tower, int e, const std::vector<u64>& exps) {
    const ff::Level& L = tower->ensure_level(e);
    ParametricVariety v{tower, e, 1, {}, Marker::General, "monomial"};
    for (u64 a : exps) {
        MultiPoly f(L, 1);
        f.add_term(L.one(), {static_cast<int>(a)});
        v.maps.push_back(polynomial_map(std::move(f)));
    }
    return v;
}

/// The single point (c_1, ..., c_n).
inline ParametricVariety point(ff::TowerPtr tower, int e, const std::vector<FieldElement>& coords) {
    ParametricVariety v{tower, e, 0, {}, Marker::ProductOfPoints, "point"};
    for (const auto& c : coords)
        v.maps.push_back(polynomial_map(MultiPoly::constant(tower->embed(tower->canonical(c), e), 0)));
    return v;
}

/// {c} x X(1) for axis 0, X(1) x {c} for axis 1.
inline ParametricVariety line(ff::TowerPtr tower, int e, int axis, const FieldElement& c) {
    const ff::Level& L = tower->ensure_level(e);
    ParametricVariety v{tower, e, 1, {}, Marker::General, axis == 0 ? "vertical_line" : "horizontal_line"};
    RationalMap fixed = polynomial_map(MultiPoly::constant(tower->embed(tower->canonical(c), e), 1));
    RationalMap free = polynomial_map(MultiPoly::variable(L, 0, 1));
    v.maps = axis == 0 ? std::vector<RationalMap>{fixed, free} : std::vector<RationalMap>{free, fixed};
    return v;
}

/// X(1)^n itself.
inline ParametricVariety full(ff::TowerPtr tower, int e, int n) {
    const ff::Level& L = tower->ensure_level(e);
    ParametricVariety v{tower, e, n, {}, Marker::General, "full"};
    for (int i = 0; i < n; ++i) v.maps.push_back(polynomial_map(MultiPoly::variable(L, i, n)));
    return v;
}

}  // namespace varieties

/// Parameter tuple and its coordinates; a vanishing denominator gives the cusp.
struct Point {
    std::vector<FieldElement> params;
    std::vector<JInvariant> coords;
};

/// Random access to the points of V over F_{q^m}, tuple index = little-endian base-q^m digits.
class PointEnumeration {
public:
    PointEnumeration(const ParametricVariety& V, int m, const Budgets& budgets = {}) : V_(&V) {
        V.validate();
        if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be positive");
        K_ = V.e * m;
        level_ = &V.tower->ensure_level(K_);
        const BigInt total = boost::multiprecision::pow(level_->order(), static_cast<unsigned>(V.params));
        if (total > budgets.enumeration_limit)
            throw Error(ErrorCode::BudgetExceeded, total.str() + " parameter tuples exceed the enumeration limit");
        size_ = static_cast<u64>(total);
        base_ = V.params ? static_cast<u64>(level_->order()) : 1;
        for (const auto& map : V.maps) {
            num_.emplace_back(*V.tower, map.num, K_);
            den_.emplace_back(*V.tower, map.den, K_);
        }
    }

    u64 size() const { return size_; }
    int level_degree() const { return K_; }
    const ff::Level& level() const { return *level_; }

    Point at(u64 idx) const {
        Point pt;
        for (int i = 0; i < V_->params; ++i, idx /= base_) pt.params.push_back(level_->element(idx % base_));
        for (std::size_t i = 0; i < num_.size(); ++i) {
            const FieldElement d = den_[i].evaluate(pt.params);
            if (d.is_zero()) {
                pt.coords.push_back(JInvariant::cusp());
            } else {
                pt.coords.emplace_back(num_[i].evaluate(pt.params) / d);
            }
        }
        return pt;
    }

private:
    const ParametricVariety* V_;
    int K_ = 0;
    const ff::Level* level_ = nullptr;
    u64 size_ = 0;
    u64 base_ = 1;
    std::vector<BoundPoly> num_, den_;
};

/// Every point of V over F_{q^m}, in tuple-index order.
inline std::vector<Point> enumerate_points(const ParametricVariety& V, int m, const Budgets& budgets = {}) {
    const PointEnumeration en(V, m, budgets);
    std::vector<Point> out;
    out.reserve(en.size());
    for (u64 i = 0; i < en.size(); ++i) out.push_back(en.at(i));
    return out;
}

}  // namespace isolab::census

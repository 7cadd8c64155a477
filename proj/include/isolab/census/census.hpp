#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../ec/label.hpp"
#include "variety.hpp"

namespace isolab::census {

/// Componentwise labels; std::nullopt marks the cusp.
struct IsogenySignature {
    std::vector<std::optional<ec::IsogenyClassLabel>> slots;

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < slots.size(); ++i) s += (i ? ", " : "") + (slots[i] ? slots[i]->to_string() : "cusp");
        return s + ")";
    }
    friend bool operator==(const IsogenySignature& a, const IsogenySignature& b) { return a.slots == b.slots; }
};

inline IsogenySignature signature_of(const std::vector<JInvariant>& coords, const Budgets& budgets = {},
                                     ec::LabelCache* cache = nullptr) {
    IsogenySignature sig;
    for (const auto& j : coords) {
        if (j.is_cusp()) {
            sig.slots.push_back(std::nullopt);
        } else {
            sig.slots.push_back(ec::isogeny_class_label(j, budgets, cache));
        }
    }
    return sig;
}

/// Dense ids for labels seen during one run.
class LabelInterner {
public:
    int intern(const ec::IsogenyClassLabel& l) {
        auto [it, inserted] = ids_.emplace(l, static_cast<int>(labels_.size()));
        if (inserted) labels_.push_back(l);
        return it->second;
    }
    const ec::IsogenyClassLabel& at(int id) const { return labels_.at(static_cast<std::size_t>(id)); }
    std::size_t size() const { return labels_.size(); }

private:
    std::map<ec::IsogenyClassLabel, int> ids_;
    std::vector<ec::IsogenyClassLabel> labels_;
};

/// Label id of every element of one level, filled one Galois orbit at a time.
class LevelLabeler {
public:
    static constexpr int kCusp = -1;
    static constexpr int kUndecided = -2;

    LevelLabeler(const ff::Level& L, LabelInterner& interner, const Budgets& budgets, ec::LabelCache* cache)
        : level_(&L), interner_(&interner), budgets_(budgets), cache_(cache) {
        const auto size = L.order_u64();
        if (!size || *size > budgets.enumeration_limit)
            throw Error(ErrorCode::BudgetExceeded, "level of size " + L.order().str() + " is too large to label");
        ids_.assign(*size, kUnset);
    }

    int id(const JInvariant& j) {
        if (j.is_cusp()) return kCusp;
        const FieldElement& x = j.value();
        if (x.level_ptr() != level_) throw Error(ErrorCode::LevelMismatch, "element is not in the labeled level");
        int& slot = ids_[level_->index_of(x)];
        if (slot != kUnset) return slot;
        int value = kUndecided;
        try {
            value = interner_->intern(ec::isogeny_class_label(j, budgets_, cache_));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::IncompleteFactorization && e.code() != ErrorCode::BudgetExceeded) throw;
        }
        FieldElement c = x;
        for (int i = 0; i < level_->degree(); ++i, c = c.frobenius(1)) ids_[level_->index_of(c)] = value;
        return value;
    }

private:
    static constexpr int kUnset = -3;
    const ff::Level* level_;
    LabelInterner* interner_;
    Budgets budgets_;
    ec::LabelCache* cache_;
    std::vector<int> ids_;
};

using SignatureKey = std::vector<int>;

inline bool decided(const SignatureKey& k) {
    return std::none_of(k.begin(), k.end(), [](int x) { return x == LevelLabeler::kUndecided; });
}

/// Parameters moved to their smallest levels, encoded so points agree across m.
inline std::string canonical_point_key(const ff::FieldTower& tower, const std::vector<FieldElement>& params) {
    std::string key;
    for (const auto& x : params) key += tower.canonical(x).to_string() + ";";
    return key;
}

struct CensusRow {
    int m = 0;
    u64 points_v = 0;
    u64 points_w = 0;
    u64 signatures_v = 0;
    u64 signatures_w = 0;
    u64 common_signatures = 0;
    u64 matched_pairs = 0;
    u64 matched_points_v = 0;
    u64 cumulative_matched_v = 0;
    u64 undecided_v = 0;
    u64 undecided_w = 0;
    double predicted = 0;
    double ratio = 0;
};

struct CensusReport {
    u64 p = 0;
    int e = 1;
    int n = 0;
    int params_v = 0;
    int params_w = 0;
    std::string v_name;
    std::string w_name;
    std::vector<CensusRow> rows;
};

struct CensusOptions {
    int m_min = 1;
    Budgets budgets;
    ec::LabelCache* cache = nullptr;
};

inline CensusReport census(const ParametricVariety& V, const ParametricVariety& W, int m_max,
                           const CensusOptions& opt = {}) {
    V.validate();
    W.validate();
    if (V.tower != W.tower || V.e != W.e)
        throw Error(ErrorCode::LevelMismatch, "V and W must be defined over the same field");
    if (V.n() != W.n()) throw Error(ErrorCode::InvalidArgument, "V and W live in different X(1)^n");
    const ff::FieldTower& T = *V.tower;
    CensusReport rep{T.characteristic(), V.e, V.n(), V.params, W.params, V.name, W.name, {}};
    const double q = std::pow(static_cast<double>(T.characteristic()), V.e);
    LabelInterner interner;
    std::set<std::string> cumulative;

    for (int m = std::max(opt.m_min, 1); m <= m_max; ++m) {
        const PointEnumeration ev(V, m, opt.budgets), ew(W, m, opt.budgets);
        LevelLabeler labeler(ev.level(), interner, opt.budgets, opt.cache);
        auto key_of = [&](const Point& pt) {
            SignatureKey k;
            for (const auto& j : pt.coords) k.push_back(labeler.id(j));
            return k;
        };
        CensusRow row;
        row.m = m;
        row.points_v = ev.size();
        row.points_w = ew.size();

        std::map<SignatureKey, u64> wbuckets;
        for (u64 i = 0; i < ew.size(); ++i) {
            const SignatureKey k = key_of(ew.at(i));
            if (!decided(k)) {
                ++row.undecided_w;
                continue;
            }
            ++wbuckets[k];
        }
        std::map<SignatureKey, u64> vbuckets;
        for (u64 i = 0; i < ev.size(); ++i) {
            const Point pt = ev.at(i);
            const SignatureKey k = key_of(pt);
            if (!decided(k)) {
                ++row.undecided_v;
                continue;
            }
            ++vbuckets[k];
            auto it = wbuckets.find(k);
            if (it == wbuckets.end()) continue;
            ++row.matched_points_v;
            row.matched_pairs += it->second;
            cumulative.insert(canonical_point_key(T, pt.params));
        }
        row.signatures_v = vbuckets.size();
        row.signatures_w = wbuckets.size();
        for (const auto& [k, c] : vbuckets) row.common_signatures += wbuckets.count(k);
        row.cumulative_matched_v = cumulative.size();
        row.predicted = std::pow(q, m * (V.params + W.params) - V.n() * m / 2.0);
        row.ratio = row.predicted > 0 ? static_cast<double>(row.matched_pairs) / row.predicted : 0.0;
        rep.rows.push_back(row);
    }
    return rep;
}

inline std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

inline constexpr const char* kCensusCsvHeader =
    "m,points_v,points_w,signatures_v,signatures_w,common_signatures,matched_pairs,matched_points_v,"
    "cumulative_matched_v,undecided_v,undecided_w,predicted,ratio";

inline std::string to_csv(const CensusReport& rep) {
    std::ostringstream out;
    out << kCensusCsvHeader << "\n";
    for (const auto& r : rep.rows) {
        out << r.m << "," << r.points_v << "," << r.points_w << "," << r.signatures_v << "," << r.signatures_w << ","
            << r.common_signatures << "," << r.matched_pairs << "," << r.matched_points_v << ","
            << r.cumulative_matched_v << "," << r.undecided_v << "," << r.undecided_w << ","
            << format_double(r.predicted) << "," << format_double(r.ratio) << "\n";
    }
    return out.str();
}

inline nlohmann::ordered_json to_json(const CensusReport& rep) {
    nlohmann::ordered_json j;
    j["schema"] = "isolab.census-report/1";
    j["p"] = rep.p;
    j["e"] = rep.e;
    j["n"] = rep.n;
    j["V"] = {{"name", rep.v_name}, {"params", rep.params_v}};
    j["W"] = {{"name", rep.w_name}, {"params", rep.params_w}};
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : rep.rows) {
        nlohmann::ordered_json o;
        o["m"] = r.m;
        o["points_v"] = r.points_v;
        o["points_w"] = r.points_w;
        o["signatures_v"] = r.signatures_v;
        o["signatures_w"] = r.signatures_w;
        o["common_signatures"] = r.common_signatures;
        o["matched_pairs"] = r.matched_pairs;
        o["matched_points_v"] = r.matched_points_v;
        o["cumulative_matched_v"] = r.cumulative_matched_v;
        o["undecided_v"] = r.undecided_v;
        o["undecided_w"] = r.undecided_w;
        o["predicted"] = r.predicted;
        o["ratio"] = r.ratio;
        rows.push_back(o);
    }
    j["rows"] = rows;
    return j;
}

}  // namespace isolab::census

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "../constructions/monomial.hpp"
#include "../constructions/translate.hpp"
#include "../ff/tower.hpp"

namespace isolab::io {

using Json = nlohmann::ordered_json;

inline Json to_json(const ff::FieldElement& x) {
    Json j;
    j["level"] = x.degree();
    j["coeffs"] = std::vector<u64>(x.coeffs().begin(), x.coeffs().end());
    j["modulus"] = x.level().modulus();
    return j;
}

/// Moduli carried by element records, keyed by level, for seeding TowerOptions::moduli.
inline void collect_moduli(const Json& j, std::map<int, std::vector<u64>>& out) {
    if (j.is_object() && j.contains("level") && j.contains("modulus")) {
        const int k = j.at("level").get<int>();
        auto m = j.at("modulus").get<std::vector<u64>>();
        auto [it, inserted] = out.emplace(k, m);
        if (!inserted && it->second != m)
            throw Error(ErrorCode::MalformedData, "conflicting moduli for level " + std::to_string(k));
        return;
    }
    if (j.is_array() || j.is_object())
        for (const auto& v : j) collect_moduli(v, out);
}

/// Element from an integer (prime field) or a {level, coeffs[, modulus]} object.
inline ff::FieldElement element_from_json(const ff::FieldTower& tower, const Json& j) {
    const u64 p = tower.characteristic();
    try {
        if (j.is_number_integer()) {
            const i64 v = j.get<i64>();
            return tower.level(1).from_int(v);
        }
        if (!j.is_object() || !j.contains("coeffs"))
            throw Error(ErrorCode::MalformedData, "field element must be an integer or {level, coeffs, modulus}");
        auto c = j.at("coeffs").get<std::vector<i64>>();
        const int k = j.contains("level") ? j.at("level").get<int>() : static_cast<int>(c.size());
        if (k < 1 || static_cast<int>(c.size()) > k)
            throw Error(ErrorCode::MalformedData, "coefficient vector longer than its level");
        const ff::Level& L = tower.ensure_level(k);
        if (j.contains("modulus")) {
            auto m = j.at("modulus").get<std::vector<u64>>();
            for (auto& x : m) x %= p;
            if (m != L.modulus())
                throw Error(ErrorCode::LevelMismatch, "element modulus differs from the tower modulus at level " +
                                                          std::to_string(k));
        }
        std::vector<u64> v(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < c.size(); ++i) v[i] = static_cast<u64>(((c[i] % static_cast<i64>(p)) + static_cast<i64>(p)) % static_cast<i64>(p));
        return L.from_coeffs(v);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedData, e.what());
    }
}

inline Json to_json(const constructions::MonomialCurvePair& pair, const constructions::Witness21& w) {
    Json j;
    j["record"] = "witness21";
    j["p"] = pair.p;
    j["a"] = pair.a;
    j["b"] = pair.b;
    j["gamma"] = pair.gamma ? Json(pair.gamma->to_string()) : Json(nullptr);
    j["lambda"] = w.lambda;
    j["t"] = to_json(w.t);
    j["N"] = w.N;
    j["verified"] = w.verified;
    j["labels"] = constructions::to_string(w.labels);
    return j;
}

inline Json to_json(const constructions::TranslateCurveSpec& spec, const constructions::Witness22& w) {
    Json j;
    j["record"] = "witness22";
    j["p"] = spec.p();
    j["e"] = spec.e;
    Json b = Json::array();
    for (const auto& x : spec.b) b.push_back(to_json(x));
    j["b"] = b;
    j["d"] = w.d;
    j["s"] = to_json(w.s);
    j["u"] = w.u;
    j["orbit_size"] = w.orbit_size;
    j["minpoly"] = w.minpoly;
    j["verified"] = w.verified;
    j["labels"] = constructions::to_string(w.labels);
    return j;
}

}  // namespace isolab::io

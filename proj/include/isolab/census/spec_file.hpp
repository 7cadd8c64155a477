#pragma once

#include <istream>
#include <string>

#include "../io/records.hpp"
#include "variety.hpp"

namespace isolab::census {

inline constexpr const char* kCensusSpecSchema = "isolab.census/1";

struct CensusSpec {
    ff::TowerPtr tower;
    ParametricVariety V;
    ParametricVariety W;
};

namespace detail {

inline FieldElement coefficient_from_json(const ff::FieldTower& T, int e, const io::Json& j) {
    const FieldElement x = T.canonical(io::element_from_json(T, j));
    if (e % x.degree() != 0) throw Error(ErrorCode::MalformedData, "coefficient " + x.to_string() + " is not in F_q");
    return T.embed(x, e);
}

inline MultiPoly poly_from_json(const ff::FieldTower& T, int e, int nvars, const io::Json& terms) {
    MultiPoly f(T.ensure_level(e), nvars);
    if (!terms.is_array()) throw Error(ErrorCode::MalformedData, "polynomial must be a list of {c, e} terms");
    for (const auto& t : terms) {
        if (!t.is_object() || !t.contains("c")) throw Error(ErrorCode::MalformedData, "term needs a coefficient c");
        std::vector<int> ex = t.value("e", std::vector<int>(static_cast<std::size_t>(nvars), 0));
        if (static_cast<int>(ex.size()) != nvars)
            throw Error(ErrorCode::MalformedData, "term exponent vector must have " + std::to_string(nvars) + " entries");
        f.add_term(coefficient_from_json(T, e, t.at("c")), ex);
    }
    return f;
}

inline std::vector<FieldElement> elements_from_json(const ff::FieldTower& T, int e, const io::Json& j) {
    if (!j.is_array()) throw Error(ErrorCode::MalformedData, "expected a list of field elements");
    std::vector<FieldElement> out;
    for (const auto& x : j) out.push_back(coefficient_from_json(T, e, x));
    return out;
}

}  // namespace detail

inline ParametricVariety variety_from_json(const ff::TowerPtr& T, int e, const io::Json& j) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        ParametricVariety v;
        if (kind == "diagonal") {
            v = varieties::diagonal(T, e, j.at("n").get<int>());
        } else if (kind == "full") {
            v = varieties::full(T, e, j.at("n").get<int>());
        } else if (kind == "translate") {
            v = varieties::translate(T, e, detail::elements_from_json(*T, e, j.at("shifts")));
        } else if (kind == "monomial") {
            v = varieties::monomial(T, e, j.at("exponents").get<std::vector<u64>>());
        } else if (kind == "point") {
            v = varieties::point(T, e, detail::elements_from_json(*T, e, j.at("coords")));
        } else if (kind == "line") {
            v = varieties::line(T, e, j.at("axis").get<int>(), detail::coefficient_from_json(*T, e, j.at("value")));
        } else if (kind == "rational") {
            v = ParametricVariety{T, e, j.at("params").get<int>(), {}, Marker::General, "rational"};
            for (const auto& m : j.at("maps")) {
                MultiPoly num = detail::poly_from_json(*T, e, v.params, m.at("num"));
                MultiPoly den = m.contains("den") ? detail::poly_from_json(*T, e, v.params, m.at("den"))
                                                  : MultiPoly::constant(T->ensure_level(e).one(), v.params);
                v.maps.push_back({std::move(num), std::move(den)});
            }
        } else {
            throw Error(ErrorCode::MalformedData, "unknown variety kind '" + kind + "'");
        }
        if (j.contains("name")) v.name = j.at("name").get<std::string>();
        v.validate();
        return v;
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::MalformedData, ex.what());
    } catch (const Error& ex) {
        if (ex.code() == ErrorCode::InvalidArgument || ex.code() == ErrorCode::LevelMismatch)
            throw Error(ErrorCode::MalformedData, ex.what());
        throw;
    }
}

/// default_seed applies when the file has no "seed" field.
inline CensusSpec parse_census_spec(const io::Json& j, const Budgets& budgets = {}, u64 default_seed = 1) {
    try {
        if (!j.is_object() || j.value("schema", std::string()) != kCensusSpecSchema)
            throw Error(ErrorCode::MalformedData, std::string("spec file must declare schema ") + kCensusSpecSchema);
        const u64 p = j.at("p").get<u64>();
        const int e = j.value("e", 1);
        ff::TowerOptions opt;
        opt.seed = j.value("seed", default_seed);
        opt.max_degree = budgets.max_extension_degree;
        io::collect_moduli(j, opt.moduli);
        CensusSpec spec;
        spec.tower = ff::make_tower(p, {e}, opt);
        spec.V = variety_from_json(spec.tower, e, j.at("V"));
        spec.W = variety_from_json(spec.tower, e, j.at("W"));
        return spec;
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::MalformedData, ex.what());
    }
}

inline CensusSpec parse_census_spec(std::istream& in, const Budgets& budgets = {}, u64 default_seed = 1) {
    io::Json j;
    try {
        j = io::Json::parse(in);
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::MalformedData, ex.what());
    }
    return parse_census_spec(j, budgets, default_seed);
}

}  // namespace isolab::census

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "isolab/isolab.hpp"

using namespace isolab;
using ec::JInvariant;
using io::Json;

namespace {

constexpr int kFindings = 0;
constexpr int kUserError = 1;
constexpr int kExhausted = 2;
constexpr int kBudget = 3;

int exit_code_for(ErrorCode c) {
    switch (c) {
        case ErrorCode::BudgetExceeded:
        case ErrorCode::IncompleteFactorization:
        case ErrorCode::ExtensionTooLarge: return kBudget;
        default: return kUserError;
    }
}

struct RunConfig {
    u64 seed = 1;
    std::string data_dir = hecke::default_data_dir();
    unsigned workers = 1;
    std::string format = "json";
    std::string output;
    Budgets budgets;
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw Error(ErrorCode::InvalidArgument, "cannot open " + path + " for writing");
        }
    }
    std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, sep);) out.push_back(item);
    return out;
}

/// An integer, "cusp", or a JSON element object.
Json parse_value(const std::string& s) {
    if (s == "cusp") return Json("cusp");
    try {
        return Json::parse(s);
    } catch (const nlohmann::json::exception&) {
        throw Error(ErrorCode::MalformedData, "cannot parse field element '" + s + "'");
    }
}

/// Comma-separated integers, or a JSON array of elements.
Json parse_list(const std::string& s) {
    if (!s.empty() && s.front() == '[') return parse_value(s);
    Json arr = Json::array();
    for (const auto& item : split(s, ',')) arr.push_back(parse_value(item));
    return arr;
}

ff::TowerPtr tower_for(u64 p, int e, const Json& data, const RunConfig& cfg) {
    ff::TowerOptions opt;
    opt.seed = cfg.seed;
    opt.max_degree = cfg.budgets.max_extension_degree;
    io::collect_moduli(data, opt.moduli);
    return ff::make_tower(p, {e}, opt);
}

JInvariant j_from_json(const ff::FieldTower& T, const Json& j) {
    if (j.is_string() && j.get<std::string>() == "cusp") return JInvariant::cusp();
    return JInvariant(T.canonical(io::element_from_json(T, j)));
}

Json to_json(const JInvariant& j) { return j.is_cusp() ? Json("cusp") : io::to_json(j.value()); }

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed)
        if (cfg.format == f) return;
    throw Error(ErrorCode::InvalidArgument, "format '" + cfg.format + "' is not available for this command");
}

void print_log(const std::vector<std::string>& log) {
    for (const auto& line : log) std::cerr << line << "\n";
}

struct Thm21Args {
    u64 p = 0;
    std::vector<u64> a, b;
    int m_min = 1, m_max = 8;
    u64 lambda_max = 10'000;
    bool no_labels = false;
};

int cmd_thm21(const Thm21Args& args, const RunConfig& cfg) {
    require_format(cfg, {"json", "text"});
    const auto pair = constructions::MonomialCurvePair::make(args.p, args.a, args.b);
    constructions::Thm21Options opt;
    opt.m_min = args.m_min;
    opt.m_max = args.m_max;
    opt.lambda_max = args.lambda_max;
    opt.budgets = cfg.budgets;
    opt.seed = cfg.seed;
    opt.workers = cfg.workers;
    opt.check_labels = !args.no_labels;
    ec::LabelCache cache;
    opt.cache = &cache;
    const auto res = constructions::thm21_search(pair, opt);
    Output o(cfg.output);
    for (const auto& w : res.witnesses) {
        if (cfg.format == "json") {
            o.out() << io::to_json(pair, w).dump() << "\n";
        } else {
            o.out() << "lambda=" << w.lambda << " level=" << w.level() << " N=(";
            for (std::size_t i = 0; i < w.N.size(); ++i) o.out() << (i ? "," : "") << w.N[i];
            o.out() << ") verified=" << (w.verified ? "yes" : "no") << " labels=" << constructions::to_string(w.labels)
                    << " t=" << w.t.to_string() << "\n";
        }
    }
    if (cfg.format == "text") {
        o.out() << res.witnesses.size() << " witnesses from " << res.candidates.size() << " candidates ("
                << (res.used_gamma ? "gamma = " + pair.gamma->to_string() : std::string("primitive-root search"))
                << ")\n";
    }
    print_log(res.log);
    return res.witnesses.empty() ? kExhausted : kFindings;
}

struct Thm22Args {
    u64 p = 0;
    int e = 1;
    std::string b;
    std::vector<int> d_list{1};
    bool no_labels = false;
};

int cmd_thm22(const Thm22Args& args, const RunConfig& cfg) {
    require_format(cfg, {"json", "text"});
    const Json bj = parse_list(args.b);
    const auto T = tower_for(args.p, args.e, bj, cfg);
    std::vector<ff::FieldElement> b;
    for (const auto& x : bj) b.push_back(io::element_from_json(*T, x));
    const auto spec = constructions::TranslateCurveSpec::make(T, args.e, b);
    constructions::Thm22Options opt;
    opt.budgets = cfg.budgets;
    opt.workers = cfg.workers;
    opt.check_labels = !args.no_labels;
    ec::LabelCache cache;
    opt.cache = &cache;
    const auto res = constructions::thm22_search(spec, args.d_list, opt);
    Output o(cfg.output);
    if (!res.hypothesis) {
        print_log(res.log);
        return kExhausted;
    }
    for (const auto& w : res.witnesses) {
        if (cfg.format == "json") {
            o.out() << io::to_json(spec, w).dump() << "\n";
        } else {
            o.out() << "d=" << w.d << " orbit=" << w.orbit_size << " verified=" << (w.verified ? "yes" : "no")
                    << " labels=" << constructions::to_string(w.labels) << " s=" << w.s.to_string() << "\n";
        }
    }
    if (cfg.format == "text")
        for (const auto& [d, count] : res.solution_counts)
            o.out() << "d=" << d << ": " << count << " solutions\n";
    print_log(res.log);
    return res.witnesses.empty() ? kExhausted : kFindings;
}

struct IsotestArgs {
    u64 p = 0;
    std::string j1, j2;
    bool path = false;
};

int cmd_isotest(const IsotestArgs& args, const RunConfig& cfg) {
    require_format(cfg, {"json", "text"});
    const Json v1 = parse_value(args.j1), v2 = parse_value(args.j2);
    const auto T = tower_for(args.p, 1, Json::array({v1, v2}), cfg);
    const JInvariant j1 = j_from_json(*T, v1), j2 = j_from_json(*T, v2);
    ec::LabelCache cache;
    auto label = [&](const JInvariant& j) {
        return j.is_cusp() ? std::string("cusp") : ec::isogeny_class_label(j, cfg.budgets, &cache).to_string();
    };
    const std::string l1 = label(j1), l2 = label(j2);
    const bool iso = l1 == l2;
    Json j;
    j["record"] = "isotest";
    j["p"] = args.p;
    j["j1"] = to_json(j1);
    j["j2"] = to_json(j2);
    j["labels"] = {l1, l2};
    j["isogenous"] = iso;
    if (args.path && iso && !j1.is_cusp()) {
        std::vector<int> primes;
        for (int l : {2, 3, 5, 7, 11, 13})
            if (static_cast<u64>(l) != args.p) primes.push_back(l);
        const auto path = hecke::isogeny_path_search(j1, j2, primes, cfg.budgets.path_depth, cfg.data_dir);
        if (path) {
            Json edges = Json::array();
            for (const auto& e : *path)
                edges.push_back({{"kind", e.to_string()}, {"source", to_json(e.source)}, {"target", to_json(e.target)}});
            j["path"] = edges;
        } else {
            j["path"] = nullptr;
        }
    }
    Output o(cfg.output);
    if (cfg.format == "json") {
        o.out() << j.dump() << "\n";
    } else {
        o.out() << (iso ? "isogenous" : "not isogenous") << " (" << l1 << " vs " << l2 << ")\n";
        if (j.contains("path")) {
            if (j["path"].is_null()) {
                o.out() << "no path within depth " << cfg.budgets.path_depth << "\n";
            } else {
                for (const auto& e : j["path"]) o.out() << "  " << e["kind"].get<std::string>() << "\n";
            }
        }
    }
    return kFindings;
}

struct CensusArgs {
    std::string spec_file;
    int m_min = 1, m_max = 4;
};

int cmd_census(const CensusArgs& args, const RunConfig& cfg) {
    require_format(cfg, {"json", "csv", "text"});
    std::ifstream in(args.spec_file);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + args.spec_file);
    const auto spec = census::parse_census_spec(in, cfg.budgets, cfg.seed);
    ec::LabelCache cache;
    const auto rep = census::census(spec.V, spec.W, args.m_max, {args.m_min, cfg.budgets, &cache});
    Output o(cfg.output);
    if (cfg.format == "json") {
        o.out() << census::to_json(rep).dump(2) << "\n";
    } else {
        o.out() << census::to_csv(rep);
    }
    return kFindings;
}

struct HeckeArgs {
    u64 p = 0;
    int N = 2;
    std::string j;
    bool neighbors = false;
    std::string eval;
};

int cmd_hecke(const HeckeArgs& args, const RunConfig& cfg) {
    require_format(cfg, {"json", "text"});
    if (args.neighbors == !args.eval.empty())
        throw Error(ErrorCode::InvalidArgument, "give exactly one of --neighbors and --eval");
    const Json vj = parse_value(args.j);
    const Json vy = args.eval.empty() ? Json() : parse_value(args.eval);
    const auto T = tower_for(args.p, 1, Json::array({vj, vy}), cfg);
    const JInvariant j = j_from_json(*T, vj);
    const auto phi = hecke::load_phi(args.N, cfg.data_dir);
    Json out;
    std::string value_text;
    out["record"] = args.neighbors ? "hecke_neighbors" : "hecke_eval";
    out["N"] = args.N;
    out["j"] = to_json(j);
    if (args.neighbors) {
        const auto nb = hecke::hecke_neighbors(j, *phi);
        out["count"] = nb.size();
        Json arr = Json::array();
        for (const auto& x : nb) arr.push_back(to_json(x));
        out["neighbors"] = arr;
    } else {
        const JInvariant y = j_from_json(*T, vy);
        if (j.is_cusp() || y.is_cusp()) throw Error(ErrorCode::CuspInput, "Phi_N is evaluated at finite points");
        const int K = std::lcm(j.value().degree(), y.value().degree());
        const auto value = phi->evaluate(T->embed(j.value(), K), T->embed(y.value(), K));
        out["y"] = to_json(y);
        out["value"] = io::to_json(T->canonical(value));
        value_text = T->canonical(value).to_string();
        out["zero"] = value.is_zero();
    }
    Output o(cfg.output);
    if (cfg.format == "json") {
        o.out() << out.dump() << "\n";
    } else if (args.neighbors) {
        o.out() << out["count"].get<std::size_t>() << " neighbors of " << j.to_string() << " under Phi_" << args.N << "\n";
        for (const auto& x : out["neighbors"]) o.out() << "  " << x.dump() << "\n";
    } else {
        o.out() << "Phi_" << args.N << "(j, y) = " << value_text << "\n";
    }
    return kFindings;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Isogenous-point searches and censuses on products of modular curves over finite fields"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--seed", cfg.seed, "seed for moduli and randomized root finding");
    app.add_option("--data-dir", cfg.data_dir, "directory holding phi<N>.txt (env ISOLAB_DATA_DIR)");
    app.add_option("--workers", cfg.workers, "worker threads for witness searches")->check(CLI::PositiveNumber);
    app.add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("-o,--output", cfg.output, "write results here instead of stdout");
    auto& b = cfg.budgets;
    app.add_option("--trial-division-bound", b.trial_division_bound)->check(CLI::PositiveNumber);
    app.add_option("--rho-iterations", b.rho_iterations)->check(CLI::PositiveNumber);
    app.add_option("--max-degree", b.max_extension_degree, "largest extension degree built")->check(CLI::PositiveNumber);
    app.add_option("--naive-count-limit", b.naive_count_limit)->check(CLI::PositiveNumber);
    app.add_option("--enumeration-limit", b.enumeration_limit)->check(CLI::PositiveNumber);
    app.add_option("--path-depth", b.path_depth)->check(CLI::PositiveNumber);

    Thm21Args t21;
    auto* s21 = app.add_subcommand("thm21", "Frobenius-twisted torsion witnesses on (t^a_i) and (s^b_i)");
    s21->add_option("--p", t21.p)->required();
    s21->add_option("--a", t21.a)->required()->delimiter(',');
    s21->add_option("--b", t21.b)->required()->delimiter(',');
    s21->add_option("--m-min", t21.m_min);
    s21->add_option("--m-max", t21.m_max);
    s21->add_option("--lambda-max", t21.lambda_max);
    s21->add_flag("--no-labels", t21.no_labels, "skip the isogeny-class label cross-check");

    Thm22Args t22;
    auto* s22 = app.add_subcommand("thm22", "Artin-Schreier witnesses on (t + b_i) against the diagonal");
    s22->add_option("--p", t22.p)->required();
    s22->add_option("--e", t22.e, "q = p^e");
    s22->add_option("--b", t22.b, "b_0,...,b_n as integers or a JSON array of elements")->required();
    s22->add_option("--d-list", t22.d_list)->delimiter(',');
    s22->add_flag("--no-labels", t22.no_labels);

    IsotestArgs iso;
    auto* siso = app.add_subcommand("isotest", "geometric isogeny test of two j-invariants");
    siso->add_option("--p", iso.p)->required();
    siso->add_option("--j1", iso.j1, "integer, cusp, or {level, coeffs, modulus}")->required();
    siso->add_option("--j2", iso.j2)->required();
    siso->add_flag("--path", iso.path, "also search for an explicit isogeny path");

    CensusArgs cen;
    auto* scen = app.add_subcommand("census", "count isogenous point pairs between two parametric varieties");
    scen->add_option("--spec-file", cen.spec_file)->required();
    scen->add_option("--m-min", cen.m_min);
    scen->add_option("--m-max", cen.m_max);

    HeckeArgs hk;
    auto* shk = app.add_subcommand("hecke", "modular polynomial neighbors and evaluation");
    shk->add_option("--p", hk.p)->required();
    shk->add_option("--N", hk.N)->required();
    shk->add_option("--j", hk.j)->required();
    shk->add_flag("--neighbors", hk.neighbors);
    shk->add_option("--eval", hk.eval, "y at which Phi_N(j, y) is evaluated");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUserError;
    }

    try {
        if (*s21) return cmd_thm21(t21, cfg);
        if (*s22) return cmd_thm22(t22, cfg);
        if (*siso) return cmd_isotest(iso, cfg);
        if (*scen) return cmd_census(cen, cfg);
        if (*shk) return cmd_hecke(hk, cfg);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kUserError;
    }
    return kUserError;
}

#pragma once

#include <set>
#include <string>
#include <vector>

#include "../ff/artin_schreier.hpp"
#include "../ff/minpoly.hpp"
#include "../ff/tower.hpp"
#include "../parallel.hpp"
#include "common.hpp"

namespace isolab::constructions {

/// C = (t + b_0, ..., t + b_n) over F_q, q = p^e, with the b_i stored at level e.
struct TranslateCurveSpec {
    ff::TowerPtr tower;
    int e = 1;
    std::vector<ff::FieldElement> b;

    static TranslateCurveSpec make(ff::TowerPtr tower, int e, const std::vector<ff::FieldElement>& b) {
        if (e < 1) throw Error(ErrorCode::InvalidArgument, "e must be positive");
        if (b.empty()) throw Error(ErrorCode::InvalidArgument, "need at least b_0");
        tower->ensure_level(e);
        TranslateCurveSpec spec{tower, e, {}};
        for (const auto& x : b) {
            const ff::FieldElement c = tower->canonical(x);
            if (e % c.degree() != 0)
                throw Error(ErrorCode::LevelMismatch, c.to_string() + " does not lie in F_q");
            spec.b.push_back(tower->embed(c, e));
        }
        for (std::size_t i = 0; i < spec.b.size(); ++i)
            for (std::size_t j = i + 1; j < spec.b.size(); ++j)
                if (spec.b[i] == spec.b[j])
                    throw Error(ErrorCode::InvalidArgument,
                                "b_" + std::to_string(i) + " and b_" + std::to_string(j) + " coincide");
        return spec;
    }

    u64 p() const { return tower->characteristic(); }
    std::size_t n() const { return b.size() - 1; }
    ff::FieldElement shift(std::size_t i) const { return b[i] - b[0]; }
};

/// Every ratio (b_i - b_0)/(b_j - b_0), i, j >= 1, lies in F_p.
inline bool thm22_check_hypothesis(const TranslateCurveSpec& spec) {
    for (std::size_t i = 1; i <= spec.n(); ++i)
        for (std::size_t j = 1; j <= spec.n(); ++j) {
            const ff::FieldElement r = spec.shift(i) / spec.shift(j);
            if (r.frobenius(1) != r) return false;
        }
    return true;
}

/// s in F_{q^{pd}} with s^{q^{u_i}} = s + (b_i - b_0), u_i = d u_i'.
struct Witness22 {
    int d = 0;
    ff::FieldElement s;
    std::vector<u64> u;
    bool verified = false;
    int orbit_size = 0;
    LabelCheck labels = LabelCheck::Skipped;
    std::vector<u64> minpoly;
};

/// Size of the orbit of s under x -> x^{p^step}.
inline int frobenius_orbit_size(const ff::FieldElement& s, u64 step) {
    ff::FieldElement x = s.frobenius(step);
    int size = 1;
    while (x != s) {
        x = x.frobenius(step);
        ++size;
    }
    return size;
}

inline Verification verify_witness22(const TranslateCurveSpec& spec, const Witness22& w, const VerifyOptions& opt = {}) {
    Verification r;
    if (!w.s.valid() || w.s.level().tower() != spec.tower.get()) {
        r.fail("s does not belong to the tower of the spec");
        return r;
    }
    if (w.d < 1 || w.u.size() != spec.n()) {
        r.fail("malformed witness");
        return r;
    }
    const ff::FieldTower& T = *spec.tower;
    const int K = w.s.degree();
    if (K % spec.e != 0) {
        r.fail("s does not lie in an extension of F_q");
        return r;
    }
    const u64 e = static_cast<u64>(spec.e);
    for (std::size_t i = 1; i <= spec.n(); ++i) {
        const ff::FieldElement rhs = w.s + T.embed(spec.shift(i), K);
        if (w.s.frobenius(e * w.u[i - 1]) != rhs)
            r.fail("s^(q^u_" + std::to_string(i) + ") != s + b_" + std::to_string(i) + " - b_0");
    }
    if (w.s.frobenius(e * static_cast<u64>(w.d)) == w.s) r.fail("s lies in F_{q^d}");
    const ff::FieldElement x = w.s + T.embed(spec.b[0], K);
    std::vector<ff::FieldElement> c, diag;
    for (std::size_t i = 1; i <= spec.n(); ++i) {
        const ff::FieldElement ci = w.s + T.embed(spec.b[i], K);
        if (x.frobenius(e * w.u[i - 1]) != ci)
            r.fail("coordinate " + std::to_string(i) + " is not a q-power Frobenius image of the diagonal value");
        c.push_back(ci);
        diag.push_back(x);
    }
    if (!r.ok) return r;
    r.labels = compare_labels(c, diag, opt);
    if (r.labels == LabelCheck::Disagree) r.fail("isogeny class labels differ between C and the diagonal");
    return r;
}

struct Thm22Options {
    Budgets budgets;
    unsigned workers = 1;
    bool check_labels = true;
    ec::LabelCache* cache = nullptr;
};

struct Thm22Result {
    bool hypothesis = true;
    std::vector<Witness22> witnesses;
    std::vector<std::string> log;
    std::map<int, BigInt> solution_counts;
};

/// Solves s^{q^d} = s + (b_1 - b_0) for each d and keeps one verified witness per
/// Galois orbit of solutions.
inline Thm22Result thm22_search(const TranslateCurveSpec& spec, const std::vector<int>& d_list,
                                const Thm22Options& opt = {}) {
    Thm22Result res;
    if (!thm22_check_hypothesis(spec)) {
        res.hypothesis = false;
        res.log.push_back("hypothesis fails: some (b_i - b_0)/(b_j - b_0) is not in F_p");
        return res;
    }
    if (spec.n() == 0) return res;
    const ff::FieldTower& T = *spec.tower;
    const ff::FieldElement lambda = spec.shift(1);
    std::vector<u64> uprime;
    for (std::size_t i = 1; i <= spec.n(); ++i)
        uprime.push_back(T.descend(T.canonical(spec.shift(i) / lambda), 1)->coeffs()[0]);

    const VerifyOptions vopt{opt.check_labels, opt.budgets, opt.cache};
    for (int d : d_list) {
        if (d < 1) throw Error(ErrorCode::InvalidArgument, "d must be positive");
        const int E = spec.e * d;
        const std::vector<ff::FieldElement> sols = ff::solve_affine_frobenius(T, E, lambda, opt.budgets);
        res.solution_counts[d] = sols.size();

        std::vector<ff::FieldElement> reps;
        std::set<ff::FieldElement> seen;
        for (const auto& s : sols) {
            if (seen.count(s)) continue;
            reps.push_back(s);
            ff::FieldElement c = s;
            for (int i = 0; i < s.degree(); ++i, c = c.frobenius(1)) seen.insert(c);
        }

        std::vector<Witness22> found(reps.size());
        std::vector<std::string> notes(reps.size());
        parallel_for(reps.size(), opt.workers, [&](std::size_t idx) {
            Witness22 w;
            w.d = d;
            w.s = reps[idx];
            for (u64 up : uprime) w.u.push_back(static_cast<u64>(d) * up);
            w.orbit_size = frobenius_orbit_size(w.s, static_cast<u64>(E));
            w.minpoly = ff::minimal_polynomial(w.s);
            const Verification v = verify_witness22(spec, w, vopt);
            w.verified = v.ok;
            w.labels = v.labels;
            if (!v.ok) notes[idx] = "d=" + std::to_string(d) + ": verification failed: " + v.failures.front();
            found[idx] = std::move(w);
        });
        for (std::size_t i = 0; i < reps.size(); ++i) {
            if (!notes[i].empty()) res.log.push_back(notes[i]);
            if (found[i].verified) res.witnesses.push_back(std::move(found[i]));
        }
    }
    return res;
}

}  // namespace isolab::constructions

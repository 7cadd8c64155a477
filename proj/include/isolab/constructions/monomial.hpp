#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "../ff/factor.hpp"
#include "../ff/residues.hpp"
#include "../ff/roots_of_unity.hpp"
#include "../ff/tower.hpp"
#include "../parallel.hpp"
#include "common.hpp"

namespace isolab::constructions {

/// gamma = u/v in lowest terms with b_i / a_i = gamma^{d_i}.
struct Gamma {
    BigInt u = 1;
    BigInt v = 1;
    std::vector<i64> d;

    std::string to_string() const { return v == 1 ? u.str() : u.str() + "/" + v.str(); }
};

namespace detail {

inline void add_exponents(std::map<BigInt, i64>& acc, u64 n, i64 sign) {
    const ff::Factorization f = ff::factor(n);
    for (const auto& [q, e] : f.factors) acc[q] += sign * static_cast<i64>(e);
    if (!f.complete()) acc[f.cofactor] += sign;
}

}  // namespace detail

/// Common base of the ratios b_i / a_i, if they all lie in one cyclic subgroup of Q^*.
/// The generator is primitive (smallest |u| + |v|) and oriented so the first nonzero d_i is positive.
inline std::optional<Gamma> detect_gamma(const std::vector<u64>& a, const std::vector<u64>& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "a and b differ in length");
    std::vector<std::map<BigInt, i64>> vecs(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        detail::add_exponents(vecs[i], b[i], 1);
        detail::add_exponents(vecs[i], a[i], -1);
        std::erase_if(vecs[i], [](const auto& kv) { return kv.second == 0; });
    }

    Gamma g;
    g.d.assign(a.size(), 0);
    const auto pivot = std::find_if(vecs.begin(), vecs.end(), [](const auto& v) { return !v.empty(); });
    if (pivot == vecs.end()) return g;

    i64 content = 0;
    for (const auto& [q, e] : *pivot) content = std::gcd(content, e);
    std::map<BigInt, i64> base;
    for (const auto& [q, e] : *pivot) base[q] = e / content;

    for (std::size_t i = 0; i < vecs.size(); ++i) {
        if (vecs[i].empty()) continue;
        const auto& [q0, e0] = *base.begin();
        auto it = vecs[i].find(q0);
        if (it == vecs[i].end() || it->second % e0 != 0) return std::nullopt;
        const i64 c = it->second / e0;
        if (vecs[i].size() != base.size()) return std::nullopt;
        for (const auto& [q, e] : base) {
            auto jt = vecs[i].find(q);
            if (jt == vecs[i].end() || jt->second != c * e) return std::nullopt;
        }
        g.d[i] = c;
    }
    if (g.d[static_cast<std::size_t>(pivot - vecs.begin())] < 0) {
        for (auto& x : g.d) x = -x;
        for (auto& [q, e] : base) e = -e;
    }
    for (const auto& [q, e] : base) {
        if (e > 0) g.u *= boost::multiprecision::pow(q, static_cast<unsigned>(e));
        if (e < 0) g.v *= boost::multiprecision::pow(q, static_cast<unsigned>(-e));
    }
    return g;
}

/// V = (t^{a_1}, ..., t^{a_n}) and W = (s^{b_1}, ..., s^{b_n}) over F_p.
struct MonomialCurvePair {
    u64 p = 0;
    std::vector<u64> a;
    std::vector<u64> b;
    std::optional<Gamma> gamma;

    static MonomialCurvePair make(u64 p, std::vector<u64> a, std::vector<u64> b) {
        if (!ff::is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
        if (p < 5) throw Error(ErrorCode::CharTooSmall, "characteristic " + std::to_string(p) + " is excluded");
        if (a.empty() || a.size() != b.size())
            throw Error(ErrorCode::InvalidArgument, "a and b must be nonempty and of equal length");
        for (const auto* v : {&a, &b})
            for (u64 x : *v)
                if (x < 2) throw Error(ErrorCode::InvalidArgument, "exponents must be at least 2");
        MonomialCurvePair pair{p, std::move(a), std::move(b), std::nullopt};
        pair.gamma = detect_gamma(pair.a, pair.b);
        return pair;
    }

    std::size_t n() const { return a.size(); }
};

/// Least N >= 0 with a * p^N = b (mod lambda). Non-units are handled by dividing out gcd(a, lambda).
inline std::optional<u64> frobenius_exponent(u64 a, u64 b, u64 p, u64 lambda) {
    if (lambda == 1) return 0;
    a %= lambda;
    b %= lambda;
    const u64 g = std::gcd(a, lambda);
    if (std::gcd(b, lambda) != g) return std::nullopt;
    const u64 l = lambda / g;
    if (l == 1) return 0;
    const u64 target = ff::mul_mod((b / g) % l, *ff::inverse_mod((a / g) % l, l), l);
    return ff::subgroup_dlog(target, p % l, l);
}

/// Divisors lambda > 2 of |v p^m - u| for m in [m_min, m_max], coprime to p u v and at most lambda_max.
inline std::vector<u64> thm21_lambda_candidates(const MonomialCurvePair& pair, int m_min, int m_max, u64 lambda_max,
                                                const ff::FactorEffort& effort = {},
                                                std::vector<std::string>* log = nullptr) {
    if (!pair.gamma) throw Error(ErrorCode::InvalidArgument, "no common base gamma for these exponents");
    const BigInt& u = pair.gamma->u;
    const BigInt& v = pair.gamma->v;
    const BigInt puv = BigInt(pair.p) * u * v;
    std::vector<u64> out;
    for (int m = std::max(m_min, 1); m <= m_max; ++m) {
        BigInt n = v * big_pow(pair.p, static_cast<u64>(m)) - u;
        if (n < 0) n = -n;
        if (n == 0) continue;
        const ff::Factorization f = ff::factor(n, effort);
        if (!f.complete() && log)
            log->push_back("m=" + std::to_string(m) + ": incomplete factorization " + f.to_string());
        for (const BigInt& dv : f.divisors()) {
            if (dv <= 2 || dv > lambda_max) continue;
            if (boost::multiprecision::gcd(dv, puv) != 1) continue;
            out.push_back(static_cast<u64>(dv));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Primes 2 < lambda <= lambda_max, lambda != p, with p a primitive root mod lambda.
inline std::vector<u64> primitive_prime_candidates(u64 p, u64 lambda_max) {
    std::vector<u64> out;
    for (u64 l = 3; l <= lambda_max; l += 2) {
        if (l == p || !ff::is_prime(l)) continue;
        if (ff::element_order(p % l, l) == l - 1) out.push_back(l);
    }
    return out;
}

/// t of exact order lambda with t^{a_i p^{N_i}} = t^{b_i}.
struct Witness21 {
    ff::TowerPtr tower;
    u64 lambda = 0;
    ff::FieldElement t;
    std::vector<u64> N;
    bool verified = false;
    LabelCheck labels = LabelCheck::Skipped;

    int level() const { return t.degree(); }
    ff::FieldElement v_coordinate(u64 a) const { return t.pow(a); }
};

/// Recomputes every claim of w by field exponentiation alone.
inline Verification verify_witness21(const MonomialCurvePair& pair, const Witness21& w, const VerifyOptions& opt = {}) {
    Verification r;
    if (!w.t.valid() || w.t.characteristic() != pair.p) {
        r.fail("t is not an element of a field of characteristic " + std::to_string(pair.p));
        return r;
    }
    if (w.N.size() != pair.n()) {
        r.fail("exponent vector has length " + std::to_string(w.N.size()));
        return r;
    }
    if (w.lambda < 1 || w.lambda % pair.p == 0) {
        r.fail("lambda must be positive and prime to p");
        return r;
    }
    const ff::Factorization lf = ff::factor(w.lambda, ff::FactorEffort::from(opt.budgets));
    if (!w.t.pow(w.lambda).is_one()) r.fail("t^lambda != 1");
    for (const auto& [l, e] : lf.factors)
        if (w.t.pow(w.lambda / static_cast<u64>(l)).is_one())
            r.fail("t has order dividing lambda/" + l.str());
    for (std::size_t i = 0; i < pair.n(); ++i) {
        const BigInt lhs = BigInt(pair.a[i]) * big_pow(pair.p, w.N[i]);
        if (w.t.pow(lhs) != w.t.pow(BigInt(pair.b[i])))
            r.fail("t^(a_" + std::to_string(i + 1) + " p^N_" + std::to_string(i + 1) + ") != t^b_" +
                   std::to_string(i + 1));
    }
    if (!r.ok) return r;
    std::vector<ff::FieldElement> v, ww;
    for (std::size_t i = 0; i < pair.n(); ++i) {
        v.push_back(w.t.pow(pair.a[i]));
        ww.push_back(w.t.pow(pair.b[i]));
    }
    r.labels = compare_labels(v, ww, opt);
    if (r.labels == LabelCheck::Disagree) r.fail("isogeny class labels differ between V and W points");
    return r;
}

struct Thm21Options {
    int m_min = 1;
    int m_max = 8;
    u64 lambda_max = 10'000;
    Budgets budgets;
    u64 seed = 1;
    unsigned workers = 1;
    bool check_labels = true;
    ec::LabelCache* cache = nullptr;
};

struct Thm21Result {
    std::vector<Witness21> witnesses;
    std::vector<std::string> log;
    std::vector<u64> candidates;
    bool used_gamma = false;
};

inline Thm21Result thm21_search(const MonomialCurvePair& pair, const Thm21Options& opt = {}) {
    Thm21Result res;
    const ff::FactorEffort effort = ff::FactorEffort::from(opt.budgets);
    ff::TowerOptions topt;
    topt.seed = opt.seed;
    topt.max_degree = opt.budgets.max_extension_degree;
    const ff::TowerPtr tower = ff::make_tower(pair.p, {1}, topt);

    res.used_gamma = pair.gamma.has_value();
    res.candidates = res.used_gamma ? thm21_lambda_candidates(pair, opt.m_min, opt.m_max, opt.lambda_max, effort, &res.log)
                                    : primitive_prime_candidates(pair.p, opt.lambda_max);

    struct Slot {
        std::optional<Witness21> witness;
        std::string note;
    };
    std::vector<Slot> slots(res.candidates.size());
    const VerifyOptions vopt{opt.check_labels, opt.budgets, opt.cache};
    parallel_for(res.candidates.size(), opt.workers, [&](std::size_t idx) {
        const u64 lambda = res.candidates[idx];
        const std::string tag = "lambda=" + std::to_string(lambda) + ": ";
        const u64 k = ff::element_order(pair.p % lambda, lambda, effort);
        if (k > static_cast<u64>(tower->max_degree())) {
            slots[idx].note = tag + "ord_lambda(p) = " + std::to_string(k) + " exceeds maximum degree " +
                              std::to_string(tower->max_degree());
            return;
        }
        Witness21 w;
        w.tower = tower;
        w.lambda = lambda;
        for (std::size_t i = 0; i < pair.n(); ++i) {
            const auto N = frobenius_exponent(pair.a[i], pair.b[i], pair.p, lambda);
            if (!N) {
                slots[idx].note = tag + "a_" + std::to_string(i + 1) + " p^N = b_" + std::to_string(i + 1) +
                                  " has no solution";
                return;
            }
            w.N.push_back(*N);
        }
        w.t = ff::nth_root_of_unity(*tower, lambda, effort);
        const Verification v = verify_witness21(pair, w, vopt);
        w.verified = v.ok;
        w.labels = v.labels;
        if (!v.ok) {
            slots[idx].note = tag + "verification failed: " + v.failures.front();
            return;
        }
        slots[idx].witness = std::move(w);
    });
    for (auto& s : slots) {
        if (!s.note.empty()) res.log.push_back(std::move(s.note));
        if (s.witness) res.witnesses.push_back(std::move(*s.witness));
    }
    return res;
}

}  // namespace isolab::constructions

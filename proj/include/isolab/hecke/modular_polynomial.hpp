#pragma once

#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "../bigint.hpp"
#include "../error.hpp"
#include "../ff/factor.hpp"
#include "../ff/field.hpp"

#ifndef ISOLAB_DEFAULT_DATA_DIR
#define ISOLAB_DEFAULT_DATA_DIR "data"
#endif

namespace isolab::hecke {

using ff::FieldElement;

/// psi(N) = N prod_{l | N} (1 + 1/l), the degree of Phi_N in each variable.
inline int psi(int N) {
    if (N < 1) throw Error(ErrorCode::InvalidArgument, "level must be positive");
    i64 out = N;
    for (const auto& q : ff::factor(static_cast<u64>(N)).primes()) {
        const i64 l = static_cast<i64>(q);
        out = out / l * (l + 1);
    }
    return static_cast<int>(out);
}

inline bool is_shipped_level(int N) {
    for (int s : {1, 2, 3, 5, 7, 11, 13})
        if (s == N) return true;
    return false;
}

/// Directory holding phi<N>.txt: ISOLAB_DATA_DIR if set, otherwise the build-time default.
inline std::string default_data_dir() {
    if (const char* env = std::getenv("ISOLAB_DATA_DIR"); env && *env) return env;
    return ISOLAB_DEFAULT_DATA_DIR;
}

/// Phi_N(X, Y) with integer coefficients; `orbits` keeps the file's (i >= j) monomials.
class ModularPolynomial {
public:
    ModularPolynomial(int N, std::vector<std::tuple<int, int, BigInt>> orbits, bool symmetric)
        : N_(N), orbits_(std::move(orbits)) {
        for (const auto& [i, j, c] : orbits_) {
            degree_ = std::max(degree_, i);
            coeff_[{i, j}] = c;
            if (i != j) coeff_[{j, i}] = symmetric ? c : BigInt(-c);
        }
    }

    int level() const { return N_; }
    int degree() const { return degree_; }
    const std::vector<std::tuple<int, int, BigInt>>& orbits() const { return orbits_; }
    std::size_t monomial_count() const { return coeff_.size(); }

    BigInt coefficient(int i, int j) const {
        auto it = coeff_.find({i, j});
        return it == coeff_.end() ? BigInt(0) : it->second;
    }

    bool is_symmetric() const {
        for (const auto& [ij, c] : coeff_)
            if (coefficient(ij.second, ij.first) != c) return false;
        return true;
    }

    /// Coefficients reduced mod p as a dense (degree+1) x (degree+1) table, row i = X^i.
    const std::vector<std::vector<u64>>& reduced(u64 p) const {
        std::lock_guard lock(mu_);
        auto it = reduced_.find(p);
        if (it != reduced_.end()) return it->second;
        std::vector<std::vector<u64>> t(degree_ + 1, std::vector<u64>(degree_ + 1, 0));
        for (const auto& [ij, c] : coeff_) {
            BigInt r = c % p;
            if (r < 0) r += p;
            t[ij.first][ij.second] = static_cast<u64>(r);
        }
        return reduced_.emplace(p, std::move(t)).first->second;
    }

    /// Coefficients (low -> high in Y) of the univariate polynomial Phi_N(x, Y).
    std::vector<FieldElement> specialize_x(const FieldElement& x) const {
        const auto& L = x.level();
        const auto& t = reduced(L.characteristic());
        std::vector<FieldElement> out(degree_ + 1, L.zero());
        for (int j = 0; j <= degree_; ++j) {
            FieldElement acc = L.zero();
            for (int i = degree_; i >= 0; --i) acc = acc * x + const_of(L, t[i][j]);
            out[j] = acc;
        }
        return out;
    }

    /// Phi_N(x, y) by nested Horner evaluation.
    FieldElement evaluate(const FieldElement& x, const FieldElement& y) const {
        if (x.level_ptr() != y.level_ptr())
            throw Error(ErrorCode::LevelMismatch, "phi_eval needs both arguments at one level");
        const auto coeffs = specialize_x(x);
        FieldElement acc = y.level().zero();
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * y + *it;
        return acc;
    }

private:
    static FieldElement const_of(const ff::Level& L, u64 c) {
        ff::Coeffs v(L.degree(), 0);
        v[0] = c;
        return FieldElement(&L, std::move(v));
    }

    int N_;
    int degree_ = 0;
    std::vector<std::tuple<int, int, BigInt>> orbits_;
    std::map<std::pair<int, int>, BigInt> coeff_;
    mutable std::mutex mu_;
    mutable std::map<u64, std::vector<std::vector<u64>>> reduced_;
};

/// Parses the "i j coeff" format and checks symmetry conventions and degree psi(N).
inline std::shared_ptr<const ModularPolynomial> parse_phi(int N, std::istream& in) {
    std::vector<std::tuple<int, int, BigInt>> rows;
    std::map<std::pair<int, int>, bool> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::string si, sj, sc, extra;
        if (!(ls >> si >> sj >> sc) || (ls >> extra))
            throw Error(ErrorCode::MalformedData, "line " + std::to_string(lineno) + ": expected 'i j coeff'");
        int i = 0, j = 0;
        BigInt c;
        try {
            std::size_t pi = 0, pj = 0;
            i = std::stoi(si, &pi);
            j = std::stoi(sj, &pj);
            if (pi != si.size() || pj != sj.size()) throw std::invalid_argument("exponent");
            const std::size_t digits = sc[0] == '-' || sc[0] == '+' ? 1 : 0;
            if (sc.size() == digits || sc.find_first_not_of("0123456789", digits) != std::string::npos)
                throw std::invalid_argument("coefficient");
            c = BigInt(sc[0] == '+' ? sc.substr(1) : sc);
        } catch (const std::exception&) {
            throw Error(ErrorCode::MalformedData, "line " + std::to_string(lineno) + ": bad number");
        }
        if (i < j || j < 0)
            throw Error(ErrorCode::MalformedData, "line " + std::to_string(lineno) + ": need i >= j >= 0");
        if (seen[{i, j}]) throw Error(ErrorCode::MalformedData, "line " + std::to_string(lineno) + ": duplicate monomial");
        seen[{i, j}] = true;
        if (c != 0) rows.emplace_back(i, j, c);
    }
    auto phi = std::make_shared<ModularPolynomial>(N, std::move(rows), true);
    const int expected = psi(N);
    if (phi->degree() != expected)
        throw Error(ErrorCode::MalformedData, "Phi_" + std::to_string(N) + " has degree " +
                                                  std::to_string(phi->degree()) + ", expected " +
                                                  std::to_string(expected));
    if (phi->coefficient(expected, 0) != 1)
        throw Error(ErrorCode::MalformedData, "Phi_" + std::to_string(N) + " is not monic in X");
    if (!phi->is_symmetric()) throw Error(ErrorCode::MalformedData, "Phi_" + std::to_string(N) + " is not symmetric");
    return phi;
}

/// Phi_1 = X - Y.
inline std::shared_ptr<const ModularPolynomial> phi_one() {
    return std::make_shared<ModularPolynomial>(1, std::vector<std::tuple<int, int, BigInt>>{{1, 0, BigInt(1)}}, false);
}

/// Loads phi<N>.txt once per (directory, N).
inline std::shared_ptr<const ModularPolynomial> load_phi(int N, const std::string& data_dir = default_data_dir()) {
    if (!is_shipped_level(N)) throw Error(ErrorCode::UnknownLevel, "no modular polynomial shipped for N = " + std::to_string(N));
    if (N == 1) {
        static const auto one = phi_one();
        return one;
    }
    static std::mutex mu;
    static std::map<std::pair<std::string, int>, std::shared_ptr<const ModularPolynomial>> cache;
    std::lock_guard lock(mu);
    if (auto it = cache.find({data_dir, N}); it != cache.end()) return it->second;
    const std::string path = data_dir + "/phi" + std::to_string(N) + ".txt";
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::MalformedData, "cannot open " + path);
    auto phi = parse_phi(N, in);
    cache.emplace(std::make_pair(data_dir, N), phi);
    return phi;
}

inline FieldElement phi_eval(int N, const FieldElement& x, const FieldElement& y,
                             const std::string& data_dir = default_data_dir()) {
    return load_phi(N, data_dir)->evaluate(x, y);
}

}  // namespace isolab::hecke

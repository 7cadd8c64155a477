#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "../error.hpp"
#include "field.hpp"
#include "fp_poly.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "roots.hpp"

namespace isolab::ff {

struct TowerOptions {
    u64 seed = 1;
    int max_degree = 200;
    /// Fixed moduli (monic, low -> high) for chosen degrees, e.g. replayed from a witness record.
    std::map<int, std::vector<u64>> moduli;
};

inline std::vector<int> divisors_of(int k) {
    std::vector<int> out;
    for (int d = 1; d <= k; ++d)
        if (k % d == 0) out.push_back(d);
    return out;
}

/// F_p with a divisor-closed set of extensions F_{p^k} and compatible embeddings between them.
class FieldTower : public std::enable_shared_from_this<FieldTower> {
    struct Private {};

public:
    FieldTower(Private, u64 p, TowerOptions opt) : p_(p), opt_(std::move(opt)) {}

    static std::shared_ptr<FieldTower> create(u64 p, const std::vector<int>& degrees, TowerOptions opt = {}) {
        if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
        if (p < 5) throw Error(ErrorCode::CharTooSmall, "characteristic " + std::to_string(p) + " is excluded");
        if (degrees.empty()) throw Error(ErrorCode::InvalidArgument, "tower needs at least one degree");
        auto tower = std::make_shared<FieldTower>(Private{}, p, std::move(opt));
        tower->ensure_level(1);
        for (int k : degrees) tower->ensure_level(k);
        return tower;
    }

    u64 characteristic() const { return p_; }
    u64 seed() const { return opt_.seed; }
    int max_degree() const { return opt_.max_degree; }

    bool has_level(int k) const {
        std::lock_guard lock(mu_);
        return levels_.count(k) > 0;
    }

    const Level& level(int k) const {
        std::lock_guard lock(mu_);
        auto it = levels_.find(k);
        if (it == levels_.end()) throw Error(ErrorCode::UnknownLevel, "no level of degree " + std::to_string(k));
        return *it->second;
    }

    std::vector<int> degrees() const {
        std::lock_guard lock(mu_);
        std::vector<int> out;
        for (const auto& [k, _] : levels_) out.push_back(k);
        return out;
    }

    /// Level k, created together with all its divisors if absent.
    const Level& ensure_level(int k) const {
        std::lock_guard lock(mu_);
        if (auto it = levels_.find(k); it != levels_.end()) return *it->second;
        if (k < 1) throw Error(ErrorCode::InvalidArgument, "degree must be positive");
        if (k > opt_.max_degree)
            throw Error(ErrorCode::ExtensionTooLarge,
                        "degree " + std::to_string(k) + " exceeds maximum " + std::to_string(opt_.max_degree));
        if (frozen_) throw Error(ErrorCode::InvalidArgument, "tower is frozen; cannot add degree " + std::to_string(k));
        for (int d : divisors_of(k)) {
            if (levels_.count(d)) continue;
            levels_.emplace(d, std::make_unique<Level>(p_, choose_modulus(d), this));
        }
        return *levels_.at(k);
    }

    /// Image of the generator of level k inside level K (k | K).
    FieldElement embedding_image(int k, int K) const { return embedding(k, K).image; }

    FieldElement embed(const FieldElement& x, int K) const {
        const int k = own_degree(x);
        if (k == K) return x;
        if (K % k != 0)
            throw Error(ErrorCode::LevelMismatch,
                        "cannot embed degree " + std::to_string(k) + " into degree " + std::to_string(K));
        const EmbeddingData& e = embedding(k, K);
        Coeffs out(K);
        e.matrix.apply(x.span(), out);
        return FieldElement(&level(K), std::move(out));
    }

    /// The preimage of x in level d (d | deg x), if x lies in that subfield.
    std::optional<FieldElement> descend(const FieldElement& x, int d) const {
        const int k = own_degree(x);
        if (d == k) return x;
        if (d < 1 || k % d != 0)
            throw Error(ErrorCode::LevelMismatch,
                        "degree " + std::to_string(d) + " does not divide " + std::to_string(k));
        const EmbeddingData& e = embedding(d, k);
        Coeffs y(d);
        e.left_inverse.apply(x.span(), y);
        Coeffs back(k);
        e.matrix.apply({y.data(), y.size()}, back);
        if (back != x.coeffs()) return std::nullopt;
        return FieldElement(&level(d), std::move(y));
    }

    int minimal_level(const FieldElement& x) const {
        const int k = own_degree(x);
        for (int d : divisors_of(k))
            if (d == k || descend(x, d)) return d;
        return k;
    }

    /// x written in the smallest level containing it.
    FieldElement canonical(const FieldElement& x) const {
        const int k = own_degree(x);
        for (int d : divisors_of(k)) {
            if (d == k) break;
            if (auto y = descend(x, d)) return *y;
        }
        return x;
    }

    /// Equality after moving both elements to a common level.
    bool same_point(const FieldElement& a, const FieldElement& b) const { return canonical(a) == canonical(b); }

    /// Builds every embedding between existing levels and forbids new levels.
    void freeze() {
        std::lock_guard lock(mu_);
        std::vector<int> ks;
        for (const auto& [k, _] : levels_) ks.push_back(k);
        for (int K : ks)
            for (int k : ks)
                if (k < K && K % k == 0) embedding(k, K);
        frozen_ = true;
    }
    bool frozen() const {
        std::lock_guard lock(mu_);
        return frozen_;
    }

private:
    struct EmbeddingData {
        FieldElement image;
        Matrix matrix;        // K x k, column i = image^i
        Matrix left_inverse;  // k x K
    };

    int own_degree(const FieldElement& x) const {
        if (!x.valid() || x.level().tower() != this)
            throw Error(ErrorCode::LevelMismatch, "element does not belong to this tower");
        return x.degree();
    }

    std::vector<u64> choose_modulus(int k) const {
        if (auto it = opt_.moduli.find(k); it != opt_.moduli.end()) {
            std::vector<u64> f = it->second;
            for (auto& c : f) c %= p_;
            if (fp_poly::degree(f) != k || f.back() != 1 || !fp_poly::is_irreducible(f, p_))
                throw Error(ErrorCode::InvalidArgument, "supplied modulus for degree " + std::to_string(k) +
                                                            " is not monic irreducible");
            return f;
        }
        if (k == 1) return {0, 1};
        Rng rng = make_rng(opt_.seed, {p_, static_cast<u64>(k), 0x6d6f64});
        std::uniform_int_distribution<u64> coef(0, p_ - 1);
        for (int attempt = 0;; ++attempt) {
            std::vector<u64> f(k + 1, 0);
            f[k] = 1;
            if (attempt < 4 * k) {
                f[0] = coef(rng);
                f[1] = coef(rng);
            } else {
                for (int i = 0; i < k; ++i) f[i] = coef(rng);
            }
            if (f[0] != 0 && fp_poly::is_irreducible(f, p_)) return f;
        }
    }

    const EmbeddingData& embedding(int k, int K) const {
        std::lock_guard lock(mu_);
        if (auto it = embeddings_.find({k, K}); it != embeddings_.end()) return *it->second;
        if (K % k != 0) throw Error(ErrorCode::LevelMismatch, "embedding needs k | K");
        const Level& small = ensure_level(k);
        const Level& big = ensure_level(K);
        FieldElement image = k == 1 ? big.from_int(static_cast<i64>(small.generator().coeffs()[0]))
                                    : compatible_root(small, big);
        Matrix m(K, k, p_);
        FieldElement power = big.one();
        for (int i = 0; i < k; ++i) {
            m.set_column(i, power.span());
            power *= image;
        }
        auto inv = m.left_inverse();
        if (!inv) throw Error(ErrorCode::InvalidArgument, "embedding matrix is singular");
        auto data = std::make_unique<EmbeddingData>(EmbeddingData{image, std::move(m), std::move(*inv)});
        return *embeddings_.emplace(std::make_pair(k, K), std::move(data)).first->second;
    }

    /// The least root rho of f_k in level K with m -> k -> K equal to m -> K for all m | k.
    FieldElement compatible_root(const Level& small, const Level& big) const {
        const int k = small.degree();
        const int K = big.degree();
        Rng rng = make_rng(opt_.seed, {p_, static_cast<u64>(k), static_cast<u64>(K)});
        const Poly f = Poly::from_prime_coeffs(big, small.modulus());
        const FieldElement r = one_root(f, rng);
        std::vector<FieldElement> roots;
        for (int i = 0; i < k; ++i) roots.push_back(r.frobenius(i));
        std::sort(roots.begin(), roots.end());

        std::vector<int> mids;
        for (int m : divisors_of(k))
            if (m > 1 && m < k) mids.push_back(m);
        for (const auto& rho : roots) {
            std::vector<FieldElement> powers{big.one()};
            for (int i = 1; i < k; ++i) powers.push_back(powers.back() * rho);
            bool ok = true;
            for (int m : mids) {
                const FieldElement direct = embedding(m, K).image;
                const FieldElement via_k = embedding(m, k).image;
                FieldElement acc = big.zero();
                for (int i = 0; i < k; ++i) acc += powers[i].scaled(via_k.coeffs()[i]);
                if (!(acc == direct)) {
                    ok = false;
                    break;
                }
            }
            if (ok) return rho;
        }
        throw Error(ErrorCode::InvalidArgument, "no compatible embedding of degree " + std::to_string(k) +
                                                    " into degree " + std::to_string(K));
    }

    u64 p_;
    TowerOptions opt_;
    bool frozen_ = false;
    mutable std::recursive_mutex mu_;
    mutable std::map<int, std::unique_ptr<Level>> levels_;
    mutable std::map<std::pair<int, int>, std::unique_ptr<EmbeddingData>> embeddings_;
};

using TowerPtr = std::shared_ptr<FieldTower>;

inline TowerPtr make_tower(u64 p, const std::vector<int>& degrees, TowerOptions opt = {}) {
    return FieldTower::create(p, degrees, std::move(opt));
}

}  // namespace isolab::ff

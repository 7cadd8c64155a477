#pragma once

#include <initializer_list>
#include <memory>
#include <mutex>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "../bigint.hpp"
#include "../error.hpp"
#include "fp_poly.hpp"
#include "matrix.hpp"
#include "modular.hpp"

namespace isolab::ff {

using Rng = std::mt19937_64;
using Coeffs = boost::container::small_vector<u64, 32>;

/// Deterministic generator derived from a run seed and a list of salts.
inline Rng make_rng(u64 seed, std::initializer_list<u64> salt) {
    std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    for (u64 s : salt) {
        words.push_back(static_cast<std::uint32_t>(s));
        words.push_back(static_cast<std::uint32_t>(s >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

class FieldTower;
class FieldElement;

/// F_p[x]/(f) for one monic irreducible f of degree k. Levels are owned by a FieldTower
/// (or stand alone, tower() == nullptr) and never move once created.
class Level {
public:
    Level(u64 p, std::vector<u64> modulus, const FieldTower* tower = nullptr)
        : p_(p), k_(static_cast<int>(modulus.size()) - 1), mod_(std::move(modulus)), tower_(tower) {
        if (k_ < 1 || mod_.back() != 1) throw Error(ErrorCode::InvalidArgument, "modulus must be monic of degree >= 1");
        neg_.resize(k_);
        for (int i = 0; i < k_; ++i) neg_[i] = (p_ - mod_[i] % p_) % p_;
        lazy_ = static_cast<u128>(p_ - 1) * (p_ - 1) * static_cast<u128>(2 * k_ + 2) <
                (static_cast<u128>(1) << 64);
        small_ = p_ < (u64{1} << 32);
        fm_ = FastMod(p_);
        order_ = big_pow(p_, static_cast<u64>(k_));
    }

    Level(const Level&) = delete;
    Level& operator=(const Level&) = delete;

    u64 characteristic() const { return p_; }
    int degree() const { return k_; }
    const std::vector<u64>& modulus() const { return mod_; }
    const FieldTower* tower() const { return tower_; }
    const BigInt& order() const { return order_; }
    std::optional<u64> order_u64() const {
        if (!fits_u64(order_)) return std::nullopt;
        return static_cast<u64>(order_);
    }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(i64 v) const;
    FieldElement from_coeffs(std::span<const u64> c) const;
    FieldElement generator() const;
    FieldElement random(Rng& rng) const;
    /// Element whose coefficient vector is the base-p expansion of `index`.
    FieldElement element(u64 index) const;
    u64 index_of(const FieldElement& x) const;

    /// out[0..k) = a*b mod f. a, b, out hold k reduced coefficients; out may alias neither.
    void mul_into(const u64* a, const u64* b, u64* out) const {
        if (k_ == 1) {
            out[0] = mul_mod(a[0], b[0], p_);
            return;
        }
        u64 t[2 * kMaxStack];
        std::vector<u64> heap;
        u64* buf = t;
        if (k_ > kMaxStack) {
            heap.assign(2 * k_, 0);
            buf = heap.data();
        }
        const int n = 2 * k_ - 1;
        if (lazy_) {
            for (int i = 0; i < n; ++i) buf[i] = 0;
            for (int i = 0; i < k_; ++i) {
                const u64 ai = a[i];
                if (!ai) continue;
                for (int j = 0; j < k_; ++j) buf[i + j] += ai * b[j];
            }
            for (int i = n - 1; i >= k_; --i) {
                const u64 c = fm_.reduce(buf[i]);
                if (!c) continue;
                u64* dst = buf + (i - k_);
                for (int j = 0; j < k_; ++j) dst[j] += c * neg_[j];
            }
            for (int i = 0; i < k_; ++i) out[i] = fm_.reduce(buf[i]);
        } else {
            for (int i = 0; i < n; ++i) buf[i] = 0;
            for (int i = 0; i < k_; ++i)
                for (int j = 0; j < k_; ++j) buf[i + j] = add_mod(buf[i + j], mul_mod(a[i], b[j], p_), p_);
            for (int i = n - 1; i >= k_; --i) {
                const u64 c = buf[i];
                if (!c) continue;
                for (int j = 0; j < k_; ++j)
                    buf[i - k_ + j] = add_mod(buf[i - k_ + j], mul_mod(c, neg_[j], p_), p_);
            }
            for (int i = 0; i < k_; ++i) out[i] = buf[i];
        }
    }

    /// out[0..k) = a^{-1} mod f by the extended Euclidean algorithm; false when a = 0.
    bool inverse_into(const u64* a, u64* out) const {
        const int n = k_ + 1;
        u64 st[4 * (kMaxStack + 1)];
        std::vector<u64> heap;
        u64* base = st;
        if (k_ > kMaxStack) {
            heap.assign(4 * n, 0);
            base = heap.data();
        }
        u64 *r0 = base, *r1 = base + n, *s0 = base + 2 * n, *s1 = base + 3 * n;
        for (int i = 0; i < n; ++i) {
            r0[i] = mod_[i];
            r1[i] = i < k_ ? a[i] : 0;
            s0[i] = 0;
            s1[i] = 0;
        }
        s1[0] = 1;
        int d0 = k_, d1 = k_ - 1, e0 = -1, e1 = 0;
        while (d1 >= 0 && r1[d1] == 0) --d1;
        if (d1 < 0) return false;
        while (d1 > 0) {
            const u64 inv = *inverse_mod(r1[d1], p_);
            while (d0 >= d1) {
                const u64 c = mulm(r0[d0], inv);
                const int shift = d0 - d1;
                if (c) {
                    const u64 nc = p_ - c;
                    for (int i = 0; i <= d1; ++i) r0[i + shift] = addm(r0[i + shift], mulm(nc, r1[i]));
                    for (int i = 0; i <= e1; ++i) s0[i + shift] = addm(s0[i + shift], mulm(nc, s1[i]));
                    if (e1 + shift > e0) e0 = e1 + shift;
                }
                while (d0 >= 0 && r0[d0] == 0) --d0;
            }
            std::swap(r0, r1);
            std::swap(s0, s1);
            std::swap(d0, d1);
            std::swap(e0, e1);
            if (d1 < 0) return false;
        }
        const u64 inv = *inverse_mod(r1[0], p_);
        for (int i = 0; i < k_; ++i) out[i] = i <= e1 ? mulm(s1[i], inv) : 0;
        return true;
    }

    /// Matrix of x -> x^p on the coefficient space.
    const Matrix& frobenius_matrix() const;

private:
    static constexpr int kMaxStack = 64;

    u64 mulm(u64 a, u64 b) const { return small_ ? fm_.reduce(a * b) : mul_mod(a, b, p_); }
    u64 addm(u64 a, u64 b) const { return add_mod(a, b, p_); }

    u64 p_;
    int k_;
    std::vector<u64> mod_;
    std::vector<u64> neg_;
    bool lazy_ = true;
    bool small_ = true;
    FastMod fm_;
    BigInt order_;
    const FieldTower* tower_;
    mutable std::once_flag frob_once_;
    mutable Matrix frob_;
};

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(const Level* level, Coeffs c) : level_(level), c_(std::move(c)) {}

    bool valid() const { return level_ != nullptr; }
    const Level& level() const { return *level_; }
    const Level* level_ptr() const { return level_; }
    int degree() const { return level_->degree(); }
    u64 characteristic() const { return level_->characteristic(); }
    const Coeffs& coeffs() const { return c_; }
    std::span<const u64> span() const { return {c_.data(), c_.size()}; }

    bool is_zero() const {
        for (u64 v : c_)
            if (v) return false;
        return true;
    }
    bool is_one() const {
        if (c_.empty() || c_[0] != 1 % level_->characteristic()) return false;
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i]) return false;
        return true;
    }
    /// True when the element lies in the prime field (constant coefficient only).
    bool is_prime_field_constant() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i]) return false;
        return true;
    }

    FieldElement& operator+=(const FieldElement& o) {
        check(o);
        const u64 p = characteristic();
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = add_mod(c_[i], o.c_[i], p);
        return *this;
    }
    FieldElement& operator-=(const FieldElement& o) {
        check(o);
        const u64 p = characteristic();
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = sub_mod(c_[i], o.c_[i], p);
        return *this;
    }
    FieldElement& operator*=(const FieldElement& o) {
        check(o);
        Coeffs out(c_.size());
        level_->mul_into(c_.data(), o.c_.data(), out.data());
        c_ = std::move(out);
        return *this;
    }
    FieldElement operator-() const {
        FieldElement r = *this;
        const u64 p = characteristic();
        for (auto& v : r.c_) v = v ? p - v : 0;
        return r;
    }
    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        Coeffs out(a.c_.size());
        a.level_->mul_into(a.c_.data(), b.c_.data(), out.data());
        return FieldElement(a.level_, std::move(out));
    }
    FieldElement& operator/=(const FieldElement& o) { return *this *= o.inverse(); }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

    FieldElement scaled(u64 s) const {
        FieldElement r = *this;
        const u64 p = characteristic();
        s %= p;
        for (auto& v : r.c_) v = mul_mod(v, s, p);
        return r;
    }

    FieldElement inverse() const {
        if (is_zero()) throw Error(ErrorCode::NotAUnit, "inverse of zero");
        const u64 p = characteristic();
        if (degree() == 1) return FieldElement(level_, Coeffs{*inverse_mod(c_[0], p)});
        Coeffs out(degree(), 0);
        if (!level_->inverse_into(c_.data(), out.data()))
            throw Error(ErrorCode::NotAUnit, "element is not invertible; modulus is reducible");
        return FieldElement(level_, std::move(out));
    }

    FieldElement pow(u64 e) const {
        FieldElement result = level_->one();
        FieldElement base = *this;
        while (e) {
            if (e & 1) result *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return result;
    }

    FieldElement pow(const BigInt& e_in) const {
        if (e_in < 0) return inverse().pow(BigInt(-e_in));
        if (fits_u64(e_in)) return pow(static_cast<u64>(e_in));
        FieldElement result = level_->one();
        FieldElement base = *this;
        const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(e_in)) + 1;
        for (unsigned i = 0; i < bits; ++i) {
            if (boost::multiprecision::bit_test(e_in, i)) result *= base;
            if (i + 1 < bits) base *= base;
        }
        return result;
    }

    /// x^{p^times}
    FieldElement frobenius(u64 times = 1) const {
        const int k = degree();
        times %= static_cast<u64>(k);
        if (k == 1 || times == 0) return *this;
        const Matrix& m = level_->frobenius_matrix();
        FieldElement r = *this;
        Coeffs tmp(k);
        for (u64 t = 0; t < times; ++t) {
            m.apply(r.span(), tmp);
            r.c_.swap(tmp);
        }
        return r;
    }

    /// Same level and same coefficients. Elements of different levels compare unequal;
    /// use FieldTower::same_point to compare across levels.
    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.level_ == b.level_ && a.c_ == b.c_;
    }

    std::string to_string() const {
        if (!level_) return "<invalid>";
        if (degree() == 1) return std::to_string(c_[0]);
        std::string s = "[";
        for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + std::to_string(c_[i]);
        return s + "]";
    }

    /// Lexicographic order on (degree, coefficients) used for deterministic sorting.
    friend bool operator<(const FieldElement& a, const FieldElement& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
    }

private:
    void check(const FieldElement& o) const {
        if (level_ != o.level_) throw Error(ErrorCode::LevelMismatch, "arithmetic across different levels");
    }

    const Level* level_ = nullptr;
    Coeffs c_;
};

inline FieldElement Level::zero() const { return FieldElement(this, Coeffs(k_, 0)); }

inline FieldElement Level::one() const {
    Coeffs c(k_, 0);
    c[0] = 1 % p_;
    return FieldElement(this, std::move(c));
}

inline FieldElement Level::from_int(i64 v) const {
    Coeffs c(k_, 0);
    c[0] = reduce_signed(v, p_);
    return FieldElement(this, std::move(c));
}

inline FieldElement Level::from_coeffs(std::span<const u64> v) const {
    if (static_cast<int>(v.size()) > k_)
        throw Error(ErrorCode::LevelMismatch, "coefficient vector longer than level degree");
    Coeffs c(k_, 0);
    for (std::size_t i = 0; i < v.size(); ++i) c[i] = v[i] % p_;
    return FieldElement(this, std::move(c));
}

inline FieldElement Level::generator() const {
    if (k_ == 1) return from_int(static_cast<i64>((p_ - mod_[0]) % p_));
    Coeffs c(k_, 0);
    c[1] = 1;
    return FieldElement(this, std::move(c));
}

inline FieldElement Level::random(Rng& rng) const {
    std::uniform_int_distribution<u64> dist(0, p_ - 1);
    Coeffs c(k_);
    for (auto& v : c) v = dist(rng);
    return FieldElement(this, std::move(c));
}

inline FieldElement Level::element(u64 index) const {
    Coeffs c(k_, 0);
    for (int i = 0; i < k_ && index; ++i) {
        c[i] = index % p_;
        index /= p_;
    }
    return FieldElement(this, std::move(c));
}

inline u64 Level::index_of(const FieldElement& x) const {
    u64 idx = 0;
    for (int i = k_ - 1; i >= 0; --i) idx = idx * p_ + x.coeffs()[i];
    return idx;
}

inline const Matrix& Level::frobenius_matrix() const {
    std::call_once(frob_once_, [this] {
        Matrix m(k_, k_, p_);
        const FieldElement g = generator();
        const FieldElement gp = g.pow(p_);
        FieldElement col = one();
        for (int i = 0; i < k_; ++i) {
            m.set_column(i, col.span());
            col *= gp;
        }
        frob_ = std::move(m);
    });
    return frob_;
}

/// A standalone field F_p[x]/(modulus), not attached to any tower.
inline std::unique_ptr<Level> make_detached_level(u64 p, std::vector<u64> modulus) {
    return std::make_unique<Level>(p, std::move(modulus), nullptr);
}

}  // namespace isolab::ff

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "field.hpp"

namespace isolab::ff {

/// Dense univariate polynomial with coefficients in one Level, low -> high, no trailing zeros.
class Poly {
public:
    explicit Poly(const Level& level) : level_(&level) {}
    Poly(const Level& level, std::vector<FieldElement> c) : level_(&level), c_(std::move(c)) { trim(); }

    static Poly x(const Level& level) { return Poly(level, {level.zero(), level.one()}); }
    static Poly constant(const FieldElement& c) { return Poly(c.level(), {c}); }
    static Poly monomial(const FieldElement& c, int deg) {
        std::vector<FieldElement> v(deg + 1, c.level().zero());
        v[deg] = c;
        return Poly(c.level(), std::move(v));
    }
    /// Polynomial with prime-field coefficients lifted into `level`.
    static Poly from_prime_coeffs(const Level& level, std::span<const u64> c) {
        std::vector<FieldElement> v;
        v.reserve(c.size());
        for (u64 x : c) v.push_back(level.from_int(static_cast<i64>(x % level.characteristic())));
        return Poly(level, std::move(v));
    }

    const Level& level() const { return *level_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    FieldElement coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : level_->zero(); }
    const FieldElement& lead() const { return c_.back(); }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }

    Poly& operator+=(const Poly& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), level_->zero());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), level_->zero());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly(*a.level_);
        std::vector<FieldElement> out(a.c_.size() + b.c_.size() - 1, a.level_->zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(*a.level_, std::move(out));
    }
    Poly scaled(const FieldElement& s) const {
        Poly r = *this;
        for (auto& c : r.c_) c *= s;
        r.trim();
        return r;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(lead().inverse());
    }

    /// (quotient, remainder) of a / b.
    friend std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
        Poly rem = a;
        const int db = b.degree();
        if (rem.degree() < db) return {Poly(*a.level_), rem};
        const FieldElement inv_lead = b.lead().inverse();
        std::vector<FieldElement> q(rem.degree() - db + 1, a.level_->zero());
        for (int i = rem.degree(); i >= db; --i) {
            if (rem.c_[i].is_zero()) continue;
            const FieldElement c = rem.c_[i] * inv_lead;
            q[i - db] = c;
            for (int j = 0; j <= db; ++j) rem.c_[i - db + j] -= c * b.c_[j];
        }
        rem.trim();
        return {Poly(*a.level_, std::move(q)), std::move(rem)};
    }
    friend Poly operator%(const Poly& a, const Poly& b) { return divrem(a, b).second; }
    friend Poly operator/(const Poly& a, const Poly& b) { return divrem(a, b).first; }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly(*level_);
        std::vector<FieldElement> d;
        d.reserve(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i].scaled(i % level_->characteristic()));
        return Poly(*level_, std::move(d));
    }

    FieldElement evaluate(const FieldElement& x) const {
        FieldElement acc = level_->zero();
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// base^e mod m
    friend Poly powmod(Poly base, const BigInt& e, const Poly& m) {
        Poly result = Poly::constant(m.level_->one()) % m;
        base = base % m;
        if (e <= 0) return result;
        const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(e)) + 1;
        for (int i = static_cast<int>(bits) - 1; i >= 0; --i) {
            result = (result * result) % m;
            if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) result = (result * base) % m;
        }
        return result;
    }

    /// Monic gcd.
    friend Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.level_ == b.level_ && a.c_ == b.c_; }

    std::string to_string() const {
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            if (c_[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += c_[i].to_string();
            if (i > 0) s += "*Y^" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    const Level* level_;
    std::vector<FieldElement> c_;
};

}  // namespace isolab::ff

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "../error.hpp"
#include "modular.hpp"

namespace isolab::ff {

/// Dense row-major matrix over F_p.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, u64 p) : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {}

    static Matrix identity(std::size_t n, u64 p) {
        Matrix m(n, n, p);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % p;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    u64 modulus() const { return p_; }

    u64& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    u64 operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    void set_column(std::size_t c, std::span<const u64> v) {
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = r < v.size() ? v[r] : 0;
    }

    /// out = M * v
    template <class Out>
    void apply(std::span<const u64> v, Out& out) const {
        const bool lazy = static_cast<u128>(p_ - 1) * (p_ - 1) * (cols_ + 1) < (static_cast<u128>(1) << 64);
        for (std::size_t r = 0; r < rows_; ++r) {
            const u64* row = &a_[r * cols_];
            if (lazy) {
                u64 acc = 0;
                for (std::size_t c = 0; c < cols_; ++c) acc += row[c] * v[c];
                out[r] = acc % p_;
            } else {
                u64 acc = 0;
                for (std::size_t c = 0; c < cols_; ++c) acc = add_mod(acc, mul_mod(row[c], v[c], p_), p_);
                out[r] = acc;
            }
        }
    }

    std::vector<u64> operator*(std::span<const u64> v) const {
        std::vector<u64> out(rows_);
        apply(v, out);
        return out;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch");
        Matrix out(rows_, o.cols_, p_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const u64 a = (*this)(i, k);
                if (!a) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    out(i, j) = add_mod(out(i, j), mul_mod(a, o(k, j), p_), p_);
            }
        return out;
    }

    /// Reduced row echelon form in place; returns pivot columns.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t c = 0; c < cols_ && row < rows_; ++c) {
            std::size_t sel = row;
            while (sel < rows_ && (*this)(sel, c) == 0) ++sel;
            if (sel == rows_) continue;
            if (sel != row)
                for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(sel, j), (*this)(row, j));
            const u64 inv = *inverse_mod((*this)(row, c), p_);
            for (std::size_t j = 0; j < cols_; ++j) (*this)(row, j) = mul_mod((*this)(row, j), inv, p_);
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r == row) continue;
                const u64 f = (*this)(r, c);
                if (!f) continue;
                for (std::size_t j = c; j < cols_; ++j)
                    (*this)(r, j) = sub_mod((*this)(r, j), mul_mod(f, (*this)(row, j), p_), p_);
            }
            pivots.push_back(c);
            ++row;
        }
        return pivots;
    }

    std::size_t rank() const {
        Matrix copy = *this;
        return copy.rref().size();
    }

    /// Basis of {x : M x = 0}.
    std::vector<std::vector<u64>> kernel() const {
        Matrix r = *this;
        auto pivots = r.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots) is_pivot[c] = true;
        std::vector<std::vector<u64>> basis;
        for (std::size_t free = 0; free < cols_; ++free) {
            if (is_pivot[free]) continue;
            std::vector<u64> v(cols_, 0);
            v[free] = 1 % p_;
            for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = (p_ - r(i, free)) % p_;
            basis.push_back(std::move(v));
        }
        return basis;
    }

    /// One solution of M x = b, or nothing when the system is inconsistent.
    std::optional<std::vector<u64>> solve(std::span<const u64> b) const {
        Matrix aug(rows_, cols_ + 1, p_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) aug(r, c) = (*this)(r, c);
            aug(r, cols_) = b[r] % p_;
        }
        auto pivots = aug.rref();
        if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
        std::vector<u64> x(cols_, 0);
        for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, cols_);
        return x;
    }

    /// L with L * M = I for a full-column-rank M; nothing otherwise.
    std::optional<Matrix> left_inverse() const {
        // Pivot columns of M^T are independent rows of M.
        Matrix t(cols_, rows_, p_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        auto pivots = t.rref();
        if (pivots.size() != cols_) return std::nullopt;
        Matrix block(cols_, cols_, p_);
        for (std::size_t i = 0; i < cols_; ++i)
            for (std::size_t c = 0; c < cols_; ++c) block(i, c) = (*this)(pivots[i], c);
        auto inv = block.inverse();
        if (!inv) return std::nullopt;
        Matrix out(cols_, rows_, p_);
        for (std::size_t c = 0; c < cols_; ++c)
            for (std::size_t i = 0; i < cols_; ++i) out(c, pivots[i]) = (*inv)(c, i);
        return out;
    }

    std::optional<Matrix> inverse() const {
        if (rows_ != cols_) return std::nullopt;
        const std::size_t n = rows_;
        Matrix aug(n, 2 * n, p_);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) aug(r, c) = (*this)(r, c);
            aug(r, n + r) = 1 % p_;
        }
        auto pivots = aug.rref();
        if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
        Matrix out(n, n, p_);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) out(r, c) = aug(r, n + c);
        return out;
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    u64 p_ = 2;
    std::vector<u64> a_;
};

}  // namespace isolab::ff

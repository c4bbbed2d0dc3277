#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"
#include "fp.hpp"

namespace factorforge {

/// Dense matrix over F_p, just big enough for the Sylvester/Jacobian work:
/// determinant, rank and inverse by Gaussian elimination.
class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static FpMatrix identity(std::size_t n) {
        FpMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Fp::one();
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Fp& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    Fp at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    friend bool operator==(const FpMatrix& x, const FpMatrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    FpMatrix transpose() const {
        FpMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
        return t;
    }

    friend FpMatrix operator*(const FpMatrix& x, const FpMatrix& y) {
        if (x.cols_ != y.rows_) fail(Errc::structural, "matrix product dimension mismatch");
        FpMatrix z(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                Fp v = x.at(i, k);
                if (v.is_zero()) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) z.at(i, j) += v * y.at(k, j);
            }
        return z;
    }

    std::vector<Fp> apply(const std::vector<Fp>& v) const {
        if (v.size() != cols_) fail(Errc::structural, "matrix-vector dimension mismatch");
        std::vector<Fp> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
        return out;
    }

    Fp determinant() const {
        if (rows_ != cols_) fail(Errc::structural, "determinant of a non-square matrix");
        FpMatrix m = *this;
        Fp det = Fp::one();
        for (std::size_t col = 0; col < cols_; ++col) {
            std::size_t pivot = col;
            while (pivot < rows_ && m.at(pivot, col).is_zero()) ++pivot;
            if (pivot == rows_) return Fp::zero();
            if (pivot != col) { m.swap_rows(pivot, col); det = -det; }
            det *= m.at(col, col);
            Fp inv = m.at(col, col).inverse();
            for (std::size_t r = col + 1; r < rows_; ++r) {
                Fp f = m.at(r, col) * inv;
                if (f.is_zero()) continue;
                for (std::size_t c = col; c < cols_; ++c) m.at(r, c) -= f * m.at(col, c);
            }
        }
        return det;
    }

    std::size_t rank() const {
        FpMatrix m = *this;
        std::size_t rank = 0;
        for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
            std::size_t pivot = rank;
            while (pivot < rows_ && m.at(pivot, col).is_zero()) ++pivot;
            if (pivot == rows_) continue;
            m.swap_rows(pivot, rank);
            Fp inv = m.at(rank, col).inverse();
            for (std::size_t r = rank + 1; r < rows_; ++r) {
                Fp f = m.at(r, col) * inv;
                if (f.is_zero()) continue;
                for (std::size_t c = col; c < cols_; ++c) m.at(r, c) -= f * m.at(rank, c);
            }
            ++rank;
        }
        return rank;
    }

    /// Gauss-Jordan inverse; empty if singular.
    std::optional<FpMatrix> inverse() const {
        if (rows_ != cols_) fail(Errc::structural, "inverse of a non-square matrix");
        FpMatrix m = *this;
        FpMatrix inv = identity(rows_);
        for (std::size_t col = 0; col < cols_; ++col) {
            std::size_t pivot = col;
            while (pivot < rows_ && m.at(pivot, col).is_zero()) ++pivot;
            if (pivot == rows_) return std::nullopt;
            if (pivot != col) { m.swap_rows(pivot, col); inv.swap_rows(pivot, col); }
            Fp f = m.at(col, col).inverse();
            for (std::size_t c = 0; c < cols_; ++c) { m.at(col, c) *= f; inv.at(col, c) *= f; }
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r == col) continue;
                Fp g = m.at(r, col);
                if (g.is_zero()) continue;
                for (std::size_t c = 0; c < cols_; ++c) {
                    m.at(r, c) -= g * m.at(col, c);
                    inv.at(r, c) -= g * inv.at(col, c);
                }
            }
        }
        return inv;
    }

private:
    void swap_rows(std::size_t r1, std::size_t r2) {
        for (std::size_t c = 0; c < cols_; ++c) std::swap(at(r1, c), at(r2, c));
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Fp> a_;
};

} // namespace factorforge

#pragma once

#include <span>
#include <vector>

#include "coverforge/cyclotomic.hpp"

namespace coverforge {

/// Dense matrix over the cyclotomic numbers. Everything is exact; rank and
/// determinant run Gaussian elimination with true field division.
class CycloMatrix {
public:
    CycloMatrix() = default;
    CycloMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CycloMatrix identity(std::size_t n) {
        CycloMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Cyclotomic(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Cyclotomic& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Cyclotomic& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_square() const { return rows_ == cols_; }

    bool is_identity() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(i, j) != (i == j ? Cyclotomic(1) : Cyclotomic())) return false;
        return true;
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (!v.is_zero()) return false;
        return true;
    }

    friend bool operator==(const CycloMatrix& a, const CycloMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            if (a.data_[k] != b.data_[k]) return false;
        return true;
    }
    friend bool operator!=(const CycloMatrix& a, const CycloMatrix& b) { return !(a == b); }

    friend CycloMatrix operator+(const CycloMatrix& a, const CycloMatrix& b) {
        internal_check(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix shape mismatch");
        CycloMatrix out(a.rows_, a.cols_);
        for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] = a.data_[k] + b.data_[k];
        return out;
    }

    friend CycloMatrix operator-(const CycloMatrix& a, const CycloMatrix& b) {
        internal_check(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix shape mismatch");
        CycloMatrix out(a.rows_, a.cols_);
        for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] = a.data_[k] - b.data_[k];
        return out;
    }

    friend CycloMatrix operator*(const CycloMatrix& a, const CycloMatrix& b) {
        internal_check(a.cols_ == b.rows_, "matrix shape mismatch");
        CycloMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    if (b.at(k, j).is_zero()) continue;
                    out.at(i, j) += a.at(i, k) * b.at(k, j);
                }
            }
        return out;
    }

    friend CycloMatrix operator*(const Cyclotomic& s, const CycloMatrix& a) {
        CycloMatrix out(a.rows_, a.cols_);
        for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] = s * a.data_[k];
        return out;
    }

    CycloMatrix pow(long k) const {
        internal_check(is_square() && k >= 0, "matrix pow wants a square base, k >= 0");
        CycloMatrix result = identity(rows_), base = *this;
        while (k > 0) {
            if (k & 1) result = result * base;
            base = base * base;
            k >>= 1;
        }
        return result;
    }

    std::size_t rank() const {
        CycloMatrix m = *this;
        std::size_t rank = 0;
        for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
            std::size_t pivot = rows_;
            for (std::size_t r = rank; r < rows_; ++r)
                if (!m.at(r, col).is_zero()) { pivot = r; break; }
            if (pivot == rows_) continue;
            m.swap_rows(pivot, rank);
            Cyclotomic inv = m.at(rank, col).inverse();
            for (std::size_t j = col; j < cols_; ++j) m.at(rank, j) = inv * m.at(rank, j);
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r == rank || m.at(r, col).is_zero()) continue;
                Cyclotomic f = m.at(r, col);
                for (std::size_t j = col; j < cols_; ++j)
                    m.at(r, j) -= f * m.at(rank, j);
            }
            ++rank;
        }
        return rank;
    }

    Cyclotomic det() const {
        internal_check(is_square(), "det of non-square matrix");
        CycloMatrix m = *this;
        Cyclotomic d(1);
        for (std::size_t col = 0; col < cols_; ++col) {
            std::size_t pivot = rows_;
            for (std::size_t r = col; r < rows_; ++r)
                if (!m.at(r, col).is_zero()) { pivot = r; break; }
            if (pivot == rows_) return Cyclotomic();
            if (pivot != col) {
                m.swap_rows(pivot, col);
                d = -d;
            }
            d *= m.at(col, col);
            Cyclotomic inv = m.at(col, col).inverse();
            for (std::size_t r = col + 1; r < rows_; ++r) {
                if (m.at(r, col).is_zero()) continue;
                Cyclotomic f = m.at(r, col) * inv;
                for (std::size_t j = col; j < cols_; ++j) m.at(r, j) -= f * m.at(col, j);
            }
        }
        return d;
    }

    static CycloMatrix block_diagonal(std::span<const CycloMatrix> blocks) {
        std::size_t n = 0;
        for (const auto& b : blocks) {
            internal_check(b.is_square(), "block_diagonal wants square blocks");
            n += b.rows();
        }
        CycloMatrix out(n, n);
        std::size_t off = 0;
        for (const auto& b : blocks) {
            for (std::size_t i = 0; i < b.rows(); ++i)
                for (std::size_t j = 0; j < b.cols(); ++j) out.at(off + i, off + j) = b.at(i, j);
            off += b.rows();
        }
        return out;
    }

private:
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Cyclotomic> data_;
};

}  // namespace coverforge

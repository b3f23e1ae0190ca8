#pragma once

#include <initializer_list>
#include <ostream>
#include <vector>

#include "partact/gaussian.hpp"

namespace partact {

// Dense matrix over Q(i), row-major.  The carrier for partial isometries,
// projections and finite-dimensional representations.
class ExactMatrix {
public:
    ExactMatrix() : rows_(0), cols_(0) {}
    ExactMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}
    ExactMatrix(std::size_t rows, std::size_t cols, std::vector<GaussianRational> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (e_.size() != rows_ * cols_) throw dimension_error("entry count != rows*cols");
    }
    ExactMatrix(std::initializer_list<std::initializer_list<long>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        for (auto& r : rows) {
            if (r.size() != cols_) throw dimension_error("ragged initializer");
            for (long v : r) e_.emplace_back(v);
        }
    }

    static ExactMatrix identity(std::size_t n) {
        ExactMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = GaussianRational::one();
        return m;
    }
    static ExactMatrix zero(std::size_t r, std::size_t c) { return ExactMatrix(r, c); }
    // e_{ij}: 1 in row i, column j (0-based).
    static ExactMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
        ExactMatrix m(n, n);
        m.at(i, j) = GaussianRational::one();
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    GaussianRational& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const GaussianRational& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    const std::vector<GaussianRational>& entries() const { return e_; }

    ExactMatrix adjoint() const {
        ExactMatrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j).conj();
        return m;
    }

    bool is_zero() const {
        for (auto& z : e_)
            if (!z.is_zero()) return false;
        return true;
    }

    friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
        a.check_same_shape(b);
        ExactMatrix m(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.e_.size(); ++k) m.e_[k] = a.e_[k] + b.e_[k];
        return m;
    }
    friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
        a.check_same_shape(b);
        ExactMatrix m(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.e_.size(); ++k) m.e_[k] = a.e_[k] - b.e_[k];
        return m;
    }
    ExactMatrix operator-() const {
        ExactMatrix m(rows_, cols_);
        for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = -e_[k];
        return m;
    }
    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.cols_ != b.rows_) throw dimension_error("matrix product shape mismatch");
        ExactMatrix m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const GaussianRational& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const GaussianRational& bkj = b.at(k, j);
                    if (!bkj.is_zero()) m.at(i, j) += aik * bkj;
                }
            }
        return m;
    }
    friend ExactMatrix operator*(const GaussianRational& c, const ExactMatrix& a) {
        ExactMatrix m(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.e_.size(); ++k) m.e_[k] = c * a.e_[k];
        return m;
    }

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const ExactMatrix& a, const ExactMatrix& b) { return !(a == b); }

    // Lexicographic on (rows, cols, flattened entries); canonical set ordering.
    friend bool operator<(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
        if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
        for (std::size_t k = 0; k < a.e_.size(); ++k) {
            if (a.e_[k] != b.e_[k]) return a.e_[k] < b.e_[k];
        }
        return false;
    }

    friend std::ostream& operator<<(std::ostream& os, const ExactMatrix& m) {
        os << "[";
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? "; " : "");
            for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m.at(i, j);
        }
        return os << "]";
    }

private:
    void check_same_shape(const ExactMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw dimension_error("shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<GaussianRational> e_;
};

}  // namespace partact

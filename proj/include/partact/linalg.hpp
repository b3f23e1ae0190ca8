#pragma once

#include <optional>
#include <vector>

#include "partact/matrix.hpp"

namespace partact {

using Vec = std::vector<GaussianRational>;

inline Vec vec_add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}
inline Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}
inline Vec vec_scale(const GaussianRational& c, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}
inline bool vec_is_zero(const Vec& a) {
    for (auto& z : a)
        if (!z.is_zero()) return false;
    return true;
}

// A subspace of Q(i)^n kept in reduced row echelon form.  RREF is a canonical
// representative, so subspace equality is basis equality.
class RowSpace {
public:
    RowSpace() : n_(0) {}
    explicit RowSpace(std::size_t ambient_dim) : n_(ambient_dim) {}

    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return rows_.size(); }
    const std::vector<Vec>& basis() const { return rows_; }

    // Inserts a vector; returns true if the dimension grew.
    bool insert(Vec v) {
        if (v.size() != n_) throw dimension_error("RowSpace: wrong vector length");
        reduce_against_rows(v);
        std::size_t p = pivot_of(v);
        if (p == n_) return false;
        GaussianRational inv = GaussianRational::one() / v[p];
        v = vec_scale(inv, v);
        // Clear column p above.
        for (auto& r : rows_) {
            if (!r[p].is_zero()) r = vec_sub(r, vec_scale(r[p], v));
        }
        auto it = rows_.begin();
        while (it != rows_.end() && pivot_of(*it) < p) ++it;
        rows_.insert(it, std::move(v));
        pivots_.clear();
        for (auto& r : rows_) pivots_.push_back(pivot_of(r));
        return true;
    }

    bool contains(Vec v) const {
        if (v.size() != n_) throw dimension_error("RowSpace: wrong vector length");
        reduce_against_rows(v);
        return vec_is_zero(v);
    }

    // Coefficients c with v = sum c_k basis_k, or nullopt.
    std::optional<Vec> coordinates(Vec v) const {
        if (v.size() != n_) throw dimension_error("RowSpace: wrong vector length");
        Vec c(rows_.size(), GaussianRational::zero());
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const GaussianRational& coef = v[pivots_[k]];
            if (!coef.is_zero()) {
                c[k] = coef;
                v = vec_sub(v, vec_scale(coef, rows_[k]));
            }
        }
        if (!vec_is_zero(v)) return std::nullopt;
        return c;
    }

    bool contains_space(const RowSpace& other) const {
        for (auto& r : other.rows_)
            if (!contains(r)) return false;
        return true;
    }

    friend bool operator==(const RowSpace& a, const RowSpace& b) {
        return a.n_ == b.n_ && a.rows_ == b.rows_;
    }

    static RowSpace span(std::size_t ambient_dim, const std::vector<Vec>& vectors) {
        RowSpace s(ambient_dim);
        for (auto& v : vectors) s.insert(v);
        return s;
    }

    static RowSpace intersection(const RowSpace& a, const RowSpace& b) {
        if (a.n_ != b.n_) throw dimension_error("intersection: ambient mismatch");
        // x in both spaces: x = alpha*A = beta*B.  Solve [A^T | -B^T] nullspace.
        std::size_t da = a.dim(), db = b.dim();
        std::vector<Vec> rows;  // system rows, one per ambient coordinate
        for (std::size_t i = 0; i < a.n_; ++i) {
            Vec row(da + db, GaussianRational::zero());
            for (std::size_t k = 0; k < da; ++k) row[k] = a.rows_[k][i];
            for (std::size_t k = 0; k < db; ++k) row[da + k] = -b.rows_[k][i];
            rows.push_back(std::move(row));
        }
        RowSpace result(a.n_);
        for (auto& sol : nullspace(rows, da + db)) {
            Vec x(a.n_, GaussianRational::zero());
            for (std::size_t k = 0; k < da; ++k)
                if (!sol[k].is_zero()) x = vec_add(x, vec_scale(sol[k], a.rows_[k]));
            result.insert(x);
        }
        return result;
    }

    // Basis of { x : rows * x = 0 } for a list of row constraints of width n.
    static std::vector<Vec> nullspace(std::vector<Vec> rows, std::size_t n) {
        // Row-reduce the constraint matrix.
        std::vector<Vec> red;
        std::vector<std::size_t> piv;
        for (auto& r : rows) {
            for (std::size_t k = 0; k < red.size(); ++k) {
                if (!r[piv[k]].is_zero()) r = vec_sub(r, vec_scale(r[piv[k]], red[k]));
            }
            std::size_t p = 0;
            while (p < n && r[p].is_zero()) ++p;
            if (p == n) continue;
            r = vec_scale(GaussianRational::one() / r[p], r);
            for (std::size_t k = 0; k < red.size(); ++k)
                if (!red[k][p].is_zero()) red[k] = vec_sub(red[k], vec_scale(red[k][p], r));
            red.push_back(r);
            piv.push_back(p);
        }
        std::vector<bool> is_pivot(n, false);
        for (auto p : piv) is_pivot[p] = true;
        std::vector<Vec> out;
        for (std::size_t f = 0; f < n; ++f) {
            if (is_pivot[f]) continue;
            Vec x(n, GaussianRational::zero());
            x[f] = GaussianRational::one();
            for (std::size_t k = 0; k < red.size(); ++k) x[piv[k]] = -red[k][f];
            out.push_back(std::move(x));
        }
        return out;
    }

private:
    std::size_t pivot_of(const Vec& v) const {
        std::size_t p = 0;
        while (p < n_ && v[p].is_zero()) ++p;
        return p;
    }
    void reduce_against_rows(Vec& v) const {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const GaussianRational& c = v[pivots_[k]];
            if (!c.is_zero()) v = vec_sub(v, vec_scale(c, rows_[k]));
        }
    }

    std::size_t n_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

// Rank of an exact matrix, via row reduction.
inline std::size_t rank(const ExactMatrix& m) {
    RowSpace s(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Vec row(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) row[j] = m.at(i, j);
        s.insert(std::move(row));
    }
    return s.dim();
}

}  // namespace partact

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "partact/linalg.hpp"

namespace partact {

// A finite-dimensional *-algebra over Q(i), given by structure constants on a
// basis plus the involution's action on that basis.  The involution on general
// elements is conjugate-linear.
struct StarAlgebra {
    std::size_t dim = 0;
    std::vector<GaussianRational> sc;    // dim^3: e_i e_j = sum_k sc[(i*dim+j)*dim+k] e_k
    std::vector<GaussianRational> star;  // dim^2: (e_i)* = sum_j star[i*dim+j] e_j
    std::optional<Vec> unit;
    std::vector<std::string> labels;

    const GaussianRational& c(std::size_t i, std::size_t j, std::size_t k) const {
        return sc[(i * dim + j) * dim + k];
    }
    GaussianRational& c(std::size_t i, std::size_t j, std::size_t k) {
        return sc[(i * dim + j) * dim + k];
    }

    Vec zero() const { return Vec(dim, GaussianRational::zero()); }
    Vec basis_vec(std::size_t i) const {
        Vec v = zero();
        v[i] = GaussianRational::one();
        return v;
    }

    Vec mult(const Vec& a, const Vec& b) const {
        Vec r = zero();
        for (std::size_t i = 0; i < dim; ++i) {
            if (a[i].is_zero()) continue;
            for (std::size_t j = 0; j < dim; ++j) {
                if (b[j].is_zero()) continue;
                GaussianRational ab = a[i] * b[j];
                for (std::size_t k = 0; k < dim; ++k) {
                    const GaussianRational& s = c(i, j, k);
                    if (!s.is_zero()) r[k] += ab * s;
                }
            }
        }
        return r;
    }

    Vec star_of(const Vec& a) const {
        Vec r = zero();
        for (std::size_t i = 0; i < dim; ++i) {
            if (a[i].is_zero()) continue;
            GaussianRational ci = a[i].conj();
            for (std::size_t j = 0; j < dim; ++j) {
                const GaussianRational& s = star[i * dim + j];
                if (!s.is_zero()) r[j] += ci * s;
            }
        }
        return r;
    }

    void validate() const {
        if (sc.size() != dim * dim * dim) throw format_error("algebra: bad structure constants");
        if (star.size() != dim * dim) throw format_error("algebra: bad star matrix");
        for (std::size_t i = 0; i < dim; ++i) {
            // Involutive.
            if (star_of(star_of(basis_vec(i))) != basis_vec(i))
                throw format_error("algebra: star is not involutive");
            for (std::size_t j = 0; j < dim; ++j) {
                // Anti-multiplicative on the basis.
                Vec lhs = star_of(mult(basis_vec(i), basis_vec(j)));
                Vec rhs = mult(star_of(basis_vec(j)), star_of(basis_vec(i)));
                if (lhs != rhs) throw format_error("algebra: (ab)* != b* a*");
                // Associativity on basis triples.
                for (std::size_t k = 0; k < dim; ++k) {
                    Vec l = mult(mult(basis_vec(i), basis_vec(j)), basis_vec(k));
                    Vec r = mult(basis_vec(i), mult(basis_vec(j), basis_vec(k)));
                    if (l != r) throw format_error("algebra: associativity fails on basis");
                }
            }
        }
        if (unit) {
            if (unit->size() != dim) throw format_error("algebra: bad unit vector");
            for (std::size_t i = 0; i < dim; ++i) {
                if (mult(*unit, basis_vec(i)) != basis_vec(i) ||
                    mult(basis_vec(i), *unit) != basis_vec(i))
                    throw format_error("algebra: declared unit fails");
            }
        }
    }

    bool is_commutative() const {
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i + 1; j < dim; ++j)
                if (mult(basis_vec(i), basis_vec(j)) != mult(basis_vec(j), basis_vec(i)))
                    return false;
        return true;
    }

    std::size_t center_dim() const {
        // x central: e_i x - x e_i = 0 for all i; one linear system.
        std::vector<Vec> constraints;
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t k = 0; k < dim; ++k) {
                Vec row(dim, GaussianRational::zero());
                for (std::size_t j = 0; j < dim; ++j) row[j] = c(i, j, k) - c(j, i, k);
                constraints.push_back(std::move(row));
            }
        return RowSpace::nullspace(std::move(constraints), dim).size();
    }

    std::string label(std::size_t i) const {
        return labels.empty() ? "e" + std::to_string(i) : labels[i];
    }
};

// The function algebra K^n: pointwise product, entrywise conjugation.
inline StarAlgebra function_algebra(std::size_t n, std::vector<std::string> labels = {}) {
    StarAlgebra A;
    A.dim = n;
    A.sc.assign(n * n * n, GaussianRational::zero());
    A.star.assign(n * n, GaussianRational::zero());
    for (std::size_t i = 0; i < n; ++i) {
        A.c(i, i, i) = GaussianRational::one();
        A.star[i * n + i] = GaussianRational::one();
    }
    if (n > 0) A.unit = Vec(n, GaussianRational::one());
    A.labels = std::move(labels);
    return A;
}

// The full matrix algebra M_n with basis e_{ij} in row-major order.
inline StarAlgebra matrix_algebra(std::size_t n) {
    StarAlgebra A;
    std::size_t d = n * n;
    A.dim = d;
    A.sc.assign(d * d * d, GaussianRational::zero());
    A.star.assign(d * d, GaussianRational::zero());
    auto id = [n](std::size_t i, std::size_t j) { return i * n + j; };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    if (j == k) A.c(id(i, j), id(k, l), id(i, l)) = GaussianRational::one();
            A.star[id(i, j) * d + id(j, i)] = GaussianRational::one();
            A.labels.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
        }
    Vec u(d, GaussianRational::zero());
    for (std::size_t i = 0; i < n; ++i) u[id(i, i)] = GaussianRational::one();
    A.unit = u;
    return A;
}

// Is the subspace a two-sided self-adjoint ideal?
inline bool is_star_ideal(const StarAlgebra& A, const RowSpace& D) {
    for (auto& d : D.basis()) {
        if (!D.contains(A.star_of(d))) return false;
        for (std::size_t i = 0; i < A.dim; ++i) {
            if (!D.contains(A.mult(A.basis_vec(i), d))) return false;
            if (!D.contains(A.mult(d, A.basis_vec(i)))) return false;
        }
    }
    return true;
}

// No nonzero a in D with a d = d a = 0 for all d in D.  The zero ideal is
// non-degenerate by convention (the condition is vacuous).
inline bool is_nondegenerate(const StarAlgebra& A, const RowSpace& D) {
    std::size_t m = D.dim();
    if (m == 0) return true;
    // a = sum alpha_k d_k; constraints: a d_j = 0 and d_j a = 0, coordinatewise.
    std::vector<Vec> rows;
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<Vec> left(m), right(m);
        for (std::size_t k = 0; k < m; ++k) {
            left[k] = A.mult(D.basis()[k], D.basis()[j]);
            right[k] = A.mult(D.basis()[j], D.basis()[k]);
        }
        for (std::size_t coord = 0; coord < A.dim; ++coord) {
            Vec r1(m), r2(m);
            for (std::size_t k = 0; k < m; ++k) {
                r1[k] = left[k][coord];
                r2[k] = right[k][coord];
            }
            rows.push_back(std::move(r1));
            rows.push_back(std::move(r2));
        }
    }
    return RowSpace::nullspace(std::move(rows), m).empty();
}

// span(D . D) = D ?
inline bool is_idempotent_ideal(const StarAlgebra& A, const RowSpace& D) {
    RowSpace span(A.dim);
    for (auto& x : D.basis())
        for (auto& y : D.basis()) span.insert(A.mult(x, y));
    return span == D;
}

// Span closure of a set of vectors under the algebra product.
inline RowSpace subalgebra_span(const StarAlgebra& A, std::vector<Vec> gens) {
    RowSpace S(A.dim);
    for (auto& g : gens) S.insert(g);
    bool grew = true;
    while (grew) {
        grew = false;
        auto base = S.basis();
        for (auto& x : base)
            for (auto& y : base)
                if (S.insert(A.mult(x, y))) grew = true;
    }
    return S;
}

}  // namespace partact

#pragma once

#include <functional>
#include <map>
#include <memory>

#include "partact/crossed_product.hpp"
#include "partact/group.hpp"
#include "partact/partial_rep.hpp"

namespace partact {

// A Fell bundle over a finite group, with finite-dimensional fibers living
// inside an ambient *-algebra.  The ambient is abstract: a coordinate space
// with a product and an involution.
struct FellBundle {
    Group group = Group::z_trunc(1);
    std::size_t ambient_dim = 0;
    std::function<Vec(const Vec&, const Vec&)> mult;
    std::function<Vec(const Vec&)> star;
    std::map<int, RowSpace> fibers;
    bool unit_fiber_is_function_algebra = false;  // adapted idempotent basis
    // Fibers of a bundle sourced from a grading are independent subspaces;
    // for bundles built from a representation's fiber spans they may overlap
    // inside the ambient algebra (the total space is a disjoint union).
    bool from_grading = true;

    const RowSpace& fiber(int g) const {
        auto it = fibers.find(g);
        if (it == fibers.end()) throw precondition_error("fell bundle: missing fiber");
        return it->second;
    }
    std::size_t total_dim() const {
        std::size_t n = 0;
        for (auto& [g, f] : fibers) n += f.dim();
        return n;
    }

    // B_g B_h <= B_{gh}, B_g* <= B_{g^-1}, independence of the fibers.
    void check_axioms() const {
        const Group& G = group;
        RowSpace sum(ambient_dim);
        std::size_t dims = 0;
        for (int g : G.elements()) {
            const RowSpace& Bg = fiber(g);
            dims += Bg.dim();
            for (auto& b : Bg.basis()) {
                sum.insert(b);
                if (!fiber(G.inverse(g)).contains(star(b)))
                    throw consistency_error("fell bundle: B_g* escapes B_{g^-1}");
                for (int h : G.elements())
                    for (auto& c : fiber(h).basis())
                        if (!fiber(G.op(g, h)).contains(mult(b, c)))
                            throw consistency_error("fell bundle: B_g B_h escapes B_{gh}");
            }
        }
        if (from_grading && sum.dim() != dims)
            throw consistency_error("fell bundle: fibers are not independent");
    }
};

// The semi-direct product bundle of an algebraic partial action: the fibers
// D_g d_g inside the crossed product.
inline FellBundle semidirect_bundle(const AlgPartialAction& act) {
    if (!act.group.is_finite())
        throw precondition_error("semidirect_bundle: finite groups only");
    CrossedProduct cp = crossed_product(act);
    FellBundle b;
    b.group = act.group;
    b.ambient_dim = cp.algebra.dim;
    auto algebra = std::make_shared<StarAlgebra>(cp.algebra);
    b.mult = [algebra](const Vec& x, const Vec& y) { return algebra->mult(x, y); };
    b.star = [algebra](const Vec& x) { return algebra->star_of(x); };
    for (int g : act.group.elements()) {
        RowSpace f(b.ambient_dim);
        for (auto k : cp.grading.at(g)) f.insert(cp.algebra.basis_vec(k));
        b.fibers[g] = f;
    }
    // Coefficients are functions whenever the coefficient algebra is K^X.
    b.unit_fiber_is_function_algebra = act.algebra.is_commutative();
    b.check_axioms();
    return b;
}

// The group bundle: one-dimensional fibers over a finite group, with the
// group algebra as ambient.
inline FellBundle group_bundle(const Group& G) {
    if (!G.is_finite()) throw precondition_error("group_bundle: finite groups only");
    std::size_t n = G.order();
    auto Gp = std::make_shared<Group>(G);
    FellBundle b;
    b.group = G;
    b.ambient_dim = n;
    b.mult = [Gp, n](const Vec& x, const Vec& y) {
        Vec r(n, GaussianRational::zero());
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!y[j].is_zero())
                    r[Gp->op(static_cast<int>(i), static_cast<int>(j))] += x[i] * y[j];
        }
        return r;
    };
    b.star = [Gp, n](const Vec& x) {
        Vec r(n, GaussianRational::zero());
        for (std::size_t i = 0; i < n; ++i)
            r[Gp->inverse(static_cast<int>(i))] = x[i].conj();
        return r;
    };
    for (int g : G.elements()) {
        RowSpace f(n);
        Vec v(n, GaussianRational::zero());
        v[g] = GaussianRational::one();
        f.insert(v);
        b.fibers[g] = f;
    }
    b.unit_fiber_is_function_algebra = true;
    b.check_axioms();
    return b;
}

// The bundle generated by a partial representation: fiber g is spanned by the
// products u_{h_1} ... u_{h_n} with h_1 ... h_n = g, inside the matrices.
inline FellBundle bundle_from_prep(const PartialRep& r) {
    auto ok = validate_prep(r);
    if (!ok) throw precondition_error("bundle_from_prep: invalid rep: " + ok.violation);
    const Group& G = r.group;
    std::size_t n = r.degree();
    auto flat = [n](const ExactMatrix& m) {
        Vec v;
        v.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) v.push_back(m.at(i, j));
        return v;
    };
    auto unflat = [n](const Vec& v) {
        ExactMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = v[i * n + j];
        return m;
    };
    FellBundle b;
    b.group = G;
    b.ambient_dim = n * n;
    b.from_grading = false;
    b.mult = [flat, unflat](const Vec& x, const Vec& y) { return flat(unflat(x) * unflat(y)); };
    b.star = [flat, unflat](const Vec& x) { return flat(unflat(x).adjoint()); };

    // Saturate per-fiber spans: start with the singleton products u_g placed
    // at g, grow by right-multiplying generators until stable.
    std::map<int, RowSpace> fib;
    for (int g : G.elements()) fib.emplace(g, RowSpace(n * n));
    std::vector<std::pair<int, ExactMatrix>> frontier;
    for (int g : G.elements())
        if (fib.at(g).insert(flat(r.at(g)))) frontier.emplace_back(g, r.at(g));
    while (!frontier.empty()) {
        std::vector<std::pair<int, ExactMatrix>> next;
        for (auto& [g, m] : frontier)
            for (int h : G.elements()) {
                int gh = G.op(g, h);
                ExactMatrix p = m * r.at(h);
                if (fib.at(gh).insert(flat(p))) next.emplace_back(gh, p);
            }
        frontier.swap(next);
    }
    b.fibers = std::move(fib);
    b.check_axioms();

    // Unit fiber is abelian and u_g B_1 = B_g = B_1 u_g.
    const RowSpace& B1 = b.fiber(G.unit());
    for (auto& x : B1.basis())
        for (auto& y : B1.basis())
            if (b.mult(x, y) != b.mult(y, x))
                throw consistency_error("bundle_from_prep: unit fiber is not abelian");
    for (int g : G.elements()) {
        RowSpace left(n * n), right(n * n);
        for (auto& x : B1.basis()) {
            left.insert(flat(r.at(g) * unflat(x)));
            right.insert(flat(unflat(x) * r.at(g)));
        }
        if (!(left == b.fiber(g)) || !(right == b.fiber(g)))
            throw consistency_error("bundle_from_prep: u_g B_1 = B_g = B_1 u_g fails");
    }
    return b;
}

// A finitely supported section of the bundle.
struct Section {
    std::map<int, Vec> values;  // g -> element of B_g (ambient coordinates)
};

inline void check_section(const FellBundle& b, const Section& y) {
    for (auto& [g, v] : y.values)
        if (!b.fiber(g).contains(v))
            throw precondition_error("section: value escapes its fiber");
}

// (y * z)_g = sum_h y_h z_{h^-1 g}
inline Section convolve(const FellBundle& b, const Section& y, const Section& z) {
    check_section(b, y);
    check_section(b, z);
    Section out;
    for (auto& [h, yh] : y.values)
        for (auto& [k, zk] : z.values) {
            int g = b.group.op(h, k);
            Vec prod = b.mult(yh, zk);
            auto it = out.values.find(g);
            if (it == out.values.end())
                out.values[g] = prod;
            else
                it->second = vec_add(it->second, prod);
        }
    return out;
}

// y*_g = (y_{g^-1})*
inline Section section_star(const FellBundle& b, const Section& y) {
    check_section(b, y);
    Section out;
    for (auto& [g, v] : y.values) out.values[b.group.inverse(g)] = b.star(v);
    return out;
}

// The B_1-valued inner product <y, z> = sum_g (y_g)* z_g.
inline Vec section_pairing(const FellBundle& b, const Section& y, const Section& z) {
    Vec r(b.ambient_dim, GaussianRational::zero());
    for (auto& [g, yg] : y.values) {
        auto it = z.values.find(g);
        if (it != z.values.end()) r = vec_add(r, b.mult(b.star(yg), it->second));
    }
    return r;
}

// The regular representation on the coordinate direct sum of the fibers:
// lambda_g(b) j_h(c) = j_{gh}(b c).  Returns the matrix in the basis indexed
// by (h, fiber-basis index), ordered by group element then index.
class RegularRepresentation {
public:
    explicit RegularRepresentation(const FellBundle& b) : bundle_(&b) {
        for (int g : b.group.elements()) {
            offsets_[g] = total_;
            total_ += b.fiber(g).dim();
        }
    }

    std::size_t total_dim() const { return total_; }
    std::size_t offset(int g) const { return offsets_.at(g); }

    ExactMatrix lambda(int g, const Vec& b) const {
        const FellBundle& B = *bundle_;
        if (!B.fiber(g).contains(b))
            throw precondition_error("lambda: element does not lie in its fiber");
        ExactMatrix m(total_, total_);
        for (int h : B.group.elements()) {
            int gh = B.group.op(g, h);
            const RowSpace& src = B.fiber(h);
            const RowSpace& dst = B.fiber(gh);
            for (std::size_t j = 0; j < src.dim(); ++j) {
                Vec img = B.mult(b, src.basis()[j]);
                auto coords = dst.coordinates(img);
                if (!coords)
                    throw consistency_error("lambda: product escapes the target fiber");
                for (std::size_t i = 0; i < dst.dim(); ++i)
                    m.at(offsets_.at(gh) + i, offsets_.at(h) + j) = (*coords)[i];
            }
        }
        return m;
    }

    // The matrix of sum_h lambda_h(y_h).
    ExactMatrix lambda_of_section(const Section& y) const {
        ExactMatrix m(total_, total_);
        for (auto& [h, v] : y.values) m = m + lambda(h, v);
        return m;
    }

    // Recovers the section with z = sum_h lambda_h(y_h), or throws if z is
    // not in the span of the lambdas.
    Section section_of_lambda(const ExactMatrix& z) const {
        const FellBundle& B = *bundle_;
        // Solve in the flattened matrix space against the lambda images of all
        // fiber basis vectors.
        std::size_t N = total_ * total_;
        std::vector<std::pair<int, Vec>> gens;  // (g, fiber basis vector)
        std::vector<Vec> flat;
        for (int g : B.group.elements())
            for (auto& bvec : B.fiber(g).basis()) {
                ExactMatrix L = lambda(g, bvec);
                Vec v;
                v.reserve(N);
                for (std::size_t i = 0; i < total_; ++i)
                    for (std::size_t j = 0; j < total_; ++j) v.push_back(L.at(i, j));
                gens.emplace_back(g, bvec);
                flat.push_back(std::move(v));
            }
        // Gaussian solve: find coefficients c with sum c_k flat_k = z.
        std::size_t m = flat.size();
        std::vector<Vec> rows;
        for (std::size_t coord = 0; coord < N; ++coord) {
            Vec row(m + 1);
            for (std::size_t k = 0; k < m; ++k) row[k] = flat[k][coord];
            row[m] = z.at(coord / total_, coord % total_);
            rows.push_back(std::move(row));
        }
        std::vector<Vec> red;
        std::vector<std::size_t> piv;
        for (auto& r0 : rows) {
            Vec r = r0;
            for (std::size_t k = 0; k < red.size(); ++k)
                if (!r[piv[k]].is_zero()) r = vec_sub(r, vec_scale(r[piv[k]], red[k]));
            std::size_t p = 0;
            while (p < m && r[p].is_zero()) ++p;
            if (p == m) {
                if (!r[m].is_zero())
                    throw precondition_error("fourier: element is not in the span of lambda");
                continue;
            }
            r = vec_scale(GaussianRational::one() / r[p], r);
            for (std::size_t k = 0; k < red.size(); ++k)
                if (!red[k][p].is_zero()) red[k] = vec_sub(red[k], vec_scale(red[k][p], r));
            red.push_back(r);
            piv.push_back(p);
        }
        Vec coeff(m, GaussianRational::zero());
        for (std::size_t k = 0; k < red.size(); ++k) coeff[piv[k]] = red[k][m];
        Section y;
        for (std::size_t k = 0; k < m; ++k) {
            if (coeff[k].is_zero()) continue;
            auto& [g, bvec] = gens[k];
            Vec scaled = vec_scale(coeff[k], bvec);
            auto it = y.values.find(g);
            if (it == y.values.end())
                y.values[g] = scaled;
            else
                it->second = vec_add(it->second, scaled);
        }
        return y;
    }

private:
    const FellBundle* bundle_;
    std::map<int, std::size_t> offsets_;
    std::size_t total_ = 0;
};

// Fourier coefficient E_g of a section (trivial) or of a matrix in the range
// of the regular representation (solved exactly).
inline Vec fourier(const FellBundle& b, const Section& y, int g) {
    auto it = y.values.find(g);
    if (it == y.values.end()) return Vec(b.ambient_dim, GaussianRational::zero());
    return it->second;
}
inline Vec fourier(const FellBundle& b, const RegularRepresentation& reg, const ExactMatrix& z,
                   int g) {
    return fourier(b, reg.section_of_lambda(z), g);
}

struct GradingVerdict {
    bool ok = true;
    bool faithful_checked = false;  // only decidable over function-algebra fibers
    bool faithful = false;
    std::string violation;
    explicit operator bool() const { return ok; }
};

// Checks that declared subspaces with a conditional-expectation candidate F
// form a topological grading: independence, F identity on B_1 and zero on the
// other fibers (precondition), the bimodule and idempotence laws of a
// conditional expectation, plus faithfulness of E_1 where decidable.
inline GradingVerdict topological_grading_check(const FellBundle& b, const LinearMap& F) {
    GradingVerdict v;
    const Group& G = b.group;
    if (F.dim != b.ambient_dim) {
        v.ok = false;
        v.violation = "F has the wrong ambient dimension";
        return v;
    }
    // Preconditions: identity on B_1, zero on B_g for g != 1.
    for (auto& x : b.fiber(G.unit()).basis())
        if (F.apply(x) != x) {
            v.ok = false;
            v.violation = "F is not the identity on the unit fiber";
            return v;
        }
    for (int g : G.elements()) {
        if (g == G.unit()) continue;
        for (auto& x : b.fiber(g).basis())
            if (!vec_is_zero(F.apply(x))) {
                v.ok = false;
                v.violation = "F does not vanish on fiber " + G.label(g);
                return v;
            }
    }
    // Independence.
    RowSpace sum(b.ambient_dim);
    std::size_t dims = 0;
    for (int g : G.elements()) {
        dims += b.fiber(g).dim();
        for (auto& x : b.fiber(g).basis()) sum.insert(x);
    }
    if (sum.dim() != dims) {
        v.ok = false;
        v.violation = "fibers are not independent";
        return v;
    }
    // Conditional expectation laws on the span: F o F = F and the
    // B_1-bimodule property F(a x) = a F(x), F(x a) = F(x) a.
    for (int g : G.elements())
        for (auto& x : b.fiber(g).basis()) {
            if (F.apply(F.apply(x)) != F.apply(x)) {
                v.ok = false;
                v.violation = "F is not idempotent";
                return v;
            }
            for (auto& a : b.fiber(G.unit()).basis()) {
                if (F.apply(b.mult(a, x)) != b.mult(a, F.apply(x)) ||
                    F.apply(b.mult(x, a)) != b.mult(F.apply(x), a)) {
                    v.ok = false;
                    v.violation = "F is not a B_1-bimodule map";
                    return v;
                }
            }
        }
    // Faithfulness of E_1 on z*z: decidable over function-algebra fibers,
    // where sum_g y_g* y_g has nonnegative diagonal values and vanishes only
    // if every y_g does.  Otherwise left unchecked.
    if (b.unit_fiber_is_function_algebra) {
        v.faithful_checked = true;
        v.faithful = true;
    }
    return v;
}

// Is a nonnegative rational a sum of two rational squares?  Equivalent to
// every prime = 3 (mod 4) dividing numerator*denominator to an even power.
// Factoring is by trial division; huge cofactors yield "undecided".
enum class TwoSquares { yes, no, undecided };

inline TwoSquares sum_of_two_rational_squares(const Rational& r, long trial_bound = 100000) {
    if (r < 0) return TwoSquares::no;
    if (r == 0) return TwoSquares::yes;
    Integer n = numerator(r) * denominator(r);
    for (long p = 2; p <= trial_bound && n > 1; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (p % 4 == 3 && e % 2 == 1) return TwoSquares::no;
    }
    if (n == 1) return TwoSquares::yes;
    // A prime cofactor can still be classified by its residue.
    if (n % 4 == 3) return TwoSquares::no;  // = 3 mod 4 to the first power
    return TwoSquares::undecided;
}

struct PositivityVerdict {
    bool checked = false;  // only over function-algebra unit fibers
    bool ok = false;
    bool undecided_values = false;
    std::string witness;
};

// b* b = a* a solvability for the fiber basis elements.  Over a function
// algebra the coordinates of b* b in the idempotent basis are the values of
// the function, and solvability is valuewise: each value must be a sum of
// two rational squares (the norms of Q(i)).  Elsewhere: recorded unchecked.
inline PositivityVerdict positivity_check(const FellBundle& b) {
    PositivityVerdict v;
    if (!b.unit_fiber_is_function_algebra) return v;
    v.checked = true;
    v.ok = true;
    for (int g : b.group.elements())
        for (auto& x : b.fiber(g).basis()) {
            Vec sq = b.mult(b.star(x), x);
            if (!b.fiber(b.group.unit()).contains(sq)) {
                v.ok = false;
                v.witness = "b* b escapes the unit fiber";
                return v;
            }
            for (auto& value : sq) {
                if (value.im != 0 || value.re < 0) {
                    v.ok = false;
                    v.witness = "b* b has a value outside the nonnegative reals";
                    return v;
                }
                switch (sum_of_two_rational_squares(value.re)) {
                    case TwoSquares::no:
                        v.ok = false;
                        v.witness = "value " + rational_to_string(value.re) +
                                    " is not a norm from Q(i)";
                        return v;
                    case TwoSquares::undecided:
                        v.undecided_values = true;
                        break;
                    default:
                        break;
                }
            }
        }
    return v;
}

struct SaturationVerdict {
    bool saturated = false;
    bool semi_saturated = false;
    bool semi_saturated_checked = false;
};

inline SaturationVerdict saturation_predicates(const FellBundle& b,
                                               const LengthFunction* length = nullptr) {
    SaturationVerdict v;
    const Group& G = b.group;
    v.saturated = true;
    if (length) {
        v.semi_saturated = true;
        v.semi_saturated_checked = true;
    }
    for (int g : G.elements())
        for (int h : G.elements()) {
            RowSpace span(b.ambient_dim);
            for (auto& x : b.fiber(g).basis())
                for (auto& y : b.fiber(h).basis()) span.insert(b.mult(x, y));
            bool equal = span == b.fiber(G.op(g, h));
            if (!equal) v.saturated = false;
            if (!equal && length && length->at(G.op(g, h)) == length->at(g) + length->at(h))
                v.semi_saturated = false;
        }
    return v;
}

}  // namespace partact

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "partact/alg_action.hpp"
#include "partact/free_word.hpp"
#include "partact/group.hpp"
#include "partact/partial_isometry.hpp"
#include "partact/star_algebra.hpp"

namespace partact {

struct PrepVerdict {
    bool ok = true;
    std::size_t word_bound = 0;  // 0 = exhaustive over a finite group
    std::string violation;

    explicit operator bool() const { return ok; }
    static PrepVerdict fail(std::string msg, std::size_t bound = 0) {
        return {false, bound, std::move(msg)};
    }
};

// A partial representation of a finite group by exact matrices:
// u_1 = 1, u_g u_h u_{h^-1} = u_{gh} u_{h^-1}, u_{g^-1} u_g u_h = u_{g^-1} u_{gh},
// u_{g^-1} = u_g*.
struct PartialRep {
    Group group = Group::z_trunc(1);
    std::map<int, ExactMatrix> values;
    // Compressions live on the corner p B p whose unit is p.
    std::optional<ExactMatrix> corner_unit;
    bool degenerate = false;  // compressed by the zero projection

    const ExactMatrix& at(int g) const {
        auto it = values.find(g);
        if (it == values.end()) throw precondition_error("partial rep: missing value");
        return it->second;
    }
    ExactMatrix e(int g) const { return at(g) * at(group.inverse(g)); }
    ExactMatrix unit() const {
        return corner_unit ? *corner_unit : ExactMatrix::identity(degree());
    }
    std::size_t degree() const { return values.begin()->second.rows(); }
};

// A partial representation of a free group, stored by generator images and
// evaluated semi-saturatedly along reduced words.
struct FreePartialRep {
    std::vector<std::string> names;
    std::vector<ExactMatrix> gens;
    std::size_t degree = 0;

    ExactMatrix value(const FreeWord& w) const {
        ExactMatrix m = ExactMatrix::identity(degree);
        for (auto& l : w.letters()) {
            std::size_t i = 0;
            while (i < names.size() && names[i] != l.gen) ++i;
            if (i == names.size()) throw precondition_error("free rep: unknown generator " + l.gen);
            m = m * (l.sign > 0 ? gens[i] : gens[i].adjoint());
        }
        return m;
    }
    ExactMatrix e(const FreeWord& w) const { return value(w) * value(w.inverse()); }
};

namespace detail {
// Axioms plus the derived identities, over any indexable family of elements
// with multiplication, star, unit and an equality test.
template <typename Elem, typename Mul, typename Star, typename Eq>
PrepVerdict check_prep_axioms(const Group& G, const std::map<int, Elem>& u, const Elem& unit,
                              Mul mul, Star star, Eq eq) {
    auto at = [&](int g) -> const Elem& {
        auto it = u.find(g);
        if (it == u.end()) throw precondition_error("partial rep: missing value");
        return it->second;
    };
    if (!eq(at(G.unit()), unit)) return PrepVerdict::fail("u_1 != 1");
    for (int g : G.elements())
        if (!eq(at(G.inverse(g)), star(at(g))))
            return PrepVerdict::fail("u_{g^-1} != u_g* at g=" + G.label(g));
    auto e = [&](int g) { return mul(at(g), at(G.inverse(g))); };
    for (int g : G.elements()) {
        // u_g u_{g^-1} u_g = u_g
        if (!eq(mul(e(g), at(g)), at(g)))
            return PrepVerdict::fail("u_g u_{g^-1} u_g != u_g at g=" + G.label(g));
        for (int h : G.elements()) {
            int gh = G.op(g, h);
            Elem lhs = mul(mul(at(g), at(h)), at(G.inverse(h)));
            Elem rhs = mul(at(gh), at(G.inverse(h)));
            if (!eq(lhs, rhs))
                return PrepVerdict::fail("u_g u_h u_{h^-1} != u_{gh} u_{h^-1} at g=" +
                                         G.label(g) + ", h=" + G.label(h));
            Elem lhs2 = mul(at(G.inverse(g)), mul(at(g), at(h)));
            Elem rhs2 = mul(at(G.inverse(g)), at(gh));
            if (!eq(lhs2, rhs2))
                return PrepVerdict::fail("u_{g^-1} u_g u_h != u_{g^-1} u_{gh} at g=" +
                                         G.label(g) + ", h=" + G.label(h));
            // Derived: u_g e_h = e_{gh} u_g;  e_g e_h = e_h e_g;  u_g u_h = e_g u_{gh}.
            if (!eq(mul(at(g), e(h)), mul(e(gh), at(g))))
                return PrepVerdict::fail("u_g e_h != e_{gh} u_g at g=" + G.label(g) + ", h=" +
                                         G.label(h));
            if (!eq(mul(e(g), e(h)), mul(e(h), e(g))))
                return PrepVerdict::fail("e_g e_h != e_h e_g at g=" + G.label(g) + ", h=" +
                                         G.label(h));
            if (!eq(mul(at(g), at(h)), mul(e(g), at(gh))))
                return PrepVerdict::fail("u_g u_h != e_g u_{gh} at g=" + G.label(g) + ", h=" +
                                         G.label(h));
        }
    }
    return {};
}
}  // namespace detail

inline PrepVerdict validate_prep(const PartialRep& r) {
    if (!r.group.is_finite()) throw precondition_error("validate_prep: finite group expected");
    if (r.degenerate) {
        // Zero compression: all values vanish; accepted as the rep on the zero corner.
        for (auto& [g, m] : r.values)
            if (!m.is_zero()) return PrepVerdict::fail("degenerate rep with nonzero value");
        return {};
    }
    return detail::check_prep_axioms(
        r.group, r.values, r.unit(),
        [](const ExactMatrix& a, const ExactMatrix& b) { return a * b; },
        [](const ExactMatrix& a) { return a.adjoint(); },
        [](const ExactMatrix& a, const ExactMatrix& b) { return a == b; });
}

// Partial-rep axioms for elements of an abstract *-algebra (used for the
// canonical generators of partial group algebras).
inline PrepVerdict validate_prep_in_algebra(const StarAlgebra& A, const Group& G,
                                            const std::map<int, Vec>& u) {
    if (!A.unit) throw precondition_error("validate_prep_in_algebra: algebra must be unital");
    return detail::check_prep_axioms(
        G, u, *A.unit, [&](const Vec& a, const Vec& b) { return A.mult(a, b); },
        [&](const Vec& a) { return A.star_of(a); },
        [](const Vec& a, const Vec& b) { return a == b; });
}

// Bounded validation of a free-group rep: axioms checked on all pairs of
// reduced words of length <= word_bound; the bound is part of the verdict.
inline PrepVerdict validate_free_prep(const FreePartialRep& r, std::size_t word_bound) {
    std::vector<FreeWord> words = {FreeWord()};
    {
        std::vector<FreeWord> layer = words;
        for (std::size_t len = 1; len <= word_bound; ++len) {
            std::vector<FreeWord> next;
            for (auto& w : layer)
                for (auto& name : r.names)
                    for (int sign : {1, -1}) {
                        FreeWord x = w * FreeWord::generator(name, sign);
                        if (x.length() == len) next.push_back(x);
                    }
            words.insert(words.end(), next.begin(), next.end());
            layer.swap(next);
        }
    }
    ExactMatrix id = ExactMatrix::identity(r.degree);
    if (r.value(FreeWord()) != id) return PrepVerdict::fail("u_1 != 1", word_bound);
    for (auto& g : words) {
        if (r.value(g.inverse()) != r.value(g).adjoint())
            return PrepVerdict::fail("u_{g^-1} != u_g*", word_bound);
        for (auto& h : words) {
            ExactMatrix ug = r.value(g), uh = r.value(h), uhi = r.value(h.inverse());
            ExactMatrix ugh = r.value(g * h);
            if (ug * uh * uhi != ugh * uhi)
                return PrepVerdict::fail("u_g u_h u_{h^-1} != u_{gh} u_{h^-1}", word_bound);
            if (r.value(g.inverse()) * ug * uh != r.value(g.inverse()) * ugh)
                return PrepVerdict::fail("u_{g^-1} u_g u_h != u_{g^-1} u_{gh}", word_bound);
            // Semi-saturation: no cancellation means the product is on the nose.
            if (FreeWord::cancellation_count(g, h) == 0 && ug * uh != ugh)
                return PrepVerdict::fail("semi-saturation fails", word_bound);
        }
    }
    return {.ok = true, .word_bound = word_bound, .violation = ""};
}

// The semi-saturated partial representation of the free group generated by a
// tame family of partial isometries.
inline FreePartialRep prep_from_tame(const std::vector<ExactMatrix>& S,
                                     std::vector<std::string> names, std::size_t bound) {
    auto tv = is_tame(S, bound);
    if (!tv.tame) throw precondition_error("prep_from_tame: generators are not tame");
    if (names.size() != S.size()) throw precondition_error("prep_from_tame: name count");
    FreePartialRep r;
    r.names = std::move(names);
    r.gens = S;
    r.degree = S.empty() ? 0 : S.front().rows();
    auto v = validate_free_prep(r, std::min<std::size_t>(bound, 3));
    if (!v) throw consistency_error("prep_from_tame: axioms fail: " + v.violation);
    return r;
}

// Compression of a unitary representation by a projection p with
// v_g p v_{g^-1} commuting with p: u_g = p v_g p on the corner.
inline PartialRep compress(const PartialRep& v, const ExactMatrix& p) {
    if (!is_projection(p)) throw precondition_error("compress: p is not a projection");
    if (!v.group.is_finite()) throw precondition_error("compress: finite group expected");
    for (int g : v.group.elements()) {
        const ExactMatrix& vg = v.at(g);
        if (vg * vg.adjoint() != ExactMatrix::identity(p.rows()))
            throw precondition_error("compress: input is not a unitary representation");
        ExactMatrix c = vg * p * v.at(v.group.inverse(g));
        if (c * p != p * c)
            throw precondition_error("compress: v_g p v_{g^-1} does not commute with p at g=" +
                                     v.group.label(g));
    }
    PartialRep u;
    u.group = v.group;
    for (int g : v.group.elements()) u.values[g] = p * v.at(g) * p;
    u.corner_unit = p;
    u.degenerate = p.is_zero();
    auto ok = validate_prep(u);
    if (!ok) throw consistency_error("compress: result fails axioms: " + ok.violation);
    return u;
}

// The algebraic partial dynamical system induced by a partial representation:
// A = algebra generated by the e_g, D_g = A e_g, theta_g = u_g . u_{g^-1}.
// A is abelian.  The returned action is expressed on an abstract basis of A.
struct InducedSystem {
    AlgPartialAction action;
    std::vector<Vec> e_in_basis;      // coordinates of e_g in the abstract algebra
    RowSpace matrix_span;             // the concrete span of A inside matrices
    std::vector<ExactMatrix> basis_matrices;
};

inline InducedSystem induced_system(const PartialRep& r) {
    auto ok = validate_prep(r);
    if (!ok) throw precondition_error("induced_system: invalid rep: " + ok.violation);
    const Group& G = r.group;
    std::size_t n = r.degree();
    auto flatten = [&](const ExactMatrix& m) {
        Vec v;
        v.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) v.push_back(m.at(i, j));
        return v;
    };
    auto unflatten = [&](const Vec& v) {
        ExactMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = v[i * n + j];
        return m;
    };

    // Span closure of { 1, e_g } under products (terminates: finite dim).
    std::vector<ExactMatrix> gens = {ExactMatrix::identity(n)};
    for (int g : G.elements()) gens.push_back(r.e(g));
    RowSpace span(n * n);
    std::vector<ExactMatrix> basis;
    auto add = [&](const ExactMatrix& m) {
        if (span.insert(flatten(m))) basis.push_back(m);
    };
    for (auto& m : gens) add(m);
    bool grew = true;
    while (grew) {
        grew = false;
        std::size_t before = basis.size();
        for (std::size_t i = 0; i < before; ++i)
            for (std::size_t j = 0; j < before; ++j) add(basis[i] * basis[j]);
        grew = basis.size() != before;
    }
    // Recompute a clean basis list in the RREF order so coordinates() aligns.
    basis.clear();
    for (auto& row : span.basis()) basis.push_back(unflatten(row));

    std::size_t d = basis.size();
    StarAlgebra A;
    A.dim = d;
    A.sc.assign(d * d * d, GaussianRational::zero());
    A.star.assign(d * d, GaussianRational::zero());
    auto coords = [&](const ExactMatrix& m) {
        auto c = span.coordinates(flatten(m));
        if (!c) throw consistency_error("induced_system: product escapes the span");
        return *c;
    };
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            Vec c = coords(basis[i] * basis[j]);
            for (std::size_t k = 0; k < d; ++k) A.c(i, j, k) = c[k];
        }
        Vec st = coords(basis[i].adjoint());
        for (std::size_t k = 0; k < d; ++k) A.star[i * d + k] = st[k];
    }
    A.unit = coords(ExactMatrix::identity(n));
    A.validate();
    if (!A.is_commutative())
        throw consistency_error("induced_system: the idempotent algebra must be abelian");

    InducedSystem sys;
    sys.matrix_span = span;
    sys.basis_matrices = basis;
    sys.action.group = G;
    sys.action.algebra = A;
    for (int g : G.elements()) sys.e_in_basis.push_back(coords(r.e(g)));

    for (int g : G.elements()) {
        // D_g = A e_g.
        RowSpace D(d);
        for (std::size_t i = 0; i < d; ++i) D.insert(coords(basis[i] * r.e(g)));
        sys.action.domains[g] = D;
        LinearMap theta = LinearMap::zero(d);
        for (std::size_t i = 0; i < d; ++i)
            theta.col[i] = coords(r.at(g) * basis[i] * r.at(G.inverse(g)));
        sys.action.maps[g] = theta;
    }
    auto aok = validate_alg_action(sys.action);
    if (!aok) throw consistency_error("induced_system: invalid action: " + aok.violation);
    return sys;
}

// Is u_h* u_h = 1 (left invertibility)?  Then u_g u_h = u_{gh} for all g.
inline bool regard_disregard_holds(const PartialRep& r) {
    auto ok = validate_prep(r);
    if (!ok) throw precondition_error("regard_disregard: invalid rep: " + ok.violation);
    if (r.degenerate) return true;
    std::size_t n = r.degree();
    for (int h : r.group.elements()) {
        if (r.at(r.group.inverse(h)) * r.at(h) != ExactMatrix::identity(n)) continue;
        for (int g : r.group.elements())
            if (r.at(g) * r.at(h) != r.at(r.group.op(g, h))) return false;
    }
    return true;
}

// Equivalence of the axioms with:  u_1 = 1, u_{g^-1} = u_g*, and
// u_g u_h dominated by u_{gh} in the partial isometry order.
inline bool charac_via_inequality(const PartialRep& r) {
    if (r.degenerate) return static_cast<bool>(validate_prep(r));
    std::size_t n = r.degree();
    bool ineq = true;
    if (r.at(r.group.unit()) != ExactMatrix::identity(n)) ineq = false;
    for (int g : r.group.elements()) {
        if (!ineq) break;
        if (r.at(r.group.inverse(g)) != r.at(g).adjoint()) {
            ineq = false;
            break;
        }
        for (int h : r.group.elements()) {
            ExactMatrix prod = r.at(g) * r.at(h);
            ExactMatrix ugh = r.at(r.group.op(g, h));
            if (!is_partial_isometry(prod) || !is_partial_isometry(ugh) ||
                !piso_leq(prod, ugh)) {
                ineq = false;
                break;
            }
        }
    }
    return ineq == static_cast<bool>(validate_prep(r));
}

}  // namespace partact

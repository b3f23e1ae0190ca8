#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "partact/covariant.hpp"
#include "partact/crossed_product.hpp"
#include "partact/partial_action.hpp"

namespace partact {

// A polynomial relation in the commuting idempotents e_g: a sum of terms
// coef * e_{g_1} ... e_{g_k}.  Evaluated at 0/1 assignments.
struct RelationTerm {
    Rational coef;
    std::vector<int> vars;  // group elements
};
struct RelationPoly {
    std::vector<RelationTerm> terms;
};
struct RelationSet {
    std::vector<RelationPoly> relations;
};

// Subsets of a finite group as bitmasks over element indices.
inline std::vector<std::uint32_t> omega1_masks(const Group& G) {
    if (!G.is_finite()) throw precondition_error("omega1: finite group expected");
    std::size_t n = G.order();
    if (n > 20) throw precondition_error("omega1: group too large to enumerate");
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 0; m < (1u << n); ++m)
        if (m & (1u << G.unit())) masks.push_back(m);
    return masks;
}

inline Rational eval_relation(const RelationPoly& p, const std::vector<int>& truth) {
    Rational v = 0;
    for (auto& t : p.terms) {
        bool all = true;
        for (int g : t.vars)
            if (!truth[g]) {
                all = false;
                break;
            }
        if (all) v += t.coef;
    }
    return v;
}

// Spectrum of a relation set: subsets w containing 1 such that every relation
// vanishes when evaluated with e_h -> [h in g^-1 w], for every g in w.  The
// result is invariant under the partial Bernoulli action; this is asserted.
inline std::vector<std::uint32_t> spectrum(const Group& G, const RelationSet& R) {
    auto masks = omega1_masks(G);
    auto elems = G.elements();
    std::vector<std::uint32_t> out;
    auto member = [&](std::uint32_t m, int g) { return (m >> g) & 1u; };
    for (auto m : masks) {
        bool good = true;
        for (int g : elems) {
            if (!member(m, g)) continue;
            // truth values for g^-1 w:  h in g^-1 w  iff  g h in w.
            std::vector<int> truth(G.order());
            for (int h : elems) truth[h] = member(m, G.op(g, h));
            for (auto& f : R.relations)
                if (eval_relation(f, truth) != 0) {
                    good = false;
                    break;
                }
            if (!good) break;
        }
        if (good) out.push_back(m);
    }
    // Bernoulli invariance: for w in the spectrum with g^-1 in w, g w stays in.
    std::set<std::uint32_t> in(out.begin(), out.end());
    for (auto m : out)
        for (int g : elems) {
            if (!member(m, G.inverse(g))) continue;
            std::uint32_t t = 0;
            for (int h : elems)
                if (member(m, h)) t |= (1u << G.op(g, h));
            if (!in.count(t))
                throw consistency_error("spectrum: result is not Bernoulli-invariant");
        }
    return out;
}

// The commutative algebra of functions on Omega_1 together with the
// idempotent generators eps_g = indicator of { w : g in w }.
struct AParAlgebra {
    StarAlgebra algebra;                 // functions on Omega_1, pointwise
    std::vector<std::uint32_t> masks;    // point order
    std::vector<Vec> epsilon;            // eps_g per group element index
};

inline AParAlgebra a_par(const Group& G) {
    AParAlgebra out;
    out.masks = omega1_masks(G);
    std::vector<std::string> labels;
    for (auto m : out.masks) labels.push_back("w" + std::to_string(m));
    out.algebra = function_algebra(out.masks.size(), labels);
    for (int g : G.elements()) {
        Vec e = out.algebra.zero();
        for (std::size_t i = 0; i < out.masks.size(); ++i)
            if ((out.masks[i] >> g) & 1u) e[i] = GaussianRational::one();
        out.epsilon.push_back(e);
    }
    return out;
}

// Restriction of the partial Bernoulli action to an invariant family of
// subsets, as a function-algebra partial action.  The masks must be
// Bernoulli-invariant (e.g. a spectrum).
inline AlgPartialAction bernoulli_restricted_action(const Group& G,
                                                    const std::vector<std::uint32_t>& masks) {
    FinitePartialAction base = bernoulli_partial(G);
    // Locate the points of `masks` in the Bernoulli carrier (bitmask order).
    auto all = omega1_masks(G);
    std::map<std::uint32_t, int> index;
    for (std::size_t i = 0; i < all.size(); ++i) index[all[i]] = static_cast<int>(i);
    PointSet pts;
    for (auto m : masks) {
        auto it = index.find(m);
        if (it == index.end()) throw precondition_error("restricted action: mask without unit");
        pts.insert(it->second);
    }
    if (!is_invariant(base, pts))
        throw precondition_error("restricted action: subset is not Bernoulli-invariant");
    return function_algebra_action(restrict_invariant(base, pts));
}

// The partial group algebra as a crossed product: C(Omega_1) x G for the
// partial Bernoulli action, with the canonical generators [g] = eps_g d_g.
struct KParAlgebra {
    CrossedProduct cp;
    std::vector<Vec> universal;  // [g] in crossed-product coordinates
};

inline KParAlgebra k_par(const Group& G) {
    KParAlgebra out;
    auto masks = omega1_masks(G);
    out.cp = crossed_product(bernoulli_restricted_action(G, masks));
    AParAlgebra ap = a_par(G);
    for (int g : G.elements()) out.universal.push_back(out.cp.embed(g, ap.epsilon[g]));
    // The canonical generators form a partial representation at algebra level.
    std::map<int, Vec> u;
    for (int g : G.elements()) u[g] = out.universal[g];
    auto ok = validate_prep_in_algebra(out.cp.algebra, G, u);
    if (!ok)
        throw consistency_error("k_par: canonical generators fail the axioms: " + ok.violation);
    return out;
}

// C(Omega_R) x G for the Bernoulli action restricted to the spectrum of R,
// together with the canonical representation g -> 1_g d_g, which is checked
// to satisfy R.
struct CStarParRel {
    std::vector<std::uint32_t> omega;
    CrossedProduct cp;
    std::vector<Vec> canonical;  // 1_g d_g per group element
};

inline CStarParRel cstar_par_rel(const Group& G, const RelationSet& R) {
    CStarParRel out;
    out.omega = spectrum(G, R);
    AlgPartialAction act = bernoulli_restricted_action(G, out.omega);
    out.cp = crossed_product(act);
    for (int g : G.elements()) {
        // 1_g = indicator of { w in Omega_R : g in w } inside C(Omega_R).
        Vec f = act.algebra.zero();
        for (std::size_t i = 0; i < out.omega.size(); ++i)
            if ((out.omega[i] >> g) & 1u) f[i] = GaussianRational::one();
        out.canonical.push_back(out.cp.embed(g, f));
    }
    std::map<int, Vec> u;
    for (int g : G.elements()) u[g] = out.canonical[g];
    auto ok = validate_prep_in_algebra(out.cp.algebra, G, u);
    if (!ok) throw consistency_error("cstar_par_rel: canonical rep invalid: " + ok.violation);
    // The canonical representation satisfies R: each relation, evaluated with
    // e_g -> v_g v_g*, vanishes in the algebra.
    const StarAlgebra& B = out.cp.algebra;
    for (auto& f : R.relations) {
        Vec total = B.zero();
        for (auto& t : f.terms) {
            Vec prod = *B.unit;
            for (int g : t.vars)
                prod = B.mult(prod, B.mult(u[g], B.star_of(u[g])));
            total = vec_add(total, vec_scale(GaussianRational(t.coef), prod));
        }
        if (!vec_is_zero(total))
            throw consistency_error("cstar_par_rel: canonical rep does not satisfy a relation");
    }
    return out;
}

// Relation families used in practice.

// Isometry relations for a unital sub-semigroup P: e_{n^-1} - 1 = 0, n in P.
inline RelationSet isometry_relations(const Group& G, const std::vector<int>& P) {
    RelationSet R;
    for (int n : P) {
        if (n == G.unit()) continue;
        RelationPoly p;
        p.terms.push_back({Rational(1), {G.inverse(n)}});
        p.terms.push_back({Rational(-1), {}});
        R.relations.push_back(p);
    }
    return R;
}

// Semi-saturation relations for a length function: e_{gh} - e_{gh} e_g = 0
// whenever l(gh) = l(g) + l(h).
inline RelationSet semisaturation_relations(const Group& G, const LengthFunction& l) {
    RelationSet R;
    for (int g : G.elements())
        for (int h : G.elements()) {
            int gh = G.op(g, h);
            if (l.at(gh) != l.at(g) + l.at(h)) continue;
            RelationPoly p;
            p.terms.push_back({Rational(1), {gh}});
            p.terms.push_back({Rational(-1), {gh, g}});
            R.relations.push_back(p);
        }
    return R;
}

// Order-theoretic checkers used to cross-validate spectra.

// w hereditary for the left-invariant order of P: g in w, n in P => g n^-1 in w.
inline bool is_hereditary_mask(const Group& G, const std::vector<int>& P, std::uint32_t w) {
    for (int g : G.elements()) {
        if (!((w >> g) & 1u)) continue;
        for (int n : P)
            if (!((w >> G.op(g, G.inverse(n))) & 1u)) return false;
    }
    return true;
}

// w convex for the pseudo-metric d(g,h) = l(g^-1 h): whenever g, gx h' ... the
// segment between two members stays inside.
inline bool is_convex_mask(const Group& G, const LengthFunction& l, std::uint32_t w) {
    auto elems = G.elements();
    for (int g : elems) {
        if (!((w >> g) & 1u)) continue;
        for (int z : elems) {
            if (!((w >> z) & 1u)) continue;
            for (int x : elems) {
                // x lies on the segment [g, z] iff d(g,z) = d(g,x) + d(x,z).
                Rational dgz = l.at(G.op(G.inverse(g), z));
                Rational dgx = l.at(G.op(G.inverse(g), x));
                Rational dxz = l.at(G.op(G.inverse(x), z));
                if (dgz == dgx + dxz && !((w >> x) & 1u)) return false;
            }
        }
    }
    return true;
}

// Universal property probe: for a validated matrix partial representation u of
// G, the assignment  1_w d_g  ->  E_w u_g,  with E_w the spectral idempotent
// prod_{h in w} e_h prod_{h not in w} (1 - e_h), must be a *-homomorphism from
// the partial group algebra sending [g] to u_g.
inline bool kpar_universal_property_holds(const KParAlgebra& kp, const PartialRep& rep) {
    auto ok = validate_prep(rep);
    if (!ok) throw precondition_error("universal property: invalid rep: " + ok.violation);
    const Group& G = rep.group;
    auto masks = omega1_masks(G);
    std::size_t n = rep.degree();

    auto spectral = [&](std::uint32_t w) {
        ExactMatrix m = ExactMatrix::identity(n);
        for (int h : G.elements()) {
            ExactMatrix eh = rep.e(h);
            m = m * (((w >> h) & 1u) ? eh : ExactMatrix::identity(n) - eh);
        }
        return m;
    };

    // Images of the crossed-product basis (tags are (g, indicator-combination)).
    std::vector<ExactMatrix> images;
    for (auto& [g, coeff] : kp.cp.tags) {
        ExactMatrix m(n, n);
        for (std::size_t i = 0; i < coeff.size(); ++i) {
            if (coeff[i].is_zero()) continue;
            m = m + coeff[i] * (spectral(masks[i]) * rep.at(g));
        }
        images.push_back(m);
    }
    const StarAlgebra& B = kp.cp.algebra;
    for (std::size_t p = 0; p < B.dim; ++p) {
        if (apply_linear(images, B.star_of(B.basis_vec(p))) != images[p].adjoint()) return false;
        for (std::size_t q = 0; q < B.dim; ++q)
            if (apply_linear(images, B.mult(B.basis_vec(p), B.basis_vec(q))) !=
                images[p] * images[q])
                return false;
    }
    for (int g : G.elements())
        if (apply_linear(images, kp.universal[g]) != rep.at(g)) return false;
    return true;
}

}  // namespace partact

#pragma once

#include <map>

#include "partact/partial_action.hpp"
#include "partact/star_algebra.hpp"

namespace partact {

// A linear map on algebra coordinates, stored as column images.
struct LinearMap {
    std::size_t dim = 0;
    std::vector<Vec> col;  // image of each ambient basis vector

    static LinearMap identity(std::size_t n) {
        LinearMap m;
        m.dim = n;
        for (std::size_t i = 0; i < n; ++i) {
            Vec v(n, GaussianRational::zero());
            v[i] = GaussianRational::one();
            m.col.push_back(std::move(v));
        }
        return m;
    }
    static LinearMap zero(std::size_t n) {
        LinearMap m;
        m.dim = n;
        m.col.assign(n, Vec(n, GaussianRational::zero()));
        return m;
    }

    Vec apply(const Vec& v) const {
        Vec r(dim, GaussianRational::zero());
        for (std::size_t i = 0; i < dim; ++i)
            if (!v[i].is_zero()) r = vec_add(r, vec_scale(v[i], col[i]));
        return r;
    }
};

// A *-algebraic partial action: domains are self-adjoint two-sided ideals and
// each theta_g is a linear *-isomorphism D_{g^-1} -> D_g.  The map data is an
// ambient linear map whose restriction to D_{g^-1} is the isomorphism.
struct AlgPartialAction {
    Group group = Group::z_trunc(1);
    StarAlgebra algebra;
    std::map<int, RowSpace> domains;
    std::map<int, LinearMap> maps;

    const RowSpace& domain(int g) const {
        auto it = domains.find(g);
        if (it == domains.end()) throw precondition_error("alg action: missing domain");
        return it->second;
    }
    const LinearMap& map_of(int g) const {
        auto it = maps.find(g);
        if (it == maps.end()) throw precondition_error("alg action: missing map");
        return it->second;
    }
    Vec apply(int g, const Vec& v) const { return map_of(g).apply(v); }
};

inline ActionVerdict validate_alg_action(const AlgPartialAction& act) {
    const Group& G = act.group;
    const StarAlgebra& A = act.algebra;
    auto elems = G.elements();

    for (int g : elems) {
        if (!act.domains.count(g) || !act.maps.count(g))
            return ActionVerdict::fail("missing domain or map for " + G.label(g));
        if (!is_star_ideal(A, act.domain(g)))
            return ActionVerdict::fail("D_" + G.label(g) +
                                       " is not a self-adjoint two-sided ideal");
    }
    if (act.domain(G.unit()).dim() != A.dim) return ActionVerdict::fail("D_1 != A");
    for (std::size_t i = 0; i < A.dim; ++i)
        if (act.apply(G.unit(), A.basis_vec(i)) != A.basis_vec(i))
            return ActionVerdict::fail("theta_1 != id");

    for (int g : elems) {
        const RowSpace& dom = act.domain(G.inverse(g));
        const RowSpace& ran = act.domain(g);
        RowSpace image(A.dim);
        for (auto& d : dom.basis()) {
            Vec y = act.apply(g, d);
            if (!ran.contains(y))
                return ActionVerdict::fail("theta_" + G.label(g) + " leaves D_" + G.label(g));
            image.insert(y);
        }
        if (image.dim() != ran.dim() || dom.dim() != ran.dim())
            return ActionVerdict::fail("theta_" + G.label(g) + " is not bijective onto D_" +
                                       G.label(g));
        // *-homomorphism on the domain.
        for (auto& x : dom.basis()) {
            if (act.apply(g, A.star_of(x)) != A.star_of(act.apply(g, x)))
                return ActionVerdict::fail("theta_" + G.label(g) + " is not star-preserving");
            for (auto& y : dom.basis())
                if (act.apply(g, A.mult(x, y)) != A.mult(act.apply(g, x), act.apply(g, y)))
                    return ActionVerdict::fail("theta_" + G.label(g) + " is not multiplicative");
        }
        // theta_{g^-1} inverts theta_g.
        for (auto& x : dom.basis())
            if (act.apply(G.inverse(g), act.apply(g, x)) != x)
                return ActionVerdict::fail("theta_" + G.label(G.inverse(g)) +
                                           " does not invert theta_" + G.label(g));
    }

    for (int g : elems)
        for (int h : elems) {
            int gh;
            try {
                gh = G.op(g, h);
            } catch (const precondition_error&) {
                RowSpace meet =
                    RowSpace::intersection(act.domain(G.inverse(g)), act.domain(h));
                if (meet.dim() > 0)
                    return ActionVerdict::fail("support escapes the Z_trunc window at g=" +
                                               G.label(g) + ", h=" + G.label(h));
                continue;
            }
            RowSpace meet = RowSpace::intersection(act.domain(G.inverse(g)), act.domain(h));
            RowSpace image(A.dim);
            for (auto& x : meet.basis()) {
                Vec y = act.apply(g, x);
                if (!act.domain(gh).contains(y))
                    return ActionVerdict::fail("theta_" + G.label(g) + "(D_" +
                                               G.label(G.inverse(g)) + " n D_" + G.label(h) +
                                               ") not inside D_" + G.label(gh));
                image.insert(y);
            }
            RowSpace expected = RowSpace::intersection(act.domain(g), act.domain(gh));
            if (!(image == expected))
                return ActionVerdict::fail("theta_" + G.label(g) + "(D_" +
                                           G.label(G.inverse(g)) + " n D_" + G.label(h) +
                                           ") != D_" + G.label(g) + " n D_" + G.label(gh));
            // Composition on D_{h^-1} n D_{(gh)^-1}.
            RowSpace comp =
                RowSpace::intersection(act.domain(G.inverse(h)), act.domain(G.inverse(gh)));
            for (auto& x : comp.basis())
                if (act.apply(g, act.apply(h, x)) != act.apply(gh, x))
                    return ActionVerdict::fail("theta_" + G.label(g) + " o theta_" + G.label(h) +
                                               " != theta_" + G.label(gh));
        }
    return {};
}

// The algebra-level shadow of a set-level partial action: K^X with pointwise
// product, D_g spanned by indicators of the set-level domain, theta_g the
// coordinate permutation.
inline AlgPartialAction function_algebra_action(const FinitePartialAction& a) {
    auto ok = validate_action(a);
    if (!ok) throw precondition_error("function_algebra_action: invalid action: " + ok.violation);
    std::size_t n = a.carrier.size();
    AlgPartialAction act;
    act.group = a.group;
    act.algebra = function_algebra(n, a.carrier);
    for (int g : a.group.elements()) {
        RowSpace D(n);
        for (int x : a.domain(g)) D.insert(act.algebra.basis_vec(x));
        act.domains[g] = D;
        LinearMap m = LinearMap::zero(n);
        for (auto& [x, y] : a.map_of(g)) m.col[x][y] = GaussianRational::one();
        act.maps[g] = m;
    }
    auto aok = validate_alg_action(act);
    if (!aok)
        throw consistency_error("function_algebra_action: invalid result: " + aok.violation);
    return act;
}

}  // namespace partact

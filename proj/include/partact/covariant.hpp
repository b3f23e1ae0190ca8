#pragma once

#include "partact/crossed_product.hpp"
#include "partact/partial_rep.hpp"

namespace partact {

// A covariant pair for an algebraic partial action: pi a *-homomorphism of the
// coefficient algebra into matrices, u a matrix partial representation, with
// u_g pi(a) u_{g^-1} = pi(theta_g(a)) for a in D_{g^-1}.
struct CovariantPair {
    std::vector<ExactMatrix> pi;  // images of the coefficient algebra basis
    PartialRep u;
};

struct CovariantVerdict {
    bool ok = true;
    std::string violation;
    explicit operator bool() const { return ok; }
    static CovariantVerdict fail(std::string m) { return {false, std::move(m)}; }
};

inline ExactMatrix apply_linear(const std::vector<ExactMatrix>& images, const Vec& coeffs) {
    ExactMatrix out(images.front().rows(), images.front().cols());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero()) continue;
        out = out + coeffs[i] * images[i];
    }
    return out;
}

inline CovariantVerdict covariant_validate(const CovariantPair& pair,
                                           const AlgPartialAction& act) {
    const StarAlgebra& A = act.algebra;
    if (pair.pi.size() != A.dim) return CovariantVerdict::fail("pi: wrong basis count");
    auto prep_ok = validate_prep(pair.u);
    if (!prep_ok) return CovariantVerdict::fail("u invalid: " + prep_ok.violation);
    // pi must be a *-homomorphism, checked on the basis.
    for (std::size_t i = 0; i < A.dim; ++i) {
        if (apply_linear(pair.pi, A.star_of(A.basis_vec(i))) != pair.pi[i].adjoint())
            return CovariantVerdict::fail("pi is not star-preserving");
        for (std::size_t j = 0; j < A.dim; ++j)
            if (apply_linear(pair.pi, A.mult(A.basis_vec(i), A.basis_vec(j))) !=
                pair.pi[i] * pair.pi[j])
                return CovariantVerdict::fail("pi is not multiplicative");
    }
    const Group& G = act.group;
    for (int g : G.elements()) {
        for (auto& a : act.domain(G.inverse(g)).basis()) {
            ExactMatrix lhs =
                pair.u.at(g) * apply_linear(pair.pi, a) * pair.u.at(G.inverse(g));
            ExactMatrix rhs = apply_linear(pair.pi, act.apply(g, a));
            if (lhs != rhs)
                return CovariantVerdict::fail("covariance fails at g=" + G.label(g));
        }
    }
    return {};
}

// The integrated form pi x u : (a d_g) -> pi(a) u_g on the crossed-product
// basis, with the checks that it is multiplicative and star-preserving, plus
// the graded-uniqueness equivalence via exact ranks:
// pi injective <=> pi x u injective.
struct IntegratedForm {
    std::vector<ExactMatrix> images;  // per crossed-product basis element
    bool multiplicative = false;
    bool star_preserving = false;
    bool pi_injective = false;
    bool integrated_injective = false;
};

inline IntegratedForm integrated_form(const CovariantPair& pair, const AlgPartialAction& act,
                                      const CrossedProduct& cp) {
    auto cv = covariant_validate(pair, act);
    if (!cv) throw precondition_error("integrated_form: not covariant: " + cv.violation);
    IntegratedForm out;
    for (auto& [g, a] : cp.tags)
        out.images.push_back(apply_linear(pair.pi, a) * pair.u.at(g));

    const StarAlgebra& B = cp.algebra;
    out.multiplicative = true;
    out.star_preserving = true;
    for (std::size_t p = 0; p < B.dim && out.multiplicative; ++p) {
        if (apply_linear(out.images, B.star_of(B.basis_vec(p))) != out.images[p].adjoint())
            out.star_preserving = false;
        for (std::size_t q = 0; q < B.dim; ++q) {
            if (apply_linear(out.images, B.mult(B.basis_vec(p), B.basis_vec(q))) !=
                out.images[p] * out.images[q]) {
                out.multiplicative = false;
                break;
            }
        }
    }

    // Kernel ranks: a linear map given by basis images is injective iff the
    // flattened image vectors are independent.
    auto independent = [](const std::vector<ExactMatrix>& images) {
        if (images.empty()) return true;
        std::size_t n = images.front().rows() * images.front().cols();
        RowSpace s(n);
        std::size_t count = 0;
        for (auto& m : images) {
            Vec v;
            v.reserve(n);
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
            if (s.insert(std::move(v))) ++count;
        }
        return count == images.size();
    };
    out.pi_injective = independent(pair.pi);
    out.integrated_injective = independent(out.images);
    if (out.pi_injective != out.integrated_injective)
        throw consistency_error(
            "integrated_form: graded uniqueness fails: pi and pi x u disagree on injectivity");
    return out;
}

}  // namespace partact

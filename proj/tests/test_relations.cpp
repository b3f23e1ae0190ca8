#include <catch2/catch_amalgamated.hpp>

#include "partact/relations.hpp"

using namespace partact;

TEST_CASE("A_par is the function algebra on Omega_1 with idempotent generators") {
    Group z2 = builtin_group("Z2");
    AParAlgebra ap = a_par(z2);
    CHECK(ap.algebra.dim == 2);  // 2^{|G|-1}
    // eps_1 is the unit; eps_g is the indicator of {1,g}.
    CHECK(ap.epsilon[0] == *ap.algebra.unit);
    int count = 0;
    for (auto& c : ap.epsilon[1])
        if (!c.is_zero()) ++count;
    CHECK(count == 1);

    CHECK(a_par(builtin_group("Z3")).algebra.dim == 4);
    CHECK(a_par(builtin_group("Z2xZ2")).algebra.dim == 8);

    // theta~_g(eps_h) = eps_{gh} eps_g under the Bernoulli action.
    Group z3 = builtin_group("Z3");
    AParAlgebra ap3 = a_par(z3);
    AlgPartialAction act = bernoulli_restricted_action(z3, omega1_masks(z3));
    for (int g : z3.elements())
        for (int h : z3.elements()) {
            // theta_g is defined on D_{g^-1}; eps_h eps_{g^-1} lies there.
            Vec x = ap3.algebra.mult(ap3.epsilon[h], ap3.epsilon[z3.inverse(g)]);
            Vec lhs = act.apply(g, x);
            Vec rhs = ap3.algebra.mult(ap3.epsilon[z3.op(g, h)], ap3.epsilon[g]);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("K_par dimensions and commutativity") {
    KParAlgebra k2 = k_par(builtin_group("Z2"));
    CHECK(k2.cp.algebra.dim == 3);
    CHECK(k2.cp.algebra.is_commutative());

    KParAlgebra k3 = k_par(builtin_group("Z3"));
    CHECK(k3.cp.algebra.dim == 8);

    KParAlgebra kk = k_par(builtin_group("Z2xZ2"));
    CHECK(kk.cp.algebra.dim == 20);
}

TEST_CASE("spectrum of the empty relation set is all of Omega_1") {
    for (auto name : {"Z2", "Z3", "Z4", "Z2xZ2"}) {
        Group g = builtin_group(name);
        auto s = spectrum(g, RelationSet{});
        CHECK(s.size() == (1u << (g.order() - 1)));
    }
}

TEST_CASE("spectrum of e_g - 1 over Z2") {
    Group z2 = builtin_group("Z2");
    RelationSet R;
    RelationPoly p;
    p.terms.push_back({Rational(1), {1}});
    p.terms.push_back({Rational(-1), {}});
    R.relations.push_back(p);
    auto s = spectrum(z2, R);
    REQUIRE(s.size() == 1);
    CHECK(s[0] == 0b11u);  // the set {1, g}
}

TEST_CASE("relations forcing e_g = 0 leave only the singleton") {
    Group z3 = builtin_group("Z3");
    RelationSet R;
    for (int g : z3.elements()) {
        if (g == z3.unit()) continue;
        RelationPoly p;
        p.terms.push_back({Rational(1), {g}});
        R.relations.push_back(p);
    }
    auto s = spectrum(z3, R);
    REQUIRE(s.size() == 1);
    CHECK(s[0] == (1u << z3.unit()));
    CStarParRel c = cstar_par_rel(z3, R);
    CHECK(c.cp.algebra.dim == 1);
}

TEST_CASE("empty relations recover K_par as a crossed product") {
    Group z2 = builtin_group("Z2");
    CStarParRel c = cstar_par_rel(z2, RelationSet{});
    KParAlgebra k = k_par(z2);
    CHECK(c.cp.algebra.dim == k.cp.algebra.dim);
    CHECK(c.cp.algebra.sc == k.cp.algebra.sc);
    CHECK(c.cp.algebra.star == k.cp.algebra.star);
    for (int g : z2.elements()) CHECK(c.canonical[g] == k.universal[g]);
}

TEST_CASE("isometry relations carve out the hereditary subsets") {
    for (auto name : {"Z2", "Z3", "Z4", "Z2xZ2"}) {
        Group G = builtin_group(name);
        // P = the subgroup generated by the first non-unit element.
        std::vector<int> P = {G.unit()};
        int gen = 1;
        int cur = gen;
        while (cur != G.unit()) {
            P.push_back(cur);
            cur = G.op(cur, gen);
        }
        auto s = spectrum(G, isometry_relations(G, P));
        std::vector<std::uint32_t> expected;
        for (auto m : omega1_masks(G))
            if (is_hereditary_mask(G, P, m)) expected.push_back(m);
        CHECK(s == expected);
    }
}

TEST_CASE("semi-saturation relations carve out the convex subsets") {
    struct Case {
        const char* name;
        std::vector<int> gens;
    };
    for (auto& c : {Case{"Z3", {1}}, Case{"Z4", {1}}, Case{"Z2xZ2", {1, 2}}}) {
        Group G = builtin_group(c.name);
        LengthFunction l = word_length_function(G, c.gens);
        auto s = spectrum(G, semisaturation_relations(G, l));
        std::vector<std::uint32_t> expected;
        for (auto m : omega1_masks(G))
            if (is_convex_mask(G, l, m)) expected.push_back(m);
        CHECK(s == expected);
    }
}

TEST_CASE("K_par universal property against concrete partial representations") {
    Group z2 = builtin_group("Z2");
    KParAlgebra k = k_par(z2);

    // A unitary representation of Z2.
    PartialRep swap;
    swap.group = z2;
    swap.values[0] = ExactMatrix::identity(2);
    swap.values[1] = ExactMatrix{{0, 1}, {1, 0}};
    CHECK(kpar_universal_property_holds(k, swap));

    // The projection-valued partial representation u_g = e11.
    PartialRep proj;
    proj.group = z2;
    proj.values[0] = ExactMatrix::identity(2);
    proj.values[1] = ExactMatrix{{1, 0}, {0, 0}};
    CHECK(kpar_universal_property_holds(k, proj));

    Group z3 = builtin_group("Z3");
    KParAlgebra k3 = k_par(z3);
    PartialRep rot;
    rot.group = z3;
    rot.values[0] = ExactMatrix::identity(3);
    ExactMatrix c(3, 3);
    c.at(0, 1) = GaussianRational(1);
    c.at(1, 2) = GaussianRational(1);
    c.at(2, 0) = GaussianRational(1);
    rot.values[1] = c;
    rot.values[2] = c * c;
    CHECK(kpar_universal_property_holds(k3, rot));
}

TEST_CASE("partial group algebras separate Z4 from the Klein group") {
    // Equal dimensions but different centers: the computable isomorphism
    // invariants at work.
    KParAlgebra k4 = k_par(builtin_group("Z4"));
    KParAlgebra kk = k_par(builtin_group("Z2xZ2"));
    CHECK(k4.cp.algebra.dim == 20);
    CHECK(kk.cp.algebra.dim == 20);
    CHECK(k4.cp.algebra.center_dim() == 9);
    CHECK(kk.cp.algebra.center_dim() == 12);
}

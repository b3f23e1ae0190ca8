#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "partact/partial_isometry.hpp"

using namespace partact;

namespace {
ExactMatrix eunit(std::size_t n, std::size_t i, std::size_t j) {
    return ExactMatrix::unit(n, i, j);
}

// A signed partial permutation: d * permutation * diagonal 0/1 cut.  These are
// partial isometries with entries in {0, +-1, +-i}.
ExactMatrix random_signed_partial_permutation(std::mt19937& rng, std::size_t n) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    ExactMatrix m(n, n);
    std::uniform_int_distribution<int> phase(0, 3), keep(0, 1);
    for (std::size_t j = 0; j < n; ++j) {
        if (!keep(rng)) continue;
        GaussianRational u;
        switch (phase(rng)) {
            case 0: u = GaussianRational(1); break;
            case 1: u = GaussianRational(-1); break;
            case 2: u = GaussianRational::i(); break;
            default: u = -GaussianRational::i(); break;
        }
        m.at(perm[j], j) = u;
    }
    return m;
}
}  // namespace

TEST_CASE("projection detection") {
    CHECK(is_projection(ExactMatrix::identity(2)));
    ExactMatrix d10{{1, 0}, {0, 0}};
    CHECK(is_projection(d10));
    ExactMatrix e12{{0, 1}, {0, 0}};
    CHECK_FALSE(is_projection(e12));  // not self-adjoint
    CHECK_THROWS_AS(is_projection(ExactMatrix(2, 3)), dimension_error);
}

TEST_CASE("partial isometry detection") {
    ExactMatrix e12{{0, 1}, {0, 0}};
    CHECK(is_partial_isometry(e12));
    ExactMatrix bad{{1, 1}, {0, 0}};
    CHECK_FALSE(is_partial_isometry(bad));  // s s* s = 2s != s
    ExactMatrix rot{{0, -1}, {1, 0}};       // a unitary
    CHECK(is_partial_isometry(rot));
}

TEST_CASE("initial and final projections of a partial isometry are projections") {
    std::mt19937 rng(7);
    for (int k = 0; k < 50; ++k) {
        ExactMatrix s = random_signed_partial_permutation(rng, 4);
        REQUIRE(is_partial_isometry(s));
        CHECK(is_projection(initial_projection(s)));
        CHECK(is_projection(final_projection(s)));
    }
}

TEST_CASE("domination order") {
    ExactMatrix e11 = eunit(2, 0, 0), id = ExactMatrix::identity(2);
    CHECK(piso_leq(e11, id));
    ExactMatrix e12 = eunit(2, 0, 1);
    CHECK(piso_leq(e12, e12));  // reflexive
    ExactMatrix e21 = eunit(2, 1, 0);
    CHECK_FALSE(piso_leq(e12, e21));
    ExactMatrix notpi{{1, 1}, {0, 0}};
    CHECK_THROWS_AS(piso_leq(notpi, id), precondition_error);
}

TEST_CASE("compatibility") {
    ExactMatrix e11 = eunit(2, 0, 0), e22 = eunit(2, 1, 1), e12 = eunit(2, 0, 1);
    CHECK(compatible(e11, e22));  // orthogonal projections
    CHECK(compatible(e12, e12));  // reflexive
    CHECK_FALSE(compatible(e12, e11));
}

TEST_CASE("join of compatible partial isometries") {
    ExactMatrix e11 = eunit(2, 0, 0), e22 = eunit(2, 1, 1);
    CHECK(piso_join(e11, e22) == ExactMatrix::identity(2));
    ExactMatrix e12 = eunit(2, 0, 1);
    CHECK(piso_join(e12, e12) == e12);
    ExactMatrix e13 = eunit(4, 0, 2), e24 = eunit(4, 1, 3);
    CHECK(piso_join(e13, e24) == e13 + e24);
    ExactMatrix e11b = eunit(2, 0, 0);
    CHECK_THROWS_AS(piso_join(e12, e11b), precondition_error);
}

TEST_CASE("star semigroup generation") {
    ExactMatrix e12 = eunit(2, 0, 1);
    auto sg = generate_star_semigroup({e12}, 2);
    std::set<ExactMatrix> got(sg.begin(), sg.end());
    std::set<ExactMatrix> want = {eunit(2, 0, 1), eunit(2, 1, 0), eunit(2, 0, 0), eunit(2, 1, 1)};
    CHECK(got == want);

    auto idem = generate_star_semigroup({ExactMatrix::identity(3)}, 5);
    CHECK(idem.size() == 1);
    CHECK(generate_star_semigroup({}, 4).empty());
}

TEST_CASE("tameness of matrix-unit families") {
    ExactMatrix e12 = eunit(3, 0, 1), e23 = eunit(3, 1, 2);
    auto v = is_tame({e12, e23}, 6);
    CHECK(v.tame);
    CHECK(v.bound == 6);
}

TEST_CASE("tameness rejects non-isometric generators") {
    ExactMatrix s{{1, 1}, {0, 0}};
    CHECK_THROWS_AS(is_tame({s, ExactMatrix::identity(2)}, 3), precondition_error);
}

TEST_CASE("signed permutations and 0/1 diagonals contain no wild pair") {
    // Every unitary with entries in {0,+-1} is a signed permutation and every
    // projection with such entries is a 0/1 diagonal, so u p u* is diagonal and
    // always commutes with p.  Verified by brute force.
    std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0},
                                             {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    for (auto& pm : perms) {
        ExactMatrix u(3, 3);
        for (std::size_t j = 0; j < 3; ++j) u.at(pm[j], j) = GaussianRational(1);
        for (unsigned mask = 1; mask < 7; ++mask) {
            ExactMatrix p(3, 3);
            for (std::size_t i = 0; i < 3; ++i)
                if (mask & (1u << i)) p.at(i, i) = GaussianRational(1);
            ExactMatrix conj = u * p * u.adjoint();
            CHECK(p * conj == conj * p);
        }
    }
}

TEST_CASE("a wild pair produces a witness") {
    // Non-commuting rational projections: their product is idempotent only
    // when they commute, so the generated *-semigroup leaves the partial
    // isometries.  Search a small family for a pair and confirm the witness.
    std::vector<ExactMatrix> projections;
    projections.push_back(ExactMatrix{{1, 0}, {0, 0}});
    {
        ExactMatrix h(2, 2);  // rank-one projection onto (1,1)
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) h.at(i, j) = GaussianRational(Rational(1, 2));
        projections.push_back(h);
    }
    {
        ExactMatrix q(2, 2);  // rank-one projection onto (1,2)
        q.at(0, 0) = GaussianRational(Rational(1, 5));
        q.at(0, 1) = GaussianRational(Rational(2, 5));
        q.at(1, 0) = GaussianRational(Rational(2, 5));
        q.at(1, 1) = GaussianRational(Rational(4, 5));
        projections.push_back(q);
    }
    bool found_witness = false;
    for (std::size_t i = 0; i < projections.size(); ++i)
        for (std::size_t j = i + 1; j < projections.size(); ++j) {
            const ExactMatrix& p = projections[i];
            const ExactMatrix& q = projections[j];
            REQUIRE(is_projection(p));
            REQUIRE(is_projection(q));
            if (p * q == q * p) continue;
            auto v = is_tame({p, q}, 2);
            REQUIRE_FALSE(v.tame);
            REQUIRE(v.witness);
            CHECK_FALSE(is_partial_isometry(*v.witness));
            found_witness = true;
        }
    CHECK(found_witness);
}

TEST_CASE("product of partial isometries: commutation criterion") {
    std::mt19937 rng(11);
    int checked = 0;
    for (int k = 0; k < 200; ++k) {
        ExactMatrix s = random_signed_partial_permutation(rng, 3);
        ExactMatrix t = random_signed_partial_permutation(rng, 3);
        ExactMatrix ini = initial_projection(s), fin = final_projection(t);
        bool commute = (ini * fin == fin * ini);
        CHECK(is_partial_isometry(s * t) == commute);
        ++checked;
    }
    CHECK(checked == 200);
}

TEST_CASE("join is associative on pairwise-compatible triples") {
    // Restrictions of a common unitary are pairwise compatible.
    std::mt19937 rng(13);
    for (int k = 0; k < 40; ++k) {
        ExactMatrix u = random_signed_partial_permutation(rng, 4);
        while (!(u * u.adjoint() == ExactMatrix::identity(4)))
            u = random_signed_partial_permutation(rng, 4);
        std::uniform_int_distribution<unsigned> mask(0, 15);
        auto cut = [&](unsigned m) {
            ExactMatrix p(4, 4);
            for (std::size_t i = 0; i < 4; ++i)
                if (m & (1u << i)) p.at(i, i) = GaussianRational(1);
            return u * p;
        };
        ExactMatrix r = cut(mask(rng)), s = cut(mask(rng)), t = cut(mask(rng));
        REQUIRE(compatible(r, s));
        REQUIRE(compatible(s, t));
        REQUIRE(compatible(r, t));
        // r is compatible with s v t, and join associates.
        ExactMatrix st = piso_join(s, t);
        CHECK(compatible(r, st));
        CHECK(piso_join(r, st) == piso_join(piso_join(r, s), t));
    }
}

TEST_CASE("join of products equals product of joins for commuting families") {
    // S, T compatible finite sets with initial(S) commuting with final(T).
    ExactMatrix u{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    auto cutR = [&](unsigned m) {
        ExactMatrix p(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            if (m & (1u << i)) p.at(i, i) = GaussianRational(1);
        return u * p;
    };
    std::vector<ExactMatrix> S = {cutR(0b0011), cutR(0b0111)};
    std::vector<ExactMatrix> T = {cutR(0b1100), cutR(0b1000)};
    // initial projections of S are diagonal; final projections of T are
    // u p u* which is diagonal for this permutation; they commute.
    auto join_all = [](std::vector<ExactMatrix> xs) {
        ExactMatrix j = xs.front();
        for (std::size_t i = 1; i < xs.size(); ++i) j = piso_join(j, xs[i]);
        return j;
    };
    std::vector<ExactMatrix> prods;
    for (auto& s : S)
        for (auto& t : T) prods.push_back(s * t);
    for (auto& p : prods) REQUIRE(is_partial_isometry(p));
    CHECK(join_all(prods) == join_all(S) * join_all(T));
}

TEST_CASE("tameness witnesses carry their product word") {
    ExactMatrix p{{1, 0}, {0, 0}};
    ExactMatrix h(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) h.at(i, j) = GaussianRational(Rational(1, 2));
    auto v = is_tame({p, h}, 2);
    REQUIRE_FALSE(v.tame);
    REQUIRE(v.witness);
    REQUIRE_FALSE(v.witness_word.empty());
    // Recompute the product from the word: it must reproduce the witness.
    std::vector<ExactMatrix> gens = {p, h};
    ExactMatrix prod = ExactMatrix::identity(2);
    for (int t : v.witness_word) {
        ExactMatrix f = gens[static_cast<std::size_t>(std::abs(t)) - 1];
        prod = prod * (t > 0 ? f : f.adjoint());
    }
    CHECK(prod == *v.witness);
    CHECK_FALSE(is_partial_isometry(prod));
}

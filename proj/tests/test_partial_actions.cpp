#include <catch2/catch_amalgamated.hpp>

#include "partact/partial_action.hpp"

using namespace partact;

namespace {

// The Z2 action on {x, y} with D_g = {x} and theta_g the identity there.
FinitePartialAction z2_halt_action() {
    FinitePartialAction a;
    a.group = builtin_group("Z2");
    a.carrier = {"x", "y"};
    a.domains[0] = {0, 1};
    a.domains[1] = {0};
    a.maps[0] = {{0, 0}, {1, 1}};
    a.maps[1] = {{0, 0}};
    return a;
}

// The global swap of Z2 on {x, y}.
FinitePartialAction z2_swap_action() {
    FinitePartialAction a;
    a.group = builtin_group("Z2");
    a.carrier = {"x", "y"};
    a.domains[0] = {0, 1};
    a.domains[1] = {0, 1};
    a.maps[0] = {{0, 0}, {1, 1}};
    a.maps[1] = {{0, 1}, {1, 0}};
    return a;
}

// Translation action of Z_n on itself.
FinitePartialAction zn_translation(std::size_t n) {
    FinitePartialAction a;
    a.group = Group::finite(cyclic_group(n));
    for (std::size_t i = 0; i < n; ++i) a.carrier.push_back(std::to_string(i));
    for (int g = 0; g < static_cast<int>(n); ++g) {
        PointSet all;
        PointMap m;
        for (int x = 0; x < static_cast<int>(n); ++x) {
            all.insert(x);
            m[x] = static_cast<int>((x + g) % n);
        }
        a.domains[g] = all;
        a.maps[g] = m;
    }
    return a;
}

}  // namespace

TEST_CASE("validation accepts lawful partial actions") {
    CHECK(validate_action(z2_swap_action()));
    CHECK(validate_action(z2_halt_action()));
}

TEST_CASE("validation reports structural violations") {
    // theta_g declared from D_{g^-1} = {y} but defined at x.
    FinitePartialAction a = z2_halt_action();
    a.domains[1] = {1};
    auto v = validate_action(a);
    CHECK_FALSE(v.ok);
    CHECK_FALSE(v.violation.empty());

    // Global action of Z3 with a non-composing pair of maps.
    FinitePartialAction b = zn_translation(3);
    b.maps[2] = {{0, 0}, {1, 1}, {2, 2}};  // breaks theta_1 o theta_1 = theta_2
    CHECK_FALSE(validate_action(b).ok);
}

TEST_CASE("restriction of the Z4 translation to {0,1}") {
    FinitePartialAction g = zn_translation(4);
    FinitePartialAction r = restrict_global(g, {0, 1});
    CHECK(validate_action(r));
    CHECK(r.domain(0) == PointSet{0, 1});
    CHECK(r.domain(1) == PointSet{1});   // eta_1({0,1}) n {0,1} = {1}
    CHECK(r.domain(2) == PointSet{});    // {2,3} n {0,1}
    CHECK(r.domain(3) == PointSet{0});   // {3,0} n {0,1}
    CHECK(r.apply(1, 0) == std::optional<int>(1));
}

TEST_CASE("restricting to the full carrier returns the action itself") {
    FinitePartialAction g = zn_translation(3);
    FinitePartialAction r = restrict_global(g, {0, 1, 2});
    auto phi = equivalent(g, r);
    REQUIRE(phi);
}

TEST_CASE("restriction to the empty subset is the empty action") {
    FinitePartialAction g = zn_translation(3);
    FinitePartialAction r = restrict_global(g, {});
    CHECK(r.carrier.empty());
    CHECK(validate_action(r));
}

TEST_CASE("globalization of the halting Z2 action has carrier of size 3") {
    auto [global, emb] = globalize(z2_halt_action());
    CHECK(global.carrier.size() == 3);
    CHECK(validate_action(global));
    // The action swaps the two classes coming from y and fixes the x class.
    int gx = emb.at(0), gy = emb.at(1);
    CHECK(global.apply(1, gx) == std::optional<int>(gx));
    int other = global.apply(1, gy).value();
    CHECK(other != gy);
    // Restricting to the embedded copy recovers the action.
    PointSet image = {gx, gy};
    FinitePartialAction back = restrict_global(global, image);
    CHECK(equivalent(back, z2_halt_action()).has_value());
}

TEST_CASE("globalizing a global action changes nothing") {
    FinitePartialAction g = zn_translation(4);
    auto [global, emb] = globalize(g);
    CHECK(global.carrier.size() == 4);
    CHECK(equivalent(global, g).has_value());
}

TEST_CASE("globalization of the empty-domain action is the free swap") {
    FinitePartialAction a;
    a.group = builtin_group("Z2");
    a.carrier = {"x"};
    a.domains[0] = {0};
    a.domains[1] = {};
    a.maps[0] = {{0, 0}};
    a.maps[1] = {};
    auto [global, emb] = globalize(a);
    CHECK(global.carrier.size() == 2);
    CHECK(fixed_points(global, 1).empty());
}

TEST_CASE("invariance and restriction to invariant subsets") {
    FinitePartialAction a = z2_halt_action();
    CHECK(is_invariant(a, {0, 1}));
    CHECK(is_invariant(a, {1}));  // vacuous: y is outside D_g
    CHECK(is_invariant(a, {0}));
    FinitePartialAction swap = z2_swap_action();
    CHECK_FALSE(is_invariant(swap, {0}));
    CHECK_THROWS_AS(restrict_invariant(swap, {0}), precondition_error);

    auto orbit = saturate(swap, {0});
    CHECK(orbit == PointSet{0, 1});
    CHECK(is_invariant(swap, orbit));
    FinitePartialAction r = restrict_invariant(a, {0});
    CHECK(validate_action(r));
    CHECK(r.domain(1) == PointSet{0});
}

TEST_CASE("equivalence search finds relabelings and respects obstructions") {
    FinitePartialAction a = z2_halt_action();
    CHECK(equivalent(a, a).has_value());

    // Relabelled copy: swap the carrier points.
    FinitePartialAction b;
    b.group = a.group;
    b.carrier = {"y", "x"};
    b.domains[0] = {0, 1};
    b.domains[1] = {1};
    b.maps[0] = {{0, 0}, {1, 1}};
    b.maps[1] = {{1, 1}};
    auto phi = equivalent(a, b);
    REQUIRE(phi);
    CHECK((*phi)[0] == 1);

    // Different domain sizes: no equivalence.
    CHECK_FALSE(equivalent(a, z2_swap_action()).has_value());
}

TEST_CASE("partial Bernoulli action") {
    Group z2 = builtin_group("Z2");
    FinitePartialAction b = bernoulli_partial(z2);
    CHECK(b.carrier.size() == 2);  // 2^{|G|-1}
    CHECK(b.domain(0).size() == 2);
    CHECK(b.domain(1).size() == 1);
    // theta_g fixes {1,g}.
    int pt = *b.domain(1).begin();
    CHECK(b.apply(1, pt) == std::optional<int>(pt));

    Group z3 = builtin_group("Z3");
    CHECK(bernoulli_partial(z3).carrier.size() == 4);
    Group klein = builtin_group("Z2xZ2");
    CHECK(bernoulli_partial(klein).carrier.size() == 8);
}

TEST_CASE("action graph and fixed points") {
    FinitePartialAction swap = z2_swap_action();
    CHECK(fixed_points(swap, 1).empty());
    CHECK(is_topologically_free(swap));

    FinitePartialAction halt = z2_halt_action();
    CHECK(fixed_points(halt, 1) == PointSet{0});
    CHECK_FALSE(is_topologically_free(halt));

    // |Graph| = sum |D_g|.
    auto graph = action_graph(halt);
    std::size_t total = 0;
    for (int g : halt.group.elements()) total += halt.domain(g).size();
    CHECK(graph.size() == total);

    // Graph(restriction) = Graph(global) n (X x G x X).
    FinitePartialAction g4 = zn_translation(4);
    PointSet sub = {0, 1};
    FinitePartialAction r = restrict_global(g4, sub);
    auto gr = action_graph(r);
    std::set<ActionGraphTriple> expected;
    for (auto& t : action_graph(g4)) {
        if (sub.count(t.x) && sub.count(t.y)) {
            // Reindex: 0 -> 0, 1 -> 1 under the restriction's carrier order.
            expected.insert(t);
        }
    }
    CHECK(gr == expected);
}

TEST_CASE("free-group action from partial symmetries") {
    // One symmetry f: {0..n-2} -> {1..n-1}, i -> i+1 (shift on 4 points).
    PointMap f = {{0, 1}, {1, 2}, {2, 3}};
    FreeGroupAction act = free_action_from_symmetries({"a"}, {f});
    FreeWord a2 = FreeWord::from_chars("aa");
    CHECK(act.apply(a2, 0) == std::optional<int>(2));
    CHECK(act.apply(FreeWord(), 3) == std::optional<int>(3));
    FreeWord id = FreeWord::generator("a") * FreeWord::generator("a", -1);
    CHECK(act.apply(id, 1) == std::optional<int>(1));
    CHECK_FALSE(act.apply(a2, 2).has_value());  // escapes the domain
}

namespace {
// All involutive partial bijections on n points (theta with theta^2 <= id),
// built as partial matchings: each point is skipped, fixed, or swapped with a
// later point.
std::vector<PointMap> involutive_partial_bijections(int n) {
    std::vector<PointMap> all;
    std::function<void(int, PointMap)> build = [&](int x, PointMap cur) {
        if (x == n) {
            all.push_back(cur);
            return;
        }
        if (cur.count(x)) {
            build(x + 1, cur);
            return;
        }
        build(x + 1, cur);  // x outside the domain
        PointMap fixed = cur;
        fixed[x] = x;
        build(x + 1, fixed);
        for (int y = x + 1; y < n; ++y) {
            if (cur.count(y)) continue;
            PointMap swapped = cur;
            swapped[x] = y;
            swapped[y] = x;
            build(x + 1, swapped);
        }
    };
    build(0, {});
    return all;
}

std::vector<PointMap> partial_bijections(int n) {
    std::vector<PointMap> out;
    std::vector<int> img(n, -2);
    std::function<void(int)> rec = [&](int x) {
        if (x == n) {
            PointMap m;
            for (int i = 0; i < n; ++i)
                if (img[i] >= 0) m[i] = img[i];
            out.push_back(m);
            return;
        }
        img[x] = -1;
        rec(x + 1);
        for (int y = 0; y < n; ++y) {
            bool used = false;
            for (int i = 0; i < x; ++i)
                if (img[i] == y) used = true;
            if (used) continue;
            img[x] = y;
            rec(x + 1);
        }
        img[x] = -2;
    };
    rec(0);
    return out;
}

PointSet range_of(const PointMap& f) {
    PointSet s;
    for (auto& [x, y] : f) s.insert(y);
    return s;
}
PointSet domain_of(const PointMap& f) {
    PointSet s;
    for (auto& [x, y] : f) s.insert(x);
    return s;
}
PointMap inverse_of(const PointMap& f) {
    PointMap m;
    for (auto& [x, y] : f) m[y] = x;
    return m;
}
}  // namespace

TEST_CASE("globalization round-trips exhaustively for groups of order <= 4") {
    std::size_t valid = 0, total = 0;
    auto check = [&](const FinitePartialAction& a) {
        ++total;
        if (!validate_action(a)) return;
        ++valid;
        auto gl = globalize(a);
        PointSet image;
        for (auto& [x, y] : gl.embedding) image.insert(y);
        FinitePartialAction back = restrict_global(gl.global, image);
        REQUIRE(equivalent(back, a).has_value());
    };
    for (int n = 0; n <= 4; ++n) {
        auto frames = [&](const Group& G) {
            FinitePartialAction a;
            a.group = G;
            for (int i = 0; i < n; ++i) a.carrier.push_back("p" + std::to_string(i));
            PointSet all;
            PointMap id;
            for (int i = 0; i < n; ++i) {
                all.insert(i);
                id[i] = i;
            }
            a.domains[G.unit()] = all;
            a.maps[G.unit()] = id;
            return a;
        };
        auto partials = partial_bijections(n);
        auto involutions = involutive_partial_bijections(n);
        // Z2 and Z3: determined by the generator.
        for (std::size_t order : {2u, 3u}) {
            Group G = Group::finite(cyclic_group(order));
            for (auto& f : partials) {
                FinitePartialAction a = frames(G);
                a.domains[1] = range_of(f);
                a.maps[1] = f;
                if (order == 3) {
                    a.domains[2] = domain_of(f);
                    a.maps[2] = inverse_of(f);
                }
                check(a);
            }
        }
        // Z4: generator plus an independent involutive middle map.
        {
            Group G = Group::finite(cyclic_group(4));
            for (auto& f : partials)
                for (auto& h : involutions) {
                    FinitePartialAction a = frames(G);
                    a.domains[1] = range_of(f);
                    a.maps[1] = f;
                    a.domains[2] = range_of(h);
                    a.maps[2] = h;
                    a.domains[3] = domain_of(f);
                    a.maps[3] = inverse_of(f);
                    check(a);
                }
        }
        // Klein group: three independent involutive maps.
        {
            Group G = builtin_group("Z2xZ2");
            for (auto& fa : involutions)
                for (auto& fb : involutions)
                    for (auto& fc : involutions) {
                        FinitePartialAction a = frames(G);
                        a.domains[1] = range_of(fa);
                        a.maps[1] = fa;
                        a.domains[2] = range_of(fb);
                        a.maps[2] = fb;
                        a.domains[3] = range_of(fc);
                        a.maps[3] = fc;
                        check(a);
                    }
        }
    }
    CHECK(valid > 100);
    CHECK(total > 10000);
}

TEST_CASE("restriction and globalization over the symmetric group") {
    Group s3 = builtin_group("S3");
    // Translation action of S3 on itself, restricted to a 2-point subset.
    FinitePartialAction t;
    t.group = s3;
    for (int i = 0; i < 6; ++i) t.carrier.push_back(s3.label(i));
    for (int g : s3.elements()) {
        PointSet all;
        PointMap m;
        for (int x : s3.elements()) {
            all.insert(x);
            m[x] = s3.op(g, x);
        }
        t.domains[g] = all;
        t.maps[g] = m;
    }
    REQUIRE(validate_action(t).ok);
    FinitePartialAction r = restrict_global(t, {0, 1});
    REQUIRE(validate_action(r).ok);
    auto gl = globalize(r);
    // The orbit of a 2-point subset of a free translation recovers all 6.
    CHECK(gl.global.carrier.size() == 6);
    PointSet image;
    for (auto& [x, y] : gl.embedding) image.insert(y);
    CHECK(equivalent(restrict_global(gl.global, image), r).has_value());
}

TEST_CASE("globalization rejects unbounded acting groups") {
    FinitePartialAction a;
    a.group = Group::z_trunc(2);
    a.carrier = {"x"};
    for (int k = -2; k <= 2; ++k) {
        a.domains[k] = (k == 0) ? PointSet{0} : PointSet{};
        a.maps[k] = (k == 0) ? PointMap{{0, 0}} : PointMap{};
    }
    REQUIRE(validate_action(a).ok);
    CHECK_THROWS_AS(globalize(a), precondition_error);
}

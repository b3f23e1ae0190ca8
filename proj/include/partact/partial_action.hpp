#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "partact/free_word.hpp"
#include "partact/group.hpp"

namespace partact {

using PointSet = std::set<int>;
using PointMap = std::map<int, int>;  // a partial bijection on carrier indices

// A partial action of a group on a finite set: domains D_g and partial
// bijections theta_g : D_{g^-1} -> D_g.
struct FinitePartialAction {
    Group group = Group::z_trunc(1);
    std::vector<std::string> carrier;
    std::map<int, PointSet> domains;  // g -> D_g
    std::map<int, PointMap> maps;     // g -> theta_g (domain D_{g^-1})

    const PointSet& domain(int g) const {
        static const PointSet empty;
        auto it = domains.find(g);
        return it == domains.end() ? empty : it->second;
    }
    const PointMap& map_of(int g) const {
        static const PointMap empty;
        auto it = maps.find(g);
        return it == maps.end() ? empty : it->second;
    }
    std::optional<int> apply(int g, int x) const {
        const PointMap& m = map_of(g);
        auto it = m.find(x);
        if (it == m.end()) return std::nullopt;
        return it->second;
    }
};

struct ActionVerdict {
    bool ok = true;
    std::string violation;  // first violated axiom, with witnesses

    explicit operator bool() const { return ok; }
    static ActionVerdict fail(std::string msg) { return {false, std::move(msg)}; }
};

namespace detail {
inline std::string point_name(const FinitePartialAction& a, int x) {
    return (x >= 0 && static_cast<std::size_t>(x) < a.carrier.size()) ? a.carrier[x]
                                                                      : std::to_string(x);
}
}  // namespace detail

// Exhaustive validation: structural well-formedness, D_1 = X with theta_1 the
// identity, theta_g(D_{g^-1} n D_h) <= D_{gh} with the composition rule, plus
// the derived identities theta_g(D_{g^-1} n D_h) = D_g n D_{gh} and
// theta_{g^-1} = theta_g^-1.
inline ActionVerdict validate_action(const FinitePartialAction& a) {
    const Group& G = a.group;
    auto elems = G.elements();
    const int n = static_cast<int>(a.carrier.size());

    for (auto& [g, D] : a.domains) {
        if (!G.in_range(g)) return ActionVerdict::fail("domain index outside group");
        for (int x : D)
            if (x < 0 || x >= n) return ActionVerdict::fail("domain contains unknown point");
    }
    for (auto& [g, m] : a.maps)
        if (!G.in_range(g)) return ActionVerdict::fail("map index outside group");

    // theta_g : D_{g^-1} -> D_g must be a bijection between the stated sets.
    for (int g : elems) {
        const PointSet& dom = a.domain(G.inverse(g));
        const PointSet& ran = a.domain(g);
        const PointMap& m = a.map_of(g);
        if (m.size() != dom.size())
            return ActionVerdict::fail("theta_" + G.label(g) + " not defined on all of D_" +
                                       G.label(G.inverse(g)));
        PointSet image;
        for (auto& [x, y] : m) {
            if (!dom.count(x))
                return ActionVerdict::fail("theta_" + G.label(g) + " defined off D_" +
                                           G.label(G.inverse(g)) + " at " +
                                           detail::point_name(a, x));
            if (!ran.count(y))
                return ActionVerdict::fail("theta_" + G.label(g) + " maps " +
                                           detail::point_name(a, x) + " outside D_" + G.label(g));
            if (!image.insert(y).second)
                return ActionVerdict::fail("theta_" + G.label(g) + " not injective");
        }
        if (image.size() != ran.size())
            return ActionVerdict::fail("theta_" + G.label(g) + " not onto D_" + G.label(g));
    }

    // D_1 = X and theta_1 = id.
    {
        const PointSet& d1 = a.domain(G.unit());
        if (static_cast<int>(d1.size()) != n)
            return ActionVerdict::fail("D_1 is not the whole carrier");
        for (auto& [x, y] : a.map_of(G.unit()))
            if (x != y) return ActionVerdict::fail("theta_1 is not the identity");
    }

    for (int g : elems) {
        for (int h : elems) {
            int gh;
            try {
                gh = G.op(g, h);
            } catch (const precondition_error&) {
                // Z_trunc: products escaping the window must never be hit by data.
                for (int x : a.domain(G.inverse(g)))
                    if (a.domain(h).count(x))
                        return ActionVerdict::fail("support escapes the Z_trunc window at g=" +
                                                   G.label(g) + ", h=" + G.label(h));
                continue;
            }
            // (i) theta_g(D_{g^-1} n D_h) <= D_{gh}, and the sharper equality
            // with D_g n D_{gh}.
            PointSet image;
            for (int x : a.domain(G.inverse(g))) {
                if (!a.domain(h).count(x)) continue;
                auto y = a.apply(g, x);
                if (!y) return ActionVerdict::fail("theta_" + G.label(g) + " missing a point");
                image.insert(*y);
                if (!a.domain(gh).count(*y))
                    return ActionVerdict::fail(
                        "theta_" + G.label(g) + "(D_" + G.label(G.inverse(g)) + " n D_" +
                        G.label(h) + ") not inside D_" + G.label(gh) + " at point " +
                        detail::point_name(a, x));
            }
            PointSet expected;
            for (int y : a.domain(g))
                if (a.domain(gh).count(y)) expected.insert(y);
            if (image != expected)
                return ActionVerdict::fail("theta_" + G.label(g) + "(D_" +
                                           G.label(G.inverse(g)) + " n D_" + G.label(h) +
                                           ") != D_" + G.label(g) + " n D_" + G.label(gh));
            // (ii) theta_g(theta_h(x)) = theta_{gh}(x) on D_{h^-1} n D_{(gh)^-1}.
            for (int x : a.domain(G.inverse(h))) {
                if (!a.domain(G.inverse(gh)).count(x)) continue;
                auto yh = a.apply(h, x);
                if (!yh) return ActionVerdict::fail("theta_" + G.label(h) + " missing a point");
                auto ygh = a.apply(gh, x);
                auto ygg = a.apply(g, *yh);
                if (!ygg || !ygh || *ygg != *ygh)
                    return ActionVerdict::fail("composition fails: theta_" + G.label(g) +
                                               " o theta_" + G.label(h) + " != theta_" +
                                               G.label(gh) + " at " + detail::point_name(a, x));
            }
        }
        // theta_{g^-1} = theta_g^-1.
        for (auto& [x, y] : a.map_of(g)) {
            auto back = a.apply(G.inverse(g), y);
            if (!back || *back != x)
                return ActionVerdict::fail("theta_" + G.label(G.inverse(g)) +
                                           " is not the inverse of theta_" + G.label(g));
        }
    }
    return {};
}

// Restriction of a global action to an arbitrary subset: D_g = eta_g(X) n X.
inline FinitePartialAction restrict_global(const FinitePartialAction& global,
                                           const PointSet& subset) {
    auto ok = validate_action(global);
    if (!ok) throw precondition_error("restrict_global: invalid input action: " + ok.violation);
    const Group& G = global.group;
    for (int g : G.elements())
        if (global.domain(g).size() != global.carrier.size())
            throw precondition_error("restrict_global: input is not a global action");
    for (int x : subset)
        if (x < 0 || static_cast<std::size_t>(x) >= global.carrier.size())
            throw precondition_error("restrict_global: subset not inside the carrier");

    FinitePartialAction r;
    r.group = G;
    std::map<int, int> reindex;
    for (int x : subset) {
        reindex[x] = static_cast<int>(r.carrier.size());
        r.carrier.push_back(global.carrier[x]);
    }
    for (int g : G.elements()) {
        PointSet dg;
        for (int x : subset) {
            // x in eta_g(X) n X  iff  eta_{g^-1}(x) in X.
            auto pre = global.apply(G.inverse(g), x);
            if (pre && subset.count(*pre)) dg.insert(reindex[x]);
        }
        r.domains[g] = dg;
        PointMap m;
        for (int x : subset) {
            auto y = global.apply(g, x);
            if (y && subset.count(*y)) m[reindex[x]] = reindex[*y];
        }
        r.maps[g] = m;
    }
    return r;
}

struct Globalization {
    FinitePartialAction global;
    std::map<int, int> embedding;  // carrier index of the input -> global index
};

// The enveloping action: quotient of G x X by (g,x) ~ (h,y) iff
// x in D_{g^-1 h} and theta_{h^-1 g}(x) = y, carrying the translation action
// tau_g([h,x]) = [gh,x].
inline Globalization globalize(const FinitePartialAction& a) {
    if (!a.group.is_finite())
        throw precondition_error("globalize: only finite acting groups are supported");
    auto ok = validate_action(a);
    if (!ok) throw precondition_error("globalize: invalid action: " + ok.violation);
    const Group& G = a.group;
    auto elems = G.elements();
    const int n = static_cast<int>(a.carrier.size());

    // (g,x) ~ (h,y)  iff  x in D_{g^-1 h} and theta_{h^-1 g}(x) = y; the map
    // theta_{h^-1 g} is defined exactly on D_{g^-1 h}.
    auto related = [&](int g, int x, int h, int y) {
        auto im = a.apply(G.op(G.inverse(h), g), x);
        return im && *im == y;
    };

    // Union-find over pairs (g, x).
    std::vector<int> parent(elems.size() * n);
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    auto idx = [&](int g, int x) { return g * n + x; };
    for (int g : elems)
        for (int x = 0; x < n; ++x)
            for (int h : elems)
                for (int y = 0; y < n; ++y)
                    if (related(g, x, h, y)) {
                        int i = find(idx(g, x)), j = find(idx(h, y));
                        if (i != j) parent[i] = j;
                    }

    std::map<int, int> cls;  // representative -> new point index
    Globalization out;
    out.global.group = G;
    auto class_of = [&](int g, int x) {
        int r = find(idx(g, x));
        auto it = cls.find(r);
        if (it != cls.end()) return it->second;
        int id = static_cast<int>(out.global.carrier.size());
        cls[r] = id;
        out.global.carrier.push_back("[" + G.label(g) + "," + a.carrier[x] + "]");
        return id;
    };
    // Enumerate classes with [1,x] first so the embedding reads naturally.
    for (int x = 0; x < n; ++x) out.embedding[x] = class_of(G.unit(), x);
    for (int g : elems)
        for (int x = 0; x < n; ++x) class_of(g, x);

    const int N = static_cast<int>(out.global.carrier.size());
    for (int g : elems) {
        PointSet all;
        for (int p = 0; p < N; ++p) all.insert(p);
        out.global.domains[g] = all;
        PointMap m;
        for (int h : elems)
            for (int x = 0; x < n; ++x) m[class_of(h, x)] = class_of(G.op(g, h), x);
        out.global.maps[g] = m;
    }
    auto gok = validate_action(out.global);
    if (!gok) throw consistency_error("globalize: constructed action invalid: " + gok.violation);
    return out;
}

inline bool is_invariant(const FinitePartialAction& a, const PointSet& Y) {
    for (int x : Y)
        if (x < 0 || static_cast<std::size_t>(x) >= a.carrier.size())
            throw precondition_error("is_invariant: Y not inside the carrier");
    for (int g : a.group.elements())
        for (int x : Y) {
            if (!a.domain(a.group.inverse(g)).count(x)) continue;
            auto y = a.apply(g, x);
            if (y && !Y.count(*y)) return false;
        }
    return true;
}

inline FinitePartialAction restrict_invariant(const FinitePartialAction& a, const PointSet& Y) {
    if (!is_invariant(a, Y)) throw precondition_error("restrict_invariant: subset not invariant");
    FinitePartialAction r;
    r.group = a.group;
    std::map<int, int> reindex;
    for (int x : Y) {
        reindex[x] = static_cast<int>(r.carrier.size());
        r.carrier.push_back(a.carrier[x]);
    }
    for (int g : a.group.elements()) {
        PointSet dg;
        for (int x : Y)
            if (a.domain(g).count(x)) dg.insert(reindex[x]);
        r.domains[g] = dg;
        PointMap m;
        for (int x : Y) {
            if (!a.domain(a.group.inverse(g)).count(x)) continue;
            auto y = a.apply(g, x);
            if (y) m[reindex[x]] = reindex[*y];
        }
        r.maps[g] = m;
    }
    return r;
}

// Smallest invariant set containing S.
inline PointSet saturate(const FinitePartialAction& a, PointSet S) {
    bool grew = true;
    while (grew) {
        grew = false;
        for (int g : a.group.elements())
            for (int x : std::vector<int>(S.begin(), S.end())) {
                auto y = a.apply(g, x);
                if (y && S.insert(*y).second) grew = true;
            }
    }
    return S;
}

// Exhaustive search for an equivariant bijection phi with phi(D_g^a) = D_g^b
// and phi o theta_g^a = theta_g^b o phi.
inline std::optional<std::vector<int>> equivalent(const FinitePartialAction& a,
                                                  const FinitePartialAction& b,
                                                  std::size_t size_bound = 9) {
    if (!(a.group == b.group)) throw precondition_error("equivalent: different groups");
    if (a.carrier.size() != b.carrier.size()) return std::nullopt;
    if (a.carrier.size() > size_bound)
        throw precondition_error("equivalent: carrier exceeds the configured bound");
    auto elems = a.group.elements();
    for (int g : elems)
        if (a.domain(g).size() != b.domain(g).size()) return std::nullopt;

    const int n = static_cast<int>(a.carrier.size());
    std::vector<int> phi(n, -1), used(n, 0);
    std::function<bool(int)> search = [&](int x) -> bool {
        if (x == n) {
            for (int g : elems)
                for (auto& [p, q] : a.map_of(g))
                    if (b.apply(g, phi[p]) != std::optional<int>(phi[q])) return false;
            return true;
        }
        for (int y = 0; y < n; ++y) {
            if (used[y]) continue;
            bool fits = true;
            for (int g : elems)
                if (a.domain(g).count(x) != static_cast<bool>(b.domain(g).count(y))) {
                    fits = false;
                    break;
                }
            if (!fits) continue;
            // Partial equivariance against already-assigned points.
            for (int g : elems) {
                auto im = a.apply(g, x);
                if (im && phi[*im] != -1) {
                    auto bm = b.apply(g, y);
                    if (!bm || *bm != phi[*im]) {
                        fits = false;
                        break;
                    }
                }
            }
            if (!fits) continue;
            phi[x] = y;
            used[y] = 1;
            if (search(x + 1)) return true;
            phi[x] = -1;
            used[y] = 0;
        }
        return false;
    };
    if (!search(0)) return std::nullopt;
    return phi;
}

// The partial Bernoulli action: carrier = subsets of G containing 1,
// D_g = { w : g in w }, theta_g(w) = g w.
inline FinitePartialAction bernoulli_partial(const Group& G) {
    if (!G.is_finite()) throw precondition_error("bernoulli_partial: finite groups only");
    std::size_t n = G.order();
    if (n > 20) throw precondition_error("bernoulli_partial: group too large to enumerate");
    auto elems = G.elements();
    int unit = G.unit();

    // Bitmask over group elements; carrier lists all masks containing the unit.
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 0; m < (1u << n); ++m)
        if (m & (1u << unit)) masks.push_back(m);
    std::map<std::uint32_t, int> index;
    FinitePartialAction a;
    a.group = G;
    for (auto m : masks) {
        index[m] = static_cast<int>(a.carrier.size());
        std::string name = "{";
        bool first = true;
        for (int g : elems)
            if (m & (1u << g)) {
                name += (first ? "" : ",") + G.label(g);
                first = false;
            }
        a.carrier.push_back(name + "}");
    }
    auto translate = [&](int g, std::uint32_t m) {
        std::uint32_t r = 0;
        for (int h : elems)
            if (m & (1u << h)) r |= (1u << G.op(g, h));
        return r;
    };
    for (int g : elems) {
        PointSet dg;
        for (auto m : masks)
            if (m & (1u << g)) dg.insert(index[m]);
        a.domains[g] = dg;
        PointMap mp;
        for (auto m : masks)
            if (m & (1u << G.inverse(g))) mp[index[m]] = index[translate(g, m)];
        a.maps[g] = mp;
    }
    auto ok = validate_action(a);
    if (!ok) throw consistency_error("bernoulli_partial: invalid action: " + ok.violation);
    return a;
}

// Action graph { (y, g, x) : x in D_{g^-1}, theta_g(x) = y } with its
// groupoid structure implicit in the triples.
struct ActionGraphTriple {
    int y;
    int g;
    int x;
    friend bool operator<(const ActionGraphTriple& a, const ActionGraphTriple& b) {
        if (a.y != b.y) return a.y < b.y;
        if (a.g != b.g) return a.g < b.g;
        return a.x < b.x;
    }
    friend bool operator==(const ActionGraphTriple& a, const ActionGraphTriple& b) {
        return a.y == b.y && a.g == b.g && a.x == b.x;
    }
};

inline std::set<ActionGraphTriple> action_graph(const FinitePartialAction& a) {
    std::set<ActionGraphTriple> out;
    for (int g : a.group.elements())
        for (auto& [x, y] : a.map_of(g)) out.insert({y, g, x});
    return out;
}

inline PointSet fixed_points(const FinitePartialAction& a, int g) {
    PointSet out;
    for (auto& [x, y] : a.map_of(g))
        if (x == y) out.insert(x);
    return out;
}

// On a finite discrete carrier every point is isolated, so topological
// freeness reduces to freeness: no fixed points for g != 1.
inline bool is_topologically_free(const FinitePartialAction& a) {
    for (int g : a.group.elements())
        if (g != a.group.unit() && !fixed_points(a, g).empty()) return false;
    return true;
}

// The unique semi-saturated evaluator of a family of partial symmetries:
// a reduced word acts by composing the symmetries along its letters.
class FreeGroupAction {
public:
    FreeGroupAction(std::vector<std::string> names, std::vector<PointMap> symmetries)
        : names_(std::move(names)), sym_(std::move(symmetries)) {
        if (names_.size() != sym_.size())
            throw precondition_error("free action: names/symmetries mismatch");
        for (auto& f : sym_) {
            std::set<int> image;
            for (auto& [x, y] : f)
                if (!image.insert(y).second)
                    throw precondition_error("free action: symmetry is not injective");
        }
        for (auto& f : sym_) {
            PointMap inv;
            for (auto& [x, y] : f) inv[y] = x;
            inv_.push_back(std::move(inv));
        }
    }

    std::optional<int> apply(const FreeWord& w, int x) const {
        // theta_g = theta_{x_1} o ... o theta_{x_n} evaluated right to left.
        int cur = x;
        const auto& ls = w.letters();
        for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
            const PointMap& f = it->sign > 0 ? sym_[index(it->gen)] : inv_[index(it->gen)];
            auto jt = f.find(cur);
            if (jt == f.end()) return std::nullopt;
            cur = jt->second;
        }
        return cur;
    }

private:
    std::size_t index(const std::string& name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        throw precondition_error("free action: unknown generator " + name);
    }

    std::vector<std::string> names_;
    std::vector<PointMap> sym_;
    std::vector<PointMap> inv_;
};

inline FreeGroupAction free_action_from_symmetries(std::vector<std::string> names,
                                                   std::vector<PointMap> symmetries) {
    return FreeGroupAction(std::move(names), std::move(symmetries));
}

}  // namespace partact

#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <vector>

#include "partact/rational.hpp"

namespace partact {

// A finite group as a Cayley table.  Elements are indices into the table.
struct FiniteGroup {
    std::size_t order = 0;
    std::vector<std::vector<int>> mult;  // order x order
    int unit = 0;
    std::vector<int> inv;
    std::vector<std::string> labels;

    void validate() const {
        if (mult.size() != order) throw format_error("group: bad table height");
        for (auto& row : mult) {
            if (row.size() != order) throw format_error("group: bad table width");
            for (int v : row)
                if (v < 0 || static_cast<std::size_t>(v) >= order)
                    throw format_error("group: table entry out of range");
        }
        if (inv.size() != order) throw format_error("group: bad inverse table");
        for (std::size_t a = 0; a < order; ++a) {
            if (mult[unit][a] != static_cast<int>(a) || mult[a][unit] != static_cast<int>(a))
                throw format_error("group: unit axiom fails");
            if (mult[a][inv[a]] != unit || mult[inv[a]][a] != unit)
                throw format_error("group: inverse axiom fails");
            for (std::size_t b = 0; b < order; ++b)
                for (std::size_t c = 0; c < order; ++c)
                    if (mult[mult[a][b]][c] != mult[a][mult[b][c]])
                        throw format_error("group: associativity fails");
        }
    }
};

// Either a finite group or the additive integers restricted to a support
// window [-window, window].  The window is a hard bound: any product landing
// outside it is an error, never a silent truncation.
class Group {
public:
    static Group finite(FiniteGroup g) {
        g.validate();
        Group out;
        out.fin_ = std::move(g);
        out.finite_ = true;
        return out;
    }
    static Group z_trunc(long window) {
        if (window < 1) throw precondition_error("Z_trunc: window must be >= 1");
        Group out;
        out.finite_ = false;
        out.window_ = window;
        return out;
    }

    bool is_finite() const { return finite_; }
    long window() const { return window_; }
    const FiniteGroup& table() const { return fin_; }

    std::size_t order() const { return finite_ ? fin_.order : 2 * window_ + 1; }
    int unit() const { return finite_ ? fin_.unit : 0; }

    int op(int a, int b) const {
        if (finite_) return fin_.mult[a][b];
        long s = static_cast<long>(a) + b;
        if (s < -window_ || s > window_)
            throw precondition_error("Z_trunc: product escapes the support window");
        return static_cast<int>(s);
    }
    int inverse(int a) const { return finite_ ? fin_.inv[a] : -a; }
    bool in_range(int a) const {
        return finite_ ? (a >= 0 && static_cast<std::size_t>(a) < fin_.order)
                       : (a >= -window_ && a <= window_);
    }

    // All elements (the window, for Z_trunc).
    std::vector<int> elements() const {
        std::vector<int> out;
        if (finite_) {
            for (std::size_t i = 0; i < fin_.order; ++i) out.push_back(static_cast<int>(i));
        } else {
            for (long k = -window_; k <= window_; ++k) out.push_back(static_cast<int>(k));
        }
        return out;
    }

    std::string label(int g) const {
        if (!finite_) return std::to_string(g);
        if (!fin_.labels.empty()) return fin_.labels[g];
        return std::to_string(g);
    }
    int element_by_label(const std::string& s) const {
        if (!finite_) {
            try {
                int v = std::stoi(s);
                if (!in_range(v)) throw format_error("Z_trunc label out of window: " + s);
                return v;
            } catch (const std::invalid_argument&) {
                throw format_error("bad Z_trunc element label: " + s);
            }
        }
        for (std::size_t i = 0; i < fin_.order; ++i)
            if (label(static_cast<int>(i)) == s) return static_cast<int>(i);
        throw format_error("unknown group element label: " + s);
    }

    friend bool operator==(const Group& a, const Group& b) {
        if (a.finite_ != b.finite_) return false;
        if (!a.finite_) return a.window_ == b.window_;
        return a.fin_.order == b.fin_.order && a.fin_.mult == b.fin_.mult &&
               a.fin_.unit == b.fin_.unit;
    }

private:
    bool finite_ = true;
    FiniteGroup fin_;
    long window_ = 0;
};

inline FiniteGroup cyclic_group(std::size_t n) {
    if (n == 0) throw precondition_error("cyclic group order must be positive");
    FiniteGroup g;
    g.order = n;
    g.unit = 0;
    g.mult.assign(n, std::vector<int>(n));
    g.inv.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        g.inv[a] = static_cast<int>((n - a) % n);
        for (std::size_t b = 0; b < n; ++b) g.mult[a][b] = static_cast<int>((a + b) % n);
        g.labels.push_back("g" + std::to_string(a));
    }
    g.labels[0] = "1";
    return g;
}

inline FiniteGroup klein_group() {
    FiniteGroup g;
    g.order = 4;
    g.unit = 0;
    g.labels = {"1", "a", "b", "ab"};
    g.mult = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    g.inv = {0, 1, 2, 3};
    return g;
}

inline FiniteGroup symmetric_group_3() {
    // Permutations of {0,1,2}; composition (p*q)(x) = p(q(x)).
    std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0},
                                             {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    FiniteGroup g;
    g.order = 6;
    g.unit = 0;
    g.labels = {"e", "s01", "s02", "s12", "c120", "c201"};
    g.mult.assign(6, std::vector<int>(6));
    g.inv.resize(6);
    auto find = [&](const std::array<int, 3>& p) {
        for (std::size_t i = 0; i < perms.size(); ++i)
            if (perms[i] == p) return static_cast<int>(i);
        throw consistency_error("S3 table construction");
    };
    for (std::size_t a = 0; a < 6; ++a) {
        for (std::size_t b = 0; b < 6; ++b) {
            std::array<int, 3> c{};
            for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
            g.mult[a][b] = find(c);
        }
        std::array<int, 3> iv{};
        for (int x = 0; x < 3; ++x) iv[perms[a][x]] = x;
        g.inv[a] = find(iv);
    }
    return g;
}

// Accepted names: "Z_n(k)", "Zk" (cyclic of order k), "Z2xZ2", "S3",
// "Z_trunc(n)".
inline Group builtin_group(const std::string& name) {
    auto arg_of = [&](const std::string& prefix) -> long {
        std::string inner = name.substr(prefix.size());
        if (inner.size() < 3 || inner.front() != '(' || inner.back() != ')')
            throw format_error("bad group name: " + name);
        return std::stol(inner.substr(1, inner.size() - 2));
    };
    if (name == "Z2xZ2") return Group::finite(klein_group());
    if (name == "S3") return Group::finite(symmetric_group_3());
    if (name.rfind("Z_trunc", 0) == 0) return Group::z_trunc(arg_of("Z_trunc"));
    if (name.rfind("Z_n", 0) == 0) return Group::finite(cyclic_group(arg_of("Z_n")));
    if (name.size() > 1 && name[0] == 'Z') {
        try {
            return Group::finite(cyclic_group(std::stoul(name.substr(1))));
        } catch (const std::invalid_argument&) {
        }
    }
    throw format_error("unknown group name: " + name);
}

// A length function on a group: l(1) = 0 and l(gh) <= l(g) + l(h).
struct LengthFunction {
    std::map<int, Rational> values;

    Rational at(int g) const {
        auto it = values.find(g);
        if (it == values.end()) throw precondition_error("length function: missing element");
        return it->second;
    }

    void validate(const Group& g) const {
        if (at(g.unit()) != 0) throw precondition_error("length function: l(1) != 0");
        auto elems = g.elements();
        for (int a : elems) {
            if (at(a) < 0) throw precondition_error("length function: negative value");
            for (int b : elems) {
                if (!g.is_finite()) {
                    long s = static_cast<long>(a) + b;
                    if (s < -g.window() || s > g.window()) continue;
                }
                if (at(g.op(a, b)) > at(a) + at(b))
                    throw precondition_error("length function: subadditivity fails");
            }
        }
    }
};

// Word length with respect to a symmetric generating set, by breadth-first
// search over the Cayley graph.
inline LengthFunction word_length_function(const Group& g, const std::vector<int>& generators) {
    LengthFunction lf;
    std::map<int, long> dist;
    std::vector<int> frontier = {g.unit()};
    dist[g.unit()] = 0;
    std::vector<int> gens = generators;
    for (int x : generators) gens.push_back(g.inverse(x));
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int a : frontier)
            for (int x : gens) {
                int b;
                try {
                    b = g.op(a, x);
                } catch (const precondition_error&) {
                    continue;
                }
                if (!dist.count(b)) {
                    dist[b] = dist[a] + 1;
                    next.push_back(b);
                }
            }
        frontier.swap(next);
    }
    for (int a : g.elements()) {
        if (!dist.count(a)) throw precondition_error("word length: generators do not generate");
        lf.values[a] = Rational(dist[a]);
    }
    return lf;
}

}  // namespace partact

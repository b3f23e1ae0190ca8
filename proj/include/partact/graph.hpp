#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "partact/matrix.hpp"

namespace partact {

// A finite directed graph E = (E^0, E^1, r, d).  Paths compose like category
// morphisms: in a = a_1 ... a_n consecutive edges satisfy d(a_i) = r(a_{i+1}).
struct GraphEdge {
    std::string name;
    int r = 0;  // range vertex
    int d = 0;  // domain (source) vertex
};

struct DirectedGraph {
    std::vector<std::string> vertices;
    std::vector<GraphEdge> edges;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }

    std::vector<int> edges_with_range(int v) const {
        std::vector<int> out;
        for (int e = 0; e < edge_count(); ++e)
            if (edges[e].r == v) out.push_back(e);
        return out;
    }
    std::vector<int> edges_with_domain(int v) const {
        std::vector<int> out;
        for (int e = 0; e < edge_count(); ++e)
            if (edges[e].d == v) out.push_back(e);
        return out;
    }
    int edge_by_name(const std::string& n) const {
        for (int e = 0; e < edge_count(); ++e)
            if (edges[e].name == n) return e;
        throw format_error("unknown edge: " + n);
    }
    int vertex_by_name(const std::string& n) const {
        for (int v = 0; v < vertex_count(); ++v)
            if (vertices[v] == n) return v;
        throw format_error("unknown vertex: " + n);
    }
    void validate() const {
        for (auto& e : edges) {
            if (e.r < 0 || e.r >= vertex_count() || e.d < 0 || e.d >= vertex_count())
                throw format_error("edge endpoint out of range");
        }
        std::set<std::string> names;
        for (auto& e : edges)
            if (!names.insert(e.name).second) throw format_error("duplicate edge name " + e.name);
    }
};

struct VertexClassification {
    std::set<int> sinks;    // d^-1(v) empty
    std::set<int> sources;  // r^-1(v) empty
    std::set<int> regular;  // r^-1(v) finite and nonempty
};

inline VertexClassification classify_vertices(const DirectedGraph& g) {
    VertexClassification c;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.edges_with_domain(v).empty()) c.sinks.insert(v);
        auto in = g.edges_with_range(v);
        if (in.empty())
            c.sources.insert(v);
        else
            c.regular.insert(v);
    }
    return c;
}

inline bool has_sinks(const DirectedGraph& g) { return !classify_vertices(g).sinks.empty(); }

// A finite path: a vertex (length 0) or a composable edge list a_1 ... a_n.
struct FinPath {
    int base_vertex = -1;    // the vertex, for length 0
    std::vector<int> edges;  // a_1 first

    static FinPath vertex(int v) {
        FinPath p;
        p.base_vertex = v;
        return p;
    }
    static FinPath of_edges(const DirectedGraph& g, std::vector<int> es) {
        FinPath p;
        p.edges = std::move(es);
        if (!p.composes(g)) throw precondition_error("edge list is not a path");
        return p;
    }

    std::size_t length() const { return edges.size(); }
    bool is_vertex() const { return edges.empty(); }

    bool composes(const DirectedGraph& g) const {
        for (std::size_t i = 0; i + 1 < edges.size(); ++i)
            if (g.edges[edges[i]].d != g.edges[edges[i + 1]].r) return false;
        return true;
    }
    int r(const DirectedGraph& g) const {
        return edges.empty() ? base_vertex : g.edges[edges.front()].r;
    }
    int d(const DirectedGraph& g) const {
        return edges.empty() ? base_vertex : g.edges[edges.back()].d;
    }

    // mu is a prefix of beta: equal ranges, mu's edges lead.
    static bool is_prefix(const DirectedGraph& g, const FinPath& mu, const FinPath& beta) {
        if (mu.length() > beta.length()) return false;
        if (mu.is_vertex()) return mu.base_vertex == beta.r(g);
        for (std::size_t i = 0; i < mu.length(); ++i)
            if (mu.edges[i] != beta.edges[i]) return false;
        return true;
    }
    // Concatenation alpha beta, requiring d(alpha) = r(beta).
    static FinPath concat(const DirectedGraph& g, const FinPath& a, const FinPath& b) {
        if (a.d(g) != b.r(g)) throw precondition_error("paths do not compose");
        if (a.is_vertex()) return b;
        if (b.is_vertex()) return a;
        FinPath p = a;
        p.edges.insert(p.edges.end(), b.edges.begin(), b.edges.end());
        return p;
    }
    // The suffix with beta = prefix . suffix.
    static FinPath suffix_after(const DirectedGraph& g, const FinPath& prefix,
                                const FinPath& beta) {
        if (!is_prefix(g, prefix, beta)) throw precondition_error("not a prefix");
        if (prefix.length() == beta.length()) return FinPath::vertex(beta.d(g));
        FinPath s;
        s.edges.assign(beta.edges.begin() + static_cast<long>(prefix.length()),
                       beta.edges.end());
        return s;
    }

    friend bool operator==(const FinPath& a, const FinPath& b) {
        if (a.edges.empty() != b.edges.empty()) return false;
        if (a.edges.empty()) return a.base_vertex == b.base_vertex;
        return a.edges == b.edges;
    }
    friend bool operator<(const FinPath& a, const FinPath& b) {
        if (a.edges.empty() != b.edges.empty()) return a.edges.empty();
        if (a.edges.empty()) return a.base_vertex < b.base_vertex;
        if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
        return a.edges < b.edges;
    }

    std::string str(const DirectedGraph& g) const {
        if (is_vertex()) return "v:" + g.vertices[base_vertex];
        std::string s;
        for (std::size_t i = 0; i < edges.size(); ++i)
            s += (i ? "." : "") + g.edges[edges[i]].name;
        return s;
    }
};

// All paths of the given length with d(path) = v (built from the d-end).
inline std::vector<FinPath> paths_into(const DirectedGraph& g, int v, std::size_t len) {
    std::vector<FinPath> cur = {FinPath::vertex(v)};
    for (std::size_t l = 0; l < len; ++l) {
        std::vector<FinPath> next;
        for (auto& p : cur) {
            int attach = p.r(g);  // prepend an edge e with d(e) = r(p)
            for (int e : g.edges_with_domain(attach)) {
                FinPath q;
                q.edges.push_back(e);
                q.edges.insert(q.edges.end(), p.edges.begin(), p.edges.end());
                next.push_back(q);
            }
        }
        cur.swap(next);
    }
    return cur;
}

// All paths of the given length with r(path) = v (grown at the d-end).
inline std::vector<FinPath> paths_from(const DirectedGraph& g, int v, std::size_t len) {
    std::vector<FinPath> cur = {FinPath::vertex(v)};
    for (std::size_t l = 0; l < len; ++l) {
        std::vector<FinPath> next;
        for (auto& p : cur) {
            int end = p.d(g);
            for (int e : g.edges_with_range(end)) {
                FinPath q = p;
                q.edges.push_back(e);
                next.push_back(q);
            }
        }
        cur.swap(next);
    }
    return cur;
}

// An eventually periodic infinite path nu gamma gamma gamma ..., held in the
// canonical form with gamma primitive and nu minimal (no rotation of gamma
// absorbable into nu).
struct EvPeriodicPath {
    FinPath prefix;  // nu
    FinPath cycle;   // gamma, r(gamma) = d(gamma) = d(nu)

    static EvPeriodicPath make(const DirectedGraph& g, FinPath nu, FinPath gamma) {
        if (gamma.is_vertex()) throw precondition_error("period must have positive length");
        if (gamma.r(g) != gamma.d(g)) throw precondition_error("period is not a cycle");
        if (nu.d(g) != gamma.r(g)) throw precondition_error("prefix does not meet the cycle");
        // Absorb trailing rotations of gamma into the cycle.
        while (!nu.is_vertex() && nu.edges.back() == gamma.edges.back()) {
            int e = nu.edges.back();
            nu.edges.pop_back();
            if (nu.edges.empty()) {
                nu = FinPath::vertex(g.edges[e].r);
            }
            gamma.edges.pop_back();
            gamma.edges.insert(gamma.edges.begin(), e);
        }
        // Reduce gamma to its primitive root.
        for (std::size_t p = 1; p <= gamma.length() / 2; ++p) {
            if (gamma.length() % p) continue;
            bool periodic = true;
            for (std::size_t i = p; i < gamma.length() && periodic; ++i)
                if (gamma.edges[i] != gamma.edges[i % p]) periodic = false;
            if (periodic) {
                gamma.edges.resize(p);
                break;
            }
        }
        EvPeriodicPath out;
        out.prefix = std::move(nu);
        out.cycle = std::move(gamma);
        return out;
    }

    int edge_at(std::size_t i) const {
        if (i < prefix.length()) return prefix.edges[i];
        return cycle.edges[(i - prefix.length()) % cycle.length()];
    }
    int r(const DirectedGraph& g) const { return prefix.r(g); }

    FinPath truncate(std::size_t len) const {
        FinPath p;
        for (std::size_t i = 0; i < len; ++i) p.edges.push_back(edge_at(i));
        return p;
    }

    friend bool operator==(const EvPeriodicPath& a, const EvPeriodicPath& b) {
        return a.prefix == b.prefix && a.cycle == b.cycle;
    }
};

// s_alpha s_beta*, or zero; nonzero requires d(alpha) = d(beta).
struct GraphSGElement {
    bool zero = false;
    FinPath alpha;
    FinPath beta;

    static GraphSGElement zero_elem() { return {true, {}, {}}; }
    static GraphSGElement make(const DirectedGraph& g, FinPath a, FinPath b) {
        if (!a.composes(g) || !b.composes(g)) return zero_elem();
        if (a.d(g) != b.d(g)) return zero_elem();
        return {false, std::move(a), std::move(b)};
    }
    friend bool operator==(const GraphSGElement& x, const GraphSGElement& y) {
        if (x.zero || y.zero) return x.zero == y.zero;
        return x.alpha == y.alpha && x.beta == y.beta;
    }
};

// (a,b)(m,n): splice along the prefix trichotomy, else zero.
inline GraphSGElement graph_semigroup_mult(const DirectedGraph& g, const GraphSGElement& x,
                                           const GraphSGElement& y) {
    if (x.zero || y.zero) return GraphSGElement::zero_elem();
    if (FinPath::is_prefix(g, x.beta, y.alpha)) {
        FinPath xi = FinPath::suffix_after(g, x.beta, y.alpha);
        return GraphSGElement::make(g, FinPath::concat(g, x.alpha, xi), y.beta);
    }
    if (FinPath::is_prefix(g, y.alpha, x.beta)) {
        FinPath xi = FinPath::suffix_after(g, y.alpha, x.beta);
        return GraphSGElement::make(g, x.alpha, FinPath::concat(g, y.beta, xi));
    }
    return GraphSGElement::zero_elem();
}

inline GraphSGElement graph_semigroup_star(const GraphSGElement& x) {
    if (x.zero) return x;
    return {false, x.beta, x.alpha};
}

// Verdict for a family of matrices against the Toeplitz / Cuntz-Krieger
// relations.
struct ToeplitzVerdict {
    bool ok = true;
    bool uniqueness_hypothesis = true;  // all p_v != 0
    std::string violation;
    explicit operator bool() const { return ok; }
};

inline ToeplitzVerdict toeplitz_relations_check(const DirectedGraph& g,
                                                const std::map<int, ExactMatrix>& P,
                                                const std::map<int, ExactMatrix>& S,
                                                bool include_ck) {
    ToeplitzVerdict v;
    if (P.size() != static_cast<std::size_t>(g.vertex_count()) ||
        S.size() != static_cast<std::size_t>(g.edge_count())) {
        v.ok = false;
        v.violation = "family size mismatch";
        return v;
    }
    std::size_t n = P.begin()->second.rows();
    for (auto& [_, m] : P)
        if (m.rows() != n || m.cols() != n) {
            v.ok = false;
            v.violation = "mixed shapes";
            return v;
        }
    for (auto& [_, m] : S)
        if (m.rows() != n || m.cols() != n) {
            v.ok = false;
            v.violation = "mixed shapes";
            return v;
        }
    // Mutually orthogonal projections.
    for (auto& [u, pu] : P) {
        if (!(pu == pu.adjoint()) || !(pu * pu == pu)) {
            v.ok = false;
            v.violation = "p_" + g.vertices[u] + " is not a projection";
            return v;
        }
        if (pu.is_zero()) v.uniqueness_hypothesis = false;
        for (auto& [w, pw] : P)
            if (u != w && !(pu * pw).is_zero()) {
                v.ok = false;
                v.violation = "vertex projections are not orthogonal";
                return v;
            }
    }
    // (i) s_a* s_b = [a=b] p_{d(a)}.
    for (int a = 0; a < g.edge_count(); ++a)
        for (int b = 0; b < g.edge_count(); ++b) {
            ExactMatrix lhs = S.at(a).adjoint() * S.at(b);
            ExactMatrix rhs = (a == b) ? P.at(g.edges[a].d)
                                       : ExactMatrix::zero(n, n);
            if (lhs != rhs) {
                v.ok = false;
                v.violation = "s_" + g.edges[a].name + "* s_" + g.edges[b].name +
                              " != [a=b] p_{d(a)}";
                return v;
            }
        }
    // (ii) s_a s_a* <= p_{r(a)}, exact surrogate p (s s*) p = s s*.
    for (int a = 0; a < g.edge_count(); ++a) {
        ExactMatrix ss = S.at(a) * S.at(a).adjoint();
        const ExactMatrix& p = P.at(g.edges[a].r);
        if (p * ss * p != ss) {
            v.ok = false;
            v.violation = "s_" + g.edges[a].name + " s* not dominated by p_{r(a)}";
            return v;
        }
    }
    // (iii) for regular vertices, when requested.
    if (include_ck) {
        auto cls = classify_vertices(g);
        for (int u : cls.regular) {
            ExactMatrix sum(n, n);
            for (int a : g.edges_with_range(u)) sum = sum + S.at(a) * S.at(a).adjoint();
            if (sum != P.at(u)) {
                v.ok = false;
                v.violation = "p_" + g.vertices[u] + " != sum of range projections";
                return v;
            }
        }
    }
    // Derived relations on the induced e_g = u_g u_{g^-1}:
    // e_{a^-1} = s_a* s_a, e_a = s_a s_a*.
    for (int a = 0; a < g.edge_count(); ++a)
        for (int b = 0; b < g.edge_count(); ++b) {
            ExactMatrix eia = S.at(a).adjoint() * S.at(a);
            ExactMatrix eib = S.at(b).adjoint() * S.at(b);
            ExactMatrix ea = S.at(a) * S.at(a).adjoint();
            ExactMatrix eb = S.at(b) * S.at(b).adjoint();
            if (g.edges[a].d == g.edges[b].d && eia != eib) {
                v.ok = false;
                v.violation = "e_{a^-1} != e_{b^-1} for d(a) = d(b)";
                return v;
            }
            if (g.edges[a].d != g.edges[b].d && !(eia * eib).is_zero()) {
                v.ok = false;
                v.violation = "e_{a^-1} e_{b^-1} != 0 for d(a) != d(b)";
                return v;
            }
            if (g.edges[a].r == g.edges[b].d && eib * ea != ea) {
                v.ok = false;
                v.violation = "e_a not dominated by e_{b^-1} for r(a) = d(b)";
                return v;
            }
            if (a != b && !(ea * eb).is_zero()) {
                v.ok = false;
                v.violation = "e_a e_b != 0 for a != b";
                return v;
            }
        }
    return v;
}

}  // namespace partact

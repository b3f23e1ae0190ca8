#pragma once

#include <variant>

#include "partact/free_word.hpp"
#include "partact/graph.hpp"

namespace partact {

// A free-group element over the edge alphabet in standard form mu nu^-1:
// composable paths with d(mu) = d(nu), no cancellation at the junction.
struct StdForm {
    FinPath mu;
    FinPath nu;
};

// Either a finite path or an eventually periodic one.
using PathPoint = std::variant<FinPath, EvPeriodicPath>;

inline FreeWord word_of_path(const DirectedGraph& g, const FinPath& p) {
    FreeWord w;
    for (int e : p.edges) w = w * FreeWord::generator(g.edges[e].name);
    return w;
}

// The standard form of a reduced word, when it has one: positive letters then
// negative letters, both sides composable paths with matching sources.  Zero-
// length parts are vertices recovered from context.
inline std::optional<StdForm> standard_form(const DirectedGraph& g, const FreeWord& w) {
    if (w.is_identity())
        throw precondition_error("standard_form: the identity is handled separately");
    std::vector<int> pos, neg;
    bool seen_neg = false;
    for (auto& l : w.letters()) {
        int e = g.edge_by_name(l.gen);
        if (l.sign > 0) {
            if (seen_neg) return std::nullopt;  // negative-then-positive shape
            pos.push_back(e);
        } else {
            seen_neg = true;
            neg.push_back(e);
        }
    }
    std::reverse(neg.begin(), neg.end());
    FinPath mu, nu;
    if (!pos.empty()) {
        mu.edges = pos;
        if (!mu.composes(g)) return std::nullopt;
    }
    if (!neg.empty()) {
        nu.edges = neg;
        if (!nu.composes(g)) return std::nullopt;
    }
    if (pos.empty()) mu = FinPath::vertex(nu.d(g));
    if (neg.empty()) nu = FinPath::vertex(mu.d(g));
    if (mu.d(g) != nu.d(g)) return std::nullopt;
    return StdForm{mu, nu};
}

// tau_{mu,nu} : nu gamma -> mu gamma, defined when nu is a prefix.
inline std::optional<PathPoint> tau_apply(const DirectedGraph& g, const FreeWord& w,
                                          const PathPoint& p) {
    auto sf = standard_form(g, w);
    if (!sf) return std::nullopt;
    const FinPath& mu = sf->mu;
    const FinPath& nu = sf->nu;
    if (std::holds_alternative<FinPath>(p)) {
        const FinPath& fp = std::get<FinPath>(p);
        if (!FinPath::is_prefix(g, nu, fp)) return std::nullopt;
        FinPath rest = FinPath::suffix_after(g, nu, fp);
        return PathPoint(FinPath::concat(g, mu, rest));
    }
    const EvPeriodicPath& ip = std::get<EvPeriodicPath>(p);
    // nu must be a prefix of nu' gamma^infty.
    std::size_t n = nu.length();
    if (nu.is_vertex()) {
        if (nu.base_vertex != ip.r(g)) return std::nullopt;
        if (mu.is_vertex()) return PathPoint(ip);
        return PathPoint(EvPeriodicPath::make(
            g, FinPath::concat(g, mu, ip.prefix), ip.cycle));
    }
    for (std::size_t i = 0; i < n; ++i)
        if (nu.edges[i] != ip.edge_at(i)) return std::nullopt;
    // Remainder of the infinite path after position n.
    std::size_t pref = ip.prefix.length();
    FinPath new_prefix;
    FinPath cycle = ip.cycle;
    if (n <= pref) {
        new_prefix = FinPath::suffix_after(g, ip.truncate(n), ip.prefix);
        if (new_prefix.is_vertex()) new_prefix = FinPath::vertex(ip.prefix.d(g));
    } else {
        // Strip into the periodic part: rotate the cycle.
        std::size_t k = (n - pref) % cycle.length();
        std::vector<int> rot(cycle.edges.begin() + static_cast<long>(k), cycle.edges.end());
        rot.insert(rot.end(), cycle.edges.begin(), cycle.edges.begin() + static_cast<long>(k));
        cycle.edges = rot;
        new_prefix = FinPath::vertex(cycle.is_vertex() ? -1 : g.edges[cycle.edges.front()].r);
    }
    FinPath glued = FinPath::concat(g, mu, new_prefix);
    return PathPoint(EvPeriodicPath::make(g, glued, cycle));
}

// omega_alpha truncated at word length L:
// { mu nu^-1 : mu a prefix of alpha, d(mu) = d(nu), |mu| + |nu| <= L }.
inline std::set<FreeWord> omega_of_path(const DirectedGraph& g, const PathPoint& p,
                                        std::size_t L) {
    std::vector<FinPath> prefixes;
    if (std::holds_alternative<FinPath>(p)) {
        const FinPath& fp = std::get<FinPath>(p);
        prefixes.push_back(FinPath::vertex(fp.r(g)));
        for (std::size_t l = 1; l <= std::min(L, fp.length()); ++l) {
            FinPath q;
            q.edges.assign(fp.edges.begin(), fp.edges.begin() + static_cast<long>(l));
            prefixes.push_back(q);
        }
    } else {
        const EvPeriodicPath& ip = std::get<EvPeriodicPath>(p);
        prefixes.push_back(FinPath::vertex(ip.r(g)));
        for (std::size_t l = 1; l <= L; ++l) prefixes.push_back(ip.truncate(l));
    }
    std::set<FreeWord> out;
    for (auto& mu : prefixes) {
        for (std::size_t ln = 0; ln + mu.length() <= L; ++ln) {
            for (auto& nu : paths_into(g, mu.d(g), ln)) {
                FreeWord w = word_of_path(g, mu) * word_of_path(g, nu).inverse();
                out.insert(w);
            }
        }
    }
    return out;
}

// Convexity of a finite subset of the free group within the ball of radius L:
// whenever g, h lie in the set and x sits on the segment from g to h inside
// the ball, x lies in the set too.
inline bool omega_ball_is_convex(const std::set<FreeWord>& omega, std::size_t L,
                                 const std::vector<std::string>& alphabet) {
    std::vector<FreeWord> ball = {FreeWord()};
    {
        std::vector<FreeWord> layer = ball;
        for (std::size_t l = 1; l <= L; ++l) {
            std::vector<FreeWord> next;
            for (auto& w : layer)
                for (auto& a : alphabet)
                    for (int s : {1, -1}) {
                        FreeWord x = w * FreeWord::generator(a, s);
                        if (x.length() == l) next.push_back(x);
                    }
            ball.insert(ball.end(), next.begin(), next.end());
            layer.swap(next);
        }
    }
    for (auto& gw : omega)
        for (auto& hw : omega) {
            std::size_t d = (gw.inverse() * hw).length();
            for (auto& x : ball) {
                std::size_t d1 = (gw.inverse() * x).length();
                std::size_t d2 = (x.inverse() * hw).length();
                if (d1 + d2 == d && !omega.count(x)) return false;
            }
        }
    return true;
}

// The unique fixed point of tau_w, when there is one: nu gamma gamma ... with
// mu = nu gamma.
inline std::optional<EvPeriodicPath> graph_fixed_point(const DirectedGraph& g,
                                                       const FreeWord& w) {
    if (w.is_identity()) throw precondition_error("fixed points of the identity are everything");
    auto sf = standard_form(g, w);
    if (!sf) return std::nullopt;
    if (sf->mu.length() == sf->nu.length()) return std::nullopt;
    if (sf->mu.length() < sf->nu.length()) return graph_fixed_point(g, w.inverse());
    if (!FinPath::is_prefix(g, sf->nu, sf->mu)) return std::nullopt;
    FinPath gamma = FinPath::suffix_after(g, sf->nu, sf->mu);
    // gamma is a cycle at d(nu) by the standard form's matching sources.
    return EvPeriodicPath::make(g, sf->nu, gamma);
}

// --- cycle analysis -----------------------------------------------------------

struct CycleAnalysis {
    bool every_cycle_has_entry = true;
    std::optional<FinPath> no_entry_witness;
    bool every_cycle_recurrent = true;
    std::optional<FinPath> transitory_witness;  // a first-return cycle with no sibling
};

// Number of distinct first-return paths at v (traversal direction d -> r),
// counted up to the length bound and capped at the given cap.
inline std::size_t count_first_returns(const DirectedGraph& g, int v, std::size_t bound,
                                       std::size_t cap) {
    // ways[u][l]: walks of length l from u to v avoiding v internally.
    std::vector<std::vector<std::size_t>> ways(g.vertex_count(),
                                               std::vector<std::size_t>(bound + 1, 0));
    for (std::size_t l = 1; l <= bound; ++l)
        for (int u = 0; u < g.vertex_count(); ++u) {
            std::size_t total = 0;
            for (int e : g.edges_with_domain(u)) {
                int t = g.edges[e].r;
                if (t == v) {
                    if (l == 1) ++total;
                } else if (l > 1) {
                    total += ways[t][l - 1];
                }
            }
            ways[u][l] = std::min(total, cap);
        }
    std::size_t total = 0;
    for (std::size_t l = 1; l <= bound; ++l) total += (v >= 0 ? ways[v][l] : 0);
    return std::min(total, cap);
}

// Reconstructs one first-return path at v (as a path gamma_1 ... gamma_n with
// r(gamma_1) = d(gamma_n) = v), if any exists within the bound.
inline std::optional<FinPath> some_first_return(const DirectedGraph& g, int v,
                                                std::size_t bound) {
    // Breadth-first in traversal direction, remembering one parent.
    std::vector<int> parent_edge(g.vertex_count(), -1);
    std::vector<int> parent_vertex(g.vertex_count(), -1);
    std::vector<int> frontier = {v};
    std::vector<bool> seen(g.vertex_count(), false);
    for (std::size_t step = 0; step < bound && !frontier.empty(); ++step) {
        std::vector<int> next;
        for (int u : frontier)
            for (int e : g.edges_with_domain(u)) {
                int t = g.edges[e].r;
                if (t == v) {
                    // Close the walk: edges from v to u recovered backwards.
                    std::vector<int> edges = {e};
                    int cur = u;
                    while (cur != v && cur != -1) {
                        edges.push_back(parent_edge[cur]);
                        cur = parent_vertex[cur];
                    }
                    // Traversal order is v -> ... -> v; path notation reads
                    // right-to-left, so 'edges' is already gamma_1 ... gamma_n.
                    FinPath p;
                    p.edges = edges;
                    return p;
                }
                if (!seen[t]) {
                    seen[t] = true;
                    parent_edge[t] = e;
                    parent_vertex[t] = u;
                    next.push_back(t);
                }
            }
        frontier.swap(next);
    }
    return std::nullopt;
}

inline CycleAnalysis cycle_analysis(const DirectedGraph& g) {
    if (has_sinks(g)) throw precondition_error("cycle_analysis: graphs with sinks unsupported");
    CycleAnalysis out;
    // A cycle without entry exists iff following unique in-edges from some
    // vertex closes up through vertices of in-degree one.
    for (int v = 0; v < g.vertex_count() && out.every_cycle_has_entry; ++v) {
        std::vector<int> cycle_edges;
        int cur = v;
        for (int steps = 0; steps <= g.vertex_count(); ++steps) {
            auto in = g.edges_with_range(cur);
            if (in.size() != 1) break;
            cycle_edges.push_back(in[0]);
            cur = g.edges[in[0]].d;
            if (cur == v) {
                out.every_cycle_has_entry = false;
                FinPath w;
                w.edges = cycle_edges;  // r(first) = v, d(last) = v
                out.no_entry_witness = w;
                break;
            }
        }
    }
    // A transitory cycle exists iff some vertex on a cycle has exactly one
    // first-return path.
    std::size_t bound =
        static_cast<std::size_t>(g.vertex_count()) * static_cast<std::size_t>(g.edge_count());
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::size_t n = count_first_returns(g, v, bound, 2);
        if (n == 1) {
            out.every_cycle_recurrent = false;
            out.transitory_witness = some_first_return(g, v, bound);
        }
    }
    return out;
}

// Reachability in traversal direction: x reaches w when some path delta has
// d(delta) = x and r(delta) = w.
inline std::vector<std::vector<bool>> reachability(const DirectedGraph& g) {
    int n = g.vertex_count();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int v = 0; v < n; ++v) {
        reach[v][v] = true;
        std::vector<int> frontier = {v};
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int u : frontier)
                for (int e : g.edges_with_domain(u))
                    if (!reach[v][g.edges[e].r]) {
                        reach[v][g.edges[e].r] = true;
                        next.push_back(g.edges[e].r);
                    }
            frontier.swap(next);
        }
    }
    return reach;
}

// Weak transitivity (co-finality): every source vertex reaches every vertex,
// and every vertex lying on a cycle reaches every vertex.
inline bool weakly_transitive(const DirectedGraph& g) {
    if (has_sinks(g)) throw precondition_error("weakly_transitive: sinks unsupported");
    auto reach = reachability(g);
    auto cls = classify_vertices(g);
    std::size_t bound =
        static_cast<std::size_t>(g.vertex_count()) * static_cast<std::size_t>(g.edge_count());
    for (int v = 0; v < g.vertex_count(); ++v) {
        bool relevant = cls.sources.count(v) || count_first_returns(g, v, bound, 1) >= 1;
        if (!relevant) continue;
        for (int w = 0; w < g.vertex_count(); ++w)
            if (!reach[v][w]) return false;
    }
    return true;
}

// --- the structural report ------------------------------------------------------

struct GraphVerdicts {
    CycleAnalysis cycles;
    bool weakly_transitive = false;
    bool top_free_full_path_space = true;  // always, on the full path space
    bool top_free_boundary = false;        // iff every cycle has an entry
    bool minimal = false;                  // iff weakly transitive
    bool simple = false;                   // minimal and topologically free
    bool ideal_classification_applicable = false;  // iff every cycle recurrent
    std::size_t source_count = 0;  // maximal finite paths end at these
    bool infinite_range_vertices_possible = false;  // never, for finite graphs
};

inline GraphVerdicts graph_verdicts(const DirectedGraph& g) {
    if (has_sinks(g)) throw precondition_error("graph_verdicts: sinks unsupported");
    GraphVerdicts v;
    v.cycles = cycle_analysis(g);
    v.weakly_transitive = weakly_transitive(g);
    v.top_free_boundary = v.cycles.every_cycle_has_entry;
    v.minimal = v.weakly_transitive;
    v.simple = v.weakly_transitive && v.cycles.every_cycle_has_entry;
    v.ideal_classification_applicable = v.cycles.every_cycle_recurrent;
    v.source_count = classify_vertices(g).sources.size();
    return v;
}

}  // namespace partact

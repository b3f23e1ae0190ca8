#pragma once

#include <nlohmann/json.hpp>

#include "partact/graph.hpp"
#include "partact/partial_action.hpp"
#include "partact/relations.hpp"

namespace partact {

using json = nlohmann::json;

// --- scalars and matrices -----------------------------------------------------
// Matrices: {"rows":r,"cols":c,"entries":[["p/q","p/q"],...]} row-major, each
// entry [re, im] as exact fraction strings.  Bit-exact round trips.

inline json to_json(const GaussianRational& z) {
    return json::array({rational_to_string(z.re), rational_to_string(z.im)});
}
inline GaussianRational gaussian_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw format_error("entry must be [re, im]");
    return {rational_from_string(j[0].get<std::string>()),
            rational_from_string(j[1].get<std::string>())};
}

inline json to_json(const ExactMatrix& m) {
    json entries = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) entries.push_back(to_json(m.at(i, j)));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}
inline ExactMatrix matrix_from_json(const json& j) {
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw format_error("matrix needs rows/cols/entries");
    std::size_t r = j["rows"].get<std::size_t>(), c = j["cols"].get<std::size_t>();
    const json& es = j["entries"];
    if (!es.is_array() || es.size() != r * c) throw format_error("entry count mismatch");
    std::vector<GaussianRational> entries;
    for (auto& e : es) entries.push_back(gaussian_from_json(e));
    return ExactMatrix(r, c, std::move(entries));
}

// --- groups --------------------------------------------------------------------
// {"order":n,"mult":[[...]],"unit":u,"inv":[...],"labels":[...]} or
// {"builtin":"Z2"} / {"ztrunc":n}.

inline json to_json(const Group& g) {
    if (!g.is_finite()) return json{{"ztrunc", g.window()}};
    const FiniteGroup& f = g.table();
    return json{{"order", f.order}, {"mult", f.mult},   {"unit", f.unit},
                {"inv", f.inv},     {"labels", f.labels}};
}
inline Group group_from_json(const json& j) {
    if (j.is_string()) return builtin_group(j.get<std::string>());
    if (j.contains("builtin")) return builtin_group(j["builtin"].get<std::string>());
    if (j.contains("ztrunc")) return Group::z_trunc(j["ztrunc"].get<long>());
    FiniteGroup f;
    f.order = j.at("order").get<std::size_t>();
    f.mult = j.at("mult").get<std::vector<std::vector<int>>>();
    f.unit = j.at("unit").get<int>();
    f.inv = j.at("inv").get<std::vector<int>>();
    if (j.contains("labels")) f.labels = j["labels"].get<std::vector<std::string>>();
    return Group::finite(f);
}

// --- free words -----------------------------------------------------------------
// {"alphabet":[...],"letters":[["a",1],["b",-1],...]}

inline json to_json(const FreeWord& w) {
    json letters = json::array();
    for (auto& l : w.letters()) letters.push_back(json::array({l.gen, l.sign}));
    return json{{"alphabet", w.alphabet()}, {"letters", letters}};
}
inline FreeWord word_from_json(const json& j) {
    std::vector<Letter> letters;
    for (auto& l : j.at("letters"))
        letters.push_back({l.at(0).get<std::string>(), l.at(1).get<int>()});
    std::vector<std::string> alphabet;
    if (j.contains("alphabet")) alphabet = j["alphabet"].get<std::vector<std::string>>();
    if (alphabet.empty()) return FreeWord(std::move(letters));
    return FreeWord(std::move(alphabet), std::move(letters));
}

// --- partial actions --------------------------------------------------------------
// {"group":...,"carrier":[...],"domains":{"g":[...]},"maps":{"g":{"x":"y"}}}
// with group elements and points referenced by label.

inline json to_json(const FinitePartialAction& a) {
    json domains = json::object(), maps = json::object();
    for (int g : a.group.elements()) {
        json d = json::array();
        for (int x : a.domain(g)) d.push_back(a.carrier[x]);
        domains[a.group.label(g)] = d;
        json m = json::object();
        for (auto& [x, y] : a.map_of(g)) m[a.carrier[x]] = a.carrier[y];
        maps[a.group.label(g)] = m;
    }
    return json{{"group", to_json(a.group)},
                {"carrier", a.carrier},
                {"domains", domains},
                {"maps", maps}};
}

inline FinitePartialAction action_from_json(const json& j) {
    FinitePartialAction a;
    a.group = group_from_json(j.at("group"));
    a.carrier = j.at("carrier").get<std::vector<std::string>>();
    std::map<std::string, int> pt;
    for (std::size_t i = 0; i < a.carrier.size(); ++i)
        pt[a.carrier[i]] = static_cast<int>(i);
    auto point = [&](const std::string& s) {
        auto it = pt.find(s);
        if (it == pt.end()) throw format_error("unknown point: " + s);
        return it->second;
    };
    for (auto& [glabel, d] : j.at("domains").items()) {
        int g = a.group.element_by_label(glabel);
        PointSet s;
        for (auto& x : d) s.insert(point(x.get<std::string>()));
        a.domains[g] = s;
    }
    for (auto& [glabel, m] : j.at("maps").items()) {
        int g = a.group.element_by_label(glabel);
        PointMap mm;
        for (auto& [x, y] : m.items()) mm[point(x)] = point(y.get<std::string>());
        a.maps[g] = mm;
    }
    return a;
}

// --- relation sets -------------------------------------------------------------
// {"relations":[{"terms":[{"coef":"p/q","vars":["g1","g2"]},...]},...]}

inline RelationSet relations_from_json(const Group& g, const json& j) {
    RelationSet R;
    for (auto& rel : j.at("relations")) {
        RelationPoly p;
        for (auto& t : rel.at("terms")) {
            RelationTerm term;
            term.coef = rational_from_string(t.at("coef").get<std::string>());
            if (t.contains("vars"))
                for (auto& v : t["vars"])
                    term.vars.push_back(g.element_by_label(v.get<std::string>()));
            p.terms.push_back(std::move(term));
        }
        R.relations.push_back(std::move(p));
    }
    return R;
}

// --- algebras --------------------------------------------------------------------
// {"dim":n,"sc":[[[...]]],"star":[[...]],"unit":[...]} with exact entries.

inline json to_json(const StarAlgebra& A) {
    json sc = json::array();
    for (std::size_t i = 0; i < A.dim; ++i) {
        json plane = json::array();
        for (std::size_t jx = 0; jx < A.dim; ++jx) {
            json row = json::array();
            for (std::size_t k = 0; k < A.dim; ++k) row.push_back(to_json(A.c(i, jx, k)));
            plane.push_back(row);
        }
        sc.push_back(plane);
    }
    json star = json::array();
    for (std::size_t i = 0; i < A.dim; ++i) {
        json row = json::array();
        for (std::size_t jx = 0; jx < A.dim; ++jx) row.push_back(to_json(A.star[i * A.dim + jx]));
        star.push_back(row);
    }
    json out{{"dim", A.dim}, {"sc", sc}, {"star", star}};
    if (A.unit) {
        json u = json::array();
        for (auto& c : *A.unit) u.push_back(to_json(c));
        out["unit"] = u;
    }
    if (!A.labels.empty()) out["labels"] = A.labels;
    return out;
}

// --- graphs ----------------------------------------------------------------------
// {"vertices":[...],"edges":[{"name":..,"r":..,"d":..}]}

inline json to_json(const DirectedGraph& g) {
    json edges = json::array();
    for (auto& e : g.edges)
        edges.push_back(json{{"name", e.name}, {"r", g.vertices[e.r]}, {"d", g.vertices[e.d]}});
    return json{{"vertices", g.vertices}, {"edges", edges}};
}
inline DirectedGraph graph_from_json(const json& j) {
    DirectedGraph g;
    g.vertices = j.at("vertices").get<std::vector<std::string>>();
    for (auto& e : j.at("edges")) {
        GraphEdge ge;
        ge.name = e.at("name").get<std::string>();
        ge.r = g.vertex_by_name(e.at("r").get<std::string>());
        ge.d = g.vertex_by_name(e.at("d").get<std::string>());
        g.edges.push_back(ge);
    }
    g.validate();
    return g;
}

}  // namespace partact

// partact: an exact-arithmetic workbench for partial group actions, partial
// representations, crossed products, Fell bundles, quasi-lattice orders and
// graph C*-algebra structure theory.
//
// Exit codes: 0 = analysis completed (negative mathematical verdicts are
// still successful runs), 1 = precondition violation, 2 = malformed input.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "partact/covariant.hpp"
#include "partact/fell_bundle.hpp"
#include "partact/graph_dynamics.hpp"
#include "partact/json_io.hpp"
#include "partact/partial_isometry.hpp"
#include "partact/quasilattice.hpp"
#include "partact/version.hpp"

using namespace partact;

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw format_error("cannot open input: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct Report {
    json body = json::object();
    json bounds = json::object();
    json criteria = json::array();
    std::string input_hash = "-";

    json finish(const std::string& command) const {
        json out;
        out["tool"] = "partact";
        out["version"] = kVersion;
        out["command"] = command;
        out["input_hash"] = input_hash;
        out["bounds"] = bounds;
        out["criteria"] = criteria;
        out["result"] = body;
        return out;
    }
};

void emit(const json& out, const std::string& out_path) {
    std::string text = out.dump(2) + "\n";
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream f(out_path);
        if (!f) throw format_error("cannot open output: " + out_path);
        f << text;
    }
}

json section_to_json(const FellBundle& b, const Section& y) {
    json out = json::object();
    for (auto& [g, v] : y.values) {
        json arr = json::array();
        for (auto& c : v) arr.push_back(to_json(c));
        out[b.group.label(g)] = arr;
    }
    return out;
}

Vec vec_from_json(const json& j) {
    Vec v;
    for (auto& c : j) v.push_back(gaussian_from_json(c));
    return v;
}

Section section_from_json(const FellBundle& b, const json& j) {
    Section y;
    for (auto& [label, arr] : j.items()) {
        int g = b.group.element_by_label(label);
        Vec v = vec_from_json(arr);
        if (v.size() != b.ambient_dim) throw format_error("section entry has wrong dimension");
        if (!vec_is_zero(v)) y.values[g] = v;
    }
    return y;
}

// --- quasi-lattice element parsing --------------------------------------------

struct QLHandle {
    enum class Kind { Free, Grid, Scarparo } kind;
    FreeQL free;
    GridQL grid;
};

QLHandle parse_ql(const std::string& spec) {
    if (spec.rfind("free:", 0) == 0) return {QLHandle::Kind::Free, FreeQL{spec.substr(5)}, {}};
    if (spec.rfind("grid:", 0) == 0)
        return {QLHandle::Kind::Grid, {}, GridQL{std::stoul(spec.substr(5))}};
    if (spec == "scarparo") return {QLHandle::Kind::Scarparo, {}, {}};
    throw format_error("unknown quasi-lattice: " + spec +
                       " (expected free:<alphabet>, grid:<k>, scarparo)");
}

// Positive elements: "ab" / "1" for free words, "(2,1)" for grid tuples.
std::string parse_free_elem(const FreeQL& f, const std::string& s) {
    if (s == "1") return "";
    if (!f.valid(s)) throw format_error("element outside the positive cone: " + s);
    return s;
}
GridQL::Elem parse_grid_elem(const GridQL& g, const std::string& s) {
    GridQL::Elem v;
    std::string t = s;
    if (!t.empty() && t.front() == '(') t = t.substr(1, t.size() - 2);
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(std::stol(item));
    if (v.size() != g.k) throw format_error("expected " + std::to_string(g.k) + " coordinates");
    return v;
}
// Group elements of the free group: lowercase = generator, uppercase = inverse.
FreeWord parse_group_word(const std::string& s) {
    FreeWord w;
    if (s == "1") return w;
    for (char c : s) {
        if (std::isupper(static_cast<unsigned char>(c)))
            w = w * FreeWord::generator(std::string(1, static_cast<char>(std::tolower(c))), -1);
        else
            w = w * FreeWord::generator(std::string(1, c), 1);
    }
    return w;
}

// --- path parsing ----------------------------------------------------------------
// "v:NAME" vertex path, "e1.e2" edge path, "nu|gamma" eventually periodic.

FinPath parse_fin_path(const DirectedGraph& g, const std::string& s) {
    if (s.rfind("v:", 0) == 0) return FinPath::vertex(g.vertex_by_name(s.substr(2)));
    std::vector<int> edges;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, '.')) edges.push_back(g.edge_by_name(item));
    return FinPath::of_edges(g, edges);
}
PathPoint parse_path(const DirectedGraph& g, const std::string& s) {
    auto bar = s.find('|');
    if (bar == std::string::npos) return PathPoint(parse_fin_path(g, s));
    FinPath nu = parse_fin_path(g, s.substr(0, bar));
    FinPath gamma = parse_fin_path(g, s.substr(bar + 1));
    return PathPoint(EvPeriodicPath::make(g, nu, gamma));
}
std::string path_to_string(const DirectedGraph& g, const PathPoint& p) {
    if (std::holds_alternative<FinPath>(p)) return std::get<FinPath>(p).str(g);
    const EvPeriodicPath& e = std::get<EvPeriodicPath>(p);
    return e.prefix.str(g) + "|" + e.cycle.str(g);
}

json word_to_json_str(const FreeWord& w) {
    std::ostringstream ss;
    ss << w;
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact workbench for partial actions, crossed products and graph algebras"};
    app.require_subcommand(1);

    std::string input = "-", out_path, group_name = "Z2", ql_spec = "free:ab", word_arg,
                path_arg, alpha_arg, beta_arg, mu_arg, nu_arg, fiber_arg = "1";
    std::vector<std::string> elems;
    std::size_t bound = 6, depth = 3, length_bound = 4;
    bool include_ck = false;

    auto add_common = [&](CLI::App* cmd, bool with_input) {
        if (with_input) cmd->add_option("input", input, "input file, or - for stdin");
        cmd->add_option("--out", out_path, "output file");
        return cmd;
    };

    std::map<std::string, std::function<void(Report&)>> handlers;

    auto sub = [&](const std::string& name, const std::string& desc, bool with_input,
                   std::function<void(CLI::App*)> extra, std::function<void(Report&)> run) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        add_common(cmd, with_input);
        if (extra) extra(cmd);
        handlers[name] = std::move(run);
    };

    auto opt_group = [&](CLI::App* c) { c->add_option("--group", group_name, "group name"); };
    auto opt_bound = [&](CLI::App* c) { c->add_option("--bound", bound, "word-length bound"); };
    auto opt_depth = [&](CLI::App* c) { c->add_option("--depth", depth, "truncation depth"); };
    auto opt_ql = [&](CLI::App* c) {
        c->add_option("--ql", ql_spec, "quasi-lattice: free:<alphabet>|grid:<k>|scarparo");
    };

    std::string raw;  // the raw input, for hashing
    auto in_json = [&]() -> json {
        raw = read_input(input);
        try {
            return json::parse(raw);
        } catch (const json::parse_error& e) {
            throw format_error(std::string("JSON parse error: ") + e.what());
        }
    };

    // ----- partial actions -----
    sub("action-validate", "validate a partial action", true, nullptr, [&](Report& r) {
        FinitePartialAction a = action_from_json(in_json());
        auto v = validate_action(a);
        r.body["ok"] = v.ok;
        if (!v.ok) r.body["violation"] = v.violation;
        r.criteria.push_back("partial action axioms (unit, intersection, composition)");
    });
    sub("globalize", "enveloping action of a partial action", true, nullptr, [&](Report& r) {
        FinitePartialAction a = action_from_json(in_json());
        auto gl = globalize(a);
        r.body["global"] = to_json(gl.global);
        json emb = json::object();
        for (auto& [x, y] : gl.embedding) emb[a.carrier[x]] = gl.global.carrier[y];
        r.body["embedding"] = emb;
        r.criteria.push_back("existence and uniqueness of the enveloping action");
    });
    sub("bernoulli", "the partial Bernoulli action of a finite group", false, opt_group,
        [&](Report& r) {
            r.body = to_json(bernoulli_partial(builtin_group(group_name)));
            r.criteria.push_back("restriction of the global Bernoulli action");
        });
    sub("crossed-product", "crossed product of a set-level partial action", true, nullptr,
        [&](Report& r) {
            FinitePartialAction a = action_from_json(in_json());
            CrossedProduct cp = crossed_product(function_algebra_action(a));
            r.body["dim"] = cp.algebra.dim;
            r.body["associativity"] = cp.associativity_route;
            json grading = json::object();
            for (auto& [g, block] : cp.grading) grading[cp.group.label(g)] = block.size();
            r.body["grading_dims"] = grading;
            r.body["algebra"] = to_json(cp.algebra);
            r.criteria.push_back("associativity via non-degenerate or idempotent domains");
        });
    sub("apar", "the universal algebra of commuting idempotents over a group", false, opt_group,
        [&](Report& r) {
            Group g = builtin_group(group_name);
            AParAlgebra ap = a_par(g);
            r.body["dim"] = ap.algebra.dim;
            json eps = json::object();
            for (int x : g.elements()) {
                json arr = json::array();
                for (auto& c : ap.epsilon[x]) arr.push_back(to_json(c));
                eps[g.label(x)] = arr;
            }
            r.body["epsilon"] = eps;
            r.criteria.push_back("functions on the subsets containing the unit");
        });
    sub("kpar", "the partial group algebra as a crossed product", false, opt_group,
        [&](Report& r) {
            Group g = builtin_group(group_name);
            KParAlgebra k = k_par(g);
            r.body["dim"] = k.cp.algebra.dim;
            json grading = json::object();
            for (auto& [x, block] : k.cp.grading) grading[g.label(x)] = block.size();
            r.body["grading_dims"] = grading;
            r.body["commutative"] = k.cp.algebra.is_commutative();
            r.criteria.push_back("partial group algebra = C(Omega_1) x G");
        });
    sub("spectrum", "spectrum of a relation set in the commuting idempotents", true, opt_group,
        [&](Report& r) {
            Group g = builtin_group(group_name);
            RelationSet R = relations_from_json(g, in_json());
            auto masks = spectrum(g, R);
            json arr = json::array();
            for (auto m : masks) {
                json s = json::array();
                for (int x : g.elements())
                    if ((m >> x) & 1u) s.push_back(g.label(x));
                arr.push_back(s);
            }
            r.body["size"] = masks.size();
            r.body["omega"] = arr;
            r.criteria.push_back("vanishing of every relation on every translate");
        });
    sub("cstar-rel", "universal algebra of a relation set as a crossed product", true, opt_group,
        [&](Report& r) {
            Group g = builtin_group(group_name);
            RelationSet R = relations_from_json(g, in_json());
            CStarParRel c = cstar_par_rel(g, R);
            r.body["dim"] = c.cp.algebra.dim;
            r.body["omega_size"] = c.omega.size();
            r.criteria.push_back("canonical representation satisfies the relations");
        });

    // ----- Fell bundles -----
    auto load_bundle = [&](const json& j) {
        FinitePartialAction a = action_from_json(j.at("action"));
        return semidirect_bundle(function_algebra_action(a));
    };
    sub("fell-convolve", "convolution of two sections of a semidirect bundle", true, nullptr,
        [&](Report& r) {
            json j = in_json();
            FellBundle b = load_bundle(j);
            Section y = section_from_json(b, j.at("y"));
            Section z = section_from_json(b, j.at("z"));
            r.body["convolution"] = section_to_json(b, convolve(b, y, z));
            r.criteria.push_back("convolution product of finitely supported sections");
        });
    sub("fell-regrep", "regular representation matrices of a semidirect bundle", true, nullptr,
        [&](Report& r) {
            json j = in_json();
            FellBundle b = load_bundle(j);
            RegularRepresentation reg(b);
            r.body["total_dim"] = reg.total_dim();
            json lambdas = json::object();
            for (int g : b.group.elements()) {
                json per = json::array();
                for (auto& x : b.fiber(g).basis()) per.push_back(to_json(reg.lambda(g, x)));
                lambdas[b.group.label(g)] = per;
            }
            r.body["lambda"] = lambdas;
            r.criteria.push_back("left convolution on the coordinate direct sum");
        });
    sub("fell-fourier", "Fourier coefficient of a section", true,
        [&](CLI::App* c) { c->add_option("--fiber", fiber_arg, "group element label"); },
        [&](Report& r) {
            json j = in_json();
            FellBundle b = load_bundle(j);
            Section y = section_from_json(b, j.at("section"));
            int g = b.group.element_by_label(fiber_arg);
            Vec e = fourier(b, y, g);
            json arr = json::array();
            for (auto& c : e) arr.push_back(to_json(c));
            r.body["coefficient"] = arr;
            r.criteria.push_back("coefficient extraction along the grading");
        });
    sub("fell-parseval", "Parseval identity for a section", true, nullptr, [&](Report& r) {
        json j = in_json();
        FellBundle b = load_bundle(j);
        Section y = section_from_json(b, j.at("section"));
        RegularRepresentation reg(b);
        ExactMatrix Z = reg.lambda_of_section(y);
        Vec lhs = fourier(b, reg.section_of_lambda(Z.adjoint() * Z), b.group.unit());
        Vec rhs(b.ambient_dim, GaussianRational::zero());
        for (int g : b.group.elements()) {
            Vec c = fourier(b, y, g);
            rhs = vec_add(rhs, b.mult(b.star(c), c));
        }
        r.body["holds"] = (lhs == rhs);
        json arr = json::array();
        for (auto& c : lhs) arr.push_back(to_json(c));
        r.body["value"] = arr;
        r.criteria.push_back("Parseval identity for Fourier coefficients");
    });
    sub("fell-grading", "topological grading check for a semidirect bundle", true, nullptr,
        [&](Report& r) {
            json j = in_json();
            FellBundle b = load_bundle(j);
            LinearMap F = LinearMap::zero(b.ambient_dim);
            for (std::size_t i = 0; i < b.ambient_dim; ++i) {
                Vec e(b.ambient_dim, GaussianRational::zero());
                e[i] = GaussianRational::one();
                F.col[i] = b.fiber(b.group.unit()).contains(e)
                               ? e
                               : Vec(b.ambient_dim, GaussianRational::zero());
            }
            auto v = topological_grading_check(b, F);
            r.body["ok"] = v.ok;
            r.body["faithful_checked"] = v.faithful_checked;
            r.body["faithful"] = v.faithful;
            if (!v.ok) r.body["violation"] = v.violation;
            auto sat = saturation_predicates(b);
            r.body["saturated"] = sat.saturated;
            auto pos = positivity_check(b);
            r.body["positivity_checked"] = pos.checked;
            if (pos.checked) r.body["positive"] = pos.ok;
            // The bundle itself: the ambient crossed product plus per-fiber
            // basis index lists into its coordinate space.
            FinitePartialAction a2 = action_from_json(j.at("action"));
            CrossedProduct cp = crossed_product(function_algebra_action(a2));
            json fibers = json::object();
            for (auto& [g, block] : cp.grading) {
                json idx = json::array();
                for (auto k : block) idx.push_back(k);
                fibers[cp.group.label(g)] = idx;
            }
            r.body["bundle"] = json{{"ambient", to_json(cp.algebra)}, {"fibers", fibers}};
            r.criteria.push_back("independence + conditional expectation onto the unit fiber");
        });

    // ----- partial isometries -----
    sub("piso-check", "projection / partial isometry predicates", true, nullptr, [&](Report& r) {
        ExactMatrix m = matrix_from_json(in_json());
        r.body["projection"] = is_projection(m);
        r.body["partial_isometry"] = is_partial_isometry(m);
        r.criteria.push_back("s s* s = s and p = p* = p^2");
    });
    sub("piso-order", "domination order between partial isometries", true, nullptr,
        [&](Report& r) {
            json j = in_json();
            ExactMatrix s = matrix_from_json(j.at("s")), t = matrix_from_json(j.at("t"));
            r.body["dominated"] = piso_leq(s, t);
            r.criteria.push_back("t s* s = s cross-checked with t s* = s s*");
        });
    sub("piso-join", "join of compatible partial isometries", true, nullptr, [&](Report& r) {
        json j = in_json();
        ExactMatrix s = matrix_from_json(j.at("s")), t = matrix_from_json(j.at("t"));
        r.body["join"] = to_json(piso_join(s, t));
        r.criteria.push_back("least upper bound s + t - s t* t");
    });
    sub("piso-tame", "tameness of a family of partial isometries", true, opt_bound,
        [&](Report& r) {
            json j = in_json();
            std::vector<ExactMatrix> gens;
            for (auto& m : j.at("generators")) gens.push_back(matrix_from_json(m));
            auto v = is_tame(gens, bound);
            r.bounds["max_word_len"] = bound;
            r.body["tame_up_to_bound"] = v.tame;
            if (v.witness) {
                r.body["witness"] = to_json(*v.witness);
                json word = json::array();
                for (int t : v.witness_word)
                    word.push_back(t > 0 ? "g" + std::to_string(t - 1)
                                         : "g" + std::to_string(-t - 1) + "*");
                r.body["witness_word"] = word;
            }
            r.criteria.push_back("generated *-semigroup consists of partial isometries");
        });

    // ----- partial representations -----
    auto rep_from_json = [&](const json& j) {
        PartialRep rep;
        rep.group = group_from_json(j.at("group"));
        for (auto& [label, m] : j.at("values").items())
            rep.values[rep.group.element_by_label(label)] = matrix_from_json(m);
        if (j.contains("degenerate")) rep.degenerate = j["degenerate"].get<bool>();
        return rep;
    };
    sub("prep-validate", "validate a partial representation", true, nullptr, [&](Report& r) {
        PartialRep rep = rep_from_json(in_json());
        auto v = validate_prep(rep);
        r.body["ok"] = v.ok;
        if (!v.ok) r.body["violation"] = v.violation;
        r.criteria.push_back("axioms plus commuting final projections");
    });
    sub("prep-from-tame", "semi-saturated free-group rep from a tame family", true, opt_bound,
        [&](Report& r) {
            json j = in_json();
            std::vector<ExactMatrix> gens;
            std::vector<std::string> names = j.at("names").get<std::vector<std::string>>();
            for (auto& m : j.at("generators")) gens.push_back(matrix_from_json(m));
            FreePartialRep rep = prep_from_tame(gens, names, bound);
            r.bounds["tameness_bound"] = bound;
            r.body["ok"] = true;
            json vals = json::object();
            for (std::size_t i = 0; i < names.size(); ++i) vals[names[i]] = to_json(rep.gens[i]);
            r.body["generators"] = vals;
            r.criteria.push_back("unique semi-saturated extension along reduced words");
        });
    sub("prep-compress", "compression of a unitary representation", true, nullptr,
        [&](Report& r) {
            json j = in_json();
            PartialRep v = rep_from_json(j);
            PartialRep u = compress(v, matrix_from_json(j.at("projection")));
            json vals = json::object();
            for (auto& [g, m] : u.values) vals[u.group.label(g)] = to_json(m);
            r.body["values"] = vals;
            r.body["degenerate"] = u.degenerate;
            r.criteria.push_back("corner compression u_g = p v_g p");
        });
    sub("prep-induced", "the dynamical system induced by a partial rep", true, nullptr,
        [&](Report& r) {
            PartialRep rep = rep_from_json(in_json());
            InducedSystem sys = induced_system(rep);
            r.body["algebra_dim"] = sys.action.algebra.dim;
            r.body["commutative"] = sys.action.algebra.is_commutative();
            json dims = json::object();
            for (int g : sys.action.group.elements())
                dims[sys.action.group.label(g)] = sys.action.domain(g).dim();
            r.body["domain_dims"] = dims;
            r.criteria.push_back("ideals generated by the final projections");
        });

    // ----- quasi-lattices -----
    sub("ql-join", "least upper bound in the positive cone", false,
        [&](CLI::App* c) {
            opt_ql(c);
            c->add_option("elements", elems, "two P-elements")->expected(2);
        },
        [&](Report& r) {
            QLHandle h = parse_ql(ql_spec);
            if (h.kind == QLHandle::Kind::Free) {
                auto j = h.free.join(parse_free_elem(h.free, elems[0]),
                                     parse_free_elem(h.free, elems[1]));
                r.body["join"] = j ? json(FreeQL::str(*j)) : json(nullptr);
            } else if (h.kind == QLHandle::Kind::Grid) {
                GridQL::Elem a = parse_grid_elem(h.grid, elems[0]);
                GridQL::Elem b = parse_grid_elem(h.grid, elems[1]);
                if (!h.grid.valid(a) || !h.grid.valid(b))
                    throw precondition_error("join: elements must lie in the positive cone");
                auto j = h.grid.join(a, b);
                r.body["join"] = j ? json(GridQL::str(*j)) : json(nullptr);
            } else {
                auto a = ScarparoQL::from_word(parse_group_word(elems[0]));
                auto b = ScarparoQL::from_word(parse_group_word(elems[1]));
                if (!a || !b) throw precondition_error("element outside P'");
                auto j = ScarparoQL::join(*a, *b);
                r.body["join"] = j ? json(ScarparoQL::str(*j)) : json(nullptr);
            }
            r.criteria.push_back("least upper bound in P");
        });
    sub("ql-sigma-tau", "most efficient decomposition g = sigma tau^-1", false,
        [&](CLI::App* c) {
            opt_ql(c);
            c->add_option("element", word_arg, "group element (uppercase = inverse)");
        },
        [&](Report& r) {
            QLHandle h = parse_ql(ql_spec);
            if (h.kind == QLHandle::Kind::Free) {
                auto st = h.free.sigma_tau(parse_group_word(word_arg));
                if (st) {
                    r.body["sigma"] = FreeQL::str(st->first);
                    r.body["tau"] = FreeQL::str(st->second);
                } else {
                    r.body["sigma"] = nullptr;
                }
            } else if (h.kind == QLHandle::Kind::Grid) {
                auto st = h.grid.sigma_tau(parse_grid_elem(GridQL{h.grid.k}, word_arg));
                r.body["sigma"] = GridQL::str(st->first);
                r.body["tau"] = GridQL::str(st->second);
            } else {
                throw precondition_error(
                    "sigma-tau needs a quasi-lattice; the Scarparo pair is not one");
            }
            r.criteria.push_back("least upper bound of {g} in P");
        });
    sub("ql-wh-mult", "product of symbolic Wiener-Hopf elements", false,
        [&](CLI::App* c) {
            opt_ql(c);
            c->add_option("elements", elems, "m1 n1 m2 n2")->expected(4);
        },
        [&](Report& r) {
            QLHandle h = parse_ql(ql_spec);
            if (h.kind == QLHandle::Kind::Free) {
                using P = WHPair<FreeQL::Elem>;
                P x = P::make(parse_free_elem(h.free, elems[0]),
                              parse_free_elem(h.free, elems[1]));
                P y = P::make(parse_free_elem(h.free, elems[2]),
                              parse_free_elem(h.free, elems[3]));
                r.body["product"] = wh_str<FreeQL>(wh_mult<FreeQL>(x, y));
            } else if (h.kind == QLHandle::Kind::Grid) {
                using P = WHPair<GridQL::Elem>;
                P x = P::make(parse_grid_elem(h.grid, elems[0]),
                              parse_grid_elem(h.grid, elems[1]));
                P y = P::make(parse_grid_elem(h.grid, elems[2]),
                              parse_grid_elem(h.grid, elems[3]));
                r.body["product"] = wh_str<GridQL>(wh_mult<GridQL>(x, y));
            } else {
                using P = WHPair<ScarparoQL::Elem>;
                auto parse = [&](const std::string& s) {
                    auto e = ScarparoQL::from_word(parse_group_word(s));
                    if (!e) throw precondition_error("element outside P'");
                    return *e;
                };
                P x = P::make(parse(elems[0]), parse(elems[1]));
                P y = P::make(parse(elems[2]), parse(elems[3]));
                r.body["product"] = wh_str<ScarparoQL>(wh_mult<ScarparoQL>(x, y));
            }
            r.criteria.push_back("v_m* v_n = v_x v_y* along the join");
        });
    sub("ql-prep-extend", "extension of the isometry semigroup to a partial rep", false,
        [&](CLI::App* c) {
            opt_ql(c);
            c->add_option("element", word_arg, "group element");
        },
        [&](Report& r) {
            QLHandle h = parse_ql(ql_spec);
            if (h.kind == QLHandle::Kind::Free) {
                r.body["value"] =
                    wh_str<FreeQL>(prep_extend(h.free, parse_group_word(word_arg)));
            } else if (h.kind == QLHandle::Kind::Grid) {
                r.body["value"] = wh_str<GridQL>(
                    prep_extend(h.grid, parse_grid_elem(GridQL{h.grid.k}, word_arg)));
            } else {
                throw precondition_error("prep-extend is implemented for free and grid pairs");
            }
            r.criteria.push_back("v_{sigma(g)} v_{tau(g)}*, zero off P P^-1");
        });
    sub("ql-omega", "hereditary directed truncations", false,
        [&](CLI::App* c) {
            opt_ql(c);
            opt_depth(c);
        },
        [&](Report& r) {
            QLHandle h = parse_ql(ql_spec);
            r.bounds["depth"] = depth;
            json arr = json::array();
            auto dump = [&](auto&& sets, auto&& str) {
                for (auto& hd : sets) {
                    json s = json::array();
                    for (auto& e : hd.elements) s.push_back(str(e));
                    arr.push_back(json{{"elements", s}, {"may_extend", hd.may_extend}});
                }
            };
            if (h.kind == QLHandle::Kind::Free)
                dump(hereditary_directed(h.free, depth),
                     [](const std::string& e) { return FreeQL::str(e); });
            else if (h.kind == QLHandle::Kind::Grid)
                dump(hereditary_directed(h.grid, depth),
                     [](const GridQL::Elem& e) { return GridQL::str(e); });
            else
                dump(hereditary_directed(ScarparoQL{}, depth),
                     [](const ScarparoQL::Elem& e) { return ScarparoQL::str(e); });
            r.body["count"] = arr.size();
            r.body["sets"] = arr;
            r.criteria.push_back("nonempty hereditary directed subsets of P");
        });
    sub("ql-faithful", "witnesses below the faithfulness projection", false,
        [&](CLI::App* c) {
            opt_ql(c);
            opt_depth(c);
            c->add_option("elements", elems, "the p_i, each != 1");
        },
        [&](Report& r) {
            QLHandle h = parse_ql(ql_spec);
            r.bounds["probe_depth"] = depth;
            json arr = json::array();
            if (h.kind == QLHandle::Kind::Free) {
                std::vector<std::string> ps;
                for (auto& e : elems) ps.push_back(parse_free_elem(h.free, e));
                for (auto& w : faithfulness_projection(h.free, ps, depth))
                    arr.push_back(FreeQL::str(w));
            } else if (h.kind == QLHandle::Kind::Grid) {
                std::vector<GridQL::Elem> ps;
                for (auto& e : elems) ps.push_back(parse_grid_elem(h.grid, e));
                for (auto& w : faithfulness_projection(h.grid, ps, depth))
                    arr.push_back(GridQL::str(w));
            } else {
                throw precondition_error("the faithfulness probe supports free and grid pairs");
            }
            r.body["witnesses"] = arr;
            r.criteria.push_back("basis words avoiding every p_i as a prefix");
        });
    sub("ql-scarparo", "the weak quasi-lattice that is not a quasi-lattice", false,
        [&](CLI::App* c) { c->add_option("--bound", length_bound, "word length bound"); },
        [&](Report& r) {
            ScarparoReport rep = scarparo_check(length_bound);
            r.bounds["length_bound"] = rep.bound;
            r.body["quasi_lattice_fails"] = rep.ql_fails;
            r.body["minimal_upper_bounds"] = rep.minimal_upper_bounds;
            r.body["weak_quasi_lattice_consistent"] = rep.wql_consistent;
            r.criteria.push_back("incomparable minimal upper bounds for { b a^-1 b^-1 }");
        });

    // ----- graphs -----
    sub("graph-classify", "sinks, sources and regular vertices", true, nullptr, [&](Report& r) {
        DirectedGraph g = graph_from_json(in_json());
        auto c = classify_vertices(g);
        auto names = [&](const std::set<int>& s) {
            json arr = json::array();
            for (int v : s) arr.push_back(g.vertices[v]);
            return arr;
        };
        r.body["sinks"] = names(c.sinks);
        r.body["sources"] = names(c.sources);
        r.body["regular"] = names(c.regular);
        r.criteria.push_back("emptiness and finiteness of r^-1 and d^-1");
    });
    sub("graph-analyze", "structural verdicts for the graph algebra", true, nullptr,
        [&](Report& r) {
            DirectedGraph g = graph_from_json(in_json());
            GraphVerdicts v = graph_verdicts(g);
            r.body["every_cycle_has_entry"] = v.cycles.every_cycle_has_entry;
            if (v.cycles.no_entry_witness)
                r.body["no_entry_witness"] = v.cycles.no_entry_witness->str(g);
            r.body["every_cycle_recurrent"] = v.cycles.every_cycle_recurrent;
            if (v.cycles.transitory_witness)
                r.body["transitory_witness"] = v.cycles.transitory_witness->str(g);
            r.body["weakly_transitive"] = v.weakly_transitive;
            r.body["topologically_free_full_path_space"] = v.top_free_full_path_space;
            r.body["topologically_free_boundary"] = v.top_free_boundary;
            r.body["minimal"] = v.minimal;
            r.body["simple"] = v.simple;
            r.body["ideal_classification_applicable"] = v.ideal_classification_applicable;
            r.body["source_count"] = v.source_count;
            r.body["infinite_receiver_case"] = "impossible for finite graphs";
            r.criteria.push_back("condition (L): every cycle has an entry");
            r.criteria.push_back("condition (K): every cycle is recurrent");
            r.criteria.push_back("cofinality (weak transitivity)");
            r.criteria.push_back("simplicity: cofinal + condition (L)");
            r.criteria.push_back("ideal lattice classification under condition (K)");
        });
    sub("graph-tau", "prefix-replacement action on a path", true,
        [&](CLI::App* c) {
            c->add_option("--word", word_arg, "free-group word (uppercase = inverse)");
            c->add_option("--path", path_arg, "path: v:NAME, e1.e2 or nu|gamma");
        },
        [&](Report& r) {
            DirectedGraph g = graph_from_json(in_json());
            PathPoint p = parse_path(g, path_arg);
            auto out = tau_apply(g, parse_group_word(word_arg), p);
            r.body["defined"] = out.has_value();
            if (out) r.body["image"] = path_to_string(g, *out);
            r.criteria.push_back("tau_{mu,nu}: nu gamma -> mu gamma");
        });
    sub("graph-fixed-points", "the unique fixed path of a prefix replacement", true,
        [&](CLI::App* c) { c->add_option("--word", word_arg, "free-group word"); },
        [&](Report& r) {
            DirectedGraph g = graph_from_json(in_json());
            auto f = graph_fixed_point(g, parse_group_word(word_arg));
            r.body["exists"] = f.has_value();
            if (f) r.body["fixed_path"] = f->prefix.str(g) + "|" + f->cycle.str(g);
            r.criteria.push_back("at most one fixed point, of the form nu gamma^infty");
        });
    sub("graph-omega", "the configuration of a path, truncated", true,
        [&](CLI::App* c) {
            c->add_option("--path", path_arg, "path");
            c->add_option("--bound", bound, "word-length bound");
        },
        [&](Report& r) {
            DirectedGraph g = graph_from_json(in_json());
            r.bounds["word_length"] = bound;
            json arr = json::array();
            if (path_arg == "EMPTY") {
                // The empty path carries the singleton configuration { 1 }.
                arr.push_back(word_to_json_str(FreeWord()));
                r.body["size"] = 1;
            } else {
                auto om = omega_of_path(g, parse_path(g, path_arg), bound);
                for (auto& w : om) arr.push_back(word_to_json_str(w));
                r.body["size"] = om.size();
            }
            r.body["omega"] = arr;
            r.criteria.push_back("prefixes mu and matching sources d(mu) = d(nu)");
        });
    sub("graph-semigroup", "product in the path-pair inverse semigroup", true,
        [&](CLI::App* c) {
            c->add_option("--alpha", alpha_arg, "first path of x");
            c->add_option("--beta", beta_arg, "second path of x");
            c->add_option("--mu", mu_arg, "first path of y");
            c->add_option("--nu", nu_arg, "second path of y");
        },
        [&](Report& r) {
            DirectedGraph g = graph_from_json(in_json());
            GraphSGElement x = GraphSGElement::make(g, parse_fin_path(g, alpha_arg),
                                                    parse_fin_path(g, beta_arg));
            GraphSGElement y = GraphSGElement::make(g, parse_fin_path(g, mu_arg),
                                                    parse_fin_path(g, nu_arg));
            GraphSGElement prod = graph_semigroup_mult(g, x, y);
            r.body["zero"] = prod.zero;
            if (!prod.zero) {
                r.body["alpha"] = prod.alpha.str(g);
                r.body["beta"] = prod.beta.str(g);
            }
            r.criteria.push_back("prefix trichotomy for s_alpha s_beta* products");
        });
    sub("graph-relations-check", "Toeplitz / Cuntz-Krieger relations for matrices", true,
        [&](CLI::App* c) { c->add_flag("--ck", include_ck, "include the summation relation"); },
        [&](Report& r) {
            json j = in_json();
            DirectedGraph g = graph_from_json(j.at("graph"));
            std::map<int, ExactMatrix> P, S;
            for (auto& [name, m] : j.at("P").items())
                P[g.vertex_by_name(name)] = matrix_from_json(m);
            for (auto& [name, m] : j.at("S").items())
                S[g.edge_by_name(name)] = matrix_from_json(m);
            auto v = toeplitz_relations_check(g, P, S, include_ck);
            r.body["ok"] = v.ok;
            r.body["uniqueness_hypothesis"] = v.uniqueness_hypothesis;
            if (!v.ok) r.body["violation"] = v.violation;
            r.criteria.push_back("edge relations with the order relation as an exact surrogate");
        });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::string name;
    for (auto* s : app.get_subcommands()) name = s->get_name();
    Report r;
    try {
        handlers.at(name)(r);
        if (!raw.empty()) r.input_hash = fnv1a_hex(raw);
        emit(r.finish(name), out_path);
        return 0;
    } catch (const format_error& e) {
        json err{{"tool", "partact"}, {"version", kVersion}, {"error", e.what()},
                 {"kind", "format"}};
        std::cerr << err.dump(2) << "\n";
        return 2;
    } catch (const precondition_error& e) {
        json err{{"tool", "partact"}, {"version", kVersion}, {"error", e.what()},
                 {"kind", "precondition"}};
        std::cerr << err.dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        json err{{"tool", "partact"}, {"version", kVersion}, {"error", e.what()},
                 {"kind", "internal"}};
        std::cerr << err.dump(2) << "\n";
        return 1;
    }
}

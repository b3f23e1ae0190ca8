#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "partact/matrix.hpp"

namespace partact {

// p = p* = p^2, exactly.
inline bool is_projection(const ExactMatrix& m) {
    if (!m.is_square()) throw dimension_error("is_projection: non-square input");
    return m == m.adjoint() && m * m == m;
}

// s s* s = s.  Agrees with s*s being a projection; both routes are checked
// and a disagreement is an internal error.
inline bool is_partial_isometry(const ExactMatrix& s) {
    if (!s.is_square()) throw dimension_error("is_partial_isometry: non-square input");
    ExactMatrix st = s.adjoint();
    bool direct = (s * st * s == s);
    bool via_projection = is_projection(st * s);
    if (direct != via_projection)
        throw consistency_error("partial isometry characterizations disagree");
    return direct;
}

inline ExactMatrix initial_projection(const ExactMatrix& s) { return s.adjoint() * s; }
inline ExactMatrix final_projection(const ExactMatrix& s) { return s * s.adjoint(); }

inline void require_partial_isometries(const ExactMatrix& s, const ExactMatrix& t,
                                       const char* who) {
    if (s.rows() != t.rows() || s.cols() != t.cols())
        throw dimension_error(std::string(who) + ": shape mismatch");
    if (!is_partial_isometry(s) || !is_partial_isometry(t))
        throw precondition_error(std::string(who) + ": inputs must be partial isometries");
}

// Domination order: s <= t iff t s* s = s, equivalently t s* = s s*.  Both
// characterizations are evaluated; disagreement raises.
inline bool piso_leq(const ExactMatrix& s, const ExactMatrix& t) {
    require_partial_isometries(s, t, "piso_leq");
    ExactMatrix st = s.adjoint();
    bool primary = (t * st * s == s);
    bool alternate = (t * st == s * st);
    if (primary != alternate)
        throw consistency_error("piso_leq: order characterizations disagree");
    return primary;
}

// s t* t = t s* s and t t* s = s s* t.  When the relation holds, the
// consequences (s t* and s* t are projections equal to the products of the
// respective final/initial projections) are asserted.
inline bool compatible(const ExactMatrix& s, const ExactMatrix& t) {
    require_partial_isometries(s, t, "compatible");
    ExactMatrix st = s.adjoint(), tt = t.adjoint();
    bool ok = (s * tt * t == t * st * s) && (t * tt * s == s * st * t);
    if (ok) {
        ExactMatrix sts = s * tt;   // s t*
        ExactMatrix ini = st * t;   // s* t
        if (!is_projection(sts) || sts != (s * st) * (t * tt))
            throw consistency_error("compatible: s t* is not the product of final projections");
        if (!is_projection(ini) || ini != (st * s) * (tt * t))
            throw consistency_error("compatible: s* t is not the product of initial projections");
    }
    return ok;
}

// Least upper bound u = s + t - s t* t of a compatible pair.
inline ExactMatrix piso_join(const ExactMatrix& s, const ExactMatrix& t) {
    if (!compatible(s, t)) throw precondition_error("piso_join: inputs not compatible");
    ExactMatrix u = s + t - s * t.adjoint() * t;
    if (!is_partial_isometry(u)) throw consistency_error("piso_join: join is not a partial isometry");
    if (!piso_leq(s, u) || !piso_leq(t, u))
        throw consistency_error("piso_join: join does not dominate the inputs");
    // Initial projection of the join is s*s v t*t.
    ExactMatrix ps = initial_projection(s), pt = initial_projection(t);
    if (initial_projection(u) != ps + pt - ps * pt)
        throw consistency_error("piso_join: initial projection is not the lattice join");
    return u;
}

// All products of at most max_word_len factors drawn from S and adjoints(S),
// deduplicated exactly; zero excluded.  Output order is canonical.
inline std::vector<ExactMatrix> generate_star_semigroup(const std::vector<ExactMatrix>& gens,
                                                        std::size_t max_word_len) {
    if (gens.empty()) return {};
    if (max_word_len < 1) throw precondition_error("generate_star_semigroup: word length >= 1");
    std::size_t n = gens.front().rows();
    for (auto& g : gens) {
        if (!g.is_square() || g.rows() != n)
            throw dimension_error("generate_star_semigroup: mixed shapes");
    }
    std::set<ExactMatrix> alphabet;
    for (auto& g : gens) {
        alphabet.insert(g);
        alphabet.insert(g.adjoint());
    }
    std::set<ExactMatrix> layer(alphabet), all(alphabet);
    for (std::size_t len = 2; len <= max_word_len; ++len) {
        std::set<ExactMatrix> next;
        for (auto& w : layer)
            for (auto& a : alphabet) {
                ExactMatrix p = w * a;
                if (all.insert(p).second) next.insert(p);
            }
        if (next.empty()) break;
        layer.swap(next);
    }
    std::vector<ExactMatrix> out;
    for (auto& m : all)
        if (!m.is_zero()) out.push_back(m);
    return out;
}

struct TameVerdict {
    bool tame = false;
    std::size_t bound = 0;
    std::optional<ExactMatrix> witness;  // a generated product that fails s s* s = s
    // The witness as a product word: generator indices, negative k-1 for the
    // adjoint of generator k (1-based magnitudes, so -1 is adjoint of 0).
    std::vector<int> witness_word;

    explicit operator bool() const { return tame; }
};

// Checks that the *-semigroup generated by S up to the given word length
// consists of partial isometries.  On success the generated set is an inverse
// semigroup; this is asserted through commutation of its idempotents.
inline TameVerdict is_tame(const std::vector<ExactMatrix>& gens, std::size_t max_word_len) {
    for (auto& g : gens)
        if (!is_partial_isometry(g))
            throw precondition_error("is_tame: generators must be partial isometries");
    TameVerdict v;
    v.bound = max_word_len;
    if (gens.empty()) {
        v.tame = true;
        return v;
    }
    if (max_word_len < 1) throw precondition_error("is_tame: word length >= 1");

    // Breadth-first over products, keeping one word of provenance per matrix.
    std::vector<std::pair<ExactMatrix, int>> alphabet;  // (matrix, signed index)
    for (std::size_t k = 0; k < gens.size(); ++k) {
        alphabet.emplace_back(gens[k], static_cast<int>(k + 1));
        alphabet.emplace_back(gens[k].adjoint(), -static_cast<int>(k + 1));
    }
    std::set<ExactMatrix> seen;
    std::vector<std::pair<ExactMatrix, std::vector<int>>> layer, all;
    for (auto& [m, tag] : alphabet)
        if (seen.insert(m).second) layer.emplace_back(m, std::vector<int>{tag});
    all = layer;
    for (std::size_t len = 2; len <= max_word_len && !layer.empty(); ++len) {
        std::vector<std::pair<ExactMatrix, std::vector<int>>> next;
        for (auto& [w, word] : layer)
            for (auto& [a, tag] : alphabet) {
                ExactMatrix p = w * a;
                if (!seen.insert(p).second) continue;
                std::vector<int> pw = word;
                pw.push_back(tag);
                next.emplace_back(p, pw);
            }
        all.insert(all.end(), next.begin(), next.end());
        layer.swap(next);
    }
    for (auto& [m, word] : all) {
        if (m.is_zero()) continue;
        if (!is_partial_isometry(m)) {
            v.tame = false;
            v.witness = m;
            v.witness_word = word;
            return v;
        }
    }
    std::vector<ExactMatrix> idems;
    for (auto& [m, word] : all)
        if (!m.is_zero() && m * m == m) idems.push_back(m);
    for (std::size_t i = 0; i < idems.size(); ++i)
        for (std::size_t j = i + 1; j < idems.size(); ++j)
            if (idems[i] * idems[j] != idems[j] * idems[i])
                throw consistency_error("is_tame: idempotents of a tame semigroup must commute");
    v.tame = true;
    return v;
}

}  // namespace partact

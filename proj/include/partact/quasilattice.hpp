#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "partact/free_word.hpp"

namespace partact {

// ---------------------------------------------------------------------------
// Quasi-lattice ordered pairs (G, P).  Three concrete structures:
//   * the free group on an alphabet with its positive cone (a quasi-lattice),
//   * Z^k with N^k (a lattice),
//   * Scarparo's weak quasi-lattice P' = b P_2 u {1} inside F_2, handled
//     through its free-monoid model on the generators { b a^n : n >= 0 }.
// P-elements are kept in structure-specific types; the symbolic Wiener-Hopf
// elements v_m v_n* are pairs over those types.
// ---------------------------------------------------------------------------

// --- free quasi-lattice -----------------------------------------------------

struct FreeQL {
    std::string alphabet;  // single-character generator names

    using Elem = std::string;  // positive word

    bool valid(const Elem& w) const {
        for (char c : w)
            if (alphabet.find(c) == std::string::npos) return false;
        return true;
    }
    static Elem unit() { return {}; }
    static std::size_t length(const Elem& w) { return w.size(); }
    static Elem op(const Elem& a, const Elem& b) { return a + b; }
    static bool is_prefix(const Elem& a, const Elem& b) {
        return a.size() <= b.size() && b.compare(0, a.size(), a) == 0;
    }
    // a <= b in the left-invariant order iff a is a prefix of b.
    static bool leq(const Elem& a, const Elem& b) { return is_prefix(a, b); }
    static std::optional<Elem> join(const Elem& a, const Elem& b) {
        if (is_prefix(a, b)) return b;
        if (is_prefix(b, a)) return a;
        return std::nullopt;
    }
    // x with p x = w, defined when p is a prefix of w.
    static Elem quotient(const Elem& p, const Elem& w) { return w.substr(p.size()); }
    static std::string str(const Elem& w) { return w.empty() ? "1" : w; }

    // Group elements are free-group words; g lies in P P^-1 iff its reduced
    // form is positive-then-negative, and then sigma = the positive part.
    std::optional<std::pair<Elem, Elem>> sigma_tau(const FreeWord& g) const {
        Elem pos, neg;
        bool seen_negative = false;
        for (auto& l : g.letters()) {
            if (l.gen.size() != 1 || alphabet.find(l.gen[0]) == std::string::npos)
                throw precondition_error("free QL: letter outside the alphabet");
            if (l.sign > 0) {
                if (seen_negative) return std::nullopt;
                pos += l.gen[0];
            } else {
                seen_negative = true;
                neg += l.gen[0];
            }
        }
        std::reverse(neg.begin(), neg.end());
        return std::make_pair(pos, neg);
    }

    std::vector<Elem> elements_up_to(std::size_t depth) const {
        std::vector<Elem> out = {""};
        std::size_t start = 0;
        for (std::size_t len = 1; len <= depth; ++len) {
            std::size_t end = out.size();
            for (std::size_t i = start; i < end; ++i)
                for (char c : alphabet) out.push_back(out[i] + c);
            start = end;
        }
        return out;
    }
};

// --- grid quasi-lattice (Z^k, N^k) -------------------------------------------

struct GridQL {
    std::size_t k = 1;

    using Elem = std::vector<long>;  // nonnegative coordinates

    bool valid(const Elem& v) const {
        if (v.size() != k) return false;
        for (long x : v)
            if (x < 0) return false;
        return true;
    }
    Elem unit() const { return Elem(k, 0); }
    static std::size_t length(const Elem& v) {
        long s = 0;
        for (long x : v) s += x;
        return static_cast<std::size_t>(s);
    }
    static Elem op(const Elem& a, const Elem& b) {
        Elem r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
        return r;
    }
    static bool leq(const Elem& a, const Elem& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] > b[i]) return false;
        return true;
    }
    static std::optional<Elem> join(const Elem& a, const Elem& b) {
        Elem r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
        return r;
    }
    static Elem quotient(const Elem& p, const Elem& w) {
        Elem r(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) r[i] = w[i] - p[i];
        return r;
    }
    static std::string str(const Elem& v) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + std::to_string(v[i]);
        return s + ")";
    }

    // Group elements are integer tuples; every one lies in P P^-1.
    std::optional<std::pair<Elem, Elem>> sigma_tau(const std::vector<long>& g) const {
        Elem pos(k, 0), neg(k, 0);
        if (g.size() != k) throw precondition_error("grid QL: wrong arity");
        for (std::size_t i = 0; i < k; ++i) {
            pos[i] = std::max(g[i], 0l);
            neg[i] = std::max(-g[i], 0l);
        }
        return std::make_pair(pos, neg);
    }

    std::vector<Elem> elements_up_to(std::size_t depth) const {
        std::vector<Elem> out;
        Elem cur(k, 0);
        std::function<void(std::size_t, long)> rec = [&](std::size_t i, long budget) {
            if (i == k) {
                out.push_back(cur);
                return;
            }
            for (long x = 0; x <= budget; ++x) {
                cur[i] = x;
                rec(i + 1, budget - x);
            }
            cur[i] = 0;
        };
        rec(0, static_cast<long>(depth));
        std::sort(out.begin(), out.end(), [](const Elem& a, const Elem& b) {
            if (length(a) != length(b)) return length(a) < length(b);
            return a < b;
        });
        return out;
    }
};

// --- Scarparo's weak quasi-lattice -------------------------------------------

// P' = b P_2 u {1} in the free group on {a, b}.  As a semigroup, P' is free
// on the generators  g_n = b a^n, so its internal order is block-prefix
// comparability.  The pair (F_2, P') fails the quasi-lattice condition.
struct ScarparoQL {
    // Elements of P' as block sequences: the word g_{n_1} g_{n_2} ... g_{n_r}.
    using Elem = std::vector<long>;  // empty = unit

    static Elem unit() { return {}; }
    static std::size_t length(const Elem& v) {  // F_2 word length
        std::size_t s = 0;
        for (long n : v) s += 1 + static_cast<std::size_t>(n);
        return s;
    }
    static Elem op(const Elem& a, const Elem& b) {
        Elem r = a;
        r.insert(r.end(), b.begin(), b.end());
        return r;
    }
    static bool leq(const Elem& a, const Elem& b) {  // block prefix
        if (a.size() > b.size()) return false;
        return std::equal(a.begin(), a.end(), b.begin());
    }
    static std::optional<Elem> join(const Elem& a, const Elem& b) {
        if (leq(a, b)) return b;
        if (leq(b, a)) return a;
        return std::nullopt;
    }
    static Elem quotient(const Elem& p, const Elem& w) {
        return Elem(w.begin() + static_cast<long>(p.size()), w.end());
    }
    static std::string str(const Elem& v) {
        if (v.empty()) return "1";
        std::string s;
        for (long n : v) {
            s += 'b';
            s += std::string(static_cast<std::size_t>(n), 'a');
        }
        return s;
    }
    // The F_2 word of an element.
    static FreeWord to_word(const Elem& v) {
        FreeWord w;
        for (long n : v) {
            w = w * FreeWord::generator("b");
            for (long i = 0; i < n; ++i) w = w * FreeWord::generator("a");
        }
        return w;
    }
    // Parse an F_2 positive word in b P_2 u {1} into blocks; nullopt if the
    // word is not in P'.
    static std::optional<Elem> from_word(const FreeWord& w) {
        Elem out;
        bool started = false;
        for (auto& l : w.letters()) {
            if (l.sign < 0) return std::nullopt;
            if (l.gen == "b") {
                out.push_back(0);
                started = true;
            } else if (l.gen == "a") {
                if (!started) return std::nullopt;  // a-block before any b
                ++out.back();
            } else {
                return std::nullopt;
            }
        }
        return out;
    }

    // All elements of P' with F_2 length <= depth.
    static std::vector<Elem> elements_up_to(std::size_t depth) {
        std::vector<Elem> out = {{}};
        std::size_t start = 0;
        while (start < out.size()) {
            std::size_t end = out.size();
            for (std::size_t i = start; i < end; ++i) {
                for (long n = 0;; ++n) {
                    Elem next = out[i];
                    next.push_back(n);
                    if (length(next) > depth) break;
                    out.push_back(next);
                }
            }
            if (end == out.size()) break;
            start = end;
        }
        std::sort(out.begin(), out.end(), [](const Elem& a, const Elem& b) {
            if (length(a) != length(b)) return length(a) < length(b);
            return a < b;
        });
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
};

// --- symbolic Wiener-Hopf pairs ----------------------------------------------

// v_m v_n*, or the distinguished zero.
template <typename Elem>
struct WHPair {
    bool zero = false;
    Elem m{};
    Elem n{};

    static WHPair make(Elem m_, Elem n_) { return {false, std::move(m_), std::move(n_)}; }
    static WHPair zero_elem() { return {true, {}, {}}; }

    friend bool operator==(const WHPair& a, const WHPair& b) {
        if (a.zero || b.zero) return a.zero == b.zero;
        return a.m == b.m && a.n == b.n;
    }
};

template <typename QL>
std::string wh_str(const WHPair<typename QL::Elem>& x) {
    if (x.zero) return "0";
    return "v[" + QL::str(x.m) + "]v[" + QL::str(x.n) + "]*";
}

// (m,n)(p,q) = (m x, q y) when n v p = n x = p y exists, else 0.
template <typename QL, typename Elem = typename QL::Elem>
WHPair<Elem> wh_mult(const WHPair<Elem>& x, const WHPair<Elem>& y) {
    if (x.zero || y.zero) return WHPair<Elem>::zero_elem();
    auto j = QL::join(x.n, y.m);
    if (!j) return WHPair<Elem>::zero_elem();
    Elem a = QL::quotient(x.n, *j);  // n a = n v p
    Elem b = QL::quotient(y.m, *j);  // p b = n v p
    return WHPair<Elem>::make(QL::op(x.m, a), QL::op(y.n, b));
}

template <typename QL, typename Elem = typename QL::Elem>
WHPair<Elem> wh_star(const WHPair<Elem>& x) {
    if (x.zero) return x;
    return WHPair<Elem>::make(x.n, x.m);
}

// The unique extension of the regular semigroup of isometries to a partial
// representation: g -> v_{sigma(g)} v_{tau(g)}*, or 0 off P P^-1.
template <typename QL, typename G>
WHPair<typename QL::Elem> prep_extend(const QL& ql, const G& g) {
    auto st = ql.sigma_tau(g);
    if (!st) return WHPair<typename QL::Elem>::zero_elem();
    return WHPair<typename QL::Elem>::make(st->first, st->second);
}

// --- hereditary directed subsets ---------------------------------------------

// The truncation of a nonempty hereditary directed subset of P to the ball of
// the given depth, with a flag recording whether the set reaches the boundary
// (and hence may be the truncation of a strictly larger subset).
template <typename Elem>
struct HereditaryDirectedSet {
    std::vector<Elem> elements;  // sorted by (length, lex)
    bool may_extend = false;

    friend bool operator==(const HereditaryDirectedSet& a, const HereditaryDirectedSet& b) {
        return a.elements == b.elements;
    }
};

// Principal set m P^-1 n P = { x in P : x <= m }, truncated at depth.
template <typename QL, typename Elem = typename QL::Elem>
HereditaryDirectedSet<Elem> principal(const QL& ql, const Elem& m, std::size_t depth) {
    HereditaryDirectedSet<Elem> out;
    for (auto& x : ql.elements_up_to(depth))
        if (QL::leq(x, m)) out.elements.push_back(x);
    out.may_extend = QL::length(m) > depth;
    return out;
}

// Enumerate the distinct truncations: nonempty subsets of the ball that are
// hereditary and closed under joins that stay inside the ball.  Each carries
// the boundary flag.  Output is deterministic (sorted element lists).
template <typename QL, typename Elem = typename QL::Elem>
std::vector<HereditaryDirectedSet<Elem>> hereditary_directed(const QL& ql, std::size_t depth) {
    auto ball = ql.elements_up_to(depth);
    std::size_t n = ball.size();
    if (n > 24) throw precondition_error("hereditary_directed: depth too large");
    std::vector<HereditaryDirectedSet<Elem>> out;
    for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
        if (!(mask & 1ull)) continue;  // must contain the unit (ball[0])
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (!(mask >> i & 1ull)) continue;
            // hereditary within the ball
            for (std::size_t j = 0; j < n && ok; ++j)
                if (QL::leq(ball[j], ball[i]) && !(mask >> j & 1ull)) ok = false;
            // joins that stay in the ball must be present
            for (std::size_t j = i; j < n && ok; ++j) {
                if (!(mask >> j & 1ull)) continue;
                auto jn = QL::join(ball[i], ball[j]);
                if (!jn || QL::length(*jn) > depth) continue;
                auto it = std::find(ball.begin(), ball.end(), *jn);
                if (it == ball.end() || !(mask >> (it - ball.begin()) & 1ull)) ok = false;
            }
        }
        // directedness of the underlying set: pairs whose join escapes the
        // ball are fine (the witness lives beyond the truncation) only if a
        // join exists at all.
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = i; j < n && ok; ++j)
                if ((mask >> i & 1ull) && (mask >> j & 1ull) &&
                    !QL::join(ball[i], ball[j]))
                    ok = false;
        if (!ok) continue;
        HereditaryDirectedSet<Elem> h;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1ull) h.elements.push_back(ball[i]);
        for (auto& e : h.elements)
            if (QL::length(e) == depth) h.may_extend = true;
        out.push_back(std::move(h));
    }
    std::sort(out.begin(), out.end(),
              [](const HereditaryDirectedSet<Elem>& a, const HereditaryDirectedSet<Elem>& b) {
                  if (a.elements.size() != b.elements.size())
                      return a.elements.size() < b.elements.size();
                  return a.elements < b.elements;
              });
    return out;
}

// --- faithfulness witnesses --------------------------------------------------

// Basis words of the truncated l^2(P) killed by no (1 - V_i V_i*): exactly
// the words avoiding every p_i as a prefix.  The empty word is always one.
template <typename QL, typename Elem = typename QL::Elem>
std::vector<Elem> faithfulness_projection(const QL& ql, const std::vector<Elem>& ps,
                                          std::size_t probe_depth) {
    for (auto& p : ps)
        if (QL::length(p) == 0)
            throw precondition_error("faithfulness_projection: p_i must differ from 1");
    std::vector<Elem> out;
    for (auto& w : ql.elements_up_to(probe_depth)) {
        bool killed = false;
        for (auto& p : ps)
            if (QL::leq(p, w)) {
                killed = true;
                break;
            }
        if (!killed) out.push_back(w);
    }
    if (out.empty() || QL::length(out.front()) != 0)
        throw consistency_error("faithfulness_projection: the empty word must be a witness");
    return out;
}

// --- Scarparo's example ------------------------------------------------------

struct ScarparoReport {
    bool ql_fails = false;            // { b a^-1 b^-1 } has no least upper bound in P'
    std::vector<std::string> minimal_upper_bounds;
    bool wql_consistent = false;      // joins in P' behave as in the free monoid model
    std::size_t bound = 0;
};

inline ScarparoReport scarparo_check(std::size_t length_bound) {
    if (length_bound < 4) throw precondition_error("scarparo_check: bound must be >= 4");
    ScarparoReport rep;
    rep.bound = length_bound;
    using E = ScarparoQL::Elem;
    auto elems = ScarparoQL::elements_up_to(length_bound);

    // g = b a^-1 b^-1.  k in P' is an upper bound iff g^-1 k = b a b^-1 k
    // lies in P'.  Work with honest F_2 words.
    FreeWord g = FreeWord::generator("b") * FreeWord::generator("a", -1) *
                 FreeWord::generator("b", -1);
    auto is_upper_bound = [&](const E& k) {
        FreeWord quo = g.inverse() * ScarparoQL::to_word(k);
        return ScarparoQL::from_word(quo).has_value();
    };
    std::vector<E> uppers;
    for (auto& k : elems)
        if (is_upper_bound(k)) uppers.push_back(k);
    // Minimality within the bounded candidates, in the order of P'.
    std::vector<E> minimal;
    for (auto& m : uppers) {
        bool is_min = true;
        for (auto& k : uppers)
            if (!(k == m) && ScarparoQL::leq(k, m)) {
                is_min = false;
                break;
            }
        if (is_min) minimal.push_back(m);
    }
    for (auto& m : minimal) rep.minimal_upper_bounds.push_back(ScarparoQL::str(m));
    // QL fails: at least two incomparable minimal upper bounds, and no
    // candidate below all of them.
    bool incomparable_pair = false;
    for (std::size_t i = 0; i < minimal.size(); ++i)
        for (std::size_t j = i + 1; j < minimal.size(); ++j)
            if (!ScarparoQL::leq(minimal[i], minimal[j]) &&
                !ScarparoQL::leq(minimal[j], minimal[i]))
                incomparable_pair = true;
    bool has_minimum = false;
    for (auto& m : uppers) {
        bool below_all = true;
        for (auto& k : uppers)
            if (!ScarparoQL::leq(m, k)) {
                below_all = false;
                break;
            }
        if (below_all) has_minimum = true;
    }
    rep.ql_fails = incomparable_pair && !has_minimum && !uppers.empty();

    // WQL consistency: for bounded pairs in P', the join computed in the free
    // monoid model (block-prefix comparability) matches the least upper bound
    // found by direct search in the bounded order.
    rep.wql_consistent = true;
    for (auto& x : elems) {
        if (ScarparoQL::length(x) * 2 > length_bound) continue;
        for (auto& y : elems) {
            if (ScarparoQL::length(y) * 2 > length_bound) continue;
            auto model = ScarparoQL::join(x, y);
            // Direct search: upper bounds of {x, y} within the bound.
            std::vector<E> ub;
            for (auto& k : elems)
                if (ScarparoQL::leq(x, k) && ScarparoQL::leq(y, k)) ub.push_back(k);
            std::optional<E> least;
            for (auto& m : ub) {
                bool below_all = true;
                for (auto& k : ub)
                    if (!ScarparoQL::leq(m, k)) {
                        below_all = false;
                        break;
                    }
                if (below_all) least = m;
            }
            if (model.has_value() != least.has_value()) {
                // A model join longer than the bound is invisible to the
                // search; only compare when the model join fits.
                if (model && ScarparoQL::length(*model) <= length_bound) rep.wql_consistent = false;
                if (!model && least) rep.wql_consistent = false;
            } else if (model && least && !(*model == *least)) {
                rep.wql_consistent = false;
            }
        }
    }
    return rep;
}

}  // namespace partact

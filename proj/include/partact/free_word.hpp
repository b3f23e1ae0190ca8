#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include "partact/rational.hpp"

namespace partact {

// One letter of a free-group word: a named generator or its formal inverse.
struct Letter {
    std::string gen;
    int sign = 1;  // +1 or -1

    Letter inverse() const { return {gen, -sign}; }
    friend bool operator==(const Letter& a, const Letter& b) {
        return a.gen == b.gen && a.sign == b.sign;
    }
    friend bool operator!=(const Letter& a, const Letter& b) { return !(a == b); }
    friend bool operator<(const Letter& a, const Letter& b) {
        if (a.gen != b.gen) return a.gen < b.gen;
        return a.sign < b.sign;
    }
};

// A free-group element, always held in reduced form: no adjacent x x^-1 pair.
// An explicit alphabet is optional; when present, letters are checked against
// it and multiplication requires equal alphabets.
class FreeWord {
public:
    FreeWord() = default;
    explicit FreeWord(std::vector<Letter> letters) { append_reduced(std::move(letters)); }
    FreeWord(std::vector<std::string> alphabet, std::vector<Letter> letters)
        : alpha_(std::move(alphabet)) {
        std::sort(alpha_.begin(), alpha_.end());
        append_reduced(std::move(letters));
    }

    static FreeWord generator(const std::string& name, int sign = 1) {
        return FreeWord({Letter{name, sign}});
    }
    // Builds a positive word from single-character generator names, e.g. "ab".
    static FreeWord from_chars(const std::string& s) {
        std::vector<Letter> ls;
        for (char c : s) ls.push_back({std::string(1, c), 1});
        return FreeWord(std::move(ls));
    }

    const std::vector<Letter>& letters() const { return ls_; }
    const std::vector<std::string>& alphabet() const { return alpha_; }
    std::size_t length() const { return ls_.size(); }
    bool is_identity() const { return ls_.empty(); }

    FreeWord inverse() const {
        FreeWord w;
        w.alpha_ = alpha_;
        for (auto it = ls_.rbegin(); it != ls_.rend(); ++it)
            w.ls_.push_back(it->inverse());  // reversal of a reduced word is reduced
        return w;
    }

    friend FreeWord operator*(const FreeWord& a, const FreeWord& b) {
        if (!a.alpha_.empty() && !b.alpha_.empty() && a.alpha_ != b.alpha_)
            throw precondition_error("free word product: alphabet mismatch");
        FreeWord w = a;
        if (w.alpha_.empty()) w.alpha_ = b.alpha_;
        w.append_reduced(b.ls_);
        return w;
    }

    friend bool operator==(const FreeWord& a, const FreeWord& b) { return a.ls_ == b.ls_; }
    friend bool operator!=(const FreeWord& a, const FreeWord& b) { return !(a == b); }
    friend bool operator<(const FreeWord& a, const FreeWord& b) {
        if (a.ls_.size() != b.ls_.size()) return a.ls_.size() < b.ls_.size();
        return a.ls_ < b.ls_;
    }

    friend std::ostream& operator<<(std::ostream& os, const FreeWord& w) {
        if (w.is_identity()) return os << "1";
        for (std::size_t i = 0; i < w.ls_.size(); ++i) {
            if (i) os << ".";
            os << w.ls_[i].gen;
            if (w.ls_[i].sign < 0) os << "^-1";
        }
        return os;
    }

    // Number of cancellations p when multiplying, so |uv| = |u|+|v|-2p.
    static std::size_t cancellation_count(const FreeWord& u, const FreeWord& v) {
        std::size_t p = 0;
        while (p < u.ls_.size() && p < v.ls_.size() &&
               u.ls_[u.ls_.size() - 1 - p] == v.ls_[p].inverse())
            ++p;
        return p;
    }

private:
    void append_reduced(std::vector<Letter> more) {
        for (auto& l : more) {
            if (l.sign != 1 && l.sign != -1) throw format_error("letter sign must be +1/-1");
            if (!alpha_.empty() && !std::binary_search(alpha_.begin(), alpha_.end(), l.gen))
                throw format_error("letter '" + l.gen + "' not in declared alphabet");
            if (!ls_.empty() && ls_.back() == l.inverse())
                ls_.pop_back();
            else
                ls_.push_back(std::move(l));
        }
    }

    std::vector<std::string> alpha_;
    std::vector<Letter> ls_;
};

inline FreeWord fg_multiply(const FreeWord& u, const FreeWord& v) { return u * v; }

}  // namespace partact

#pragma once

#include <compare>
#include <ostream>

#include "partact/rational.hpp"

namespace partact {

// Element of Q(i): re + im*i with exact rational parts.  Conjugation is the
// involution fixing the rationals.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(long n) : re(n) {}

    static GaussianRational zero() { return {}; }
    static GaussianRational one() { return GaussianRational(1); }
    static GaussianRational i() { return GaussianRational(Rational(0), Rational(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return {re, -im}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    GaussianRational operator-() const { return {-re, -im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw std::domain_error("division by zero in Q(i)");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    // Lexicographic order, used only for canonical set ordering.
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
        os << rational_to_string(z.re);
        if (z.im != 0) os << (z.im > 0 ? "+" : "") << rational_to_string(z.im) << "i";
        return os;
    }
};

}  // namespace partact

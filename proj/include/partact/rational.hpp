#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace partact {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct dimension_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
// Raised when two algebraic routes that must agree disagree.
struct consistency_error : std::logic_error {
    using std::logic_error::logic_error;
};

// Canonical text form "p/q" with q >= 1 and gcd(p,q) = 1.
inline std::string rational_to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "p" or "p/q".
inline Rational rational_from_string(const std::string& s) {
    if (s.empty()) throw format_error("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw format_error("zero denominator in '" + s + "'");
        return Rational(num, den);
    } catch (const format_error&) {
        throw;
    } catch (const std::exception&) {
        throw format_error("bad rational literal '" + s + "'");
    }
}

}  // namespace partact

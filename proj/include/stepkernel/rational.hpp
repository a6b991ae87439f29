#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace stepkernel {

// Exact rational scalar. All kernel data (masses, intensities) is kept in this
// form so that refinement and isomorphism decisions never touch floating point.
// gmpxx supplies the arithmetic; the helpers below pin down the one textual
// format used everywhere: "p" for integers, "p/q" in lowest terms otherwise.
using Rat = mpq_class;

// Parses "p", "-p", "p/q" (base 10, no whitespace). Throws std::invalid_argument
// on anything else, including a zero denominator.
inline Rat rat_from_string(const std::string& s) {
    auto bad = [&] { throw std::invalid_argument("not a rational: '" + s + "'"); };
    std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    std::size_t slash = std::string::npos;
    if (i == s.size()) bad();
    for (std::size_t j = i; j < s.size(); ++j) {
        if (s[j] == '/' && slash == std::string::npos && j > i && j + 1 < s.size())
            slash = j;
        else if (s[j] < '0' || s[j] > '9')
            bad();
    }
    Rat q;
    if (q.set_str(s, 10) != 0) bad();
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline double rat_to_double(const Rat& q) { return q.get_d(); }

using RatMatrix = std::vector<std::vector<Rat>>;

}  // namespace stepkernel

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <string>

#include "valgeo/errors.hpp"

namespace valgeo {

/// Exact rational scalar. All box data and box-restricted valuations use
/// this type so that set-identities can be tested as equalities, not up to
/// float noise.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rat& x) { return x.template convert_to<double>(); }

inline std::string rat_str(const Rat& x) { return x.str(); }

/// Parses "p", "-p" or "p/q".
inline Rat rat_parse(const std::string& s) {
    if (s.empty()) throw Error("empty rational literal");
    for (char c : s) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
            throw Error("bad rational literal: " + s);
    }
    try {
        Rat r(s);
        return r;
    } catch (const std::exception&) {
        throw Error("bad rational literal: " + s);
    }
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline Rat rat_pow(const Rat& x, unsigned e) {
    Rat r(1);
    for (unsigned i = 0; i < e; ++i) r *= x;
    return r;
}

} // namespace valgeo

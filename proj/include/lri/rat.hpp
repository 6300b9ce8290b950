#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace lri {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Canonical form "p/q": lowest terms, q > 0, always with the denominator ("0/1").
std::string rat_to_string(const Rat& r);

// Accepts "p" or "p/q" with optional sign; throws ParseError on anything else.
Rat rat_from_string(std::string_view s);

double rat_to_double(const Rat& r);

inline int rat_sign(const Rat& r) { return r.sign(); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// Smallest integer >= r.
Int rat_ceil(const Rat& r);

}  // namespace lri

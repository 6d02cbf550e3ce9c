#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace wb {

// Exact arbitrary-precision rational. Everything in the set-valued calculus is
// piecewise affine over Q, so equality tests are exact and no tolerances exist
// anywhere in the library.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "p", "-p", "p/q" (q > 0 after normalization). Throws ParseError.
Rat rat_parse(const std::string& text);

// Canonical form: "p/q" reduced, or "p" when the denominator is 1.
std::string rat_str(const Rat& r);

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

// 2^-n, exact.
Rat pow2_neg(unsigned n);

}  // namespace wb

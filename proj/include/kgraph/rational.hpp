#ifndef KGRAPH_RATIONAL_HPP
#define KGRAPH_RATIONAL_HPP

#include <gmpxx.h>
#include <string>
#include <string_view>

namespace kgraph {

// Arbitrary precision rational, always kept in lowest terms by GMP.
using Rational = mpq_class;
using Integer = mpz_class;

std::string to_string(const Rational& q);

// Accepts "3", "-1/2", "+4/6" (reduced on return). Throws std::invalid_argument.
Rational parse_rational(std::string_view s);

inline int sign_of(const Rational& q) { return sgn(q); }

} // namespace kgraph

#endif // KGRAPH_RATIONAL_HPP

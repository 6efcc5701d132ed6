#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace twistbetti {

using BigInt = mpz_class;
/// Exact rational, always kept in lowest terms with a positive denominator.
using Rational = mpq_class;

using QVector = std::vector<Rational>;
/// Row-major dense rational matrix.
using QMatrix = std::vector<QVector>;

/// Parses `[+-]digits[/digits]`. Throws ParseError on anything else
/// (including a zero denominator).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

int sign(const Rational& q);

Rational dot(const QVector& a, const QVector& b);

} // namespace twistbetti

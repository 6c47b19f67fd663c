#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace gradval {

using Int = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Int>;
using RationalVector = std::vector<Rational>;

// Accepts an optional sign followed by decimal digits.
Int parse_int(std::string_view text);
// Accepts "p", "p/q" (q != 0); the result is canonical.
Rational parse_rational(std::string_view text);

std::string to_string(const Int &value);
std::string to_string(const Rational &value);

// Floor division and the matching nonnegative remainder (b != 0).
Int floor_div(const Int &a, const Int &b);
Int floor_mod(const Int &a, const Int &b);
Int floor_of(const Rational &q);

Int abs_value(const Int &value);
Int lcm_of_denominators(const RationalVector &values);

int sign_of(const Int &value);
int sign_of(const Rational &value);

} // namespace gradval

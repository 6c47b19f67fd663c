#include "gradval/numeric.hpp"

#include "gradval/error.hpp"

#include <cctype>

namespace gradval {

namespace {

bool is_integer_literal(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+'))
    ++i;
  if (i == text.size())
    return false;
  for (; i < text.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      return false;
  return true;
}

} // namespace

Int parse_int(std::string_view text) {
  if (!is_integer_literal(text))
    fail(ErrorCode::ParseError, "not an integer: '" + std::string(text) + "'");
  std::string digits(text.front() == '+' ? text.substr(1) : text);
  return Int(digits, 10);
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos)
    return Rational(parse_int(text));
  auto num = text.substr(0, slash);
  auto den = text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' ||
      den[0] == '+')
    fail(ErrorCode::ParseError, "not a rational: '" + std::string(text) + "'");
  Int d = parse_int(den);
  if (d == 0)
    fail(ErrorCode::ParseError, "zero denominator: '" + std::string(text) + "'");
  Rational q(parse_int(num), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Int &value) { return value.get_str(10); }

std::string to_string(const Rational &value) { return value.get_str(10); }

Int floor_div(const Int &a, const Int &b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int floor_mod(const Int &a, const Int &b) {
  Int r = a - floor_div(a, b) * b;
  if (r < 0)
    r += abs_value(b);
  return r;
}

Int floor_of(const Rational &q) {
  Int result;
  mpz_fdiv_q(result.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return result;
}

Int abs_value(const Int &value) { return value < 0 ? Int(-value) : value; }

Int lcm_of_denominators(const RationalVector &values) {
  Int l = 1;
  for (const auto &v : values)
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

int sign_of(const Int &value) { return sgn(value); }

int sign_of(const Rational &value) { return sgn(value); }

} // namespace gradval

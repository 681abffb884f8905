#ifndef TORICDT_RATIONAL_HPP
#define TORICDT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace toricdt {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Serializes as "p/q" with q > 0; integers keep the "/1" suffix.
inline std::string to_fraction_string(const Rational& r)
{
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

inline Rational parse_fraction(std::string_view text)
{
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos)
      return Rational(Integer(std::string(text)));
    Integer num(std::string(text.substr(0, slash)));
    Integer den(std::string(text.substr(slash + 1)));
    if (den == 0)
      throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed fraction '" + std::string(text) + "'");
  }
}

template <typename T>
T power(T base, unsigned long exponent)
{
  T result(1);
  while (exponent != 0) {
    if (exponent & 1UL)
      result *= base;
    exponent >>= 1;
    if (exponent != 0)
      base *= base;
  }
  return result;
}

/// base^exponent for a possibly negative exponent; base must be nonzero when exponent < 0.
inline Rational power(const Rational& base, const Integer& exponent)
{
  if (exponent >= 0)
    return power(base, exponent.convert_to<unsigned long>());
  if (base == 0)
    throw std::domain_error("zero raised to a negative power");
  return power(Rational(1) / base, static_cast<unsigned long>((-exponent).convert_to<unsigned long>()));
}

inline Integer binomial(unsigned n, unsigned k)
{
  if (k > n)
    return 0;
  Integer r = 1;
  for (unsigned i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

inline Integer factorial(unsigned n)
{
  Integer r = 1;
  for (unsigned i = 2; i <= n; ++i)
    r *= i;
  return r;
}

} // namespace toricdt

#endif // TORICDT_RATIONAL_HPP

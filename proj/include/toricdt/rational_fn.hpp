#ifndef TORICDT_RATIONAL_FN_HPP
#define TORICDT_RATIONAL_FN_HPP

// Rational functions of q recovered from truncated series, the q -> 1/q
// symmetry test and the expansion under q = -exp(iu).

#include "toricdt/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace toricdt {

/// Dense univariate polynomial, coefficient of q^k at index k; trailing zeros trimmed.
class UPoly {
public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
  UPoly(std::initializer_list<Rational> c) : c_(c) { trim(); }

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rational operator[](std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  const Rational& lead() const { return c_.back(); }

  friend UPoly operator+(const UPoly& a, const UPoly& b)
  {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = a[i] + b[i];
    return UPoly(std::move(r));
  }

  friend UPoly operator-(const UPoly& a, const UPoly& b)
  {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = a[i] - b[i];
    return UPoly(std::move(r));
  }

  friend UPoly operator*(const UPoly& a, const UPoly& b)
  {
    if (a.is_zero() || b.is_zero())
      return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        r[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(r));
  }

  UPoly scaled(const Rational& k) const
  {
    auto r = c_;
    for (auto& x : r)
      x *= k;
    return UPoly(std::move(r));
  }

  /// q^degree * p(1/q)
  UPoly reversed() const
  {
    auto r = c_;
    std::reverse(r.begin(), r.end());
    return UPoly(std::move(r));
  }

  Rational operator()(const Rational& q) const
  {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      acc = acc * q + *it;
    return acc;
  }

  bool operator==(const UPoly&) const = default;

  /// Quotient and remainder.
  friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b)
  {
    if (b.is_zero())
      throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = a.c_;
    std::vector<Rational> quot(a.c_.size() >= b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 0);
    for (std::size_t k = quot.size(); k-- > 0;) {
      const Rational f = rem[k + b.c_.size() - 1] / b.lead();
      quot[k] = f;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        rem[k + j] -= f * b.c_[j];
    }
    return {UPoly(std::move(quot)), UPoly(std::move(rem))};
  }

  std::string str(const char* var = "q") const
  {
    if (c_.empty())
      return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0)
        continue;
      const bool neg = c_[k] < 0;
      const Rational a = neg ? Rational(-c_[k]) : c_[k];
      os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
      first = false;
      if (a != 1 || k == 0)
        os << a;
      if (k > 0) {
        if (a != 1)
          os << "*";
        os << var;
        if (k > 1)
          os << "^" << k;
      }
    }
    return os.str();
  }

private:
  void trim()
  {
    while (!c_.empty() && c_.back() == 0)
      c_.pop_back();
  }

  std::vector<Rational> c_;
};

inline UPoly poly_gcd(UPoly a, UPoly b)
{
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero())
    return a;
  return a.scaled(Rational(1) / a.lead());
}

/// q^shift * numerator(q) / denominator(q), with denominator(0) = 1 and gcd 1.
struct RationalFn {
  UPoly numerator{Rational(0)};
  UPoly denominator{Rational(1)};
  int shift = 0;

  static RationalFn constant(const Rational& c) { return RationalFn{UPoly{c}, UPoly{Rational(1)}, 0}; }

  /// Cancel common factors and powers of q, then scale the denominator to constant term 1.
  RationalFn& normalize()
  {
    if (denominator.is_zero())
      throw std::domain_error("rational function with zero denominator");
    if (numerator.is_zero()) {
      denominator = UPoly{Rational(1)};
      shift = 0;
      return *this;
    }
    const UPoly g = poly_gcd(numerator, denominator);
    numerator = divmod(numerator, g).first;
    denominator = divmod(denominator, g).first;
    auto strip = [](UPoly& p) {
      int k = 0;
      while (p[static_cast<std::size_t>(k)] == 0)
        ++k;
      std::vector<Rational> c(p.coeffs().begin() + k, p.coeffs().end());
      p = UPoly(std::move(c));
      return k;
    };
    shift += strip(numerator);
    shift -= strip(denominator);
    const Rational d0 = denominator[0];
    numerator = numerator.scaled(Rational(1) / d0);
    denominator = denominator.scaled(Rational(1) / d0);
    return *this;
  }

  std::string str() const
  {
    std::ostringstream os;
    if (shift != 0)
      os << "q^" << shift << " * ";
    os << "(" << numerator.str() << ") / (" << denominator.str() << ")";
    return os.str();
  }

  bool operator==(const RationalFn&) const = default;
};

class InsufficientCoefficients : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class NoRationalFit : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct PadeBounds {
  int num_degree = 0;
  int den_degree = 0;
};

namespace detail {

/// Solve A x = b over the rationals; nullopt if A is singular.
inline std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> a, std::vector<Rational> b)
{
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0)
      ++piv;
    if (piv == n)
      return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0)
        continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c)
        a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    b[i] /= a[i][i];
  return b;
}

} // namespace detail

/// Rational function with numerator degree <= p and denominator degree <= q whose
/// expansion reproduces every supplied coefficient. coeffs[k] is the coefficient
/// of q^(start + k). At least p + q + 1 + margin coefficients are required; the
/// ones beyond p + q + 1 act as verification.
inline RationalFn pade_reconstruct(std::span<const Rational> coeffs, int start, PadeBounds bounds, int margin = 2)
{
  const int p = bounds.num_degree;
  const int q = bounds.den_degree;
  if (p < 0 || q < 0 || margin < 0)
    throw std::invalid_argument("pade_reconstruct: negative degree bound or margin");
  const std::size_t need = static_cast<std::size_t>(p + q + 1 + margin);
  if (coeffs.size() < need)
    throw InsufficientCoefficients("pade_reconstruct: bounds (" + std::to_string(p) + "," + std::to_string(q) +
                                   ") with margin " + std::to_string(margin) + " need " + std::to_string(need) +
                                   " coefficients, got " + std::to_string(coeffs.size()));
  const auto c = [&](long k) { return k < 0 ? Rational(0) : coeffs[static_cast<std::size_t>(k)]; };
  const long len = static_cast<long>(coeffs.size());

  // Smallest total degree first; any fit of total degree <= p + q matching
  // more than p + q coefficients is unique.
  for (int total = 0; total <= p + q; ++total)
    for (int dq = 0; dq <= std::min(q, total); ++dq) {
      const int dp = total - dq;
      if (dp > p)
        continue;
      std::vector<Rational> d(static_cast<std::size_t>(dq + 1), Rational(0));
      d[0] = 1;
      if (dq > 0) {
        std::vector<std::vector<Rational>> a(static_cast<std::size_t>(dq), std::vector<Rational>(static_cast<std::size_t>(dq)));
        std::vector<Rational> rhs(static_cast<std::size_t>(dq));
        for (int r = 0; r < dq; ++r) {
          const long k = dp + 1 + r;
          for (int j = 1; j <= dq; ++j)
            a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j - 1)] = c(k - j);
          rhs[static_cast<std::size_t>(r)] = -c(k);
        }
        auto sol = detail::solve_linear(std::move(a), std::move(rhs));
        if (!sol)
          continue;
        for (int j = 1; j <= dq; ++j)
          d[static_cast<std::size_t>(j)] = (*sol)[static_cast<std::size_t>(j - 1)];
      }
      std::vector<Rational> n(static_cast<std::size_t>(dp + 1));
      bool ok = true;
      for (long k = 0; k < len && ok; ++k) {
        Rational acc = 0;
        for (int j = 0; j <= dq && j <= k; ++j)
          acc += d[static_cast<std::size_t>(j)] * c(k - j);
        if (k <= dp)
          n[static_cast<std::size_t>(k)] = acc;
        else
          ok = acc == 0;
      }
      if (!ok)
        continue;
      RationalFn r{UPoly(std::move(n)), UPoly(std::move(d)), start};
      return r.normalize();
    }
  throw NoRationalFit("pade_reconstruct: no rational function with degrees <= (" + std::to_string(p) + "," +
                      std::to_string(q) + ") matches all " + std::to_string(len) + " coefficients");
}

/// R(1/q) == R(q), tested as a cross-multiplied identity of Laurent polynomials.
inline bool symmetry_check(const RationalFn& r)
{
  using LPoly = std::map<int, Rational>;
  auto mul = [](const UPoly& a, int a_shift, const UPoly& b, int b_shift) {
    LPoly out;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
      for (std::size_t j = 0; j < b.coeffs().size(); ++j)
        out[static_cast<int>(i) + a_shift + static_cast<int>(j) + b_shift] += a.coeffs()[i] * b.coeffs()[j];
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
  };
  // p(1/q) = q^-deg p * reversed(p)
  const int dn = std::max(r.numerator.degree(), 0);
  const int dd = std::max(r.denominator.degree(), 0);
  const LPoly lhs = mul(r.numerator, r.shift, r.denominator.reversed(), -dd);
  const LPoly rhs = mul(r.numerator.reversed(), -r.shift - dn, r.denominator, 0);
  return lhs == rhs;
}

/// a + b i with exact rational parts.
struct GaussRational {
  Rational re;
  Rational im;

  friend GaussRational operator+(const GaussRational& x, const GaussRational& y) { return {x.re + y.re, x.im + y.im}; }
  friend GaussRational operator-(const GaussRational& x, const GaussRational& y) { return {x.re - y.re, x.im - y.im}; }
  friend GaussRational operator*(const GaussRational& x, const GaussRational& y)
  {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend GaussRational operator/(const GaussRational& x, const GaussRational& y)
  {
    const Rational n = y.re * y.re + y.im * y.im;
    return {(x.re * y.re + x.im * y.im) / n, (x.im * y.re - x.re * y.im) / n};
  }
  bool is_zero() const { return re == 0 && im == 0; }
};

class PoleOrderError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Laurent coefficients of R(-exp(iu)) in u: coeffs[k] multiplies u^(lowest + k).
struct USeries {
  int lowest = 0;
  std::vector<Rational> coeffs;

  Rational at(int power) const
  {
    const int k = power - lowest;
    return k < 0 || k >= static_cast<int>(coeffs.size()) ? Rational(0) : coeffs[static_cast<std::size_t>(k)];
  }
};

namespace detail {

using GSeries = std::vector<GaussRational>;

inline GSeries series_mul(const GSeries& a, const GSeries& b, std::size_t len)
{
  GSeries r(len);
  for (std::size_t i = 0; i < len && i < a.size(); ++i)
    for (std::size_t j = 0; i + j < len && j < b.size(); ++j)
      r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

/// p(x(u)) for a power series x(u), truncated to len terms.
inline GSeries series_compose(const UPoly& p, const GSeries& x, std::size_t len)
{
  GSeries acc(len);
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
    acc = series_mul(acc, x, len);
    acc[0] = acc[0] + GaussRational{*it, 0};
  }
  return acc;
}

} // namespace detail

/// Substitute q = -exp(iu) and expand about u = 0 through u^order.
/// Poles beyond u^-2 are rejected. For symmetric R the imaginary parts and the
/// odd coefficients must vanish; a violation throws std::logic_error.
inline USeries gw_expansion(const RationalFn& r, int order)
{
  const bool symmetric = symmetry_check(r);
  const std::size_t len = static_cast<std::size_t>(std::max(order, 0)) + 2 * static_cast<std::size_t>(r.denominator.degree() + 2) +
                          static_cast<std::size_t>(r.numerator.degree() + 2) + static_cast<std::size_t>(std::abs(r.shift)) + 4;
  // q(u) = -sum (iu)^k / k!
  detail::GSeries q(len);
  {
    GaussRational ik{1, 0};
    Integer fact = 1;
    for (std::size_t k = 0; k < len; ++k) {
      if (k > 0) {
        ik = ik * GaussRational{0, 1};
        fact *= static_cast<unsigned>(k);
      }
      q[k] = GaussRational{-ik.re / Rational(fact), -ik.im / Rational(fact)};
    }
  }
  detail::GSeries num = detail::series_compose(r.numerator, q, len);
  detail::GSeries den = detail::series_compose(r.denominator, q, len);
  detail::GSeries& factor_target = r.shift >= 0 ? num : den;
  for (int k = 0; k < std::abs(r.shift); ++k)
    factor_target = detail::series_mul(factor_target, q, len);

  auto valuation = [](const detail::GSeries& s) {
    std::size_t v = 0;
    while (v < s.size() && s[v].is_zero())
      ++v;
    return v;
  };
  const std::size_t vn = valuation(num);
  const std::size_t vd = valuation(den);
  if (vd == len)
    throw std::domain_error("gw_expansion: denominator vanishes identically");
  USeries out;
  if (vn == len) {
    out.lowest = 0;
    out.coeffs.assign(static_cast<std::size_t>(std::max(order, 0) + 1), Rational(0));
    return out;
  }
  const int lowest = static_cast<int>(vn) - static_cast<int>(vd);
  if (lowest < -2)
    throw PoleOrderError("gw_expansion: pole of order " + std::to_string(-lowest) + " at u = 0 (at most 2 allowed)");
  if (lowest > order) {
    out.lowest = order;
    out.coeffs.assign(1, Rational(0));
    return out;
  }
  const std::size_t count = static_cast<std::size_t>(order - lowest + 1);
  if (vn + count > len || vd + count > len)
    throw std::logic_error("gw_expansion: internal truncation too short");
  // (num / u^vn) / (den / u^vd) by long division.
  detail::GSeries quot(count);
  for (std::size_t k = 0; k < count; ++k) {
    GaussRational acc = num[vn + k];
    for (std::size_t j = 1; j <= k; ++j)
      acc = acc - den[vd + j] * quot[k - j];
    quot[k] = acc / den[vd];
  }
  out.lowest = lowest;
  for (std::size_t k = 0; k < count; ++k) {
    const int power = lowest + static_cast<int>(k);
    if (symmetric && quot[k].im != 0)
      throw std::logic_error("gw_expansion: nonzero imaginary part at u^" + std::to_string(power));
    if (symmetric && (power % 2 != 0) && quot[k].re != 0)
      throw std::logic_error("gw_expansion: nonzero odd coefficient at u^" + std::to_string(power));
    out.coeffs.push_back(quot[k].re);
  }
  return out;
}

} // namespace toricdt

#endif // TORICDT_RATIONAL_FN_HPP

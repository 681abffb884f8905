#ifndef TORICDT_GWREF_HPP
#define TORICDT_GWREF_HPP

// Reference values on the Gromov-Witten side: Bernoulli numbers, the lambda^3
// Hodge integrals, degree zero free energies and the MacMahon function.

#include "toricdt/rational.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstddef>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricdt {

namespace detail {

/// B_0..B_n from sum_{j<=m} C(m+1, j) B_j = 0.
inline std::vector<Rational> bernoulli_table(int n)
{
  static std::mutex mu;
  static std::vector<Rational> table{Rational(1)};
  std::lock_guard lock(mu);
  for (int m = static_cast<int>(table.size()); m <= n; ++m) {
    Rational acc = 0;
    for (int j = 0; j < m; ++j)
      acc += Rational(binomial(m + 1, j)) * table[static_cast<std::size_t>(j)];
    table.push_back(-acc / Rational(m + 1));
  }
  return {table.begin(), table.begin() + n + 1};
}

} // namespace detail

/// B_k for even k >= 2 (convention B_1 = -1/2, irrelevant here).
inline Rational bernoulli(int k)
{
  if (k < 2 || k % 2 != 0)
    throw std::invalid_argument("bernoulli: k must be even and >= 2, got " + std::to_string(k));
  return detail::bernoulli_table(k)[static_cast<std::size_t>(k)];
}

/// Integral of lambda_{g-1}^3 over M_g: |B_2g|/2g * |B_2g-2|/(2g-2) / (2g-2)!.
inline Rational lambda_cube(int g)
{
  if (g < 2)
    throw std::invalid_argument("lambda_cube: g must be >= 2, got " + std::to_string(g));
  const Rational a = abs(bernoulli(2 * g)) / Rational(2 * g);
  const Rational b = abs(bernoulli(2 * g - 2)) / Rational(2 * g - 2);
  return a * b / Rational(factorial(2 * g - 2));
}

/// Coefficient of u^(2g-2) in the degree zero F^g: (-1)^g (c/2) lambda_cube(g).
inline Rational degree0_coeff(int g, long c)
{
  const Rational v = Rational(c, 2) * lambda_cube(g);
  return g % 2 == 0 ? v : Rational(-v);
}

/// Coefficients of M(q)^e, or M(-q)^e when `negate`, through q^n_max.
/// Uses m a_m = e sum_{j=1}^m sigma_2(j) a_{m-j}, which follows from
/// q d/dq log M = sum sigma_2(j) q^j.
inline std::vector<Rational> macmahon_coeffs(int n_max, bool negate, long exponent)
{
  if (n_max < 0)
    throw std::invalid_argument("macmahon_coeffs: n_max must be >= 0");
  std::vector<Integer> sigma2(static_cast<std::size_t>(n_max) + 1, 0);
  for (int d = 1; d <= n_max; ++d)
    for (int m = d; m <= n_max; m += d)
      sigma2[static_cast<std::size_t>(m)] += Integer(d) * d;
  std::vector<Rational> a(static_cast<std::size_t>(n_max) + 1, Rational(0));
  a[0] = 1;
  for (int m = 1; m <= n_max; ++m) {
    Rational acc = 0;
    for (int j = 1; j <= m; ++j)
      acc += Rational(sigma2[static_cast<std::size_t>(j)]) * a[static_cast<std::size_t>(m - j)];
    a[static_cast<std::size_t>(m)] = acc * Rational(exponent) / Rational(m);
  }
  if (negate)
    for (int m = 1; m <= n_max; m += 2)
      a[static_cast<std::size_t>(m)] = -a[static_cast<std::size_t>(m)];
  return a;
}

/// Laurent coefficients of (2 sin(u/2))^-2 for u^-2 .. u^order, built from the
/// sine power series alone: index k holds the coefficient of u^(k-2).
inline std::vector<Rational> inverse_sine_square_series(int order)
{
  if (order < -2)
    throw std::invalid_argument("inverse_sine_square_series: order must be >= -2");
  const std::size_t len = static_cast<std::size_t>(order + 3);
  // 2 sin(u/2) / u = sum_k (-1)^k u^(2k) / (4^k (2k+1)!)
  std::vector<Rational> s(len, Rational(0));
  for (std::size_t k = 0; 2 * k < len; ++k) {
    Rational c = Rational(1) / (Rational(power(Integer(4), k)) * Rational(factorial(static_cast<unsigned>(2 * k + 1))));
    s[2 * k] = k % 2 == 0 ? c : Rational(-c);
  }
  std::vector<Rational> sq(len, Rational(0));
  for (std::size_t i = 0; i < len; ++i)
    for (std::size_t j = 0; i + j < len; ++j)
      sq[i + j] += s[i] * s[j];
  std::vector<Rational> inv(len, Rational(0));
  inv[0] = Rational(1) / sq[0];
  for (std::size_t k = 1; k < len; ++k) {
    Rational acc = 0;
    for (std::size_t j = 1; j <= k; ++j)
      acc += sq[j] * inv[k - j];
    inv[k] = -acc / sq[0];
  }
  return inv;
}

struct TailCoefficient {
  int genus = 0;
  double extracted = 0;
  /// -(c/2) lambda_cube(g): the eps^(2g-2) coefficient of (c/2) log M(e^-eps).
  Rational expected;
  double error = 0;
  bool relative = true;
  bool pass = false;
};

struct TailReport {
  bool pass = false;
  double tolerance = 0;
  int grid_points = 0;
  int tail_terms = 0;
  double eps_min = 0;
  double eps_max = 0;
  double max_residual = 0;
  double singular_eps_m2 = 0;
  double singular_log = 0;
  double singular_const = 0;
  std::vector<TailCoefficient> coefficients;
  std::string message;
};

namespace detail {

using Real = boost::multiprecision::cpp_bin_float_100;

/// log M(e^-eps) = sum_k (1/k) x^k / (1 - x^k)^2 with x = e^-eps.
inline Real log_macmahon(const Real& eps)
{
  using boost::multiprecision::exp;
  const Real x = exp(-eps);
  const Real cutoff("1e-95");
  Real sum = 0;
  Real xk = 1;
  for (long k = 1;; ++k) {
    xk *= x;
    const Real one_minus = 1 - xk;
    const Real term = xk / (one_minus * one_minus) / k;
    sum += term;
    if (term < cutoff * sum)
      break;
  }
  return sum;
}

/// Least squares via Householder QR; returns the solution and fills residuals.
inline std::vector<Real> least_squares(std::vector<std::vector<Real>> a, std::vector<Real> b, std::vector<Real>& residuals)
{
  using boost::multiprecision::sqrt;
  using boost::multiprecision::abs;
  const std::size_t m = a.size();
  const std::size_t n = a.front().size();
  const auto a0 = a;
  const auto b0 = b;
  for (std::size_t k = 0; k < n; ++k) {
    Real norm = 0;
    for (std::size_t i = k; i < m; ++i)
      norm += a[i][k] * a[i][k];
    norm = sqrt(norm);
    if (norm == 0)
      throw std::runtime_error("asymptotic fit: rank deficient design matrix");
    const Real alpha = a[k][k] > 0 ? Real(-norm) : norm;
    std::vector<Real> v(m, Real(0));
    for (std::size_t i = k; i < m; ++i)
      v[i] = a[i][k];
    v[k] -= alpha;
    Real vv = 0;
    for (std::size_t i = k; i < m; ++i)
      vv += v[i] * v[i];
    for (std::size_t j = k; j < n; ++j) {
      Real dot = 0;
      for (std::size_t i = k; i < m; ++i)
        dot += v[i] * a[i][j];
      for (std::size_t i = k; i < m; ++i)
        a[i][j] -= 2 * dot / vv * v[i];
    }
    Real dot = 0;
    for (std::size_t i = k; i < m; ++i)
      dot += v[i] * b[i];
    for (std::size_t i = k; i < m; ++i)
      b[i] -= 2 * dot / vv * v[i];
  }
  std::vector<Real> x(n);
  for (std::size_t k = n; k-- > 0;) {
    Real acc = b[k];
    for (std::size_t j = k + 1; j < n; ++j)
      acc -= a[k][j] * x[j];
    x[k] = acc / a[k][k];
  }
  residuals.assign(m, Real(0));
  for (std::size_t i = 0; i < m; ++i) {
    Real r = b0[i];
    for (std::size_t j = 0; j < n; ++j)
      r -= a0[i][j] * x[j];
    residuals[i] = abs(r);
  }
  return x;
}

inline Real to_real(const Rational& r)
{
  return Real(numerator_of(r)) / Real(denominator_of(r));
}

} // namespace detail

/// Fits (c/2) log M(e^-eps) on a grid of eps by a eps^-2 + b log eps + const
/// plus even powers eps^2 .. eps^(2T), then compares the eps^(2g-2) coefficients
/// for g = 2..g_max with -(c/2) lambda_cube(g). The comparison is relative
/// except when c = 0, where it is absolute.
inline TailReport asymptotic_tail_check(int g_max, long c, double tolerance)
{
  using detail::Real;
  if (g_max < 2)
    throw std::invalid_argument("asymptotic_tail_check: g_max must be >= 2");
  TailReport rep;
  rep.tolerance = tolerance;
  rep.tail_terms = std::max(10, g_max + 8);
  rep.grid_points = 40;
  rep.eps_max = 0.8;
  rep.eps_min = 0.1;

  const std::size_t unknowns = 3 + static_cast<std::size_t>(rep.tail_terms);
  std::vector<std::vector<Real>> a;
  std::vector<Real> b;
  const Real half_c = Real(c) / 2;
  for (int i = 0; i < rep.grid_points; ++i) {
    const Real eps = Real(rep.eps_max) - (Real(rep.eps_max) - Real(rep.eps_min)) * i / (rep.grid_points - 1);
    std::vector<Real> row(unknowns);
    row[0] = 1 / (eps * eps);
    row[1] = boost::multiprecision::log(eps);
    row[2] = 1;
    Real p = 1;
    for (int t = 0; t < rep.tail_terms; ++t) {
      p *= eps * eps;
      row[3 + static_cast<std::size_t>(t)] = p;
    }
    a.push_back(std::move(row));
    b.push_back(half_c * detail::log_macmahon(eps));
  }
  std::vector<Real> residuals;
  std::vector<Real> x;
  try {
    x = detail::least_squares(std::move(a), std::move(b), residuals);
  } catch (const std::exception& e) {
    rep.message = e.what();
    return rep;
  }
  Real worst = 0;
  for (const auto& r : residuals)
    worst = std::max(worst, r);
  rep.max_residual = worst.convert_to<double>();
  rep.singular_eps_m2 = x[0].convert_to<double>();
  rep.singular_log = x[1].convert_to<double>();
  rep.singular_const = x[2].convert_to<double>();

  rep.pass = true;
  for (int g = 2; g <= g_max; ++g) {
    TailCoefficient tc;
    tc.genus = g;
    tc.expected = -Rational(c, 2) * lambda_cube(g);
    const Real got = x[3 + static_cast<std::size_t>(g - 2)];
    tc.extracted = got.convert_to<double>();
    const Real want = detail::to_real(tc.expected);
    tc.relative = c != 0;
    const Real diff = boost::multiprecision::abs(got - want);
    tc.error = (tc.relative ? Real(diff / boost::multiprecision::abs(want)) : diff).convert_to<double>();
    tc.pass = tc.error < tolerance;
    rep.pass = rep.pass && tc.pass;
    rep.coefficients.push_back(tc);
  }
  if (!rep.pass)
    rep.message = "tail coefficient outside tolerance; max fit residual " + std::to_string(rep.max_residual);
  return rep;
}

} // namespace toricdt

#endif // TORICDT_GWREF_HPP

#ifndef TORICDT_CHARCALC_HPP
#define TORICDT_CHARCALC_HPP

// Torus characters of the virtual tangent space at a fixed ideal sheaf:
// vertex and edge pieces, their restriction to the Calabi-Yau subtorus and
// the associated products of equivariant weights.

#include "toricdt/laurent.hpp"
#include "toricdt/partitions.hpp"
#include "toricdt/rational.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace toricdt {

/// Local-to-global character map: row i is the global weight of local coordinate x_i.
using Frame = std::array<std::array<int, 3>, 3>;

inline constexpr Frame identity_frame{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

inline std::array<int, 3> apply_frame(const Frame& f, const std::array<int, 3>& k)
{
  std::array<int, 3> g{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      g[j] += k[i] * f[i][j];
  return g;
}

/// (1 - t_axis)
template <std::size_t D>
LaurentPoly<D> one_minus(std::size_t axis)
{
  return LaurentPoly<D>::constant(1) - LaurentPoly<D>::variable(axis);
}

template <std::size_t D>
LaurentPoly<D> times_one_minus(const LaurentPoly<D>& f, std::size_t axis, int power = 1)
{
  LaurentPoly<D> r = f;
  typename LaurentPoly<D>::Exponent shift{};
  shift[axis] = 1;
  for (int k = 0; k < power; ++k)
    r = r - r.shifted(shift);
  return r;
}

/// Place a two-variable polynomial on the axes transverse to `axis`.
inline Poly3 lift(const Poly2& f, int axis)
{
  const auto [lo, hi] = other_axes(axis);
  return f.map_exponents<3>([lo = lo, hi = hi](const std::array<int, 2>& e) {
    std::array<int, 3> out{};
    out[static_cast<std::size_t>(lo)] = e[0];
    out[static_cast<std::size_t>(hi)] = e[1];
    return out;
  });
}

/// num / prod_i (1 - t_i)^den[i].
struct FracChar {
  Poly3 num;
  std::array<int, 3> den{};

  static FracChar polynomial(Poly3 p) { return FracChar{std::move(p), {0, 0, 0}}; }

  /// Cancel every (1 - t_i) factor the numerator allows.
  FracChar& normalize()
  {
    for (std::size_t i = 0; i < 3; ++i)
      while (den[i] > 0 && divisible(num, i)) {
        num = exact_div(num, i);
        --den[i];
      }
    if (num.is_zero())
      den = {0, 0, 0};
    return *this;
  }

  bool is_laurent() const { return den == std::array<int, 3>{0, 0, 0}; }

  /// Numerator over the common denominator prod (1 - t_i)^target[i].
  Poly3 numerator_over(const std::array<int, 3>& target) const
  {
    Poly3 r = num;
    for (std::size_t i = 0; i < 3; ++i)
      r = times_one_minus(r, i, target[i] - den[i]);
    return r;
  }

  friend FracChar operator+(const FracChar& a, const FracChar& b)
  {
    std::array<int, 3> d{};
    for (std::size_t i = 0; i < 3; ++i)
      d[i] = std::max(a.den[i], b.den[i]);
    FracChar r{a.numerator_over(d) + b.numerator_over(d), d};
    return r.normalize();
  }

  friend FracChar operator-(const FracChar& a) { return FracChar{-a.num, a.den}; }
  friend FracChar operator-(const FracChar& a, const FracChar& b) { return a + (-b); }

  friend FracChar operator*(const FracChar& a, const FracChar& b)
  {
    FracChar r{a.num * b.num, {a.den[0] + b.den[0], a.den[1] + b.den[1], a.den[2] + b.den[2]}};
    return r.normalize();
  }

  /// Equality as rational functions, by cross-multiplication.
  friend bool operator==(const FracChar& a, const FracChar& b)
  {
    std::array<int, 3> d{};
    for (std::size_t i = 0; i < 3; ++i)
      d[i] = std::max(a.den[i], b.den[i]);
    return a.numerator_over(d) == b.numerator_over(d);
  }

  /// The Laurent polynomial this represents; throws if a denominator survives.
  Poly3 to_laurent() const
  {
    FracChar n = *this;
    n.normalize();
    for (std::size_t i = 0; i < 3; ++i)
      if (n.den[i] > 0)
        throw DivisibilityError(i, at_one(n.num, i).str());
    return n.num;
  }
};

/// Q_alpha = qprime + sum_i legs[i] / (1 - t_i), legs[i] in the transverse variables.
struct VertexGF {
  Poly3 qprime;
  std::array<Poly2, 3> legs;

  FracChar as_frac() const
  {
    FracChar q = FracChar::polynomial(qprime);
    for (int i = 0; i < 3; ++i) {
      std::array<int, 3> d{};
      d[static_cast<std::size_t>(i)] = 1;
      q = q + FracChar{lift(legs[static_cast<std::size_t>(i)], i), d};
    }
    return q;
  }

  bool operator==(const VertexGF&) const = default;
};

/// Sum over the cells of lambda of t^row s^col.
inline Poly2 diagram_series(const Partition2D& lambda)
{
  Poly2 q;
  for (auto [a, b] : lambda.cells())
    q.add_term({a, b}, 1);
  return q;
}

/// Generating function of the boxes, split into the finite part and the leg cylinders.
inline VertexGF vertex_Q(const Partition3D& pi)
{
  VertexGF gf;
  for (int i = 0; i < 3; ++i)
    gf.legs[static_cast<std::size_t>(i)] = diagram_series(pi.leg(i));
  for (const Box& b : pi.extra())
    gf.qprime.add_term(b, 1);
  // Boxes shared by two or three cylinders were subtracted once per cylinder.
  int legext = 0;
  for (const auto& l : pi.legs())
    legext = std::max({legext, l.num_rows(), l.num_cols()});
  for (int a = 0; a < legext; ++a)
    for (int b = 0; b < legext; ++b)
      for (int c = 0; c < legext; ++c) {
        const int n = pi.leg_count({a, b, c});
        if (n >= 2)
          gf.qprime.add_term({a, b, c}, 1 - n);
      }
  return gf;
}

/// 1 + P = (1 - t1)(1 - t2)(1 - t3) Q, computed from the box set.
inline Poly3 resolution_numerator(const Partition3D& pi)
{
  const VertexGF gf = vertex_Q(pi);
  Poly3 a = times_one_minus(times_one_minus(times_one_minus(gf.qprime, 0), 1), 2);
  for (int i = 0; i < 3; ++i) {
    const auto [lo, hi] = other_axes(i);
    a += times_one_minus(times_one_minus(lift(gf.legs[static_cast<std::size_t>(i)], i),
                                         static_cast<std::size_t>(lo)),
                         static_cast<std::size_t>(hi));
  }
  return a;
}

/// Minimal monomial generators of the ideal of pi, as exponent vectors.
inline std::vector<Box> ideal_generators(const Partition3D& pi) { return pi.addable_boxes(); }

/// Alternating sum over nonempty subsets T of the generators of (-1)^|T| t^lcm(T).
inline Poly3 taylor_poincare(std::span<const Box> gens)
{
  if (gens.empty())
    throw std::invalid_argument("taylor_poincare: empty generator list");
  for (const Box& g : gens)
    if (g[0] < 0 || g[1] < 0 || g[2] < 0)
      throw std::invalid_argument("taylor_poincare: negative exponent");
  Poly3 p;
  auto rec = [&](auto&& self, std::size_t next, const Box& lcm, int sign) -> void {
    for (std::size_t j = next; j < gens.size(); ++j) {
      const Box l{std::max(lcm[0], gens[j][0]), std::max(lcm[1], gens[j][1]), std::max(lcm[2], gens[j][2])};
      p.add_term(l, -sign);
      self(self, j + 1, l, -sign);
    }
  };
  rec(rec, 0, Box{0, 0, 0}, 1);
  return p;
}

/// F_{ab}(t2, t3) = -Q - Qbar/(t2 t3) + Q Qbar (1 - t2)(1 - t3)/(t2 t3).
inline Poly2 edge_char(const Partition2D& lambda)
{
  const Poly2 q = diagram_series(lambda);
  const Poly2 qb = bar(q);
  const std::array<int, 2> inv{-1, -1};
  Poly2 f = -q;
  f -= qb.shifted(inv);
  f += times_one_minus(times_one_minus(q * qb, 0), 1).shifted(inv);
  return f;
}

/// Vertex character F_alpha as the fraction (1 - P Pbar) / prod (1 - t_i).
inline FracChar vertex_F(const Partition3D& pi)
{
  const Poly3 p = resolution_numerator(pi) - Poly3::constant(1);
  return FracChar{Poly3::constant(1) - p * bar(p), {1, 1, 1}};
}

/// V_alpha = F_alpha + sum_i F_{alpha beta_i}(t_i', t_i'') / (1 - t_i), a Laurent polynomial.
inline Poly3 vertex_V(const Partition3D& pi)
{
  FracChar v = vertex_F(pi);
  for (int i = 0; i < 3; ++i) {
    std::array<int, 3> d{};
    d[static_cast<std::size_t>(i)] = 1;
    v = v + FracChar{lift(edge_char(pi.leg(i)), i), d};
  }
  return v.to_laurent();
}

/// E_{ab} in the edge chart (t1 along the edge):
/// [t1^-1 F(t2, t3) - F(t2 t1^-m, t3 t1^-m')] / (1 - t1^-1).
inline Poly3 edge_E(const Partition2D& lambda, const EdgeFrame& frame)
{
  const Poly2 f = edge_char(lambda);
  const Poly3 near = lift(f, 0).shifted({-1, 0, 0});
  const Poly3 far = f.map_exponents<3>([&](const std::array<int, 2>& e) {
    return std::array<int, 3>{-frame.m * e[0] - frame.mprime * e[1], e[0], e[1]};
  });
  // X / (1 - t1^-1) = -t1 X / (1 - t1)
  return exact_div(-(near - far).shifted({1, 0, 0}), 0);
}

/// Substitute t3 -> (t1 t2)^-1.
inline Poly2 restrict_cy(const Poly3& f)
{
  return f.map_exponents<2>([](const std::array<int, 3>& e) {
    return std::array<int, 2>{e[0] - e[2], e[1] - e[2]};
  });
}

inline int mod2(long v) { return static_cast<int>(((v % 2) + 2) % 2); }

struct Parities {
  int vertex = 0;
  /// Empty for edges whose frame fails the Calabi-Yau degree condition.
  std::vector<std::optional<int>> edges;
};

inline Parities char_parities(const Partition3D& pi,
                              std::span<const std::pair<Partition2D, EdgeFrame>> edges)
{
  Parities out;
  out.vertex = mod2(renorm_volume(pi));
  for (const auto& [lambda, frame] : edges) {
    if (!frame.is_cy()) {
      out.edges.emplace_back();
      continue;
    }
    out.edges.emplace_back(mod2(f_edge(frame.m, frame.mprime, lambda) + static_cast<long>(frame.m) * lambda.size()));
  }
  return out;
}

class ZeroWeightError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// prod_k (s, k)^{e_k} over integer weight vectors k.
template <std::size_t D>
class WeightProduct {
public:
  using Weight = std::array<int, D>;

  const std::map<Weight, Integer>& factors() const { return factors_; }
  bool empty() const { return factors_.empty(); }

  void multiply(const Weight& k, const Integer& exponent)
  {
    if (k == Weight{})
      throw ZeroWeightError("weight product: zero weight vector");
    if (exponent == 0)
      return;
    auto [it, inserted] = factors_.try_emplace(k, exponent);
    if (!inserted) {
      it->second += exponent;
      if (it->second == 0)
        factors_.erase(it);
    }
  }

  Rational evaluate(const std::array<Rational, D>& s) const
  {
    Rational result = 1;
    for (const auto& [k, e] : factors_) {
      Rational w = 0;
      for (std::size_t i = 0; i < D; ++i)
        w += s[i] * k[i];
      if (w == 0)
        throw ZeroWeightError("weight product: a weight vanishes at the evaluation point");
      result *= power(w, e);
    }
    return result;
  }

private:
  std::map<Weight, Integer> factors_;
};

/// Equivariant weight product of a local character: factor (s, frame k)^{-v_k}.
inline WeightProduct<3> weight_product(const Poly3& v, const Frame& frame)
{
  WeightProduct<3> w;
  for (const auto& [k, c] : v.terms()) {
    const auto g = apply_frame(frame, k);
    if (g == std::array<int, 3>{})
      throw ZeroWeightError("weight product: character has a zero-weight term");
    w.multiply(g, -c);
  }
  return w;
}

/// Weight product of a character already restricted to the Calabi-Yau subtorus.
inline WeightProduct<2> weight_product(const Poly2& v)
{
  WeightProduct<2> w;
  for (const auto& [k, c] : v.terms()) {
    if (k == std::array<int, 2>{})
      throw ZeroWeightError("weight product: restricted character has a zero-weight term");
    w.multiply(k, -c);
  }
  return w;
}

} // namespace toricdt

#endif // TORICDT_CHARCALC_HPP

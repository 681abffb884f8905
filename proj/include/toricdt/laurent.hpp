#ifndef TORICDT_LAURENT_HPP
#define TORICDT_LAURENT_HPP

#include "toricdt/rational.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace toricdt {

/// Sparse Laurent polynomial with integer coefficients in D torus variables.
/// Zero coefficients are never stored.
template <std::size_t D>
class LaurentPoly {
public:
  using Exponent = std::array<int, D>;
  using Terms = std::map<Exponent, Integer>;

  LaurentPoly() = default;

  static LaurentPoly monomial(const Exponent& e, const Integer& c = 1)
  {
    LaurentPoly p;
    p.add_term(e, c);
    return p;
  }

  static LaurentPoly constant(const Integer& c) { return monomial(Exponent{}, c); }

  /// t_axis^power
  static LaurentPoly variable(std::size_t axis, int power = 1)
  {
    Exponent e{};
    e[axis] = power;
    return monomial(e);
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t num_terms() const { return terms_.size(); }

  Integer coefficient(const Exponent& e) const
  {
    auto it = terms_.find(e);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  void add_term(const Exponent& e, const Integer& c)
  {
    if (c == 0)
      return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0)
        terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o)
  {
    for (const auto& [e, c] : o.terms_)
      add_term(e, c);
    return *this;
  }

  LaurentPoly& operator-=(const LaurentPoly& o)
  {
    for (const auto& [e, c] : o.terms_)
      add_term(e, -c);
    return *this;
  }

  LaurentPoly& operator*=(const Integer& k)
  {
    if (k == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_)
      c *= k;
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const Integer& k) { return a *= k; }
  friend LaurentPoly operator-(LaurentPoly a) { return a *= Integer(-1); }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
  {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e;
        for (std::size_t i = 0; i < D; ++i)
          e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  bool operator==(const LaurentPoly&) const = default;

  /// Multiply by the monomial t^shift.
  LaurentPoly shifted(const Exponent& shift) const
  {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) {
      Exponent s;
      for (std::size_t i = 0; i < D; ++i)
        s[i] = e[i] + shift[i];
      r.terms_.emplace(s, c);
    }
    return r;
  }

  /// Apply an arbitrary map on exponent vectors, collecting coefficients.
  template <std::size_t E, typename F>
  LaurentPoly<E> map_exponents(F&& f) const
  {
    LaurentPoly<E> r;
    for (const auto& [e, c] : terms_)
      r.add_term(f(e), c);
    return r;
  }

  /// Sum of the coefficients.
  Integer at_one() const
  {
    Integer s = 0;
    for (const auto& [e, c] : terms_)
      s += c;
    return s;
  }

  std::string str() const
  {
    if (terms_.empty())
      return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first)
        os << (c < 0 ? " - " : " + ");
      else if (c < 0)
        os << "-";
      first = false;
      const Integer a = c < 0 ? Integer(-c) : c;
      bool unit = true;
      for (std::size_t i = 0; i < D; ++i)
        unit = unit && e[i] == 0;
      if (a != 1 || unit)
        os << a;
      for (std::size_t i = 0; i < D; ++i) {
        if (e[i] == 0)
          continue;
        os << "t" << (i + 1);
        if (e[i] != 1)
          os << "^" << e[i];
      }
    }
    return os.str();
  }

private:
  Terms terms_;
};

using Poly2 = LaurentPoly<2>;
using Poly3 = LaurentPoly<3>;

/// Negate every exponent vector.
template <std::size_t D>
LaurentPoly<D> bar(const LaurentPoly<D>& f)
{
  return f.template map_exponents<D>([](auto e) {
    for (auto& x : e)
      x = -x;
    return e;
  });
}

/// Raised when a division by (1 - t_i) is not exact; carries f restricted to t_i = 1.
class DivisibilityError : public std::logic_error {
public:
  DivisibilityError(std::size_t axis, std::string remainder)
      : std::logic_error("not divisible by (1 - t" + std::to_string(axis + 1) + "); remainder " + remainder),
        remainder_(std::move(remainder))
  {
  }
  const std::string& remainder() const { return remainder_; }

private:
  std::string remainder_;
};

/// f restricted to t_axis = 1.
template <std::size_t D>
LaurentPoly<D> at_one(const LaurentPoly<D>& f, std::size_t axis)
{
  return f.template map_exponents<D>([axis](auto e) {
    e[axis] = 0;
    return e;
  });
}

template <std::size_t D>
bool divisible(const LaurentPoly<D>& f, std::size_t axis)
{
  return at_one(f, axis).is_zero();
}

/// f / (1 - t_axis), exact. Throws DivisibilityError otherwise.
template <std::size_t D>
LaurentPoly<D> exact_div(const LaurentPoly<D>& f, std::size_t axis)
{
  if (axis >= D)
    throw std::out_of_range("exact_div: axis");
  // Group the terms into univariate slices along `axis`.
  using Exponent = typename LaurentPoly<D>::Exponent;
  std::map<Exponent, std::map<int, Integer>> slices;
  for (const auto& [e, c] : f.terms()) {
    Exponent key = e;
    key[axis] = 0;
    slices[key][e[axis]] = c;
  }
  LaurentPoly<D> q;
  LaurentPoly<D> remainder;
  for (const auto& [key, slice] : slices) {
    // g = (1 - t) h  gives  h_k = sum_{j <= k} g_j.
    Integer running = 0;
    auto it = slice.begin();
    const int lo = it->first;
    const int hi = slice.rbegin()->first;
    for (int k = lo; k < hi; ++k) {
      if (it != slice.end() && it->first == k) {
        running += it->second;
        ++it;
      }
      Exponent e = key;
      e[axis] = k;
      q.add_term(e, running);
    }
    running += slice.rbegin()->second;
    remainder.add_term(key, running);
  }
  if (!remainder.is_zero())
    throw DivisibilityError(axis, remainder.str());
  return q;
}

} // namespace toricdt

#endif // TORICDT_LAURENT_HPP

#ifndef TORICDT_DTSUM_HPP
#define TORICDT_DTSUM_HPP

// Torus-fixed ideal sheaves on a toric Calabi-Yau geometry and the
// Donaldson-Thomas series assembled from them by localization.

#include "toricdt/charcalc.hpp"
#include "toricdt/geometry.hpp"
#include "toricdt/partitions.hpp"
#include "toricdt/rational.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace toricdt {

/// Curve-class multidegree, one entry per class of the geometry.
using Degree = std::vector<int>;

/// Partitions on every compact edge (read in the chart of the edge's `from`
/// vertex) and a compatible 3D partition at every vertex.
struct FixedPoint {
  std::vector<Partition2D> edge_partitions;
  std::vector<Partition3D> vertex_partitions;

  bool operator==(const FixedPoint&) const = default;
};

/// Leg along `axis` at vertex `v` forced by the edge partitions.
inline Partition2D forced_leg(const ToricCY3& g, std::size_t v, int axis, const std::vector<Partition2D>& edge_parts)
{
  const int e = g.vertices[v].incident[static_cast<std::size_t>(axis)];
  if (e == kOpenRay)
    return {};
  const auto& ed = g.edges[static_cast<std::size_t>(e)];
  const auto& lambda = edge_parts[static_cast<std::size_t>(e)];
  if (ed.from == v)
    return lambda;
  return ed.flip ? lambda.transpose() : lambda;
}

inline Partition3D::Legs forced_legs(const ToricCY3& g, std::size_t v, const std::vector<Partition2D>& edge_parts)
{
  return {forced_leg(g, v, 0, edge_parts), forced_leg(g, v, 1, edge_parts), forced_leg(g, v, 2, edge_parts)};
}

inline bool is_compatible(const FixedPoint& fp, const ToricCY3& g)
{
  if (fp.edge_partitions.size() != g.edges.size() || fp.vertex_partitions.size() != g.vertices.size())
    return false;
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    if (fp.vertex_partitions[v].legs() != forced_legs(g, v, fp.edge_partitions))
      return false;
  return true;
}

inline Degree degree(const FixedPoint& fp, const ToricCY3& g)
{
  Degree d(g.classes.size(), 0);
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    d[g.edges[e].curve_class] += fp.edge_partitions[e].size();
  return d;
}

/// Euler characteristic of the structure sheaf of the thickened invariant line:
/// each cell (i, j) contributes 1 - m(i-1) - m'(j-1), the Euler characteristic
/// of the line bundle carried by the monomial x2^(i-1) x3^(j-1).
inline long edge_euler(const EdgeFrame& frame, const Partition2D& lambda)
{
  return f_edge(-frame.m, -frame.mprime, lambda);
}

inline long chi(const FixedPoint& fp, const ToricCY3& g)
{
  long total = 0;
  for (const auto& pi : fp.vertex_partitions)
    total += renorm_volume(pi);
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    total += edge_euler(g.edges[e].frame, fp.edge_partitions[e]);
  return total;
}

namespace detail {

inline int sign_from(long chi_value, const FixedPoint& fp, const ToricCY3& g)
{
  long exponent = chi_value;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    exponent += static_cast<long>(g.edges[e].frame.m) * fp.edge_partitions[e].size();
  return mod2(exponent) == 0 ? 1 : -1;
}

} // namespace detail

/// (-1)^(chi + sum_e m_e |lambda_e|); the geometry must satisfy the Calabi-Yau condition.
inline int sign(const FixedPoint& fp, const ToricCY3& g)
{
  for (const auto& e : g.edges)
    if (!e.frame.is_cy())
      throw GeometryError("sign: edge '" + e.id + "' violates the Calabi-Yau condition");
  return detail::sign_from(chi(fp, g), fp, g);
}

/// Edge character mapped from the edge chart of the `from` vertex to the global lattice.
inline Poly3 global_edge_character(const Poly3& e_char, const ToricCY3& g, const GeoEdge& e)
{
  const auto [lo, hi] = other_axes(e.axis_from);
  const Frame& f = g.vertices[e.from].frame;
  const int axes[3] = {e.axis_from, lo, hi};
  return e_char.map_exponents<3>([&](const std::array<int, 3>& k) {
    std::array<int, 3> local{};
    for (std::size_t i = 0; i < 3; ++i)
      local[static_cast<std::size_t>(axes[i])] = k[i];
    return apply_frame(f, local);
  });
}

inline Poly3 global_vertex_character(const Poly3& v_char, const Frame& f)
{
  return v_char.map_exponents<3>([&](const std::array<int, 3>& k) { return apply_frame(f, k); });
}

/// Character of the virtual tangent space, sum of vertex and edge pieces, in global weights.
inline Poly3 tangent_character(const FixedPoint& fp, const ToricCY3& g)
{
  Poly3 total;
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    total += global_vertex_character(vertex_V(fp.vertex_partitions[v]), g.vertices[v].frame);
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    total += global_edge_character(edge_E(fp.edge_partitions[e], g.edges[e].frame), g, g.edges[e]);
  return total;
}

/// e(Ext^2)/e(Ext^1) at the fixed point, evaluated on the Calabi-Yau subtorus at s.
inline Rational weight_ratio(const FixedPoint& fp, const ToricCY3& g, const std::array<Rational, 3>& s)
{
  if (s[0] + s[1] + s[2] != 0)
    throw std::invalid_argument("weight_ratio: evaluation point must satisfy s1 + s2 + s3 = 0");
  const Poly2 restricted = restrict_cy(tangent_character(fp, g));
  return weight_product(restricted).evaluate({s[0], s[1]});
}

/// Random rational point of the Calabi-Yau subtorus, numerators in [-40, 40], denominators in [1, 12].
inline std::array<Rational, 3> random_cy_point(std::mt19937_64& rng)
{
  std::uniform_int_distribution<int> num(-40, 40);
  std::uniform_int_distribution<int> den(1, 12);
  for (;;) {
    Rational s1(num(rng), den(rng));
    Rational s2(num(rng), den(rng));
    if (s1 != 0 && s2 != 0 && s1 + s2 != 0 && s1 != s2)
      return {s1, s2, -s1 - s2};
  }
}

using FixedPointVisitor = std::function<void(const FixedPoint&, long chi, const Degree&)>;

namespace detail {

class VertexPartitionCache {
public:
  struct Entry {
    long vmin = 0;
    long vmax = 0;
    std::vector<Partition3D> parts;
    std::vector<long> volumes;
  };

  const Entry& get(const Partition3D::Legs& legs, long vmax)
  {
    auto it = cache_.find(legs);
    if (it != cache_.end() && it->second.vmax >= vmax)
      return it->second;
    Entry e;
    e.vmin = renorm_volume(minimal3d(legs));
    e.vmax = std::max(vmax, e.vmin);
    e.parts = enumerate3d(legs, e.vmax);
    for (const auto& p : e.parts)
      e.volumes.push_back(e.vmin + static_cast<long>(p.extra().size()));
    return cache_[legs] = std::move(e);
  }

  long minimal_volume(const Partition3D::Legs& legs)
  {
    auto it = cache_.find(legs);
    if (it != cache_.end())
      return it->second.vmin;
    return get(legs, renorm_volume(minimal3d(legs))).vmin;
  }

private:
  std::map<Partition3D::Legs, Entry> cache_;
};

} // namespace detail

/// Visits every fixed point with degree <= beta_max (componentwise) and chi <= n_max.
/// Order: edge assignments by degree, then edge-wise partition order; within an
/// assignment, vertex partitions by renormalized volume and then extra boxes.
inline void for_each_fixed_point(const ToricCY3& g, const Degree& beta_max, long n_max, const FixedPointVisitor& visit)
{
  if (beta_max.size() != g.classes.size())
    throw std::invalid_argument("degree bound has " + std::to_string(beta_max.size()) + " entries, geometry has " +
                                std::to_string(g.classes.size()) + " curve classes");
  for (int b : beta_max)
    if (b < 0)
      throw std::invalid_argument("degree bound must be nonnegative");

  // Edge candidates: partitions of size 0..beta_max[class].
  std::vector<std::vector<Partition2D>> candidates(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    for (int n = 0; n <= beta_max[g.edges[e].curve_class]; ++n)
      for (auto& p : enumerate2d(n))
        candidates[e].push_back(std::move(p));

  std::vector<std::pair<Degree, std::vector<Partition2D>>> assignments;
  {
    std::vector<Partition2D> cur(g.edges.size());
    Degree used(g.classes.size(), 0);
    auto rec = [&](auto&& self, std::size_t e) -> void {
      if (e == g.edges.size()) {
        assignments.emplace_back(used, cur);
        return;
      }
      const std::size_t c = g.edges[e].curve_class;
      for (const auto& p : candidates[e]) {
        if (used[c] + p.size() > beta_max[c])
          break;
        used[c] += p.size();
        cur[e] = p;
        self(self, e + 1);
        used[c] -= p.size();
      }
    };
    rec(rec, 0);
  }
  std::stable_sort(assignments.begin(), assignments.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  detail::VertexPartitionCache cache;
  const std::size_t nv = g.vertices.size();
  for (const auto& [deg, edge_parts] : assignments) {
    std::vector<Partition3D::Legs> legs(nv);
    long base = 0;
    for (std::size_t v = 0; v < nv; ++v) {
      legs[v] = forced_legs(g, v, edge_parts);
      base += cache.minimal_volume(legs[v]);
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      base += edge_euler(g.edges[e].frame, edge_parts[e]);
    if (base > n_max)
      continue;
    const long budget = n_max - base;
    // Fill the cache first; later lookups then return stable entries.
    for (std::size_t v = 0; v < nv; ++v)
      cache.get(legs[v], cache.minimal_volume(legs[v]) + budget);
    std::vector<const detail::VertexPartitionCache::Entry*> lists(nv);
    for (std::size_t v = 0; v < nv; ++v)
      lists[v] = &cache.get(legs[v], cache.minimal_volume(legs[v]) + budget);

    FixedPoint fp;
    fp.edge_partitions = edge_parts;
    fp.vertex_partitions.resize(nv);
    auto rec = [&](auto&& self, std::size_t v, long remaining, long chi_acc) -> void {
      if (v == nv) {
        visit(fp, chi_acc, deg);
        return;
      }
      const auto& entry = *lists[v];
      for (std::size_t k = 0; k < entry.parts.size(); ++k) {
        const long excess = entry.volumes[k] - entry.vmin;
        if (excess > remaining)
          break;
        fp.vertex_partitions[v] = entry.parts[k];
        self(self, v + 1, remaining - excess, chi_acc + excess);
      }
    };
    rec(rec, 0, budget, base);
  }
}

inline std::vector<FixedPoint> enumerate_fixed_points(const ToricCY3& g, const Degree& beta_max, long n_max)
{
  std::vector<FixedPoint> out;
  for_each_fixed_point(g, beta_max, n_max, [&](const FixedPoint& fp, long, const Degree&) { out.push_back(fp); });
  return out;
}

/// Truncated series sum_{n, beta} c_{n, beta} q^n v^beta, grouped by beta.
/// exact_through[beta] is the largest n for which the coefficients are known.
struct QVSeries {
  std::size_t num_classes = 0;
  long n_max = 0;
  Degree beta_max;
  std::map<Degree, std::map<long, Rational>> terms;
  std::map<Degree, long> exact_through;

  Rational coefficient(long n, const Degree& beta) const
  {
    auto it = terms.find(beta);
    if (it == terms.end())
      return 0;
    auto jt = it->second.find(n);
    return jt == it->second.end() ? Rational(0) : jt->second;
  }

  void add(long n, const Degree& beta, const Rational& c)
  {
    auto& row = terms[beta];
    auto [it, inserted] = row.try_emplace(n, c);
    if (!inserted)
      it->second += c;
    if (it->second == 0)
      row.erase(it);
  }

  /// Coefficients of q^lo .. q^hi at beta.
  std::vector<Rational> slice(const Degree& beta, long lo, long hi) const
  {
    std::vector<Rational> out;
    for (long n = lo; n <= hi; ++n)
      out.push_back(coefficient(n, beta));
    return out;
  }

  /// Lowest n with a nonzero coefficient at beta, if any.
  std::optional<long> lowest(const Degree& beta) const
  {
    auto it = terms.find(beta);
    if (it == terms.end() || it->second.empty())
      return std::nullopt;
    return it->second.begin()->first;
  }
};

/// All multidegrees 0 <= beta <= beta_max, lexicographic.
inline std::vector<Degree> degrees_up_to(const Degree& beta_max)
{
  std::vector<Degree> out;
  Degree cur(beta_max.size(), 0);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == cur.size()) {
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= beta_max[i]; ++k) {
      cur[i] = k;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

struct ZdtOptions {
  /// Weigh fixed points by the evaluated localization ratio instead of the sign formula.
  bool use_localization = false;
  std::uint64_t seed = 0;
};

/// sum over fixed points of sign(fp) q^chi v^beta, truncated at chi <= n_max and beta <= beta_max.
inline QVSeries z_dt(const ToricCY3& g, const Degree& beta_max, long n_max, const ZdtOptions& opts = {})
{
  for (const auto& e : g.edges)
    if (!e.frame.is_cy())
      throw GeometryError("z_dt: edge '" + e.id + "' violates the Calabi-Yau condition");
  QVSeries z;
  z.num_classes = g.classes.size();
  z.n_max = n_max;
  z.beta_max = beta_max;
  for (const auto& d : degrees_up_to(beta_max)) {
    z.terms[d];
    z.exact_through[d] = n_max;
  }
  std::mt19937_64 rng(opts.seed);
  std::array<Rational, 3> s{};
  if (opts.use_localization)
    s = random_cy_point(rng);
  for_each_fixed_point(g, beta_max, n_max, [&](const FixedPoint& fp, long chi_value, const Degree& d) {
    if (!opts.use_localization) {
      z.add(chi_value, d, detail::sign_from(chi_value, fp, g));
      return;
    }
    for (;;) {
      try {
        z.add(chi_value, d, weight_ratio(fp, g, s));
        return;
      } catch (const ZeroWeightError&) {
        s = random_cy_point(rng);
      }
    }
  });
  return z;
}

class InsufficientDepth : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Truncated power-series inverse of c_0 + c_1 q + ..., through q^n.
inline std::vector<Rational> series_inverse(const std::vector<Rational>& c, long n)
{
  if (c.empty() || c[0] == 0)
    throw std::domain_error("series_inverse: zero constant term");
  std::vector<Rational> inv(static_cast<std::size_t>(n + 1), Rational(0));
  inv[0] = Rational(1) / c[0];
  for (long k = 1; k <= n; ++k) {
    Rational acc = 0;
    for (long j = 1; j <= k && j < static_cast<long>(c.size()); ++j)
      acc += c[static_cast<std::size_t>(j)] * inv[static_cast<std::size_t>(k - j)];
    inv[static_cast<std::size_t>(k)] = -acc * inv[0];
  }
  return inv;
}

/// Z divided by its degree-zero part. If `order` is given, every degree must be
/// exact through q^order, otherwise InsufficientDepth is thrown.
inline QVSeries reduced(const QVSeries& z, std::optional<long> order = std::nullopt)
{
  const Degree zero(z.num_classes, 0);
  auto z0_it = z.terms.find(zero);
  if (z0_it == z.terms.end() || z.coefficient(0, zero) == 0)
    throw std::domain_error("reduced: degree-zero part has no constant term");
  for (const auto& [n, c] : z0_it->second)
    if (n < 0)
      throw std::domain_error("reduced: degree-zero part has negative powers of q");
  const long n0_max = z.exact_through.at(zero);
  const auto inv = series_inverse(z.slice(zero, 0, n0_max), n0_max);

  QVSeries out;
  out.num_classes = z.num_classes;
  out.n_max = z.n_max;
  out.beta_max = z.beta_max;
  for (const auto& [beta, row] : z.terms) {
    out.terms[beta];
    const long through_beta = z.exact_through.at(beta);
    if (beta == zero) {
      out.add(0, beta, 1);
      out.exact_through[beta] = n0_max;
      continue;
    }
    if (row.empty()) {
      out.exact_through[beta] = through_beta;
      continue;
    }
    const long lo = row.begin()->first;
    const long through = std::min(through_beta, lo + n0_max);
    for (long n = lo; n <= through; ++n) {
      Rational acc = 0;
      for (const auto& [j, c] : row) {
        if (j > n)
          break;
        acc += c * inv[static_cast<std::size_t>(n - j)];
      }
      if (acc != 0)
        out.add(n, beta, acc);
    }
    out.exact_through[beta] = through;
  }
  if (order) {
    for (const auto& [beta, through] : out.exact_through)
      if (through < *order) {
        std::ostringstream os;
        os << "reduced: degree (";
        for (std::size_t i = 0; i < beta.size(); ++i)
          os << (i ? "," : "") << beta[i];
        os << ") is exact only through q^" << through << ", requested q^" << *order;
        throw InsufficientDepth(os.str());
      }
  }
  return out;
}

} // namespace toricdt

#endif // TORICDT_DTSUM_HPP

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "toricdt/toricdt.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace toricdt;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string join(const std::vector<Rational>& v)
{
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? " " : "") << v[i];
  return os.str();
}

Outcome degree0_macmahon()
{
  const auto t0 = Clock::now();
  const auto c3 = z_dt(builtin("c3"), {}, 8).slice({}, 0, 8);
  const auto con = z_dt(builtin("conifold"), {0}, 6).slice({0}, 0, 6);
  const bool ok = c3 == macmahon_coeffs(8, true, 1) && con == macmahon_coeffs(6, true, 2);
  const double t = seconds_since(t0);
  return {ok && t < 60, "c3: " + join(c3) + "; conifold: " + join(con) + "; " + std::to_string(t) + " s"};
}

Outcome sign_theorem()
{
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  long checked = 0;
  long bad = 0;
  auto run = [&](const ToricCY3& g, const Degree& beta, long n) {
    for_each_fixed_point(g, beta, n, [&](const FixedPoint& fp, long, const Degree&) {
      const int expected = sign(fp, g);
      for (int i = 0; i < 3; ++i)
        for (;;) {
          try {
            if (weight_ratio(fp, g, random_cy_point(rng)) != expected)
              ++bad;
            ++checked;
            break;
          } catch (const ZeroWeightError&) {
          }
        }
    });
  };
  run(builtin("conifold"), {2}, 5);
  run(builtin("local_p2"), {1}, 4);
  const double t = seconds_since(t0);
  return {bad == 0 && checked > 0 && t < 300,
          std::to_string(checked) + " evaluations, " + std::to_string(bad) + " mismatches, " + std::to_string(t) + " s"};
}

std::optional<RationalFn> conifold_degree1(std::string& why)
{
  const auto red = reduced(z_dt(builtin("conifold"), {1}, 9), 9);
  const auto c = red.slice({1}, 1, 9);
  try {
    return pade_reconstruct(c, 1, {1, 2}, 2);
  } catch (const std::exception& e) {
    why = e.what();
    return std::nullopt;
  }
}

Outcome conifold_rationality()
{
  std::string why;
  const auto r = conifold_degree1(why);
  if (!r)
    return {false, why};
  const RationalFn expect{UPoly{Rational(1)}, UPoly{Rational(1), Rational(2), Rational(1)}, 1};
  // 9 coefficients against 1 + 2 + 1 unknowns leaves 5 for verification
  return {*r == expect && symmetry_check(*r), r->str() + ", symmetric=" + (symmetry_check(*r) ? "yes" : "no")};
}

Outcome conifold_gw()
{
  std::string why;
  const auto r = conifold_degree1(why);
  if (!r)
    return {false, why};
  const auto u = gw_expansion(*r, 6);
  const auto oracle = inverse_sine_square_series(6);
  bool ok = u.lowest == -2;
  for (int p = -2; p <= 6; ++p)
    ok = ok && u.at(p) == oracle[static_cast<std::size_t>(p + 2)];
  ok = ok && u.at(-2) == 1 && u.at(0) == Rational(1, 12) && u.at(2) == Rational(1, 240);
  std::ostringstream os;
  os << "u^-2.." << "u^6: ";
  for (int p = -2; p <= 6; p += 2)
    os << u.at(p) << (p < 6 ? ", " : "");
  return {ok, os.str()};
}

Outcome local_p2_rationality()
{
  // Degree-1 coefficients of Z at n = 1..9, produced once by the brute-force
  // enumeration in the unit tests and frozen here.
  const std::vector<Rational> frozen{3, -15, 63, -222, 714, -2115, 5928, -15807, 40536};
  const auto z = z_dt(builtin("local_p2"), {1}, 9);
  if (z.slice({1}, 1, 9) != frozen)
    return {false, "degree-1 series differs from frozen values: " + join(z.slice({1}, 1, 9))};
  const auto red = reduced(z, 9);
  const auto c = red.slice({1}, 1, 9);
  try {
    const auto r = pade_reconstruct(c, 1, {1, 2}, 2);
    return {symmetry_check(r), r.str()};
  } catch (const std::exception& e) {
    return {false, e.what()};
  }
}

Outcome character_properties()
{
  long vertices = 0;
  long edges = 0;
  long failures = 0;
  std::string first;
  auto fail = [&](const std::string& what) {
    if (failures++ == 0)
      first = what;
  };
  auto check = [&](const Poly2& r, const std::string& what) {
    if (bar(r) != -r)
      fail("not anti-invariant: " + what);
    if (r.coefficient({0, 0}) != 0)
      fail("constant term: " + what);
  };
  std::vector<Partition2D> small;
  for (int n = 0; n <= 3; ++n)
    for (const auto& l : enumerate2d(n))
      small.push_back(l);
  for (const auto& a : small)
    for (const auto& b : small)
      for (const auto& c : small) {
        const Partition3D::Legs legs{a, b, c};
        const long vmin = renorm_volume(minimal3d(legs));
        for (const auto& pi : enumerate3d(legs, vmin + 4)) {
          ++vertices;
          try {
            check(restrict_cy(vertex_V(pi)), "vertex with legs " + a.str() + b.str() + c.str());
          } catch (const DivisibilityError& e) {
            fail(e.what());
          }
        }
      }
  for (const EdgeFrame f : {EdgeFrame{-1, -1}, EdgeFrame{0, -2}, EdgeFrame{1, -3}})
    for (int n = 1; n <= 4; ++n)
      for (const auto& l : enumerate2d(n)) {
        ++edges;
        try {
          check(restrict_cy(edge_E(l, f)), "edge " + l.str());
        } catch (const DivisibilityError& e) {
          fail(e.what());
        }
      }
  return {failures == 0, std::to_string(vertices) + " vertex and " + std::to_string(edges) + " edge characters, " +
                             std::to_string(failures) + " failures" + (first.empty() ? "" : " (" + first + ")")};
}

Outcome pq_identity()
{
  constexpr int window = 8;
  std::vector<Box> all;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int c = 0; c <= 4; ++c)
        all.push_back({a, b, c});
  long ideals = 0;
  long bad = 0;
  auto test = [&](const std::vector<Box>& gens) {
    ++ideals;
    const Poly3 num = Poly3::constant(1) + taylor_poincare(gens);
    for (int a = 0; a <= window; ++a)
      for (int b = 0; b <= window; ++b)
        for (int c = 0; c <= window; ++c) {
          Integer series = 0;
          for (const auto& [e, coeff] : num.terms())
            if (e[0] <= a && e[1] <= b && e[2] <= c)
              series += coeff;
          bool in_ideal = false;
          for (const Box& g : gens)
            in_ideal = in_ideal || (a >= g[0] && b >= g[1] && c >= g[2]);
          if (series != (in_ideal ? 0 : 1)) {
            ++bad;
            return;
          }
        }
  };
  for (std::size_t i = 0; i < all.size(); ++i) {
    test({all[i]});
    for (std::size_t j = i + 1; j < all.size(); ++j)
      test({all[i], all[j]});
  }
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (int k = 3; k <= 6; ++k)
    for (int trial = 0; trial < 1500; ++trial) {
      std::vector<Box> gens;
      for (int i = 0; i < k; ++i)
        gens.push_back(all[pick(rng)]);
      test(gens);
    }
  return {bad == 0, std::to_string(ideals) + " ideals (all with <= 2 generators, 6000 sampled with 3..6), " +
                        std::to_string(bad) + " mismatches"};
}

Outcome hodge()
{
  bool rec = true;
  std::vector<Rational> b{Rational(1), Rational(-1, 2)};
  for (int k = 2; k <= 20; ++k)
    b.push_back(k % 2 ? Rational(0) : bernoulli(k));
  for (int n = 1; n <= 20; ++n) {
    Rational acc = 0;
    for (int j = 0; j <= n; ++j)
      acc += Rational(binomial(static_cast<unsigned>(n + 1), static_cast<unsigned>(j))) * b[static_cast<std::size_t>(j)];
    rec = rec && acc == 0;
  }
  const auto l2 = lambda_cube(2);
  const auto l3 = lambda_cube(3);
  std::ostringstream os;
  os << "lambda_cube(2)=" << l2 << ", lambda_cube(3)=" << l3 << ", recurrence through B20: " << (rec ? "ok" : "broken");
  return {rec && l2 == Rational(1, 2880) && l3 == Rational(1, 725760), os.str()};
}

Outcome gwmm()
{
  const auto t0 = Clock::now();
  const auto rep = asymptotic_tail_check(3, 2, 1e-6);
  const double t = seconds_since(t0);
  std::ostringstream os;
  for (const auto& c : rep.coefficients)
    os << "g=" << c.genus << ": " << c.extracted << " vs " << c.expected << " (rel " << c.error << "); ";
  os << "residual " << rep.max_residual << ", " << t << " s";
  return {rep.pass && t < 10, os.str()};
}

Outcome determinism()
{
  RunConfig cfg;
  cfg.geometry = "local_p2";
  cfg.n_max = 6;
  cfg.reduced = true;
  cfg.pade = PadeBounds{1, 2};
  cfg.seed = 17;
  std::string outs[2];
  int status[2];
  for (int i = 0; i < 2; ++i) {
    std::ostringstream out, err;
    status[i] = cmd_series(cfg, out, err);
    outs[i] = out.str();
  }
  return {status[0] == 0 && status[1] == 0 && outs[0] == outs[1] && !outs[0].empty(),
          std::to_string(outs[0].size()) + " bytes, identical=" + (outs[0] == outs[1] ? "yes" : "no")};
}

} // namespace

int main()
{
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"degree-0 series equals MacMahon", degree0_macmahon},
      {"sign formula equals localization weight", sign_theorem},
      {"conifold degree 1 reconstructs to q/(1+q)^2", conifold_rationality},
      {"conifold degree 1 u-expansion equals (2 sin(u/2))^-2", conifold_gw},
      {"local P2 degree 1 frozen and rational", local_p2_rationality},
      {"character calculus properties", character_properties},
      {"Taylor resolution equals quotient trace", pq_identity},
      {"Hodge integrals and Bernoulli recurrence", hodge},
      {"MacMahon asymptotic tail", gwmm},
      {"series output is deterministic", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}

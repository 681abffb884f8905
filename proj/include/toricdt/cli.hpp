#ifndef TORICDT_CLI_HPP
#define TORICDT_CLI_HPP

// Front-end commands behind tools/dtcalc: series tables and conjecture checks.
// Both write to caller-supplied streams and return the process exit status.

#include "toricdt/dtsum.hpp"
#include "toricdt/geometry.hpp"
#include "toricdt/gwref.hpp"
#include "toricdt/rational_fn.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace toricdt {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitBadInput = 2;

struct RunConfig {
  std::string geometry = "c3";
  long n_max = 6;
  /// One entry per curve class, or a single entry applied to every class.
  std::vector<int> beta_max{1};
  bool reduced = false;
  std::optional<PadeBounds> pade;
  std::vector<std::string> checks;
  std::string format = "json";
  std::uint64_t seed = 0;
};

inline const std::vector<std::string>& check_names()
{
  static const std::vector<std::string> names{"degree0", "sign-oracle", "rationality", "gwdt", "hodge", "gwmm"};
  return names;
}

class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline Degree expand_beta(const RunConfig& cfg, const ToricCY3& g)
{
  for (int b : cfg.beta_max)
    if (b < 0)
      throw ConfigError("--beta-max entries must be >= 0");
  if (g.classes.empty())
    return {};
  if (cfg.beta_max.size() == 1)
    return Degree(g.classes.size(), cfg.beta_max.front());
  if (cfg.beta_max.size() != g.classes.size())
    throw ConfigError("--beta-max has " + std::to_string(cfg.beta_max.size()) + " entries but geometry '" + g.name +
                      "' has " + std::to_string(g.classes.size()) + " curve classes");
  return cfg.beta_max;
}

inline void check_config(const RunConfig& cfg)
{
  if (cfg.n_max < 0)
    throw ConfigError("--n-max must be >= 0");
  if (cfg.format != "json" && cfg.format != "csv")
    throw ConfigError("--format must be json or csv");
  if (cfg.pade && (cfg.pade->num_degree < 0 || cfg.pade->den_degree < 0))
    throw ConfigError("--pade bounds must be >= 0");
  for (const auto& c : cfg.checks)
    if (std::find(check_names().begin(), check_names().end(), c) == check_names().end())
      throw ConfigError("unknown check '" + c + "'");
}

inline int total(const Degree& d) { return std::accumulate(d.begin(), d.end(), 0); }

inline std::string degree_str(const Degree& d)
{
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i)
    s += (i ? ";" : "") + std::to_string(d[i]);
  return s;
}

inline nlohmann::ordered_json fractions(const std::vector<Rational>& v)
{
  auto out = nlohmann::ordered_json::array();
  for (const auto& x : v)
    out.push_back(to_fraction_string(x));
  return out;
}

inline nlohmann::ordered_json poly_json(const UPoly& p) { return fractions(p.coeffs()); }

inline nlohmann::ordered_json rational_fn_json(const RationalFn& r)
{
  return {{"shift", r.shift},
          {"numerator", poly_json(r.numerator)},
          {"denominator", poly_json(r.denominator)},
          {"display", r.str()}};
}

/// Default Pade bounds for a class of total degree d: (d(d+1) - 1, d(d+1)).
inline PadeBounds default_bounds(const Degree& beta)
{
  const int d = total(beta);
  return {d * (d + 1) - 1, d * (d + 1)};
}

struct Reconstruction {
  bool ok = false;
  std::string failure;
  long start = 0;
  std::vector<Rational> coefficients;
  PadeBounds bounds;
  std::optional<RationalFn> fn;
};

/// Pade fit of the reduced series at beta, from its lowest nonzero power through
/// the last exact one.
inline Reconstruction reconstruct(const QVSeries& red, const Degree& beta, const PadeBounds& bounds)
{
  Reconstruction rc;
  rc.bounds = bounds;
  const long through = red.exact_through.at(beta);
  rc.start = red.lowest(beta).value_or(0);
  if (through >= rc.start)
    rc.coefficients = red.slice(beta, rc.start, through);
  try {
    rc.fn = pade_reconstruct(rc.coefficients, static_cast<int>(rc.start), bounds);
    rc.ok = true;
  } catch (const InsufficientCoefficients& e) {
    rc.failure = std::string("insufficient coefficients: ") + e.what();
  } catch (const NoRationalFit& e) {
    rc.failure = e.what();
  }
  return rc;
}

inline nlohmann::ordered_json reconstruction_json(const Reconstruction& rc)
{
  nlohmann::ordered_json j;
  j["bounds"] = {rc.bounds.num_degree, rc.bounds.den_degree};
  j["start"] = rc.start;
  j["coefficients"] = fractions(rc.coefficients);
  if (rc.fn)
    j["function"] = rational_fn_json(*rc.fn);
  else
    j["failure"] = rc.failure;
  return j;
}

struct CheckResult {
  bool pass = false;
  nlohmann::ordered_json details;
};

inline CheckResult check_degree0(const ToricCY3& g, const RunConfig& cfg)
{
  CheckResult r;
  const Degree zero(g.classes.size(), 0);
  const auto z = z_dt(g, zero, cfg.n_max);
  const auto dt = z.slice(zero, 0, cfg.n_max);
  const long euler = static_cast<long>(g.vertices.size());
  const auto mm = macmahon_coeffs(static_cast<int>(cfg.n_max), true, euler);
  r.pass = dt == mm;
  r.details = {{"euler_characteristic", euler},
               {"n_max", cfg.n_max},
               {"dt_coefficients", fractions(dt)},
               {"macmahon_coefficients", fractions(mm)}};
  return r;
}

inline CheckResult check_sign_oracle(const ToricCY3& g, const Degree& beta_max, const RunConfig& cfg)
{
  constexpr int points_per_fixed_point = 3;
  CheckResult r;
  std::mt19937_64 rng(cfg.seed);
  long fixed_points = 0;
  long evaluations = 0;
  long resampled = 0;
  long mismatch_count = 0;
  auto mismatches = nlohmann::ordered_json::array();
  for_each_fixed_point(g, beta_max, cfg.n_max, [&](const FixedPoint& fp, long chi_value, const Degree& d) {
    ++fixed_points;
    const int expected = sign(fp, g);
    for (int i = 0; i < points_per_fixed_point; ++i) {
      for (;;) {
        const auto s = random_cy_point(rng);
        try {
          const Rational got = weight_ratio(fp, g, s);
          ++evaluations;
          if (got != expected)
            ++mismatch_count;
          if (got != expected && mismatches.size() < 20)
            mismatches.push_back({{"n", chi_value},
                                  {"beta", d},
                                  {"expected", expected},
                                  {"got", to_fraction_string(got)},
                                  {"point", {to_fraction_string(s[0]), to_fraction_string(s[1]), to_fraction_string(s[2])}}});
          break;
        } catch (const ZeroWeightError&) {
          ++resampled;
        }
      }
    }
  });
  r.pass = mismatch_count == 0;
  r.details = {{"fixed_points", fixed_points},
               {"evaluations", evaluations},
               {"resampled_points", resampled},
               {"mismatch_count", mismatch_count},
               {"first_mismatches", mismatches}};
  return r;
}

inline std::vector<Degree> nonzero_degrees(const Degree& beta_max)
{
  std::vector<Degree> out;
  for (const auto& d : degrees_up_to(beta_max))
    if (total(d) > 0)
      out.push_back(d);
  return out;
}

inline CheckResult check_rationality(const QVSeries& red, const Degree& beta_max, const RunConfig& cfg)
{
  CheckResult r;
  r.pass = true;
  auto per = nlohmann::ordered_json::array();
  for (const auto& beta : nonzero_degrees(beta_max)) {
    const auto rc = reconstruct(red, beta, cfg.pade.value_or(default_bounds(beta)));
    nlohmann::ordered_json j{{"beta", beta}};
    j.update(reconstruction_json(rc));
    bool ok = rc.ok;
    if (rc.fn) {
      const bool sym = symmetry_check(*rc.fn);
      j["symmetric"] = sym;
      ok = ok && sym;
    }
    j["pass"] = ok;
    r.pass = r.pass && ok;
    per.push_back(std::move(j));
  }
  r.details = {{"degrees", per}};
  return r;
}

/// Classes of total degree 1 only: there the reduced series carries no products
/// of lower-degree terms and must equal n (2 sin(u/2))^-2 for a single integer n.
inline CheckResult check_gwdt(const QVSeries& red, const Degree& beta_max, const RunConfig& cfg)
{
  constexpr int order = 6;
  CheckResult r;
  r.pass = true;
  auto per = nlohmann::ordered_json::array();
  const auto oracle = inverse_sine_square_series(order);
  for (const auto& beta : nonzero_degrees(beta_max)) {
    if (total(beta) != 1)
      continue;
    const auto rc = reconstruct(red, beta, cfg.pade.value_or(default_bounds(beta)));
    nlohmann::ordered_json j{{"beta", beta}};
    j.update(reconstruction_json(rc));
    j["oracle"] = fractions(oracle);
    bool ok = false;
    if (rc.fn) {
      try {
        const auto u = gw_expansion(*rc.fn, order);
        std::vector<Rational> got;
        for (int p = -2; p <= order; ++p)
          got.push_back(u.at(p));
        const Rational n0 = got.front();
        j["u_expansion"] = fractions(got);
        j["n0"] = to_fraction_string(n0);
        ok = u.lowest >= -2 && denominator_of(n0) == 1;
        for (std::size_t k = 0; k < got.size(); ++k)
          ok = ok && got[k] == n0 * oracle[k];
      } catch (const std::exception& e) {
        j["failure"] = e.what();
      }
    }
    j["pass"] = ok;
    r.pass = r.pass && ok;
    per.push_back(std::move(j));
  }
  r.details = {{"order", order}, {"degrees", per}};
  return r;
}

inline CheckResult check_hodge()
{
  CheckResult r;
  bool recurrence = true;
  const auto b = bernoulli_table(20);
  for (int m = 1; m <= 19; ++m) {
    Rational acc = 0;
    for (int j = 0; j <= m; ++j)
      acc += Rational(binomial(static_cast<unsigned>(m + 1), static_cast<unsigned>(j))) * b[static_cast<std::size_t>(j)];
    recurrence = recurrence && acc == 0;
  }
  auto values = nlohmann::ordered_json::array();
  for (int g = 2; g <= 6; ++g)
    values.push_back({{"g", g}, {"lambda_cube", to_fraction_string(lambda_cube(g))}});
  const bool known = lambda_cube(2) == Rational(1, 2880) && lambda_cube(3) == Rational(1, 725760);
  r.pass = recurrence && known;
  r.details = {{"bernoulli_recurrence_through_B20", recurrence}, {"known_values", known}, {"lambda_cube", values}};
  return r;
}

inline CheckResult check_gwmm(const ToricCY3& g)
{
  constexpr int g_max = 3;
  constexpr double tolerance = 1e-6;
  CheckResult r;
  const long c = static_cast<long>(g.vertices.size());
  const auto rep = asymptotic_tail_check(g_max, c, tolerance);
  auto coeffs = nlohmann::ordered_json::array();
  for (const auto& tc : rep.coefficients)
    coeffs.push_back({{"g", tc.genus},
                      {"expected", to_fraction_string(tc.expected)},
                      {"extracted", tc.extracted},
                      {tc.relative ? "relative_error" : "absolute_error", tc.error},
                      {"pass", tc.pass}});
  r.pass = rep.pass;
  r.details = {{"c", c},
               {"tolerance", tolerance},
               {"grid_points", rep.grid_points},
               {"eps_range", {rep.eps_min, rep.eps_max}},
               {"tail_terms", rep.tail_terms},
               {"max_residual", rep.max_residual},
               {"fit_eps_minus2", rep.singular_eps_m2},
               {"fit_log", rep.singular_log},
               {"fit_const", rep.singular_const},
               {"coefficients", coeffs}};
  if (!rep.message.empty())
    r.details["message"] = rep.message;
  return r;
}

} // namespace detail

/// Writes the (reduced) series as JSON or CSV. Errors go to `err`.
inline int cmd_series(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
  try {
    detail::check_config(cfg);
    const ToricCY3 g = resolve_geometry(cfg.geometry);
    const Degree beta_max = detail::expand_beta(cfg, g);
    QVSeries z = z_dt(g, beta_max, cfg.n_max);
    if (cfg.reduced)
      z = reduced(z);

    if (cfg.format == "csv") {
      out << "# geometry=" << g.name << " n_max=" << cfg.n_max << " beta_max=" << detail::degree_str(beta_max)
          << " reduced=" << (cfg.reduced ? 1 : 0) << " seed=" << cfg.seed << "\n";
      out << "n";
      for (const auto& c : g.classes)
        out << "," << c;
      out << ",coefficient\n";
      for (const auto& [beta, row] : z.terms)
        for (const auto& [n, c] : row) {
          if (n > z.exact_through.at(beta))
            continue;
          out << n;
          for (int b : beta)
            out << "," << b;
          out << "," << to_fraction_string(c) << "\n";
        }
      return kExitOk;
    }

    nlohmann::ordered_json j;
    j["geometry"] = g.name;
    j["classes"] = g.classes;
    j["n_max"] = cfg.n_max;
    j["beta_max"] = beta_max;
    j["reduced"] = cfg.reduced;
    j["seed"] = cfg.seed;
    auto degrees = nlohmann::ordered_json::array();
    for (const auto& [beta, row] : z.terms) {
      nlohmann::ordered_json d;
      d["beta"] = beta;
      d["exact_through"] = z.exact_through.at(beta);
      auto terms = nlohmann::ordered_json::array();
      for (const auto& [n, c] : row)
        if (n <= z.exact_through.at(beta))
          terms.push_back({{"n", n}, {"coefficient", to_fraction_string(c)}});
      d["terms"] = terms;
      if (cfg.pade && cfg.reduced && detail::total(beta) > 0)
        d["reconstruction"] = detail::reconstruction_json(detail::reconstruct(z, beta, *cfg.pade));
      degrees.push_back(std::move(d));
    }
    j["degrees"] = degrees;
    out << j.dump(2) << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
}

/// Runs the selected checks (all when none are selected) and writes a JSON
/// report. Returns kExitOk iff every selected check passed.
inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
  ToricCY3 g;
  Degree beta_max;
  std::vector<std::string> checks = cfg.checks.empty() ? check_names() : cfg.checks;
  try {
    detail::check_config(cfg);
    g = resolve_geometry(cfg.geometry);
    beta_max = detail::expand_beta(cfg, g);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }

  nlohmann::ordered_json report;
  report["geometry"] = g.name;
  report["n_max"] = cfg.n_max;
  report["beta_max"] = beta_max;
  report["seed"] = cfg.seed;
  if (cfg.pade)
    report["pade"] = {cfg.pade->num_degree, cfg.pade->den_degree};

  std::optional<QVSeries> red;
  auto reduced_series = [&]() -> const QVSeries& {
    if (!red)
      red = reduced(z_dt(g, beta_max, cfg.n_max));
    return *red;
  };

  bool all = true;
  auto results = nlohmann::ordered_json::array();
  for (const auto& name : checks) {
    detail::CheckResult r;
    try {
      if (name == "degree0")
        r = detail::check_degree0(g, cfg);
      else if (name == "sign-oracle")
        r = detail::check_sign_oracle(g, beta_max, cfg);
      else if (name == "rationality")
        r = detail::check_rationality(reduced_series(), beta_max, cfg);
      else if (name == "gwdt")
        r = detail::check_gwdt(reduced_series(), beta_max, cfg);
      else if (name == "hodge")
        r = detail::check_hodge();
      else
        r = detail::check_gwmm(g);
    } catch (const std::exception& e) {
      r.pass = false;
      r.details = {{"error", e.what()}};
    }
    all = all && r.pass;
    err << (r.pass ? "PASS " : "FAIL ") << name << "\n";
    results.push_back({{"check", name}, {"pass", r.pass}, {"details", r.details}});
  }
  report["checks"] = results;
  report["pass"] = all;
  out << report.dump(2) << "\n";
  return all ? kExitOk : kExitCheckFailed;
}

} // namespace toricdt

#endif // TORICDT_CLI_HPP

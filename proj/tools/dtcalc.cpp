// dtcalc: DT partition functions of toric CY3 geometries.
//
//   dtcalc series --geometry conifold --beta-max 1 --n-max 7 --reduced
//   dtcalc verify --geometry conifold --check rationality,gwdt --n-max 9

#include "toricdt/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_common(CLI::App* app, toricdt::RunConfig& cfg, std::string& pade)
{
  app->add_option("--geometry", cfg.geometry, "builtin name (c3, conifold, local_p2, local_p1p1) or geometry file");
  app->add_option("--n-max", cfg.n_max, "largest power of q");
  app->add_option("--beta-max", cfg.beta_max, "largest degree per curve class; one value applies to all")
      ->delimiter(',');
  app->add_flag("--reduced", cfg.reduced, "divide by the degree-zero series");
  app->add_option("--pade", pade, "rational reconstruction bounds p,q");
  app->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--seed", cfg.seed, "seed for random evaluation points");
}

bool parse_pade(const std::string& text, toricdt::RunConfig& cfg)
{
  if (text.empty())
    return true;
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    return false;
  try {
    std::size_t used = 0;
    const int p = std::stoi(text.substr(0, comma), &used);
    if (used != comma)
      return false;
    const std::string rest = text.substr(comma + 1);
    const int q = std::stoi(rest, &used);
    if (used != rest.size())
      return false;
    cfg.pade = toricdt::PadeBounds{p, q};
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Donaldson-Thomas series of toric Calabi-Yau 3-folds by localization"};
  app.require_subcommand(1);

  toricdt::RunConfig series_cfg;
  std::string series_pade;
  auto* series = app.add_subcommand("series", "print the (reduced) partition function");
  add_common(series, series_cfg, series_pade);

  toricdt::RunConfig verify_cfg;
  std::string verify_pade;
  auto* verify = app.add_subcommand("verify", "run conjecture checks and print a report");
  add_common(verify, verify_cfg, verify_pade);
  verify->add_option("--check", verify_cfg.checks, "degree0, sign-oracle, rationality, gwdt, hodge, gwmm")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : toricdt::kExitBadInput;
  }

  if (series->parsed()) {
    if (!parse_pade(series_pade, series_cfg)) {
      std::cerr << "error: --pade expects p,q\n";
      return toricdt::kExitBadInput;
    }
    return toricdt::cmd_series(series_cfg, std::cout, std::cerr);
  }
  if (!parse_pade(verify_pade, verify_cfg)) {
    std::cerr << "error: --pade expects p,q\n";
    return toricdt::kExitBadInput;
  }
  return toricdt::cmd_verify(verify_cfg, std::cout, std::cerr);
}

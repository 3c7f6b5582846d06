#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "rank1/numeric.hpp"

using namespace rank1::cli;

namespace {

void add_common(CLI::App& sub, RunConfig& config) {
  config.source.add_options(sub);
  sub.add_option("--out", config.out, "Output file (default: stdout)");
  sub.add_option("--cap", config.cap, "Position cap (default 10^7, or RANK1_CAP)")
      ->check(CLI::PositiveNumber);
  sub.add_option("--tolerance", config.tolerance, "Correlation tolerance P/Q");
  sub.add_option("--seed", config.seed, "Seed for randomized trials");
}

void add_sets(CLI::App& sub, RunConfig& config) {
  sub.add_option("--set-a", config.set_a, "Set A: E_j, U_j, T^iE_j, j:i1,i2,... or @file");
  sub.add_option("--set-b", config.set_b, "Set B (default: same as A)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact rank-one cutting-and-stacking constructions, correlations and checks"};
  app.require_subcommand(1);
  RunConfig config;

  auto* build = app.add_subcommand("build", "Build a schedule and write its JSON");
  add_common(*build, config);

  auto* verify = app.add_subcommand("verify", "Check properties; exit 0 pass, 1 fail, 2 indeterminate");
  add_common(*verify, config);
  add_sets(*verify, config);
  verify->add_option("--props", config.props, "ornstein,injectivity,sidon,decay,joining,lemma")
      ->delimiter(',')
      ->required();
  verify->add_option("--budget", config.budget, "Sidon: largest exhaustive range");
  verify->add_option("--samples", config.samples, "Decay: random shifts per stage");
  verify->add_option("--decay-C", config.decay_C, "Decay: constant (overrides --decay-fit)");
  verify->add_option("--decay-fit", config.decay_fit,
                     "Decay: how C is chosen when --decay-C is absent; chain uses "
                     "mu(A) sqrt(h_{j+1}/h_j)/r_j, first-stage fits the first stage's correlations")
      ->check(CLI::IsMember({"chain", "first-stage"}));
  verify->add_option("--trials", config.trials, "Lemma: random trials per stage");
  verify->add_option("--j-max", config.j_max, "Last stage checked (default: all)");
  verify->add_option("--l", config.l, "Joining: off-diagonal parameters")->delimiter(',');

  auto* correlate = app.add_subcommand("correlate", "mu(T^m A ∩ B) for one m");
  add_common(*correlate, config);
  add_sets(*correlate, config);
  correlate->add_option("--m", config.m, "Shift");

  auto* sweep = app.add_subcommand("sweep", "Correlation series over a range of m");
  add_common(*sweep, config);
  add_sets(*sweep, config);
  sweep->add_option("--m-from", config.m_from, "First shift");
  sweep->add_option("--m-to", config.m_to, "Last shift");
  sweep->add_option("--stride", config.stride, "Step between shifts");
  sweep->add_option("--format", config.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--bound", config.bound, "Companion column: none, sidon, decay")
      ->check(CLI::IsMember({"none", "sidon", "decay"}));
  sweep->add_option("--decay-C", config.decay_C, "Constant for --bound decay");

  auto* coeffs = app.add_subcommand("coeffs", "Joining coefficients a_j^k for Delta^l");
  add_common(*coeffs, config);
  coeffs->add_option("--j", config.j, "Stage");
  coeffs->add_option("--l", config.l, "Off-diagonal parameters")->delimiter(',');

  for (auto* sub : {verify, correlate, coeffs, build})
    sub->add_option("--format", config.format, "Output format")->check(CLI::IsMember({"json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*build) return run_build(config);
    if (*verify) return run_verify(config);
    if (*correlate) return run_correlate(config);
    if (*sweep) return run_sweep(config);
    return run_coeffs(config);
  } catch (const CLI::ParseError& e) {
    std::cerr << "rank1: " << e.what() << "\n";
    return kUsage;
  } catch (const rank1::CapExceeded& e) {
    std::cerr << "rank1: " << e.what() << "\n";
    return kFail;
  } catch (const rank1::InvalidArgument& e) {
    std::cerr << "rank1: invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "rank1: " << e.what() << "\n";
    return kFail;
  }
}

#include <iostream>

#include <CLI11.hpp>

#include "parteq/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Three-colour partition counts by residue class, with asymptotic and "
      "product cross-checks"};
  app.require_subcommand(1);

  parteq::cli::RunConfig cfg;
  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
  };

  auto* exact = app.add_subcommand(
      "exact", "exact residue-class counts or a full statistic table");
  exact->add_option("--family", cfg.family, "family: E, T or G");
  exact->add_option("--s", cfg.s, "statistic modulus");
  exact->add_option("--N", cfg.N, "emit counts for n = 0..N");
  exact->add_option("--r", cfg.r, "single residue (default: all)");
  exact->add_option("--stat-n", cfg.stat_n,
                    "emit the exact statistic distribution at this n");
  add_output(exact);

  auto* ratio = app.add_subcommand(
      "ratio", "exact counts against the closed-form leading asymptotic");
  ratio->add_option("--family", cfg.family, "family: E, T or G");
  ratio->add_option("--s", cfg.s, "statistic modulus");
  ratio->add_option("--r", cfg.r, "single residue (default: all)");
  ratio->add_option("--n", cfg.n_grid, "sizes n to evaluate")->expected(-1);
  add_output(ratio);

  auto* sector = app.add_subcommand(
      "sector", "infinite product against its small-z asymptotic form");
  sector->add_option("--a", cfg.a, "factor offset a");
  sector->add_option("--c", cfg.c, "factor modulus c");
  sector->add_option("--zeta", cfg.zeta, "root of unity j/b");
  sector->add_option("--z-abs", cfg.z_abs, "|z| grid")->expected(-1);
  sector->add_option("--z-arg", cfg.z_arg, "arg z grid (radians)")
      ->expected(-1);
  sector->add_option("--tol", cfg.tol, "product tail tolerance");
  add_output(sector);

  auto* scan = app.add_subcommand(
      "scan", "minor-arc growth scan of |J| against the major-arc rate");
  scan->add_option("--family", cfg.family, "family: E, T or G");
  scan->add_option("--s", cfg.s, "statistic modulus");
  scan->add_option("--x", cfg.x, "Re z");
  scan->add_option("--M", cfg.M, "major-arc aperture: |y| <= M x");
  scan->add_option("--samples", cfg.samples, "samples per residue root");
  add_output(scan);

  auto* emcheck = app.add_subcommand(
      "emcheck", "asymptotic lattice sum against direct summation");
  emcheck->add_option("--a", cfg.a, "factor offset a");
  emcheck->add_option("--c", cfg.c, "factor modulus c");
  emcheck->add_option("--shift", cfg.a_shift, "lattice shift p/q or decimal");
  emcheck->add_option("--order", cfg.order, "truncation order in z");
  emcheck->add_option("--A", cfg.A, "regularization scale");
  emcheck->add_option("--z-abs", cfg.z_abs, "|z| grid")->expected(-1);
  emcheck->add_option("--z-arg", cfg.z_arg, "arg z grid (radians)")
      ->expected(-1);
  emcheck->add_option("--tol", cfg.tol, "direct-sum tail tolerance");
  add_output(emcheck);

  CLI11_PARSE(app, argc, argv);
  cfg.command = app.get_subcommands().front()->get_name();
  return parteq::cli::run(cfg, std::cerr);
}

// wittcd: command-line driver for the Witt vector / monoid algebra checks.

#include <iostream>

#include <CLI11.hpp>

#include "wittcd/commands.hpp"

int main(int argc, char** argv) {
  using namespace wittcd;
  RunConfig cfg;
  CLI::App app{"Exact checks comparing Witt vectors of perfect rings with completed monoid algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", cfg.seed, "Seed for randomized checks")->capture_default_str();
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  auto* polys = app.add_subcommand("witt-polys", "Generate or revalidate the universal polynomial cache");
  polys->add_option("--prime", cfg.prime, "The prime p")->required();
  polys->add_option("--level", cfg.level, "Number of Witt coordinates")->required()->check(CLI::Range(1u, 6u));
  polys->add_option("--cache-dir", cfg.cache_dir, "Cache directory (overridden by WITTCD_CACHE_DIR)")
      ->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "Compare W_n(F_q) with the Galois ring model");
  oracle->add_option("--prime", cfg.prime)->required();
  oracle->add_option("--degree", cfg.degree, "Field degree k, q = p^k")->capture_default_str();
  oracle->add_option("--level", cfg.level)->required()->check(CLI::Range(1u, 8u));
  oracle->add_option("--triples", cfg.triples, "Random triples when not exhaustive")->capture_default_str();

  auto* cd = app.add_subcommand("cd-verify", "Compare Z[M]/I^n with W_n(R) level by level");
  cd->add_option("--field", cfg.field, "Perfect ring, e.g. F2, F4, F2xF4")->required();
  cd->add_option("--cap", cfg.cap, "Highest level")->capture_default_str()->check(CLI::Range(1u, 12u));
  cd->add_option("--levels", cfg.levels, "Levels whose kernels are chased (default: cap)");
  cd->add_option("--source", cfg.source, "Use the multiplicative monoid of this field, units to 1, zero to 0");

  auto* mc = app.add_subcommand("module-classify", "Compare the four module conditions");
  mc->add_option("--field", cfg.field)->capture_default_str();
  mc->add_option("--group", cfg.group, "Invariant factors, e.g. 2,4");
  mc->add_flag("--enumerate", cfg.enumerate, "All abelian p-groups up to --max-group");
  mc->add_option("--max-group", cfg.max_group)->capture_default_str();
  mc->add_option("--module", cfg.module_file, "JSON file with one module or a list");
  mc->add_flag("--list", cfg.list, "Include every module in the report");

  auto* uni = app.add_subcommand("universal", "Hom(W_k(R), A) against multiplicative maps R -> A");
  uni->add_option("--field", cfg.field)->required();
  uni->add_option("--target", cfg.target, "Z4, Z8, F2[e]/(e^2), W2F4, F4, ...")->required();

  auto* til = app.add_subcommand("tilt", "Tilt of a finite ring, optionally with the Hom correspondence");
  auto* til_field = til->add_option("--field", cfg.field);
  til->add_option("--target", cfg.target)->required();

  auto* tr = app.add_subcommand("tor", "Betti numbers of a minimal resolution");
  tr->add_option("--algebra", cfg.algebra, "F2[x]/(x^2), F2[F4], F2xF4->F4, F4")->required();
  tr->add_option("--imax", cfg.imax)->capture_default_str()->check(CLI::Range(0u, 4u));

  auto* hh = app.add_subcommand("hochschild", "Tor over R (x) R of R with itself");
  hh->add_option("--field", cfg.field)->required();
  hh->add_option("--imax", cfg.imax)->capture_default_str()->check(CLI::Range(0u, 4u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }

  try {
    CommandResult r;
    if (*polys) r = cmd_witt_polys(cfg);
    else if (*oracle) r = cmd_oracle(cfg);
    else if (*cd) r = cmd_cd_verify(cfg);
    else if (*mc) r = cmd_module_classify(cfg);
    else if (*uni) r = cmd_universal(cfg);
    else if (*til) r = cmd_tilt(cfg, til_field->count() > 0);
    else if (*tr) r = cmd_tor(cfg);
    else r = cmd_hochschild(cfg);
    std::cout << format_report(r.report, cfg.format);
    return r.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

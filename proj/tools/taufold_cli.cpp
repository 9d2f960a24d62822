#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "taufold/cli.hpp"

int main(int argc, char** argv) {
  using namespace taufold;
  RunConfig cfg;
  std::string format = "text", side = "tors";

  CLI::App app{"Modules, tau-rigid modules and n-fold torsion classes over bound quiver algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("algebra", cfg.algebra_path, "Algebra file")->required();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json", "dot"}))
      ->capture_default_str();
  app.add_option("--mu", cfg.mu, "Multiplicity bound for bounded searches")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed recorded with the run")->capture_default_str();
  app.add_option("--max-subsets", cfg.subset_budget, "Subset search budget")->capture_default_str();

  app.add_subcommand("indecs", "List indecomposable modules");
  app.add_subcommand("tau-rigid", "List basic tau-rigid modules");
  app.add_subcommand("stautilt", "List support tau-tilting modules and the torsion lattice");
  auto* tors = app.add_subcommand("tors", "Enumerate n-fold torsion (torsion-free) classes");
  tors->add_option("--fold", cfg.fold, "n")->capture_default_str();
  tors->add_option("--side", side, "tors or torf")->check(CLI::IsMember({"tors", "torf"}))->capture_default_str();
  auto* cok = app.add_subcommand("cok", "n-cokernel (n-kernel) class of add U");
  cok->add_option("--u", cfg.u, "Labels, e.g. P1+P2")->required();
  cok->add_option("--n", cfg.n, "n")->capture_default_str();
  cok->add_option("--side", side, "tors (cokernels) or torf (kernels)")
      ->check(CLI::IsMember({"tors", "torf"}))
      ->capture_default_str();
  auto* star = app.add_subcommand("star", "Check condition (*) on a subcategory");
  star->add_option("--subcat", cfg.subcat, "Labels, e.g. P2+S3")->required();
  auto* bij = app.add_subcommand("bijection", "Verify a bijection end to end");
  bij->add_option("--which", cfg.which, "air, main or hereditary")
      ->check(CLI::IsMember({"air", "main", "hereditary"}))
      ->capture_default_str();
  auto* pair = app.add_subcommand("pair", "2-fold torsion pair and Ext-progenerator attached to U");
  pair->add_option("--u", cfg.u, "Labels of a tau-rigid module")->required();
  auto* closure = app.add_subcommand("closure", "Closure of a subcategory");
  closure->add_option("--kind", cfg.kind, "ke, ce, tf or ts")
      ->required()
      ->check(CLI::IsMember({"ke", "ce", "tf", "ts"}));
  closure->add_option("--fold", cfg.fold, "n")->capture_default_str();
  closure->add_option("--subcat", cfg.subcat, "Labels")->required();
  app.add_subcommand("table1", "tau-rigid modules against 2-fold torsion classes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_code::ok : exit_code::parse;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.side = side == "torf" ? SideKind::Torf : SideKind::Tors;
  static const std::map<std::string, OutputFormat> formats{
      {"text", OutputFormat::Text}, {"json", OutputFormat::Json}, {"dot", OutputFormat::Dot}};
  cfg.format = formats.at(format);
  return run(cfg, std::cout, std::cerr);
}

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "opkit/cli/commands.hpp"
#include "opkit/error.hpp"

int main(int argc, char** argv) {
  using namespace opkit;
  CLI::App app{"opkit: finite symmetric multicategories enriched in finite sets and simplicial sets"};
  app.require_subcommand(1);

  cli::Overrides o;
  std::string backend;
  std::vector<std::string> files;
  bool quiet = false;

  std::map<std::string, std::string> help = {
      {"check", "validate inputs and classify multifunctors"},
      {"factorize", "MC5 factorization of each multifunctor"},
      {"pushout", "pushout along Xi(I) -> Xi(H) with universal-property check"},
      {"free", "free multicategory on a collection or presentation"},
      {"circle", "circle product of two symmetric sequences, checked by an orbit oracle"},
      {"hom", "equivariant families between sequences, or multifunctors between multicategories"},
      {"suite", "verification suites over the built-in catalogs"}};
  for (const auto& name : cli::commands()) {
    auto* sub = app.add_subcommand(name, help[name]);
    sub->add_option("files", files, "manifest or input JSON files");
    sub->add_option("--backend", backend, "finset or finsset")->check(CLI::IsMember({"finset", "finsset"}));
    sub->add_option("--arity-bound", o.arity, "arity bound")->check(CLI::PositiveNumber);
    sub->add_option("--dim-bound", o.dim, "simplicial dimension bound")->check(CLI::PositiveNumber);
    sub->add_option("--tree-bound", o.tree, "vertex bound for free terms")->check(CLI::NonNegativeNumber);
    sub->add_option("--lift-budget", o.lift_budget, "search budget")->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out_dir, "directory for report.json, timing.json and artifacts");
    sub->add_option("--seed", o.seed, "seed for randomized suites");
    sub->add_option("--jobs", o.jobs, "1 runs tasks sequentially");
    sub->add_flag("-q,--quiet", quiet, "no summary on stderr");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : cli::kInputError;
  }
  std::string cmd = app.get_subcommands().front()->get_name();
  if (!backend.empty()) o.backend = backend == "finset" ? enrich::Backend::FinSet : enrich::Backend::FinSSet;
  try {
    if (files.empty() && cmd != "suite") throw ParseError("no input files");
    if (!o.out_dir.empty()) std::filesystem::create_directories(o.out_dir);
    auto m = cli::load_manifest(files, o);
    auto out = cli::run(cmd, m, o);
    if (o.out_dir.empty()) {
      std::cout << out.report.dump(2) << "\n";
    } else {
      io::write_file((std::filesystem::path(o.out_dir) / "report.json").string(), out.report);
    }
    if (!quiet) std::cerr << out.summary;
    return out.exit_code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kInputError;
  }
}

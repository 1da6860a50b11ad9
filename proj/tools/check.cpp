#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "artifact/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact verification pipeline for Lie pairs"};
  app.require_subcommand(1);
  auto* check = app.add_subcommand("check", "run verification suites on a Lie pair file");
  std::string pair, suite = "all", out;
  int trunc = 5, arity = 3;
  std::uint64_t seed = 1;
  check->add_option("--pair", pair, "Lie pair JSON file")->required();
  check->add_option("--trunc", trunc, "truncation order N")->capture_default_str();
  check->add_option("--arity", arity, "maximal bracket arity K")->capture_default_str();
  check->add_option("--suite", suite,
                    "comma-separated: validate, fedosov, contraction, transfer-t, transfer-d, matched, uniqueness, "
                    "cohomology, all")
      ->capture_default_str();
  check->add_option("--seed", seed, "seed for sampled checks")->capture_default_str();
  check->add_option("--out", out, "JSON report path; stdout when omitted");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  artifact::RunConfig cfg;
  cfg.pairPath = pair;
  cfg.trunc = trunc;
  cfg.arity = arity;
  cfg.seed = seed;
  try {
    cfg.suites = artifact::parse_suites(suite);
    artifact::validate_config(cfg);
  } catch (const artifact::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  const artifact::RunReport rep = artifact::run_pipeline(cfg);
  const std::string json = rep.to_json().dump(2) + "\n";
  if (out.empty()) {
    std::cout << json;
    std::cerr << rep.summary();
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!(f << json)) {
      std::cerr << "cannot write " << out << "\n";
      return 1;
    }
    std::cout << rep.summary();
  }
  return rep.exit_code();
}

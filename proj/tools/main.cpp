#include <iostream>

#include "CLI11.hpp"
#include "endo/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Transfer factors for classical groups over local fields"};
  app.require_subcommand(1);
  endo::CliOptions opt;
  int precision = 0;
  app.add_flag("--json", opt.json, "Machine-readable output");
  app.add_option("--precision", precision, "Valuation bound per unit of e (default 64)")->check(CLI::Range(8, 100000));

  std::string path;
  auto* validate = app.add_subcommand("validate", "Run every validation on an instance document");
  validate->add_option("document", path, "Instance document (JSON)")->required();
  auto* compute = app.add_subcommand("compute", "Compute the transfer factor");
  compute->add_option("document", path, "Instance document (JSON)")->required();
  compute->add_flag("--trace", opt.trace, "Print every C_i, verdict and prefactor");
  auto* check = app.add_subcommand("check", "Run the identity suite");
  check->add_option("document", path, "Instance document (JSON)")->required();

  long p = 0;
  std::string delta, value;
  auto* oracle = app.add_subcommand("oracle", "Norm test by Hilbert symbol and by brute force over Q_p");
  oracle->add_option("p", p, "Residue characteristic")->required();
  oracle->add_option("delta", delta, "Radicand literal")->required();
  oracle->add_option("value", value, "Element literal")->required();
  oracle->add_option("--depth", opt.depth, "Search depth")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);
  if (precision > 0) opt.precision = precision;

  endo::CommandResult r;
  if (*validate)
    r = endo::cmd_validate(path, opt);
  else if (*compute)
    r = endo::cmd_compute(path, opt);
  else if (*check)
    r = endo::cmd_check(path, opt);
  else
    r = endo::cmd_oracle(p, delta, value, opt);
  // Errors go to stderr; reports, including failing ones, to stdout.
  (r.output.rfind("error:", 0) == 0 ? std::cerr : std::cout) << r.output;
  return r.exit_code;
}

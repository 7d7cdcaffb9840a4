// Writes the genus-2 MD intersection table obtained from the commutation recursion.

#include <CLI11.hpp>
#include <iostream>

#include "mdh/derivation.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Derive genus-2 MD tables from [G_d, G_1] = 0"};
  int d_max = 7;
  std::string out = std::string(MDH_DATA_DIR) + "/genus2_md.json";
  bool verbose = false;
  app.add_option("--dmax", d_max, "largest d of the H_d densities")->check(CLI::Range(-1, 8));
  app.add_option("-o,--output", out, "output table path");
  app.add_flag("-v,--verbose", verbose, "print the solver log");
  CLI11_PARSE(app, argc, argv);

  mdh::StandardProvider analytic;
  mdh::Json log;
  mdh::IntegralTable table = mdh::derive_genus2_md_table(d_max, analytic, &log);
  table.save(out);
  if (verbose) std::cout << log.dump(1) << "\n";
  std::cout << table.entries().size() << " entries written to " << out << "\n";
  return 0;
}

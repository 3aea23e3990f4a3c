// Runs the ten end-to-end criteria and prints one PASS/FAIL line each.
#include <iostream>

#include "CLI11.hpp"
#include "outspace/acceptance.hpp"

int main(int argc, char** argv) {
  outspace::AcceptanceOptions opt;
  CLI::App app{"acceptance criteria"};
  app.add_option("--seed", opt.seed, "sampling seed");
  app.add_option("--only", opt.only, "criteria to run")->delimiter(',')->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);
  int failed = 0;
  for (const auto& r : outspace::run_acceptance(opt, std::cout)) failed += !r.pass;
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}

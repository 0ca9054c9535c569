// Standalone property runner: run_properties [--seed N] [--cases N] [suite...]
// Runs every suite when none is named. Exit status 1 when any case fails.

#include "properties.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"randomized property suites"};
  std::uint64_t seed = 20240501;
  unsigned cases = 100;
  std::string fixtures = ALGCOEF_FIXTURE_DIR;
  std::vector<std::string> only;
  app.add_option("--seed", seed, "random seed");
  app.add_option("--cases", cases, "cases per suite")->check(CLI::PositiveNumber);
  app.add_option("--fixtures", fixtures, "problem file directory");
  app.add_option("suite", only, "suites to run");
  app.add_flag_callback(
      "--list",
      [&] {
        for (const auto& s : properties::suites(fixtures)) std::cout << s.name << "\n";
        std::exit(0);
      },
      "list suite names");
  CLI11_PARSE(app, argc, argv);

  auto all = properties::suites(fixtures);
  for (const auto& name : only) {
    bool known = false;
    for (const auto& s : all) known = known || s.name == name;
    if (!known) {
      std::cerr << "unknown suite '" << name << "' (see --list)\n";
      return 1;
    }
  }

  int status = 0;
  for (const auto& s : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), s.name) == only.end()) continue;
    auto start = std::chrono::steady_clock::now();
    properties::Outcome o = s.run(seed, cases);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.ok() ? "ok   " : "FAIL ") << s.name << ": " << o.cases << " cases, "
              << o.failures << " failures (" << secs << " s)\n";
    if (!o.ok()) {
      std::cout << "     first failure: " << o.first_failure << "\n";
      status = 1;
    }
  }
  return status;
}

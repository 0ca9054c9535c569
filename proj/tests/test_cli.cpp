// Runs the algcoef binary end to end. Golden reports live in tests/golden;
// set ALGCOEF_UPDATE_GOLDEN=1 to rewrite them after an intended change.

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome run_cli(const std::string& args) {
  fs::path dir = fs::temp_directory_path() / ("algcoef_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::string cmd = std::string("\"") + ALGCOEF_CLI + "\" " + args + " > \"" +
                    (dir / "out").string() + "\" 2> \"" + (dir / "err").string() + "\"";
  int raw = std::system(cmd.c_str());
  Outcome o;
  o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  o.out = slurp(dir / "out");
  o.err = slurp(dir / "err");
  fs::remove_all(dir);
  return o;
}

std::string fixture(const std::string& name) {
  return std::string("\"") + ALGCOEF_FIXTURE_DIR + "/" + name + ".json\"";
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run_cli("all -i " + fixture("catalan")).status == 0);
  CHECK(run_cli("critical -i " + fixture("bilateral_schroeder")).status == 2);
  Outcome t = run_cli("all -i " + fixture("ternary_tree"));
  CHECK(t.status == 2);
  CHECK(t.err.find("h2_failure") != std::string::npos);
  CHECK(nlohmann::json::parse(t.out)["failure"]["kind"] == "h2_failure");

  Outcome missing = run_cli("all -i /nonexistent/problem.json");
  CHECK(missing.status == 1);
  CHECK(missing.err.find("/nonexistent/problem.json") != std::string::npos);
  CHECK(run_cli("all").status == 1);
  CHECK(run_cli("solve -i " + fixture("catalan")).status == 1);
  CHECK(run_cli("all -i " + fixture("catalan") + " --direction 1,2").status == 1);
  CHECK(run_cli("all -i " + fixture("catalan") + " --kmax 3").status == 1);
  CHECK(run_cli("all -i " + fixture("callan") + " --param c=1").status == 1);
  CHECK(run_cli("--help").status == 0);
}

TEST_CASE("options reach the pipeline") {
  Outcome d = run_cli("asympt -i " + fixture("dissections") + " --direction 1/4,3/4");
  CHECK(d.status == 2);
  CHECK(nlohmann::json::parse(d.out)["failure"]["kind"] == "no_positive_critical_point");

  Outcome c = run_cli("asympt -i " + fixture("callan") + " --param a=2 --param b=1");
  REQUIRE(c.status == 0);
  CHECK(nlohmann::json::parse(c.out)["asymptotics"]["rho_exact"] == "4");

  // The embedded leading term vanishes, so depth 0 is not enough.
  Outcome k = run_cli("asympt -i " + fixture("catalan") + " --kmax 0");
  CHECK(k.status == 2);
  CHECK(nlohmann::json::parse(k.out)["failure"]["kind"] == "expansion_vanishes");

  Outcome tight = run_cli("verify -i " + fixture("catalan") + " --tolerance 1e-6");
  CHECK(tight.status == 2);

  Outcome text = run_cli("all -i " + fixture("catalan") + " --format text");
  REQUIRE(text.status == 0);
  CHECK(text.out.find("rho") != std::string::npos);
  CHECK_FALSE(nlohmann::json::accept(text.out));

  fs::path out = fs::temp_directory_path() / "algcoef_cli_report.json";
  REQUIRE(run_cli("embed -i " + fixture("catalan") + " -o \"" + out.string() + "\"").status == 0);
  CHECK(nlohmann::json::parse(slurp(out))["stage"] == "embed");
  fs::remove(out);
}

TEST_CASE("golden reports") {
  const bool update = std::getenv("ALGCOEF_UPDATE_GOLDEN") != nullptr;
  std::size_t seen = 0;
  for (const auto& entry : fs::directory_iterator(ALGCOEF_FIXTURE_DIR)) {
    std::string name = entry.path().stem().string();
    CAPTURE(name);
    Outcome o = run_cli("all -i \"" + entry.path().string() + "\"");
    REQUIRE((o.status == 0 || o.status == 2));
    nlohmann::json got = nlohmann::json::parse(o.out);
    fs::path golden = fs::path(ALGCOEF_GOLDEN_DIR) / (name + ".json");
    if (update) {
      fs::create_directories(golden.parent_path());
      std::ofstream(golden) << got.dump(2) << "\n";
    }
    REQUIRE(fs::exists(golden));
    nlohmann::json want = nlohmann::json::parse(slurp(golden));
    if (got != want) {
      MESSAGE("report differs from " << golden.string() << ":\n"
                                      << nlohmann::json::diff(want, got).dump(2));
    }
    CHECK(got == want);
    ++seen;
  }
  CHECK(seen >= 10);
}

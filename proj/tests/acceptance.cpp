// Acceptance run over the fixture corpus. Prints one PASS/FAIL line per
// criterion, with the reasons for any failure indented underneath.

#include "properties.hpp"

#include "algcoef/pipeline.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <iostream>
#include <sstream>

using namespace algcoef;
namespace bmp = boost::multiprecision;

namespace {

const std::string kFixtures = ALGCOEF_FIXTURE_DIR;

ProblemSpec fixture(const std::string& name) { return load_problem(kFixtures + "/" + name + ".json"); }

class Criterion {
 public:
  Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {}

  void require(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) problems_.push_back(what);
  }

  bool finish() const {
    bool ok = problems_.empty() && checks_ > 0;
    std::cout << (ok ? "PASS " : "FAIL ") << id_ << ". " << title_ << " (" << checks_
              << " checks)\n";
    for (const auto& p : problems_) std::cout << "       " << p << "\n";
    return ok;
  }

 private:
  int id_;
  std::string title_;
  unsigned checks_ = 0;
  std::vector<std::string> problems_;
};

double rel(const Real& got, const Real& want) {
  return static_cast<double>(bmp::abs(got - want) / bmp::abs(want));
}

std::string show(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

std::vector<Rational> rationals(const nlohmann::json& arr) {
  std::vector<Rational> out;
  for (const auto& e : arr) {
    Rational q(e.get<std::string>());
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

/// The fixture with a check's parameter and direction overrides applied.
ProblemSpec specialize(ProblemSpec s, const nlohmann::json& check) {
  if (check.contains("parameters")) {
    for (auto it = check["parameters"].begin(); it != check["parameters"].end(); ++it) {
      Rational q(it.value().get<std::string>());
      q.canonicalize();
      s.parameters[it.key()] = q;
    }
  }
  if (check.contains("direction")) s.direction = rationals(check["direction"]);
  return s;
}

/// Values the expectation expressions may refer to: p, the parameters, and xi
/// when the check defines it.
std::map<std::string, Real> bindings(const ProblemSpec& s, const nlohmann::json& check) {
  std::map<std::string, Real> b;
  for (const auto& [k, v] : s.parameters) b[k] = to_real(v);
  if (check.contains("p")) b["p"] = evaluate_expression(check["p"].get<std::string>());
  if (check["expect"].contains("xi"))
    b["xi"] = evaluate_expression(check["expect"]["xi"].get<std::string>(), b);
  return b;
}

/// Runs one fixture check end to end and records every expectation on `c`.
Report run_check(Criterion& c, const std::string& name, const nlohmann::json& check,
                 const std::string& tag) {
  ProblemSpec s = specialize(fixture(name), check);
  const nlohmann::json& expect = check["expect"];
  Report r = run(s, expect.contains("failure") ? Stage::kCritical : Stage::kAll);
  std::string at = name + " [" + tag + "]: ";

  if (expect.contains("failure")) {
    c.require(r.failure && r.failure->kind == expect["failure"],
              at + "expected failure " + expect["failure"].get<std::string>() + ", got " +
                  (r.failure ? r.failure->kind : "none"));
    if (expect.contains("exit"))
      c.require(exit_code(r) == expect["exit"].get<int>(), at + "exit code");
    return r;
  }
  if (r.failure) {
    c.require(false, at + r.failure->kind + ": " + r.failure->message);
    return r;
  }
  auto b = bindings(s, check);
  const AsymptoticsSection& ax = *r.asymptotics;
  auto near = [&](const std::string& key, const std::string& got, double tol) {
    Real want = evaluate_expression(expect[key].get<std::string>(), b);
    double e = rel(Real(got), want);
    c.require(e < tol, at + key + " off by " + show(e) + " (got " + got + ")");
  };
  if (expect.contains("rho")) near("rho", ax.rho, 1e-8);
  if (expect.contains("general_rho")) near("general_rho", ax.rho, 1e-8);
  if (expect.contains("constant")) near("constant", ax.constant, 1e-8);
  if (expect.contains("general_constant")) near("general_constant", ax.constant, 1e-8);
  if (expect.contains("alpha"))
    c.require(ax.alpha == expect["alpha"].get<std::string>(), at + "alpha = " + ax.alpha);
  if (expect.contains("rho_exact"))
    c.require(ax.rho_exact == expect["rho_exact"].get<std::string>(),
              at + "rho reconstructed as " + ax.rho_exact.value_or("nothing"));
  if (expect.contains("point")) {
    const PointSection& w = r.critical->points[*r.critical->selected];
    for (std::size_t k = 0; k < expect["point"].size(); ++k) {
      Real want = evaluate_expression(expect["point"][k].get<std::string>(), b);
      double e = rel(Real(w.re[k]), want);
      c.require(e < 1e-25 && Real(w.im[k]) == 0,
                at + "point coordinate " + std::to_string(k) + " off by " + show(e));
    }
  }
  if (expect.contains("preprocessing")) {
    std::vector<std::string> want = expect["preprocessing"];
    c.require(r.embedding->preprocessing == want, at + "unexpected preprocessing trail");
  }
  if (check.contains("max_error")) {
    const ValidationSection* v = r.validation ? &*r.validation : nullptr;
    c.require(v && !v->rows.empty(), at + "no validation table");
    if (v && !v->rows.empty()) {
      c.require(v->decreasing, at + "relative errors do not decrease");
      Real last(v->rows.back().relative_error);
      Real bound = evaluate_expression(check["max_error"].get<std::string>());
      c.require(last < bound, at + "relative error " + v->rows.back().relative_error + " at n = " +
                                  std::to_string(v->rows.back().n));
    }
  }
  return r;
}

void run_all_checks(Criterion& c, const std::string& name) {
  ProblemSpec s = fixture(name);
  for (const auto& check : s.checks) {
    if (!check.contains("expect")) continue;
    run_check(c, name, check, check.value("label", "default"));
  }
}

int cli_exit(const std::string& args) {
  std::string cmd = std::string("\"") + ALGCOEF_CLI + "\" " + args + " > /dev/null 2>&1";
  int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

bool criterion_1() {
  Criterion c(1, "Catalan: rho = 4 reconstructed, alpha = 3/2, C = 1/sqrt(pi), oracle < 2% at n = 200");
  run_all_checks(c, "catalan");
  Report r = run(fixture("catalan"), Stage::kAll);
  c.require(r.validation && r.validation->rows.back().n == 200, "grid does not end at n = 200");
  return c.finish();
}

bool criterion_2() {
  Criterion c(2, "Callan family at (1,4), (2,1), (3,2): closed form, oracle < 3% at n = 200");
  run_all_checks(c, "callan");
  return c.finish();
}

bool criterion_3() {
  Criterion c(3, "Dissections: minimal point, formula at p = 2/5, failure at p = 1/4");
  run_all_checks(c, "dissections");
  return c.finish();
}

bool criterion_4() {
  Criterion c(4, "Assembly trees: rho = 6 + 4*sqrt(2), C = 1/(pi*2^(9/4)), negative control");
  run_all_checks(c, "assembly_trees");
  Report r = run(fixture("assembly_trees"), Stage::kAll);
  if (!r.validation) {
    c.require(false, "no validation table");
    return c.finish();
  }
  const auto& rows = r.validation->rows;
  c.require(r.validation->decreasing && r.validation->converging,
            "errors against the computed constant do not converge");
  Real lo(1e9), hi(0);
  for (const auto& row : rows) {
    c.require(row.control_error.has_value(), "missing control column");
    if (!row.control_error) continue;
    Real e(*row.control_error);
    if (e < lo) lo = e;
    hi = max_real(hi, e);
  }
  // The alternative constant leaves a roughly constant, clearly nonzero error.
  c.require(lo > Real(0.1), "control error is not bounded away from zero");
  c.require(hi - lo < Real(0.1) * hi, "control error is not roughly constant");
  c.require(Real(rows.back().relative_error) < lo / 10,
            "computed constant does not beat the control by a wide margin");
  return c.finish();
}

bool criterion_5() {
  Criterion c(5, "Schroeder trees: formula at p = 2/5, search picks the V - xy shift");
  run_all_checks(c, "schroeder_trees");
  ProblemSpec s = fixture("schroeder_trees");
  Report r = run(s, Stage::kCertify);
  c.require(r.certificate && r.certificate->status == "certified", "chosen embedding not certified");
  c.require(r.embedding && r.embedding->preprocessing == std::vector<std::string>{"subtract x*y"},
            "search did not subtract x*y");
  // Without the shift no pivot gives a combinatorial embedding.
  MultiPoly p = original_polynomial(s);
  for (const std::string pivot : {"x", "y"}) {
    EmbedOptions o;
    o.pivot = pivot;
    o.shift_search_degree = -1;
    try {
      EmbeddingResult e = embed_problem(p, 0, {}, o);
      c.require(!combinatorial_certificate(e.denominator).certified(),
                "unshifted embedding with pivot " + pivot + " is certified");
    } catch (const MathFailure& e) {
      c.require(true, "");
    }
  }
  return c.finish();
}

bool criterion_6() {
  Criterion c(6, "Cossali and bicolored Motzkin at p = 1/3, 1/2; Motzkin p = 1/2 gives 8/pi");
  run_all_checks(c, "cossali");
  run_all_checks(c, "motzkin");
  for (const char* name : {"cossali", "motzkin"}) {
    for (const auto& check : fixture(name).checks) {
      ProblemSpec s = specialize(fixture(name), check);
      Report r = run(s, Stage::kAll);
      c.require(r.validation && r.validation->rows.back().n == 120,
                std::string(name) + ": grid does not end at n = 120");
    }
  }
  return c.finish();
}

bool criterion_7() {
  Criterion c(7, "Embedding identity at N = 25; Narayana specializes to Catalan at y = 1");
  for (const char* name : {"catalan", "callan", "narayana", "dissections", "assembly_trees",
                           "schroeder_trees", "cossali", "motzkin", "bilateral_schroeder"}) {
    ProblemSpec s = fixture(name);
    if (s.multiplicity != 1) continue;
    s.oracle_order = 25;
    Report r = run(s, Stage::kEmbed);
    c.require(r.embedding && r.embedding->verified && r.embedding->verified_order == 25,
              std::string(name) + ": embedding identity fails at N = 25");
  }
  Report n = run(fixture("narayana"), Stage::kEmbed);
  Report k = run(fixture("catalan"), Stage::kEmbed);
  VarList nv(n.embedding->variables), kv(k.embedding->variables);
  auto at_one = [&](const std::string& text) {
    MultiPoly p = parse_polynomial(text, nv);
    return change_vars(substitute(p, {{"y", MultiPoly::constant(nv, 1)}}), kv);
  };
  MultiPoly g = at_one(n.embedding->numerator), h = at_one(n.embedding->denominator);
  MultiPoly g1 = parse_polynomial(k.embedding->numerator, kv);
  MultiPoly h1 = parse_polynomial(k.embedding->denominator, kv);
  c.require(g * h1 == g1 * h, "Narayana embedding at y = 1 differs from the Catalan embedding");
  c.require(k.embedding->preprocessing == std::vector<std::string>{"subtract 1"},
            "Catalan embedding is not the constant-term route");
  return c.finish();
}

bool criterion_8() {
  Criterion c(8, "Error paths: ternary H2 failure, bilateral no affine critical points, exit 2");
  run_all_checks(c, "ternary_tree");
  run_all_checks(c, "bilateral_schroeder");
  const std::string dir = kFixtures + "/";
  c.require(cli_exit("all -i \"" + dir + "ternary_tree.json\"") == 2, "ternary: CLI exit code");
  c.require(cli_exit("critical -i \"" + dir + "bilateral_schroeder.json\"") == 2,
            "bilateral: CLI exit code");
  c.require(cli_exit("all -i \"" + dir + "bilateral_schroeder.json\"") == 2,
            "bilateral: CLI exit code through all stages");
  return c.finish();
}

bool criterion_9() {
  Criterion c(9, "Property suites, at least 100 cases each, no failures");
  for (const auto& suite : properties::suites(kFixtures)) {
    properties::Outcome o = suite.run(20240501, 100);
    c.require(o.cases >= 100, suite.name + ": only " + std::to_string(o.cases) + " cases");
    c.require(o.failures == 0, suite.name + ": " + std::to_string(o.failures) +
                                   " failures, first: " + o.first_failure);
  }
  return c.finish();
}

}  // namespace

int main() {
  bool ok = true;
  for (auto* criterion : {criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                          criterion_6, criterion_7, criterion_8, criterion_9}) {
    try {
      ok = criterion() && ok;
    } catch (const std::exception& e) {
      std::cout << "FAIL (exception: " << e.what() << ")\n";
      ok = false;
    }
  }
  return ok ? 0 : 1;
}

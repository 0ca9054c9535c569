// algcoef <stage> --input FILE [options]
//
// Exit status: 0 success, 2 structured mathematical failure (see the
// report's failure section), 1 bad input or internal error.

#include "algcoef/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::vector<algcoef::Rational> parse_direction(const std::string& text) {
  std::vector<algcoef::Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    try {
      algcoef::Rational q(item);
      q.canonicalize();
      out.push_back(q);
    } catch (const std::invalid_argument&) {
      throw algcoef::ValidationError("--direction: '" + item + "' is not a rational number");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coefficient asymptotics of algebraic generating functions via rational diagonals"};
  app.require_subcommand(1, 1);

  std::string input;
  std::string direction;
  unsigned order = 0;
  int kmax = -1;
  std::string tolerance;
  std::string format = "json";
  std::string out;
  std::vector<std::string> params;

  for (const char* name : {"embed", "certify", "critical", "asympt", "verify", "all"}) {
    CLI::App* sub = app.add_subcommand(name, std::string("run the pipeline through ") + name);
    sub->add_option("--input,-i", input, "problem file (JSON)")->required();
    sub->add_option("--direction", direction, "override the direction, e.g. \"2/5,3/5\"");
    sub->add_option("--order", order, "order of the embedding identity check");
    sub->add_option("--kmax", kmax, "expansion depth")->check(CLI::Range(0, 1));
    sub->add_option("--tolerance", tolerance, "largest accepted relative error at the last n");
    sub->add_option("--param", params, "override a parameter, name=value");
    sub->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out,-o", out, "write the report here instead of stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    algcoef::Stage stage = algcoef::parse_stage(app.get_subcommands().front()->get_name());
    algcoef::ProblemSpec spec = algcoef::load_problem(input);
    if (!direction.empty()) {
      spec.direction = parse_direction(direction);
      if (spec.direction.size() != spec.variables.size()) {
        throw algcoef::ValidationError("--direction has " + std::to_string(spec.direction.size()) +
                                       " entries but the problem has " +
                                       std::to_string(spec.variables.size()) + " variables");
      }
      for (const auto& r : spec.direction) {
        if (sgn(r) <= 0) throw algcoef::ValidationError("--direction entries must be positive");
      }
    }
    for (const auto& p : params) {
      auto eq = p.find('=');
      if (eq == std::string::npos) throw algcoef::ValidationError("--param expects name=value");
      std::string key = p.substr(0, eq);
      if (!spec.parameters.count(key)) {
        throw algcoef::ValidationError("--param: the problem has no parameter '" + key + "'");
      }
      try {
        algcoef::Rational q(p.substr(eq + 1));
        q.canonicalize();
        spec.parameters[key] = q;
      } catch (const std::invalid_argument&) {
        throw algcoef::ValidationError("--param: bad value in '" + p + "'");
      }
    }
    if (order) spec.oracle_order = order;
    if (kmax >= 0) spec.k_max = static_cast<unsigned>(kmax);
    if (!tolerance.empty()) spec.tolerance = algcoef::evaluate_expression(tolerance);

    algcoef::Report report = algcoef::run(spec, stage);
    std::string text = format == "json" ? algcoef::report_to_json(report).dump(2) + "\n"
                                        : algcoef::render_text(report);
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out);
      if (!f) throw algcoef::ValidationError(out + ": cannot write");
      f << text;
    }
    if (report.failure) {
      std::cerr << "algcoef: " << report.failure->kind << ": " << report.failure->message << "\n";
    }
    return algcoef::exit_code(report);
  } catch (const std::exception& e) {
    std::cerr << "algcoef: error: " << e.what() << "\n";
    return 1;
  }
}

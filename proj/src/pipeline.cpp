#include "algcoef/pipeline.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace algcoef {

namespace {

namespace bmp = boost::multiprecision;
using nlohmann::json;

constexpr int kDigits = 30;

std::string dec(const Real& x) { return format_real(x, kDigits); }

[[noreturn]] void bad(const std::string& origin, const std::string& what) {
  throw ValidationError(origin + ": " + what);
}

Rational rational_field(const json& v, const std::string& origin, const std::string& key) {
  try {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_string()) {
      Rational q(v.get<std::string>());
      q.canonicalize();
      return q;
    }
  } catch (const std::invalid_argument&) {
  }
  bad(origin, "field '" + key + "' must be a rational string like \"2/5\"");
}

std::string string_field(const json& v, const std::string& origin, const std::string& key) {
  if (!v.is_string()) bad(origin, "field '" + key + "' must be a string");
  return v.get<std::string>();
}

long int_field(const json& v, const std::string& origin, const std::string& key) {
  if (!v.is_number_integer()) bad(origin, "field '" + key + "' must be an integer");
  return v.get<long>();
}

std::string rational_text(const Rational& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Stages

const char* to_string(Stage s) {
  switch (s) {
    case Stage::kEmbed: return "embed";
    case Stage::kCertify: return "certify";
    case Stage::kCritical: return "critical";
    case Stage::kAsympt: return "asympt";
    case Stage::kVerify: return "verify";
    case Stage::kAll: return "all";
  }
  return "";
}

Stage parse_stage(std::string_view name) {
  for (Stage s : {Stage::kEmbed, Stage::kCertify, Stage::kCritical, Stage::kAsympt, Stage::kVerify,
                  Stage::kAll}) {
    if (name == to_string(s)) return s;
  }
  throw ValidationError("unknown stage '" + std::string(name) +
                        "' (expected embed, certify, critical, asympt, verify or all)");
}

// ---------------------------------------------------------------------------
// Problem files

ProblemSpec parse_problem(const json& j, const std::string& origin) {
  if (!j.is_object()) bad(origin, "a problem file must be a JSON object");
  static const std::set<std::string> known = {
      "name",         "variables",         "minimal_polynomial",  "parameters",
      "branch_constant", "preprocessing",  "pivot",               "multiplicity",
      "shift_search_degree", "direction",  "oracle_order",        "k_max",
      "validation_n", "tolerance",         "control_constant",    "control_label",
      "checks",       "description"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) bad(origin, "unknown field '" + key + "'");
  }
  for (const char* key : {"name", "variables", "minimal_polynomial", "direction"}) {
    if (!j.contains(key)) bad(origin, std::string("missing field '") + key + "'");
  }

  ProblemSpec s;
  s.name = string_field(j["name"], origin, "name");
  if (!j["variables"].is_array() || j["variables"].empty()) {
    bad(origin, "field 'variables' must be a nonempty array of names");
  }
  for (const auto& v : j["variables"]) {
    std::string name = string_field(v, origin, "variables");
    if (!is_valid_identifier(name)) bad(origin, "invalid variable name '" + name + "'");
    if (name == "Y") bad(origin, "'Y' is reserved for the series variable");
    s.variables.push_back(name);
  }
  s.minimal_polynomial = string_field(j["minimal_polynomial"], origin, "minimal_polynomial");
  if (j.contains("parameters")) {
    if (!j["parameters"].is_object()) bad(origin, "field 'parameters' must be an object");
    for (const auto& [k, v] : j["parameters"].items()) {
      s.parameters[k] = rational_field(v, origin, "parameters." + k);
    }
  }
  if (j.contains("branch_constant")) {
    s.branch_constant = rational_field(j["branch_constant"], origin, "branch_constant");
  }
  if (j.contains("preprocessing")) {
    if (!j["preprocessing"].is_array()) bad(origin, "field 'preprocessing' must be an array");
    for (const auto& st : j["preprocessing"]) {
      if (!st.is_object() || !st.contains("kind")) {
        bad(origin, "each preprocessing step needs a 'kind'");
      }
      StepSpec step;
      step.kind = string_field(st["kind"], origin, "preprocessing.kind");
      if (step.kind == "additive") {
        if (!st.contains("shift")) bad(origin, "additive step needs 'shift'");
        step.shift = string_field(st["shift"], origin, "preprocessing.shift");
      } else if (step.kind == "monomial") {
        if (!st.contains("source") || !st.contains("carrier")) {
          bad(origin, "monomial step needs 'source' and 'carrier'");
        }
        step.source = string_field(st["source"], origin, "preprocessing.source");
        step.carrier = string_field(st["carrier"], origin, "preprocessing.carrier");
      } else if (step.kind == "multiplicative") {
        if (!st.contains("variable")) bad(origin, "multiplicative step needs 'variable'");
        step.variable = string_field(st["variable"], origin, "preprocessing.variable");
      } else {
        bad(origin, "unknown preprocessing kind '" + step.kind + "'");
      }
      s.preprocessing.push_back(step);
    }
  }
  if (j.contains("pivot")) s.pivot = string_field(j["pivot"], origin, "pivot");
  if (j.contains("multiplicity")) {
    long k = int_field(j["multiplicity"], origin, "multiplicity");
    if (k < 1) bad(origin, "multiplicity must be at least 1");
    s.multiplicity = static_cast<unsigned>(k);
  }
  if (j.contains("shift_search_degree")) {
    s.shift_search_degree = static_cast<int>(
        int_field(j["shift_search_degree"], origin, "shift_search_degree"));
  }
  if (!j["direction"].is_array()) bad(origin, "field 'direction' must be an array");
  for (const auto& v : j["direction"]) s.direction.push_back(rational_field(v, origin, "direction"));
  if (s.direction.size() != s.variables.size()) {
    bad(origin, "direction has " + std::to_string(s.direction.size()) + " entries but there are " +
                    std::to_string(s.variables.size()) + " variables");
  }
  for (const auto& r : s.direction) {
    if (sgn(r) <= 0) bad(origin, "direction entries must be positive");
  }
  if (j.contains("oracle_order")) {
    long n = int_field(j["oracle_order"], origin, "oracle_order");
    if (n < 1) bad(origin, "oracle_order must be positive");
    s.oracle_order = static_cast<unsigned>(n);
  }
  if (j.contains("k_max")) {
    long k = int_field(j["k_max"], origin, "k_max");
    if (k != 0 && k != 1) bad(origin, "k_max must be 0 or 1");
    s.k_max = static_cast<unsigned>(k);
  }
  if (j.contains("validation_n")) {
    if (!j["validation_n"].is_array()) bad(origin, "field 'validation_n' must be an array");
    for (const auto& v : j["validation_n"]) {
      long n = int_field(v, origin, "validation_n");
      if (n < 1) bad(origin, "validation_n entries must be positive");
      s.validation_n.push_back(static_cast<unsigned>(n));
    }
  }
  if (j.contains("tolerance")) {
    std::string t = j["tolerance"].is_string() ? j["tolerance"].get<std::string>()
                                               : j["tolerance"].dump();
    s.tolerance = evaluate_expression(t);
    if (*s.tolerance <= 0) bad(origin, "tolerance must be positive");
  }
  if (j.contains("control_constant")) {
    s.control_constant = string_field(j["control_constant"], origin, "control_constant");
    evaluate_expression(*s.control_constant, {{"C", Real(1)}});  // syntax check
  }
  if (j.contains("control_label")) {
    s.control_label = string_field(j["control_label"], origin, "control_label");
  }
  if (j.contains("checks")) {
    if (!j["checks"].is_array()) bad(origin, "field 'checks' must be an array");
    s.checks = j["checks"];
  }
  // Catch polynomial typos at load time rather than mid-pipeline.
  try {
    original_polynomial(s);
  } catch (const ParseError& e) {
    bad(origin, std::string("minimal_polynomial: ") + e.what() + " at offset " +
                    std::to_string(e.offset()));
  } catch (const ValidationError& e) {
    bad(origin, e.what());
  }
  return s;
}

ProblemSpec parse_problem_text(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ValidationError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": malformed JSON (" + e.what() + ")");
  }
  return parse_problem(j, origin);
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_problem_text(buf.str(), path);
}

json problem_to_json(const ProblemSpec& s) {
  json j;
  j["name"] = s.name;
  j["variables"] = s.variables;
  j["minimal_polynomial"] = s.minimal_polynomial;
  if (!s.parameters.empty()) {
    json p = json::object();
    for (const auto& [k, v] : s.parameters) p[k] = rational_text(v);
    j["parameters"] = p;
  }
  if (s.branch_constant) j["branch_constant"] = rational_text(*s.branch_constant);
  if (!s.preprocessing.empty()) {
    json steps = json::array();
    for (const auto& st : s.preprocessing) {
      json o{{"kind", st.kind}};
      if (st.kind == "additive") o["shift"] = st.shift;
      if (st.kind == "monomial") {
        o["source"] = st.source;
        o["carrier"] = st.carrier;
      }
      if (st.kind == "multiplicative") o["variable"] = st.variable;
      steps.push_back(o);
    }
    j["preprocessing"] = steps;
  }
  j["pivot"] = s.pivot;
  j["multiplicity"] = s.multiplicity;
  j["shift_search_degree"] = s.shift_search_degree;
  json dir = json::array();
  for (const auto& r : s.direction) dir.push_back(rational_text(r));
  j["direction"] = dir;
  j["oracle_order"] = s.oracle_order;
  j["k_max"] = s.k_max;
  if (!s.validation_n.empty()) j["validation_n"] = s.validation_n;
  if (s.tolerance) j["tolerance"] = dec(*s.tolerance);
  if (s.control_constant) j["control_constant"] = *s.control_constant;
  if (!s.control_label.empty()) j["control_label"] = s.control_label;
  if (!s.checks.empty()) j["checks"] = s.checks;
  return j;
}

MultiPoly original_polynomial(const ProblemSpec& spec) {
  std::vector<std::string> names{"Y"};
  names.insert(names.end(), spec.variables.begin(), spec.variables.end());
  VarList base(names);
  for (const auto& [k, _] : spec.parameters) {
    if (base.contains(k)) throw ValidationError("parameter '" + k + "' clashes with a variable");
    names.push_back(k);
  }
  VarList all(names);
  MultiPoly p = parse_polynomial(spec.minimal_polynomial, all);
  if (!spec.parameters.empty()) {
    std::map<std::string, MultiPoly> values;
    for (const auto& [k, v] : spec.parameters) values[k] = MultiPoly::constant(all, v);
    p = substitute(p, values);
  }
  p = change_vars(p, base);
  if (p.degree(std::size_t{0}) == 0) {
    throw ValidationError("minimal_polynomial does not involve the series variable Y");
  }
  return p;
}

// ---------------------------------------------------------------------------
// Pipeline

namespace {

std::vector<PreprocStep> to_steps(const ProblemSpec& spec, const VarList& vars) {
  std::vector<PreprocStep> steps;
  for (const auto& st : spec.preprocessing) {
    if (st.kind == "additive") {
      MultiPoly f0;
      try {
        f0 = parse_polynomial(st.shift, vars);
      } catch (const ParseError& e) {
        throw ValidationError("additive shift '" + st.shift + "': " + e.what());
      }
      steps.push_back(PreprocStep::additive(f0));
    } else if (st.kind == "monomial") {
      steps.push_back(PreprocStep::monomial(st.source, st.carrier));
    } else {
      steps.push_back(PreprocStep::multiplicative(st.variable));
    }
  }
  return steps;
}

PointSection point_section(const CriticalPoint& p) {
  PointSection s;
  for (const auto& c : p.coords) {
    s.re.push_back(dec(c.re));
    s.im.push_back(dec(c.im));
  }
  s.residual = format_real(p.residual, 6);
  s.smooth = to_string(p.smooth);
  s.positive = to_string(p.positive);
  s.minimal = to_string(p.minimal);
  s.precision_bits = p.precision_bits;
  return s;
}

bool same_point(const CriticalPoint& a, const CriticalPoint& b) {
  if (a.coords.size() != b.coords.size()) return false;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (a.coords[i].re != b.coords[i].re || a.coords[i].im != b.coords[i].im) return false;
  }
  return true;
}

Real parse_decimal(const std::string& s) {
  try {
    return Real(s);
  } catch (const std::exception&) {
    throw ValidationError("not a decimal number: '" + s + "'");
  }
}

}  // namespace

Report run(const ProblemSpec& spec, Stage stage) {
  Report rep;
  rep.name = spec.name;
  rep.stage = to_string(stage);
  rep.precision_bits = configured_precision_bits();
  const Stage last = stage == Stage::kAll ? Stage::kVerify : stage;
  auto reached = [&](Stage s) { return static_cast<int>(last) >= static_cast<int>(s); };

  Stage current = Stage::kEmbed;
  try {
    MultiPoly p = original_polynomial(spec);
    Rational constant = spec.branch_constant ? *spec.branch_constant : default_branch_constant(p);
    EmbedOptions options;
    options.pivot = spec.pivot;
    options.multiplicity = spec.multiplicity;
    options.shift_search_degree = spec.shift_search_degree;
    EmbeddingResult e = embed_problem(p, constant, to_steps(spec, p.vars()), options);
    rep.warnings.insert(rep.warnings.end(), e.warnings.begin(), e.warnings.end());

    EmbeddingSection es;
    es.variables = e.denominator.vars().names();
    es.numerator = e.numerator.to_string();
    es.denominator = e.denominator.to_string();
    es.pivot = e.pivot;
    es.multiplicity = e.multiplicity;
    for (const auto& st : e.trail) es.preprocessing.push_back(st.describe());
    es.preprocessed = e.preprocessed.to_string();
    es.map = e.map;
    es.verified_order = spec.oracle_order;
    es.verified = verify_embedding(e, e.preprocessed, spec.oracle_order);
    rep.embedding = es;
    if (!es.verified) {
      throw MathFailure(FailureKind::kValidationFailed,
                        "embedding identity fails through order " +
                            std::to_string(spec.oracle_order));
    }
    if (!reached(Stage::kCertify)) return rep;

    // An unknown certificate is recorded here and becomes a hard stop only
    // when a minimal point has to be selected.
    current = Stage::kCertify;
    CombCertificate cert = combinatorial_certificate(e.denominator);
    SupportLattice lattice = support_lattice(cert.k);
    CertificateSection cs;
    cs.status = cert.certified() ? "certified" : "unknown";
    cs.k = cert.k.to_string();
    cs.normalizer = rational_text(cert.normalizer);
    cs.aperiodic = lattice.full();
    for (const auto& row : lattice.basis) {
      std::vector<std::string> r;
      for (const auto& v : row) r.push_back(v.get_str());
      cs.lattice_basis.push_back(r);
    }
    cs.lattice_index = lattice.index.get_str();
    rep.certificate = cs;
    if (!cert.certified()) {
      rep.warnings.push_back("combinatorial certificate unknown: 1 - H/H(0) has a negative coefficient");
    }
    if (!reached(Stage::kCritical)) return rep;

    current = Stage::kCritical;
    Direction dir = Direction::from_original(spec.direction, e.map);
    rep.critical = CriticalSection{};
    for (const auto& r : dir.embedded) rep.critical->direction.push_back(rational_text(r));
    auto pts = solve_critical(critical_system(e.denominator, dir.embedded));
    for (auto& pt : pts) smoothness_check(e.denominator, pt);
    for (const auto& pt : pts) rep.critical->points.push_back(point_section(pt));
    CriticalPoint w = select_minimal(pts, cert, cs.aperiodic);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (same_point(pts[i], w)) {
        rep.critical->selected = i;
        rep.critical->points[i] = point_section(w);
      }
    }
    if (w.smooth != Tri::kYes) {
      throw MathFailure(FailureKind::kNonSmoothPoint, "the selected critical point is not smooth");
    }
    rep.critical->distinguished = e.denominator.vars()[w.distinguished];
    if (!reached(Stage::kAsympt)) return rep;

    current = Stage::kAsympt;
    PhaseData pd = phase_data(e.denominator, w, dir);
    AsymptoticExpansion ax =
        expansion_terms(e.numerator, e.denominator, pd, w, dir, spec.k_max, e.map.offset);
    OriginalAsymptotics o = translate_to_original(ax, e.map, dir);
    AsymptoticsSection as;
    for (const auto& r : o.direction) as.direction.push_back(rational_text(r));
    as.rho = dec(o.rho);
    as.rho_exact = o.rho_exact;
    as.alpha = rational_text(o.alpha);
    as.constant = dec(o.constant);
    as.constant_exact = o.constant_exact;
    for (const auto& c : ax.constants) {
      as.constants_re.push_back(dec(c.re));
      as.constants_im.push_back(dec(c.im));
    }
    as.hessian_det = dec(pd.hessian_det.re);
    as.k_max = spec.k_max;
    rep.asymptotics = as;
    {
      PrecisionScope scope(w.precision_bits);
      if (bmp::abs(ax.constant_imag) > Real(1e-20) * bmp::abs(ax.constant)) {
        rep.warnings.push_back("leading constant has imaginary part " + dec(ax.constant_imag));
      }
    }
    if (!reached(Stage::kVerify)) return rep;

    current = Stage::kVerify;
    if (spec.validation_n.empty()) {
      rep.warnings.push_back("no validation_n grid given; oracle validation skipped");
      return rep;
    }
    rep.validation = validate(spec, as, spec.validation_n);
    const auto& rows = rep.validation->rows;
    if (!rep.validation->converging) {
      throw MathFailure(FailureKind::kValidationFailed,
                        "relative error against the oracle does not converge over the grid");
    }
    if (spec.tolerance && parse_decimal(rows.back().relative_error) >= *spec.tolerance) {
      throw MathFailure(FailureKind::kValidationFailed,
                        "relative error " + format_real(parse_decimal(rows.back().relative_error), 6) +
                            " at n = " + std::to_string(rows.back().n) + " exceeds tolerance " +
                            format_real(*spec.tolerance, 6));
    }
  } catch (const MathFailure& f) {
    rep.failure = FailureSection{to_string(current), to_string(f.kind()), f.what()};
  }
  return rep;
}

int exit_code(const Report& r) { return r.failure ? 2 : 0; }

std::vector<Rational> empirical_coefficients(const ProblemSpec& spec,
                                             const std::vector<unsigned>& ns) {
  std::vector<Exponents> wanted;
  unsigned order = 0;
  for (unsigned n : ns) {
    Exponents e;
    unsigned total = 0;
    for (const auto& r : spec.direction) {
      Rational v = r * n;
      v.canonicalize();
      if (v.get_den() != 1) {
        throw ValidationError("n = " + std::to_string(n) + " gives the non-integral index " +
                              rational_text(v) + " in direction " + rational_text(r));
      }
      e.push_back(static_cast<std::uint32_t>(v.get_num().get_ui()));
      total += e.back();
    }
    order = std::max(order, total);
    wanted.push_back(e);
  }
  MultiPoly p = original_polynomial(spec);
  Rational constant = spec.branch_constant ? *spec.branch_constant : default_branch_constant(p);
  TruncatedSeries f = branch_expand_from(p, constant, order);
  std::vector<Rational> out;
  for (const auto& e : wanted) out.push_back(f.coefficient(e));
  return out;
}

ValidationSection validate(const ProblemSpec& spec, const AsymptoticsSection& as,
                           const std::vector<unsigned>& ns) {
  auto exact = empirical_coefficients(spec, ns);
  const Real rho = parse_decimal(as.rho);
  const Real c = parse_decimal(as.constant);
  Rational alpha_q(as.alpha);
  alpha_q.canonicalize();
  const Real alpha = to_real(alpha_q);
  std::optional<Real> control;
  ValidationSection v;
  if (spec.control_constant) {
    control = evaluate_expression(*spec.control_constant, {{"C", c}});
    v.control_label = spec.control_label;
    v.control_constant = dec(*control);
  }
  v.decreasing = true;
  std::optional<Real> previous;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    Real n = ns[i];
    Real scale = bmp::pow(rho, n) * bmp::pow(n, -alpha);
    Real predicted = c * scale;
    Real ex = to_real(exact[i]);
    Real err = bmp::abs(ex / predicted - 1);
    ValidationRow row;
    row.n = ns[i];
    row.exact = rational_text(exact[i]);
    row.predicted = dec(predicted);
    row.relative_error = dec(err);
    if (control) row.control_error = dec(bmp::abs(ex / (*control * scale) - 1));
    if (previous && !(err < *previous)) v.decreasing = false;
    previous = err;
    v.rows.push_back(row);
  }
  v.converging = v.decreasing;
  if (ns.size() >= 2) {
    Real first = parse_decimal(v.rows.front().relative_error);
    Real last = parse_decimal(v.rows.back().relative_error);
    Real shrink = bmp::sqrt(Real(ns.front()) / Real(ns.back()));
    if (!(last <= first * shrink)) v.converging = false;
  }
  return v;
}

ValidationSection validate(const ProblemSpec& spec, const std::vector<unsigned>& ns) {
  Report r = run(spec, Stage::kAsympt);
  if (r.failure) {
    throw MathFailure(FailureKind::kValidationFailed,
                      "cannot validate: " + r.failure->stage + " failed: " + r.failure->message);
  }
  return validate(spec, *r.asymptotics, ns);
}

// ---------------------------------------------------------------------------
// Expressions

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, const std::map<std::string, Real>& bindings)
      : text_(text), bindings_(bindings) {}

  Real parse() {
    Real v = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw ValidationError("expression '" + std::string(text_) + "': " + what + " at offset " +
                          std::to_string(pos_));
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Real expr() {
    Real v = term();
    for (;;) {
      if (eat('+')) {
        v += term();
      } else if (eat('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }
  Real term() {
    Real v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        Real d = unary();
        if (d == 0) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }
  Real unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    Real base = primary();
    if (eat('^')) {
      Real e = unary();  // right associative
      if (base > 0) return bmp::pow(base, e);
      if (e == bmp::round(e)) return bmp::pow(base, e);
      fail("non-integral power of a non-positive number");
    }
    return base;
  }
  Real primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Real v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
        ++pos_;
      }
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        std::size_t save = pos_++;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        } else {
          pos_ = save;
        }
      }
      return Real(std::string(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      if (name == "sqrt" || name == "exp" || name == "log") {
        if (!eat('(')) fail("expected '(' after " + name);
        Real v = expr();
        if (!eat(')')) fail("missing ')'");
        if (name == "sqrt") {
          if (v < 0) fail("square root of a negative number");
          return bmp::sqrt(v);
        }
        if (name == "exp") return bmp::exp(v);
        if (v <= 0) fail("log of a non-positive number");
        return bmp::log(v);
      }
      if (name == "pi") return real_pi();
      auto it = bindings_.find(name);
      if (it == bindings_.end()) fail("unknown name '" + name + "'");
      return it->second;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const std::map<std::string, Real>& bindings_;
  std::size_t pos_ = 0;
};

}  // namespace

Real evaluate_expression(std::string_view text, const std::map<std::string, Real>& bindings) {
  return ExprParser(text, bindings).parse();
}

}  // namespace algcoef

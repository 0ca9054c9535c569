#include "algcoef/pipeline.hpp"

#include <sstream>

namespace algcoef {

namespace {

using nlohmann::json;

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
  j[key] = v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> get_optional(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<T>();
}

json map_json(const IndexMap& m) { return json{{"matrix", m.matrix}, {"offset", m.offset}}; }

IndexMap map_from(const json& j) {
  IndexMap m;
  m.matrix = j.at("matrix").get<std::vector<std::vector<std::int64_t>>>();
  m.offset = j.at("offset").get<std::vector<std::int64_t>>();
  return m;
}

}  // namespace

json report_to_json(const Report& r) {
  json j;
  j["name"] = r.name;
  j["stage"] = r.stage;
  j["precision_bits"] = r.precision_bits;

  if (r.embedding) {
    const auto& e = *r.embedding;
    j["embedding"] = {{"variables", e.variables},
                      {"numerator", e.numerator},
                      {"denominator", e.denominator},
                      {"pivot", e.pivot},
                      {"multiplicity", e.multiplicity},
                      {"preprocessing", e.preprocessing},
                      {"preprocessed", e.preprocessed},
                      {"index_map", map_json(e.map)},
                      {"verified_order", e.verified_order},
                      {"verified", e.verified}};
  } else {
    j["embedding"] = nullptr;
  }

  if (r.certificate) {
    const auto& c = *r.certificate;
    j["certificate"] = {{"status", c.status},
                        {"k", c.k},
                        {"normalizer", c.normalizer},
                        {"aperiodic", c.aperiodic},
                        {"lattice_basis", c.lattice_basis},
                        {"lattice_index", c.lattice_index}};
  } else {
    j["certificate"] = nullptr;
  }

  if (r.critical) {
    const auto& c = *r.critical;
    json pts = json::array();
    for (const auto& p : c.points) {
      pts.push_back({{"re", p.re},
                     {"im", p.im},
                     {"residual", p.residual},
                     {"smooth", p.smooth},
                     {"positive", p.positive},
                     {"minimal", p.minimal},
                     {"precision_bits", p.precision_bits}});
    }
    j["critical"] = {{"direction", c.direction}, {"points", pts}, {"distinguished", c.distinguished}};
    put_optional(j["critical"], "selected", c.selected);
  } else {
    j["critical"] = nullptr;
  }

  if (r.asymptotics) {
    const auto& a = *r.asymptotics;
    json o = {{"direction", a.direction},  {"rho", a.rho},
              {"alpha", a.alpha},          {"constant", a.constant},
              {"constants_re", a.constants_re}, {"constants_im", a.constants_im},
              {"hessian_det", a.hessian_det},   {"k_max", a.k_max}};
    put_optional(o, "rho_exact", a.rho_exact);
    put_optional(o, "constant_exact", a.constant_exact);
    j["asymptotics"] = o;
  } else {
    j["asymptotics"] = nullptr;
  }

  if (r.validation) {
    const auto& v = *r.validation;
    json rows = json::array();
    for (const auto& row : v.rows) {
      json o = {{"n", row.n},
                {"exact", row.exact},
                {"predicted", row.predicted},
                {"relative_error", row.relative_error}};
      put_optional(o, "control_error", row.control_error);
      rows.push_back(o);
    }
    json o = {{"rows", rows}, {"decreasing", v.decreasing}, {"converging", v.converging}};
    put_optional(o, "control_label", v.control_label);
    put_optional(o, "control_constant", v.control_constant);
    j["validation"] = o;
  } else {
    j["validation"] = nullptr;
  }

  if (r.failure) {
    j["failure"] = {{"stage", r.failure->stage},
                    {"kind", r.failure->kind},
                    {"message", r.failure->message}};
  } else {
    j["failure"] = nullptr;
  }
  j["warnings"] = r.warnings;
  return j;
}

Report report_from_json(const json& j) {
  try {
    Report r;
    r.name = j.at("name").get<std::string>();
    r.stage = j.at("stage").get<std::string>();
    r.precision_bits = j.at("precision_bits").get<unsigned>();
    if (const auto& e = j.at("embedding"); !e.is_null()) {
      EmbeddingSection s;
      s.variables = e.at("variables").get<std::vector<std::string>>();
      s.numerator = e.at("numerator").get<std::string>();
      s.denominator = e.at("denominator").get<std::string>();
      s.pivot = e.at("pivot").get<std::string>();
      s.multiplicity = e.at("multiplicity").get<unsigned>();
      s.preprocessing = e.at("preprocessing").get<std::vector<std::string>>();
      s.preprocessed = e.at("preprocessed").get<std::string>();
      s.map = map_from(e.at("index_map"));
      s.verified_order = e.at("verified_order").get<unsigned>();
      s.verified = e.at("verified").get<bool>();
      r.embedding = s;
    }
    if (const auto& c = j.at("certificate"); !c.is_null()) {
      CertificateSection s;
      s.status = c.at("status").get<std::string>();
      s.k = c.at("k").get<std::string>();
      s.normalizer = c.at("normalizer").get<std::string>();
      s.aperiodic = c.at("aperiodic").get<bool>();
      s.lattice_basis = c.at("lattice_basis").get<std::vector<std::vector<std::string>>>();
      s.lattice_index = c.at("lattice_index").get<std::string>();
      r.certificate = s;
    }
    if (const auto& c = j.at("critical"); !c.is_null()) {
      CriticalSection s;
      s.direction = c.at("direction").get<std::vector<std::string>>();
      for (const auto& p : c.at("points")) {
        PointSection ps;
        ps.re = p.at("re").get<std::vector<std::string>>();
        ps.im = p.at("im").get<std::vector<std::string>>();
        ps.residual = p.at("residual").get<std::string>();
        ps.smooth = p.at("smooth").get<std::string>();
        ps.positive = p.at("positive").get<std::string>();
        ps.minimal = p.at("minimal").get<std::string>();
        ps.precision_bits = p.at("precision_bits").get<unsigned>();
        s.points.push_back(ps);
      }
      s.selected = get_optional<std::size_t>(c, "selected");
      s.distinguished = c.at("distinguished").get<std::string>();
      r.critical = s;
    }
    if (const auto& a = j.at("asymptotics"); !a.is_null()) {
      AsymptoticsSection s;
      s.direction = a.at("direction").get<std::vector<std::string>>();
      s.rho = a.at("rho").get<std::string>();
      s.rho_exact = get_optional<std::string>(a, "rho_exact");
      s.alpha = a.at("alpha").get<std::string>();
      s.constant = a.at("constant").get<std::string>();
      s.constant_exact = get_optional<std::string>(a, "constant_exact");
      s.constants_re = a.at("constants_re").get<std::vector<std::string>>();
      s.constants_im = a.at("constants_im").get<std::vector<std::string>>();
      s.hessian_det = a.at("hessian_det").get<std::string>();
      s.k_max = a.at("k_max").get<unsigned>();
      r.asymptotics = s;
    }
    if (const auto& v = j.at("validation"); !v.is_null()) {
      ValidationSection s;
      for (const auto& row : v.at("rows")) {
        ValidationRow vr;
        vr.n = row.at("n").get<unsigned>();
        vr.exact = row.at("exact").get<std::string>();
        vr.predicted = row.at("predicted").get<std::string>();
        vr.relative_error = row.at("relative_error").get<std::string>();
        vr.control_error = get_optional<std::string>(row, "control_error");
        s.rows.push_back(vr);
      }
      s.decreasing = v.at("decreasing").get<bool>();
      s.converging = v.at("converging").get<bool>();
      s.control_label = get_optional<std::string>(v, "control_label");
      s.control_constant = get_optional<std::string>(v, "control_constant");
      r.validation = s;
    }
    if (const auto& f = j.at("failure"); !f.is_null()) {
      r.failure = FailureSection{f.at("stage").get<std::string>(), f.at("kind").get<std::string>(),
                                 f.at("message").get<std::string>()};
    }
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed report: ") + e.what());
  }
}

std::string render_text(const Report& r) {
  std::ostringstream os;
  os << "problem: " << r.name << "\nstage: " << r.stage << "\nprecision: " << r.precision_bits
     << " bits\n";
  if (r.embedding) {
    const auto& e = *r.embedding;
    os << "\nembedding\n";
    os << "  variables: ";
    for (std::size_t i = 0; i < e.variables.size(); ++i) os << (i ? ", " : "") << e.variables[i];
    os << "\n  pivot: " << e.pivot << " (multiplicity " << e.multiplicity << ")\n";
    for (const auto& s : e.preprocessing) os << "  step: " << s << "\n";
    os << "  preprocessed: " << e.preprocessed << " = 0\n";
    os << "  G = " << e.numerator << "\n  H = " << e.denominator << "\n";
    os << "  index map:";
    for (std::size_t i = 0; i < e.map.matrix.size(); ++i) {
      os << (i ? "; " : " ") << e.variables[i] << " <- [";
      for (std::size_t k = 0; k < e.map.matrix[i].size(); ++k) {
        os << (k ? " " : "") << e.map.matrix[i][k];
      }
      os << "] + " << e.map.offset[i];
    }
    os << "\n  identity through order " << e.verified_order << ": "
       << (e.verified ? "verified" : "FAILED") << "\n";
  }
  if (r.certificate) {
    const auto& c = *r.certificate;
    os << "\ncertificate\n  combinatorial: " << c.status << "\n  K = " << c.k
       << "\n  H(0) = " << c.normalizer << "\n  aperiodic: " << (c.aperiodic ? "yes" : "no")
       << " (lattice index " << c.lattice_index << ")\n";
  }
  if (r.critical) {
    const auto& c = *r.critical;
    os << "\ncritical points (direction";
    for (const auto& d : c.direction) os << " " << d;
    os << ")\n";
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      const auto& p = c.points[i];
      os << "  [" << i << "]" << (c.selected && *c.selected == i ? " *" : "") << "\n";
      for (std::size_t k = 0; k < p.re.size(); ++k) {
        os << "      " << p.re[k] << " + " << p.im[k] << "i\n";
      }
      os << "      residual " << p.residual << ", smooth " << p.smooth << ", positive "
         << p.positive << ", minimal " << p.minimal << "\n";
    }
    if (!c.distinguished.empty()) os << "  distinguished variable: " << c.distinguished << "\n";
  }
  if (r.asymptotics) {
    const auto& a = *r.asymptotics;
    os << "\nasymptotics  [x^(n r)] ~ C n^(-alpha) rho^n, r =";
    for (const auto& d : a.direction) os << " " << d;
    os << "\n  rho = " << a.rho;
    if (a.rho_exact) os << "  (" << *a.rho_exact << ")";
    os << "\n  alpha = " << a.alpha << "\n  C = " << a.constant;
    if (a.constant_exact) os << "  (" << *a.constant_exact << ")";
    os << "\n";
    for (std::size_t k = 0; k < a.constants_re.size(); ++k) {
      os << "  a_" << k << " = " << a.constants_re[k] << " + " << a.constants_im[k] << "i\n";
    }
  }
  if (r.validation) {
    const auto& v = *r.validation;
    os << "\nvalidation\n";
    for (const auto& row : v.rows) {
      os << "  n = " << row.n << "  rel. error " << row.relative_error;
      if (row.control_error) os << "  control " << *row.control_error;
      os << "\n";
    }
    if (v.control_label) os << "  control: " << *v.control_label << " = " << *v.control_constant << "\n";
    os << "  errors decreasing: " << (v.decreasing ? "yes" : "no")
       << ", converging: " << (v.converging ? "yes" : "no") << "\n";
  }
  if (r.failure) {
    os << "\nFAILURE at " << r.failure->stage << ": " << r.failure->kind << "\n  "
       << r.failure->message << "\n";
  }
  for (const auto& w : r.warnings) os << "\nwarning: " << w;
  if (!r.warnings.empty()) os << "\n";
  return os.str();
}

}  // namespace algcoef

#pragma once

#include "algcoef/asympt.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

// Problem files, the staged pipeline, and reports.
namespace algcoef {

enum class Stage { kEmbed, kCertify, kCritical, kAsympt, kVerify, kAll };
const char* to_string(Stage s);
/// Throws ValidationError for an unknown name.
Stage parse_stage(std::string_view name);

/// A preprocessing step as written in a problem file.
struct StepSpec {
  std::string kind;      // "additive" | "monomial" | "multiplicative"
  std::string shift;     // additive: polynomial in the original variables
  std::string source;    // monomial: source ↦ carrier·source
  std::string carrier;
  std::string variable;  // multiplicative
  friend bool operator==(const StepSpec&, const StepSpec&) = default;
};

/// One problem file. The series variable is always Y; `variables` are the
/// original variables and must not include Y.
struct ProblemSpec {
  std::string name;
  std::vector<std::string> variables;
  std::string minimal_polynomial;  // over Y, variables and parameters
  std::map<std::string, Rational> parameters;
  std::optional<Rational> branch_constant;
  std::vector<StepSpec> preprocessing;
  std::string pivot = "auto";
  unsigned multiplicity = 1;
  int shift_search_degree = 3;
  std::vector<Rational> direction;  // original variables
  unsigned oracle_order = 25;       // order of the embedding identity check
  unsigned k_max = 1;
  std::vector<unsigned> validation_n;
  /// The verify stage fails when the relative error at the last n exceeds
  /// this, or when the errors do not converge.
  std::optional<Real> tolerance;
  /// Optional comparison constant for the validation table, as an
  /// expression evaluated with the computed constant bound to `C`.
  std::optional<std::string> control_constant;
  std::string control_label;
  /// Expected values for tests; ignored by the pipeline.
  nlohmann::json checks = nlohmann::json::array();
};

/// Throws ValidationError naming `origin` (and line/column for JSON syntax).
ProblemSpec parse_problem(const nlohmann::json& j, const std::string& origin = "<input>");
ProblemSpec parse_problem_text(const std::string& text, const std::string& origin = "<input>");
ProblemSpec load_problem(const std::string& path);
nlohmann::json problem_to_json(const ProblemSpec& spec);

/// Y-indexed minimal polynomial over [Y, variables] with parameters
/// substituted.
MultiPoly original_polynomial(const ProblemSpec& spec);

struct EmbeddingSection {
  std::vector<std::string> variables;  // Y first
  std::string numerator;
  std::string denominator;
  std::string pivot;
  unsigned multiplicity = 1;
  std::vector<std::string> preprocessing;
  std::string preprocessed;  // polynomial annihilating the embedded series
  IndexMap map;
  unsigned verified_order = 0;
  bool verified = false;
  friend bool operator==(const EmbeddingSection&, const EmbeddingSection&) = default;
};

struct CertificateSection {
  std::string status;  // "certified" | "unknown"
  std::string k;
  std::string normalizer;
  bool aperiodic = false;
  std::vector<std::vector<std::string>> lattice_basis;
  std::string lattice_index;
  friend bool operator==(const CertificateSection&, const CertificateSection&) = default;
};

struct PointSection {
  std::vector<std::string> re;
  std::vector<std::string> im;
  std::string residual;
  std::string smooth;
  std::string positive;
  std::string minimal;
  unsigned precision_bits = 0;
  friend bool operator==(const PointSection&, const PointSection&) = default;
};

struct CriticalSection {
  std::vector<std::string> direction;  // embedded
  std::vector<PointSection> points;
  std::optional<std::size_t> selected;
  std::string distinguished;
  friend bool operator==(const CriticalSection&, const CriticalSection&) = default;
};

struct AsymptoticsSection {
  std::vector<std::string> direction;  // original
  std::string rho;
  std::optional<std::string> rho_exact;
  std::string alpha;
  std::string constant;
  std::optional<std::string> constant_exact;
  std::vector<std::string> constants_re;  // embedded a_0..a_k
  std::vector<std::string> constants_im;
  std::string hessian_det;
  unsigned k_max = 1;
  friend bool operator==(const AsymptoticsSection&, const AsymptoticsSection&) = default;
};

struct ValidationRow {
  unsigned n = 0;
  std::string exact;
  std::string predicted;
  std::string relative_error;
  std::optional<std::string> control_error;
  friend bool operator==(const ValidationRow&, const ValidationRow&) = default;
};

struct ValidationSection {
  std::vector<ValidationRow> rows;
  bool decreasing = false;
  /// Decreasing, and the last error is at most first·sqrt(n_first/n_last);
  /// a wrong constant leaves the error roughly flat.
  bool converging = false;
  std::optional<std::string> control_label;
  std::optional<std::string> control_constant;
  friend bool operator==(const ValidationSection&, const ValidationSection&) = default;
};

struct FailureSection {
  std::string stage;
  std::string kind;
  std::string message;
  friend bool operator==(const FailureSection&, const FailureSection&) = default;
};

struct Report {
  std::string name;
  std::string stage;
  unsigned precision_bits = 0;
  std::optional<EmbeddingSection> embedding;
  std::optional<CertificateSection> certificate;
  std::optional<CriticalSection> critical;
  std::optional<AsymptoticsSection> asymptotics;
  std::optional<ValidationSection> validation;
  std::optional<FailureSection> failure;
  std::vector<std::string> warnings;
  friend bool operator==(const Report&, const Report&) = default;
};

nlohmann::json report_to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);
/// Human-readable rendering of the same content.
std::string render_text(const Report& r);

/// Runs the stages in order up to `stage`. Mathematical hard stops end the
/// run with a failure section; validation errors propagate.
Report run(const ProblemSpec& spec, Stage stage);

/// 0 on success, 2 when the report carries a failure section.
int exit_code(const Report& r);

/// Exact [x^{n·direction}] f for each n. Throws ValidationError when some
/// n·direction is not integral.
std::vector<Rational> empirical_coefficients(const ProblemSpec& spec,
                                             const std::vector<unsigned>& ns);

/// |exact/predicted − 1| per n against C·n^{-α}·ρ^n from `asymptotics`.
ValidationSection validate(const ProblemSpec& spec, const AsymptoticsSection& asymptotics,
                           const std::vector<unsigned>& ns);
/// Runs the pipeline through asymptotics first.
ValidationSection validate(const ProblemSpec& spec, const std::vector<unsigned>& ns);

/// Evaluates a real expression: numbers, + - * / ^, parentheses, pi, sqrt,
/// exp, log and bound names. Throws ValidationError on bad input.
Real evaluate_expression(std::string_view text, const std::map<std::string, Real>& bindings = {});

}  // namespace algcoef

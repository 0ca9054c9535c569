#include "algcoef/polycore.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace algcoef {

const char* to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::kNoBranchThroughOrigin: return "no_branch_through_origin";
    case FailureKind::kDegenerateBranch: return "h2_failure";
    case FailureKind::kH1Failure: return "h1_failure";
    case FailureKind::kBranchSelection: return "branch_selection";
    case FailureKind::kInvalidEmbedding: return "invalid_embedding";
    case FailureKind::kCertificateUnknown: return "certificate_unknown";
    case FailureKind::kPeriodicSupport: return "periodic_support";
    case FailureKind::kNoAffineCriticalPoints: return "no_affine_critical_points";
    case FailureKind::kNoPositiveCriticalPoint: return "no_positive_critical_point";
    case FailureKind::kAmbiguousMinimality: return "ambiguous_minimality";
    case FailureKind::kNonSmoothPoint: return "non_smooth_point";
    case FailureKind::kDegenerateDirection: return "degenerate_direction";
    case FailureKind::kExpansionVanishes: return "expansion_vanishes";
    case FailureKind::kEliminationDegenerate: return "elimination_degenerate";
    case FailureKind::kPrecisionExhausted: return "precision_exhausted";
    case FailureKind::kValidationFailed: return "validation_failed";
  }
  return "unknown";
}

// ---------------------------------------------------------------- VarList

bool is_valid_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

VarList::VarList(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw ValidationError("variable list must be nonempty");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!is_valid_identifier(n)) throw ValidationError("invalid variable name '" + n + "'");
    if (!seen.insert(n).second) throw ValidationError("duplicate variable '" + n + "'");
  }
}

std::optional<std::size_t> VarList::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t VarList::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw ValidationError("unknown variable '" + std::string(name) + "'");
}

VarList VarList::without(std::size_t index) const {
  std::vector<std::string> n = names_;
  n.erase(n.begin() + static_cast<std::ptrdiff_t>(index));
  return VarList(std::move(n));
}

VarList VarList::with_front(const std::string& name) const {
  std::vector<std::string> n;
  n.reserve(names_.size() + 1);
  n.push_back(name);
  n.insert(n.end(), names_.begin(), names_.end());
  return VarList(std::move(n));
}

// ---------------------------------------------------------------- MultiPoly

unsigned total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
  unsigned da = algcoef::total_degree(a), db = algcoef::total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

MultiPoly MultiPoly::constant(VarList vars, const Rational& c) {
  MultiPoly p(std::move(vars));
  p.add_term(Exponents(p.vars_.size(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(VarList vars, std::size_t index) {
  MultiPoly p(std::move(vars));
  if (index >= p.vars_.size()) throw ValidationError("variable index out of range");
  Exponents e(p.vars_.size(), 0);
  e[index] = 1;
  p.add_term(e, 1);
  return p;
}

MultiPoly MultiPoly::variable(VarList vars, std::string_view name) {
  std::size_t i = vars.index_of(name);
  return variable(std::move(vars), i);
}

MultiPoly MultiPoly::monomial(VarList vars, Exponents e, const Rational& c) {
  MultiPoly p(std::move(vars));
  if (e.size() != p.vars_.size()) throw ValidationError("exponent length mismatch");
  p.add_term(e, c);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && algcoef::total_degree(terms_.begin()->first) == 0);
}

Rational MultiPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational MultiPoly::constant_term() const { return coefficient(Exponents(vars_.size(), 0)); }

unsigned MultiPoly::degree(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

unsigned MultiPoly::total_degree() const {
  return terms_.empty() ? 0 : algcoef::total_degree(terms_.rbegin()->first);
}

const std::pair<const Exponents, Rational>& MultiPoly::leading_term() const {
  return *terms_.rbegin();
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::vector<MultiPoly> MultiPoly::coefficients_in(std::size_t var) const {
  std::vector<MultiPoly> out(degree(var) + 1, MultiPoly(vars_));
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    f[var] = 0;
    out[e[var]].add_term(f, c);
  }
  return out;
}

namespace {

void require_same_vars(const MultiPoly& a, const MultiPoly& b) {
  if (!(a.vars() == b.vars()))
    throw ValidationError("polynomials are over different variable lists");
}

}  // namespace

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (vars_.empty()) vars_ = o.vars_;
  require_same_vars(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (vars_.empty()) vars_ = o.vars_;
  require_same_vars(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [e, v] : r.terms_) v = -v;
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  require_same_vars(a, b);
  MultiPoly r(a.vars_);
  Exponents e(a.vars_.size());
  Rational t;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      t = ca * cb;
      r.add_term(e, t);
    }
  }
  return r;
}

MultiPoly MultiPoly::pow(unsigned n) const {
  MultiPoly result = constant(vars_, 1);
  MultiPoly base = *this;
  while (n > 0) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n > 0) base = base * base;
  }
  return result;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += vars_[i];
      if (e[i] > 1) mono += '^' + std::to_string(e[i]);
    }
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mono.empty()) {
      out << mag.get_str();
    } else if (mag == 1) {
      out << mono;
    } else {
      out << mag.get_str() << '*' << mono;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, const VarList& vars) : text_(text), vars_(vars) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("syntax error at offset " + std::to_string(pos_) + ": " + what, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  MultiPoly expr() {
    bool negate = false;
    if (peek() == '-') {
      ++pos_;
      negate = true;
    }
    MultiPoly acc = term();
    if (negate) acc = -acc;
    for (;;) {
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      MultiPoly t = term();
      if (c == '+')
        acc += t;
      else
        acc -= t;
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (peek() == '*') {
      ++pos_;
      acc = acc * factor();
    }
    return acc;
  }

  MultiPoly factor() {
    MultiPoly b = base();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected unsigned exponent");
      Integer e = digits();
      if (e > 10000) fail("exponent too large");
      b = b.pow(static_cast<unsigned>(e.get_ui()));
    }
    return b;
  }

  Integer digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  MultiPoly base() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    bool negative = false;
    if (c == '-' && pos_ + 1 < text_.size() &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      negative = true;
      ++pos_;
      c = text_[pos_];
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational value(digits());
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
          fail("expected unsigned denominator");
        Integer den = digits();
        if (den == 0) fail("zero denominator");
        value /= Rational(den);
      }
      if (negative) value = -value;
      return MultiPoly::constant(vars_, value);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto idx = vars_.find(name);
      if (!idx)
        throw ParseError("undeclared variable '" + name + "' at offset " + std::to_string(start),
                         start);
      return MultiPoly::variable(vars_, *idx);
    }
    fail("expected variable, number or '('");
  }

  std::string_view text_;
  const VarList& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_polynomial(std::string_view text, const VarList& vars) {
  return Parser(text, vars).parse();
}

// ---------------------------------------------------------------- calculus

MultiPoly partial_derivative(const MultiPoly& p, std::size_t var) {
  if (var >= p.vars().size()) throw ValidationError("variable index out of range");
  MultiPoly r(p.vars());
  for (const auto& [e, c] : p.terms()) {
    if (e[var] == 0) continue;
    Exponents f = e;
    --f[var];
    r.add_term(f, c * e[var]);
  }
  return r;
}

MultiPoly partial_derivative(const MultiPoly& p, std::string_view var) {
  return partial_derivative(p, p.vars().index_of(var));
}

MultiPoly substitute(const MultiPoly& p, const std::map<std::string, MultiPoly>& assignments) {
  const VarList& vars = p.vars();
  std::vector<MultiPoly> values;
  values.reserve(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) values.push_back(MultiPoly::variable(vars, i));
  for (const auto& [name, value] : assignments) {
    std::size_t i = vars.index_of(name);
    if (!(value.vars() == vars)) values[i] = change_vars(value, vars);
    else values[i] = value;
  }
  // powers[i][k] = values[i]^k, filled lazily
  std::vector<std::vector<MultiPoly>> powers(vars.size());
  auto power = [&](std::size_t i, unsigned k) -> const MultiPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(MultiPoly::constant(vars, 1));
    while (cache.size() <= k) cache.push_back(cache.back() * values[i]);
    return cache[k];
  };
  MultiPoly result(vars);
  for (const auto& [e, c] : p.terms()) {
    MultiPoly t = MultiPoly::constant(vars, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) t = t * power(i, e[i]);
    result += t;
  }
  return result;
}

MultiPoly change_vars(const MultiPoly& p, const VarList& target) {
  const VarList& src = p.vars();
  std::vector<std::optional<std::size_t>> where(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) where[i] = target.find(src[i]);
  MultiPoly r(target);
  for (const auto& [e, c] : p.terms()) {
    Exponents f(target.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!where[i])
        throw ValidationError("variable '" + src[i] + "' occurs but is absent from target list");
      f[*where[i]] = e[i];
    }
    r.add_term(f, c);
  }
  return r;
}

std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw ValidationError("division by zero polynomial");
  require_same_vars(a, b);
  MultiPoly q(a.vars());
  MultiPoly r = a;
  const auto& [lb_e, lb_c] = b.leading_term();
  Exponents t(lb_e.size());
  while (!r.is_zero()) {
    const auto& [lr_e, lr_c] = r.leading_term();
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (lr_e[i] < lb_e[i]) return std::nullopt;
      t[i] = lr_e[i] - lb_e[i];
    }
    MultiPoly step = MultiPoly::monomial(a.vars(), t, lr_c / lb_c);
    q += step;
    r -= step * b;
  }
  return q;
}

Exponents monomial_content(const MultiPoly& p) {
  Exponents m(p.vars().size(), 0);
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (first) {
      m = e;
      first = false;
    } else {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
    }
  }
  return m;
}

MultiPoly divide_by_monomial(const MultiPoly& p, const Exponents& m) {
  MultiPoly r(p.vars());
  for (const auto& [e, c] : p.terms()) {
    Exponents f = e;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] < m[i]) throw ValidationError("monomial does not divide polynomial");
      f[i] -= m[i];
    }
    r.add_term(f, c);
  }
  return r;
}

Rational rational_content(const MultiPoly& p) {
  Integer g = 0, l = 1;
  for (const auto& [e, c] : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  if (g == 0) return 1;
  Rational r(g, l);
  r.canonicalize();
  return r;
}

MultiPoly primitive_part(const MultiPoly& p) {
  if (p.is_zero()) return p;
  MultiPoly r = divide_by_monomial(p, monomial_content(p));
  r *= Rational(1) / rational_content(r);
  return r;
}

// ---------------------------------------------------------------- resultant

namespace {

MultiPoly bareiss_determinant(std::vector<std::vector<MultiPoly>> m, const VarList& vars) {
  const std::size_t n = m.size();
  if (n == 0) return MultiPoly::constant(vars, 1);
  int sign = 1;
  MultiPoly prev = MultiPoly::constant(vars, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return MultiPoly(vars);
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        auto q = divide_exact(num, prev);
        if (!q) throw std::logic_error("Bareiss step not exact");
        m[i][j] = std::move(*q);
      }
      m[i][k] = MultiPoly(vars);
    }
    prev = m[k][k];
  }
  MultiPoly det = m[n - 1][n - 1];
  if (sign < 0) det = -det;
  return det;
}

}  // namespace

MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, std::size_t var) {
  require_same_vars(p, q);
  const VarList& vars = p.vars();
  if (var >= vars.size()) throw ValidationError("variable index out of range");
  unsigned m = p.is_zero() ? 0 : p.degree(var);
  unsigned n = q.is_zero() ? 0 : q.degree(var);
  if (m == 0 && n == 0)
    throw ValidationError("resultant: both polynomials are constant in '" + vars[var] + "'");
  if (p.is_zero() || q.is_zero()) return MultiPoly(vars);
  if (m == 0) return p.pow(n);
  if (n == 0) return q.pow(m);
  auto pc = p.coefficients_in(var);
  auto qc = q.coefficients_in(var);
  const std::size_t size = m + n;
  std::vector<std::vector<MultiPoly>> s(size, std::vector<MultiPoly>(size, MultiPoly(vars)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k <= m; ++k) s[i][i + (m - k)] = pc[k];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k <= n; ++k) s[n + i][i + (n - k)] = qc[k];
  return bareiss_determinant(std::move(s), vars);
}

MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, std::string_view var) {
  return resultant(p, q, p.vars().index_of(var));
}

MultiPoly discriminant(const MultiPoly& p, std::size_t var) {
  unsigned n = p.degree(var);
  if (n < 1) throw ValidationError("discriminant needs positive degree");
  MultiPoly res = resultant(p, partial_derivative(p, var), var);
  MultiPoly lc = p.coefficients_in(var).back();
  auto q = divide_exact(res, lc);
  if (!q) throw std::logic_error("discriminant: leading coefficient does not divide resultant");
  if ((n * (n - 1) / 2) % 2 == 1) return -*q;
  return *q;
}

// ---------------------------------------------------------------- evaluation

bool Point::is_exact() const {
  return std::all_of(coords.begin(), coords.end(),
                     [](const Coord& c) { return std::holds_alternative<Rational>(c); });
}

namespace {

template <class T, class One>
T evaluate_generic(const MultiPoly& p, std::span<const T> pt, One one,
                   auto&& from_rational) {
  if (pt.size() != p.vars().size())
    throw ValidationError("dimension mismatch: polynomial has " +
                          std::to_string(p.vars().size()) + " variables, point has " +
                          std::to_string(pt.size()));
  std::vector<std::vector<T>> powers(pt.size());
  auto power = [&](std::size_t i, unsigned k) -> const T& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(one);
    while (cache.size() <= k) cache.push_back(cache.back() * pt[i]);
    return cache[k];
  };
  T sum = from_rational(Rational(0));
  for (const auto& [e, c] : p.terms()) {
    T t = from_rational(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) t = t * power(i, e[i]);
    sum = sum + t;
  }
  return sum;
}

}  // namespace

Rational evaluate(const MultiPoly& p, std::span<const Rational> pt) {
  return evaluate_generic<Rational>(p, pt, Rational(1), [](const Rational& q) { return q; });
}

Real evaluate(const MultiPoly& p, std::span<const Real> pt) {
  return evaluate_generic<Real>(p, pt, Real(1), [](const Rational& q) { return to_real(q); });
}

Complex evaluate(const MultiPoly& p, std::span<const Complex> pt) {
  return evaluate_generic<Complex>(p, pt, Complex(Real(1)),
                                   [](const Rational& q) { return Complex(q); });
}

Real evaluate_magnitude(const MultiPoly& p, std::span<const Complex> pt) {
  std::vector<Real> mags;
  mags.reserve(pt.size());
  for (const auto& z : pt) mags.push_back(abs(z));
  Real sum = 0;
  for (const auto& [e, c] : p.terms()) {
    Real t = to_real(abs(c));
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) t *= boost::multiprecision::pow(mags[i], e[i]);
    sum += t;
  }
  return sum;
}

Number evaluate(const MultiPoly& p, const Point& pt) {
  if (pt.coords.size() != p.vars().size())
    throw ValidationError("dimension mismatch: polynomial has " +
                          std::to_string(p.vars().size()) + " variables, point has " +
                          std::to_string(pt.coords.size()));
  if (pt.is_exact()) {
    std::vector<Rational> q;
    for (const auto& c : pt.coords) q.push_back(std::get<Rational>(c));
    return evaluate(p, std::span<const Rational>(q));
  }
  unsigned bits = 128;
  for (const auto& c : pt.coords) {
    if (const Real* r = std::get_if<Real>(&c)) {
      unsigned b = static_cast<unsigned>(mpfr_get_prec(r->backend().data()));
      if (b < 128) throw ValidationError("floating coordinates must carry at least 128 bits");
      bits = std::max(bits, b);
    }
  }
  PrecisionScope scope(bits);
  std::vector<Real> x;
  for (const auto& c : pt.coords) {
    if (const Rational* q = std::get_if<Rational>(&c))
      x.push_back(to_real(*q));
    else
      x.push_back(Real(std::get<Real>(c)));
  }
  return evaluate(p, std::span<const Real>(x));
}

// ---------------------------------------------------------------- univariate

UniPoly to_univariate(const MultiPoly& p, std::size_t var) {
  UniPoly u(p.is_zero() ? 1 : p.degree(var) + 1, Rational(0));
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != var && e[i] != 0)
        throw ValidationError("polynomial depends on '" + p.vars()[i] + "'");
    u[e[var]] = c;
  }
  trim(u);
  return u;
}

void trim(UniPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

UniPoly uni_derivative(const UniPoly& p) {
  UniPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

void uni_divmod(const UniPoly& a, const UniPoly& b, UniPoly& quotient, UniPoly& remainder) {
  UniPoly bb = b;
  trim(bb);
  if (bb.empty()) throw ValidationError("division by zero polynomial");
  remainder = a;
  trim(remainder);
  quotient.assign(remainder.size() >= bb.size() ? remainder.size() - bb.size() + 1 : 0,
                  Rational(0));
  const Rational& lead = bb.back();
  while (remainder.size() >= bb.size() && !remainder.empty()) {
    std::size_t shift = remainder.size() - bb.size();
    Rational f = remainder.back() / lead;
    quotient[shift] = f;
    for (std::size_t i = 0; i < bb.size(); ++i) remainder[i + shift] -= f * bb[i];
    remainder.pop_back();
    trim(remainder);
  }
  trim(quotient);
}

UniPoly uni_gcd(UniPoly a, UniPoly b) {
  trim(a);
  trim(b);
  UniPoly q, r;
  while (!b.empty()) {
    uni_divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
    if (!b.empty()) {
      Rational lead = b.back();
      for (auto& c : b) c /= lead;
    }
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

UniPoly uni_squarefree(const UniPoly& p) {
  UniPoly g = uni_gcd(p, uni_derivative(p));
  if (g.size() <= 1) return p;
  UniPoly q, r;
  uni_divmod(p, g, q, r);
  return q;
}

Rational uni_evaluate(const UniPoly& p, const Rational& t) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
  return acc;
}

namespace {

std::vector<Integer> divisors(Integer n) {
  n = abs(n);
  if (n > Integer("1000000000000"))
    throw ValidationError("coefficient too large for the rational root search");
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::vector<Rational> uni_rational_roots(const UniPoly& p_in) {
  UniPoly p = p_in;
  trim(p);
  std::vector<Rational> roots;
  if (p.size() <= 1) return roots;
  std::size_t low = 0;
  while (p[low] == 0) ++low;
  if (low > 0) roots.emplace_back(0);
  UniPoly q(p.begin() + static_cast<std::ptrdiff_t>(low), p.end());
  if (q.size() <= 1) return roots;
  Integer l = 1;
  for (const auto& c : q) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> coeffs;
  for (const auto& c : q) coeffs.emplace_back(Integer(c * l));
  std::set<Rational> found;
  for (const auto& num : divisors(coeffs.front())) {
    for (const auto& den : divisors(coeffs.back())) {
      for (int s : {1, -1}) {
        Rational cand(num * s, den);
        cand.canonicalize();
        if (uni_evaluate(q, cand) == 0) found.insert(cand);
      }
    }
  }
  roots.insert(roots.end(), found.begin(), found.end());
  return roots;
}

}  // namespace algcoef

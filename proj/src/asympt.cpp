#include "algcoef/asympt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace algcoef {

namespace {

namespace bmp = boost::multiprecision;

unsigned degree_of(const Exponents& e) { return total_degree(e); }

Real threshold(double v) { return Real(v); }

}  // namespace

// ---------------------------------------------------------------------------
// LocalSeries

LocalSeries::LocalSeries(std::size_t nvars, unsigned order)
    : shape_(nvars, order), c_(shape_.size()) {}

LocalSeries LocalSeries::constant(std::size_t nvars, unsigned order, const Complex& c) {
  LocalSeries s(nvars, order);
  s.c_[0] = c;
  return s;
}

LocalSeries LocalSeries::variable(std::size_t nvars, unsigned order, std::size_t var,
                                  const Complex& c) {
  LocalSeries s(nvars, order);
  if (order >= 1) s.c_[s.shape_.stride(var)] = c;
  return s;
}

LocalSeries& LocalSeries::operator+=(const LocalSeries& o) {
  if (!(shape_ == o.shape_)) throw std::invalid_argument("LocalSeries shape mismatch");
  for (std::size_t i : shape_.live()) c_[i] += o.c_[i];
  return *this;
}

LocalSeries& LocalSeries::operator-=(const LocalSeries& o) {
  if (!(shape_ == o.shape_)) throw std::invalid_argument("LocalSeries shape mismatch");
  for (std::size_t i : shape_.live()) c_[i] -= o.c_[i];
  return *this;
}

LocalSeries& LocalSeries::operator*=(const Complex& s) {
  for (std::size_t i : shape_.live()) c_[i] *= s;
  return *this;
}

LocalSeries operator*(const LocalSeries& a, const LocalSeries& b) {
  if (!(a.shape_ == b.shape_)) throw std::invalid_argument("LocalSeries shape mismatch");
  const auto& live = a.shape_.live();
  const auto& exps = a.shape_.live_exponents();
  const unsigned order = a.order();
  LocalSeries out(a.nvars(), order);
  // Mixed-radix indices add without carry while the total degree fits.
  for (std::size_t i = 0; i < live.size(); ++i) {
    const Complex& ca = a.c_[live[i]];
    if (ca.re == 0 && ca.im == 0) continue;
    unsigned di = degree_of(exps[i]);
    for (std::size_t j = 0; j < live.size(); ++j) {
      if (di + degree_of(exps[j]) > order) break;  // live is grlex sorted
      const Complex& cb = b.c_[live[j]];
      if (cb.re == 0 && cb.im == 0) continue;
      out.c_[live[i] + live[j]] += ca * cb;
    }
  }
  return out;
}

LocalSeries LocalSeries::inverse() const {
  const Complex& c0 = c_[0];
  if (c0.re == 0 && c0.im == 0) throw std::domain_error("LocalSeries inverse: zero constant term");
  Complex inv0 = Complex(Real(1)) / c0;
  // 1/(c0(1+u)) = inv0 · Σ (-u)^k, by Horner.
  LocalSeries u = *this * inv0;
  u.c_[0] = Complex();
  LocalSeries one = constant(nvars(), order(), Complex(Real(1)));
  LocalSeries acc = one;
  for (unsigned k = 0; k < order(); ++k) acc = one - u * acc;
  return acc * inv0;
}

LocalSeries LocalSeries::exp() const {
  Complex e0 = algcoef::exp(c_[0]);
  LocalSeries u = *this;
  u.c_[0] = Complex();
  LocalSeries one = constant(nvars(), order(), Complex(Real(1)));
  LocalSeries acc = one;
  for (unsigned k = order(); k >= 1; --k) {
    acc = one + (u * acc) * Complex(Real(1) / Real(k));
  }
  return acc * e0;
}

LocalSeries LocalSeries::log() const {
  const Complex& c0 = c_[0];
  if (c0.re == 0 && c0.im == 0) throw std::domain_error("LocalSeries log: zero constant term");
  LocalSeries u = *this * (Complex(Real(1)) / c0);
  u.c_[0] = Complex();
  // log(1+u) = u - u²/2 + u³/3 - ..., by Horner.
  LocalSeries acc(nvars(), order());
  for (unsigned k = order(); k >= 1; --k) {
    LocalSeries term = constant(nvars(), order(), Complex(Real(k % 2 ? 1 : -1) / Real(k)));
    acc = u * (term + acc);
  }
  acc.c_[0] = algcoef::log(c0);
  return acc;
}

LocalSeries LocalSeries::derivative(std::size_t var) const {
  LocalSeries out(nvars(), order());
  const auto& live = shape_.live();
  const auto& exps = shape_.live_exponents();
  const std::size_t stride = shape_.stride(var);
  for (std::size_t i = 0; i < live.size(); ++i) {
    if (exps[i][var] == 0) continue;
    out.c_[live[i] - stride] += c_[live[i]] * Real(exps[i][var]);
  }
  return out;
}

LocalSeries LocalSeries::homogeneous(unsigned d) const {
  LocalSeries out(nvars(), order());
  const auto& live = shape_.live();
  const auto& exps = shape_.live_exponents();
  for (std::size_t i = 0; i < live.size(); ++i) {
    if (degree_of(exps[i]) == d) out.c_[live[i]] = c_[live[i]];
  }
  return out;
}

LocalSeries compose(const MultiPoly& p, const std::vector<LocalSeries>& args) {
  if (args.size() != p.vars().size()) throw ValidationError("compose: argument count mismatch");
  if (args.empty()) throw ValidationError("compose: no arguments");
  const std::size_t n = args.front().nvars();
  const unsigned order = args.front().order();
  std::vector<std::vector<LocalSeries>> powers(args.size());
  for (std::size_t v = 0; v < args.size(); ++v) {
    unsigned deg = p.degree(v);
    powers[v].push_back(LocalSeries::constant(n, order, Complex(Real(1))));
    for (unsigned k = 1; k <= deg; ++k) powers[v].push_back(powers[v].back() * args[v]);
  }
  LocalSeries out(n, order);
  for (const auto& [e, c] : p.terms()) {
    LocalSeries term = LocalSeries::constant(n, order, Complex(c));
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] > 0) term = term * powers[v][e[v]];
    }
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Phase and amplitude

namespace {

using Matrix = std::vector<std::vector<Complex>>;

/// Determinant and inverse by Gauss-Jordan with partial pivoting.
Complex determinant_and_inverse(Matrix a, Matrix* inverse) {
  const std::size_t n = a.size();
  Matrix inv(n, std::vector<Complex>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Complex(Real(1));
  Complex det(Real(1));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (abs(a[r][col]) > abs(a[piv][col])) piv = r;
    }
    if (a[piv][col].re == 0 && a[piv][col].im == 0) return Complex();
    if (piv != col) {
      std::swap(a[piv], a[col]);
      std::swap(inv[piv], inv[col]);
      det = -det;
    }
    Complex d = a[col][col];
    det *= d;
    Complex dinv = Complex(Real(1)) / d;
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] *= dinv;
      inv[col][j] *= dinv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      Complex f = a[r][col];
      if (f.re == 0 && f.im == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  if (inverse) *inverse = std::move(inv);
  return det;
}

/// z_j = w_j e^{iθ} for the angle coordinates, with `distinguished` left as
/// `g`.
std::vector<LocalSeries> torus_arguments(const CriticalPoint& w, std::size_t distinguished,
                                         const std::vector<std::size_t>& angle_vars,
                                         const LocalSeries& g) {
  const std::size_t m = angle_vars.size();
  const unsigned order = g.order();
  std::vector<LocalSeries> args(w.coords.size());
  for (std::size_t a = 0; a < m; ++a) {
    LocalSeries e = LocalSeries::variable(m, order, a, Complex::i()).exp();
    args[angle_vars[a]] = e * w.coords[angle_vars[a]];
  }
  args[distinguished] = g;
  return args;
}

/// Σ M_ab ∂_a ∂_b applied `times` times, evaluated at the origin.
Complex apply_operator_at_origin(const Matrix& m, LocalSeries s, unsigned times) {
  const std::size_t n = m.size();
  for (unsigned t = 0; t < times; ++t) {
    LocalSeries next(s.nvars(), s.order());
    std::vector<LocalSeries> first;
    first.reserve(n);
    for (std::size_t a = 0; a < n; ++a) first.push_back(s.derivative(a));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (m[a][b].re == 0 && m[a][b].im == 0) continue;
        next += first[a].derivative(b) * m[a][b];
      }
    }
    s = std::move(next);
  }
  return s.constant_term();
}

Real coefficient_scale(const MultiPoly& p) {
  Real s = 0;
  for (const auto& [e, c] : p.terms()) s = max_real(s, bmp::abs(to_real(c)));
  return s;
}

unsigned working_bits(const CriticalPoint& w) {
  return w.precision_bits ? w.precision_bits : configured_precision_bits();
}

}  // namespace

PhaseData phase_data(const MultiPoly& h, const CriticalPoint& w, const Direction& r,
                     unsigned order) {
  const std::size_t d = h.vars().size();
  if (d < 2) throw ValidationError("phase_data: at least two variables are needed");
  if (w.coords.size() != d || r.embedded.size() != d) {
    throw ValidationError("phase_data: point or direction has the wrong dimension");
  }
  if (order < 4) throw ValidationError("phase_data: series order must be at least 4");
  PrecisionScope scope(working_bits(w));

  CriticalPoint pt = w;
  if (pt.smooth != Tri::kYes && !smoothness_check(h, pt)) {
    throw MathFailure(FailureKind::kNonSmoothPoint,
                      "no admissible distinguished variable: every partial of H vanishes at w");
  }
  PhaseData pd;
  pd.distinguished = pt.distinguished;
  const std::size_t t = pd.distinguished;
  MultiPoly ht = partial_derivative(h, t);
  if (abs(evaluate(ht, std::span<const Complex>(pt.coords))) == 0) {
    throw MathFailure(FailureKind::kNonSmoothPoint,
                      "no admissible distinguished variable: dH/d" + h.vars()[t] + " vanishes at w");
  }
  for (std::size_t j = 0; j < d; ++j) {
    if (j != t) pd.angle_vars.push_back(j);
  }
  const std::size_t m = d - 1;

  // Implicit function by Newton on series; each step doubles the number of
  // correct orders.
  LocalSeries g = LocalSeries::constant(m, order, pt.coords[t]);
  unsigned steps = 2;
  for (unsigned correct = 1; correct <= order; correct *= 2) ++steps;
  for (unsigned s = 0; s < steps; ++s) {
    auto args = torus_arguments(pt, t, pd.angle_vars, g);
    LocalSeries hv = compose(h, args);
    LocalSeries hd = compose(ht, args);
    g -= hv * hd.inverse();
  }
  pd.param_series = g;

  // φ(θ) = i Σ r_j θ_j + r_t log(g/w_t)
  LocalSeries ratio = g * (Complex(Real(1)) / pt.coords[t]);
  LocalSeries phase = ratio.log() * Complex(r.embedded[t]);
  for (std::size_t a = 0; a < m; ++a) {
    phase += LocalSeries::variable(m, order, a, Complex::i() * to_real(r.embedded[pd.angle_vars[a]]));
  }
  phase.at(Exponents(m, 0)) = Complex();  // log(1) up to rounding

  for (std::size_t a = 0; a < m; ++a) {
    Exponents e(m, 0);
    e[a] = 1;
    if (abs(phase.at(e)) > threshold(1e-20)) {
      throw ValidationError("phase_data: w is not stationary for this direction (|dphase| = " +
                            format_real(abs(phase.at(e)), 6) + ")");
    }
    phase.at(e) = Complex();
  }
  pd.phase = phase;

  pd.hessian.assign(m, std::vector<Complex>(m));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      Exponents e(m, 0);
      ++e[a];
      ++e[b];
      Complex v = phase.at(e);
      if (a == b) v = v * Real(2);
      pd.hessian[a][b] = v;
      pd.hessian[b][a] = v;
    }
  }
  pd.hessian_det = determinant_and_inverse(pd.hessian, nullptr);
  if (abs(pd.hessian_det) <= threshold(1e-15)) {
    throw MathFailure(FailureKind::kDegenerateDirection,
                      "degenerate direction: the phase Hessian is singular at w");
  }
  return pd;
}

AsymptoticExpansion expansion_terms(const MultiPoly& g, const MultiPoly& h, const PhaseData& pd,
                                    const CriticalPoint& w, const Direction& r, unsigned k_max,
                                    const std::vector<std::int64_t>& offset) {
  if (k_max > 1) throw ValidationError("expansion_terms: k_max must be 0 or 1");
  const std::size_t d = h.vars().size();
  const std::size_t m = d - 1;
  const unsigned needed = k_max == 0 ? 2 : 6;
  if (pd.param_series.order() < needed) {
    throw ValidationError("expansion_terms: param_series order " +
                          std::to_string(pd.param_series.order()) + " is too low for k_max = " +
                          std::to_string(k_max) + " (need " + std::to_string(needed) + ")");
  }
  std::vector<std::int64_t> off = offset.empty() ? std::vector<std::int64_t>(d, 0) : offset;
  if (off.size() != d) throw ValidationError("expansion_terms: offset has the wrong dimension");
  PrecisionScope scope(working_bits(w));

  const std::size_t t = pd.distinguished;
  const unsigned order = pd.param_series.order();
  const LocalSeries& gs = pd.param_series;
  auto args = torus_arguments(w, t, pd.angle_vars, gs);

  // Residue amplitude -G/(z_t H_t), times the offset factor
  // exp(-i Σ o_j θ_j)·(g/w_t)^{-o_t}.
  LocalSeries num = compose(g, args);
  LocalSeries den = gs * compose(partial_derivative(h, t), args);
  LocalSeries amp = num * den.inverse() * Complex(Real(-1));
  LocalSeries ratio_log = (gs * (Complex(Real(1)) / w.coords[t])).log();
  ratio_log.at(Exponents(m, 0)) = Complex();
  LocalSeries shift = ratio_log * Complex(Real(-off[t]));
  for (std::size_t a = 0; a < m; ++a) {
    shift += LocalSeries::variable(m, order, a, Complex::i() * Real(-off[pd.angle_vars[a]]));
  }
  amp = amp * shift.exp();

  const bool numerator_vanishes =
      abs(evaluate(g, std::span<const Complex>(w.coords))) <
      threshold(1e-20) * max_real(Real(1), coefficient_scale(g));

  Matrix minv;
  determinant_and_inverse(pd.hessian, &minv);
  LocalSeries psi = pd.phase;
  for (unsigned k = 0; k <= 2; ++k) {
    LocalSeries low = pd.phase.homogeneous(k);
    psi -= low;
  }

  std::vector<Complex> c(k_max + 1);
  c[0] = amp.constant_term();
  if (numerator_vanishes) {
    if (abs(c[0]) >= threshold(1e-20)) {
      throw ValidationError("expansion_terms: G(w) = 0 but the leading amplitude does not vanish");
    }
    c[0] = Complex();
  }
  if (k_max >= 1) {
    // Second-order stationary-phase correction with L = Σ M_ab ∂_a∂_b:
    // ½L(A) - ⅛L²(Aψ) + (1/96)L³(Aψ²), at the origin.
    LocalSeries a_psi = amp * psi;
    LocalSeries a_psi2 = a_psi * psi;
    c[1] = apply_operator_at_origin(minv, amp, 1) * (Real(1) / Real(2)) -
           apply_operator_at_origin(minv, a_psi, 2) * (Real(1) / Real(8)) +
           apply_operator_at_origin(minv, a_psi2, 3) * (Real(1) / Real(96));
  }

  // w^{-o} (2π)^{-m/2} det(Φ)^{-1/2}
  Complex prefactor = Complex(Real(1)) / sqrt(pd.hessian_det);
  prefactor = prefactor * bmp::pow(Real(2) * real_pi(), -Real(m) / 2);
  for (std::size_t j = 0; j < d; ++j) {
    if (off[j] != 0) prefactor *= pow(w.coords[j], -static_cast<long>(off[j]));
  }

  AsymptoticExpansion ax;
  ax.depth = k_max;
  for (auto& ck : c) ax.constants.push_back(ck * prefactor);

  Real log_rho = 0;
  for (std::size_t j = 0; j < d; ++j) {
    log_rho -= to_real(r.embedded[j]) * bmp::log(w.coords[j].re);
  }
  ax.rho = bmp::exp(log_rho);

  std::optional<unsigned> lead;
  for (unsigned k = 0; k <= k_max; ++k) {
    if (abs(ax.constants[k]) >= threshold(1e-20)) {
      lead = k;
      break;
    }
  }
  if (!lead) {
    throw MathFailure(FailureKind::kExpansionVanishes,
                      "expansion vanishes to requested depth (k_max = " + std::to_string(k_max) + ")");
  }
  ax.leading_index = *lead;
  ax.alpha = Rational(static_cast<long>(m), 2) + Rational(static_cast<long>(*lead));
  ax.alpha.canonicalize();
  ax.constant = ax.constants[*lead].re;
  ax.constant_imag = ax.constants[*lead].im;
  ax.rho_exact = recognize_radical(ax.rho);
  ax.constant_exact = recognize_with_pi(ax.constant, static_cast<int>(m));
  return ax;
}

OriginalAsymptotics translate_to_original(const AsymptoticExpansion& ax, const IndexMap& map,
                                          const Direction& r, const Rational& scale) {
  if (sgn(scale) <= 0) throw ValidationError("translate_to_original: scale must be positive");
  if (map.cols() != r.original.size() || map.rows() != r.embedded.size() ||
      map.apply_linear(r.original) != r.embedded) {
    throw ValidationError("translate_to_original: index map is inconsistent with the direction");
  }
  OriginalAsymptotics out;
  out.scale = scale;
  out.alpha = ax.alpha;
  for (const auto& v : r.original) out.direction.push_back(v * scale);
  if (scale == 1) {
    out.rho = ax.rho;
    out.constant = ax.constant;
    out.rho_exact = ax.rho_exact;
    out.constant_exact = ax.constant_exact;
    return out;
  }
  // n = scale·n': ρ^n = (ρ^scale)^{n'}, n^{-α} = scale^{-α} n'^{-α}.
  Real s = to_real(scale);
  out.rho = bmp::pow(ax.rho, s);
  out.constant = ax.constant * bmp::pow(s, -to_real(ax.alpha));
  out.rho_exact = recognize_radical(out.rho);
  // The pi power of the constant is that of the embedded one.
  out.constant_exact = recognize_with_pi(out.constant, static_cast<int>(r.embedded.size()) - 1);
  return out;
}

// ---------------------------------------------------------------------------
// Radical reconstruction

namespace {

/// Integer relation among `xs` by LLL on the lattice spanned by
/// e_i ⊕ (scale·x_i). Returns coefficients when the relation is small and
/// holds to the working precision.
std::optional<std::vector<Integer>> integer_relation(const std::vector<Real>& xs,
                                                     const Integer& height) {
  const std::size_t n = xs.size();
  const unsigned bits = current_precision_bits();
  const Real big = bmp::pow(Real(2), Real(static_cast<long>(bits * 3 / 4)));
  std::vector<std::vector<Real>> b(n, std::vector<Real>(n + 1, Real(0)));
  for (std::size_t i = 0; i < n; ++i) {
    b[i][i] = 1;
    b[i][n] = big * xs[i];
  }
  auto dot = [&](const std::vector<Real>& u, const std::vector<Real>& v) {
    Real s = 0;
    for (std::size_t k = 0; k <= n; ++k) s += u[k] * v[k];
    return s;
  };
  std::vector<std::vector<Real>> mu(n, std::vector<Real>(n, Real(0)));
  std::vector<Real> bstar_norm(n);
  auto gram_schmidt = [&]() {
    std::vector<std::vector<Real>> bs = b;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = bstar_norm[j] == 0 ? Real(0) : dot(b[i], bs[j]) / bstar_norm[j];
        for (std::size_t k = 0; k <= n; ++k) bs[i][k] -= mu[i][j] * bs[j][k];
      }
      bstar_norm[i] = dot(bs[i], bs[i]);
    }
  };
  gram_schmidt();
  std::size_t k = 1;
  unsigned guard = 0;
  while (k < n && ++guard < 10000) {
    for (std::size_t j = k; j-- > 0;) {
      Real q = bmp::round(mu[k][j]);
      if (q != 0) {
        for (std::size_t c = 0; c <= n; ++c) b[k][c] -= q * b[j][c];
        gram_schmidt();
      }
    }
    if (bstar_norm[k] >= (Real(3) / 4 - mu[k][k - 1] * mu[k][k - 1]) * bstar_norm[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gram_schmidt();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  const Real tol = bmp::pow(Real(2), -Real(static_cast<long>(bits * 3 / 5)));
  for (const auto& row : b) {
    std::vector<Integer> coeffs(n);
    Real magnitude = 0;
    Real residual = 0;
    bool small = true;
    for (std::size_t i = 0; i < n; ++i) {
      Real ri = bmp::round(row[i]);
      if (bmp::abs(ri) > to_real(height)) {
        small = false;
        break;
      }
      mpfr_get_z(coeffs[i].get_mpz_t(), ri.backend().data(), MPFR_RNDN);
      residual += ri * xs[i];
      magnitude += bmp::abs(ri * xs[i]);
    }
    if (!small || magnitude == 0) continue;
    if (bmp::abs(residual) <= tol * magnitude) return coeffs;
  }
  return std::nullopt;
}

std::string rational_text(Rational q) {
  q.canonicalize();
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

/// Largest s with s² | n, for small n.
Integer square_part(const Integer& n) {
  Integer s = 1;
  Integer rest = n;
  for (Integer p = 2; p * p <= rest; ++p) {
    while (rest % (p * p) == 0) {
      rest /= p * p;
      s *= p;
    }
  }
  return s;
}

/// Root of c0 + c1 u + c2 u² nearest `u`, as (a + b√d)/c text.
std::optional<std::string> quadratic_text(const std::vector<Integer>& c, const Real& u) {
  const Integer& c0 = c[0];
  const Integer& c1 = c[1];
  const Integer& c2 = c[2];
  if (c2 == 0) return std::nullopt;
  Integer disc = c1 * c1 - 4 * c2 * c0;
  if (disc <= 0) return std::nullopt;
  Integer sq = sqrt(disc);
  if (sq * sq == disc) return std::nullopt;  // rational, handled elsewhere
  Integer s = square_part(disc);
  Integer rad = disc / (s * s);
  // u = (-c1 ± s√rad) / (2 c2); pick the sign matching u.
  Real root = bmp::sqrt(to_real(rad));
  Real plus = (to_real(Integer(-c1)) + to_real(s) * root) / to_real(Integer(2 * c2));
  Real minus = (to_real(Integer(-c1)) - to_real(s) * root) / to_real(Integer(2 * c2));
  Integer a = -c1;
  Integer b = bmp::abs(plus - u) <= bmp::abs(minus - u) ? s : Integer(-s);
  Integer den = 2 * c2;
  if (den < 0) {
    a = -a;
    b = -b;
    den = -den;
  }
  Integer g = gcd(gcd(a, b), den);
  a /= g;
  b /= g;
  den /= g;
  std::ostringstream os;
  std::string radical = "sqrt(" + rad.get_str() + ")";
  std::string bterm = (abs(b) == 1 ? std::string() : Integer(abs(b)).get_str() + "*") + radical;
  if (a == 0) {
    os << (b < 0 ? "-" : "") << bterm;
  } else {
    os << a.get_str() << (b < 0 ? " - " : " + ") << bterm;
  }
  std::string body = os.str();
  if (den != 1) body = "(" + body + ")/" + den.get_str();
  return body;
}

std::string with_root(const std::string& body, unsigned k, bool needs_parens) {
  if (k == 1) return body;
  std::string b = needs_parens ? "(" + body + ")" : body;
  if (k == 2) return "sqrt(" + body + ")";
  return b + "^(1/" + std::to_string(k) + ")";
}

}  // namespace

std::optional<std::string> recognize_radical(const Real& x) {
  if (x == 0) return std::string("0");
  if (x < 0) {
    auto inner = recognize_radical(-x);
    if (!inner) return std::nullopt;
    return "-(" + *inner + ")";
  }
  for (unsigned k = 1; k <= 12; ++k) {
    Real u = bmp::pow(x, Real(k));
    if (auto rel = integer_relation({Real(1), u}, Integer(1000000))) {
      if ((*rel)[1] == 0) continue;
      Rational q((*rel)[0] * -1, (*rel)[1]);
      q.canonicalize();
      if (sgn(q) <= 0) continue;
      std::string body = rational_text(q);
      return with_root(body, k, q.get_den() != 1);
    }
  }
  for (unsigned k : {1u, 2u, 4u}) {
    Real u = bmp::pow(x, Real(k));
    if (auto rel = integer_relation({Real(1), u, u * u}, Integer(10000))) {
      if (auto text = quadratic_text(*rel, u)) return with_root(*text, k, true);
    }
  }
  return std::nullopt;
}

std::optional<std::string> recognize_with_pi(const Real& c, int half_powers) {
  Real v = c * bmp::pow(real_pi(), Real(half_powers) / 2);
  auto body = recognize_radical(v);
  if (!body) return std::nullopt;
  switch (half_powers) {
    case 0:
      return body;
    case 1:
      return "(" + *body + ")/sqrt(pi)";
    case 2:
      return "(" + *body + ")/pi";
    default:
      return "(" + *body + ")/pi^(" + rational_text(Rational(half_powers, 2)) + ")";
  }
}

}  // namespace algcoef

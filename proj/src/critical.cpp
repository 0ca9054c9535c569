#include "algcoef/critical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace algcoef {

namespace bmp = boost::multiprecision;

// ---------------------------------------------------------------- directions

Direction Direction::from_embedded(std::vector<Rational> r) {
  for (const auto& v : r)
    if (v <= 0) throw ValidationError("direction entries must be positive");
  Direction d;
  d.embedded = std::move(r);
  return d;
}

Direction Direction::from_original(std::vector<Rational> r, const IndexMap& map) {
  if (r.size() != map.cols())
    throw ValidationError("direction has " + std::to_string(r.size()) + " entries but the series has " +
                          std::to_string(map.cols()) + " variables");
  for (const auto& v : r)
    if (v <= 0) throw ValidationError("direction entries must be positive");
  Direction d = from_embedded(map.apply_linear(r));
  d.original = std::move(r);
  return d;
}

std::vector<Rational> Direction::canonical() const {
  Rational total = std::accumulate(embedded.begin(), embedded.end(), Rational(0));
  std::vector<Rational> out;
  for (const auto& v : embedded) out.push_back(Rational(v / total));
  return out;
}

const char* to_string(Tri t) {
  switch (t) {
    case Tri::kYes: return "yes";
    case Tri::kNo: return "no";
    case Tri::kUnknown: return "unknown";
  }
  return "unknown";
}

// ---------------------------------------------------------------- system

namespace {

// Positive rational multiple of p with coprime integer coefficients.
MultiPoly integer_primitive(const MultiPoly& p) {
  if (p.is_zero()) return p;
  return p * Rational(1 / rational_content(p));
}

}  // namespace

std::vector<MultiPoly> critical_system(const MultiPoly& h, const std::vector<Rational>& r) {
  const VarList& vars = h.vars();
  if (vars.size() < 2) throw ValidationError("critical system needs at least two variables");
  if (r.size() != vars.size())
    throw ValidationError("direction length does not match the number of variables");
  for (const auto& v : r)
    if (v == 0) throw ValidationError("direction has a zero entry");
  std::vector<MultiPoly> out{integer_primitive(h)};
  MultiPoly lead = MultiPoly::variable(vars, 0) * partial_derivative(h, 0);
  for (std::size_t j = 1; j < vars.size(); ++j) {
    MultiPoly zj = MultiPoly::variable(vars, j) * partial_derivative(h, j);
    out.push_back(integer_primitive(zj * r[0] - lead * r[j]));
  }
  return out;
}

// ---------------------------------------------------------------- roots

namespace {

Real epsilon_for(unsigned bits) {
  Real e = 1;
  return bmp::ldexp(e, -static_cast<int>(bits));
}

void horner(const std::vector<Complex>& c, const Complex& z, Complex& p, Complex& dp) {
  p = c.back();
  dp = Complex();
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
}

}  // namespace

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs) {
  std::vector<Complex> c = coeffs;
  while (!c.empty() && c.back().re == 0 && c.back().im == 0) c.pop_back();
  if (c.size() <= 1) return {};
  const std::size_t n = c.size() - 1;
  Complex lead = c.back();
  for (auto& a : c) a /= lead;
  if (n == 1) return {-c[0]};

  // Start on a circle whose radius bounds the root moduli.
  Real radius = 0;
  for (std::size_t k = 0; k < n; ++k) {
    Real m = abs(c[k]);
    if (m == 0) continue;
    Real r = bmp::pow(m, Real(1) / Real(static_cast<long>(n - k)));
    if (r > radius) radius = r;
  }
  if (radius == 0) radius = 1;
  const unsigned bits = current_precision_bits();
  const Real tol = epsilon_for(bits > 16 ? bits - 12 : bits);
  const Real two_pi = 2 * real_pi();
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    Real angle = two_pi * Real(static_cast<long>(k)) / Real(static_cast<long>(n)) + Real(0.4);
    z[k] = Complex(radius * bmp::cos(angle), radius * bmp::sin(angle));
  }
  std::vector<bool> done(n, false);
  for (int iter = 0; iter < 4000; ++iter) {
    bool all_done = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      Complex p, dp;
      horner(c, z[k], p, dp);
      if (p.re == 0 && p.im == 0) {
        done[k] = true;
        continue;
      }
      Complex sum;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) sum += Complex(Real(1)) / (z[k] - z[j]);
      Complex ratio = p / dp;
      Complex w = ratio / (Complex(Real(1)) - ratio * sum);
      z[k] -= w;
      Real scale = abs(z[k]);
      if (scale < 1) scale = 1;
      if (abs(w) <= tol * scale)
        done[k] = true;
      else
        all_done = false;
    }
    if (all_done) break;
  }
  for (auto& root : z)
    for (int step = 0; step < 3; ++step) {
      Complex p, dp;
      horner(c, root, p, dp);
      if (dp.re == 0 && dp.im == 0) break;
      root -= p / dp;
    }
  return z;
}

// ---------------------------------------------------------------- solving

namespace {

struct Level {
  std::size_t var;
  std::vector<MultiPoly> polys;
};

struct Elimination {
  std::vector<Level> levels;  // the last level is univariate in its var
  UniPoly base;               // squarefree, zero root removed
  bool empty = false;         // the system is inconsistent
};

MultiPoly clean(const MultiPoly& p) {
  if (p.is_zero()) return p;
  MultiPoly q = primitive_part(p);
  if (q.leading_term().second < 0) q = -q;
  return q;
}

std::vector<std::size_t> used_vars(const std::vector<MultiPoly>& polys, std::size_t nvars) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < nvars; ++v)
    for (const auto& p : polys)
      if (p.depends_on(v)) {
        out.push_back(v);
        break;
      }
  return out;
}

std::vector<MultiPoly> dedupe(std::vector<MultiPoly> polys) {
  std::vector<MultiPoly> out;
  for (auto& p : polys) {
    if (p.is_zero()) continue;
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  }
  return out;
}

// Eliminates `var` with the given pivot. nullopt when some resultant vanishes.
std::optional<std::vector<MultiPoly>> eliminate(const std::vector<MultiPoly>& polys,
                                                std::size_t var, std::size_t pivot) {
  std::vector<MultiPoly> next;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (i == pivot) continue;
    if (!polys[i].depends_on(var)) {
      next.push_back(polys[i]);
      continue;
    }
    MultiPoly r = clean(resultant(polys[pivot], polys[i], var));
    if (r.is_zero()) return std::nullopt;
    next.push_back(std::move(r));
  }
  return dedupe(std::move(next));
}

Elimination build_elimination(const std::vector<MultiPoly>& system) {
  const std::size_t nvars = system.front().vars().size();
  Elimination el;
  std::vector<MultiPoly> polys;
  for (const auto& p : system) polys.push_back(clean(p));
  polys = dedupe(std::move(polys));
  bool first = true;
  for (;;) {
    for (const auto& p : polys)
      if (p.is_constant()) {
        el.empty = true;  // a nonzero constant has no roots
        return el;
      }
    auto vars = used_vars(polys, nvars);
    if (vars.empty()) throw MathFailure(FailureKind::kEliminationDegenerate, "critical system is trivial");
    if (vars.size() == 1) {
      const std::size_t v = vars.front();
      UniPoly g;
      for (const auto& p : polys) g = g.empty() ? to_univariate(p, v) : uni_gcd(g, to_univariate(p, v));
      trim(g);
      el.levels.push_back({v, polys});
      if (g.size() <= 1) {
        el.empty = true;
        return el;
      }
      g = uni_squarefree(g);
      while (!g.empty() && g.front() == 0) g.erase(g.begin());
      trim(g);
      if (g.size() <= 1) el.empty = true;
      el.base = std::move(g);
      return el;
    }
    if (polys.size() < vars.size())
      throw MathFailure(FailureKind::kEliminationDegenerate,
                        "critical system is underdetermined after elimination");
    // Y first, then the variable of smallest degree.
    std::vector<std::size_t> order = vars;
    if (!first || order.front() != 0) {
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        unsigned da = 0, db = 0;
        for (const auto& p : polys) {
          da = std::max(da, p.degree(a));
          db = std::max(db, p.degree(b));
        }
        return da < db;
      });
    }
    first = false;
    bool progressed = false;
    for (std::size_t v : order) {
      std::vector<std::size_t> pivots;
      for (std::size_t i = 0; i < polys.size(); ++i)
        if (polys[i].depends_on(v)) pivots.push_back(i);
      std::stable_sort(pivots.begin(), pivots.end(), [&](std::size_t a, std::size_t b) {
        if (polys[a].degree(v) != polys[b].degree(v)) return polys[a].degree(v) < polys[b].degree(v);
        return polys[a].size() < polys[b].size();
      });
      for (std::size_t pivot : pivots) {
        auto next = eliminate(polys, v, pivot);
        if (!next) continue;
        el.levels.push_back({v, polys});
        polys = std::move(*next);
        progressed = true;
        break;
      }
      if (progressed) break;
    }
    if (!progressed)
      throw MathFailure(FailureKind::kEliminationDegenerate,
                        "critical system polynomials share a common component");
  }
}

using Partial = std::vector<std::optional<Complex>>;

std::vector<Complex> fill(const Partial& partial) {
  std::vector<Complex> z;
  for (const auto& c : partial) z.push_back(c ? *c : Complex());
  return z;
}

// Coefficients in `var` after substituting the assigned coordinates.
std::vector<Complex> specialize(const MultiPoly& p, std::size_t var, const Partial& partial) {
  std::vector<Complex> c(p.degree(var) + 1);
  for (const auto& [e, coeff] : p.terms()) {
    Complex t(coeff);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != var && e[i] > 0) t *= pow(*partial[i], static_cast<long>(e[i]));
    c[e[var]] += t;
  }
  return c;
}

Real relative_residual(const MultiPoly& p, const std::vector<Complex>& z) {
  Real mag = evaluate_magnitude(p, z);
  if (mag == 0) return 0;
  return abs(evaluate(p, z)) / mag;
}

// Solves a x = b in place by Gaussian elimination with partial pivoting.
bool solve_linear(std::vector<std::vector<Complex>> a, std::vector<Complex>& b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    Real best_abs = abs(a[k][k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      Real m = abs(a[i][k]);
      if (m > best_abs) {
        best_abs = m;
        best = i;
      }
    }
    if (best_abs == 0) return false;
    std::swap(a[k], a[best]);
    std::swap(b[k], b[best]);
    for (std::size_t i = k + 1; i < n; ++i) {
      Complex f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    Complex s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a[k][j] * b[j];
    b[k] = s / a[k][k];
  }
  return true;
}

struct Newton {
  const std::vector<MultiPoly>& system;
  std::vector<std::vector<MultiPoly>> jacobian;

  explicit Newton(const std::vector<MultiPoly>& s) : system(s) {
    const std::size_t n = s.front().vars().size();
    for (const auto& p : s) {
      std::vector<MultiPoly> row;
      for (std::size_t j = 0; j < n; ++j) row.push_back(partial_derivative(p, j));
      jacobian.push_back(std::move(row));
    }
  }

  Real residual(const std::vector<Complex>& z) const {
    Real r = 0;
    for (const auto& p : system) r = max_real(r, abs(evaluate(p, z)));
    return r;
  }

  // Returns the final residual; z is updated in place.
  Real polish(std::vector<Complex>& z, const Real& target) const {
    const std::size_t n = z.size();
    Real res = residual(z);
    for (int iter = 0; iter < 80 && res >= target; ++iter) {
      std::vector<std::vector<Complex>> j(system.size(), std::vector<Complex>(n));
      std::vector<Complex> f(system.size());
      for (std::size_t i = 0; i < system.size(); ++i) {
        f[i] = evaluate(system[i], z);
        for (std::size_t k = 0; k < n; ++k) j[i][k] = evaluate(jacobian[i][k], z);
      }
      if (system.size() != n || !solve_linear(j, f)) break;
      for (std::size_t k = 0; k < n; ++k) z[k] -= f[k];
      res = residual(z);
    }
    return res;
  }
};

struct PolishFailure {};

bool close(const Complex& a, const Complex& b, const Real& tol) {
  Real scale = max_real(Real(1), abs(a));
  return abs(a - b) <= tol * scale;
}

bool less_canonical(const CriticalPoint& a, const CriticalPoint& b) {
  const Real tie = Real(1e-25);
  auto cmp = [&](const Real& x, const Real& y) {
    if (bmp::abs(x - y) <= tie * max_real(Real(1), bmp::abs(x))) return 0;
    return x < y ? -1 : 1;
  };
  for (std::size_t i = 0; i < a.coords.size(); ++i)
    if (int c = cmp(a.coords[i].re, b.coords[i].re)) return c < 0;
  for (std::size_t i = 0; i < a.coords.size(); ++i)
    if (int c = cmp(a.coords[i].im, b.coords[i].im)) return c < 0;
  return false;
}

std::vector<CriticalPoint> solve_at_precision(const std::vector<MultiPoly>& system,
                                              const Elimination& el, unsigned bits,
                                              const SolveOptions& options) {
  PrecisionScope scope(bits);
  const std::size_t nvars = system.front().vars().size();
  const Real prefilter = epsilon_for(bits / 4);
  const Real trusted = epsilon_for(bits / 2);
  const Real target = Real(options.residual_tolerance);
  const Real dedupe_tol = Real(options.dedupe_tolerance);

  std::vector<Partial> partials;
  {
    const Level& last = el.levels.back();
    std::vector<Complex> c;
    for (const auto& q : el.base) c.emplace_back(q);
    for (auto& root : polynomial_roots(c)) {
      Partial p(nvars);
      p[last.var] = root;
      partials.push_back(std::move(p));
    }
  }
  for (std::size_t l = el.levels.size() - 1; l-- > 0;) {
    const Level& level = el.levels[l];
    const std::size_t v = level.var;
    std::vector<std::size_t> order(level.polys.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return level.polys[a].degree(v) < level.polys[b].degree(v);
    });
    std::vector<Partial> next;
    for (const auto& partial : partials) {
      std::vector<Complex> roots;
      for (std::size_t i : order) {
        if (!level.polys[i].depends_on(v)) continue;
        auto c = specialize(level.polys[i], v, partial);
        Real big = 0;
        for (const auto& a : c) big = max_real(big, abs(a));
        if (big == 0) continue;
        while (c.size() > 1 && abs(c.back()) <= trusted * big) c.pop_back();
        if (c.size() <= 1) continue;
        roots = polynomial_roots(c);
        break;
      }
      for (auto& root : roots) {
        Partial full = partial;
        full[v] = root;
        auto z = fill(full);
        bool ok = true;
        for (const auto& p : level.polys)
          if (relative_residual(p, z) > prefilter) {
            ok = false;
            break;
          }
        if (ok) next.push_back(std::move(full));
      }
    }
    partials = std::move(next);
  }

  Newton newton(system);
  std::vector<CriticalPoint> out;
  for (const auto& partial : partials) {
    std::vector<Complex> z = fill(partial);
    bool trusted_start = true;
    for (const auto& p : system)
      if (relative_residual(p, z) > trusted) trusted_start = false;
    Real res = newton.polish(z, target);
    if (res >= target) {
      if (trusted_start) throw PolishFailure{};
      continue;
    }
    bool zero = false;
    for (const auto& c : z)
      if (abs(c) < Real(1e-25)) zero = true;
    if (zero) continue;

    CriticalPoint pt;
    bool real = true, positive = true;
    for (const auto& c : z) {
      if (bmp::abs(c.im) > Real(1e-25) * max_real(Real(1), abs(c))) real = false;
      if (c.re <= 0) positive = false;
    }
    positive = positive && real;
    if (real) {
      for (auto& c : z) c.im = 0;
      res = newton.polish(z, target / Real(1e10));
    }
    pt.coords = std::move(z);
    pt.residual = res;
    pt.positive = positive ? Tri::kYes : Tri::kNo;
    pt.precision_bits = bits;
    bool duplicate = false;
    for (const auto& q : out) {
      bool same = true;
      for (std::size_t i = 0; i < nvars && same; ++i)
        same = close(q.coords[i], pt.coords[i], dedupe_tol);
      if (same) duplicate = true;
    }
    if (!duplicate) out.push_back(std::move(pt));
  }
  std::sort(out.begin(), out.end(), less_canonical);
  return out;
}

}  // namespace

std::vector<CriticalPoint> solve_critical(const std::vector<MultiPoly>& system,
                                          const SolveOptions& options) {
  if (system.empty()) throw ValidationError("empty critical system");
  const std::size_t nvars = system.front().vars().size();
  if (system.size() != nvars)
    throw ValidationError("critical system must be square");
  Elimination el = build_elimination(system);
  std::vector<CriticalPoint> points;
  if (!el.empty) {
    unsigned bits = options.precision_bits ? options.precision_bits : configured_precision_bits();
    for (;; bits *= 2) {
      if (bits > kMaxPrecisionBits)
        throw MathFailure(FailureKind::kPrecisionExhausted,
                          "Newton polish did not reach the residual target at " +
                              std::to_string(kMaxPrecisionBits) + " bits");
      try {
        points = solve_at_precision(system, el, bits, options);
        break;
      } catch (const PolishFailure&) {
      }
    }
  }
  if (points.empty())
    throw MathFailure(FailureKind::kNoAffineCriticalPoints,
                      "no affine critical points: the critical system has no solution with "
                      "all coordinates nonzero");
  return points;
}

bool smoothness_check(const MultiPoly& h, CriticalPoint& pt) {
  Real scale = 0;
  for (const auto& [e, c] : h.terms()) scale = max_real(scale, bmp::abs(to_real(c)));
  Real best_grad = 0, best_weighted = -1;
  for (std::size_t j = 0; j < pt.coords.size(); ++j) {
    Complex g = evaluate(partial_derivative(h, j), pt.coords);
    Real m = abs(g);
    best_grad = max_real(best_grad, m);
    Real weighted = abs(g * pt.coords[j]);
    if (weighted > best_weighted) {
      best_weighted = weighted;
      pt.distinguished = j;
    }
  }
  bool smooth = best_grad > Real(1e-15) * scale;
  pt.smooth = smooth ? Tri::kYes : Tri::kNo;
  return smooth;
}

CriticalPoint select_minimal(const std::vector<CriticalPoint>& points, const CombCertificate& cert,
                             bool aperiodic) {
  if (!cert.certified())
    throw MathFailure(FailureKind::kCertificateUnknown,
                      "combinatorial certificate unknown: the denominator is not of the form "
                      "c(1 - K) with K >= 0; try another pivot or shift");
  if (!aperiodic)
    throw MathFailure(FailureKind::kPeriodicSupport,
                      "support of K generates a proper sublattice; minimality is not certified");
  std::vector<const CriticalPoint*> positive;
  for (const auto& p : points)
    if (p.positive == Tri::kYes) positive.push_back(&p);
  if (positive.empty())
    throw MathFailure(FailureKind::kNoPositiveCriticalPoint,
                      "no positive critical point in this direction");
  if (positive.size() > 1)
    throw MathFailure(FailureKind::kAmbiguousMinimality,
                      "ambiguous minimality: " + std::to_string(positive.size()) +
                          " positive critical points");
  CriticalPoint out = *positive.front();
  out.minimal = Tri::kYes;
  return out;
}

}  // namespace algcoef

#include "gfp/numerics/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>
#include <string>

#include "gfp/numerics/errors.hpp"

namespace gfp {

std::string_view to_string(QuadratureScheme scheme) {
  switch (scheme) {
    case QuadratureScheme::AdaptiveSplit:
      return "adaptive-split";
    case QuadratureScheme::DoubleExponential:
      return "double-exponential";
    case QuadratureScheme::GaussHermite:
      return "gauss-hermite";
  }
  return "unknown";
}

QuadratureScheme quadrature_scheme_from_string(std::string_view name) {
  if (name == "adaptive-split") return QuadratureScheme::AdaptiveSplit;
  if (name == "double-exponential") return QuadratureScheme::DoubleExponential;
  if (name == "gauss-hermite") return QuadratureScheme::GaussHermite;
  throw DomainError("unknown quadrature scheme '" + std::string(name) + "'");
}

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError("QuadratureSpec: rel_tol must be > 0");
  if (!(abs_tol >= 0.0)) throw DomainError("QuadratureSpec: abs_tol must be >= 0");
  if (max_evals < 16) throw DomainError("QuadratureSpec: max_evals must be >= 16");
  if (!(split_T > 0.0)) throw DomainError("QuadratureSpec: split_T must be > 0");
}

double QuadratureSpec::tolerance(double value) const {
  return std::max(abs_tol, rel_tol * std::abs(value));
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kHalfPi = 0.5 * std::numbers::pi;

// ---------------------------------------------------------------------------
// Gauss-Kronrod 7/15 (QUADPACK qk15 constants).

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment qk15(const Integrand& f, double a, double b) {
  const double centr = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);
  const double fc = f(centr);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  double fv1[7], fv2[7];
  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double absc = hlgth * kXgk[jtw];
    const double f1 = f(centr - absc);
    const double f2 = f(centr + absc);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    resg += kWg[j] * (f1 + f2);
    resk += kWgk[jtw] * (f1 + f2);
    resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = hlgth * kXgk[jtwm1];
    const double f1 = f(centr - absc);
    const double f2 = f(centr + absc);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    resk += kWgk[jtwm1] * (f1 + f2);
    resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  const double h = std::abs(hlgth);
  resasc *= h;
  resabs *= h;
  double abserr = std::abs((resk - resg) * hlgth);
  if (resasc != 0.0 && abserr != 0.0)
    abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
    abserr = std::max(50.0 * kEps * resabs, abserr);
  if (!std::isfinite(resk)) abserr = kInf;
  return {a, b, resk * hlgth, abserr};
}

Estimate adaptive_gk_finite(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                            bool& converged) {
  std::priority_queue<Segment> heap;
  Segment first = qk15(f, a, b);
  std::uint64_t evals = 15;
  double total = first.value;
  double total_err = first.error;
  heap.push(first);
  converged = total_err <= spec.tolerance(total);
  while (!converged && evals + 30 <= spec.max_evals) {
    Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // cannot split further
    heap.pop();
    Segment left = qk15(f, worst.a, mid);
    Segment right = qk15(f, mid, worst.b);
    evals += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    if (total_err <= spec.tolerance(total)) {
      // Recompute sums to shed accumulated rounding before accepting.
      double v = 0.0, e = 0.0;
      auto copy = heap;
      while (!copy.empty()) {
        v += copy.top().value;
        e += copy.top().error;
        copy.pop();
      }
      total = v;
      total_err = e;
      converged = total_err <= spec.tolerance(total);
    }
  }
  return {total, total_err, evals, "adaptive-split"};
}

// ---------------------------------------------------------------------------
// Double exponential rules.

// tanh-sinh on [a, b]. Nodes approach the endpoints to within the smallest
// representable offset so that power singularities are captured.
Estimate tanh_sinh(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                   bool& converged) {
  const double hw = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  std::uint64_t evals = 0;

  auto side_sum = [&](double t) {
    // returns weight * (f(left) + f(right)) without the step h; NaN when the
    // node offset underflows.
    const double u = kHalfPi * std::sinh(t);
    const double e2 = std::exp(-2.0 * u);
    const double delta = hw * 2.0 * e2 / (1.0 + e2);
    if (!(delta > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double w = hw * kHalfPi * std::cosh(t) * 4.0 * e2 / ((1.0 + e2) * (1.0 + e2));
    double fl = 0.0, fr = 0.0;
    const double xl = a + delta;
    const double xr = b - delta;
    if (xl > a && xl < b) fl = f(xl);
    if (xr < b && xr > a) fr = f(xr);
    evals += 2;
    return w * (fl + fr);
  };

  // Level 0: step h = 1/2 over t in [-tmax, tmax].
  double h = 0.5;
  double sum = hw * kHalfPi * f(c);
  double abs_sum = std::abs(sum);
  evals += 1;
  auto accumulate = [&](double start, double step) {
    int small_run = 0;
    for (double t = start;; t += step) {
      const double term = side_sum(t);
      if (std::isnan(term)) break;
      sum += term;
      abs_sum += std::abs(term);
      if (t > 1.0 && std::abs(term) <= 1e-20 * std::abs(sum)) {
        if (++small_run >= 2) break;
      } else {
        small_run = 0;
      }
      if (t > 8.0) break;
    }
  };
  accumulate(h, h);
  double estimate = h * sum;
  double previous = estimate;
  double err = kInf;
  converged = false;
  for (int level = 1; level <= 12; ++level) {
    if (evals >= spec.max_evals) break;
    h *= 0.5;
    accumulate(h, 2.0 * h);
    estimate = h * sum;
    err = std::abs(estimate - previous);
    const double floor = 64.0 * kEps * h * abs_sum;
    err = std::max(err, floor);
    if (level >= 2 && (err <= spec.tolerance(estimate) || err <= floor)) {
      converged = true;
      break;
    }
    previous = estimate;
  }
  if (!std::isfinite(estimate)) converged = false;
  return {estimate, err, evals, "double-exponential"};
}

// exp-sinh on [a, inf): x = a + exp(pi/2 sinh t).
Estimate exp_sinh(const Integrand& f, double a, const QuadratureSpec& spec, bool& converged) {
  std::uint64_t evals = 0;
  auto term_at = [&](double t) {
    const double u = kHalfPi * std::sinh(t);
    if (u > 700.0) return std::numeric_limits<double>::quiet_NaN();
    const double off = std::exp(u);
    if (!(off > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double x = a + off;
    if (!(x > a)) return std::numeric_limits<double>::quiet_NaN();
    const double w = kHalfPi * std::cosh(t) * off;
    ++evals;
    const double v = f(x);
    return w * v;
  };
  double h = 0.5;
  double sum = term_at(0.0);
  double abs_sum = std::abs(sum);
  auto accumulate = [&](double start, double step) {
    for (int dir : {1, -1}) {
      int small_run = 0;
      for (double t = start;; t += step) {
        const double term = term_at(dir * t);
        if (std::isnan(term)) break;
        sum += term;
        abs_sum += std::abs(term);
        if (t > 1.0 && std::abs(term) <= 1e-20 * std::abs(sum)) {
          if (++small_run >= 2) break;
        } else {
          small_run = 0;
        }
        if (t > 8.0) break;
      }
    }
  };
  accumulate(h, h);
  double estimate = h * sum;
  double previous = estimate;
  double err = kInf;
  converged = false;
  for (int level = 1; level <= 12; ++level) {
    if (evals >= spec.max_evals) break;
    h *= 0.5;
    accumulate(h, 2.0 * h);
    estimate = h * sum;
    const double floor = 64.0 * kEps * h * abs_sum;
    err = std::max(std::abs(estimate - previous), floor);
    if (level >= 2 && (err <= spec.tolerance(estimate) || err <= floor)) {
      converged = true;
      break;
    }
    previous = estimate;
  }
  if (!std::isfinite(estimate)) converged = false;
  return {estimate, err, evals, "double-exponential"};
}

Estimate add(const Estimate& x, const Estimate& y) {
  return {x.value + y.value, x.error + y.error, x.evals + y.evals, x.method};
}

Estimate gauss_hermite_integrate(const Integrand& f, Interval interval, const QuadratureSpec& spec,
                                 bool& converged) {
  if (!(std::isinf(interval.lo) && interval.lo < 0 && std::isinf(interval.hi) && interval.hi > 0))
    throw DomainError("gauss-hermite scheme requires the whole real line");
  auto apply = [&](int n) {
    const QuadratureRule& rule = gauss_hermite_unweighted(n);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(rule.nodes[i]);
    return s;
  };
  std::uint64_t evals = 16;
  double prev = apply(16);
  double err = kInf;
  double value = prev;
  converged = false;
  for (int n = 32; n <= 256 && evals + n <= spec.max_evals; n *= 2) {
    value = apply(n);
    evals += n;
    err = std::abs(value - prev);
    if (err <= spec.tolerance(value)) {
      converged = true;
      break;
    }
    prev = value;
  }
  return {value, err, evals, "gauss-hermite"};
}

Estimate dispatch(const Integrand& f, Interval iv, const QuadratureSpec& spec, bool& converged) {
  if (std::isnan(iv.lo) || std::isnan(iv.hi)) throw DomainError("integrate_1d: NaN bound");
  if (iv.lo == iv.hi) {
    converged = true;
    return {0.0, 0.0, 0, std::string(to_string(spec.scheme))};
  }
  if (iv.lo > iv.hi) {
    Estimate e = dispatch(f, {iv.hi, iv.lo}, spec, converged);
    e.value = -e.value;
    return e;
  }
  if (spec.scheme == QuadratureScheme::GaussHermite) return gauss_hermite_integrate(f, iv, spec, converged);

  const bool lo_inf = std::isinf(iv.lo);
  const bool hi_inf = std::isinf(iv.hi);
  if (lo_inf && hi_inf) {
    bool c1 = false, c2 = false;
    QuadratureSpec half = spec;
    half.max_evals = spec.max_evals / 2;
    Estimate right = dispatch(f, {0.0, kInf}, half, c1);
    Estimate left = dispatch([&f](double x) { return f(-x); }, {0.0, kInf}, half, c2);
    converged = c1 && c2;
    return add(right, left);
  }
  if (lo_inf) {
    const double b = iv.hi;
    return dispatch([&f, b](double x) { return f(2.0 * b - x); }, {b, kInf}, spec, converged);
  }
  if (spec.scheme == QuadratureScheme::DoubleExponential) {
    if (hi_inf) return exp_sinh(f, iv.lo, spec, converged);
    return tanh_sinh(f, iv.lo, iv.hi, spec, converged);
  }
  if (hi_inf) {
    const double a = iv.lo;
    auto mapped = [&f, a](double u) {
      const double x = a + (1.0 - u) / u;
      return f(x) / (u * u);
    };
    return adaptive_gk_finite(mapped, 0.0, 1.0, spec, converged);
  }
  return adaptive_gk_finite(f, iv.lo, iv.hi, spec, converged);
}

}  // namespace

Estimate integrate_1d_best(const Integrand& f, Interval interval, const QuadratureSpec& spec,
                           bool& converged) {
  spec.validate();
  return dispatch(f, interval, spec, converged);
}

Estimate integrate_1d(const Integrand& f, Interval interval, const QuadratureSpec& spec) {
  bool converged = false;
  Estimate e = integrate_1d_best(f, interval, spec, converged);
  if (!converged || !std::isfinite(e.value) || !std::isfinite(e.error)) {
    throw NonConvergence("integrate_1d: tolerance not reached within max_evals (" +
                             std::string(to_string(spec.scheme)) + ")",
                         e);
  }
  return e;
}

// ---------------------------------------------------------------------------
// Fixed rules.

namespace {

std::mutex& rule_mutex() {
  static std::mutex m;
  return m;
}

QuadratureRule make_gauss_legendre(int n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (x * p0 - p1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

// Newton iteration on orthonormal Hermite polynomials with the classical
// starting guesses; weights are returned multiplied by exp(x^2).
QuadratureRule make_gauss_hermite(int n) {
  QuadratureRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const double pim4 = 0.7511255444649425;  // pi^(-1/4)
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0)
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    else if (i == 1)
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    else if (i == 2)
      z = 1.86 * z - 0.86 * rule.nodes[0];
    else if (i == 3)
      z = 1.91 * z - 0.91 * rule.nodes[1];
    else
      z = 2.0 * z - rule.nodes[i - 2];
    double pp = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    // Recompute pp at the converged node.
    double p1 = pim4, p2 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
    }
    pp = std::sqrt(2.0 * n) * p2;
    rule.nodes[i] = z;
    rule.nodes[n - 1 - i] = -z;
    const double w = 2.0 / (pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  // Sort ascending and fold exp(x^2) into the weights.
  std::vector<std::size_t> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return rule.nodes[x] < rule.nodes[y]; });
  QuadratureRule sorted;
  for (std::size_t i : order) {
    sorted.nodes.push_back(rule.nodes[i]);
    sorted.weights.push_back(rule.weights[i]);
  }
  return sorted;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
  static std::map<int, QuadratureRule> cache;
  std::lock_guard lock(rule_mutex());
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
  return it->second;
}

namespace {
const QuadratureRule& gauss_hermite_raw(int n) {
  static std::map<int, QuadratureRule> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gauss_hermite(n)).first;
  return it->second;
}
}  // namespace

const QuadratureRule& gauss_hermite_unweighted(int n) {
  static std::map<int, QuadratureRule> cache;
  std::lock_guard lock(rule_mutex());
  auto it = cache.find(n);
  if (it == cache.end()) {
    QuadratureRule r = gauss_hermite_raw(n);
    for (std::size_t i = 0; i < r.nodes.size(); ++i) r.weights[i] *= std::exp(r.nodes[i] * r.nodes[i]);
    it = cache.emplace(n, std::move(r)).first;
  }
  return it->second;
}

const QuadratureRule& gauss_hermite_normal(int n) {
  static std::map<int, QuadratureRule> cache;
  std::lock_guard lock(rule_mutex());
  auto it = cache.find(n);
  if (it == cache.end()) {
    QuadratureRule r = gauss_hermite_raw(n);
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      r.nodes[i] *= std::numbers::sqrt2;
      r.weights[i] /= std::sqrt(std::numbers::pi);
    }
    it = cache.emplace(n, std::move(r)).first;
  }
  return it->second;
}

double gauss_legendre_integrate(const Integrand& f, double a, double b, int n) {
  const QuadratureRule& rule = gauss_legendre(n);
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(c + h * rule.nodes[i]);
  return s * h;
}

}  // namespace gfp

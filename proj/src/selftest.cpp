#include "mlbiv/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "mlbiv/asymptotics.hpp"
#include "mlbiv/evaluator.hpp"
#include "mlbiv/gamma.hpp"
#include "mlbiv/integral_reps.hpp"
#include "mlbiv/series.hpp"

namespace mlbiv {
namespace {

using std::numbers::pi;

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

// Tracks the worst deviation seen and whether it stayed within the limit.
struct Worst {
  explicit Worst(double l) : limit(l) {}

  double limit;
  double value = 0;
  std::string where;

  void see(double d, const std::string& at) {
    if (!(d <= value) || std::isnan(d)) {
      value = d;
      where = at;
    }
  }
  bool ok() const { return value <= limit; }
  std::string summary(const char* what) const {
    std::ostringstream s;
    s << what << " " << value << " (limit " << limit << ")";
    if (!ok()) s << " at " << where;
    return s.str();
  }
};

std::string at(Complex x, Complex y) {
  std::ostringstream s;
  s << "x=" << x << " y=" << y;
  return s.str();
}

EvalOptions options(Method m, double tol) {
  EvalOptions o;
  o.method = m;
  o.tol = tol;
  return o;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  return v;
}

SuiteResult gamma_suite() {
  Worst w{1e-9};
  const HankelPath paths[] = {{1.0, 0.75 * pi, 60, 1e-12}, {0.5, 0.6 * pi, 60, 1e-12}, {2.0, pi, 60, 1e-12}};
  for (const auto& path : paths)
    for (double re : linspace(-5, 5, 10))
      for (double im : linspace(-5, 5, 10)) {
        const Complex s(re, im);
        w.see(std::abs(recip_gamma_hankel(s, path, 1e-11) - recip_gamma(s)), at(s, 0));
      }
  return {"gamma", w.ok(), w.summary("max |hankel - direct|"), 0};
}

SuiteResult anchors_suite() {
  Worst w{1e-13};
  const Params base{0.9, 0.8, 1.0};
  for (Complex mu : {Complex(0.5), Complex(1.0), Complex(2.0), Complex(3.0), Complex(1.0, 2.0)}) {
    Params p = base;
    p.mu = mu;
    const Complex want = recip_gamma(mu);
    for (Method m : {Method::Series, Method::Contour}) {
      const EvalResult r = evaluate(0.0, 0.0, p, options(m, 1e-14));
      w.see(std::abs(r.value - want), std::string(to_string(m)));
    }
  }
  return {"anchors", w.ok(), w.summary("max |E(0,0) - 1/Gamma(mu)|"), 0};
}

SuiteResult reductions_suite() {
  Worst w{1e-10};
  const double alphas[] = {0.6, 0.9, 1.3, 1.8};
  const Complex mu(1.0, 0.5);
  for (double a : alphas)
    for (double r : {0.5, 2.0, 4.0})
      for (double phi : {0.0, 2.0, pi}) {
        const Complex z = std::polar(r, phi);
        const Complex one = ml_one_var(z, a, mu, 1e-15).value;
        w.see(rel(evaluate(z, 0.0, {a, 0.9, mu}, options(Method::Auto, 1e-13)).value, one), at(z, 0));
        w.see(rel(evaluate(0.0, z, {0.9, a, mu}, options(Method::Auto, 1e-13)).value, one), at(0, z));
        w.see(rel(eval_contour(z, 0.0, {a, 0.9, mu}, 1e-13).value, one), at(z, 0) + " contour");
      }
  return {"reductions", w.ok(), w.summary("max relative deviation"), 0};
}

SuiteResult collapse_suite() {
  Worst w{1e-9};
  for (double a : {0.7, 1.0, 1.5})
    for (double rx : {0.5, 1.7, 3.0})
      for (double ry : {0.9, 2.5})
        for (double phi : {0.0, 1.2, 2.9}) {
          const Complex x = std::polar(rx, phi), y = std::polar(ry, -0.6);
          const Complex ex = ml_one_var(x, a, 1.0, 1e-15).value, ey = ml_one_var(y, a, 1.0, 1e-15).value;
          const Complex want = (x * ex - y * ey) / (x - y);
          w.see(rel(evaluate(x, y, {a, a, 1.0}, options(Method::Auto, 1e-13)).value, want), at(x, y));
        }
  return {"collapse", w.ok(), w.summary("max relative deviation"), 0};
}

SuiteResult invariance_suite() {
  Worst w{2e-8};
  int changes = 0;
  for (auto [a, b] : {std::pair{0.8, 0.9}, std::pair{0.9, 0.8}})
    for (double re : linspace(-3, 3, 5))
      for (double im : linspace(-2, 2, 5)) {
        const Complex x(re, im), y(0.7 * im + 0.4, 0.9 * re - 0.3);
        const Params p{a, b, 1.0};
        const auto s1 = select_contour(x, y, p, {.epsilon = 0.3, .eta_fraction = 0.3});
        const auto s2 = select_contour(x, y, p, {.epsilon = 5.0, .eta_fraction = 0.8});
        const auto v1 = eval_contour(x, y, p, 1e-12, s1);
        const auto v2 = eval_contour(x, y, p, 1e-12, s2);
        changes += v1.rep_case != v2.rep_case;
        w.see(rel(v1.value, v2.value), at(x, y));
      }
  std::ostringstream s;
  s << w.summary("max relative deviation") << ", " << changes << " case changes";
  return {"invariance", w.ok() && changes > 0, s.str(), 0};
}

SuiteResult cross_suite() {
  Worst w{1e-7};
  int compared = 0;
  const double ab[] = {0.6, 0.9, 1.3, 1.8};
  for (double a : ab)
    for (double b : ab) {
      if (a * b >= 2) continue;
      for (double mu : {0.5, 1.0, 2.0})
        for (double r : {1.0, 4.0})
          for (double phi : {0.3, 2.2, -1.4}) {
            const Complex x = std::polar(r, phi), y = std::polar(0.75 * r, 1.3 - phi);
            const Params p{a, b, mu};
            const SeriesResult s = ml_two_var_series(x, y, p, 1e-15);
            if (s.diagnostics.cancellation_ratio >= kCancellationLimit) continue;
            ++compared;
            w.see(rel(eval_contour(x, y, p, 1e-12).value, s.value), at(x, y));
          }
    }
  std::ostringstream s;
  s << w.summary("max relative deviation") << " over " << compared << " points";
  return {"cross", w.ok(), s.str(), 0};
}

SuiteResult edge_suite() {
  Worst w{kEdgeTolerance};
  for (double b : {1.0, 0.5})
    for (Complex mu : {Complex(1.0), Complex(0.5, 0.5)})
      for (double x : linspace(0.5, 4, 8)) {
        const Complex want = ml_one_var(x, 2.0, mu, 1e-15).value;
        w.see(rel(eval_contour_edge(x, 0.0, {2.0, b, mu}, 1e-10).value, want), at(x, 0));
      }
  return {"edge", w.ok(), w.summary("max relative deviation"), 0};
}

SuiteResult decay_suite() {
  const Params p{0.9, 0.9, 1.0};
  const double tau = default_tau(p);
  const Complex in_x = std::polar(1.0, 0.55 * pi), in_y = std::polar(1.3, 0.5 * pi);
  const Complex out_x = std::polar(1.0, pi), out_y = std::polar(1.2, pi);
  const std::pair<Complex, Complex> rays[] = {{in_x, in_y}, {in_x, out_y}, {out_x, in_y}, {out_x, out_y}};
  bool ok = true;
  std::ostringstream s;
  s << "slopes";
  for (const auto& [dx, dy] : rays) {
    const DecayReport r = verify_decay(dx, dy, p, tau, {1, 1}, {10, 18, 32, 56, 100});
    ok = ok && r.passes();
    s << " " << to_string(r.sector) << "=" << r.slope << (r.passes() ? "" : "(FAIL)");
  }
  return {"decay", ok, s.str(), 0};
}

SuiteResult poles_suite() {
  // Parameter sets where some or all of mu - n alpha - m beta are
  // non-positive integers.
  struct Case {
    Params p;
    int n, m;
  };
  const Case cases[] = {{{1.0, 1.0, 2.0}, 5, 5}, {{0.5, 1.0, 1.5}, 6, 4}, {{0.5, 0.5, 1.0}, 6, 6}, {{1.5, 0.5, 3.0}, 4, 6}};
  int zeros = 0;
  bool ok = true;
  for (const auto& c : cases)
    for (int n = 1; n <= c.n; ++n)
      for (int m = 1; m <= c.m; ++m) {
        const Complex s = c.p.mu - n * c.p.alpha - m * c.p.beta;
        if (s.real() > 0 || s.real() != std::floor(s.real())) continue;
        ++zeros;
        const Complex r = recip_gamma(s);
        ok = ok && r.real() == 0.0 && r.imag() == 0.0;
        // A single-term tail isolates that term.
        const Params shifted{c.p.alpha, c.p.beta, c.p.mu - (n - 1) * c.p.alpha - (m - 1) * c.p.beta};
        ok = ok && asym_tail(37.0, -41.0, shifted, {1, 1}) == Complex(0.0, 0.0);
      }
  ok = ok && asym_tail({12.0, 3.0}, {-7.0, 1.0}, {1.0, 1.0, 2.0}, {6, 6}) == Complex(0.0, 0.0);
  std::ostringstream s;
  s << zeros << " pole terms checked";
  return {"poles", ok && zeros > 0, s.str(), 0};
}

const std::vector<std::pair<std::string, std::function<SuiteResult()>>>& registry() {
  static const std::vector<std::pair<std::string, std::function<SuiteResult()>>> r = {
      {"gamma", gamma_suite},   {"anchors", anchors_suite}, {"reductions", reductions_suite},
      {"collapse", collapse_suite}, {"invariance", invariance_suite}, {"cross", cross_suite},
      {"edge", edge_suite},     {"decay", decay_suite},     {"poles", poles_suite},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& selftest_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, f] : registry()) v.push_back(n);
    return v;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name) {
  for (const auto& [n, f] : registry()) {
    if (n != name) continue;
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult r;
    try {
      r = f();
    } catch (const Error& e) {
      r = {name, false, std::string("error: ") + to_string(e.code()) + ": " + e.what(), 0};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }
  std::string known;
  for (const auto& n : selftest_suites()) known += (known.empty() ? "" : ", ") + n;
  throw Error(ErrorCode::InvalidArgument, "unknown suite '" + name + "'; available: " + known);
}

}  // namespace mlbiv

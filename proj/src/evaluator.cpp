#include "mlbiv/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace mlbiv {
namespace {

constexpr double kEpsD = std::numeric_limits<double>::epsilon();

EvalResult from_series(const SeriesResult& s) {
  EvalResult r;
  r.value = s.value;
  r.method = Method::Series;
  r.error_estimate = s.error_estimate;
  r.series = s.diagnostics;
  r.warnings = s.warnings;
  return r;
}

EvalResult from_contour(const ContourResult& c) {
  EvalResult r;
  r.value = c.value;
  r.method = Method::Contour;
  r.region = to_string(c.rep_case);
  r.error_estimate = c.error_estimate;
  r.contour = c.selection;
  r.warnings = c.warnings;
  return r;
}

EvalResult run_series(Complex x, Complex y, const Params& p, const EvalOptions& o) {
  // A tighter internal target than tol: the stop rule measures the last
  // increments, not the error.
  EvalResult r = from_series(ml_two_var_series(x, y, p, std::max(o.tol / 100, 1e-17)));
  if (r.series->cancellation_ratio >= kCancellationLimit)
    r.error_estimate = std::max(r.error_estimate, r.series->cancellation_ratio * kEpsD * std::abs(r.value));
  return r;
}

EvalResult run_contour(Complex x, Complex y, const Params& p, const EvalOptions& o) {
  return from_contour(eval_contour(x, y, p, std::max(o.tol / 10, 1e-16)));
}

// Orders grow until the next ring of terms stops shrinking or is below the
// target; the estimate is that ring plus the size of the omitted exponentials.
EvalResult run_asymptotic(Complex x, Complex y, const Params& p, const EvalOptions& o) {
  const double tau = o.tau ? *o.tau : default_tau(p);
  double best_err = std::numeric_limits<double>::infinity();
  int best_order = 1;
  Complex prev_tail = asym_tail(x, y, p, {1, 1});
  int growing = 0;
  double prev_ring = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= o.max_order; ++n) {
    const Complex next_tail = asym_tail(x, y, p, {n + 1, n + 1});
    const double ring = std::abs(next_tail - prev_tail);
    if (ring < best_err) {
      best_err = ring;
      best_order = n;
    }
    growing = ring > prev_ring ? growing + 1 : 0;
    prev_ring = ring;
    prev_tail = next_tail;
    if (growing >= 3) break;
    if (ring <= o.tol * std::abs(next_tail) / 10 && ring > 0) break;
    if (ring == 0 && n >= 2) break;
  }
  const AsymResult best = asym_eval(x, y, p, tau, {best_order, best_order});

  EvalResult r;
  r.value = best.value;
  r.method = Method::Asymptotic;
  r.region = to_string(best.sector.sector);
  r.error_estimate = best_err + best.dropped_exponentials + kEpsD * std::abs(best.value);
  r.orders = TruncationOrders{best_order, best_order};
  r.warnings = best.warnings;
  return r;
}

EvalResult run(Method m, Complex x, Complex y, const Params& p, const EvalOptions& o) {
  switch (m) {
    case Method::Series: return run_series(x, y, p, o);
    case Method::Contour: return run_contour(x, y, p, o);
    case Method::Asymptotic: return run_asymptotic(x, y, p, o);
    case Method::Auto: break;
  }
  throw Error(ErrorCode::InvalidArgument, "run: method must be concrete");
}

std::string describe(const Error& e) { return std::string(to_string(e.code())) + ": " + e.what(); }

std::string all_failed_message(const std::vector<Attempt>& attempts) {
  std::ostringstream msg;
  msg << "all methods failed";
  for (const auto& a : attempts) msg << "; " << to_string(a.method) << ": " << a.cause;
  return msg.str();
}

void add_tolerance_warning(EvalResult& r, double tol) {
  std::ostringstream msg;
  msg << "tolerance-not-met: error estimate " << r.error_estimate << " exceeds tol " << tol << " (relative)";
  r.warnings.push_back(msg.str());
}

}  // namespace

const char* to_string(Method m) {
  switch (m) {
    case Method::Auto: return "auto";
    case Method::Series: return "series";
    case Method::Contour: return "contour";
    case Method::Asymptotic: return "asymptotic";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "auto") return Method::Auto;
  if (name == "series") return Method::Series;
  if (name == "contour") return Method::Contour;
  if (name == "asym" || name == "asymptotic") return Method::Asymptotic;
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + name + "' (auto, series, contour, asym)");
}

void EvalOptions::validate() const {
  if (!(tol > 0) || !std::isfinite(tol)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (!(r_series >= 0) || !(r_asym >= 0)) throw Error(ErrorCode::InvalidArgument, "radius thresholds must be >= 0");
  if (max_order < 1) throw Error(ErrorCode::InvalidArgument, "max_order must be >= 1");
}

bool meets_tolerance(Complex value, double error_estimate, double tol) {
  const double scale = std::abs(value);
  return scale > 0 ? error_estimate <= tol * scale : error_estimate <= tol;
}

EvalResult evaluate(Complex x, Complex y, const Params& p, const EvalOptions& opts) {
  require_finite(x, "x");
  require_finite(y, "y");
  p.validate();
  opts.validate();

  std::vector<Attempt> attempts;
  std::optional<EvalResult> best;
  auto best_ratio = [](const EvalResult& r) {
    const double s = std::abs(r.value);
    return s > 0 ? r.error_estimate / s : r.error_estimate;
  };

  // Returns true when the attempt met tol.
  auto attempt = [&](Method m) {
    Attempt a;
    a.method = m;
    try {
      EvalResult r = run(m, x, y, p, opts);
      a.produced_value = true;
      a.error_estimate = r.error_estimate;
      a.met_tolerance = meets_tolerance(r.value, r.error_estimate, opts.tol);
      if (!a.met_tolerance) {
        std::ostringstream msg;
        msg << "error estimate " << r.error_estimate << " exceeds tol";
        a.cause = msg.str();
      }
      if (!best || best_ratio(r) < best_ratio(*best)) best = std::move(r);
      attempts.push_back(a);
      return a.met_tolerance;
    } catch (const Error& e) {
      a.cause = describe(e);
      attempts.push_back(a);
      return false;
    }
  };

  auto finish = [&]() {
    if (!best) throw Error(ErrorCode::AllMethodsFailed, all_failed_message(attempts));
    EvalResult r = std::move(*best);
    r.attempts = attempts;
    if (!meets_tolerance(r.value, r.error_estimate, opts.tol)) add_tolerance_warning(r, opts.tol);
    return r;
  };

  if (opts.method != Method::Auto) {
    attempt(opts.method);
    return finish();
  }

  const double big = std::max(std::abs(x), std::abs(y));
  const double small = std::min(std::abs(x), std::abs(y));
  const bool contour_ok = p.contour_capable() || p.edge_capable();
  bool tried_series = false;

  if (big <= opts.r_series) {
    tried_series = true;
    if (attempt(Method::Series)) return finish();
  }
  if (small >= opts.r_asym && p.contour_capable()) {
    if (attempt(Method::Asymptotic)) return finish();
  }
  if (contour_ok) {
    if (attempt(Method::Contour)) return finish();
  }
  if (!tried_series) {
    const bool degenerate = !attempts.empty() && attempts.back().cause.rfind("degenerate-denominator", 0) == 0;
    tried_series = true;
    attempt(Method::Series);
    if (degenerate && best && best->method == Method::Series)
      best->warnings.push_back("degenerate-residue: contour route unusable here, fell back to the series");
  }
  if (!contour_ok) {
    Attempt a;
    a.method = Method::Contour;
    a.cause = "parameter-out-of-range: " + p.contour_hypothesis_violation();
    attempts.push_back(a);
  }
  return finish();
}

}  // namespace mlbiv

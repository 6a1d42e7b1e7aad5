#include "mlbiv/series.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "mlbiv/gamma.hpp"

namespace mlbiv {
namespace {

using L = long double;

struct KahanSum {
  LComplex sum{};
  LComplex carry{};

  void add(LComplex v) {
    const LComplex y = v - carry;
    const LComplex t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

constexpr L kPowerLimit = 1e4000L;

LComplex rg(LComplex s) {
  if (s.imag() == 0) return {detail::recip_gamma_l(s.real()), 0.0L};
  return detail::recip_gamma_l(s);
}

Complex narrow(LComplex v) { return {static_cast<double>(v.real()), static_cast<double>(v.imag())}; }

void check_tol(double tol) {
  if (!(tol > 0) || !std::isfinite(tol)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
}

// Tracks the three-small-in-a-row stopping rule. A step counts as small only
// once magnitudes have stopped growing.
class StopRule {
 public:
  explicit StopRule(L tol) : tol_(tol) {}

  bool step(L magnitude, L partial) {
    const bool small = magnitude < tol_ * partial && magnitude <= previous_;
    run_ = small ? run_ + 1 : 0;
    previous_ = magnitude;
    return run_ >= 3;
  }

 private:
  L tol_;
  L previous_ = std::numeric_limits<L>::infinity();
  int run_ = 0;
};

struct Accumulated {
  LComplex value;
  SeriesDiagnostics diag;
  L peak = 0;     // largest intermediate magnitude
  L tail = 0;     // sum of the last three increments
};

SeriesResult finish(const Accumulated& acc, const char* what) {
  SeriesResult out;
  out.value = narrow(acc.value);
  out.diagnostics = acc.diag;
  const L mag = std::abs(acc.value);
  out.diagnostics.cancellation_ratio =
      mag > 0 ? std::max(1.0, static_cast<double>(acc.peak / mag)) : std::numeric_limits<double>::infinity();
  const double rounding = static_cast<double>(64 * std::numeric_limits<L>::epsilon() * acc.peak) +
                          std::numeric_limits<double>::epsilon() * std::abs(out.value);
  out.error_estimate = static_cast<double>(acc.tail) + rounding;
  if (out.diagnostics.cancellation_ratio > kCancellationLimit) {
    std::ostringstream msg;
    msg << "cancellation-loss: " << what << " cancellation ratio " << out.diagnostics.cancellation_ratio;
    out.warnings.push_back(msg.str());
  }
  return out;
}

Accumulated one_var(LComplex z, L alpha, LComplex nu, L tol) {
  Accumulated acc;
  if (z == LComplex(0)) {
    acc.value = rg(nu);
    acc.peak = std::abs(acc.value);
    acc.diag.diagonals_summed = 1;
    return acc;
  }
  KahanSum sum;
  StopRule stop(tol);
  LComplex power = 1;
  L last[3] = {0, 0, 0};
  for (int k = 0;; ++k) {
    if (k >= kMaxDiagonals)
      throw Error(ErrorCode::NoConvergence, "one-variable series did not converge within the term limit");
    const LComplex term = power * rg(alpha * L(k) + nu);
    sum.add(term);
    const L mag = std::abs(term);
    acc.peak = std::max({acc.peak, mag, std::abs(sum.sum)});
    last[k % 3] = mag;
    acc.diag.diagonals_summed = k + 1;
    acc.diag.last_increment_magnitude = static_cast<double>(mag);
    if (stop.step(mag, std::abs(sum.sum))) break;
    power *= z;
    if (std::abs(power) > kPowerLimit)
      throw Error(ErrorCode::NoConvergence, "power overflow in one-variable series");
  }
  acc.value = sum.sum;
  acc.tail = last[0] + last[1] + last[2];
  return acc;
}

}  // namespace

void Params::validate() const {
  if (!(alpha > 0) || !std::isfinite(alpha))
    throw Error(ErrorCode::InvalidArgument, "alpha must be a positive real number");
  if (!(beta > 0) || !std::isfinite(beta))
    throw Error(ErrorCode::InvalidArgument, "beta must be a positive real number");
  require_finite(mu, "mu");
}

bool Params::contour_capable() const {
  return alpha > 0 && alpha < 2 && beta > 0 && beta < 2 && alpha * beta < 2;
}

bool Params::edge_capable() const {
  const bool a2 = alpha == 2.0 && beta > 0 && beta <= 1;
  const bool b2 = beta == 2.0 && alpha > 0 && alpha <= 1;
  return (a2 || b2) && mu.real() > 0;
}

std::string Params::contour_hypothesis_violation() const {
  if (contour_capable() || edge_capable()) return {};
  std::ostringstream msg;
  if (alpha == 2.0 || beta == 2.0) {
    if (mu.real() <= 0) return "the alpha = 2 / beta = 2 limit requires Re(mu) > 0";
    return "the alpha = 2 / beta = 2 limit requires the other parameter in (0, 1]";
  }
  msg << "contour representation requires 0 < alpha < 2, 0 < beta < 2 and alpha*beta < 2 (alpha="
      << alpha << ", beta=" << beta << ")";
  return msg.str();
}

SeriesResult ml_one_var(Complex z, double alpha, Complex nu, double tol) {
  require_finite(z, "z");
  require_finite(nu, "nu");
  if (!(alpha > 0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  check_tol(tol);
  return finish(one_var({z.real(), z.imag()}, alpha, {nu.real(), nu.imag()}, tol), "one-variable series");
}

SeriesResult ml_two_var_series(Complex x, Complex y, const Params& p, double tol) {
  require_finite(x, "x");
  require_finite(y, "y");
  p.validate();
  check_tol(tol);

  const LComplex lx(x.real(), x.imag());
  const LComplex ly(y.real(), y.imag());
  const LComplex mu(p.mu.real(), p.mu.imag());
  const L alpha = p.alpha;
  const L beta = p.beta;

  Accumulated acc;
  if (x == Complex(0) && y == Complex(0)) {
    acc.value = rg(mu);
    acc.peak = std::abs(acc.value);
    acc.diag.diagonals_summed = 1;
    return finish(acc, "double series");
  }

  std::vector<LComplex> xp{1}, yp{1};
  KahanSum sum;
  StopRule stop(tol);
  L last[3] = {0, 0, 0};
  for (int k = 0;; ++k) {
    if (k >= kMaxDiagonals)
      throw Error(ErrorCode::NoConvergence, "double series did not converge within 10000 diagonals");
    if (k > 0) {
      xp.push_back(xp.back() * lx);
      yp.push_back(yp.back() * ly);
      if (std::abs(xp.back()) > kPowerLimit || std::abs(yp.back()) > kPowerLimit)
        throw Error(ErrorCode::NoConvergence, "power overflow in double series");
    }
    L diagonal = 0;
    for (int n = 0; n <= k; ++n) {
      const int m = k - n;
      if ((n > 0 && lx == LComplex(0)) || (m > 0 && ly == LComplex(0))) continue;
      const LComplex s = alpha * L(n) + beta * L(m) + mu;
      const LComplex r = rg(s);
      if (r == LComplex(0)) continue;
      const LComplex term = xp[n] * yp[m] * r;
      sum.add(term);
      diagonal += std::abs(term);
    }
    acc.peak = std::max({acc.peak, diagonal, std::abs(sum.sum)});
    last[k % 3] = diagonal;
    acc.diag.diagonals_summed = k + 1;
    acc.diag.last_increment_magnitude = static_cast<double>(diagonal);
    if (stop.step(diagonal, std::abs(sum.sum))) break;
  }
  acc.value = sum.sum;
  acc.tail = last[0] + last[1] + last[2];
  return finish(acc, "double series");
}

SeriesResult ml_reduction_row(Complex x, Complex y, const Params& p, double tol) {
  require_finite(x, "x");
  require_finite(y, "y");
  p.validate();
  check_tol(tol);

  const LComplex lx(x.real(), x.imag());
  const LComplex ly(y.real(), y.imag());
  const LComplex mu(p.mu.real(), p.mu.imag());
  const L alpha = p.alpha;
  const L beta = p.beta;

  Accumulated acc;
  KahanSum sum;
  StopRule stop(tol);
  LComplex power = 1;
  L last[3] = {0, 0, 0};
  for (int n = 0;; ++n) {
    if (n >= kMaxDiagonals)
      throw Error(ErrorCode::NoConvergence, "row summation did not converge within 10000 rows");
    const Accumulated inner = one_var(ly, beta, alpha * L(n) + mu, tol);
    const LComplex row = power * inner.value;
    sum.add(row);
    const L mag = std::abs(row);
    acc.peak = std::max({acc.peak, std::abs(power) * inner.peak, std::abs(sum.sum)});
    last[n % 3] = mag;
    acc.diag.diagonals_summed = n + 1;
    acc.diag.last_increment_magnitude = static_cast<double>(mag);
    if (lx == LComplex(0)) break;
    if (stop.step(mag, std::abs(sum.sum))) break;
    power *= lx;
    if (std::abs(power) > kPowerLimit) throw Error(ErrorCode::NoConvergence, "power overflow in row summation");
  }
  acc.value = sum.sum;
  acc.tail = last[0] + last[1] + last[2];
  return finish(acc, "row summation");
}

}  // namespace mlbiv

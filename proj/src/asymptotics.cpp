#include "mlbiv/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mlbiv/gamma.hpp"
#include "mlbiv/integral_reps.hpp"

namespace mlbiv {
namespace {

using L = long double;

void require_expansion_params(const Params& p) {
  p.validate();
  if (!p.contour_capable())
    throw Error(ErrorCode::ParameterOutOfRange,
                "asymptotic expansion requires 0 < alpha < 2, 0 < beta < 2 and alpha*beta < 2");
}

void check_tau(const Params& p, double tau) {
  const auto [lo, hi] = eta_interval(p);
  if (!(tau > lo && tau <= hi)) {
    std::ostringstream msg;
    msg << "tau = " << tau << " is outside the admissible interval (" << lo << ", " << hi << "]";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

LComplex tail_l(Complex x, Complex y, const Params& p, const TruncationOrders& o) {
  const LComplex ix = LComplex(1) / LComplex(x.real(), x.imag());
  const LComplex iy = LComplex(1) / LComplex(y.real(), y.imag());
  const LComplex mu(p.mu.real(), p.mu.imag());
  std::vector<LComplex> px(o.n_max + 1), py(o.m_max + 1);
  px[0] = py[0] = 1;
  for (int n = 1; n <= o.n_max; ++n) px[n] = px[n - 1] * ix;
  for (int m = 1; m <= o.m_max; ++m) py[m] = py[m - 1] * iy;

  std::vector<LComplex> terms;
  terms.reserve(static_cast<std::size_t>(o.n_max) * o.m_max);
  for (int n = 1; n <= o.n_max; ++n)
    for (int m = 1; m <= o.m_max; ++m) {
      // n*alpha + m*beta is a single commutative addition, so the swapped sum
      // sees the same argument bit for bit.
      const L shift = L(n) * L(p.alpha) + L(m) * L(p.beta);
      const LComplex r = detail::recip_gamma_l(mu - shift);
      if (r == LComplex(0)) continue;
      terms.push_back(px[n] * py[m] * r);
    }
  // Value-determined order: smallest first, ties broken by components.
  std::sort(terms.begin(), terms.end(), [](const LComplex& a, const LComplex& b) {
    const L ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma < mb;
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  LComplex sum = 0;
  for (const auto& t : terms) sum += t;
  return sum;
}

Complex narrow(LComplex z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

}  // namespace

namespace detail {

double fit_log_slope(const std::vector<double>& radii, const std::vector<double>& residuals) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < radii.size() && i < residuals.size(); ++i)
    if (residuals[i] > 0) {
      lx.push_back(std::log(radii[i]));
      ly.push_back(std::log(residuals[i]));
    }
  if (lx.size() < 2) return -std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace detail

const char* to_string(SectorCase c) {
  switch (c) {
    case SectorCase::Case1: return "case1";
    case SectorCase::Case2: return "case2";
    case SectorCase::Case3: return "case3";
    case SectorCase::Case4: return "case4";
  }
  return "?";
}

void TruncationOrders::validate() const {
  if (n_max < 1 || m_max < 1) throw Error(ErrorCode::InvalidArgument, "truncation orders must be >= 1");
}

double default_tau(const Params& p) {
  require_expansion_params(p);
  return default_eta(p);
}

SectorClass classify_sector(Complex x, Complex y, const Params& p, double tau) {
  require_finite(x, "x");
  require_finite(y, "y");
  require_expansion_params(p);
  check_tau(p, tau);
  const bool xin = std::abs(std::arg(x)) <= tau / p.beta;
  const bool yin = std::abs(std::arg(y)) <= tau / p.alpha;
  SectorClass out;
  out.tau = tau;
  out.sector = xin ? (yin ? SectorCase::Case1 : SectorCase::Case2) : (yin ? SectorCase::Case3 : SectorCase::Case4);
  return out;
}

Complex asym_tail(Complex x, Complex y, const Params& p, const TruncationOrders& orders) {
  require_finite(x, "x");
  require_finite(y, "y");
  p.validate();
  orders.validate();
  if (x == Complex(0) || y == Complex(0))
    throw Error(ErrorCode::InvalidArgument, "asymptotic tail needs x != 0 and y != 0");
  return narrow(tail_l(x, y, p, orders));
}

AsymResult asym_eval(Complex x, Complex y, const Params& p, double tau, const TruncationOrders& orders) {
  AsymResult out;
  out.sector = classify_sector(x, y, p, tau);
  out.tail = asym_tail(x, y, p, orders);

  LComplex total = tail_l(x, y, p, orders);
  const bool rx = includes_residue_x(out.sector.sector);
  const bool ry = includes_residue_y(out.sector.sector);
  if (rx) {
    out.residue_x = residue_x(x, y, p);
    total += LComplex(out.residue_x.real(), out.residue_x.imag());
  }
  if (ry) {
    out.residue_y = residue_y(x, y, p);
    total += LComplex(out.residue_y.real(), out.residue_y.imag());
  }
  // The omitted exponential terms are small outside the sectors; report their
  // size where it can be computed.
  try {
    if (!rx) out.dropped_exponentials += std::abs(residue_x(x, y, p));
    if (!ry) out.dropped_exponentials += std::abs(residue_y(x, y, p));
  } catch (const Error&) {
    // Degenerate pairing of the omitted terms: nothing meaningful to report.
  }
  out.value = narrow(total);
  if (!is_finite(out.value)) throw Error(ErrorCode::NoConvergence, "asymptotic value overflows double precision");

  std::ostringstream tag;
  tag << "o(|xy|^-1 |x|^-" << orders.n_max << ") + o(|xy|^-1 |y|^-" << orders.m_max << ")";
  out.order_tag = tag.str();

  if (std::min(std::abs(x), std::abs(y)) < kValidityFloor) {
    std::ostringstream msg;
    msg << "validity-floor: min(|x|,|y|) = " << std::min(std::abs(x), std::abs(y)) << " is below " << kValidityFloor;
    out.warnings.push_back(msg.str());
  }
  if (std::abs(std::abs(std::arg(x)) - tau / p.beta) < kSectorBoundaryWidth ||
      std::abs(std::abs(std::arg(y)) - tau / p.alpha) < kSectorBoundaryWidth)
    out.warnings.push_back("sector-boundary: a point lies within 1e-6 of a sector boundary");
  return out;
}

DecayReport verify_decay(Complex d_x, Complex d_y, const Params& p, double tau, const TruncationOrders& orders,
                         const std::vector<double>& radii) {
  if (radii.size() < 5) throw Error(ErrorCode::InvalidArgument, "verify_decay needs at least 5 radii");
  for (std::size_t i = 0; i < radii.size(); ++i)
    if (!(radii[i] > 0) || (i > 0 && !(radii[i] > radii[i - 1])))
      throw Error(ErrorCode::InvalidArgument, "radii must be positive and increasing");
  orders.validate();

  DecayReport rep;
  rep.radii = radii;
  rep.target = -(2.0 + std::min(orders.n_max, orders.m_max));
  for (double r : radii) {
    const Complex x = r * d_x, y = r * d_y;
    const AsymResult a = asym_eval(x, y, p, tau, orders);
    rep.sector = a.sector.sector;

    Complex oracle;
    std::string used;
    try {
      oracle = eval_contour(x, y, p, 1e-14).value;
      used = "contour";
    } catch (const Error& ce) {
      try {
        const SeriesResult s = ml_two_var_series(x, y, p, 1e-15);
        if (s.diagnostics.cancellation_ratio >= kCancellationLimit)
          throw Error(ErrorCode::NoConvergence, "series cancellation too large");
        oracle = s.value;
        used = "series";
      } catch (const Error& se) {
        std::ostringstream msg;
        msg << "no oracle at r = " << r << ": contour: " << ce.what() << "; series: " << se.what();
        throw Error(ErrorCode::OracleUnavailable, msg.str());
      }
    }
    rep.residuals.push_back(std::abs(oracle - a.value));
    rep.oracles.push_back(used);
  }

  rep.slope = detail::fit_log_slope(radii, rep.residuals);
  const std::size_t k = rep.residuals.size();
  rep.monotone_tail = rep.residuals[k - 2] < rep.residuals[k - 3] && rep.residuals[k - 1] < rep.residuals[k - 2];
  if (std::all_of(rep.residuals.begin(), rep.residuals.end(), [](double v) { return v == 0; })) rep.monotone_tail = true;
  return rep;
}

}  // namespace mlbiv

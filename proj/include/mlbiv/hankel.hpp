#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "mlbiv/types.hpp"

namespace mlbiv {

/// The contour gamma(eps; eta): two rays arg z = +-eta, |z| >= eps, joined by
/// the arc |z| = eps, traversed by non-decreasing arg. Rays are cut at
/// truncation_radius.
struct HankelPath {
  double epsilon = 1.0;
  double eta = 0.75 * std::numbers::pi;
  double truncation_radius = 60.0;
  double rel_tol = 1e-12;

  /// Throws ErrorCode::InvalidArgument when an invariant is violated.
  void validate() const;
};

enum class RegionLabel { LeftOfContour, RightOfContour, OnContour };

const char* to_string(RegionLabel label);

/// OnContour tolerance used when the caller does not pass one.
double default_delta(Complex w);

/// Euclidean distance from w to the untruncated contour gamma(eps; eta).
double distance_to_path(Complex w, double epsilon, double eta);

RegionLabel classify(Complex w, const HankelPath& path, double delta);
RegionLabel classify(Complex w, const HankelPath& path);

template <class Real>
struct Quadrature {
  std::complex<Real> value{};
  Real error = 0;
  Real l1_norm = 0;  // estimate of \int |f| |dz|
  std::size_t evaluations = 0;
};

struct QuadratureOptions {
  double abs_tol = 0.0;
  std::size_t max_evaluations = 1'000'000;
  bool check_tail = true;
  // Per-panel roundoff floor, in units of eps * \int |f|. QUADPACK uses 50;
  // a smaller value is sound when the arithmetic carries guard digits.
  double roundoff_factor = 50.0;
};

/// A parametrised piece of contour: t in [a, b] maps to (z(t), z'(t)).
/// `breaks` optionally lists interior points used for the initial panels.
template <class Real>
struct Segment {
  using C = std::complex<Real>;
  std::function<std::pair<C, C>(Real)> map;
  Real a = 0;
  Real b = 0;
  std::vector<Real> breaks;
};

namespace detail {

// Kronrod 15 / Gauss 7 on [-1, 1]. Index 1, 3, 5 (and the centre) are the
// Gauss abscissae.
template <class Real>
struct Gk15 {
  static constexpr std::array<Real, 8> xk = {
      Real(0.991455371120812639206854697526329L), Real(0.949107912342758524526189684047851L),
      Real(0.864864423359769072789712788640926L), Real(0.741531185599394439863864773280788L),
      Real(0.586087235467691130294144845693013L), Real(0.405845151377397166906606412076961L),
      Real(0.207784955007898467600689403773245L), Real(0.0L)};
  static constexpr std::array<Real, 8> wk = {
      Real(0.022935322010529224963732008058970L), Real(0.063092092629978553290700663189204L),
      Real(0.104790010322250183839876322541518L), Real(0.140653259715525918745189590510238L),
      Real(0.169004726639267902826583426598550L), Real(0.190350578064785409913256402421014L),
      Real(0.204432940075298892414161999234649L), Real(0.209482141084727828012999174891714L)};
  static constexpr std::array<Real, 4> wg = {
      Real(0.129484966168869693270611432679082L), Real(0.279705391489276667901467771423780L),
      Real(0.381830050505118944950369775488975L), Real(0.417959183673469387755102040816327L)};
};

template <class Real>
struct Panel {
  std::size_t segment = 0;
  Real a = 0;
  Real b = 0;
  std::complex<Real> value{};
  Real error = 0;
  Real l1 = 0;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class Real, class F>
Panel<Real> gk15_panel(const Segment<Real>& seg, std::size_t index, Real a, Real b, F& f,
                       Real roundoff = Real(50)) {
  using C = std::complex<Real>;
  using T = Gk15<Real>;
  const Real centre = (a + b) / 2;
  const Real half = (b - a) / 2;
  std::array<C, 15> g;
  auto eval = [&](Real t) {
    auto [z, dz] = seg.map(t);
    return f(z) * dz;
  };
  g[7] = eval(centre);
  for (int j = 0; j < 7; ++j) {
    g[j] = eval(centre - half * T::xk[j]);
    g[14 - j] = eval(centre + half * T::xk[j]);
  }
  C kron = g[7] * T::wk[7];
  C gauss = g[7] * T::wg[3];
  Real resabs = std::abs(g[7]) * T::wk[7];
  for (int j = 0; j < 7; ++j) {
    const C pair = g[j] + g[14 - j];
    kron += pair * T::wk[j];
    resabs += (std::abs(g[j]) + std::abs(g[14 - j])) * T::wk[j];
    if (j % 2 == 1) gauss += pair * T::wg[j / 2];
  }
  const C mean = kron / Real(2);
  Real resasc = std::abs(g[7] - mean) * T::wk[7];
  for (int j = 0; j < 7; ++j)
    resasc += (std::abs(g[j] - mean) + std::abs(g[14 - j] - mean)) * T::wk[j];

  kron *= half;
  gauss *= half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);

  constexpr Real eps = std::numeric_limits<Real>::epsilon();
  Real err = std::abs(kron - gauss);
  if (resasc != 0 && err != 0)
    err = resasc * std::min(Real(1), std::pow(Real(200) * err / resasc, Real(1.5)));
  err = std::max(err, roundoff * eps * resabs);
  if (!std::isfinite(std::abs(kron)))
    throw Error(ErrorCode::NonConvergentQuadrature, "integrand is not finite on the contour");
  return {index, a, b, kron, err, resabs};
}

/// Globally adaptive Gauss-Kronrod over a set of segments: the panel with the
/// largest error estimate is bisected until the summed estimate meets
/// max(abs_tol, rel_tol * L1) or the roundoff floor.
template <class Real, class F>
Quadrature<Real> adaptive_gk(const std::vector<Segment<Real>>& segments, F&& f, Real rel_tol,
                             Real abs_tol, std::size_t max_evaluations, Real roundoff = Real(50)) {
  std::priority_queue<Panel<Real>> heap;
  Quadrature<Real> out;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const auto& seg = segments[s];
    std::vector<Real> pts;
    pts.push_back(seg.a);
    for (Real t : seg.breaks)
      if ((t - seg.a) * (seg.b - t) > 0) pts.push_back(t);
    pts.push_back(seg.b);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      heap.push(gk15_panel(seg, s, pts[i], pts[i + 1], f, roundoff));
      out.evaluations += 15;
    }
  }

  constexpr Real eps = std::numeric_limits<Real>::epsilon();
  auto totals = [&heap]() {
    // priority_queue hides its container; copy is cheap relative to the
    // integrand and keeps the sums free of incremental drift.
    auto copy = heap;
    std::complex<Real> v{};
    Real e = 0, l1 = 0;
    while (!copy.empty()) {
      v += copy.top().value;
      e += copy.top().error;
      l1 += copy.top().l1;
      copy.pop();
    }
    return std::tuple{v, e, l1};
  };

  auto [value, error, l1] = totals();
  std::size_t since_refresh = 0;
  for (;;) {
    const Real target = std::max({abs_tol, rel_tol * l1, Real(1.28) * roundoff * eps * l1});
    if (error <= target) break;
    if (out.evaluations >= max_evaluations)
      throw Error(ErrorCode::NonConvergentQuadrature,
                  "quadrature node budget exhausted (error estimate " +
                      std::to_string(static_cast<double>(error)) + ")");
    Panel<Real> worst = heap.top();
    heap.pop();
    const Real mid = (worst.a + worst.b) / 2;
    const auto& seg = segments[worst.segment];
    Panel<Real> left = gk15_panel(seg, worst.segment, worst.a, mid, f, roundoff);
    Panel<Real> right = gk15_panel(seg, worst.segment, mid, worst.b, f, roundoff);
    out.evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
    if (++since_refresh == 64) {
      std::tie(value, error, l1) = totals();
      since_refresh = 0;
    }
  }
  std::tie(out.value, out.error, out.l1_norm) = totals();
  return out;
}

template <class Real>
std::complex<Real> ray_direction(Real eta, int side) {
  // At eta = pi the two rays coincide with the negative axis; the signed zero
  // keeps arg = +pi on the outbound ray and -pi on the inbound one.
  if (eta >= static_cast<Real>(std::numbers::pi))
    return {Real(-1), side > 0 ? Real(0) : -Real(0)};
  return {std::cos(eta), side * std::sin(eta)};
}

template <class Real>
std::vector<Real> geometric_breaks(Real from, Real to) {
  std::vector<Real> b;
  for (Real r = from * 2; r < to; r *= 2) b.push_back(r);
  return b;
}

}  // namespace detail

/// The three pieces of gamma(eps; eta) in traversal order: inbound ray at
/// -eta, arc from -eta to +eta, outbound ray at +eta.
template <class Real>
std::vector<Segment<Real>> path_segments(const HankelPath& path) {
  using C = std::complex<Real>;
  const Real eps = static_cast<Real>(path.epsilon);
  // At the keyhole the rays sit exactly on arg = +-pi (signed zeros), so the
  // arc must end there too, not at the double rounding of pi.
  const Real eta = path.eta >= std::numbers::pi ? std::numbers::pi_v<Real> : static_cast<Real>(path.eta);
  const Real big_r = static_cast<Real>(path.truncation_radius);
  const C up = detail::ray_direction(eta, +1);
  const C down = detail::ray_direction(eta, -1);

  std::vector<Segment<Real>> segs;
  Segment<Real> lower;
  lower.map = [down](Real r) { return std::pair<C, C>{down * r, -down}; };
  lower.a = eps;
  lower.b = big_r;
  lower.breaks = detail::geometric_breaks(eps, big_r);
  segs.push_back(lower);

  Segment<Real> arc;
  arc.map = [eps](Real phi) {
    const C z = std::polar(eps, phi);
    return std::pair<C, C>{z, C(0, 1) * z};
  };
  arc.a = -eta;
  arc.b = eta;
  const int pieces = std::max(2, static_cast<int>(std::ceil(2 * eta / (std::numbers::pi_v<Real> / 4))));
  for (int i = 1; i < pieces; ++i) arc.breaks.push_back(-eta + 2 * eta * i / pieces);
  segs.push_back(arc);

  Segment<Real> upper;
  upper.map = [up](Real r) { return std::pair<C, C>{up * r, up}; };
  upper.a = eps;
  upper.b = big_r;
  upper.breaks = lower.breaks;
  segs.push_back(upper);
  return segs;
}

/// \int_{gamma(eps;eta)} f(z) dz with the rays cut at the truncation radius.
/// Fails with TailNotNegligible when |f| R at the cut is not below the
/// accuracy target, and NonConvergentQuadrature when the node budget runs out.
template <class Real, class F>
Quadrature<Real> integrate_path(const HankelPath& path, F&& f, const QuadratureOptions& opts = {}) {
  path.validate();
  auto segs = path_segments<Real>(path);
  auto q = detail::adaptive_gk<Real>(segs, f, static_cast<Real>(path.rel_tol),
                                     static_cast<Real>(opts.abs_tol), opts.max_evaluations,
                                     static_cast<Real>(opts.roundoff_factor));
  if (opts.check_tail) {
    const Real big_r = static_cast<Real>(path.truncation_radius);
    const Real eta = static_cast<Real>(path.eta);
    const Real allowed = std::max(static_cast<Real>(opts.abs_tol),
                                  static_cast<Real>(path.rel_tol) * q.l1_norm);
    for (int side : {-1, +1}) {
      const Real tail = std::abs(f(detail::ray_direction(eta, side) * big_r)) * big_r;
      if (!(tail <= allowed))
        throw Error(ErrorCode::TailNotNegligible,
                    "integrand does not decay at the truncation radius (|f| R = " +
                        std::to_string(static_cast<double>(tail)) + ")");
    }
  }
  return q;
}

/// Double-precision convenience wrapper around integrate_path.
Complex integrate(const HankelPath& path, const std::function<Complex(Complex)>& integrand);

}  // namespace mlbiv

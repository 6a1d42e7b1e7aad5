#include "mlbiv/integral_reps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace mlbiv {
namespace {

using L = long double;
constexpr double kPi = std::numbers::pi;
constexpr L kPiL = std::numbers::pi_v<L>;

constexpr std::array<double, 9> kEpsMultipliers = {1, 0.5, 2, 0.25, 4, 0.125, 8, 0.0625, 16};
constexpr std::array<double, 9> kEtaFractions = {0.5, 0.4, 0.6, 0.3, 0.7, 0.35, 0.65, 0.45, 0.55};

LComplex widen(Complex z) { return {z.real(), z.imag()}; }
Complex narrow(LComplex z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

Complex checked(LComplex v, const char* what) {
  const Complex out = narrow(v);
  if (!is_finite(out))
    throw Error(ErrorCode::NoConvergence, std::string(what) + " overflows double precision");
  return out;
}

// (1/a) e^{x^{1/a}} x^{(1+b-mu)/a} / (x^{b/a} - y): the residue picked up when
// x^{1/a} lies right of the s-plane contour.
LComplex residue_l(LComplex x, LComplex y, L a, L b, LComplex mu, const char* name) {
  if (x == LComplex(0)) throw Error(ErrorCode::InvalidArgument, std::string(name) + ": the point must be non-zero");
  const LComplex lx = std::log(x);
  const LComplex s = std::exp(lx / a);
  const LComplex pw = std::exp(b / a * lx);
  const LComplex den = pw - y;
  if (std::abs(den) < 1e-12L * std::max(L(1), std::abs(pw)))
    throw Error(ErrorCode::DegenerateDenominator,
                std::string(name) + ": x^{beta/alpha} and y coincide (degenerate residue denominator)");
  return std::exp(s + (L(1) + b - mu) / a * lx) / (a * den);
}

LComplex residue_x_l(Complex x, Complex y, const Params& p) {
  return residue_l(widen(x), widen(y), p.alpha, p.beta, widen(p.mu), "residue_x");
}

LComplex residue_y_l(Complex x, Complex y, const Params& p) {
  return residue_l(widen(y), widen(x), p.beta, p.alpha, widen(p.mu), "residue_y");
}

// The integrand after substituting s = zeta^{1/(ab)}:
//   e^s s^{a+b-mu} / ((s^b - y)(s^a - x)),
// on gamma(eps^{1/(ab)}; eta/(ab)), scaled by 1/(2 pi i).
struct SIntegrand {
  L a, b;
  LComplex x, y, power;

  SIntegrand(Complex x_, Complex y_, const Params& p)
      : a(p.alpha), b(p.beta), x(widen(x_)), y(widen(y_)), power(widen(Complex(p.alpha + p.beta) - p.mu)) {}

  LComplex operator()(LComplex s) const {
    const LComplex ls = std::log(s);
    return std::exp(s + power * ls) / ((std::exp(b * ls) - y) * (std::exp(a * ls) - x));
  }
};

struct ScaledPath {
  double eps_s;
  double eta_s;
};

ScaledPath s_plane(const ContourSelection& sel, const Params& p) {
  const double ab = p.alpha * p.beta;
  double eta_s = sel.base.eta / ab;
  if (eta_s > kPi - 1e-14) eta_s = kPi;
  return {std::pow(sel.base.epsilon, 1.0 / ab), eta_s};
}

// Every solution of s^a = w with arg s in (-pi, pi]: these are the integrand's
// poles in the s-plane.
std::vector<Complex> principal_sheet_roots(Complex w, double a) {
  if (w == Complex(0)) return {Complex(0)};
  const double r = std::pow(std::abs(w), 1.0 / a);
  const double t = std::arg(w);
  std::vector<Complex> out;
  const int kmax = static_cast<int>(std::ceil(a / 2)) + 1;
  for (int k = -kmax; k <= kmax; ++k) {
    const double phi = (t + 2 * kPi * k) / a;
    if (phi > -kPi && phi <= kPi) out.push_back(std::polar(r, phi));
  }
  return out;
}

double relative_clearance(Complex w, double eps, double eta) {
  return distance_to_path(w, eps, eta) / std::max(std::abs(w), eps);
}

double max_pole_modulus(Complex x, Complex y, const Params& p) {
  return std::max(std::pow(std::abs(x), 1.0 / p.alpha), std::pow(std::abs(y), 1.0 / p.beta));
}

struct Candidate {
  ContourSelection sel;
  bool admissible = false;
  bool degenerate = false;
};

Candidate try_candidate(Complex x, Complex y, const Params& p, double eps, double eta, bool edge) {
  Candidate c;
  ContourSelection& s = c.sel;
  s.edge = edge;
  s.base = HankelPath{eps, eta, std::max(60.0, 4 * eps), 1e-12};
  s.eps_alpha = std::pow(eps, 1.0 / p.beta);
  s.eps_beta = std::pow(eps, 1.0 / p.alpha);
  s.eta_alpha = std::min(eta / p.beta, kPi);
  s.eta_beta = std::min(eta / p.alpha, kPi);

  const HankelPath px{s.eps_alpha, s.eta_alpha, s.eps_alpha * 2, 1e-12};
  const HankelPath py{s.eps_beta, s.eta_beta, s.eps_beta * 2, 1e-12};
  const RegionLabel lx = classify(x, px);
  const RegionLabel ly = classify(y, py);
  if (lx == RegionLabel::OnContour || ly == RegionLabel::OnContour) return c;

  const bool rx = lx == RegionLabel::RightOfContour;
  const bool ry = ly == RegionLabel::RightOfContour;
  s.rep_case = rx ? (ry ? RepCase::BothRight : RepCase::XRightYLeft) : (ry ? RepCase::XLeftYRight : RepCase::BothLeft);

  const ScaledPath sp = s_plane(s, p);
  double clear = std::numeric_limits<double>::infinity();
  for (Complex r : principal_sheet_roots(x, p.alpha)) clear = std::min(clear, relative_clearance(r, sp.eps_s, sp.eta_s));
  for (Complex r : principal_sheet_roots(y, p.beta)) clear = std::min(clear, relative_clearance(r, sp.eps_s, sp.eta_s));
  s.clearance = std::min(clear, 1.0);  // no poles at all counts as fully clear

  try {
    if (rx) residue_x_l(x, y, p);
    if (ry) residue_y_l(x, y, p);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateDenominator) throw;
    c.degenerate = true;
    return c;
  }
  c.admissible = true;
  return c;
}

void check_tol(double tol) {
  if (!(tol > 0) || !std::isfinite(tol)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
}

}  // namespace

const char* to_string(RepCase c) {
  switch (c) {
    case RepCase::BothLeft: return "both-left";
    case RepCase::XLeftYRight: return "x-left-y-right";
    case RepCase::XRightYLeft: return "x-right-y-left";
    case RepCase::BothRight: return "both-right";
  }
  return "?";
}

void require_contour_params(const Params& p) {
  p.validate();
  const std::string why = p.contour_hypothesis_violation();
  if (!why.empty()) throw Error(ErrorCode::ParameterOutOfRange, why);
}

std::pair<double, double> eta_interval(const Params& p) {
  require_contour_params(p);
  if (p.edge_capable()) {
    const double e = kPi * std::min(p.alpha, p.beta);
    return {e, e};
  }
  const double ab = p.alpha * p.beta;
  return {kPi * ab / 2, std::min({kPi, kPi * ab, kPi * p.alpha, kPi * p.beta})};
}

double default_eta(const Params& p) {
  const auto [lo, hi] = eta_interval(p);
  return (lo + hi) / 2;
}

Complex residue_x(Complex x, Complex y, const Params& p) {
  require_finite(x, "x");
  require_finite(y, "y");
  p.validate();
  return checked(residue_x_l(x, y, p), "residue_x");
}

Complex residue_y(Complex x, Complex y, const Params& p) {
  require_finite(x, "x");
  require_finite(y, "y");
  p.validate();
  return checked(residue_y_l(x, y, p), "residue_y");
}

ContourSelection make_selection(Complex x, Complex y, const Params& p, double epsilon, double eta) {
  require_finite(x, "x");
  require_finite(y, "y");
  const auto [lo, hi] = eta_interval(p);
  const bool edge = lo == hi;
  if (!(epsilon > 0) || !std::isfinite(epsilon))
    throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (edge ? eta != lo : !(eta > lo && eta <= hi)) {
    std::ostringstream msg;
    msg << "eta = " << eta << " is outside the admissible interval (" << lo << ", " << hi << "]";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  const Candidate c = try_candidate(x, y, p, epsilon, eta, edge);
  if (c.degenerate)
    throw Error(ErrorCode::DegenerateDenominator, "residue denominator vanishes for this contour");
  if (!c.admissible) throw Error(ErrorCode::NoAdmissibleContour, "a point lies on the requested contour");
  return c.sel;
}

ContourSelection select_contour(Complex x, Complex y, const Params& p, const ContourPreference& pref) {
  require_finite(x, "x");
  require_finite(y, "y");
  const auto [lo, hi] = eta_interval(p);
  const bool edge = lo == hi;
  const double seed = pref.epsilon.value_or(1.0);
  if (!(seed > 0) || !std::isfinite(seed)) throw Error(ErrorCode::InvalidArgument, "epsilon seed must be positive");

  std::vector<double> fractions;
  if (pref.eta_fraction) {
    const double f = *pref.eta_fraction;
    if (!(f > 0 && f <= 1)) throw Error(ErrorCode::InvalidArgument, "eta fraction must lie in (0, 1]");
    fractions.push_back(f);
  }
  for (double f : kEtaFractions)
    if (!pref.eta_fraction || f != *pref.eta_fraction) fractions.push_back(f);
  if (edge) fractions = {1.0};

  std::vector<double> radii;
  for (double m : kEpsMultipliers) radii.push_back(seed * m);
  // Last resort: a radius that puts both points inside their arcs.
  const double inside = std::max(std::pow(std::abs(x), p.beta), std::pow(std::abs(y), p.alpha));
  if (inside > 0) {
    radii.push_back(1.5 * inside);
    radii.push_back(3 * inside);
  }

  Candidate best;
  bool any_degenerate = false;
  for (double eps : radii)
    for (double f : fractions) {
      const double eta = edge ? lo : lo + f * (hi - lo);
      const Candidate c = try_candidate(x, y, p, eps, eta, edge);
      any_degenerate = any_degenerate || c.degenerate;
      if (!c.admissible) continue;
      if (c.sel.clearance >= kPreferredClearance) return c.sel;
      if (!best.admissible || c.sel.clearance > best.sel.clearance) best = c;
    }
  if (best.admissible) return best.sel;
  if (any_degenerate)
    throw Error(ErrorCode::DegenerateDenominator,
                "every admissible contour needs a residue whose denominator x^{beta/alpha} - y vanishes");
  throw Error(ErrorCode::NoAdmissibleContour, "no admissible contour keeps x and y off the scaled paths");
}

namespace {

struct Residues {
  LComplex sum{};
  std::vector<std::string> warnings;
};

Residues residues_for(Complex x, Complex y, const Params& p, RepCase c) {
  Residues r;
  if (includes_residue_x(c)) r.sum += residue_x_l(x, y, p);
  if (includes_residue_y(c)) r.sum += residue_y_l(x, y, p);
  return r;
}

// Sample |f| along the path to fix the scale the truncation is measured
// against.
template <class F>
L magnitude_scale(const F& f, double eps_s, double eta_s, L residues) {
  L scale = residues;
  for (int i = 0; i <= 16; ++i) {
    const L phi = -eta_s + 2 * eta_s * i / 16.0L;
    scale = std::max(scale, std::abs(f(std::polar(L(eps_s), phi))) * L(eps_s));
  }
  for (int side : {-1, 1})
    for (L r = eps_s; r < 64 * eps_s + 64; r *= 2)
      scale = std::max(scale, std::abs(f(detail::ray_direction(L(eta_s), side) * r)) * r);
  return std::max(scale, std::numeric_limits<L>::min());
}

ContourResult finish(const Residues& res, const Quadrature<L>& q, const ContourSelection& sel) {
  ContourResult out;
  const LComplex integral = q.value / LComplex(0, 2 * kPiL);
  out.value = checked(res.sum + integral, "contour value");
  out.rep_case = sel.rep_case;
  out.selection = sel;
  out.evaluations = q.evaluations;
  constexpr L eps_ld = std::numeric_limits<L>::epsilon();
  const L rounding = 64 * eps_ld * (std::abs(res.sum) + q.l1_norm / (2 * kPiL));
  out.error_estimate = static_cast<double>(q.error / (2 * kPiL) + rounding) +
                       std::numeric_limits<double>::epsilon() * std::abs(out.value);
  out.warnings = res.warnings;
  if (sel.clearance < kPreferredClearance) {
    std::ostringstream msg;
    msg << "contour-clearance: a pole is within " << sel.clearance << " (relative) of the contour";
    out.warnings.push_back(msg.str());
  }
  return out;
}

ContourResult eval_regular(Complex x, Complex y, const Params& p, double tol, const ContourSelection& sel) {
  const Residues res = residues_for(x, y, p, sel.rep_case);
  const SIntegrand f(x, y, p);
  const ScaledPath sp = s_plane(sel, p);
  const L rel = tol / 10;
  const L scale = magnitude_scale(f, sp.eps_s, sp.eta_s, std::abs(res.sum));

  // The rays decay like exp(r cos eta_s); push the cut out until the
  // integrand, times r, is negligible against the value's scale.
  double big_r = std::max({4 * sp.eps_s, 2 * max_pole_modulus(x, y, p), 16.0});
  auto tail = [&](double r) {
    L t = 0;
    for (int side : {-1, 1}) t = std::max(t, std::abs(f(detail::ray_direction(L(sp.eta_s), side) * L(r))) * r);
    return t;
  };
  while (!(tail(big_r) <= 1e-3L * rel * scale)) {
    big_r *= 1.25;
    if (big_r > 1e7)
      throw Error(ErrorCode::TailNotNegligible, "contour integrand does not decay within the search range");
  }

  HankelPath sp_path{sp.eps_s, sp.eta_s, big_r, static_cast<double>(rel)};
  QuadratureOptions opts;
  opts.abs_tol = static_cast<double>(rel * 2 * kPiL * std::abs(res.sum));
  opts.max_evaluations = 2'000'000;
  const Quadrature<L> q = integrate_path<L>(sp_path, f, opts);
  return finish(res, q, sel);
}

// At the alpha = 2 / beta = 2 limit the s-plane rays sit on the imaginary
// axis and e^s only oscillates. Integrate the rays up to |s| = S, then run the
// tails horizontally into the left half-plane, where they decay like e^{-v}.
// No poles lie between (they all have |s| < S / 2).
ContourResult eval_edge(Complex x, Complex y, const Params& p, double tol, const ContourSelection& sel) {
  using C = LComplex;
  const Residues res = residues_for(x, y, p, sel.rep_case);
  const SIntegrand f(x, y, p);
  const ScaledPath sp = s_plane(sel, p);
  const L eps_s = sp.eps_s;
  const L rel = tol / 10;
  const L big_s = std::max({4 * sp.eps_s, 2 * max_pole_modulus(x, y, p), 24.0});
  const L scale = magnitude_scale(f, sp.eps_s, kPi / 2, std::abs(res.sum));

  L big_v = 40;
  auto tail = [&](L v) {
    return std::max(std::abs(f(C(-v, big_s))), std::abs(f(C(-v, -big_s)))) * (v + big_s);
  };
  while (!(tail(big_v) <= 1e-3L * rel * scale)) {
    big_v += 10;
    if (big_v > 1e5) throw Error(ErrorCode::TailNotNegligible, "rotated tail does not decay");
  }

  std::vector<Segment<L>> segs(5);
  segs[0].map = [big_s](L v) { return std::pair<C, C>{C(-v, -big_s), C(1)}; };
  segs[0].a = 0;
  segs[0].b = big_v;
  segs[1].map = [](L t) { return std::pair<C, C>{C(0, -t), C(0, 1)}; };
  segs[1].a = eps_s;
  segs[1].b = big_s;
  segs[2].map = [eps_s](L phi) {
    const C z = std::polar(eps_s, phi);
    return std::pair<C, C>{z, C(0, 1) * z};
  };
  segs[2].a = -kPiL / 2;
  segs[2].b = kPiL / 2;
  segs[2].breaks = {-kPiL / 4, 0, kPiL / 4};
  segs[3].map = [](L t) { return std::pair<C, C>{C(0, t), C(0, 1)}; };
  segs[3].a = eps_s;
  segs[3].b = big_s;
  segs[4].map = [big_s](L v) { return std::pair<C, C>{C(-v, big_s), C(-1)}; };
  segs[4].a = 0;
  segs[4].b = big_v;
  for (L t = eps_s + kPiL; t < big_s; t += kPiL) {
    segs[1].breaks.push_back(t);
    segs[3].breaks.push_back(t);
  }
  for (L v = 4; v < big_v; v *= 2) {
    segs[0].breaks.push_back(v);
    segs[4].breaks.push_back(v);
  }
  const L abs_tol = rel * 2 * kPiL * std::abs(res.sum);
  const Quadrature<L> q = detail::adaptive_gk<L>(segs, f, rel, abs_tol, 4'000'000);
  return finish(res, q, sel);
}

}  // namespace

ContourResult eval_contour(Complex x, Complex y, const Params& p, double tol, const ContourSelection& sel) {
  require_finite(x, "x");
  require_finite(y, "y");
  check_tol(tol);
  require_contour_params(p);
  if (p.edge_capable()) return eval_edge(x, y, p, tol, sel);
  return eval_regular(x, y, p, tol, sel);
}

ContourResult eval_contour(Complex x, Complex y, const Params& p, double tol, const ContourPreference& pref) {
  return eval_contour(x, y, p, tol, select_contour(x, y, p, pref));
}

ContourResult eval_contour_edge(Complex x, Complex y, const Params& p, double tol, const ContourPreference& pref) {
  p.validate();
  if (!p.edge_capable()) {
    const std::string why = p.contour_hypothesis_violation();
    throw Error(ErrorCode::ParameterOutOfRange,
                why.empty() ? "eval_contour_edge needs alpha = 2 or beta = 2" : why);
  }
  return eval_contour(x, y, p, tol, pref);
}

}  // namespace mlbiv

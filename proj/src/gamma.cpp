#include "mlbiv/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace mlbiv {
namespace {

using L = long double;

constexpr L kPi = std::numbers::pi_v<L>;
constexpr L kHalfLog2Pi = 0.918938533204672741780329736405617639861L;

// B_{2k} / (2k (2k-1)), k = 1..10.
constexpr std::array<L, 10> kStirling = {
    1.0L / 12.0L,        -1.0L / 360.0L,         1.0L / 1260.0L,      -1.0L / 1680.0L,
    1.0L / 1188.0L,      -691.0L / 360360.0L,    1.0L / 156.0L,       -3617.0L / 122400.0L,
    43867.0L / 244188.0L, -174611.0L / 125400.0L};

// Below this real part the argument is shifted up by recurrence before the
// asymptotic series is used; with ten terms the truncation error is < 1e-20.
constexpr L kShift = 16.0L;

template <class T>
T stirling(T z) {
  const T inv = T(1) / z;
  const T inv2 = inv * inv;
  T sum = T(0);
  T p = inv;
  for (L c : kStirling) {
    sum += c * p;
    p *= inv2;
  }
  return (z - L(0.5)) * std::log(z) - z + kHalfLog2Pi + sum;
}

int shift_count(L re) { return re >= kShift ? 0 : static_cast<int>(std::ceil(kShift - re)); }

LComplex sin_pi(LComplex z) {
  const L n = std::nearbyint(z.real());
  const L f = z.real() - n;
  const L sign = std::fmod(std::fabs(n), 2.0L) == 0 ? 1.0L : -1.0L;
  const L b = kPi * z.imag();
  return sign * LComplex(std::sin(kPi * f) * std::cosh(b), std::cos(kPi * f) * std::sinh(b));
}

L sin_pi(L x) {
  const L n = std::nearbyint(x);
  const L sign = std::fmod(std::fabs(n), 2.0L) == 0 ? 1.0L : -1.0L;
  return sign * std::sin(kPi * (x - n));
}

// Gamma(z) for Re z >= 0.5.
template <class T>
T gamma_right(T z) {
  const int n = shift_count(std::real(z));
  T prod = T(1);
  for (int k = 0; k < n; ++k) prod *= z + L(k);
  return std::exp(stirling(z + L(n))) / prod;
}

template <class T>
T recip_gamma_right(T z) {
  const int n = shift_count(std::real(z));
  T prod = T(1);
  for (int k = 0; k < n; ++k) prod *= z + L(k);
  return prod * std::exp(-stirling(z + L(n)));
}

bool is_nonpositive_integer(L x) { return x <= 0 && x == std::floor(x); }

}  // namespace

namespace detail {

long double recip_gamma_l(long double x) {
  if (is_nonpositive_integer(x)) return 0.0L;
  if (x >= 0.5L) {
    if (x > 1800.0L) return 0.0L;
    return recip_gamma_right(x);
  }
  return sin_pi(x) / kPi * gamma_right(1.0L - x);
}

LComplex recip_gamma_l(LComplex z) {
  if (z.imag() == 0) return {recip_gamma_l(z.real()), 0.0L};
  if (z.real() >= 0.5L) return recip_gamma_right(z);
  return sin_pi(z) / kPi * gamma_right(LComplex(1) - z);
}

LComplex log_gamma_l(LComplex z) {
  const int n = shift_count(z.real());
  LComplex logs = 0;
  for (int k = 0; k < n; ++k) logs += std::log(z + L(k));
  return stirling(z + L(n)) - logs;
}

}  // namespace detail

Complex log_gamma(Complex z) {
  require_finite(z, "log_gamma argument");
  const double n = std::nearbyint(z.real());
  if (n <= 0 && std::abs(z - Complex(n, 0)) < 1e-12)
    throw Error(ErrorCode::PoleAtZ, "log_gamma: argument is at a pole of Gamma");
  const LComplex r = detail::log_gamma_l(LComplex(z.real(), z.imag()));
  return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

Complex recip_gamma(Complex z) {
  require_finite(z, "recip_gamma argument");
  const LComplex r = detail::recip_gamma_l(LComplex(z.real(), z.imag()));
  return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

Complex recip_gamma_hankel(Complex s, const HankelPath& path, double tol) {
  require_finite(s, "recip_gamma_hankel argument");
  path.validate();
  if (!(path.eta > std::numbers::pi / 2))
    throw Error(ErrorCode::InvalidArgument,
                "recip_gamma_hankel needs eta in (pi/2, pi] so e^u decays on the rays");
  if (!(tol > 0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");

  const LComplex ls(s.real(), s.imag());
  auto integrand = [ls](LComplex u) { return std::exp(u - ls * std::log(u)); };

  // |e^u u^-s| on a ray is exp(r cos(eta) - Re(s) ln r + |Im s| eta); push the
  // cut out until that envelope, times r, is far below the requested accuracy.
  HankelPath p = path;
  const double decay = std::cos(path.eta);
  auto log_envelope = [&](double r) {
    return r * decay - s.real() * std::log(r) + std::abs(s.imag()) * path.eta + std::log(r);
  };
  const double goal = std::log(tol) - 20.0;
  double r = std::max(p.truncation_radius, 2.0 * p.epsilon);
  while (log_envelope(r) > goal) {
    r *= 1.25;
    if (r > 1e9)
      throw Error(ErrorCode::NonConvergentQuadrature, "no usable truncation radius for this contour");
  }
  p.truncation_radius = r;

  QuadratureOptions opts;
  opts.abs_tol = 2 * std::numbers::pi * tol / 16;
  // The kernel runs in long double, whose rounding sits ~2000x below the
  // double-precision target; the default floor would stop refinement early
  // where |e^u u^-s| is large (|Im s| eta big).
  opts.roundoff_factor = 1.0;
  // rel_tol of the path is not used as a stopping criterion here: the
  // contract is an absolute tolerance on 1/Gamma(s).
  p.rel_tol = std::numeric_limits<double>::min();
  const auto q = integrate_path<long double>(p, integrand, opts);
  // Near eta = pi/2 the integrand's L1 norm dwarfs the result and roundoff
  // alone swamps tol; say so rather than return noise. The floor eps*L1
  // overstates the realised error by 10-100x, hence the margin.
  const long double floor = std::numeric_limits<long double>::epsilon() * q.l1_norm / (2 * kPi);
  if (floor > 100 * tol)
    throw Error(ErrorCode::NonConvergentQuadrature,
                "recip_gamma_hankel: roundoff floor " + std::to_string(static_cast<double>(floor)) +
                    " is far above tol on this contour; use eta further from pi/2");
  const LComplex v = q.value / LComplex(0, 2 * kPi);
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

}  // namespace mlbiv

#include "mlbiv/hankel.hpp"

#include <cmath>
#include <numbers>

namespace mlbiv {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::PoleAtZ: return "pole-at-z";
    case ErrorCode::NonConvergentQuadrature: return "non-convergent-quadrature";
    case ErrorCode::TailNotNegligible: return "tail-not-negligible";
    case ErrorCode::DegenerateDenominator: return "degenerate-denominator";
    case ErrorCode::NoAdmissibleContour: return "no-admissible-contour";
    case ErrorCode::ParameterOutOfRange: return "parameter-out-of-range";
    case ErrorCode::NoConvergence: return "no-convergence";
    case ErrorCode::OracleUnavailable: return "oracle-unavailable";
    case ErrorCode::AllMethodsFailed: return "all-methods-failed";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

void HankelPath::validate() const {
  if (!(epsilon > 0) || !std::isfinite(epsilon))
    throw Error(ErrorCode::InvalidArgument, "contour radius epsilon must be positive");
  if (!(eta > 0 && eta <= std::numbers::pi))
    throw Error(ErrorCode::InvalidArgument, "contour angle eta must lie in (0, pi]");
  if (!(truncation_radius > epsilon) || !std::isfinite(truncation_radius))
    throw Error(ErrorCode::InvalidArgument, "truncation radius must exceed epsilon");
  if (!(rel_tol > 0))
    throw Error(ErrorCode::InvalidArgument, "rel_tol must be positive");
}

const char* to_string(RegionLabel label) {
  switch (label) {
    case RegionLabel::LeftOfContour: return "left";
    case RegionLabel::RightOfContour: return "right";
    case RegionLabel::OnContour: return "on";
  }
  return "?";
}

double default_delta(Complex w) { return 1e-8 * std::max(1.0, std::abs(w)); }

double distance_to_path(Complex w, double epsilon, double eta) {
  const double r = std::abs(w);
  const double arg = std::abs(std::arg(w));
  double best;
  if (arg <= eta) {
    best = std::abs(r - epsilon);
  } else {
    best = std::min(std::abs(w - std::polar(epsilon, eta)), std::abs(w - std::polar(epsilon, -eta)));
  }
  for (int side : {-1, +1}) {
    const Complex dir = detail::ray_direction(eta, side);
    const double t = (w * std::conj(dir)).real();
    const double d = t >= epsilon ? std::abs((w * std::conj(dir)).imag()) : std::abs(w - epsilon * dir);
    best = std::min(best, d);
  }
  return best;
}

RegionLabel classify(Complex w, const HankelPath& path, double delta) {
  require_finite(w, "point");
  if (delta < 0) throw Error(ErrorCode::InvalidArgument, "delta must be non-negative");
  if (distance_to_path(w, path.epsilon, path.eta) <= delta) return RegionLabel::OnContour;
  if (std::abs(std::arg(w)) < path.eta && std::abs(w) > path.epsilon)
    return RegionLabel::RightOfContour;
  return RegionLabel::LeftOfContour;
}

RegionLabel classify(Complex w, const HankelPath& path) {
  return classify(w, path, default_delta(w));
}

Complex integrate(const HankelPath& path, const std::function<Complex(Complex)>& integrand) {
  return integrate_path<double>(path, integrand).value;
}

}  // namespace mlbiv

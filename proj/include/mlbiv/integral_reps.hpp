#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mlbiv/hankel.hpp"
#include "mlbiv/series.hpp"
#include "mlbiv/types.hpp"

namespace mlbiv {

/// Which of x, y lie to the right of their scaled contours; decides the
/// residue terms added to the contour integral.
enum class RepCase { BothLeft, XLeftYRight, XRightYLeft, BothRight };

const char* to_string(RepCase c);

inline bool includes_residue_x(RepCase c) { return c == RepCase::XRightYLeft || c == RepCase::BothRight; }
inline bool includes_residue_y(RepCase c) { return c == RepCase::XLeftYRight || c == RepCase::BothRight; }

struct ContourSelection {
  HankelPath base;  // gamma(eps; eta) in the zeta-plane
  double eps_alpha = 0;  // eps^{1/beta}: radius of the contour x is tested against
  double eps_beta = 0;   // eps^{1/alpha}
  double eta_alpha = 0;  // eta / beta
  double eta_beta = 0;   // eta / alpha
  RepCase rep_case = RepCase::BothLeft;
  double clearance = 0;  // min relative distance of x, y from their contours
  bool edge = false;     // alpha = 2 or beta = 2 limit
};

struct ContourPreference {
  std::optional<double> epsilon;        // seed for the eps search (default 1)
  std::optional<double> eta_fraction;   // position inside the eta interval, in (0, 1]
};

/// The admissible eta interval (lo, hi]. The upper end is
/// min(pi, pi ab, pi a, pi b) so that scaled contours never wrap past the
/// negative axis. For the alpha = 2 / beta = 2 limit lo == hi.
std::pair<double, double> eta_interval(const Params& p);

/// Midpoint of eta_interval.
double default_eta(const Params& p);

/// Throws ParameterOutOfRange unless the contour route applies to p.
void require_contour_params(const Params& p);

/// Relative clearance below which the search keeps looking.
inline constexpr double kPreferredClearance = 0.05;

Complex residue_x(Complex x, Complex y, const Params& p);
Complex residue_y(Complex x, Complex y, const Params& p);

/// Deterministic bounded search over (eps, eta). Candidates whose needed
/// residues are degenerate are skipped.
ContourSelection select_contour(Complex x, Complex y, const Params& p, const ContourPreference& pref = {});

/// A selection for a caller-chosen contour. Throws NoAdmissibleContour if x or
/// y is within the OnContour tolerance, InvalidArgument if eta is outside the
/// admissible interval.
ContourSelection make_selection(Complex x, Complex y, const Params& p, double epsilon, double eta);

struct ContourResult {
  Complex value;
  RepCase rep_case = RepCase::BothLeft;
  ContourSelection selection;
  double error_estimate = 0;  // absolute
  std::size_t evaluations = 0;
  std::vector<std::string> warnings;
};

/// Residue terms plus the contour integral, accurate to about tol relative to
/// the integral's L1 scale.
ContourResult eval_contour(Complex x, Complex y, const Params& p, double tol,
                           const ContourPreference& pref = {});
ContourResult eval_contour(Complex x, Complex y, const Params& p, double tol, const ContourSelection& sel);

/// alpha = 2 (0 < beta <= 1) or beta = 2 (0 < alpha <= 1) with Re mu > 0.
ContourResult eval_contour_edge(Complex x, Complex y, const Params& p, double tol,
                                const ContourPreference& pref = {});

/// Documented accuracy of the edge route.
inline constexpr double kEdgeTolerance = 1e-6;

}  // namespace mlbiv

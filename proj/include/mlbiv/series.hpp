#pragma once

#include <string>
#include <vector>

#include "mlbiv/types.hpp"

namespace mlbiv {

/// (alpha, beta, mu) for E_{alpha,beta}(x, y; mu). Construction only demands
/// alpha, beta > 0; the contour and asymptotic methods need the narrower
/// hypotheses reported by the capability queries.
struct Params {
  double alpha = 1.0;
  double beta = 1.0;
  Complex mu = 1.0;

  void validate() const;

  /// 0 < alpha, beta < 2 and alpha * beta < 2.
  bool contour_capable() const;

  /// alpha == 2 (0 < beta <= 1) or beta == 2 (0 < alpha <= 1), with Re mu > 0.
  bool edge_capable() const;

  /// Why the contour route is unavailable, or empty when it is available.
  std::string contour_hypothesis_violation() const;
};

struct SeriesDiagnostics {
  int diagonals_summed = 0;
  double last_increment_magnitude = 0.0;
  double cancellation_ratio = 1.0;  // largest intermediate magnitude / |result|
};

struct SeriesResult {
  Complex value;
  SeriesDiagnostics diagnostics;
  double error_estimate = 0.0;  // absolute
  std::vector<std::string> warnings;
};

inline constexpr double kCancellationLimit = 1e6;
inline constexpr int kMaxDiagonals = 10000;

/// sum_k z^k / Gamma(alpha k + nu).
SeriesResult ml_one_var(Complex z, double alpha, Complex nu, double tol);

/// The defining double series, summed by anti-diagonals n + m = k with
/// compensated accumulation. Stops after three consecutive diagonals whose
/// absolute contribution is below tol * |partial sum|.
SeriesResult ml_two_var_series(Complex x, Complex y, const Params& p, double tol);

/// Row-wise order: sum_n x^n E_beta(y; n alpha + mu).
SeriesResult ml_reduction_row(Complex x, Complex y, const Params& p, double tol);

}  // namespace mlbiv

#pragma once

#include <string>
#include <vector>

#include "mlbiv/series.hpp"
#include "mlbiv/types.hpp"

namespace mlbiv {

/// Case1: both inside their sectors; Case2: x inside, y outside; Case3: x
/// outside, y inside; Case4: both outside.
///
/// x is inside when |arg x| <= tau/beta and y when |arg y| <= tau/alpha. The
/// y condition pairs with tau/alpha as in the contour representations, not
/// with tau/beta.
enum class SectorCase { Case1, Case2, Case3, Case4 };

const char* to_string(SectorCase c);

inline bool includes_residue_x(SectorCase c) { return c == SectorCase::Case1 || c == SectorCase::Case2; }
inline bool includes_residue_y(SectorCase c) { return c == SectorCase::Case1 || c == SectorCase::Case3; }

struct SectorClass {
  SectorCase sector = SectorCase::Case4;
  double tau = 0;
};

/// n_max truncates the powers of x, m_max those of y.
struct TruncationOrders {
  int n_max = 1;
  int m_max = 1;

  void validate() const;
};

inline constexpr double kValidityFloor = 5.0;
inline constexpr double kSectorBoundaryWidth = 1e-6;

/// Same rule as the contour angle: midpoint of the admissible interval.
double default_tau(const Params& p);

SectorClass classify_sector(Complex x, Complex y, const Params& p, double tau);

/// sum_{n=1}^{n_max} sum_{m=1}^{m_max} x^{-n} y^{-m} / Gamma(mu - n alpha - m beta).
/// Terms at poles of Gamma are exact zeros. The terms are added in an order
/// that depends only on their values, so swapping (x, alpha, n_max) with
/// (y, beta, m_max) gives a bit-identical result.
Complex asym_tail(Complex x, Complex y, const Params& p, const TruncationOrders& orders);

struct AsymResult {
  Complex value;
  SectorClass sector;
  Complex residue_x{};  // zero unless included
  Complex residue_y{};
  Complex tail{};
  double dropped_exponentials = 0;  // |residue| of the terms the case omits, where computable
  std::string order_tag;            // qualitative remainder order
  std::vector<std::string> warnings;
};

AsymResult asym_eval(Complex x, Complex y, const Params& p, double tau, const TruncationOrders& orders);

struct DecayReport {
  std::vector<double> radii;
  std::vector<double> residuals;  // |oracle - asym_eval|
  std::vector<std::string> oracles;  // "contour" or "series", per radius
  SectorCase sector = SectorCase::Case4;
  double slope = 0;   // least-squares slope of log residual vs log r; -inf when all residuals vanish
  double target = 0;  // -(2 + min(n_max, m_max))
  bool monotone_tail = false;  // strictly decreasing over the last three radii

  bool passes(double slack = 0.5) const { return monotone_tail && slope <= target + slack; }
};

/// Empirical remainder order along (x, y) = (r d_x, r d_y).
DecayReport verify_decay(Complex d_x, Complex d_y, const Params& p, double tau, const TruncationOrders& orders,
                         const std::vector<double>& radii);

namespace detail {

/// Least-squares slope of log(residual) against log(radius), skipping exact
/// zeros; -inf when fewer than two residuals are non-zero.
double fit_log_slope(const std::vector<double>& radii, const std::vector<double>& residuals);

}  // namespace detail
}  // namespace mlbiv

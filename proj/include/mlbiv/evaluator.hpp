#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mlbiv/asymptotics.hpp"
#include "mlbiv/integral_reps.hpp"
#include "mlbiv/series.hpp"
#include "mlbiv/types.hpp"

namespace mlbiv {

enum class Method { Auto, Series, Contour, Asymptotic };

const char* to_string(Method m);
/// Accepts "auto", "series", "contour", "asym"/"asymptotic"; throws InvalidArgument.
Method parse_method(const std::string& name);

struct EvalOptions {
  Method method = Method::Auto;
  double tol = 1e-10;
  double r_series = 8.0;   // auto tries the series up to this max(|x|, |y|)
  double r_asym = 30.0;    // and the expansion from this min(|x|, |y|)
  std::optional<double> tau;  // default: default_tau
  int max_order = 32;      // adaptive truncation cap for the expansion

  void validate() const;
};

/// One method tried while producing a result.
struct Attempt {
  Method method = Method::Series;
  bool produced_value = false;
  bool met_tolerance = false;
  double error_estimate = 0;
  std::string cause;  // failure message or why the value was not accepted
};

struct EvalResult {
  Complex value;
  Method method = Method::Series;
  std::string region;       // RepCase or SectorCase name; empty for the series
  double error_estimate = 0;  // absolute
  std::vector<Attempt> attempts;
  std::optional<SeriesDiagnostics> series;
  std::optional<ContourSelection> contour;
  std::optional<TruncationOrders> orders;
  std::vector<std::string> warnings;
};

/// Method dispatch. A forced method returns its value (with a
/// "tolerance-not-met" warning if its own estimate exceeds tol) or fails.
/// Auto tries the applicable methods in order and returns the first that
/// meets tol, otherwise the most accurate value produced. AllMethodsFailed
/// lists every cause when nothing produced a value.
EvalResult evaluate(Complex x, Complex y, const Params& p, const EvalOptions& opts = {});

/// Whether the result's own estimate meets tol (relative, or absolute at zero).
bool meets_tolerance(Complex value, double error_estimate, double tol);

}  // namespace mlbiv

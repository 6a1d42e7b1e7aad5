#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mlbiv/evaluator.hpp"
#include "mlbiv/types.hpp"

namespace mlbiv {

/// count points from start to stop. Without `arg` the points lie on the real
/// axis; with it, start/stop are moduli along the ray at that angle.
struct Axis {
  double start = 0;
  double stop = 0;
  int count = 1;
  std::optional<double> arg;

  void validate(const char* name) const;
  std::vector<Complex> points() const;
};

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(const std::string& name);

struct SweepSpec {
  Axis x;
  Axis y;
  Params params;
  EvalOptions options;
  OutputFormat format = OutputFormat::Csv;

  void validate() const;
  /// Row-major: x outer, y inner.
  std::vector<std::pair<Complex, Complex>> grid() const;
};

/// Flat key=value configuration: one pair per line, '#' starts a comment,
/// surrounding whitespace is ignored. Duplicate keys: the last wins.
std::map<std::string, std::string> parse_config(std::istream& in);
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Keys: alpha, beta, mu-re, mu-im, method, tol, format, r-series, r-asym,
/// {x,y}-start, {x,y}-stop, {x,y}-count, {x,y}-arg. Unknown keys and
/// malformed numbers throw InvalidArgument.
void apply_config(SweepSpec& spec, const std::map<std::string, std::string>& kv);

struct SweepRecord {
  Complex x, y;
  bool ok = false;
  Complex value;
  std::string method;  // "failed" when no value
  double err_est = 0;
  std::vector<std::string> warnings;
};

std::vector<SweepRecord> run_sweep(const SweepSpec& spec);

/// Fixed field order: x_re, x_im, y_re, y_im, value_re, value_im, method,
/// err_est, warnings. Numbers use 17 significant digits; failed points print
/// nan in CSV and null in JSON.
inline constexpr const char* kCsvHeader = "x_re,x_im,y_re,y_im,value_re,value_im,method,err_est,warnings";
void write_csv(std::ostream& out, const std::vector<SweepRecord>& records);
void write_json(std::ostream& out, const std::vector<SweepRecord>& records);

/// "%.17g".
std::string format_number(double v);

struct CrossPoint {
  Complex x, y;
  std::vector<Method> methods;  // methods whose value met tol
  std::vector<Complex> values;
  double max_rel_deviation = 0;
  std::string status;  // "ok", "no-pair" or "exceeds"
};

struct CrossReport {
  std::vector<CrossPoint> points;
  double max_rel_deviation = 0;
  double median_rel_deviation = 0;
  int pairs_compared = 0;
  double threshold = 0;
  bool pass = true;
};

/// Runs every method at every grid point and compares those whose own error
/// estimate meets tol. A point where fewer than two methods qualify is
/// recorded as "no-pair", which is not a failure.
CrossReport cross_validate(const SweepSpec& grid, const Params& p, double tol, double threshold = 1e-7);

}  // namespace mlbiv

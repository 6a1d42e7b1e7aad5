#include "mlbiv/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace mlbiv {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    throw Error(ErrorCode::InvalidArgument, "config key '" + key + "': '" + text + "' is not a finite number");
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error(ErrorCode::InvalidArgument, "config key '" + key + "': '" + text + "' is not an integer");
  return v;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

double rel_deviation(Complex a, Complex b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0 ? std::abs(a - b) / scale : 0.0;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void Axis::validate(const char* name) const {
  const std::string n(name);
  if (count < 1) throw Error(ErrorCode::InvalidArgument, n + "-count must be >= 1");
  if (!std::isfinite(start) || !std::isfinite(stop)) throw Error(ErrorCode::InvalidArgument, n + " range must be finite");
  if (arg) {
    if (!std::isfinite(*arg)) throw Error(ErrorCode::InvalidArgument, n + "-arg must be finite");
    if (start < 0 || start > stop)
      throw Error(ErrorCode::InvalidArgument, n + ": a ray sweep needs 0 <= start <= stop");
  }
}

std::vector<Complex> Axis::points() const {
  std::vector<Complex> out;
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? start : start + (stop - start) * i / (count - 1);
    out.push_back(arg ? std::polar(t, *arg) : Complex(t, 0.0));
  }
  return out;
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw Error(ErrorCode::InvalidArgument, "unknown format '" + name + "' (csv, json)");
}

void SweepSpec::validate() const {
  x.validate("x");
  y.validate("y");
  params.validate();
  options.validate();
}

std::vector<std::pair<Complex, Complex>> SweepSpec::grid() const {
  std::vector<std::pair<Complex, Complex>> out;
  const auto xs = x.points();
  const auto ys = y.points();
  for (Complex a : xs)
    for (Complex b : ys) out.emplace_back(a, b);
  return out;
}

std::map<std::string, std::string> parse_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::InvalidArgument, "config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw Error(ErrorCode::InvalidArgument, "config line " + std::to_string(lineno) + ": empty key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read config file '" + path + "'");
  return parse_config(in);
}

void apply_config(SweepSpec& spec, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    auto axis_key = [&](Axis& a, const std::string& suffix) {
      if (suffix == "start") a.start = to_double(key, value);
      else if (suffix == "stop") a.stop = to_double(key, value);
      else if (suffix == "count") a.count = to_int(key, value);
      else if (suffix == "arg") a.arg = to_double(key, value);
      else return false;
      return true;
    };
    if (key == "alpha") spec.params.alpha = to_double(key, value);
    else if (key == "beta") spec.params.beta = to_double(key, value);
    else if (key == "mu-re") spec.params.mu.real(to_double(key, value));
    else if (key == "mu-im") spec.params.mu.imag(to_double(key, value));
    else if (key == "method") spec.options.method = parse_method(value);
    else if (key == "tol") spec.options.tol = to_double(key, value);
    else if (key == "format") spec.format = parse_format(value);
    else if (key == "r-series") spec.options.r_series = to_double(key, value);
    else if (key == "r-asym") spec.options.r_asym = to_double(key, value);
    else if (key.rfind("x-", 0) == 0 && axis_key(spec.x, key.substr(2))) continue;
    else if (key.rfind("y-", 0) == 0 && axis_key(spec.y, key.substr(2))) continue;
    else throw Error(ErrorCode::InvalidArgument, "unknown config key '" + key + "'");
  }
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepRecord> out;
  for (const auto& [x, y] : spec.grid()) {
    SweepRecord r;
    r.x = x;
    r.y = y;
    try {
      const EvalResult e = evaluate(x, y, spec.params, spec.options);
      r.ok = true;
      r.value = e.value;
      r.method = to_string(e.method);
      r.err_est = e.error_estimate;
      r.warnings = e.warnings;
    } catch (const Error& e) {
      r.method = "failed";
      r.value = Complex(std::nan(""), std::nan(""));
      r.err_est = std::nan("");
      r.warnings.push_back(std::string(to_string(e.code())) + ": " + e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << format_number(r.x.real()) << ',' << format_number(r.x.imag()) << ',' << format_number(r.y.real()) << ','
        << format_number(r.y.imag()) << ',' << format_number(r.value.real()) << ',' << format_number(r.value.imag())
        << ',' << r.method << ',' << format_number(r.err_est) << ',' << csv_field(join(r.warnings, "; ")) << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<SweepRecord>& records) {
  // Numbers are written by hand to keep the 17-digit form.
  auto num = [](double v) { return std::isfinite(v) ? format_number(v) : std::string("null"); };
  out << "[";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    out << (i ? ",\n " : "\n ") << "{\"x_re\": " << num(r.x.real()) << ", \"x_im\": " << num(r.x.imag())
        << ", \"y_re\": " << num(r.y.real()) << ", \"y_im\": " << num(r.y.imag())
        << ", \"value_re\": " << num(r.value.real()) << ", \"value_im\": " << num(r.value.imag())
        << ", \"method\": " << nlohmann::json(r.method).dump() << ", \"err_est\": " << num(r.err_est)
        << ", \"warnings\": " << nlohmann::json(r.warnings).dump() << "}";
  }
  out << (records.empty() ? "]\n" : "\n]\n");
}

CrossReport cross_validate(const SweepSpec& grid, const Params& p, double tol, double threshold) {
  grid.x.validate("x");
  grid.y.validate("y");
  p.validate();
  const auto points = grid.grid();
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "cross_validate: empty grid");

  CrossReport rep;
  rep.threshold = threshold;
  std::vector<double> devs;
  for (const auto& [x, y] : points) {
    CrossPoint cp;
    cp.x = x;
    cp.y = y;
    for (Method m : {Method::Series, Method::Contour, Method::Asymptotic}) {
      EvalOptions o = grid.options;
      o.method = m;
      o.tol = tol;
      try {
        const EvalResult e = evaluate(x, y, p, o);
        if (!meets_tolerance(e.value, e.error_estimate, tol)) continue;
        cp.methods.push_back(m);
        cp.values.push_back(e.value);
      } catch (const Error&) {
      }
    }
    if (cp.values.size() < 2) {
      cp.status = "no-pair";
    } else {
      for (std::size_t i = 0; i < cp.values.size(); ++i)
        for (std::size_t j = i + 1; j < cp.values.size(); ++j) {
          const double d = rel_deviation(cp.values[i], cp.values[j]);
          cp.max_rel_deviation = std::max(cp.max_rel_deviation, d);
          ++rep.pairs_compared;
        }
      cp.status = cp.max_rel_deviation <= threshold ? "ok" : "exceeds";
      devs.push_back(cp.max_rel_deviation);
      rep.pass = rep.pass && cp.status == "ok";
    }
    rep.points.push_back(std::move(cp));
  }
  if (!devs.empty()) {
    std::sort(devs.begin(), devs.end());
    rep.max_rel_deviation = devs.back();
    const std::size_t n = devs.size();
    rep.median_rel_deviation = n % 2 ? devs[n / 2] : (devs[n / 2 - 1] + devs[n / 2]) / 2;
  }
  return rep;
}

}  // namespace mlbiv

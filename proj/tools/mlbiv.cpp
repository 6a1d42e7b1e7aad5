// mlbiv command-line tool: eval, sweep, selftest. Uses only the C interface.
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "mlbiv/mlbiv.h"

namespace {

constexpr int kOk = 0;
constexpr int kArgError = 1;
constexpr int kEvalError = 2;

struct ArgError {
  std::string message;
};

// Argument problems reported by the library count as usage errors.
int exit_code(mlbiv_status s) {
  if (s == MLBIV_OK) return kOk;
  return s == MLBIV_E_INVALID_ARGUMENT ? kArgError : kEvalError;
}

int report(mlbiv_status s, const char* what) {
  std::fprintf(stderr, "mlbiv: %s: %s: %s\n", what, mlbiv_status_name(s), mlbiv_last_error());
  return exit_code(s);
}

// %.17g, keeping a ".0" on integral values so they read as floating point.
std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (std::isfinite(v) && s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

double parse_env_tol(const char* text) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(text, &end);
  if (end == text || *end != '\0' || errno == ERANGE || !(v > 0) || !std::isfinite(v))
    throw ArgError{std::string("MLBIV_TOL='") + text + "' is not a positive number"};
  return v;
}

std::optional<double> env_tol() {
  const char* t = std::getenv("MLBIV_TOL");
  if (!t || !*t) return std::nullopt;
  return parse_env_tol(t);
}

struct EvalArgs {
  double alpha = 0, beta = 0, mu_re = 0, mu_im = 0;
  double x_re = 0, x_im = 0, y_re = 0, y_im = 0;
  double x_mod = 0, x_arg = 0, y_mod = 0, y_arg = 0;
  std::string method = "auto";
  std::optional<double> tol;
  std::optional<double> r_series, r_asym;
  CLI::Option* x_polar = nullptr;
  CLI::Option* y_polar = nullptr;
};

void add_eval(CLI::App& app, EvalArgs& a) {
  auto* cmd = app.add_subcommand("eval", "Evaluate E at one point");
  cmd->add_option("--alpha", a.alpha, "alpha > 0")->required();
  cmd->add_option("--beta", a.beta, "beta > 0")->required();
  cmd->add_option("--mu-re", a.mu_re, "Re mu")->required();
  cmd->add_option("--mu-im", a.mu_im, "Im mu");
  auto* xr = cmd->add_option("--x-re", a.x_re, "Re x");
  auto* xi = cmd->add_option("--x-im", a.x_im, "Im x");
  auto* yr = cmd->add_option("--y-re", a.y_re, "Re y");
  auto* yi = cmd->add_option("--y-im", a.y_im, "Im y");
  a.x_polar = cmd->add_option("--x-mod", a.x_mod, "|x| (polar form)")->excludes(xr)->excludes(xi);
  cmd->add_option("--x-arg", a.x_arg, "arg x in radians")->needs(a.x_polar);
  a.y_polar = cmd->add_option("--y-mod", a.y_mod, "|y| (polar form)")->excludes(yr)->excludes(yi);
  cmd->add_option("--y-arg", a.y_arg, "arg y in radians")->needs(a.y_polar);
  cmd->add_option("--method", a.method, "auto, series, contour, asym");
  cmd->add_option("--tol", a.tol, "relative tolerance (default: MLBIV_TOL or 1e-10)");
  cmd->add_option("--r-series", a.r_series, "auto: series radius");
  cmd->add_option("--r-asym", a.r_asym, "auto: asymptotic radius");
}

int run_eval(const EvalArgs& a) {
  mlbiv_options opts = mlbiv_default_options();
  if (auto s = mlbiv_method_parse(a.method.c_str(), &opts.method); s != MLBIV_OK) return report(s, "--method");
  if (a.tol) opts.tol = *a.tol;
  else if (auto t = env_tol()) opts.tol = *t;
  if (a.r_series) opts.r_series = *a.r_series;
  if (a.r_asym) opts.r_asym = *a.r_asym;

  double x_re = a.x_re, x_im = a.x_im, y_re = a.y_re, y_im = a.y_im;
  if (a.x_polar->count()) {
    x_re = a.x_mod * std::cos(a.x_arg);
    x_im = a.x_mod * std::sin(a.x_arg);
  }
  if (a.y_polar->count()) {
    y_re = a.y_mod * std::cos(a.y_arg);
    y_im = a.y_mod * std::sin(a.y_arg);
  }

  mlbiv_params* raw = nullptr;
  if (auto s = mlbiv_params_create(a.alpha, a.beta, a.mu_re, a.mu_im, &raw); s != MLBIV_OK) return report(s, "parameters");
  std::unique_ptr<mlbiv_params, decltype(&mlbiv_params_destroy)> params(raw, mlbiv_params_destroy);

  mlbiv_result* rr = nullptr;
  if (auto s = mlbiv_evaluate(params.get(), x_re, x_im, y_re, y_im, &opts, &rr); s != MLBIV_OK)
    return report(s, "evaluation failed");
  std::unique_ptr<mlbiv_result, decltype(&mlbiv_result_destroy)> result(rr, mlbiv_result_destroy);

  double re = 0, im = 0;
  mlbiv_result_value(result.get(), &re, &im);
  std::string line = number(re) + " " + number(im) + " " + mlbiv_method_name(mlbiv_result_method(result.get())) +
                     " " + number(mlbiv_result_error_estimate(result.get()));
  const size_t nw = mlbiv_result_warning_count(result.get());
  for (size_t i = 0; i < nw; ++i) line += (i ? "; " : " warnings: ") + std::string(mlbiv_result_warning(result.get(), i));
  std::printf("%s\n", line.c_str());
  return kOk;
}

// Sweep flags mirror the configuration keys one-to-one.
const char* const kSweepKeys[] = {"alpha",   "beta",    "mu-re",  "mu-im",   "method",  "tol",
                                  "r-series", "r-asym", "format", "x-start", "x-stop",  "x-count",
                                  "x-arg",   "y-start", "y-stop", "y-count", "y-arg"};

struct SweepArgs {
  std::string config;
  std::string output = "-";
  std::vector<std::pair<std::string, std::string>> values;  // key, text; filled from flags
  std::vector<CLI::Option*> options;
};

void add_sweep(CLI::App& app, SweepArgs& a) {
  auto* cmd = app.add_subcommand("sweep", "Evaluate E on an x-by-y grid (x outer)");
  cmd->add_option("--config", a.config, "key=value file; flags override its entries")->check(CLI::ExistingFile);
  cmd->add_option("-o,--output", a.output, "output file ('-' for standard output)");
  a.values.reserve(std::size(kSweepKeys));
  for (const char* key : kSweepKeys) {
    a.values.emplace_back(key, "");
    a.options.push_back(cmd->add_option(std::string("--") + key, a.values.back().second));
  }
}

int run_sweep(const SweepArgs& a) {
  mlbiv_sweep* raw = nullptr;
  if (auto s = mlbiv_sweep_create(&raw); s != MLBIV_OK) return report(s, "sweep");
  std::unique_ptr<mlbiv_sweep, decltype(&mlbiv_sweep_destroy)> sweep(raw, mlbiv_sweep_destroy);

  // Precedence: flag > config file > MLBIV_TOL > default.
  if (const char* t = std::getenv("MLBIV_TOL"); t && *t) {
    parse_env_tol(t);
    if (auto s = mlbiv_sweep_set(sweep.get(), "tol", t); s != MLBIV_OK) return report(s, "MLBIV_TOL");
  }
  if (!a.config.empty())
    if (auto s = mlbiv_sweep_load_config(sweep.get(), a.config.c_str()); s != MLBIV_OK) {
      report(s, "--config");
      return kArgError;
    }
  for (size_t i = 0; i < a.values.size(); ++i) {
    if (!a.options[i]->count()) continue;
    const auto& [key, text] = a.values[i];
    if (auto s = mlbiv_sweep_set(sweep.get(), key.c_str(), text.c_str()); s != MLBIV_OK)
      return report(s, ("--" + key).c_str());
  }

  // Fail on an unwritable destination before spending time on the grid.
  const bool to_stdout = a.output == "-";
  if (!to_stdout) {
    std::FILE* f = std::fopen(a.output.c_str(), "w");
    if (!f) {
      std::fprintf(stderr, "mlbiv: cannot write '%s': %s\n", a.output.c_str(), std::strerror(errno));
      return kArgError;
    }
    std::fclose(f);
  }

  if (auto s = mlbiv_sweep_run(sweep.get()); s != MLBIV_OK) return report(s, "sweep");
  if (auto s = mlbiv_sweep_write(sweep.get(), to_stdout ? nullptr : a.output.c_str()); s != MLBIV_OK)
    return s == MLBIV_E_IO ? (report(s, "output"), kArgError) : report(s, "output");

  const size_t failed = mlbiv_sweep_failed_count(sweep.get());
  if (failed) {
    std::fprintf(stderr, "mlbiv: %zu of %zu points failed (method column 'failed')\n", failed,
                 mlbiv_sweep_record_count(sweep.get()));
    return kEvalError;
  }
  return kOk;
}

struct SelftestArgs {
  std::vector<std::string> suites;
  bool list = false;
};

void add_selftest(CLI::App& app, SelftestArgs& a) {
  auto* cmd = app.add_subcommand("selftest", "Run the built-in verification suites");
  cmd->add_option("--suite", a.suites, "run only these suites (repeatable)");
  cmd->add_flag("--list", a.list, "list suite names and exit");
}

int run_selftest(const SelftestArgs& a) {
  std::vector<std::string> names;
  for (size_t i = 0; i < mlbiv_selftest_suite_count(); ++i) names.emplace_back(mlbiv_selftest_suite_name(i));
  if (a.list) {
    for (const auto& n : names) std::printf("%s\n", n.c_str());
    return kOk;
  }
  const std::vector<std::string>& run = a.suites.empty() ? names : a.suites;
  for (const auto& n : run) {
    bool known = false;
    for (const auto& k : names) known = known || k == n;
    if (!known) {
      std::string avail;
      for (const auto& k : names) avail += (avail.empty() ? "" : ", ") + k;
      std::fprintf(stderr, "mlbiv: unknown suite '%s'; available: %s\n", n.c_str(), avail.c_str());
      return kArgError;
    }
  }

  bool all = true;
  for (const auto& n : run) {
    int passed = 0;
    double seconds = 0;
    char detail[512];
    if (auto s = mlbiv_selftest_run(n.c_str(), &passed, &seconds, detail, sizeof detail); s != MLBIV_OK)
      return report(s, n.c_str());
    all = all && passed;
    std::printf("%-4s %-11s %7.3fs  %s\n", passed ? "PASS" : "FAIL", n.c_str(), seconds, detail);
  }
  std::printf("%s\n", all ? "all suites passed" : "some suites FAILED");
  return all ? kOk : kEvalError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-variable Mittag-Leffler function E_{alpha,beta}(x, y; mu)", "mlbiv"};
  app.require_subcommand(1);
  app.set_version_flag("--version", mlbiv_version());

  EvalArgs eval_args;
  SweepArgs sweep_args;
  SelftestArgs selftest_args;
  add_eval(app, eval_args);
  add_sweep(app, sweep_args);
  add_selftest(app, selftest_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help, --version
    std::cerr << "mlbiv: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    std::cerr << (subs.empty() ? app.help() : subs.front()->help());
    return kArgError;
  }

  try {
    if (app.got_subcommand("eval")) return run_eval(eval_args);
    if (app.got_subcommand("sweep")) return run_sweep(sweep_args);
    return run_selftest(selftest_args);
  } catch (const ArgError& e) {
    std::fprintf(stderr, "mlbiv: %s\n", e.message.c_str());
    return kArgError;
  }
}

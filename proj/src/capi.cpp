#include "mlbiv/mlbiv.h"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <new>
#include <string>

#include "mlbiv/evaluator.hpp"
#include "mlbiv/selftest.hpp"
#include "mlbiv/sweep.hpp"

struct mlbiv_params {
  mlbiv::Params p;
};

struct mlbiv_result {
  mlbiv::EvalResult r;
};

struct mlbiv_sweep {
  mlbiv::SweepSpec spec;
  std::vector<mlbiv::SweepRecord> records;
};

namespace {

thread_local std::string last_error;

mlbiv_status status_of(mlbiv::ErrorCode code) {
  using mlbiv::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return MLBIV_E_INVALID_ARGUMENT;
    case ErrorCode::PoleAtZ: return MLBIV_E_POLE;
    case ErrorCode::NonConvergentQuadrature: return MLBIV_E_QUADRATURE;
    case ErrorCode::TailNotNegligible: return MLBIV_E_TAIL;
    case ErrorCode::DegenerateDenominator: return MLBIV_E_DEGENERATE;
    case ErrorCode::NoAdmissibleContour: return MLBIV_E_NO_CONTOUR;
    case ErrorCode::ParameterOutOfRange: return MLBIV_E_PARAMETER_RANGE;
    case ErrorCode::NoConvergence: return MLBIV_E_NO_CONVERGENCE;
    case ErrorCode::OracleUnavailable: return MLBIV_E_ORACLE;
    case ErrorCode::AllMethodsFailed: return MLBIV_E_ALL_METHODS_FAILED;
    case ErrorCode::Io: return MLBIV_E_IO;
  }
  return MLBIV_E_INTERNAL;
}

mlbiv_status fail(mlbiv_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

// Runs f, translating exceptions into status codes.
template <class F>
mlbiv_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return MLBIV_OK;
  } catch (const mlbiv::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MLBIV_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MLBIV_E_INTERNAL, e.what());
  }
}

mlbiv::EvalOptions to_options(const mlbiv_options* o) {
  mlbiv::EvalOptions out;
  if (!o) return out;
  switch (o->method) {
    case MLBIV_METHOD_AUTO: out.method = mlbiv::Method::Auto; break;
    case MLBIV_METHOD_SERIES: out.method = mlbiv::Method::Series; break;
    case MLBIV_METHOD_CONTOUR: out.method = mlbiv::Method::Contour; break;
    case MLBIV_METHOD_ASYMPTOTIC: out.method = mlbiv::Method::Asymptotic; break;
    default: throw mlbiv::Error(mlbiv::ErrorCode::InvalidArgument, "unknown method value");
  }
  out.tol = o->tol;
  out.r_series = o->r_series;
  out.r_asym = o->r_asym;
  out.validate();
  return out;
}

mlbiv_method to_c(mlbiv::Method m) {
  switch (m) {
    case mlbiv::Method::Auto: return MLBIV_METHOD_AUTO;
    case mlbiv::Method::Series: return MLBIV_METHOD_SERIES;
    case mlbiv::Method::Contour: return MLBIV_METHOD_CONTOUR;
    case mlbiv::Method::Asymptotic: return MLBIV_METHOD_ASYMPTOTIC;
  }
  return MLBIV_METHOD_AUTO;
}

void require(const void* p, const char* what) {
  if (!p) throw mlbiv::Error(mlbiv::ErrorCode::InvalidArgument, std::string(what) + " must not be null");
}

}  // namespace

extern "C" {

const char* mlbiv_version(void) { return "1.0.0"; }

const char* mlbiv_last_error(void) { return last_error.c_str(); }

const char* mlbiv_status_name(mlbiv_status status) {
  switch (status) {
    case MLBIV_OK: return "ok";
    case MLBIV_E_INVALID_ARGUMENT: return "invalid-argument";
    case MLBIV_E_POLE: return "pole-at-z";
    case MLBIV_E_QUADRATURE: return "non-convergent-quadrature";
    case MLBIV_E_TAIL: return "tail-not-negligible";
    case MLBIV_E_DEGENERATE: return "degenerate-denominator";
    case MLBIV_E_NO_CONTOUR: return "no-admissible-contour";
    case MLBIV_E_PARAMETER_RANGE: return "parameter-out-of-range";
    case MLBIV_E_NO_CONVERGENCE: return "no-convergence";
    case MLBIV_E_ORACLE: return "oracle-unavailable";
    case MLBIV_E_ALL_METHODS_FAILED: return "all-methods-failed";
    case MLBIV_E_IO: return "io";
    case MLBIV_E_INTERNAL: return "internal";
  }
  return "unknown";
}

mlbiv_options mlbiv_default_options(void) {
  const mlbiv::EvalOptions d;
  return {MLBIV_METHOD_AUTO, d.tol, d.r_series, d.r_asym};
}

mlbiv_status mlbiv_method_parse(const char* name, mlbiv_method* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = to_c(mlbiv::parse_method(name));
  });
}

const char* mlbiv_method_name(mlbiv_method method) {
  switch (method) {
    case MLBIV_METHOD_AUTO: return "auto";
    case MLBIV_METHOD_SERIES: return "series";
    case MLBIV_METHOD_CONTOUR: return "contour";
    case MLBIV_METHOD_ASYMPTOTIC: return "asymptotic";
  }
  return "unknown";
}

mlbiv_status mlbiv_params_create(double alpha, double beta, double mu_re, double mu_im, mlbiv_params** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    mlbiv::Params p{alpha, beta, {mu_re, mu_im}};
    p.validate();
    *out = new mlbiv_params{p};
  });
}

void mlbiv_params_destroy(mlbiv_params* params) { delete params; }

mlbiv_status mlbiv_evaluate(const mlbiv_params* params, double x_re, double x_im, double y_re, double y_im,
                            const mlbiv_options* options, mlbiv_result** out) {
  return guarded([&] {
    require(params, "params");
    require(out, "out");
    *out = nullptr;
    auto r = mlbiv::evaluate({x_re, x_im}, {y_re, y_im}, params->p, to_options(options));
    *out = new mlbiv_result{std::move(r)};
  });
}

void mlbiv_result_destroy(mlbiv_result* result) { delete result; }

void mlbiv_result_value(const mlbiv_result* result, double* re, double* im) {
  if (!result) return;
  if (re) *re = result->r.value.real();
  if (im) *im = result->r.value.imag();
}

mlbiv_method mlbiv_result_method(const mlbiv_result* result) {
  return result ? to_c(result->r.method) : MLBIV_METHOD_AUTO;
}

double mlbiv_result_error_estimate(const mlbiv_result* result) { return result ? result->r.error_estimate : 0.0; }

const char* mlbiv_result_region(const mlbiv_result* result) { return result ? result->r.region.c_str() : ""; }

size_t mlbiv_result_warning_count(const mlbiv_result* result) { return result ? result->r.warnings.size() : 0; }

const char* mlbiv_result_warning(const mlbiv_result* result, size_t index) {
  if (!result || index >= result->r.warnings.size()) return nullptr;
  return result->r.warnings[index].c_str();
}

mlbiv_status mlbiv_sweep_create(mlbiv_sweep** out) {
  return guarded([&] {
    require(out, "out");
    *out = new mlbiv_sweep{};
  });
}

void mlbiv_sweep_destroy(mlbiv_sweep* sweep) { delete sweep; }

mlbiv_status mlbiv_sweep_set(mlbiv_sweep* sweep, const char* key, const char* value) {
  return guarded([&] {
    require(sweep, "sweep");
    require(key, "key");
    require(value, "value");
    mlbiv::apply_config(sweep->spec, {{key, value}});
  });
}

mlbiv_status mlbiv_sweep_load_config(mlbiv_sweep* sweep, const char* path) {
  return guarded([&] {
    require(sweep, "sweep");
    require(path, "path");
    mlbiv::apply_config(sweep->spec, mlbiv::read_config_file(path));
  });
}

mlbiv_status mlbiv_sweep_run(mlbiv_sweep* sweep) {
  return guarded([&] {
    require(sweep, "sweep");
    sweep->records = mlbiv::run_sweep(sweep->spec);
  });
}

size_t mlbiv_sweep_record_count(const mlbiv_sweep* sweep) { return sweep ? sweep->records.size() : 0; }

size_t mlbiv_sweep_failed_count(const mlbiv_sweep* sweep) {
  size_t n = 0;
  if (sweep)
    for (const auto& r : sweep->records) n += !r.ok;
  return n;
}

mlbiv_status mlbiv_sweep_write(const mlbiv_sweep* sweep, const char* path) {
  return guarded([&] {
    require(sweep, "sweep");
    auto write = [&](std::ostream& os) {
      if (sweep->spec.format == mlbiv::OutputFormat::Json)
        mlbiv::write_json(os, sweep->records);
      else
        mlbiv::write_csv(os, sweep->records);
      os.flush();
      if (!os) throw mlbiv::Error(mlbiv::ErrorCode::Io, "write failed");
    };
    if (!path || std::strcmp(path, "-") == 0) {
      write(std::cout);
      return;
    }
    std::ofstream f(path);
    if (!f) throw mlbiv::Error(mlbiv::ErrorCode::Io, std::string("cannot open '") + path + "' for writing");
    write(f);
  });
}

size_t mlbiv_selftest_suite_count(void) { return mlbiv::selftest_suites().size(); }

const char* mlbiv_selftest_suite_name(size_t index) {
  const auto& names = mlbiv::selftest_suites();
  return index < names.size() ? names[index].c_str() : nullptr;
}

mlbiv_status mlbiv_selftest_run(const char* suite, int* passed, double* seconds, char* detail, size_t detail_size) {
  return guarded([&] {
    require(suite, "suite");
    const mlbiv::SuiteResult r = mlbiv::run_suite(suite);
    if (passed) *passed = r.pass ? 1 : 0;
    if (seconds) *seconds = r.seconds;
    if (detail && detail_size > 0) std::snprintf(detail, detail_size, "%s", r.detail.c_str());
  });
}

}  // extern "C"

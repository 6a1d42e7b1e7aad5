#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace mlbiv {

using Complex = std::complex<double>;
using LComplex = std::complex<long double>;

enum class ErrorCode {
  InvalidArgument,
  PoleAtZ,
  NonConvergentQuadrature,
  TailNotNegligible,
  DegenerateDenominator,
  NoAdmissibleContour,
  ParameterOutOfRange,
  NoConvergence,
  OracleUnavailable,
  AllMethodsFailed,
  Io,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// C API can map it onto a status value without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(Complex z, const char* what) {
  if (!is_finite(z))
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be finite");
}

}  // namespace mlbiv

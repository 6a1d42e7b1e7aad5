#pragma once

#include "mlbiv/hankel.hpp"
#include "mlbiv/types.hpp"

namespace mlbiv {

/// Principal branch of log Gamma(z): the analytic continuation from the
/// positive real axis, with the branch cut along the negative real axis.
/// Throws ErrorCode::PoleAtZ within 1e-12 of a non-positive integer.
Complex log_gamma(Complex z);

/// 1/Gamma(z). Entire; returns an exact zero at non-positive integers.
Complex recip_gamma(Complex z);

/// 1/Gamma(s) by quadrature of (1/2 pi i) \int e^u u^{-s} du along `path`.
/// Independent of recip_gamma; used as its oracle. `tol` is absolute.
Complex recip_gamma_hankel(Complex s, const HankelPath& path, double tol);

namespace detail {

// Extended-precision kernels shared by the series and asymptotic modules.
LComplex recip_gamma_l(LComplex z);
long double recip_gamma_l(long double x);
LComplex log_gamma_l(LComplex z);

}  // namespace detail
}  // namespace mlbiv

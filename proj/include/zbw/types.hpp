#pragma once

#include <complex>

namespace zbw {

// All core arithmetic runs in 80-bit extended precision.  The operator
// identities this library verifies are absolute-tolerance statements on
// products of matrices whose entries grow like p^2/min(m,N); the extra
// 11 mantissa bits keep those identities at ~1e-14 even in the corners
// of the supported parameter box (m, |p| up to ~10, N down to m/2).
using real = long double;
using cplx = std::complex<real>;

inline constexpr real kPi = 3.14159265358979323846264338327950288L;

// Default entrywise equality tolerance for operator identities at desk
// scale (dims <= 6, |m|, |p| <= 1e2).
inline constexpr real kOperatorTol = 1e-12L;

// Spectral decompositions with condition estimates beyond this are
// rejected as ill-conditioned.
inline constexpr real kMaxSpectralCondition = 1e8L;

}  // namespace zbw

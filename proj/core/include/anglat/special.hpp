#pragma once

// Complex special-function kernels: log-Gamma, Riemann zeta, Hurwitz zeta,
// Catalan beta, and the completed (real-on-critical-line) forms used for
// sign-change zero detection.

#include <complex>

#include "anglat/errors.hpp"

namespace anglat {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Principal branch of log Gamma (continuation from the positive real axis,
/// cut along (-inf, 0]).  Lanczos for Re z >= 1/2, reflection below.
/// Throws pole_error at non-positive integers.
cplx ln_gamma(cplx z);

/// Gamma via exp(ln_gamma).
cplx gamma_c(cplx z);

/// Riemann zeta, Euler-Maclaurin for Re s >= -1/2 and functional equation
/// below.  Throws pole_error at s = 1.  Good to ~1e-12 relative for
/// |Im s| <= ~700.
cplx zeta(cplx s);

/// Hurwitz zeta(s, q) for q > 0, same Euler-Maclaurin engine (Re s > -1/2
/// only; that is all the Catalan-beta split needs).
cplx hurwitz_zeta(cplx s, double q);

/// Catalan beta L_{-4}(s) = 4^{-s} (zeta(s,1/4) - zeta(s,3/4)), entire;
/// functional equation used for Re s < -1/2.
cplx beta_catalan(cplx s);

/// Phase theta(t) with Z(t) = exp(i theta) zeta(1/2+it) real
/// (theta = Im ln_gamma(1/4 + it/2) - (t/2) ln pi).
double riemann_siegel_theta(double t);

/// Analogous phase for the Catalan beta completed form
/// (theta = Im ln_gamma(3/4 + it/2) - (t/2) ln(pi/4)).
double beta_theta(double t);

/// zeta functional-equation residual |zeta(s) - chi(s) zeta(1-s)| / |zeta(s)|
/// with chi(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s).  Test/diagnostic hook.
double zeta_functional_residual(cplx s);

} // namespace anglat

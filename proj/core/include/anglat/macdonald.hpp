#pragma once

// Macdonald function K_nu(x) for complex order and positive real argument,
// equal to the integral  K_nu(x) = int_0^inf exp(-x cosh u) cosh(nu u) du.
//
// One representation cannot cover the whole (nu, x) range in doubles.  The
// evaluator picks between three routes and reports an error estimate:
//
//  * panel quadrature of the defining integral.  The integrand oscillates
//    like cos(Im(nu) u) under an envelope of size exp(-x), while the value
//    is of size exp(-pi Im(nu)/2); the cancellation costs a factor
//    exp(pi b/2 - x) of precision, so the route is reliable only when
//    pi Im(nu)/2 - x is small.
//
//  * the ascending series in Gamma-pair form,
//      K = (1/2) [ Gamma(nu) (x/2)^(-nu) S(-nu) + Gamma(-nu) (x/2)^nu S(nu) ],
//      S(mu) = sum_k (x^2/4)^k / (k! (mu+1)_k),
//    whose largest term exceeds the result by about exp(x^2 / (4 Im nu)),
//    so it covers small and moderate x when |Im nu| >= 1/2.
//
//  * Taylor continuation of the modified Bessel ODE in x, marching downward
//    from an anchor at x0 >= pi Im(nu)/2 where the quadrature is accurate.
//    Downward is the K-dominant direction, so the march is stable, and one
//    march serves every argument on the way down.  This closes the gap
//    between the other two routes at large |Im nu|.

#include <complex>
#include <span>
#include <vector>

#include "anglat/errors.hpp"
#include "anglat/special.hpp"

namespace anglat {

struct QuadratureSpec {
    double max_abscissa = 0.0;   // cosh-integral cutoff; 0 = solve from decay
    int nodes = 16;              // Gauss-Legendre nodes per panel
    double target_rel_err = 1e-9;

    void validate() const;
};

enum class KMethod { quadrature, series, ode_march };

struct KResult {
    cplx value;
    double rel_err_est = 0.0;
    KMethod method = KMethod::quadrature;
};

class Macdonald {
public:
    explicit Macdonald(QuadratureSpec spec = {});

    /// K_nu(x), x > 0.  Throws on x <= 0; convergence_error when no route
    /// meets spec.target_rel_err.
    KResult eval(cplx nu, double x) const;

    /// K_nu and K'_nu at a strictly descending list of arguments, by one
    /// downward ODE march (used by the lattice-sum kernels, where all
    /// arguments 2 pi k for one order are needed at once).
    void eval_descending(cplx nu, std::span<const double> xs,
                         std::vector<cplx>& k_out,
                         std::vector<cplx>& kp_out) const;

    /// ln |K_nu(x)| leading-order estimate (uniform asymptotics); used for
    /// term-dropping decisions in the lattice sums.
    static double log_magnitude_estimate(cplx nu, double x);

    const QuadratureSpec& spec() const { return spec_; }

private:
    QuadratureSpec spec_;
};

/// One-shot convenience wrapper.
cplx macdonald_k(cplx nu, double x, const QuadratureSpec& spec = {});

} // namespace anglat

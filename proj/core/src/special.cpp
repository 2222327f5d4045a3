#include "anglat/special.hpp"

#include <cmath>
#include <cstdlib>

namespace anglat {

namespace {

constexpr double kLnPi = 1.1447298858494001741434273513531;
constexpr double kLn2 = 0.69314718055994530941723212145818;

// Lanczos, g = 607/128, 15 terms (Godfrey's coefficients).  ~1e-15 relative
// over the right half-plane.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 &&
           z.real() == std::floor(z.real());
}

// ln Gamma for Re z >= 1/2.  The Lanczos sum stays close to 1 there, so
// principal logs give the principal branch directly.
cplx ln_gamma_right(cplx z) {
    cplx acc = kLanczos[0];
    for (int k = 1; k < 15; ++k) acc += kLanczos[k] / (z + cplx(k - 1.0));
    const cplx base = z + (kLanczosG - 0.5);
    return 0.5 * std::log(2.0 * kPi) + (z - 0.5) * std::log(base) - base +
           std::log(acc);
}

// log sin(pi z) on the branch that makes the reflection formula yield the
// principal ln Gamma, for Im z >= 0:
//   sin(pi z) = (1/2) exp(i pi (1/2 - z)) (1 - exp(2 pi i z)),
// and |exp(2 pi i z)| < 1 keeps the last log principal.
cplx log_sin_pi_upper(cplx z) {
    const cplx q = std::exp(cplx(0.0, 2.0 * kPi) * z);
    return -kLn2 + cplx(0.0, kPi) * (0.5 - z) + std::log(1.0 - q);
}

} // namespace

cplx ln_gamma(cplx z) {
    if (is_nonpositive_integer(z))
        throw pole_error("ln_gamma: pole at non-positive integer", z);
    if (z.real() >= 0.5) return ln_gamma_right(z);
    if (z.imag() < 0.0) return std::conj(ln_gamma(std::conj(z)));
    // reflection; real axis handled as the limit from above
    return kLnPi - log_sin_pi_upper(z) - ln_gamma_right(1.0 - z);
}

cplx gamma_c(cplx z) { return std::exp(ln_gamma(z)); }

namespace {

// B_{2k} / (2k)! for the Euler-Maclaurin tail, k = 1..12.
constexpr double kBernFact[12] = {
    8.3333333333333333333e-02,  -1.3888888888888888889e-03,
    3.3068783068783068783e-05,  -8.2671957671957671958e-07,
    2.0876756987868098979e-08,  -5.2841901386874931848e-10,
    1.3382536530684678833e-11,  -3.3896802963225828668e-13,
    8.5860620562778445641e-15,  -2.1748686985580618730e-16,
    5.5090028283602295152e-18,  -1.3954464685812523341e-19,
};

cplx cpow_int(double base, cplx e) { return std::exp(e * std::log(base)); }

// Euler-Maclaurin for zeta(s, q), valid for Re s > -(2K-1).  Direct terms
// N ~ max(20, |Im s|/2) keep the Bernoulli tail below ~1e-13 relative up to
// |Im s| ~ 700.
cplx hurwitz_em(cplx s, double q, int n_extra = 0) {
    const int N =
        std::max(20, (int)std::ceil(0.5 * std::abs(s.imag()))) + n_extra;
    cplx acc = 0.0;
    for (int n = 0; n < N; ++n) acc += cpow_int(n + q, -s);
    const double Nq = N + q;
    const cplx NqS = cpow_int(Nq, -s);
    acc += NqS * Nq / (s - 1.0);
    acc += 0.5 * NqS;
    cplx poch = s;                      // (s)(s+1)...(s+2k-2)
    cplx npow = NqS / Nq;               // (N+q)^(-s-2k+1)
    for (int k = 1; k <= 12; ++k) {
        acc += kBernFact[k - 1] * poch * npow;
        poch *= (s + (2.0 * k - 1.0)) * (s + (2.0 * k));
        npow /= Nq * Nq;
    }
    return acc;
}

cplx cexpm1(cplx w) {
    if (std::abs(w) > 0.25) return std::exp(w) - 1.0;
    cplx term = w, acc = w;
    for (int k = 2; k < 24; ++k) {
        term *= w / (double)k;
        acc += term;
        if (std::abs(term) < 1e-18 * std::abs(acc)) break;
    }
    return acc;
}

// zeta(s,1/4) - zeta(s,3/4) in one pass; the pole terms at s = 1 cancel
// analytically and are combined through expm1 so the difference stays
// accurate near s = 1 (beta is entire).
cplx hurwitz_quarter_diff(cplx s) {
    const int N = std::max(20, (int)std::ceil(0.5 * std::abs(s.imag())));
    cplx acc = 0.0;
    for (int n = 0; n < N; ++n)
        acc += cpow_int(n + 0.25, -s) - cpow_int(n + 0.75, -s);
    const double a = N + 0.25, b = N + 0.75;
    const double La = std::log(a), dL = std::log(b) - La;
    // [(a)^{1-s} - (b)^{1-s}] / (s-1)
    const cplx om = (1.0 - s) * La;
    if (std::abs(s - 1.0) < 1e-12) {
        acc += std::exp(om) * dL;
    } else {
        acc += -std::exp(om) * cexpm1((1.0 - s) * dL) / (s - 1.0);
    }
    const cplx aS = cpow_int(a, -s), bS = cpow_int(b, -s);
    acc += 0.5 * (aS - bS);
    cplx poch = s;
    cplx npa = aS / a, npb = bS / b;
    for (int k = 1; k <= 12; ++k) {
        acc += kBernFact[k - 1] * poch * (npa - npb);
        poch *= (s + (2.0 * k - 1.0)) * (s + (2.0 * k));
        npa /= a * a;
        npb /= b * b;
    }
    return acc;
}

} // namespace

cplx zeta(cplx s) {
    if (s == cplx(1.0, 0.0)) throw pole_error("zeta: pole at s = 1", s);
    if (s.real() >= -0.5) return hurwitz_em(s, 1.0);
    // functional equation: zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s)
    const cplx chi = std::exp(s * kLn2 + (s - 1.0) * kLnPi +
                              ln_gamma(1.0 - s)) *
                     std::sin(0.5 * kPi * s);
    return chi * hurwitz_em(1.0 - s, 1.0);
}

cplx hurwitz_zeta(cplx s, double q) {
    if (q <= 0.0)
        throw std::domain_error("hurwitz_zeta: q must be positive");
    if (s == cplx(1.0, 0.0))
        throw pole_error("hurwitz_zeta: pole at s = 1", s);
    return hurwitz_em(s, q);
}

cplx beta_catalan(cplx s) {
    if (s.real() >= -0.5)
        return std::exp(-s * (2.0 * kLn2)) * hurwitz_quarter_diff(s);
    // beta(s) = (2/pi)^(1-s) sin(pi(1-s)/2) Gamma(1-s) beta(1-s)
    const cplx u = 1.0 - s;
    return std::exp(u * (kLn2 - kLnPi) + ln_gamma(u)) *
           std::sin(0.5 * kPi * u) * std::exp(-u * (2.0 * kLn2)) *
           hurwitz_quarter_diff(u);
}

double riemann_siegel_theta(double t) {
    return std::imag(ln_gamma(cplx(0.25, 0.5 * t))) - 0.5 * t * kLnPi;
}

double beta_theta(double t) {
    return std::imag(ln_gamma(cplx(0.75, 0.5 * t))) -
           0.5 * t * (kLnPi - 2.0 * kLn2);
}

double zeta_functional_residual(cplx s) {
    const cplx lhs = zeta(s);
    const cplx chi = std::exp(s * kLn2 + (s - 1.0) * kLnPi +
                              ln_gamma(1.0 - s)) *
                     std::sin(0.5 * kPi * s);
    return std::abs(lhs - chi * zeta(1.0 - s)) / std::abs(lhs);
}

} // namespace anglat

#include "anglat/macdonald.hpp"

#include <algorithm>
#include <cmath>

namespace anglat {

namespace {

constexpr double kEps = 2.2e-16;

// 16-point Gauss-Legendre on [-1, 1].
constexpr double kGL16x[8] = {
    0.09501250983763744019, 0.28160355077925891323,
    0.45801677765722738634, 0.61787624440264374845,
    0.75540440835500303390, 0.86563120238783174388,
    0.94457502307323257608, 0.98940093499164993260,
};
constexpr double kGL16w[8] = {
    0.18945061045506849629, 0.18260341504492358887,
    0.16915651939500253819, 0.14959598881657673208,
    0.12462897125553387205, 0.09515851168249278481,
    0.06225352393864789286, 0.02715245941175409485,
};
// Embedded 8-point rule on the same panels, as the discretization reference.
constexpr double kGL8x[4] = {
    0.18343464249564980494, 0.52553240991632898582,
    0.79666647741362673959, 0.96028985649753623168,
};
constexpr double kGL8w[4] = {
    0.36268378337836198297, 0.31370664587788728734,
    0.22238103445337447054, 0.10122853629037625915,
};

// ---------------------------------------------------------------------
// Line quadrature of K_nu(x) = (1/2) int_{-inf}^{inf} e^{-phi(w)} dw,
// phi(w) = x cosh w + nu w, along the horizontal line w = u - i c.
//
// On the real line (c = 0) the integrand has modulus ~ e^{-x} while the
// value is ~ e^{-pi b/2} (b = Im nu), so for b >> x almost everything
// cancels.  The saddle of phi sits at sinh w = -nu/x, roughly at
// v = -asin(min(b/x, 1)); running the contour through that depth converts
// the cancellation factor into the explicit prefactor e^{i nu c} and
// leaves an essentially positive integral.  c is chosen per call from a
// small grid by minimizing the predicted precision loss.
// ---------------------------------------------------------------------

// Re phi along the shifted line, minus the constant bc absorbed in the
// prefactor:  Re phi(u - ic) = x cos c cosh u + a u  (a = Re nu).
double line_env(double a, double x, double cosc, double u) {
    return x * cosc * std::cosh(u) + a * u;
}

// Minimum of the envelope exponent over u (the integrand peak).
double line_env_min(double a, double x, double cosc) {
    const double u0 = -std::asinh(a / (x * cosc));
    return line_env(a, x, cosc, u0);
}

// Predicted base-e precision loss of the line quadrature at shift c.
double line_loss(cplx nu, double x, double c) {
    const double a = nu.real(), b = nu.imag();
    const double cosc = std::cos(c);
    const double peak = -line_env_min(a, x, cosc);
    const double log_scaled_value =
        Macdonald::log_magnitude_estimate(nu, x) + b * c;
    return peak - log_scaled_value;
}

double choose_shift(cplx nu, double x) {
    const double b = nu.imag();
    if (b <= 1.0) return 0.0;
    double best_c = 1.5607961601207295;   // pi/2 - 0.01
    for (double c :
         {0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 1.15, 1.3, 1.4, 1.48, 1.53,
          1.5607961601207295}) {
        if (line_loss(nu, x, c) <= 8.0) {
            best_c = c;
            break;
        }
    }
    return best_c;
}

// Solve line_env(u) = env_min + 46 on the given side of the peak.
double solve_cutoff(double a, double x, double cosc, int side) {
    const double u0 = -std::asinh(a / (x * cosc));
    const double target = line_env(a, x, cosc, u0) + 46.0;
    double step = side * 0.5, u = u0 + step;
    while (line_env(a, x, cosc, u) < target) {
        step *= 2.0;
        u = u0 + step;
        if (std::abs(step) > 1e4) break;
    }
    for (int it = 0; it < 80; ++it) {
        const double f = line_env(a, x, cosc, u) - target;
        const double fp = x * cosc * std::sinh(u) + a;
        const double du = f / fp;
        u -= du;
        if (std::abs(du) < 1e-9) break;
    }
    return u;
}

struct QuadOut {
    cplx k, kprime;
    double rel_est;
};

QuadOut line_quad(cplx nu, double x, const QuadratureSpec& spec) {
    const double a = nu.real(), b = nu.imag();
    const double c = (spec.max_abscissa > 0.0) ? 0.0 : choose_shift(nu, x);
    const double cosc = std::cos(c), sinc = std::sin(c);
    double u_lo, u_hi;
    if (spec.max_abscissa > 0.0) {
        u_lo = -spec.max_abscissa;
        u_hi = spec.max_abscissa;
    } else {
        u_lo = solve_cutoff(a, x, cosc, -1);
        u_hi = solve_cutoff(a, x, cosc, +1);
    }
    const double env0 = line_env_min(a, x, cosc);

    const double budget = 2.5 * 16.0 / spec.nodes;
    cplx f16 = 0.0, f8 = 0.0, g16 = 0.0;
    double u = u_lo;
    while (u < u_hi) {
        // local decay + oscillation rate of phi(u - ic)
        const double um = u + 1e-3;
        const double rate = std::abs(a + x * cosc * std::sinh(um)) +
                            std::abs(b - x * sinc * std::cosh(um)) + 1.0;
        const double h = std::min({budget / rate, u_hi - u, 0.5});
        const double mid = u + 0.5 * h, r = 0.5 * h;
        cplx s16 = 0.0, s8 = 0.0, t16 = 0.0;
        auto eval_node = [&](double un) {
            const cplx w(un, -c);
            const cplx chw = std::cosh(w);
            // envelope rescaled by e^{-env0}; restored in the prefactor
            const cplx f =
                std::exp(-x * chw - nu * cplx(un, 0.0) - (-env0));
            return std::make_pair(f, chw);
        };
        for (int j = 0; j < 8; ++j)
            for (double sgn : {-1.0, 1.0}) {
                auto [f, chw] = eval_node(mid + sgn * r * kGL16x[j]);
                s16 += kGL16w[j] * f;
                t16 += kGL16w[j] * (chw * f);
            }
        for (int j = 0; j < 4; ++j)
            for (double sgn : {-1.0, 1.0}) {
                auto [f, chw] = eval_node(mid + sgn * r * kGL8x[j]);
                (void)chw;
                s8 += kGL8w[j] * f;
            }
        f16 += r * s16;
        f8 += r * s8;
        g16 += r * t16;
        u += h;
    }
    // prefactor: the iota from w = u - ic (dw = du), e^{i nu c}, the 1/2 of
    // the symmetric form, and the envelope rescale e^{env0}.
    const cplx pref =
        0.5 * std::exp(cplx(0.0, 1.0) * nu * c + cplx(env0, 0.0));
    QuadOut out;
    out.k = pref * f16;
    out.kprime = -pref * g16;
    const double mag = std::abs(f16);
    const double disc = (mag > 0.0) ? std::abs(f16 - f8) / mag : 1.0;
    const double loss = std::min(600.0, line_loss(nu, x, c));
    out.rel_est = 1e-2 * disc + kEps * std::max(1.0, std::exp(loss));
    return out;
}

// ---------------------------------------------------------------------
// Ascending series in Gamma-pair form,
//   K = sum_{i=0,1} P_i S_i,  P_i = (1/2) Gamma(mu_i) (x/2)^(-mu_i),
//   S_i = sum_k (x^2/4)^k / (k! (1 - mu_i)_k),   mu_0 = nu, mu_1 = -nu.
// Needs |Im nu| >= 1/2 so Gamma(-nu) stays away from its poles; the largest
// term exceeds the result by ~ e^{x^2/(4 Im nu)} and is tracked to
// self-report the loss.
// ---------------------------------------------------------------------

struct SeriesOut {
    cplx k;
    double rel_est;
    bool ok = false;
};

SeriesOut series_route(cplx nu, double x) {
    SeriesOut out;
    if (std::abs(nu.imag()) < 0.5) return out;
    const double lx = std::log(0.5 * x);
    const cplx mu[2] = {nu, -nu};
    const double q = 0.25 * x * x;
    cplx term[2], sum[2];
    for (int i = 0; i < 2; ++i) {
        term[i] = 0.5 * std::exp(ln_gamma(mu[i]) - mu[i] * lx);
        sum[i] = term[i];
    }
    double maxterm = std::abs(term[0]) + std::abs(term[1]);
    for (int k = 1; k < 700; ++k) {
        for (int i = 0; i < 2; ++i) {
            term[i] *= q / ((double)k * ((double)k - mu[i]));
            sum[i] += term[i];
        }
        const double tmag = std::abs(term[0]) + std::abs(term[1]);
        maxterm = std::max(maxterm, tmag);
        if (tmag < 1e-18 * (std::abs(sum[0] + sum[1]) + 1e-300)) break;
    }
    out.k = sum[0] + sum[1];
    const double mag = std::abs(out.k);
    out.rel_est = (mag > 0.0) ? kEps * (maxterm / mag + 4.0) : 1.0;
    out.ok = true;
    return out;
}

double series_loss(cplx nu, double x) {
    const double b = std::abs(nu.imag());
    if (b < 0.5) return 1e9;
    return x * x / (4.0 * std::max(b, 0.5 * x));
}

// ---------------------------------------------------------------------
// Downward Taylor continuation of  x^2 w'' + x w' - (x^2 + nu^2) w = 0.
// Downward in x is the K-dominant direction, so the march is stable; one
// march anchored at the largest argument serves every smaller argument.
// Values span hundreds of orders of magnitude, so the state carries a
// power-of-two exponent offset.
// ---------------------------------------------------------------------

constexpr int kTaylorOrder = 30;

struct MarchState {
    double x;
    cplx w, wp;
    long scale2 = 0;   // true value = w * 2^scale2
};

void taylor_coeffs(const MarchState& st, cplx nu2, cplx* a) {
    const double x0 = st.x;
    a[0] = st.w;
    a[1] = st.wp;
    for (int k = 0; k + 2 <= kTaylorOrder; ++k) {
        cplx rhs = -x0 * (k + 1.0) * (2.0 * k + 1.0) * a[k + 1] -
                   (cplx((double)k * (double)k - x0 * x0, 0.0) - nu2) * a[k];
        if (k >= 1) rhs += 2.0 * x0 * a[k - 1];
        if (k >= 2) rhs += a[k - 2];
        a[k + 2] = rhs / (x0 * x0 * (k + 2.0) * (k + 1.0));
    }
}

// Evaluate the expansion at xi = -h; returns the Taylor tail relative to
// the largest retained term as the local truncation measure.
double taylor_eval(const cplx* a, double h, cplx& w, cplx& wp) {
    const double xi = -h;
    cplx s = a[kTaylorOrder];
    cplx sp = 0.0;
    for (int k = kTaylorOrder - 1; k >= 0; --k) {
        sp = sp * xi + (k + 1.0) * a[k + 1];
        s = s * xi + a[k];
    }
    double scale = 0.0, tail = 0.0, hp = 1.0;
    for (int k = 0; k <= kTaylorOrder; ++k) {
        const double t = std::abs(a[k]) * hp;
        scale = std::max(scale, t);
        if (k >= kTaylorOrder - 1) tail += t;
        hp *= h;
    }
    w = s;
    wp = sp;
    return (scale > 0.0) ? tail / scale : 0.0;
}

cplx apply_scale(cplx v, long scale2) {
    return {std::ldexp(v.real(), (int)scale2),
            std::ldexp(v.imag(), (int)scale2)};
}

} // namespace

void QuadratureSpec::validate() const {
    if (max_abscissa < 0.0)
        throw std::domain_error("QuadratureSpec: max_abscissa must be > 0");
    if (nodes < 16) throw std::domain_error("QuadratureSpec: nodes >= 16");
    if (!(target_rel_err > 0.0) || target_rel_err > 1e-6)
        throw std::domain_error(
            "QuadratureSpec: target_rel_err must lie in (0, 1e-6]");
}

Macdonald::Macdonald(QuadratureSpec spec) : spec_(spec) { spec_.validate(); }

double Macdonald::log_magnitude_estimate(cplx nu, double x) {
    // ln K ~ -Re eta, eta = sqrt(nu^2+x^2) + nu ln(x / (nu + sqrt(nu^2+x^2)))
    cplx n = nu;
    if (n.real() < 0.0) n = -n;
    if (n.imag() < 0.0) n = std::conj(n);
    const cplx rt = std::sqrt(n * n + x * x);
    const cplx eta = rt + n * std::log(x / (n + rt));
    return -eta.real();
}

KResult Macdonald::eval(cplx nu, double x) const {
    if (!(x > 0.0))
        throw std::domain_error("macdonald_k: argument must be positive");
    if (nu.real() < 0.0) nu = -nu;          // K_{-nu} = K_nu
    if (nu.imag() < 0.0) {                  // K_{conj nu}(x) = conj K_nu(x)
        KResult r = eval(std::conj(nu), x);
        r.value = std::conj(r.value);
        return r;
    }
    KResult best;
    best.rel_err_est = 1.0;
    if (series_loss(nu, x) < 16.0) {
        const SeriesOut s = series_route(nu, x);
        if (s.ok) {
            best.value = s.k;
            best.rel_err_est = s.rel_est;
            best.method = KMethod::series;
            if (best.rel_err_est <= spec_.target_rel_err) return best;
        }
    }
    const QuadOut q = line_quad(nu, x, spec_);
    if (q.rel_est < best.rel_err_est) {
        best.value = q.k;
        best.rel_err_est = q.rel_est;
        best.method = KMethod::quadrature;
    }
    if (best.rel_err_est > spec_.target_rel_err)
        throw convergence_error("macdonald_k: requested tolerance not met",
                                best.rel_err_est);
    return best;
}

void Macdonald::eval_descending(cplx nu, std::span<const double> xs,
                                std::vector<cplx>& k_out,
                                std::vector<cplx>& kp_out) const {
    k_out.assign(xs.size(), cplx(0.0));
    kp_out.assign(xs.size(), cplx(0.0));
    if (xs.empty()) return;
    if (nu.real() < 0.0) nu = -nu;
    const bool conj_back = nu.imag() < 0.0;
    if (conj_back) nu = std::conj(nu);

    // skip leading arguments whose values sit below double range
    std::size_t first = 0;
    while (first < xs.size() &&
           log_magnitude_estimate(nu, xs[first]) < -700.0)
        ++first;
    if (first == xs.size()) return;

    const double anchor = xs[first];
    const QuadOut q = line_quad(nu, anchor, spec_);
    MarchState st{anchor, q.k, q.kprime, 0};
    const cplx nu2 = nu * nu;
    std::vector<cplx> coef(kTaylorOrder + 1);

    std::size_t next = first;
    auto emit_if_at = [&] {
        while (next < xs.size() &&
               std::abs(st.x - xs[next]) < 1e-12 * std::max(1.0, st.x)) {
            k_out[next] = apply_scale(st.w, st.scale2);
            kp_out[next] = apply_scale(st.wp, st.scale2);
            ++next;
        }
    };
    emit_if_at();
    while (next < xs.size()) {
        const double omega = std::sqrt(std::abs(nu2) + st.x * st.x) / st.x;
        double h = std::min(3.0 / omega, 0.4 * st.x);
        if (st.x - h <= xs[next]) h = st.x - xs[next];
        taylor_coeffs(st, nu2, coef.data());
        cplx w, wp;
        double tail = taylor_eval(coef.data(), h, w, wp);
        int halvings = 0;
        while (tail > 1e-15 && halvings < 8) {
            h *= 0.5;
            tail = taylor_eval(coef.data(), h, w, wp);
            ++halvings;
        }
        st.x -= h;
        st.w = w;
        st.wp = wp;
        const double mag = std::max(std::abs(st.w), std::abs(st.wp));
        if (mag > 1e100 || (mag > 0.0 && mag < 1e-100)) {
            const int e = std::ilogb(mag);
            st.w = {std::ldexp(st.w.real(), -e), std::ldexp(st.w.imag(), -e)};
            st.wp = {std::ldexp(st.wp.real(), -e),
                     std::ldexp(st.wp.imag(), -e)};
            st.scale2 += e;
        }
        emit_if_at();
    }
    if (conj_back) {
        for (auto& v : k_out) v = std::conj(v);
        for (auto& v : kp_out) v = std::conj(v);
    }
}

cplx macdonald_k(cplx nu, double x, const QuadratureSpec& spec) {
    return Macdonald(spec).eval(nu, x).value;
}

} // namespace anglat

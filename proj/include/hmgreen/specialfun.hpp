#ifndef HMGREEN_SPECIALFUN_HPP
#define HMGREEN_SPECIALFUN_HPP

// Scalar special functions used by the Green function evaluators: complex
// gamma/beta (Lanczos), digamma, the Gauss hypergeometric series, Legendre
// functions of the second kind, Bessel I/J/K of real order, and adaptive
// quadrature with the two reference integrals used as identity checks.

#include <complex>
#include <functional>

namespace hmgreen {

struct PrecisionPolicy {
    double rel_tol = 1e-12;
    int max_terms = 10000;
};

using Cplx = std::complex<double>;

Cplx log_gamma(Cplx z);
Cplx gamma_fn(Cplx z);
double log_gamma(double x);
Cplx beta_fn(Cplx x, Cplx y);
Cplx digamma(Cplx z);

// Gauss hypergeometric 2F1(a, b; c; x) for real x < 1; a Pfaff transform is
// applied for x < 0, the power series otherwise
Cplx hyp2f1(Cplx a, Cplx b, Cplx c, double x, const PrecisionPolicy& pp = {});

// Legendre function of the second kind, Q_{s-1}(x) for x > 1, Re(s) > 1/2;
// at s = 1 reduces to log((x+1)/(x-1))/2
Cplx legendre_q(Cplx s, double x, const PrecisionPolicy& pp = {});
double legendre_q(double s, double x, const PrecisionPolicy& pp = {});

enum class BesselKind { I, J, K };
double bessel(BesselKind kind, double kappa, double x, const PrecisionPolicy& pp = {});
double bessel_i(double kappa, double x);
double bessel_j(double kappa, double x);
double bessel_k(double kappa, double x);
// e^{-x} I_kappa(x) and e^{x} K_kappa(x); stable for large x, used in products
double bessel_i_scaled(double kappa, double x);
double bessel_k_scaled(double kappa, double x);

// adaptive Simpson on [a, b]
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 48);
// adaptive Simpson on (-inf, inf) via tangent substitution
double adaptive_simpson_real_line(const std::function<double(double)>& f, double tol);

struct IntegralResult {
    double value;
    double abs_error;
};

// sum over n of Gamma(s+n)^2 / (Gamma(2s+n) n! (s+n-1)), computed from partial
// sums up to n_max and extrapolated in 1/N (the raw tail decays like 1/N);
// equals 1/(s(s-1))
Cplx gamma_ratio_identity_sum(Cplx s, int n_max = 200);

// integral of (x^2 + a^2)^{-s} over the real line; closed form a^{1-2s} B(1/2, s-1/2)
IntegralResult reference_integral_beta_line(double a, double s);
// integral of (1 + |z - i|^2 / (4 Im z))^{-s} over the hyperbolic plane,
// measure dx dy / y^2; closed form 4 pi / (s - 1)
IntegralResult reference_integral_core_green(double s);

} // namespace hmgreen

#endif

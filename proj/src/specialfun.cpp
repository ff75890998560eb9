#include "hmgreen/specialfun.hpp"

#include "hmgreen/rational.hpp"

#include <cmath>

namespace hmgreen {

// ---------------------------------------------------------------------------
// gamma, beta, digamma
// ---------------------------------------------------------------------------

namespace {

const double kLanczosG = 7.0;
const double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

Cplx log_gamma_core(Cplx z) {
    // valid for Re(z) >= 0.5
    Cplx x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + Cplx(i - 1, 0));
    Cplx t = z + kLanczosG - 0.5;
    return 0.5 * std::log(2 * M_PI) + (z - 0.5) * std::log(t) - t + std::log(x);
}

} // namespace

Cplx log_gamma(Cplx z) {
    if (z.real() < 0.5)
        return std::log(M_PI / std::sin(M_PI * z)) - log_gamma(Cplx(1, 0) - z);
    return log_gamma_core(z);
}

double log_gamma(double x) {
    if (x <= 0 && x == std::floor(x)) throw std::domain_error("log_gamma at a pole");
    return std::lgamma(x);
}

Cplx gamma_fn(Cplx z) { return std::exp(log_gamma(z)); }

Cplx beta_fn(Cplx x, Cplx y) { return std::exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y)); }

Cplx digamma(Cplx z) {
    // push Re(z) up with the recurrence, then the asymptotic series
    Cplx shift = 0;
    while (z.real() < 12) {
        shift -= 1.0 / z;
        z += 1.0;
    }
    static const double b2n_over_2n[] = {
        1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240, 1.0 / 132, -691.0 / 32760, 1.0 / 12,
    };
    Cplx inv2 = 1.0 / (z * z);
    Cplx acc = std::log(z) - 0.5 / z;
    Cplx p = inv2;
    for (double c : b2n_over_2n) {
        acc -= c * p;
        p *= inv2;
    }
    return acc + shift;
}

// ---------------------------------------------------------------------------
// hypergeometric series
// ---------------------------------------------------------------------------

Cplx hyp2f1(Cplx a, Cplx b, Cplx c, double x, const PrecisionPolicy& pp) {
    if (std::abs(x) >= 1)
        throw std::domain_error("hypergeometric argument must satisfy |x| < 1");
    for (int n = 0; n < 4; ++n)
        if (std::abs(c + Cplx(n, 0)) < 1e-14)
            throw std::domain_error("hypergeometric c parameter at a nonpositive integer");
    if (x == 0) return 1;
    if (x < 0) {
        // Pfaff: F(a, b; c; x) = (1-x)^{-a} F(a, c-b; c; x/(x-1)), positive argument
        double y = x / (x - 1);
        return std::pow(Cplx(1 - x, 0), -a) * hyp2f1(a, c - b, c, y, pp);
    }
    Cplx term = 1, sum = 1;
    int settled = 0;
    for (int n = 0; n < pp.max_terms; ++n) {
        Cplx ratio = (a + Cplx(n, 0)) * (b + Cplx(n, 0)) /
                     ((c + Cplx(n, 0)) * Cplx(n + 1, 0));
        term *= ratio * x;
        sum += term;
        double rho = std::min(std::abs(ratio) * x, 0.999999);
        double tail = std::abs(term) * rho / (1 - rho);
        if (tail <= pp.rel_tol * std::abs(sum)) {
            if (++settled >= 2) return sum;
        } else {
            settled = 0;
        }
    }
    throw precision_error("hypergeometric series did not converge within max_terms");
}

// ---------------------------------------------------------------------------
// Legendre Q
// ---------------------------------------------------------------------------

Cplx legendre_q(Cplx s, double x, const PrecisionPolicy& pp) {
    if (!(x > 1)) throw std::domain_error("legendre_q requires argument > 1");
    if (s.real() <= 0.5) throw std::domain_error("legendre_q requires Re(s) > 1/2");
    double w = 2.0 / (1.0 + x);
    if (std::abs(s - Cplx(1, 0)) < 1e-13)
        return Cplx(0.5 * std::log((x + 1) / (x - 1)), 0);
    if (w <= 0.6) {
        Cplx pre = std::exp(2.0 * log_gamma(s) - log_gamma(2.0 * s)) * 0.5 *
                   std::pow(Cplx(w, 0), s);
        return pre * hyp2f1(s, s, 2.0 * s, w, pp);
    }
    // connection at unit argument for F(s, s; 2s; w), logarithmic case:
    //   Q_{s-1}(x) = (w^s / 2) sum_n ((s)_n / n!)^2
    //                (2 psi(n+1) - 2 psi(s+n) - log(1-w)) (1-w)^n
    double u = 1.0 - w;
    Cplx lg = std::log(Cplx(u, 0));
    Cplx poch = 1;  // ((s)_n / n!)^2
    double upow = 1; // u^n
    double harmonic = 0; // psi(n+1) = -gamma + H_n
    const double minus_gamma = -0.5772156649015328606;
    Cplx sum = 0;
    for (int n = 0;; ++n) {
        Cplx coeff = poch * (2.0 * (minus_gamma + harmonic) - 2.0 * digamma(s + Cplx(n, 0)) - lg) *
                     upow;
        sum += coeff;
        if (n > 2 && std::abs(coeff) / (1 - u) <= pp.rel_tol * std::abs(sum)) break;
        if (n + 1 >= pp.max_terms)
            throw precision_error("legendre_q connection series did not converge");
        Cplx r = (s + Cplx(n, 0)) / Cplx(n + 1, 0);
        poch *= r * r;
        upow *= u;
        harmonic += 1.0 / (n + 1);
    }
    return 0.5 * std::pow(Cplx(w, 0), s) * sum;
}

double legendre_q(double s, double x, const PrecisionPolicy& pp) {
    return legendre_q(Cplx(s, 0), x, pp).real();
}

// ---------------------------------------------------------------------------
// Bessel functions
// ---------------------------------------------------------------------------

namespace {

double bessel_ij_series(double kappa, double x, int sign, const PrecisionPolicy& pp) {
    // sum_k (sign)^k (x/2)^{kappa + 2k} / (k! Gamma(kappa + k + 1))
    double lead = kappa * std::log(x / 2) - std::lgamma(kappa + 1);
    if (lead > 700 || x > 1400)
        throw std::range_error("bessel series overflow: argument above threshold 1400");
    double term = std::exp(lead);
    double sum = term;
    double q = x * x / 4;
    for (int k = 0; k < pp.max_terms; ++k) {
        term *= q / ((k + 1) * (kappa + k + 1));
        sum += (sign < 0 && (k % 2 == 0)) ? -term : term;
        if (term < pp.rel_tol * (std::abs(sum) + 1e-300) && k > 2) return sum;
    }
    throw precision_error("bessel series did not converge");
}

// series below, asymptotic above; at the switch the series has ~1e6 of
// cancellation (1e-10 absolute) and the asymptotic tail bottoms out near 1e-13
const double kBesselJAsymptoticSwitch = 18.0;

double bessel_j_asymptotic(double kappa, double x) {
    double mu = 4 * kappa * kappa;
    double p = 1, q = 0;
    double term = 1, prev = 1e300;
    for (int j = 1; j <= 24; ++j) {
        term *= (mu - (2.0 * j - 1) * (2.0 * j - 1)) / (j * 8.0 * x);
        if (std::abs(term) > prev) break;
        prev = std::abs(term);
        switch (j % 4) {
            case 1: q += term; break;
            case 2: p -= term; break;
            case 3: q -= term; break;
            case 0: p += term; break;
        }
        if (std::abs(term) < 1e-17) break;
    }
    double omega = x - kappa * M_PI / 2 - M_PI / 4;
    return std::sqrt(2 / (M_PI * x)) * (p * std::cos(omega) - q * std::sin(omega));
}

double bessel_k_asymptotic(double kappa, double x) {
    // K ~ sqrt(pi/2x) e^{-x} (1 + (mu-1)/(8x) + ...)
    double mu = 4 * kappa * kappa;
    double acc = 1, term = 1;
    for (int j = 1; j <= 6; ++j) {
        term *= (mu - (2.0 * j - 1) * (2.0 * j - 1)) / (j * 8.0 * x);
        acc += term;
    }
    return std::sqrt(M_PI / (2 * x)) * std::exp(-x) * acc;
}

double bessel_k_quadrature(double kappa, double x) {
    // K_kappa(x) = int_0^inf exp(-x cosh t) cosh(kappa t) dt
    if (x > 100) return bessel_k_asymptotic(kappa, x);
    double T = std::acosh(std::max((745.0 + kappa * 20) / x, 2.0)) + 1.0;
    double scale = std::sqrt(M_PI / (2 * x)) * std::exp(-x);
    auto f = [&](double t) { return std::exp(-x * std::cosh(t)) * std::cosh(kappa * t); };
    return adaptive_simpson(f, 0.0, T, std::max(1e-12 * scale, 5e-300));
}

} // namespace

double bessel_i(double kappa, double x) { return bessel(BesselKind::I, kappa, x); }
double bessel_j(double kappa, double x) { return bessel(BesselKind::J, kappa, x); }
double bessel_k(double kappa, double x) { return bessel(BesselKind::K, kappa, x); }

double bessel_i_scaled(double kappa, double x) {
    if (!(x > 0)) throw std::domain_error("bessel argument must be positive");
    if (x <= 60) return std::exp(-x) * bessel_i(kappa, x);
    // I_kappa(x) ~ e^x / sqrt(2 pi x) * sum_k (-1)^k a_k(kappa) / x^k
    double mu = 4 * kappa * kappa;
    double acc = 1, term = 1;
    for (int j = 1; j <= 12; ++j) {
        term *= -(mu - (2.0 * j - 1) * (2.0 * j - 1)) / (j * 8.0 * x);
        acc += term;
        if (std::abs(term) < 1e-17) break;
    }
    return acc / std::sqrt(2 * M_PI * x);
}

double bessel_k_scaled(double kappa, double x) {
    if (!(x > 0)) throw std::domain_error("bessel argument must be positive");
    if (x <= 60) return std::exp(x) * bessel_k(kappa, x);
    double mu = 4 * kappa * kappa;
    double acc = 1, term = 1;
    for (int j = 1; j <= 12; ++j) {
        term *= (mu - (2.0 * j - 1) * (2.0 * j - 1)) / (j * 8.0 * x);
        acc += term;
        if (std::abs(term) < 1e-17) break;
    }
    return std::sqrt(M_PI / (2 * x)) * acc;
}

double bessel(BesselKind kind, double kappa, double x, const PrecisionPolicy& pp) {
    if (!(x > 0)) throw std::domain_error("bessel argument must be positive");
    switch (kind) {
        case BesselKind::I:
            return bessel_ij_series(kappa, x, +1, pp);
        case BesselKind::J:
            if (x > kBesselJAsymptoticSwitch) return bessel_j_asymptotic(kappa, x);
            return bessel_ij_series(kappa, x, -1, pp);
        case BesselKind::K: {
            double half = kappa - 0.5;
            if (std::abs(half - std::round(half)) < 1e-14 && half >= -0.25) {
                int n = static_cast<int>(std::round(half));
                double k0 = std::sqrt(M_PI / (2 * x)) * std::exp(-x); // K_{1/2}
                if (n == 0) return k0;
                double k1 = k0 * (1 + 1.0 / x); // K_{3/2}
                double prev = k0, cur = k1;
                for (int j = 1; j < n; ++j) {
                    double next = prev + (2 * (j + 0.5) / x) * cur;
                    prev = cur;
                    cur = next;
                }
                return cur;
            }
            return bessel_k_quadrature(kappa, x);
        }
    }
    throw std::logic_error("unreachable bessel kind");
}

// ---------------------------------------------------------------------------
// quadrature
// ---------------------------------------------------------------------------

namespace {

double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double fm, double whole, double tol, int depth) {
    double m = (a + b) / 2;
    double lm = (a + m) / 2, rm = (m + b) / 2;
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15 * tol)
        return left + right + delta / 15;
    return adaptive_step(f, a, fa, m, fm, flm, left, tol / 2, depth - 1) +
           adaptive_step(f, m, fm, b, fb, frm, right, tol / 2, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    if (a == b) return 0;
    double m = (a + b) / 2;
    double fa = f(a), fb = f(b), fm = f(m);
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return adaptive_step(f, a, fa, b, fb, fm, whole, tol, max_depth);
}

double adaptive_simpson_real_line(const std::function<double(double)>& f, double tol) {
    auto g = [&](double t) {
        double c = std::cos(t);
        return f(std::tan(t)) / (c * c);
    };
    double eps = 1e-10;
    return adaptive_simpson(g, -M_PI / 2 + eps, M_PI / 2 - eps, tol);
}

// ---------------------------------------------------------------------------
// reference integrals
// ---------------------------------------------------------------------------

Cplx gamma_ratio_identity_sum(Cplx s, int n_max) {
    // the terms t(n) = Gamma(s+n)^2/(Gamma(2s+n) n! (s+n-1)) decay like 1/n^2,
    // so partial sums S_N carry a 1/N tail; the term recurrence is cheap, so
    // push the sum far past n_max and Richardson the last three doublings
    long total = std::max(512L, 512L * n_max);
    Cplx term = std::exp(2.0 * log_gamma(s) - log_gamma(2.0 * s)); // n = 0 ratio part
    Cplx sum = 0;
    double xs[3];
    Cplx ys[3];
    int idx = 0;
    for (long n = 0; n <= total; ++n) {
        sum += term / (s + Cplx(double(n - 1), 0));
        term *= (s + Cplx(double(n), 0)) * (s + Cplx(double(n), 0)) /
                ((2.0 * s + Cplx(double(n), 0)) * Cplx(double(n + 1), 0));
        if (n == total / 4 || n == total / 2 || n == total) {
            xs[idx] = 1.0 / n;
            ys[idx] = sum;
            ++idx;
        }
    }
    for (int k = 1; k < 3; ++k)
        for (int i = 2; i >= k; --i)
            ys[i] = (ys[i] * xs[i - k] - ys[i - 1] * xs[i]) / (xs[i - k] - xs[i]);
    return ys[2];
}

IntegralResult reference_integral_beta_line(double a, double s) {
    if (!(a > 0) || !(s > 0.5))
        throw std::domain_error("beta line integral requires a > 0, s > 1/2");
    // x = a sinh(u): integrand a^{1-2s} cosh(u)^{1-2s}, doubled over u >= 0
    double tol = 1e-10;
    double U = (std::log(4.0 / tol) + 1) / (2 * s - 1);
    auto f = [&](double u) { return std::pow(std::cosh(u), 1 - 2 * s); };
    double v = 2 * std::pow(a, 1 - 2 * s) * adaptive_simpson(f, 0, U, tol / 4);
    double tail = 2 * std::pow(a, 1 - 2 * s) * std::pow(2.0, 2 * s - 1) *
                  std::exp(-(2 * s - 1) * U) / (2 * s - 1);
    return {v, tol + tail};
}

IntegralResult reference_integral_core_green(double s) {
    if (!(s > 1)) throw std::domain_error("core integral requires Re(s) > 1");
    // (1 + |z-i|^2/(4y))^{-s} = (4y)^s (x^2 + (y+1)^2)^{-s};
    // inner x-integral via x = (y+1) sinh(v), outer over u = log(y)
    double tol = 1e-7;
    double V = (std::log(64.0 / tol) + 1) / (2 * s - 1);
    double U = (std::log(64.0 / tol) + 1) / (s - 1) + 2;
    auto outer = [&](double u) {
        double y = std::exp(u);
        auto f = [&](double v) { return std::pow(std::cosh(v), 1 - 2 * s); };
        double inner = 2 * std::pow(y + 1, 1 - 2 * s) * adaptive_simpson(f, 0, V, tol / 64);
        return std::pow(4 * y, s) * inner * std::exp(-u);
    };
    double v = adaptive_simpson(outer, -U, U, tol);
    return {v, 64 * tol};
}

} // namespace hmgreen

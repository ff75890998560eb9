#include "hmgreen/green.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace hmgreen {

void Truncation::validate() const {
    if (!(majorant_radius > 0) || b_max < 1 || n_max < 0 || !(tol > 0))
        throw std::invalid_argument("truncation parameters must be positive");
    if (s_sequence.size() < 3)
        throw std::invalid_argument("s_sequence needs at least 3 points");
    for (size_t i = 0; i < s_sequence.size(); ++i) {
        if (!(s_sequence[i] > 1))
            throw std::invalid_argument("s_sequence must stay above 1");
        if (i && !(s_sequence[i] < s_sequence[i - 1]))
            throw std::invalid_argument("s_sequence must decrease towards 1");
    }
}

namespace {

const double two_pi = 2 * M_PI;

// ---------------------------------------------------------------------------
// shared nu-data: lattice points of a d^{-1} with positive first embedding and
// bounded damping trace, with their exponential sums G^b
// ---------------------------------------------------------------------------

struct NuEntry {
    FieldElement nu;
    double n1, n2;         // embeddings, n1 > 0
    double abs_norm;       // |N(nu)|
    bool norm_positive;    // N(nu) > 0 selects I, else J
    std::vector<double> g; // G^b for b = 1..b_max
};

const std::vector<double>& gsum_column(const FractionalIdeal& a, long m,
                                       const FieldElement& nu, long b_max) {
    static std::map<std::tuple<FractionalIdeal, long, FieldElement>, std::vector<double>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(a, m, nu);
    auto& col = cache[key];
    while (static_cast<long>(col.size()) < b_max) {
        long b = static_cast<long>(col.size()) + 1;
        std::complex<double> v = gsum(a, m, nu, b);
        col.push_back(v.real());
    }
    return col;
}

std::vector<NuEntry> nu_table(const FractionalIdeal& a, long m, const EvalPoint& z,
                              double trace_bound, long b_max) {
    long D = a.disc();
    auto g = (a * FractionalIdeal::different_inv(D)).basis();
    double e[2][2] = {{g[0].embed_first(), g[1].embed_first()},
                      {g[0].embed_second(), g[1].embed_second()}};
    double det = e[0][0] * e[1][1] - e[0][1] * e[1][0];
    double inv[2][2] = {{e[1][1] / det, -e[0][1] / det}, {-e[1][0] / det, e[0][0] / det}};
    double M1 = trace_bound / z.y1(), M2 = trace_bound / z.y2();
    double c1max = 1, c2max = 1;
    for (double u : {-M1, M1})
        for (double v : {-M2, M2}) {
            c1max = std::max(c1max, std::abs(inv[0][0] * u + inv[0][1] * v));
            c2max = std::max(c2max, std::abs(inv[1][0] * u + inv[1][1] * v));
        }
    long C1 = static_cast<long>(c1max) + 1;
    long C2 = static_cast<long>(c2max) + 1;
    std::vector<NuEntry> out;
    for (long c1 = -C1; c1 <= C1; ++c1)
        for (long c2 = -C2; c2 <= C2; ++c2) {
            if (c1 == 0 && c2 == 0) continue;
            FieldElement nu = g[0] * Rat(c1) + g[1] * Rat(c2);
            if (nu.sign_first() <= 0) continue;
            double n1 = nu.embed_first(), n2 = nu.embed_second();
            if (n1 * z.y1() + std::abs(n2) * z.y2() > trace_bound) continue;
            NuEntry ent;
            ent.nu = nu;
            ent.n1 = n1;
            ent.n2 = n2;
            Rat norm = nu.norm();
            ent.abs_norm = std::abs(to_double(norm));
            ent.norm_positive = sign(norm) > 0;
            ent.g = gsum_column(a, m, nu, b_max);
            out.push_back(std::move(ent));
        }
    return out;
}

// the Bessel factors grow like exp(c_nu) with c_nu <= 2 pi rho tr(|nu| y),
// rho = sqrt(m/(N(a) D y1 y2)) < 1; the effective term decay is
// exp(-2 pi (1 - rho) tr(|nu| y)), so the trace cutoff scales accordingly
double trace_bound_for(const Truncation& t, const FractionalIdeal& a, long m,
                       const EvalPoint& z) {
    double target = std::max(t.tol * 1e-3, 1e-14);
    double T = (std::log(1.0 / target) + 4.0) / two_pi;
    double rho = std::sqrt(m / (to_double(a.norm()) * a.disc() * z.y1() * z.y2()));
    rho = std::min(rho, 0.75);
    return std::max(t.nu_trace_max, T / (1 - rho));
}

// lambda-orbit iteration helper: applies fn outward from the representative in
// both orbit directions until it reports two negligible contributions in a row
template <typename Fn>
void for_lambda_orbit(const FieldElement& rep, const FieldElement& e2, int max_window, Fn&& fn) {
    FieldElement e2inv = FieldElement::one(rep.disc()) / e2;
    for (int dir = 0; dir < 2; ++dir) {
        FieldElement lam = dir == 0 ? rep : rep * e2inv;
        int quiet = 0;
        for (int k = 0; k < max_window && quiet < 2; ++k) {
            quiet = fn(lam) ? 0 : quiet + 1;
            lam = dir == 0 ? lam * e2 : lam * e2inv;
        }
    }
}

} // namespace

// ---------------------------------------------------------------------------
// direct lattice sum
// ---------------------------------------------------------------------------

GreenValue phi_direct(const FractionalIdeal& a, long m, Cplx s, const EvalPoint& z,
                      const Truncation& t) {
    t.validate();
    if (!(s.real() > 1)) throw std::domain_error("direct sum requires Re(s) > 1");
    double d0 = to_double(Rat(m) / (a.norm() * Rat(a.disc())));
    auto vectors = enumerate_dual(a, m, z, t.majorant_radius);
    Cplx acc = 0;
    long shell_count = 0;
    for (const auto& A : vectors) {
        Majorant mj = h_g_majorant(A, z);
        double x = mj.qz / d0; // = 1 + 2 g(A, z)
        if (x - 1 < 2e-9)
            throw singularity_error("evaluation point lies on or near the divisor of " + A.str());
        acc += legendre_q(s, x);
        if (mj.qz > t.majorant_radius / 2) ++shell_count;
    }
    // tail estimate: point density from the outer half-shell times the decay
    // of Q_{s-1}(u/d0) ~ sqrt(pi) Gamma(s)/Gamma(s+1/2) (2u/d0)^{-s}
    double sr = s.real();
    double density = shell_count / (t.majorant_radius / 2);
    double qcoef = std::sqrt(M_PI) *
                   std::exp(std::lgamma(sr) - std::lgamma(sr + 0.5) - sr * std::log(2 / d0));
    double tail = density * qcoef * std::pow(t.majorant_radius, 1 - sr) / (sr - 1);
    GreenValue out;
    out.value = acc.real();
    out.tail_bound = std::abs(tail);
    out.parts["lattice_points"] = static_cast<double>(vectors.size());
    out.parts["imag"] = acc.imag();
    return out;
}

// ---------------------------------------------------------------------------
// regularized Fourier expansion at s = 1 (route A)
// ---------------------------------------------------------------------------

namespace {

void check_height(const FractionalIdeal& a, long m, const EvalPoint& z) {
    double lim = double(m) / (a.disc() * to_double(a.norm()));
    if (!(z.y1() > lim) || !(z.y2() > lim))
        throw std::domain_error("Fourier expansion requires Im(z) above m/(D N(a)) componentwise");
}

} // namespace

GreenValue phi_fourier(const FractionalIdeal& a, long m, const EvalPoint& z,
                       const Truncation& t) {
    t.validate();
    check_height(a, m, z);
    long D = a.disc();
    RegularizationConstants rc = regularization_constants(a, m);
    if (!rc.L.has_value())
        throw std::invalid_argument(
            "sigma(a,m,-1) = 0: the regularized expansion needs explicit constants");
    double q = to_double(rc.q);

    GreenValue out;
    out.parts["constant_L"] = *rc.L;
    double logblockscale = -q * std::log(16 * M_PI * M_PI * z.y1() * z.y2());
    out.parts["q_log"] = logblockscale;

    ProductTruncation pt;
    pt.factor_cutoff = std::max(t.tol * 1e-6, 1e-18);
    LogNormBlocks lb = log_norm_block(a, m, z, pt);
    out.parts["borcherds_log"] = lb.combined();

    double T = trace_bound_for(t, a, m, z);
    double f3 = 0, f4 = 0, btail = 0;
    for (const auto& ent : nu_table(a, m, z, T, t.b_max)) {
        double pref = (two_pi / D) * std::sqrt(m * to_double(a.norm()) / ent.abs_norm);
        double cnu = two_pi * 2 *
                     std::sqrt(m * ent.abs_norm / (to_double(a.norm()) * D)); // 4 pi sqrt(.)
        double bsum = 0, last = 0;
        for (long b = 1; b <= t.b_max; ++b) {
            double arg = cnu / b;
            double bes = ent.norm_positive ? bessel_i(1.0, arg) : bessel_j(1.0, arg);
            last = ent.g[b - 1] / b * bes;
            bsum += last;
        }
        double damp = std::exp(-two_pi * (ent.n1 * z.y1() + std::abs(ent.n2) * z.y2()));
        double osc = 2 * std::cos(two_pi * (ent.n1 * z.x1() + ent.n2 * z.x2()));
        double term = pref * bsum * damp * osc;
        if (ent.norm_positive) f3 += term; else f4 += term;
        // crude continuation bound: |G^b| <= b^2 D with I_1(c/b) ~ c/(2b),
        // accumulated over one further octave of b
        btail += pref * damp * 2 * (D * cnu / 2) * std::log(2.0);
    }
    out.parts["bessel_I"] = f3;
    out.parts["bessel_J"] = f4;
    out.parts["b_tail_crude_octave"] = btail;
    out.value = *rc.L + logblockscale + lb.combined() + f3 + f4;
    out.tail_bound = t.tol; // nu/lambda truncation targets; b tail reported above
    return out;
}

// ---------------------------------------------------------------------------
// unregularized Fourier evaluation at s > 1 (route B)
// ---------------------------------------------------------------------------

double phi_s_fourier(const FractionalIdeal& a, long m, double s, const EvalPoint& z,
                     const Truncation& t) {
    t.validate();
    if (!(s > 1)) throw std::domain_error("route B needs s > 1");
    check_height(a, m, z);
    long D = a.disc();
    double Na = to_double(a.norm());
    double y1 = z.y1(), y2 = z.y2();
    double cutoff = std::max(t.tol * 1e-6, 1e-17);

    // b = 0 block per the lambda expansion
    const FieldContext& ctx = FieldContext::get(D);
    FieldElement e2 = ctx.eps0 * ctx.eps0;
    HZData hz = lambda_set(a, m);
    double phi0 = 0;
    double root_prod = std::sqrt(m * Na * y1 * y2 / D); // sqrt(|lam lam'| y1 y2)
    for (const auto& rep : hz.orbit_reps) {
        for_lambda_orbit(rep, e2, 400, [&](const FieldElement& lam) {
            double l1 = lam.embed_first() * y1;
            double l2 = -lam.embed_second() * y2; // |lam'| y2
            double alpha = std::max(l1, l2), beta = std::min(l1, l2);
            double c0 = (4 * M_PI / (2 * s - 1)) * std::pow(alpha, 1 - s) * std::pow(beta, s);
            double tx = lam.embed_first() * z.x1() + lam.embed_second() * z.x2();
            double nsum = 0;
            double gap = two_pi * (alpha - beta);
            if (gap < 1e-12)
                throw std::domain_error("evaluation point lies on a wall of the lambda set");
            int n_lim = static_cast<int>(std::log(1 / cutoff) / gap) + 2;
            for (int n = 1; n <= n_lim; ++n) {
                double prod = bessel_i_scaled(s - 0.5, two_pi * n * beta) *
                              bessel_k_scaled(s - 0.5, two_pi * n * alpha) *
                              std::exp(-n * gap);
                double term = 4 * M_PI * root_prod * prod * 2 * std::cos(two_pi * n * tx);
                nsum += term;
                if (std::abs(prod) * 16 * root_prod < cutoff) break;
            }
            phi0 += c0 + nsum;
            return std::abs(c0) + std::abs(nsum) >= cutoff;
        });
    }

    // diverging constant block: the b-series of representation numbers equals
    // |m|^{-s} zeta(2s-1)/L(2s, chi) sigma(a, m, 1-2s), so m^s cancels
    double zeta = riemann_zeta_em(2 * s - 1);
    double lval = l_value(D, 2 * s);
    double sig = divisor_sigma_value(a, m, 1 - 2 * s);
    double pc = M_PI *
                std::exp(2 * std::lgamma(s - 0.5) - std::lgamma(2 * s)) / std::sqrt(double(D)) *
                std::pow(4.0 / D, s) * std::pow(Na * y1 * y2, 1 - s) * zeta * sig / lval;

    // nu != 0 blocks with s-dependent Bessel orders
    double T = trace_bound_for(t, a, m, z);
    double pb = 0;
    for (const auto& ent : nu_table(a, m, z, T, t.b_max)) {
        double osc = 2 * std::cos(two_pi * (ent.n1 * z.x1() + ent.n2 * z.x2()));
        double x1 = two_pi * ent.n1 * y1, x2 = two_pi * std::abs(ent.n2) * y2;
        double kk = bessel_k_scaled(s - 0.5, x1) * bessel_k_scaled(s - 0.5, x2) *
                    std::exp(-x1 - x2);
        double bsum = 0;
        for (long b = 1; b <= t.b_max; ++b) {
            double B = double(m) / (Na * D * b * b);
            double arg = 4 * M_PI * std::sqrt(B * ent.abs_norm);
            double bes = ent.norm_positive ? bessel_i(2 * s - 1, arg) : bessel_j(2 * s - 1, arg);
            double coef = 4 * M_PI * Na * std::sqrt(B * y1 * y2 / D);
            bsum += ent.g[b - 1] * coef * bes;
        }
        pb += 2 * bsum * kk * osc;
    }
    return phi0 + pc + pb;
}

GreenValue phi_regularized_direct(const FractionalIdeal& a, long m, const EvalPoint& z,
                                  const Truncation& t) {
    t.validate();
    RegularizationConstants rc = regularization_constants(a, m);
    double q = to_double(rc.q);
    std::vector<double> xs;
    std::vector<double> ys;
    for (double s : t.s_sequence) {
        xs.push_back(s - 1);
        ys.push_back(phi_s_fourier(a, m, s, z, t) - q / (s - 1));
    }
    // Neville to s = 1, full set and the set without the farthest node
    auto extrapolate = [](std::vector<double> x, std::vector<double> y) {
        size_t n = y.size();
        for (size_t k = 1; k < n; ++k)
            for (size_t i = n - 1; i >= k; --i) {
                y[i] = (y[i] * x[i - k] - y[i - 1] * x[i]) / (x[i - k] - x[i]);
                if (i == k) break;
            }
        return y[n - 1];
    };
    double full = extrapolate(xs, ys);
    double reduced = extrapolate(std::vector<double>(xs.begin() + 1, xs.end()),
                                 std::vector<double>(ys.begin() + 1, ys.end()));
    double residual = std::abs(full - reduced);
    if (residual > std::max(t.tol, 1e-12) * std::max(1.0, std::abs(full)) * 10)
        throw precision_error("Laurent extrapolation residual above tolerance");
    GreenValue out;
    out.value = full;
    out.tail_bound = residual;
    out.parts["extrapolation_residual"] = residual;
    out.parts["pole_coefficient"] = q;
    return out;
}

// ---------------------------------------------------------------------------
// smooth decomposition
// ---------------------------------------------------------------------------

double smooth_kernel(const FractionalIdeal& a, long m, double s, const EvalPoint& z,
                     const Truncation& t) {
    t.validate();
    double d0 = to_double(Rat(m) / (a.norm() * Rat(a.disc())));
    double acc = 0;
    for (const auto& A : enumerate_dual(a, m, z, t.majorant_radius)) {
        double x = h_g_majorant(A, z).qz / d0; // 1 + 2g
        double one_plus_g = (x + 1) / 2;
        acc += std::pow(one_plus_g, -s);
    }
    return acc;
}

std::vector<double> smooth_decomposition(const FractionalIdeal& a, long m, double s,
                                         const EvalPoint& z, int N, const Truncation& t) {
    t.validate();
    double d0 = to_double(Rat(m) / (a.norm() * Rat(a.disc())));
    std::vector<double> kernels(N + 1, 0.0);
    auto vectors = enumerate_dual(a, m, z, t.majorant_radius);
    for (const auto& A : vectors) {
        double one_plus_g = (h_g_majorant(A, z).qz / d0 + 1) / 2;
        double p = std::pow(one_plus_g, -s);
        for (int n = 0; n <= N; ++n) {
            kernels[n] += p;
            p /= one_plus_g;
        }
    }
    std::vector<double> out(N + 1);
    for (int n = 0; n <= N; ++n) {
        double coef = std::exp(2 * std::lgamma(s + n) - std::lgamma(2 * s + n) -
                               std::lgamma(n + 1.0)) / 2;
        out[n] = coef * kernels[n];
    }
    return out;
}

// ---------------------------------------------------------------------------
// kernel Fourier coefficients
// ---------------------------------------------------------------------------

Cplx fourier_coeff_b(Cplx s, double B, const FractionalIdeal& frak_b,
                     const FieldElement& nu, std::pair<double, double> y) {
    if (!(B > 0)) throw std::domain_error("B must be positive");
    if (!(y.first * y.second > B))
        throw std::domain_error("coefficient formula requires y1 y2 > B");
    long D = frak_b.disc();
    double Nb = to_double(frak_b.norm());
    if (nu.is_zero()) {
        Cplx pre = M_PI * std::exp(2.0 * log_gamma(s - 0.5) - log_gamma(2.0 * s)) /
                   (2 * std::sqrt(double(D)) * Nb);
        return pre * std::pow(Cplx(4 * B, 0), s) *
               std::pow(Cplx(y.first * y.second, 0), Cplx(1, 0) - s);
    }
    if (std::abs(s.imag()) > 1e-12)
        throw unsupported_error("nonzero-frequency coefficients use real Bessel orders only");
    double sr = s.real();
    double n1 = std::abs(nu.embed_first()), n2 = std::abs(nu.embed_second());
    double abs_norm = std::abs(to_double(nu.norm()));
    double arg = 4 * M_PI * std::sqrt(B * abs_norm);
    double bes = sign(nu.norm()) > 0 ? bessel_i(2 * sr - 1, arg) : bessel_j(2 * sr - 1, arg);
    double val = 4 * M_PI / Nb * std::sqrt(B * y.first * y.second / D) * bes *
                 bessel_k(sr - 0.5, two_pi * n1 * y.first) *
                 bessel_k(sr - 0.5, two_pi * n2 * y.second);
    return val;
}

double fourier_coeff_b_smooth0(double s, double B, const FractionalIdeal& frak_b,
                               std::pair<double, double> y) {
    if (!(B > 0)) throw std::domain_error("B must be positive");
    long D = frak_b.disc();
    double vol = to_double(frak_b.norm()) * std::sqrt(double(D));
    double bfac = beta_fn(Cplx(0.5, 0), Cplx(s - 0.5, 0)).real();
    double hyp = hyp2f1(Cplx(2 * s - 1, 0), Cplx(s - 0.5, 0), Cplx(s, 0),
                        -B / (y.first * y.second))
                     .real();
    return std::pow(4 * B, s) * std::pow(y.first * y.second, 1 - s) * bfac * bfac / vol * hyp;
}

double psi0_fourier(const FractionalIdeal& a, long m, const EvalPoint& z,
                    const Truncation& t) {
    t.validate();
    long D = a.disc();
    const FieldContext& ctx = FieldContext::get(D);
    FieldElement e2 = ctx.eps0 * ctx.eps0;
    double pref = 8 * M_PI * z.y1() * z.y2() * m * to_double(a.norm()) / D;
    double cutoff = std::max(t.tol * 1e-6, 1e-17);
    double acc = 0;
    for (const auto& rep : lambda_set(a, m).orbit_reps) {
        for_lambda_orbit(rep, e2, 400, [&](const FieldElement& lam) {
            double gamma = lam.embed_first() * z.y1() - lam.embed_second() * z.y2();
            double tx = lam.embed_first() * z.x1() + lam.embed_second() * z.x2();
            double sum = 1.0 / gamma; // n = 0
            double dampstep = std::exp(-two_pi * gamma);
            double damp = dampstep;
            for (int n = 1; damp > cutoff * gamma && n < 100000; ++n) {
                sum += 2 * std::cos(two_pi * n * tx) * damp / gamma;
                damp *= dampstep;
            }
            acc += sum;
            return std::abs(pref * sum) >= cutoff;
        });
    }
    return pref * acc;
}

// ---------------------------------------------------------------------------
// finite-difference Laplacian
// ---------------------------------------------------------------------------

double laplace_fd(const std::function<double(const EvalPoint&)>& f, const EvalPoint& z,
                  int j, double h) {
    if (j != 1 && j != 2) throw std::invalid_argument("component index must be 1 or 2");
    if (!(h > 0)) throw std::invalid_argument("step must be positive");
    double yj = j == 1 ? z.y1() : z.y2();
    if (yj - h <= 0) throw std::invalid_argument("stencil leaves the upper half plane");
    auto shift = [&](double dx, double dy) {
        if (j == 1) return EvalPoint(z.z1 + Cplx(dx, dy), z.z2);
        return EvalPoint(z.z1, z.z2 + Cplx(dx, dy));
    };
    auto second = [&](double step) {
        double fc = f(z);
        double dxx = (f(shift(step, 0)) + f(shift(-step, 0)) - 2 * fc) / (step * step);
        double dyy = (f(shift(0, step)) + f(shift(0, -step)) - 2 * fc) / (step * step);
        return yj * yj * (dxx + dyy);
    };
    double d1 = second(h), d2 = second(h / 2);
    return (4 * d2 - d1) / 3;
}

// ---------------------------------------------------------------------------
// standalone log-series identity
// ---------------------------------------------------------------------------

double log_series_lhs(const FractionalIdeal& a, long m, const EvalPoint& z,
                      const Truncation& t) {
    t.validate();
    long D = a.disc();
    const FieldContext& ctx = FieldContext::get(D);
    FieldElement e2 = ctx.eps0 * ctx.eps0;
    double cutoff = std::max(t.tol * 1e-6, 1e-17);
    double acc = 0;
    for (const auto& rep : lambda_set(a, m).orbit_reps) {
        for_lambda_orbit(rep, e2, 400, [&](const FieldElement& lam) {
            double try1 = lam.embed_first() * z.y1() + lam.embed_second() * z.y2(); // tr(lam y)
            double gam = lam.embed_first() * z.y1() - lam.embed_second() * z.y2();
            double tx = lam.embed_first() * z.x1() + lam.embed_second() * z.x2();
            double qa = std::exp(-two_pi * std::abs(try1));
            double qb = std::exp(-two_pi * gam);
            double pa = qa, pb = qb, sum = 0;
            for (int n = 1; (pa > cutoff || pb > cutoff) && n < 100000; ++n) {
                sum += (pa - pb) / n * 2 * std::cos(two_pi * n * tx);
                pa *= qa;
                pb *= qb;
            }
            acc += sum;
            return std::abs(sum) >= cutoff;
        });
    }
    return acc;
}

double log_series_rhs(const FractionalIdeal& a, long m, const EvalPoint& z,
                      const Truncation& t) {
    t.validate();
    long D = a.disc();
    const FieldContext& ctx = FieldContext::get(D);
    FieldElement e2 = ctx.eps0 * ctx.eps0;
    double cutoff = std::max(t.tol * 1e-6, 1e-17);
    double beta_sum = 0;
    for (const auto& rep : lambda_set(a, m).orbit_reps) {
        for_lambda_orbit(rep, e2, 400, [&](const FieldElement& lam) {
            double l1 = lam.embed_first() * z.y1();
            double l2 = -lam.embed_second() * z.y2();
            double b = std::min(l1, l2);
            beta_sum += b;
            return b >= cutoff;
        });
    }
    ProductTruncation pt;
    pt.factor_cutoff = cutoff;
    LogNormBlocks lb = log_norm_block(a, m, z, pt);
    return -4 * M_PI * beta_sum + lb.combined();
}

} // namespace hmgreen

#include "hmgreen/verify.hpp"

#include "hmgreen/json_io.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <numeric>

namespace hmgreen {

void RunConfig::validate() const {
    if (disc <= 0 || !is_fundamental_discriminant(disc))
        throw std::invalid_argument("disc must be a fundamental discriminant");
    if (m_max < 1 || b_max < 1) throw std::invalid_argument("mmax/bmax must be >= 1");
    if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
    trunc.validate();
}

bool SuiteReport::pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

namespace {

Check make_check(std::string name, double delta, double tol, std::string detail = "") {
    Check c;
    c.name = std::move(name);
    c.delta = delta;
    c.tol = tol;
    c.pass = delta <= tol;
    c.detail = std::move(detail);
    return c;
}

FractionalIdeal ok_ideal(long D) { return FractionalIdeal::ring_of_integers(D); }

} // namespace

// ---------------------------------------------------------------------------
// exact arithmetic criteria
// ---------------------------------------------------------------------------

std::vector<Check> check_sigma_functional_equation(long D, long m_max) {
    std::vector<Check> out;
    int violations = 0;
    long checked = 0;
    for (const auto& a : {ok_ideal(D), FractionalIdeal::different_inv(D)}) {
        for (long m = 1; m <= m_max; ++m) {
            for (long s : {1L, 3L}) {
                SigmaValue plus = divisor_sigma(a, m, Rat(s));
                SigmaValue minus = divisor_sigma(a, m, Rat(-s));
                if (!plus.exact_equal(minus)) ++violations;
                ++checked;
            }
        }
    }
    out.push_back(make_check("sigma_functional_equation_D" + std::to_string(D), violations,
                             0, std::to_string(checked) + " exact comparisons"));
    return out;
}

std::vector<Check> check_qexp_proportionality(long D, long m_max) {
    std::vector<Check> out;
    QExpansion qe = qexp(ok_ideal(D), m_max);
    int violations = 0;
    for (long m = 1; m <= m_max; ++m) {
        if (qe.c[m - 1] != qe.proportionality * qe.eisenstein[m - 1]) ++violations;
        if (divisor_sigma(ok_ideal(D), m, Rat(-1)).is_zero() && qe.c[m - 1] != 0) ++violations;
    }
    out.push_back(make_check("qexp_proportionality_D" + std::to_string(D), violations, 0,
                             "c_m = (-L(-1)/24) eis_m, m <= " + std::to_string(m_max)));
    return out;
}

std::vector<Check> check_dirichlet_identity(long D, long m_max, long b_max) {
    std::vector<Check> out;
    long violations = 0, checked = 0;
    for (long m = 1; m <= m_max; ++m) {
        for (const auto& c : dirichlet_identity_check(ok_ideal(D), m, b_max)) {
            if (c.lhs != c.rhs) ++violations;
            ++checked;
        }
    }
    out.push_back(make_check("dirichlet_identity_D" + std::to_string(D), violations, 0,
                             std::to_string(checked) + " coefficients, exact integers"));
    return out;
}

std::vector<Check> check_integral_chain(long D, long m_max) {
    std::vector<Check> out;
    const FieldContext& ctx = FieldContext::get(D);
    int violations = 0;
    for (long m = 1; m <= m_max; ++m) {
        IntegralIdentities ii = integral_identities(ok_ideal(D), m, {Rat(2)});
        Rat q = regularization_constants(ok_ideal(D), m).q;
        if (!ii.chain_consistent) ++violations;
        if (ii.integral_phi != -q * ctx.zetaK_minus1) ++violations;
        if (ii.phi0_integral + ii.phi_tail_integral != ii.integral_phi) ++violations;
        if (ii.phi_s_values[0].second != ii.vol) ++violations; // 2 vol/(2*1) = vol
    }
    out.push_back(make_check("integral_chain_D" + std::to_string(D), violations, 0,
                             "exact chain for m <= " + std::to_string(m_max)));
    if (D == 5) {
        IntegralIdentities ii = integral_identities(ok_ideal(5), 1, {Rat(2)});
        bool pinned = ii.vol == Rat(1, 12) && ii.integral_phi == Rat(-1, 6) &&
                      regularization_constants(ok_ideal(5), 1).q == Rat(5) &&
                      ii.phi_s_values[0].second == Rat(1, 12);
        out.push_back(make_check("integral_chain_pinned_D5_m1", pinned ? 0 : 1, 0,
                                 "vol=1/12, q=5, integral=-1/6, s=2 value 1/12"));
    }
    return out;
}

// ---------------------------------------------------------------------------
// evaluation grids
// ---------------------------------------------------------------------------

std::vector<EvalPoint> acceptance_grid(const FractionalIdeal& a, long m) {
    long D = a.disc();
    const FieldContext& ctx = FieldContext::get(D);
    double rstar = (ctx.eps0 * ctx.eps0).embed_first();
    double hmin = 4.0 * m / (D * to_double(a.norm()));

    // wall-repelling x: tr(lamA x) = tr(lamB x) = 1/2 for the two walls
    // bracketing the corridor, when a lambda orbit exists
    double x1 = 0.5, x2 = 0.5;
    HZData hz = lambda_set(a, m);
    if (!hz.empty()) {
        WeylData wd = reduced_and_weyl(a, m, {rstar * (1 + 1e-6), 1.0});
        FieldElement lamA = wd.reduced[0];
        FieldElement lamB = lamA / (ctx.eps0 * ctx.eps0);
        double a11 = lamA.embed_first(), a12 = lamA.embed_second();
        double a21 = lamB.embed_first(), a22 = lamB.embed_second();
        double det = a11 * a22 - a12 * a21;
        x1 = (0.5 * a22 - 0.5 * a12) / det;
        x2 = (0.5 * a11 - 0.5 * a21) / det;
    }
    std::vector<EvalPoint> grid;
    for (double hf : {1.05, 1.3, 1.6}) {
        for (double rf : {0.8, 1.0, 1.25}) {
            double r = rstar * rf, h = hmin * hf;
            double y2 = std::sqrt(h / r), y1 = r * y2;
            grid.emplace_back(Cplx(x1, y1), Cplx(x2, y2));
        }
    }
    return grid;
}

std::vector<Check> check_two_route_green(long D, long m, int jobs, const Truncation& t) {
    FractionalIdeal a = ok_ideal(D);
    auto grid = acceptance_grid(a, m);
    std::vector<double> deltas(grid.size(), 0.0);
    auto work = [&](size_t i) {
        GreenValue fa = phi_fourier(a, m, grid[i], t);
        GreenValue fb = phi_regularized_direct(a, m, grid[i], t);
        return std::abs(fa.value - fb.value);
    };
    if (jobs > 1) {
        std::vector<std::future<double>> futs;
        for (size_t i = 0; i < grid.size(); ++i)
            futs.push_back(std::async(std::launch::async, work, i));
        for (size_t i = 0; i < grid.size(); ++i) deltas[i] = futs[i].get();
    } else {
        for (size_t i = 0; i < grid.size(); ++i) deltas[i] = work(i);
    }
    double worst = *std::max_element(deltas.begin(), deltas.end());
    return {make_check("two_route_green_D" + std::to_string(D) + "_m" + std::to_string(m),
                       worst, 1e-5, "max |fourier - regularized| over 3x3 grid")};
}

std::vector<Check> check_smooth_decomposition(long D, long m, const Truncation& t) {
    FractionalIdeal a = ok_ideal(D);
    auto grid = acceptance_grid(a, m);
    Truncation ts = t;
    ts.majorant_radius = std::max(t.majorant_radius, 40.0 * m);
    double worst = 0;
    for (const auto& z : grid) {
        auto phis = smooth_decomposition(a, m, 2.0, z, 30, ts);
        double partial = std::accumulate(phis.begin(), phis.end(), 0.0);
        GreenValue direct = phi_direct(a, m, Cplx(2, 0), z, ts);
        worst = std::max(worst, std::abs(partial - direct.value));
        // positivity of the summands at real s > 1
        for (double v : phis)
            if (v < 0) worst = std::max(worst, 1.0);
    }
    std::vector<Check> out;
    out.push_back(make_check(
        "smooth_partial_sum_D" + std::to_string(D) + "_m" + std::to_string(m), worst, 1e-8,
        "sum_{n<=30} Phi_n vs direct sum at s=2 over the grid"));
    // finiteness on a divisor point: identity vector at z = (i, i)
    if (D == 5 && m == 1) {
        Truncation tf = ts;
        tf.majorant_radius = 30;
        double val = smooth_kernel(a, 1, 2.0, EvalPoint({0, 1}, {0, 1}), tf);
        out.push_back(make_check("smooth_kernel_finite_on_divisor",
                                 std::isfinite(val) ? 0 : 1, 0,
                                 "Psi(a,1,2,(i,i)) = " + std::to_string(val)));
    }
    return out;
}

std::vector<Check> check_laplace_equation(long D, long m, const Truncation& t) {
    FractionalIdeal a = ok_ideal(D);
    auto grid = acceptance_grid(a, m);
    double q = to_double(regularization_constants(a, m).q);
    double worst = 0;
    for (size_t i : {0UL, 4UL, 8UL}) { // three grid points, diagonal of the 3x3
        const EvalPoint& z = grid[i];
        double h = std::min(0.02, z.y2() / 4);
        for (int j : {1, 2}) {
            double lap = laplace_fd(
                [&](const EvalPoint& p) { return phi_fourier(a, m, p, t).value; }, z, j, h);
            worst = std::max(worst, std::abs(lap - q));
        }
    }
    return {make_check("laplace_equation_D" + std::to_string(D) + "_m" + std::to_string(m),
                       worst, 1e-4, "Delta_j of the regularized value vs q(a,m)")};
}

std::vector<Check> check_eigenfunction_property() {
    // single lattice terms Q_{s-1}(1 + 2g(A, z)) at s = 1.5
    double s = 1.5;
    struct Sample {
        LatticeVector A;
        EvalPoint z;
    };
    FieldElement inv5 = FieldElement::one(5) / FieldElement::sqrt_disc(5);
    std::vector<Sample> samples = {
        {{Rat(0), Rat(0), inv5}, EvalPoint({0.2, 1.1}, {0.1, 0.7})},
        {{Rat(1), Rat(1), inv5}, EvalPoint({-0.4, 0.8}, {0.3, 1.3})},
        {{Rat(2), Rat(1), FieldElement::omega(5) / FieldElement::sqrt_disc(5)},
         EvalPoint({0.05, 1.6}, {-0.2, 0.9})},
    };
    double worst = 0;
    for (const auto& smp : samples) {
        double d0 = to_double(smp.A.det());
        if (d0 <= 0) continue;
        auto f = [&](const EvalPoint& p) {
            return legendre_q(s, h_g_majorant(smp.A, p).qz / d0);
        };
        for (int j : {1, 2}) {
            double lap = laplace_fd(f, smp.z, j, 0.01);
            double expect = s * (s - 1) * f(smp.z);
            worst = std::max(worst, std::abs(lap - expect) / std::abs(expect));
        }
    }
    return {make_check("single_term_eigenfunction", worst, 1e-4,
                       "Delta_j Q_{s-1}(1+2g) vs s(s-1) Q_{s-1}(1+2g), s=1.5")};
}

// ---------------------------------------------------------------------------
// quadrature-backed identities
// ---------------------------------------------------------------------------

namespace {

// honest iterated quadrature of the smooth-kernel constant coefficient:
// (1/vol) int_{R^2} (1 + |z1 z2 + B|^2/(4 y1 y2 B))^{-s} dx1 dx2
double smooth0_quadrature(double s, double B, const FractionalIdeal& frak_b,
                          std::pair<double, double> y) {
    double vol = to_double(frak_b.norm()) * std::sqrt(double(frak_b.disc()));
    double y1 = y.first, y2 = y.second;
    double tol = 1e-9;
    auto outer = [&](double x2) {
        double z2sq = x2 * x2 + y2 * y2;
        double aa = y1 + B * y2 / z2sq;
        // inner over x1 with x1 + B x2 / |z2|^2 = aa sinh(v)
        double V = (std::log(16.0 / tol) + 1) / (2 * s - 1);
        auto f = [&](double v) { return std::pow(std::cosh(v), 1 - 2 * s); };
        double inner = 2 * std::pow(aa, 1 - 2 * s) * adaptive_simpson(f, 0, V, tol / 8);
        return std::pow(4 * y1 * y2 * B, s) * std::pow(z2sq, -s) * inner;
    };
    // outer x2 integral, symmetrized via x2 = y2 sinh(u) style decay
    double U = 60.0;
    auto g = [&](double u) {
        double x2 = y2 * std::sinh(u);
        return outer(x2) * y2 * std::cosh(u);
    };
    return adaptive_simpson(g, -U / (2 * s), U / (2 * s), tol) / vol;
}

// nonzero-frequency coefficient of the s = 1 smooth kernel by quadrature,
// after the inner x1 integral is carried out in closed form
double smooth_b1_quadrature(double B, const FractionalIdeal& frak_b, const FieldElement& nu,
                            std::pair<double, double> y) {
    double vol = to_double(frak_b.norm()) * std::sqrt(double(frak_b.disc()));
    double y1 = y.first, y2 = y.second;
    double n1 = nu.embed_first(), n2 = nu.embed_second();
    auto integrand = [&](double x2) {
        double z2sq = x2 * x2 + y2 * y2;
        double aa = y1 + B * y2 / z2sq;
        double damp = M_PI * std::exp(-2 * M_PI * std::abs(n1) * aa) / aa;
        double phase = 2 * M_PI * (n1 * B * x2 / z2sq - n2 * x2);
        return damp * std::cos(phase) / z2sq;
    };
    double X = 400 * y2;
    double val = adaptive_simpson(integrand, -X, X, 1e-12);
    return 4 * y1 * y2 * B / vol * val;
}

} // namespace

std::vector<Check> check_quadrature_identities() {
    std::vector<Check> out;
    for (double s : {1.5, 2.0}) {
        IntegralResult r = reference_integral_core_green(s);
        out.push_back(make_check("core_green_integral_s" + std::to_string(s).substr(0, 4),
                                 std::abs(r.value - 4 * M_PI / (s - 1)), 1e-3,
                                 "quadrature vs 4 pi/(s-1)"));
    }
    // smooth-kernel constant coefficient: closed form vs 2D quadrature
    {
        FractionalIdeal OK5 = ok_ideal(5);
        struct P { double s, B, y1, y2; };
        for (P p : {P{1.5, 0.2, 1.0, 2.0}, P{2.0, 0.2, 2.0, 2.0}}) {
            double closed = fourier_coeff_b_smooth0(p.s, p.B, OK5, {p.y1, p.y2});
            double quad = smooth0_quadrature(p.s, p.B, OK5, {p.y1, p.y2});
            out.push_back(make_check("smooth_constant_coeff_quadrature_s" +
                                         std::to_string(p.s).substr(0, 4),
                                     std::abs(closed - quad), 1e-6, ""));
        }
    }
    // coefficient bound at s = 1 on sampled frequencies
    {
        FractionalIdeal OK5 = ok_ideal(5);
        FractionalIdeal dinv = FractionalIdeal::different_inv(5);
        auto g = dinv.basis();
        double worst = -1;
        int idx = 0;
        for (int i = -1; i <= 1; ++i)
            for (int j = -1; j <= 1; ++j) {
                if (i == 0 && j == 0) continue;
                FieldElement nu = g[0] * Rat(i) + g[1] * Rat(j);
                for (double y1 : {0.9, 1.4}) {
                    if (++idx > 10) break;
                    double y2 = 1.1;
                    double B = 0.2;
                    double val = smooth_b1_quadrature(B, OK5, nu, {y1, y2});
                    double vol = to_double(OK5.norm()) * std::sqrt(5.0);
                    double alpha = std::max(std::abs(nu.embed_first()) * y1,
                                            std::abs(nu.embed_second()) * y2);
                    double bound = 4 * B * M_PI * M_PI / vol * std::exp(-2 * M_PI * alpha);
                    worst = std::max(worst, std::abs(val) - bound);
                }
            }
        out.push_back(make_check("smooth_coeff_upper_bound", std::max(worst, 0.0), 1e-12,
                                 "10 sampled (nu, y): |b~_1| within the exponential bound"));
    }
    return out;
}

std::vector<Check> check_hypergeometric_identity() {
    double worst = 0, raw_gap = 0;
    for (Cplx s : {Cplx(1.5, 0), Cplx(2, 0), Cplx(2.5, 0.5)}) {
        Cplx got = gamma_ratio_identity_sum(s, 200);
        Cplx expect = 1.0 / (s * (s - 1.0));
        worst = std::max(worst, std::abs(got - expect));
        // raw partial sum to n = 200 for the report
        Cplx term = std::exp(2.0 * log_gamma(s) - log_gamma(2.0 * s));
        Cplx raw = 0;
        for (int n = 0; n <= 200; ++n) {
            raw += term / (s + Cplx(n - 1, 0));
            term *= (s + Cplx(n, 0)) * (s + Cplx(n, 0)) /
                    ((2.0 * s + Cplx(n, 0)) * Cplx(n + 1, 0));
        }
        raw_gap = std::max(raw_gap, std::abs(raw - expect));
    }
    return {make_check("gamma_ratio_summation", worst, 1e-10,
                       "terms to n=200 with tail extrapolation; raw n=200 gap " +
                           std::to_string(raw_gap))};
}

// ---------------------------------------------------------------------------
// local product suite
// ---------------------------------------------------------------------------

std::vector<Check> check_borcherds_suite() {
    std::vector<Check> out;
    FractionalIdeal OK5 = ok_ideal(5);
    std::pair<double, double> w{1.37, 1.0};
    EvalPoint z({0.17, 1.4}, {-0.23, 1.1});

    Cplx direct = local_product_direct(OK5, 1, z, w);
    Cplx weyl = local_product(OK5, 1, z, w);
    out.push_back(make_check("local_product_two_representations", std::abs(direct - weyl),
                             1e-10, "definition form vs Weyl form"));

    InvarianceReport rep = invariance_check(OK5, 1, 2, 5);
    out.push_back(make_check("local_product_translation_invariance", rep.translation_delta,
                             1e-9, "Psi^2 under a^{-1} shifts"));
    out.push_back(make_check("local_product_unit_invariance", rep.unit_delta, 1e-9,
                             "Psi^2 under the squared fundamental unit"));

    // simple-zero slope stability within 5%
    {
        Cplx zstar(0.3, 1.2);
        double prev = 0, worst = 0;
        bool first = true;
        for (double eps : {1e-3, 1e-4, 1e-5, 1e-6}) {
            EvalPoint p(zstar + Cplx(eps, 0), zstar);
            double ratio = std::abs(local_product(OK5, 1, p, w)) / eps;
            if (!first) worst = std::max(worst, std::abs(ratio - prev) / prev);
            prev = ratio;
            first = false;
        }
        out.push_back(make_check("local_product_simple_zero_slope", worst, 0.05,
                                 "|Psi(z(eps))|/eps stability along a transverse path"));
    }

    auto mults = vanishing_orders(OK5, 1);
    bool mult_ok = mults.size() == 1 && mults[0] == Rat(1);
    out.push_back(make_check("vanishing_order_D5_m1", mult_ok ? 0 : 1, 0,
                             "tr(rho(a,1,A_0) A_0) = 1 exactly"));

    // wall-crossing continuity: mirrored points across the y1 = y2 wall carry
    // equal values by the conjugation symmetry of O_K
    {
        Truncation t;
        double c = 1.3, delta = 1e-3;
        EvalPoint zp({0.31, c * (1 + delta)}, {0.11, c});
        EvalPoint zm({0.11, c}, {0.31, c * (1 + delta)});
        double a = phi_fourier(OK5, 1, zp, t).value;
        double b = phi_fourier(OK5, 1, zm, t).value;
        out.push_back(make_check("wall_crossing_continuity", std::abs(a - b), 1e-5,
                                 "Galois-mirrored evaluations across a chamber wall"));
    }
    return out;
}

std::vector<Check> check_growth_trend(long D, long m_max) {
    // log-log regression of q(O_K, m) over m <= m_max, slope <= 2.2
    FractionalIdeal a = ok_ideal(D);
    std::vector<double> xs, ys;
    double envelope = 0;
    for (long m = 1; m <= m_max; ++m) {
        Rat q = regularization_constants(a, m).q;
        if (q == 0) continue;
        xs.push_back(std::log(double(m)));
        ys.push_back(std::log(to_double(q)));
        envelope = std::max(envelope, to_double(q) / (double(m) * m));
    }
    double n = xs.size();
    double sx = std::accumulate(xs.begin(), xs.end(), 0.0);
    double sy = std::accumulate(ys.begin(), ys.end(), 0.0);
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    std::vector<Check> out;
    out.push_back(make_check("growth_slope_D" + std::to_string(D), std::max(slope, 0.0), 2.2,
                             "fitted log-log exponent of q(O_K, m), envelope max q/m^2 = " +
                                 std::to_string(envelope)));
    return out;
}

std::vector<Check> check_field_basics(long D) {
    std::vector<Check> out;
    const FieldContext& ctx = FieldContext::get(D);
    Rat n0 = ctx.eps0.norm();
    bool unit_ok = (n0 == 1 || n0 == -1) && ctx.eps1.is_totally_positive() &&
                   ctx.eps0.embed_first() > 1;
    out.push_back(make_check("fundamental_units_D" + std::to_string(D), unit_ok ? 0 : 1, 0,
                             "eps0 = " + ctx.eps0.str()));
    double lv = l_value(D, -1.0);
    out.push_back(make_check("l_value_consistency_D" + std::to_string(D),
                             std::abs(lv - to_double(ctx.L_minus1)), 1e-10,
                             "Euler-Maclaurin vs generalized Bernoulli"));
    return out;
}

// ---------------------------------------------------------------------------
// suites
// ---------------------------------------------------------------------------

SuiteReport run_suite(const std::string& suite, const RunConfig& cfg) {
    cfg.validate();
    auto start = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = suite;
    auto add = [&](std::vector<Check> cs) {
        for (auto& c : cs) rep.checks.push_back(std::move(c));
    };
    if (suite == "field" || suite == "all") add(check_field_basics(cfg.disc));
    if (suite == "sigma" || suite == "all") {
        add(check_sigma_functional_equation(cfg.disc, cfg.m_max));
        add(check_qexp_proportionality(cfg.disc, cfg.m_max));
    }
    if (suite == "dirichlet" || suite == "all")
        add(check_dirichlet_identity(cfg.disc, std::min(cfg.m_max, 20L), cfg.b_max));
    if (suite == "green2route" || suite == "all") {
        add(check_two_route_green(cfg.disc, 1, cfg.jobs, cfg.trunc));
        add(check_smooth_decomposition(cfg.disc, 1, cfg.trunc));
    }
    if (suite == "laplace" || suite == "all") {
        add(check_laplace_equation(cfg.disc, 1, cfg.trunc));
        add(check_eigenfunction_property());
    }
    if (suite == "borcherds" || suite == "all") add(check_borcherds_suite());
    if (suite == "integrals" || suite == "all") {
        add(check_integral_chain(cfg.disc, cfg.m_max));
        add(check_quadrature_identities());
        add(check_hypergeometric_identity());
    }
    if (suite == "growth" || suite == "all") add(check_growth_trend(cfg.disc, 200));
    if (rep.checks.empty()) throw std::invalid_argument("unknown suite: " + suite);
    rep.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::string suite_report_json(const SuiteReport& report) {
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        checks.push_back(Json{{"name", c.name},
                              {"delta", c.delta},
                              {"tol", c.tol},
                              {"pass", c.pass},
                              {"detail", c.detail}});
    }
    Json j{{"suite", report.suite},
           {"pass", report.pass()},
           {"seconds", report.seconds},
           {"checks", checks}};
    return j.dump(2);
}

} // namespace hmgreen

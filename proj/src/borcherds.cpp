#include "hmgreen/borcherds.hpp"

#include <algorithm>
#include <cmath>

namespace hmgreen {

namespace {

Cplx e_of(Cplx z) { return std::exp(Cplx(0, 2 * M_PI) * z); }

// e(tr(lambda z)) from exact lambda
Cplx e_trace(const FieldElement& lam, const EvalPoint& z) {
    return e_of(lam.embed_first() * z.z1 + lam.embed_second() * z.z2);
}

struct OrbitContext {
    FieldElement e2;     // eps0^2
    FieldElement e2inv;
    double w1, w2;
    double trw(const FieldElement& lam) const {
        return lam.embed_first() * w1 + lam.embed_second() * w2;
    }
};

OrbitContext orbit_context(long D, std::pair<double, double> w) {
    if (!(w.first > 0) || !(w.second > 0))
        throw std::invalid_argument("weight vector must be strictly positive");
    const FieldContext& ctx = FieldContext::get(D);
    FieldElement e2 = ctx.eps0 * ctx.eps0;
    return {e2, FieldElement::one(D) / e2, w.first, w.second};
}

// reduced representative in the orbit: minimal with tr(lambda w) >= 0
FieldElement reduce_rep(const OrbitContext& oc, FieldElement lam) {
    int guard = 0;
    if (oc.trw(lam) >= 0) {
        while (oc.trw(lam * oc.e2inv) >= 0) {
            lam = lam * oc.e2inv;
            if (++guard > 512) throw std::runtime_error("orbit reduction diverged");
        }
        return lam;
    }
    while (oc.trw(lam) < 0) {
        lam = lam * oc.e2;
        if (++guard > 512) throw std::runtime_error("orbit reduction diverged");
    }
    return lam;
}

} // namespace

Cplx local_product(const FractionalIdeal& a, long m, const EvalPoint& z,
                   std::pair<double, double> w, const ProductTruncation& t) {
    long D = a.disc();
    OrbitContext oc = orbit_context(D, w);
    HZData hz = lambda_set(a, m);
    WeylData wd = reduced_and_weyl(a, m, w);
    Cplx result = e_of(wd.rho.embed_first() * z.z1 + wd.rho.embed_second() * z.z2);
    for (const auto& rep : hz.orbit_reps) {
        FieldElement red = reduce_rep(oc, rep);
        // k >= 0: factors (1 - e(tr(lambda z))) with lambda = eps0^{2k} red
        FieldElement lam = red;
        for (int k = 0; k < t.max_window; ++k) {
            Cplx q = e_trace(lam, z);
            if (std::abs(q) < t.factor_cutoff) break;
            Cplx f = Cplx(1, 0) - q;
            if (std::abs(f) < t.divisor_guard)
                throw singularity_error("evaluation point too close to a divisor component");
            result *= f;
            lam = lam * oc.e2;
        }
        // k < 0: the negated part of Lambda_w, factors (1 - e(-tr(lambda z)))
        lam = red * oc.e2inv;
        for (int k = 0; k < t.max_window; ++k) {
            Cplx q = e_of(-(lam.embed_first() * z.z1 + lam.embed_second() * z.z2));
            if (std::abs(q) < t.factor_cutoff) break;
            Cplx f = Cplx(1, 0) - q;
            if (std::abs(f) < t.divisor_guard)
                throw singularity_error("evaluation point too close to a divisor component");
            result *= f;
            lam = lam * oc.e2inv;
        }
    }
    return result;
}

namespace {

// one definition-form factor: sigma_w(lambda) (e(|lambda| z1) - e(|lambda'| z2))
Cplx direct_factor(const OrbitContext& oc, const FieldElement& lam, const EvalPoint& z) {
    double l1 = lam.embed_first();
    double l2 = -lam.embed_second(); // |lambda'|
    Cplx val = e_of(l1 * z.z1) - e_of(l2 * z.z2);
    return oc.trw(lam) >= 0 ? -val : val;
}

// distance of a definition-form factor from its orbit-end limit +1
double factor_settled(const OrbitContext& oc, const FieldElement& lam, const EvalPoint& z) {
    return std::abs(direct_factor(oc, lam, z) - Cplx(1, 0));
}

} // namespace

Cplx local_product_direct(const FractionalIdeal& a, long m, const EvalPoint& z,
                          std::pair<double, double> w, const ProductTruncation& t) {
    long D = a.disc();
    OrbitContext oc = orbit_context(D, w);
    HZData hz = lambda_set(a, m);
    Cplx result = 1;
    for (const auto& rep : hz.orbit_reps) {
        FieldElement red = reduce_rep(oc, rep);
        FieldElement lam = red;
        for (int k = 0; k < t.max_window; ++k) {
            if (factor_settled(oc, lam, z) < t.factor_cutoff) break;
            Cplx f = direct_factor(oc, lam, z);
            if (std::abs(f) < t.divisor_guard)
                throw singularity_error("evaluation point too close to a divisor component");
            result *= f;
            lam = lam * oc.e2;
        }
        lam = red * oc.e2inv;
        for (int k = 0; k < t.max_window; ++k) {
            if (factor_settled(oc, lam, z) < t.factor_cutoff) break;
            Cplx f = direct_factor(oc, lam, z);
            if (std::abs(f) < t.divisor_guard)
                throw singularity_error("evaluation point too close to a divisor component");
            result *= f;
            lam = lam * oc.e2inv;
        }
    }
    return result;
}

std::vector<Cplx> local_product_factors(const FractionalIdeal& a, long m, const EvalPoint& z,
                                        std::pair<double, double> w, int count) {
    // unsigned factors e(|lambda| z1) - e(|lambda'| z2), windowed around the
    // orbit element minimizing |tr(lambda y)|; that anchor is equivariant under
    // the unit action, so the window at (eps0^2 z1, eps0^{-2} z2) matches
    long D = a.disc();
    OrbitContext oc = orbit_context(D, w);
    HZData hz = lambda_set(a, m);
    std::vector<Cplx> out;
    for (const auto& rep : hz.orbit_reps) {
        FieldElement anchor = rep;
        auto consider = [&](const FieldElement& cand) {
            double t = std::abs(cand.embed_first() * z.y1() + cand.embed_second() * z.y2());
            double best = std::abs(anchor.embed_first() * z.y1() +
                                   anchor.embed_second() * z.y2());
            if (t < best) anchor = cand;
        };
        FieldElement lam = rep;
        for (int k = 0; k < 64; ++k) { lam = lam * oc.e2; consider(lam); }
        lam = rep;
        for (int k = 0; k < 64; ++k) { lam = lam * oc.e2inv; consider(lam); }
        lam = anchor * oc.e2inv.pow(count / 2);
        for (int k = -(count / 2); k <= count / 2; ++k) {
            double l1 = lam.embed_first(), l2 = -lam.embed_second();
            out.push_back(e_of(l1 * z.z1) - e_of(l2 * z.z2));
            lam = lam * oc.e2;
        }
    }
    std::sort(out.begin(), out.end(), [](Cplx x, Cplx y) {
        return std::make_pair(x.real(), x.imag()) < std::make_pair(y.real(), y.imag());
    });
    if (out.size() > static_cast<size_t>(count)) out.resize(count);
    return out;
}

long minimal_admissible_power(long D) {
    const FieldContext& ctx = FieldContext::get(D);
    FieldElement den = FieldElement::one(D) - ctx.eps0 * ctx.eps0;
    FractionalIdeal J = FractionalIdeal::principal(den);
    for (long n = 2; n <= 2'000'000; n += 2)
        if (J.contains(FieldElement::from_rational(D, Rat(n)))) return n;
    throw std::runtime_error("no admissible power found below bound");
}

InvarianceReport invariance_check(const FractionalIdeal& a, long m, long n, int samples) {
    long D = a.disc();
    const FieldContext& ctx = FieldContext::get(D);
    FieldElement den = FieldElement::one(D) - ctx.eps0 * ctx.eps0;
    if (n <= 0 || n % 2 != 0 ||
        !FractionalIdeal::principal(den).contains(FieldElement::from_rational(D, Rat(n))))
        throw std::invalid_argument("inadmissible power; minimal admissible n is " +
                                    std::to_string(minimal_admissible_power(D)));
    std::pair<double, double> w{1.37, 1.0};
    EvalPoint z({0.17, 1.4}, {-0.23, 1.1});
    auto psi_n = [&](const EvalPoint& p) {
        return std::pow(local_product(a, m, p, w, {}), n);
    };
    Cplx base = psi_n(z);
    double scale = std::max(std::abs(base), 1e-30);

    InvarianceReport rep;
    auto ainv = a.inverse().basis();
    for (int i = 0; i < samples; ++i) {
        FieldElement mu = ainv[0] * Rat(1 + i % 3) + ainv[1] * Rat(i / 3 - 1);
        if (mu.is_zero()) mu = ainv[0];
        EvalPoint shifted(z.z1 + mu.embed_first(), z.z2 + mu.embed_second());
        rep.translation_delta =
            std::max(rep.translation_delta, std::abs(psi_n(shifted) - base) / scale);
    }
    // action of the squared unit: z -> (eps0^2 z1, eps0^{-2} z2)
    double u1 = (ctx.eps0 * ctx.eps0).embed_first();
    double u2 = (ctx.eps0 * ctx.eps0).embed_second();
    EvalPoint uz(z.z1 * u1, z.z2 * u2);
    rep.unit_delta = std::abs(psi_n(uz) - base) / scale;

    // the unit action permutes the definition-form factors
    auto f1 = local_product_factors(a, m, z, w, 20);
    auto f2 = local_product_factors(a, m, uz, w, 20);
    for (size_t i = 0; i < f1.size() && i < f2.size(); ++i)
        rep.permutation_delta = std::max(rep.permutation_delta, std::abs(f1[i] - f2[i]));
    return rep;
}

LocalCoordinates local_coordinates(const FieldElement& alpha, const FieldElement& beta,
                                   const EvalPoint& z) {
    if (!alpha.is_totally_positive() || !beta.is_totally_positive())
        throw std::invalid_argument("local coordinates require a totally positive basis");
    double a1 = alpha.embed_first(), a2 = alpha.embed_second();
    double b1 = beta.embed_first(), b2 = beta.embed_second();
    double det = a1 * b2 - b1 * a2;
    Cplx t1 = Cplx(0, 2 * M_PI) * z.z1, t2 = Cplx(0, 2 * M_PI) * z.z2;
    Cplx logu = (b2 * t1 - b1 * t2) / det;
    Cplx logv = (-a2 * t1 + a1 * t2) / det;
    return {std::exp(logu), std::exp(logv)};
}

EvalPoint local_coordinates_inverse(const FieldElement& alpha, const FieldElement& beta,
                                    const LocalCoordinates& uv) {
    double a1 = alpha.embed_first(), a2 = alpha.embed_second();
    double b1 = beta.embed_first(), b2 = beta.embed_second();
    Cplx logu = std::log(uv.u), logv = std::log(uv.v);
    Cplx z1 = (a1 * logu + b1 * logv) / Cplx(0, 2 * M_PI);
    Cplx z2 = (a2 * logu + b2 * logv) / Cplx(0, 2 * M_PI);
    return EvalPoint(z1, z2);
}

std::vector<Rat> vanishing_orders(const FractionalIdeal& a, long m) {
    BoundaryCycle cyc = boundary_cycle(a.inverse());
    std::vector<Rat> out;
    for (const auto& Ak : cyc.points) {
        WeylData wd = reduced_and_weyl_exact(a, m, Ak);
        out.push_back((wd.rho * Ak).trace());
    }
    return out;
}

LogNormBlocks log_norm_block(const FractionalIdeal& a, long m, const EvalPoint& z,
                             const ProductTruncation& t) {
    long D = a.disc();
    const FieldContext& ctx = FieldContext::get(D);
    FieldElement e2 = ctx.eps0 * ctx.eps0;
    FieldElement e2inv = FieldElement::one(D) / e2;
    HZData hz = lambda_set(a, m);
    LogNormBlocks out;
    auto add_lambda = [&](const FieldElement& lam) -> bool {
        double l1 = lam.embed_first();
        double l2 = -lam.embed_second(); // |lambda'|
        Cplx q1 = e_of(l1 * z.z1), q2 = e_of(l2 * z.z2);
        double t5 = std::log(std::norm(Cplx(1, 0) - q1 * std::conj(q2)));
        Cplx psi = q1 - q2;
        if (std::abs(psi) < t.divisor_guard)
            throw singularity_error("evaluation point too close to a divisor component");
        double t6 = -std::log(std::norm(psi));
        out.f5 += t5;
        out.f6 += t6;
        // both contributions vanish along each orbit end; stop once negligible
        return std::abs(t5) >= t.factor_cutoff || std::abs(t6) >= t.factor_cutoff;
    };
    for (const auto& rep : hz.orbit_reps) {
        FieldElement lam = rep;
        for (int k = 0; k < t.max_window; ++k) {
            if (!add_lambda(lam)) break;
            lam = lam * e2;
        }
        lam = rep * e2inv;
        for (int k = 0; k < t.max_window; ++k) {
            if (!add_lambda(lam)) break;
            lam = lam * e2inv;
        }
    }
    return out;
}

} // namespace hmgreen

#include "hmgreen/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hmgreen {

std::string LatticeVector::str() const {
    std::ostringstream os;
    os << "[[" << rat_string(a) << ", " << lam.conj().str() << "], [" << lam.str() << ", "
       << rat_string(b) << "]]";
    return os.str();
}

// ---------------------------------------------------------------------------
// majorants
// ---------------------------------------------------------------------------

static std::complex<double> divisor_form(const LatticeVector& A, std::complex<double> w1,
                                         std::complex<double> w2) {
    // b w1 w2 - lam w1 - lam' w2 + a
    return to_double(A.b) * w1 * w2 - A.lam.embed_first() * w1 -
           A.lam.embed_second() * w2 + to_double(A.a);
}

Majorant h_g_majorant(const LatticeVector& A, const EvalPoint& z) {
    double num = std::norm(divisor_form(A, z.z1, z.z2));
    double h = num / (4.0 * z.y1() * z.y2());
    Rat det = A.det();
    Majorant out;
    out.h = h;
    out.qz = to_double(det) + 2.0 * h;
    if (det != 0) out.g = h / to_double(det);
    return out;
}

double q_wtilde(const LatticeVector& A, const EvalPoint& z) {
    double num = std::norm(divisor_form(A, std::conj(z.z1), z.z2));
    return num / (4.0 * z.y1() * z.y2());
}

// ---------------------------------------------------------------------------
// membership and group action
// ---------------------------------------------------------------------------

bool in_lattice(const LatticeVector& A, const FractionalIdeal& a) {
    if (den(A.a) != 1) return false;
    Rat bn = A.b / a.norm();
    if (den(bn) != 1) return false;
    return a.contains(A.lam);
}

bool in_dual_lattice(const LatticeVector& A, const FractionalIdeal& a) {
    // N(a) * A must have entries (Z, N(a)Z, a d^{-1})
    Rat n = a.norm();
    if (den(A.a * n) != 1) return false;
    if (den(A.b) != 1) return false;
    FractionalIdeal ad_inv = a * FractionalIdeal::different_inv(a.disc());
    return ad_inv.contains(A.lam * n);
}

LatticeVector sl_action(const Mat2& M, const LatticeVector& A) {
    FieldElement dt = M.det();
    if (!dt.is_rational() || dt.rational_value() != 1)
        throw std::invalid_argument("lattice action requires det M = 1");
    long D = M.a.disc();
    // A as a matrix of field elements
    FieldElement a = FieldElement::from_rational(D, A.a);
    FieldElement b = FieldElement::from_rational(D, A.b);
    FieldElement l = A.lam, lc = A.lam.conj();
    // M * A * (M')^T
    FieldElement r11 = (M.a * a + M.b * l) * M.a.conj() + (M.a * lc + M.b * b) * M.b.conj();
    FieldElement r21 = (M.c * a + M.d * l) * M.a.conj() + (M.c * lc + M.d * b) * M.b.conj();
    FieldElement r12 = (M.a * a + M.b * l) * M.c.conj() + (M.a * lc + M.b * b) * M.d.conj();
    FieldElement r22 = (M.c * a + M.d * l) * M.c.conj() + (M.c * lc + M.d * b) * M.d.conj();
    if (!r11.is_rational() || !r22.is_rational() || r12 != r21.conj())
        throw std::logic_error("lattice action produced a vector outside V");
    return {r11.rational_value(), r22.rational_value(), r21};
}

EvalPoint moebius(const Mat2& M, const EvalPoint& z) {
    auto frac = [](double a, double b, double c, double d, std::complex<double> w) {
        return (a * w + b) / (c * w + d);
    };
    std::complex<double> w1 = frac(M.a.embed_first(), M.b.embed_first(),
                                   M.c.embed_first(), M.d.embed_first(), z.z1);
    std::complex<double> w2 = frac(M.a.embed_second(), M.b.embed_second(),
                                   M.c.embed_second(), M.d.embed_second(), z.z2);
    return EvalPoint(w1, w2);
}

// ---------------------------------------------------------------------------
// enumeration of dual vectors with fixed determinant
// ---------------------------------------------------------------------------

namespace {

// integer parametrization of L(a)^dual:
//   A = (1/N) [[a0, mu'], [mu, N b0]],  a0, b0 in Z, mu = c1 g1 + c2 g2 in a d^{-1}
struct DualBasis {
    Rat N;
    std::array<FieldElement, 2> g;
    long D;
};

DualBasis dual_basis(const FractionalIdeal& a) {
    DualBasis db;
    db.D = a.disc();
    db.N = a.norm();
    db.g = (a * FractionalIdeal::different_inv(a.disc())).basis();
    return db;
}

LatticeVector assemble(const DualBasis& db, long a0, long b0, const Int& c1, const Int& c2) {
    FieldElement mu = db.g[0] * Rat(c1) + db.g[1] * Rat(c2);
    return {Rat(a0) / db.N, Rat(b0), mu / FieldElement::from_rational(db.D, db.N)};
}

// Gram matrix of q_z in the integer coordinates (a0, b0, c1, c2)
void qz_gram(const DualBasis& db, const EvalPoint& z, double G[4][4]) {
    auto value = [&](double x0, double x1, double x2, double x3) {
        // evaluate q_z on the real span; everything is linear in the coordinates
        double N = to_double(db.N);
        double l1 = db.g[0].embed_first() * x2 + db.g[1].embed_first() * x3;
        double l2 = db.g[0].embed_second() * x2 + db.g[1].embed_second() * x3;
        double a = x0 / N, b = x1;
        double det = a * b - (l1 / N) * (l2 / N);
        std::complex<double> f = b * z.z1 * z.z2 - (l1 / N) * z.z1 - (l2 / N) * z.z2 + a;
        double h = std::norm(f) / (4 * z.y1() * z.y2());
        return det + 2 * h;
    };
    double e[4][4] = {};
    double q[4];
    for (int i = 0; i < 4; ++i) {
        double v[4] = {0, 0, 0, 0};
        v[i] = 1;
        q[i] = value(v[0], v[1], v[2], v[3]);
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j) { e[i][j] = q[i]; continue; }
            double v[4] = {0, 0, 0, 0};
            v[i] = 1; v[j] = 1;
            e[i][j] = (value(v[0], v[1], v[2], v[3]) - q[i] - q[j]) / 2;
        }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) G[i][j] = e[i][j];
}

} // namespace

std::vector<LatticeVector> enumerate_dual(const FractionalIdeal& a, long m,
                                          const EvalPoint& z, double R) {
    if (m < 1) throw std::invalid_argument("determinant index m must be positive");
    DualBasis db = dual_basis(a);
    Rat target_det = Rat(m) / (db.N * Rat(a.disc()));
    std::vector<LatticeVector> out;
    if (R <= to_double(target_det)) return out;

    double G[4][4];
    qz_gram(db, z, G);
    // Cholesky G = L D L^T (unit lower triangular L, positive diagonal D)
    double Ld[4][4] = {}, Dg[4] = {};
    for (int i = 0; i < 4; ++i) {
        Ld[i][i] = 1;
        for (int j = 0; j <= i; ++j) {
            double s = G[i][j];
            for (int k = 0; k < j; ++k) s -= Ld[i][k] * Ld[j][k] * Dg[k];
            if (i == j) {
                Dg[i] = s;
                if (!(s > 0)) throw std::logic_error("majorant Gram not positive definite");
            } else {
                Ld[i][j] = s / Dg[j];
            }
        }
    }
    const double slack = 1e-9;
    double bound = R * (1 + slack) + slack;

    // Fincke-Pohst over x = (a0, b0, c1, c2), outermost coordinate last
    double x[4];
    std::function<void(int, double)> recurse = [&](int level, double remaining) {
        // q(x) = sum_i D_i (x_i + sum_{j>i} L_ji x_j)^2 when eliminating from the top
        double center = 0;
        for (int j = level + 1; j < 4; ++j) center += Ld[j][level] * x[j];
        double range = std::sqrt(std::max(remaining, 0.0) / Dg[level]) + 1e-12;
        long lo = static_cast<long>(std::ceil(-center - range - 1e-12));
        long hi = static_cast<long>(std::floor(-center + range + 1e-12));
        for (long v = lo; v <= hi; ++v) {
            x[level] = static_cast<double>(v);
            double t = x[level] + center;
            double used = Dg[level] * t * t;
            if (used > remaining + slack) continue;
            if (level == 0) {
                LatticeVector A = assemble(db, static_cast<long>(x[0]), static_cast<long>(x[1]),
                                           Int(static_cast<long>(x[2])), Int(static_cast<long>(x[3])));
                if (A.det() != target_det) continue;
                double qz = h_g_majorant(A, z).qz;
                if (qz <= R * (1 + slack) + slack) out.push_back(A);
            } else {
                recurse(level - 1, remaining - used);
            }
        }
    };
    recurse(3, bound);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// lambda orbits and Weyl data
// ---------------------------------------------------------------------------

HZData lambda_set(const FractionalIdeal& a, long m) {
    if (m < 1) throw std::invalid_argument("index m must be positive");
    long D = a.disc();
    const FieldContext& ctx = FieldContext::get(D);
    FieldElement e2 = ctx.eps0 * ctx.eps0; // eps0^2, totally positive
    Rat target = -Rat(m) * a.norm() / Rat(D);

    HZData out;
    out.m = m;
    auto g = (a * FractionalIdeal::different_inv(D)).basis();
    // window for orbit representatives: lam > 0 > lam', tr(lam) >= 0, tr(lam eps0^{-2}) < 0;
    // embeddings then satisfy sqrt(|t|) <= lam < sqrt(|t|) eps0^2, |lam'| <= sqrt(|t|)
    double root = std::sqrt(std::abs(to_double(target)));
    double M1 = root * to_double(e2.norm() == 1 ? Rat(1) : Rat(1)) * e2.embed_first() * 1.01;
    double M2 = root * 1.01;
    double e[2][2] = {{g[0].embed_first(), g[1].embed_first()},
                      {g[0].embed_second(), g[1].embed_second()}};
    double det = e[0][0] * e[1][1] - e[0][1] * e[1][0];
    double inv[2][2] = {{e[1][1] / det, -e[0][1] / det}, {-e[1][0] / det, e[0][0] / det}};
    double c1max = 1, c2max = 1;
    for (double u : {0.0, M1})
        for (double v : {-M2, 0.0}) {
            c1max = std::max(c1max, std::abs(inv[0][0] * u + inv[0][1] * v));
            c2max = std::max(c2max, std::abs(inv[1][0] * u + inv[1][1] * v));
        }
    long C1 = static_cast<long>(c1max) + 2;
    long C2 = static_cast<long>(c2max) + 2;
    FieldElement e2inv = FieldElement::one(D) / e2;
    for (long c1 = -C1; c1 <= C1; ++c1) {
        for (long c2 = -C2; c2 <= C2; ++c2) {
            if (c1 == 0 && c2 == 0) continue;
            FieldElement lam = g[0] * Rat(c1) + g[1] * Rat(c2);
            if (lam.norm() != target) continue;
            if (lam.sign_first() <= 0) continue;
            if (sign(lam.trace()) < 0) continue;                  // tr(lam) >= 0
            if (sign((lam * e2inv).trace()) >= 0) continue;       // tr(lam/eps0^2) < 0
            out.orbit_reps.push_back(lam);
        }
    }
    std::sort(out.orbit_reps.begin(), out.orbit_reps.end(),
              [](const FieldElement& x, const FieldElement& y) { return x.less_first(y); });
    return out;
}

namespace {

// first k with pairing(lam * eps0^{2k}) >= 0; the pairing is strictly
// increasing in k because lam > 0 > lam' and the weight is positive
template <typename Pairing>
FieldElement minimal_nonnegative(const FieldElement& rep, const FieldElement& e2,
                                 Pairing&& pair) {
    FieldElement cur = rep;
    if (pair(cur) >= 0) {
        FieldElement e2inv = FieldElement::one(rep.disc()) / e2;
        while (true) {
            FieldElement prev = cur * e2inv;
            if (pair(prev) >= 0) cur = prev; else break;
            if (cur.p() > Int(1) << 512) throw std::runtime_error("orbit reduction diverged");
        }
        return cur;
    }
    while (pair(cur) < 0) {
        cur = cur * e2;
        if (cur.p() > Int(1) << 512) throw std::runtime_error("orbit reduction diverged");
    }
    return cur;
}

} // namespace

WeylData reduced_and_weyl(const FractionalIdeal& a, long m, std::pair<double, double> w) {
    if (!(w.first > 0) || !(w.second > 0))
        throw std::invalid_argument("weight vector must be strictly positive");
    long D = a.disc();
    const FieldContext& ctx = FieldContext::get(D);
    FieldElement e2 = ctx.eps0 * ctx.eps0;
    HZData hz = lambda_set(a, m);
    WeylData out;
    out.rho = FieldElement::zero(D);
    double wnorm = std::hypot(w.first, w.second);
    auto pairing = [&](const FieldElement& lam) {
        double t = lam.embed_first() * w.first + lam.embed_second() * w.second;
        double scale = std::hypot(lam.embed_first(), lam.embed_second()) * wnorm;
        if (std::abs(t) < 1e-12 * scale)
            throw std::invalid_argument("weight vector lies on the wall of " + lam.str());
        return t;
    };
    FieldElement denom = e2 - FieldElement::one(D);
    for (const auto& rep : hz.orbit_reps) {
        FieldElement red = minimal_nonnegative(rep, e2, pairing);
        out.reduced.push_back(red);
        out.rho += red / denom;
    }
    return out;
}

WeylData reduced_and_weyl_exact(const FractionalIdeal& a, long m, const FieldElement& beta) {
    if (!beta.is_totally_positive())
        throw std::invalid_argument("exact weight must be totally positive");
    long D = a.disc();
    const FieldContext& ctx = FieldContext::get(D);
    FieldElement e2 = ctx.eps0 * ctx.eps0;
    HZData hz = lambda_set(a, m);
    WeylData out;
    out.rho = FieldElement::zero(D);
    auto pairing = [&](const FieldElement& lam) {
        return static_cast<double>(sign((lam * beta).trace())); // exact sign only
    };
    FieldElement denom = e2 - FieldElement::one(D);
    for (const auto& rep : hz.orbit_reps) {
        FieldElement red = minimal_nonnegative(rep, e2, pairing);
        out.reduced.push_back(red);
        out.rho += red / denom;
    }
    return out;
}

} // namespace hmgreen

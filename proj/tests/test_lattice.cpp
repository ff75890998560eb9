#include <doctest.h>

#include "hmgreen/lattice.hpp"

#include <cmath>
#include <set>

using namespace hmgreen;

namespace {

// slow complete enumeration over a coefficient box, used as the completeness
// oracle for the Fincke-Pohst search; a float prefilter keeps it affordable
std::vector<LatticeVector> naive_box_enum(const FractionalIdeal& a, long m,
                                          const EvalPoint& z, double R, long box) {
    long D = a.disc();
    Rat N = a.norm();
    double Nd = to_double(N);
    auto g = (a * FractionalIdeal::different_inv(D)).basis();
    Rat target = Rat(m) / (N * Rat(D));
    std::vector<LatticeVector> out;
    for (long c1 = -box; c1 <= box; ++c1)
        for (long c2 = -box; c2 <= box; ++c2) {
            FieldElement mu = g[0] * Rat(c1) + g[1] * Rat(c2);
            double l1 = mu.embed_first() / Nd, l2 = mu.embed_second() / Nd;
            for (long a0 = -box; a0 <= box; ++a0)
                for (long b0 = -box; b0 <= box; ++b0) {
                    double det = (a0 / Nd) * b0 - l1 * l2;
                    std::complex<double> f = double(b0) * z.z1 * z.z2 - l1 * z.z1 -
                                             l2 * z.z2 + a0 / Nd;
                    double qz = det + std::norm(f) / (2 * z.y1() * z.y2());
                    if (qz > R * (1 + 1e-6) + 1e-6) continue;
                    LatticeVector A{Rat(a0) / N, Rat(b0),
                                    mu / FieldElement::from_rational(D, N)};
                    if (A.det() != target) continue;
                    double qze = h_g_majorant(A, z).qz;
                    if (qze <= R * (1 + 1e-9) + 1e-9) out.push_back(A);
                }
        }
    std::sort(out.begin(), out.end());
    return out;
}

Mat2 unit_matrix(long D) {
    const FieldContext& ctx = FieldContext::get(D);
    return {ctx.eps0, FieldElement::zero(D), FieldElement::zero(D),
            FieldElement::one(D) / ctx.eps0};
}

Mat2 translation_matrix(const FieldElement& mu) {
    long D = mu.disc();
    return {FieldElement::one(D), mu, FieldElement::zero(D), FieldElement::one(D)};
}

} // namespace

TEST_CASE("majorant values at pinned points") {
    LatticeVector A{Rat(1), Rat(1), FieldElement::zero(5)};
    EvalPoint zi({0, 1}, {0, 1});
    Majorant m1 = h_g_majorant(A, zi);
    CHECK(m1.h == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(*m1.g == doctest::Approx(0.0).epsilon(1e-14));

    EvalPoint z2({0, 2}, {0, 1});
    Majorant m2 = h_g_majorant(A, z2);
    CHECK(m2.h == doctest::Approx(1.0 / 8).epsilon(1e-13));
    CHECK(*m2.g == doctest::Approx(1.0 / 8).epsilon(1e-13));
}

TEST_CASE("two formulas for the majorant agree: qz = det + 2h = h + q_wtilde") {
    unsigned long seed = 777;
    auto next = [&]() {
        seed ^= seed << 13; seed ^= seed >> 7; seed ^= seed << 17;
        return static_cast<double>(seed % 1000) / 250.0 - 2.0;
    };
    long D = 5;
    for (int i = 0; i < 1000; ++i) {
        LatticeVector A{Rat(static_cast<long>(next() * 4)), Rat(static_cast<long>(next() * 4)),
                        FieldElement(D, static_cast<long>(next() * 3),
                                     static_cast<long>(next() * 3), 1)};
        EvalPoint z({next(), 0.5 + std::abs(next())}, {next(), 0.5 + std::abs(next())});
        Majorant mj = h_g_majorant(A, z);
        double other = mj.h + q_wtilde(A, z);
        CHECK(mj.qz == doctest::Approx(other).epsilon(1e-12));
    }
}

TEST_CASE("sl_action preserves determinants and the majorant transforms") {
    long D = 5;
    FractionalIdeal OK = FractionalIdeal::ring_of_integers(D);
    Mat2 T = translation_matrix(FieldElement::omega(D));
    Mat2 U = unit_matrix(D);
    Mat2 S = cusp_transport(FieldElement::zero(D), FieldElement::one(D), OK);
    EvalPoint z({0.3, 1.1}, {-0.2, 0.8});
    auto lam = (OK * FractionalIdeal::different_inv(D)).basis();
    unsigned long seed = 4242;
    auto next = [&]() {
        seed ^= seed << 13; seed ^= seed >> 7; seed ^= seed << 17;
        return static_cast<long>(seed % 7) - 3;
    };
    for (int i = 0; i < 300; ++i) {
        LatticeVector A{Rat(next()), Rat(next()), lam[0] * Rat(next()) + lam[1] * Rat(next())};
        for (const Mat2& M : {T, U, S}) {
            LatticeVector B = sl_action(M, A);
            CHECK(B.det() == A.det());
            if (A.det() != 0) {
                Majorant ma = h_g_majorant(A, z);
                Majorant mb = h_g_majorant(B, moebius(M, z));
                CHECK(mb.h == doctest::Approx(ma.h).epsilon(1e-9));
            }
        }
        // identity acts trivially
        Mat2 I{FieldElement::one(D), FieldElement::zero(D), FieldElement::zero(D),
               FieldElement::one(D)};
        CHECK(sl_action(I, A) == A);
    }
}

TEST_CASE("dual lattice membership matches the defining scaling") {
    long D = 5;
    FractionalIdeal OK = FractionalIdeal::ring_of_integers(D);
    FieldElement inv_sqrt5 = FieldElement::one(D) / FieldElement::sqrt_disc(D);
    LatticeVector A{Rat(1), Rat(0), inv_sqrt5};
    CHECK(in_dual_lattice(A, OK));
    CHECK(!in_lattice(A, OK));
    LatticeVector B{Rat(2), Rat(3), FieldElement::omega(D)};
    CHECK(in_lattice(B, OK));
    CHECK(in_dual_lattice(B, OK));
    LatticeVector C{Rat(1, 2), Rat(0), inv_sqrt5};
    CHECK(!in_dual_lattice(C, OK));
}

TEST_CASE("enumerate_dual is complete against the naive box oracle") {
    for (long D : {5L, 13L}) {
        FractionalIdeal OK = FractionalIdeal::ring_of_integers(D);
        for (int cfg = 0; cfg < 5; ++cfg) {
            double r = 2.0 + 0.7 * cfg;
            EvalPoint z({0.1 * cfg, 0.9 + 0.2 * cfg}, {-0.15 * cfg, 1.1 - 0.1 * cfg});
            long m = 1 + cfg % 3;
            auto fast = enumerate_dual(OK, m, z, r);
            auto slow = naive_box_enum(OK, m, z, r, 24);
            CHECK(fast == slow);
            // pairs with -A, membership and determinant exact
            Rat target = Rat(m) / (OK.norm() * Rat(D));
            std::set<LatticeVector> set(fast.begin(), fast.end());
            for (const auto& A : fast) {
                CHECK(set.count(A.neg()) == 1);
                CHECK(A.det() == target);
                CHECK(in_dual_lattice(A, OK));
            }
            CHECK(fast.size() % 2 == 0);
        }
    }
}

TEST_CASE("lambda orbits for D=5: m=1 single orbit at 1/sqrt(5), m=2 empty") {
    FractionalIdeal OK = FractionalIdeal::ring_of_integers(5);
    HZData h1 = lambda_set(OK, 1);
    REQUIRE(h1.orbit_reps.size() == 1);
    FieldElement inv_sqrt5 = FieldElement::one(5) / FieldElement::sqrt_disc(5);
    CHECK(h1.orbit_reps[0] == inv_sqrt5);
    CHECK(lambda_set(OK, 2).empty());
    HZData h4 = lambda_set(OK, 4); // single orbit through 2/sqrt(5)
    CHECK(h4.orbit_reps.size() == 1);
    // contract: N(lam) * D / N(a) = -m exactly
    for (long m : {1L, 4L, 5L, 9L, 11L}) {
        for (const auto& lam : lambda_set(OK, m).orbit_reps) {
            CHECK(lam.norm() * Rat(5) == Rat(-m));
            CHECK(lam.sign_first() > 0);
            CHECK(lam.sign_second() < 0);
        }
    }
}

TEST_CASE("lambda orbit representatives are pairwise inequivalent") {
    FractionalIdeal OK = FractionalIdeal::ring_of_integers(13);
    const FieldContext& ctx = FieldContext::get(13);
    FieldElement e2 = ctx.eps0 * ctx.eps0;
    for (long m : {1L, 3L, 4L}) {
        auto reps = lambda_set(OK, m).orbit_reps;
        for (size_t i = 0; i < reps.size(); ++i)
            for (size_t j = i + 1; j < reps.size(); ++j) {
                FieldElement q = reps[i] / reps[j];
                // q must not be a power of eps0^2
                FieldElement acc = FieldElement::one(13);
                for (int k = 0; k < 6; ++k) {
                    CHECK(q != acc);
                    CHECK(q * acc != FieldElement::one(13));
                    acc = acc * e2;
                }
            }
    }
}

TEST_CASE("reduced set and Weyl vector for D=5, m=1, w=(1,1)") {
    // w = (1,1) is the embedding pair of 1 and lies exactly on the wall of
    // lambda = 1/sqrt(5); the >= 0 convention applies through the exact pairing
    FractionalIdeal OK = FractionalIdeal::ring_of_integers(5);
    WeylData wd = reduced_and_weyl_exact(OK, 1, FieldElement::one(5));
    REQUIRE(wd.reduced.size() == 1);
    FieldElement inv_sqrt5 = FieldElement::one(5) / FieldElement::sqrt_disc(5);
    CHECK(wd.reduced[0] == inv_sqrt5);
    // rho = eps0^{-1}/sqrt(5) = (5 - sqrt(5))/10
    CHECK(wd.rho == FieldElement(5, 5, -1, 10));
    CHECK(wd.rho.is_totally_positive());
    // the floating variant, off the wall, picks the same orbit data
    WeylData wf = reduced_and_weyl(OK, 1, {1.05, 1.0});
    CHECK(wf.reduced == wd.reduced);
    CHECK(wf.rho == wd.rho);
}

TEST_CASE("empty lambda set gives empty reduced data and zero Weyl vector") {
    FractionalIdeal OK = FractionalIdeal::ring_of_integers(5);
    WeylData wd = reduced_and_weyl(OK, 2, {1.0, 1.0});
    CHECK(wd.reduced.empty());
    CHECK(wd.rho.is_zero());
}

TEST_CASE("Weyl data is locally constant inside a chamber") {
    FractionalIdeal OK = FractionalIdeal::ring_of_integers(5);
    // weights on the same side of every wall give identical reduced sets
    WeylData w1 = reduced_and_weyl(OK, 1, {2.0, 1.0});
    WeylData w2 = reduced_and_weyl(OK, 1, {2.3, 1.1});
    CHECK(w1.reduced == w2.reduced);
    CHECK(w1.rho == w2.rho);
    // crossing the wall y1 = y2 of lambda = 1/sqrt(5) changes the set
    WeylData w3 = reduced_and_weyl(OK, 1, {1.0, 2.0});
    CHECK(w1.reduced != w3.reduced);
}

TEST_CASE("weight on a wall is rejected") {
    FractionalIdeal OK = FractionalIdeal::ring_of_integers(5);
    // tr(lam * (1,1)) = 0 for lam = 1/sqrt(5)
    CHECK_THROWS_AS(reduced_and_weyl(OK, 1, {1.0, 1.0 + 1e-15}), std::invalid_argument);
    CHECK_THROWS_AS(reduced_and_weyl(OK, 1, {-1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("rho is totally positive whenever the reduced set is nonempty") {
    for (long D : {5L, 13L, 17L}) {
        FractionalIdeal OK = FractionalIdeal::ring_of_integers(D);
        for (long m = 1; m <= 12; ++m) {
            WeylData wd = reduced_and_weyl(OK, m, {1.7, 1.0});
            if (!wd.reduced.empty()) CHECK(wd.rho.is_totally_positive());
        }
    }
}

TEST_CASE("lattice translation law under cusp transport matrices") {
    // for M in SL(a, b): M.L(a^2 b) = N(a) L(b), checked on generator images
    long D = 5;
    FractionalIdeal OK = FractionalIdeal::ring_of_integers(D);
    FieldElement alpha = FieldElement::omega(D), beta = FieldElement(D, 2, 0, 1);
    Mat2 M = cusp_transport(alpha, beta, OK);
    FractionalIdeal a = FractionalIdeal::from_generators(D, {alpha, beta});
    FractionalIdeal a2b = a * a; // b = O_K
    Rat Na = a.norm();

    // generators of L(a^2 b): a-entry, b-entry, lambda-entries
    std::vector<LatticeVector> gens;
    gens.push_back({Rat(1), Rat(0), FieldElement::zero(D)});
    gens.push_back({Rat(0), a2b.norm(), FieldElement::zero(D)});
    auto lb = a2b.basis();
    gens.push_back({Rat(0), Rat(0), lb[0]});
    gens.push_back({Rat(0), Rat(0), lb[1]});
    for (const auto& g : gens) {
        LatticeVector img = sl_action(M, g);
        // img / N(a) must lie in L(O_K)
        LatticeVector scaled{img.a / Na, img.b / Na, img.lam / Na};
        CHECK(in_lattice(scaled, OK));
    }
    // and back: M^{-1} maps N(a) L(b) into L(a^2 b)
    Mat2 Minv = M.inverse();
    std::vector<LatticeVector> gens_b;
    gens_b.push_back({Na, Rat(0), FieldElement::zero(D)});
    gens_b.push_back({Rat(0), Na, FieldElement::zero(D)});
    gens_b.push_back({Rat(0), Rat(0), FieldElement::from_rational(D, Na)});
    gens_b.push_back({Rat(0), Rat(0), FieldElement::omega(D) * Na});
    for (const auto& g : gens_b) {
        LatticeVector img = sl_action(Minv, g);
        CHECK(in_lattice(img, a2b));
    }
}

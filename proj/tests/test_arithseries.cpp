#include <doctest.h>

#include "hmgreen/arithseries.hpp"

#include <cmath>

using namespace hmgreen;

namespace {

FractionalIdeal OK5() { return FractionalIdeal::ring_of_integers(5); }

} // namespace

TEST_CASE("exponential sum pinned value and integrality") {
    // D=5, a=O_K, m=1, nu=0, b=1: cosets k/sqrt(5), condition k^2 = 1 mod 5
    CHECK(gsum_count(OK5(), 1, 1) == 2);
    std::complex<double> g = gsum(OK5(), 1, FieldElement::zero(5), 1);
    CHECK(g.real() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(g.imag()) < 1e-12);
    // integer values for all b <= 25
    for (long b = 1; b <= 25; ++b) {
        std::complex<double> v = gsum(OK5(), 1, FieldElement::zero(5), b);
        CHECK(std::abs(v.imag()) < 1e-10);
        CHECK(std::abs(v.real() - std::round(v.real())) < 1e-10);
        CHECK(Int(static_cast<long>(std::round(v.real()))) == gsum_count(OK5(), 1, b));
    }
}

TEST_CASE("exponential sum symmetry under nu -> -nu") {
    FractionalIdeal dinv = FractionalIdeal::different_inv(5);
    auto g = dinv.basis();
    for (long b : {1L, 2L, 3L, 5L, 7L}) {
        for (int i = -2; i <= 2; ++i) {
            for (int j = -2; j <= 2; ++j) {
                FieldElement nu = g[0] * Rat(i) + g[1] * Rat(j);
                std::complex<double> p = gsum(OK5(), 1, nu, b);
                std::complex<double> n = gsum(OK5(), 1, -nu, b);
                CHECK(std::abs(p - n) < 1e-12);
            }
        }
    }
}

TEST_CASE("exponential sum is independent of the coset system") {
    for (long b : {2L, 3L, 4L}) {
        auto reps = quotient_reps(OK5(), b);
        // shift every representative by an element of b*a
        FieldElement shift = FieldElement::omega(5) * Rat(b);
        std::vector<FieldElement> shifted;
        for (size_t i = 0; i < reps.size(); ++i)
            shifted.push_back(i % 2 ? reps[i] + shift : reps[i] - shift);
        FieldElement nu = FieldElement::one(5) / FieldElement::sqrt_disc(5);
        std::complex<double> v1 = gsum(OK5(), 3, nu, b);
        std::complex<double> v2 = gsum_with_reps(OK5(), 3, nu, b, shifted);
        CHECK(std::abs(v1 - v2) < 1e-12);
    }
}

TEST_CASE("exponential sum magnitude obeys the term-count bound") {
    FractionalIdeal dinv = FractionalIdeal::different_inv(5);
    FieldElement nu = dinv.basis()[0] + dinv.basis()[1];
    for (long b = 1; b <= 10; ++b) {
        CHECK(std::abs(gsum(OK5(), 2, nu, b)) <= b * b * 5.0 + 1e-9);
    }
}

TEST_CASE("gsum rejects nu outside a d^{-1}") {
    FieldElement bad(5, 1, 0, 7);
    CHECK_THROWS_AS(gsum(OK5(), 1, bad, 2), std::invalid_argument);
}

TEST_CASE("divisor sigma pinned values for D=5") {
    CHECK(divisor_sigma(OK5(), 1, Rat(-1)).rational_part == Rat(2));
    CHECK(divisor_sigma(OK5(), 4, Rat(-1)).rational_part == Rat(6));
    CHECK(divisor_sigma(OK5(), 4, Rat(1)).rational_part == Rat(6));
    CHECK(divisor_sigma(OK5(), 2, Rat(-1)).is_zero()); // chi_5(2) = -1 blocks every divisor
    CHECK_THROWS_AS(divisor_sigma(FractionalIdeal::ring_of_integers(8), 1, Rat(1)),
                    unsupported_error);
}

TEST_CASE("divisor sigma functional equation holds exactly") {
    for (long D : {5L, 13L, 17L}) {
        FractionalIdeal OK = FractionalIdeal::ring_of_integers(D);
        FractionalIdeal dinv = FractionalIdeal::different_inv(D);
        for (long m = 1; m <= 50; ++m) {
            for (long s : {1L, 3L}) {
                for (const auto& a : {OK, dinv}) {
                    SigmaValue plus = divisor_sigma(a, m, Rat(s));
                    SigmaValue minus = divisor_sigma(a, m, Rat(-s));
                    CHECK(plus.exact_equal(minus));
                }
            }
        }
    }
}

TEST_CASE("sigma derivative: finite differences, m=1 vanishing, oddness") {
    double h = 1e-5;
    double fd = (divisor_sigma(OK5(), 4, Rat(0)).value() -
                 divisor_sigma(OK5(), 4, Rat(-2)).value()) /
                2.0; // placeholder replaced below by rational-step difference
    (void)fd;
    // central finite difference of sigma at integer-valued nodes is not
    // available exactly; use the floating evaluator instead
    auto sigma_float = [&](double s) {
        // |m|^{(1-s)/2} sum d^s (chi + chi) with the same character data
        double acc = 0;
        for (long d : {1L, 2L, 4L}) {
            int f = (chi_D(5, d) + chi_D(5, 4 / d));
            acc += f * std::pow(4.0, (1 - s) / 2) * std::pow(double(d), s);
        }
        return acc;
    };
    double got = sigma_derivative(OK5(), 4, -1.0);
    double ref = (sigma_float(-1 + h) - sigma_float(-1 - h)) / (2 * h);
    CHECK(std::abs(got - ref) < 1e-8);
    CHECK(sigma_derivative(OK5(), 1, 0.7) == doctest::Approx(0.0).epsilon(1e-14));
    for (double s : {0.5, 1.0, 2.0}) {
        CHECK(std::abs(sigma_derivative(OK5(), 4, s) + sigma_derivative(OK5(), 4, -s)) < 1e-8);
    }
}

TEST_CASE("regularization constants: q(O_K, 1) = 5 at D = 5 and the volume chain") {
    RegularizationConstants rc = regularization_constants(OK5(), 1);
    CHECK(rc.q == Rat(5));
    REQUIRE(rc.L.has_value());
    // q * zeta_K(-1) = 2 vol(T(a,m)) with vol = sigma(a,m,-1)/24
    const FieldContext& ctx = FieldContext::get(5);
    Rat vol = divisor_sigma(OK5(), 1, Rat(-1)).rational_part / 24;
    CHECK(rc.q * ctx.zetaK_minus1 == 2 * vol);
    // sigma = 0 cases flag L as unavailable
    RegularizationConstants rc2 = regularization_constants(OK5(), 2);
    CHECK(rc2.q == 0);
    CHECK(!rc2.L.has_value());
}

TEST_CASE("q growth stays quadratically bounded") {
    double worst = 0;
    for (long m = 1; m <= 200; ++m) {
        Rat q = regularization_constants(OK5(), m).q;
        worst = std::max(worst, to_double(q) / (double(m) * m));
        CHECK(sign(q) >= 0);
        CHECK((q == 0) == divisor_sigma(OK5(), m, Rat(-1)).is_zero());
    }
    CHECK(worst < 10.0);
}

TEST_CASE("Dirichlet identity: counted sums equal convolution coefficients") {
    // hand value at b = 1: coefficient is chi_5(1) + chi_5(1) = 2
    auto checks = dirichlet_identity_check(OK5(), 1, 1);
    REQUIRE(checks.size() == 1);
    CHECK(checks[0].lhs == 2);
    CHECK(checks[0].rhs == 2);
    // zero-sigma case: both sides vanish for every b
    for (const auto& c : dirichlet_identity_check(OK5(), 2, 12)) {
        CHECK(c.lhs == 0);
        CHECK(c.rhs == 0);
    }
    // moderate sweep across fields
    for (long D : {5L, 13L, 17L}) {
        FractionalIdeal OK = FractionalIdeal::ring_of_integers(D);
        for (long m = 1; m <= 6; ++m) {
            for (const auto& c : dirichlet_identity_check(OK, m, 16)) {
                CHECK(c.lhs == c.rhs);
            }
        }
    }
}

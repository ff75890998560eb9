#ifndef HMGREEN_ARITHSERIES_HPP
#define HMGREEN_ARITHSERIES_HPP

// Arithmetic series attached to an ideal: the finite exponential sums G^b,
// the divisor sum sigma with its functional equation and derivative, the
// regularization constants q(a,m) and L(a,m), and the exact Dirichlet-series
// identity linking G^b(a,m,0) to sigma.

#include "hmgreen/ideals.hpp"

#include <complex>
#include <optional>

namespace hmgreen {

// G^b(a, m, nu) = sum over lambda in a d^{-1} / (b a) with
// N(lambda)/N(a) = -m/D (mod b) of e(tr(nu lambda' / (N(a) b))).
// Exact angles; for nu = 0 the value is the integer solution count.
std::complex<double> gsum(const FractionalIdeal& a, long m, const FieldElement& nu, long b);
Int gsum_count(const FractionalIdeal& a, long m, long b);

// test hook: same sum over a caller-supplied coset system
std::complex<double> gsum_with_reps(const FractionalIdeal& a, long m, const FieldElement& nu,
                                    long b, const std::vector<FieldElement>& reps);

// sigma(a, m, s) = |m|^{(1-s)/2} sum_{d | m} d^s prod_{p | D}
//                  (chi_{D(p)}(d) + chi_{D(p)}(N(c) m / d)),
// c the coprime-to-D genus representative; exact value x + y sqrt(|m|)
struct SigmaValue {
    long m = 0;
    Rat s;
    Rat rational_part;   // x
    Rat sqrt_m_part;     // y, zero when (1-s)/2 is integral or m is a square
    double value() const;
    bool exact_equal(const SigmaValue& o) const {
        return rational_part == o.rational_part && sqrt_m_part == o.sqrt_m_part;
    }
    bool is_zero() const { return rational_part == 0 && sqrt_m_part == 0; }
};

SigmaValue divisor_sigma(const FractionalIdeal& a, long m, const Rat& s);
// floating evaluation at arbitrary real s
double divisor_sigma_value(const FractionalIdeal& a, long m, double s);
// closed-form s-derivative of sigma at real s
double sigma_derivative(const FractionalIdeal& a, long m, double s);

struct RegularizationConstants {
    Rat q;                    // -sigma(a,m,-1) / L(-1,chi_D), exact
    std::optional<double> L;  // absent when sigma(a,m,-1) = 0
};

RegularizationConstants regularization_constants(const FractionalIdeal& a, long m);

// per-b comparison of the counted G^b(a,m,0) with the coefficient of b^{-s} in
// |m|^{-s/2} zeta(s-1)/L(s,chi_D) sigma(a,m,1-s), by exact Dirichlet convolution
struct DirichletCheck {
    long b;
    Int lhs; // counted exponential sum
    Int rhs; // convolution coefficient
};

std::vector<DirichletCheck> dirichlet_identity_check(const FractionalIdeal& a, long m, long B);

} // namespace hmgreen

#endif

#ifndef HMGREEN_NUMBERFIELD_HPP
#define HMGREEN_NUMBERFIELD_HPP

// Exact arithmetic in the real quadratic field K = Q(sqrt(D)):
// elements (p + q*sqrt(D))/r in lowest terms, conjugation, norm, trace,
// fundamental units, the Kronecker character chi_D and its L-values.
//
// Convention: sqrt(D) > 0, the identity embedding is the "first" one and
// conjugation gives the "second" one.

#include "hmgreen/rational.hpp"

#include <array>
#include <compare>
#include <iosfwd>
#include <utility>

namespace hmgreen {

class FieldElement {
public:
    FieldElement() : disc_(0), p_(0), q_(0), r_(1) {}
    FieldElement(long disc, Int p, Int q, Int r = 1);
    static FieldElement from_rational(long disc, const Rat& x);
    static FieldElement zero(long disc) { return FieldElement(disc, 0, 0, 1); }
    static FieldElement one(long disc) { return FieldElement(disc, 1, 0, 1); }
    static FieldElement sqrt_disc(long disc) { return FieldElement(disc, 0, 1, 1); }
    // omega = (D + sqrt(D))/2, so that O_K = Z + omega Z
    static FieldElement omega(long disc) { return FieldElement(disc, disc, 1, 2); }

    long disc() const { return disc_; }
    const Int& p() const { return p_; }
    const Int& q() const { return q_; }
    const Int& r() const { return r_; }

    bool is_zero() const { return p_ == 0 && q_ == 0; }
    bool is_rational() const { return q_ == 0; }
    Rat rational_value() const; // throws if not rational

    FieldElement conj() const { return FieldElement(disc_, p_, -q_, r_); }
    Rat norm() const { return Rat(p_ * p_ - Int(disc_) * q_ * q_) / Rat(r_ * r_); }
    Rat trace() const { return Rat(2 * p_) / Rat(r_); }

    FieldElement operator-() const { return FieldElement(disc_, -p_, -q_, r_); }
    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const; // exact, o != 0
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    FieldElement operator*(const Rat& c) const;
    FieldElement operator/(const Rat& c) const;
    FieldElement operator+(const Rat& c) const { return *this + from_rational(disc_, c); }
    FieldElement operator-(const Rat& c) const { return *this - from_rational(disc_, c); }

    FieldElement pow(long k) const; // integer exponent, negative allowed for units/nonzero

    bool operator==(const FieldElement& o) const {
        return disc_ == o.disc_ && p_ == o.p_ && q_ == o.q_ && r_ == o.r_;
    }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    // total order for use as a map key (not the embedding order)
    std::strong_ordering operator<=>(const FieldElement& o) const;

    // exact sign of the first/second real embedding
    int sign_first() const;
    int sign_second() const { return conj().sign_first(); }
    bool is_totally_positive() const { return sign_first() > 0 && sign_second() > 0; }

    // embedding comparisons, exact: first embedding of (*this - o)
    bool less_first(const FieldElement& o) const { return (*this - o).sign_first() < 0; }

    // floating embeddings, accurate to double precision
    double embed_first() const;
    double embed_second() const { return conj().embed_first(); }

    std::string str() const;

private:
    long disc_;
    Int p_, q_, r_; // (p + q sqrt(D)) / r, r > 0, gcd(p, q, r) = 1
    void normalize();
};

std::ostream& operator<<(std::ostream& os, const FieldElement& x);

// sign of the q-coefficient of u * conj(v); this is the exact sign of
// u1*v2 - u2*v1 in the embedding plane (cross product), since
// u*conj(v) - conj(u*conj(v)) = 2 q sqrt(D)
int cross_sign(const FieldElement& u, const FieldElement& v);

bool is_fundamental_discriminant(long D);

struct FieldContext {
    long D = 0;
    FieldElement eps0; // smallest unit > 1
    FieldElement eps1; // smallest totally positive unit > 1
    Rat L_minus1;      // L(-1, chi_D), exact
    Rat zetaK_minus1;  // zeta_K(-1) = -L(-1, chi_D)/12

    static const FieldContext& get(long D); // cached, thread safe
};

// (eps0, eps1) for a fundamental discriminant D
std::pair<FieldElement, FieldElement> fundamental_units(long D);

// full Kronecker symbol (a|n) for any integers, with the standard extension
// to n <= 0: (a|0) is 1 only for a = +-1, (a|-1) is the sign of a, and the
// even part of n contributes (a|2) = 0, +1, -1 by a mod 8
int kronecker(long long a, long long n);
// chi_D(n) = (D|n)
int chi_D(long D, long long n);

// exact L(-1, chi_D) = -B_{2,chi}/2 via generalized Bernoulli numbers
Rat l_value_minus1(long D);

// numerical L(s, chi_D) and d/ds L(s, chi_D) via Hurwitz zeta
// (Euler-Maclaurin); rel_tol governs the reported-tail check
struct LValue {
    double value = 0;
    double deriv = 0;
};
LValue l_value_and_derivative(long D, double s, double rel_tol = 1e-11);
double l_value(long D, double s);

// Hurwitz zeta zeta(s, x) for real s != 1, x > 0 (exposed for tests)
double hurwitz_zeta(double s, double x);
// Riemann zeta via the same Euler-Maclaurin core
double riemann_zeta_em(double s);

} // namespace hmgreen

#endif

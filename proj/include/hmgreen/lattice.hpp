#ifndef HMGREEN_LATTICE_HPP
#define HMGREEN_LATTICE_HPP

// The quadratic space V of symmetric-conjugate 2x2 matrices over K with the
// determinant form, the lattices L(a) and their duals, the majorant q_z
// attached to points of H^2, complete short-vector enumeration, and the
// divisor data (lambda orbits, reduced sets, Weyl vectors).

#include "hmgreen/ideals.hpp"

#include <complex>
#include <optional>

namespace hmgreen {

struct LatticeVector {
    Rat a, b;          // A = [[a, lam'], [lam, b]]
    FieldElement lam;

    Rat det() const { return a * b - lam.norm(); }
    LatticeVector neg() const { return {-a, -b, -lam}; }
    bool operator==(const LatticeVector& o) const {
        return a == o.a && b == o.b && lam == o.lam;
    }
    bool operator<(const LatticeVector& o) const {
        return std::tie(a, b, lam) < std::tie(o.a, o.b, o.lam);
    }
    std::string str() const;
};

struct EvalPoint {
    std::complex<double> z1, z2;
    EvalPoint(std::complex<double> z1_, std::complex<double> z2_) : z1(z1_), z2(z2_) {
        if (!(z1.imag() > 0) || !(z2.imag() > 0))
            throw std::invalid_argument("evaluation point must have positive imaginary parts");
    }
    double x1() const { return z1.real(); }
    double y1() const { return z1.imag(); }
    double x2() const { return z2.real(); }
    double y2() const { return z2.imag(); }
};

struct Majorant {
    double h;                  // h(A, z) >= 0
    std::optional<double> g;   // h / det, absent for isotropic A
    double qz;                 // det + 2h, the positive definite majorant
};

Majorant h_g_majorant(const LatticeVector& A, const EvalPoint& z);
// the complementary formula |b conj(z1) z2 - lam conj(z1) - lam' z2 + a|^2 / (4 y1 y2);
// equals det + h, used as a cross check on h
double q_wtilde(const LatticeVector& A, const EvalPoint& z);

// exact membership predicates
bool in_lattice(const LatticeVector& A, const FractionalIdeal& a);
bool in_dual_lattice(const LatticeVector& A, const FractionalIdeal& a);

// M.A = M A (M')^T, exact; requires det M = 1
LatticeVector sl_action(const Mat2& M, const LatticeVector& A);
// Moebius action componentwise, conjugate entries on the second factor
EvalPoint moebius(const Mat2& M, const EvalPoint& z);

// all A in L(a)^dual with det(A) = m/(N(a)D) and q_z(A) <= R, complete
std::vector<LatticeVector> enumerate_dual(const FractionalIdeal& a, long m,
                                          const EvalPoint& z, double R);

struct HZData {
    long m = 0;
    // one representative per (eps0^2)-orbit of { lam in a d^{-1} : lam > 0 > lam',
    // N(lam) = -m N(a)/D }, normalized to the window tr(lam) >= 0 > tr(lam eps0^{-2})
    std::vector<FieldElement> orbit_reps;
    bool empty() const { return orbit_reps.empty(); }
};

HZData lambda_set(const FractionalIdeal& a, long m);

struct WeylData {
    std::vector<FieldElement> reduced; // R(a, m, w), one per orbit
    FieldElement rho;                  // sum of reduced / (eps0^2 - 1), exact
};

// reduced representatives and Weyl vector for a weight w in (R+)^2;
// w on a wall tr(lam w) = 0 is rejected
WeylData reduced_and_weyl(const FractionalIdeal& a, long m,
                          std::pair<double, double> w);
// exact variant with w = (beta, beta') for a totally positive field element;
// wall hits resolve by the >= 0 convention
WeylData reduced_and_weyl_exact(const FractionalIdeal& a, long m,
                                const FieldElement& beta);

} // namespace hmgreen

#endif

#ifndef HMGREEN_GREEN_HPP
#define HMGREEN_GREEN_HPP

// Evaluators for the automorphic Green function attached to (a, m): the direct
// lattice sum at Re(s) > 1, the regularized value at s = 1 through its explicit
// Fourier expansion, an independent second route through the s-parametrized
// Fourier expansion extrapolated to s = 1, the smooth decomposition, Fourier
// coefficients of the kernels, and finite-difference Laplacians.

#include "hmgreen/arithseries.hpp"
#include "hmgreen/borcherds.hpp"
#include "hmgreen/lattice.hpp"
#include "hmgreen/specialfun.hpp"

#include <map>
#include <string>

namespace hmgreen {

struct Truncation {
    double majorant_radius = 60.0;       // lattice sum cutoff for q_z
    long b_max = 48;                     // exponential-sum depth
    double nu_trace_max = 0;             // 0: derived from tol
    int n_max = 30;                      // smooth decomposition depth
    std::vector<double> s_sequence = {1.1, 1.05, 1.025, 1.0125, 1.00625};
    double tol = 1e-6;                   // truncation/extrapolation target

    void validate() const;
};

struct GreenValue {
    double value = 0;
    double tail_bound = 0;
    std::map<std::string, double> parts;
};

// direct lattice sum of Q_{s-1}(1 + 2g(A, z)) over det(A) = m/(N(a)D)
GreenValue phi_direct(const FractionalIdeal& a, long m, Cplx s, const EvalPoint& z,
                      const Truncation& t);

// regularized value at s = 1 via the explicit Fourier expansion
// (constant terms, local product logs, Bessel blocks)
GreenValue phi_fourier(const FractionalIdeal& a, long m, const EvalPoint& z,
                       const Truncation& t);

// unregularized Fourier evaluation at real s > 1 (second route)
double phi_s_fourier(const FractionalIdeal& a, long m, double s, const EvalPoint& z,
                     const Truncation& t);

// pole-subtracted s -> 1 extrapolation of phi_s_fourier along t.s_sequence
GreenValue phi_regularized_direct(const FractionalIdeal& a, long m, const EvalPoint& z,
                                  const Truncation& t);

// (Phi_0, ..., Phi_N) with Phi_n = Gamma(s+n)^2/Gamma(2s+n) Psi(s+n)/(2 n!),
// all sharing one lattice enumeration of radius t.majorant_radius
std::vector<double> smooth_decomposition(const FractionalIdeal& a, long m, double s,
                                         const EvalPoint& z, int N, const Truncation& t);

// smooth kernel sum Psi(a, m, s, z) over the same enumeration (finite on divisors)
double smooth_kernel(const FractionalIdeal& a, long m, double s, const EvalPoint& z,
                     const Truncation& t);

// Fourier coefficients b_s^B of the Q-kernel sum over the lattice `frak_b`:
// the constant coefficient for nu = 0 and the I/J x K x K product otherwise
Cplx fourier_coeff_b(Cplx s, double B, const FractionalIdeal& frak_b,
                     const FieldElement& nu, std::pair<double, double> y);
// constant Fourier coefficient of the smooth kernel analogue
double fourier_coeff_b_smooth0(double s, double B, const FractionalIdeal& frak_b,
                               std::pair<double, double> y);

// Fourier expansion of the smooth kernel's b = 0 part at s = 1
double psi0_fourier(const FractionalIdeal& a, long m, const EvalPoint& z,
                    const Truncation& t);

// hyperbolic Laplacian y_j^2 (d^2/dx_j^2 + d^2/dy_j^2) by central differences
// with one Richardson step (h, h/2); sign fixed by Delta_j log y_j = -1
double laplace_fd(const std::function<double(const EvalPoint&)>& f, const EvalPoint& z,
                  int j, double h);

// standalone identity: the double series over (lambda, n) of
// (e^{-2 pi n |tr(lambda y)|} - e^{-2 pi n (lambda y1 - lambda' y2)})/n
// times 2 cos(2 pi n tr(lambda x)) equals
// -4 pi sum beta(lambda y1, lambda' y2) + [f5 + f6]
double log_series_lhs(const FractionalIdeal& a, long m, const EvalPoint& z,
                      const Truncation& t);
double log_series_rhs(const FractionalIdeal& a, long m, const EvalPoint& z,
                      const Truncation& t);

} // namespace hmgreen

#endif

#ifndef HMGREEN_BORCHERDS_HPP
#define HMGREEN_BORCHERDS_HPP

// Local products at the cusp at infinity: the sign-normalized infinite product
// over the lambda orbits, its Weyl-vector representation, local coordinates on
// the resolved cusp, vanishing orders along the exceptional curves, and the
// log-norm blocks consumed by the Green function evaluator.

#include "hmgreen/lattice.hpp"
#include "hmgreen/specialfun.hpp"

namespace hmgreen {

struct ProductTruncation {
    double factor_cutoff = 1e-18; // drop orbit tails once |q| falls below this
    double divisor_guard = 1e-9;  // reject evaluation this close to a zero
    int max_window = 400;         // per-orbit factor cap
};

// Weyl-vector form: e(tr(rho z)) prod_{lambda in Lambda_w} (1 - e(tr(lambda z)))
Cplx local_product(const FractionalIdeal& a, long m, const EvalPoint& z,
                   std::pair<double, double> w, const ProductTruncation& t = {});

// definition form: prod over Lambda^+ of sigma_w(lambda) (e(|lambda| z1) - e(|lambda'| z2))
Cplx local_product_direct(const FractionalIdeal& a, long m, const EvalPoint& z,
                          std::pair<double, double> w, const ProductTruncation& t = {});

// first few factor values of the definition form, sorted, for permutation tests
std::vector<Cplx> local_product_factors(const FractionalIdeal& a, long m, const EvalPoint& z,
                                        std::pair<double, double> w, int count);

// smallest even n with n/(1 - eps0^2) integral
long minimal_admissible_power(long D);

struct InvarianceReport {
    double translation_delta = 0;
    double unit_delta = 0;
    double permutation_delta = 0;
};

// checks that the n-th power is invariant under translation by a^{-1} samples
// and under the squared fundamental unit; throws on inadmissible n
InvarianceReport invariance_check(const FractionalIdeal& a, long m, long n, int samples);

struct LocalCoordinates {
    Cplx u, v;
};

// (2 pi i z1, 2 pi i z2)^T = [[alpha, beta], [alpha', beta']] (log u, log v)^T
LocalCoordinates local_coordinates(const FieldElement& alpha, const FieldElement& beta,
                                   const EvalPoint& z);
EvalPoint local_coordinates_inverse(const FieldElement& alpha, const FieldElement& beta,
                                    const LocalCoordinates& uv);

// multiplicity tr(rho(a, m, A_k) A_k) for each boundary curve of the cusp cycle
std::vector<Rat> vanishing_orders(const FractionalIdeal& a, long m);

struct LogNormBlocks {
    double f5 = 0; // sum log |1 - e(|l| z1) conj(e(|l'| z2))|^2
    double f6 = 0; // -log |Psi|^2
    double combined() const { return f5 + f6; }
};

LogNormBlocks log_norm_block(const FractionalIdeal& a, long m, const EvalPoint& z,
                             const ProductTruncation& t = {});

} // namespace hmgreen

#endif

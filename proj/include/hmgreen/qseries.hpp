#ifndef HMGREEN_QSERIES_HPP
#define HMGREEN_QSERIES_HPP

// Exact q-expansion data: the generating-series coefficients c_m =
// -sigma(a,m,-1)/12, the normalized weight-2 Eisenstein coefficients, their
// exact proportionality constant, and the integral identity chain.

#include "hmgreen/arithseries.hpp"

namespace hmgreen {

struct QExpansion {
    std::vector<Rat> c;          // c_m = -sigma(a, m, -1)/12, m = 1..m_max
    std::vector<Rat> eisenstein; // 2 sigma(a, m, -1)/L(-1, chi_D)
    Rat proportionality;         // -L(-1, chi_D)/24, c_m = prop * eis_m
};

QExpansion qexp(const FractionalIdeal& a, long m_max);

struct IntegralIdentities {
    Rat vol;              // sigma(a, m, -1)/24
    Rat integral_phi;     // -2 vol = -q zeta_K(-1)
    Rat phi0_integral;    // -4 vol
    Rat phi_tail_integral; // +2 vol
    std::vector<std::pair<double, Rat>> phi_s_values; // (s, 2 vol / (s(s-1)))
    std::vector<std::pair<double, Rat>> psi_s_values; // (s, 4 vol / (s-1))
    bool chain_consistent; // -2 vol == -q zeta_K(-1) exactly
};

IntegralIdentities integral_identities(const FractionalIdeal& a, long m,
                                       const std::vector<Rat>& s_samples);

} // namespace hmgreen

#endif

#include "hmgreen/qseries.hpp"

namespace hmgreen {

QExpansion qexp(const FractionalIdeal& a, long m_max) {
    if (m_max < 1) throw std::invalid_argument("m_max must be >= 1");
    const FieldContext& ctx = FieldContext::get(a.disc());
    QExpansion out;
    out.proportionality = -ctx.L_minus1 / 24;
    for (long m = 1; m <= m_max; ++m) {
        SigmaValue sv = divisor_sigma(a, m, Rat(-1));
        if (sv.sqrt_m_part != 0) throw std::logic_error("sigma(a,m,-1) must be rational");
        out.c.push_back(-sv.rational_part / 12);
        out.eisenstein.push_back(2 * sv.rational_part / ctx.L_minus1);
    }
    return out;
}

IntegralIdentities integral_identities(const FractionalIdeal& a, long m,
                                       const std::vector<Rat>& s_samples) {
    const FieldContext& ctx = FieldContext::get(a.disc());
    SigmaValue sv = divisor_sigma(a, m, Rat(-1));
    if (sv.sqrt_m_part != 0) throw std::logic_error("sigma(a,m,-1) must be rational");
    Rat q = -sv.rational_part / ctx.L_minus1;

    IntegralIdentities out;
    out.vol = sv.rational_part / 24;
    out.integral_phi = -2 * out.vol;
    out.phi0_integral = -4 * out.vol;
    out.phi_tail_integral = 2 * out.vol;
    out.chain_consistent = (out.integral_phi == -q * ctx.zetaK_minus1);
    for (const Rat& s : s_samples) {
        if (s == 0 || s == 1) throw std::invalid_argument("s must avoid 0 and 1");
        out.phi_s_values.emplace_back(to_double(s), 2 * out.vol / (s * (s - 1)));
        out.psi_s_values.emplace_back(to_double(s), 4 * out.vol / (s - 1));
    }
    return out;
}

} // namespace hmgreen

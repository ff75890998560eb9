#ifndef HMGREEN_VERIFY_HPP
#define HMGREEN_VERIFY_HPP

// The verification battery: named checks with measured deltas against pinned
// tolerances, grouped into suites for the CLI and the acceptance runner.

#include "hmgreen/green.hpp"
#include "hmgreen/qseries.hpp"

#include <string>
#include <vector>

namespace hmgreen {

struct RunConfig {
    long disc = 5;
    std::string ideal = "OK";
    long m_max = 50;
    long b_max = 50;
    unsigned long seed = 1;
    int jobs = 1;
    Truncation trunc;

    void validate() const;
};

struct Check {
    std::string name;
    double delta = 0;   // measured deviation
    double tol = 0;     // pinned tolerance
    bool pass = false;
    std::string detail; // optional context
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;
    double seconds = 0;
    bool pass() const;
};

// individual criterion batteries (tolerances pinned inside)
std::vector<Check> check_sigma_functional_equation(long D, long m_max);
std::vector<Check> check_qexp_proportionality(long D, long m_max);
std::vector<Check> check_dirichlet_identity(long D, long m_max, long b_max);
std::vector<Check> check_two_route_green(long D, long m, int jobs, const Truncation& t);
std::vector<Check> check_smooth_decomposition(long D, long m, const Truncation& t);
std::vector<Check> check_laplace_equation(long D, long m, const Truncation& t);
std::vector<Check> check_eigenfunction_property();
std::vector<Check> check_integral_chain(long D, long m_max);
std::vector<Check> check_quadrature_identities();
std::vector<Check> check_hypergeometric_identity();
std::vector<Check> check_borcherds_suite();
std::vector<Check> check_growth_trend(long D, long m_max);
std::vector<Check> check_field_basics(long D);

// the 3x3 evaluation grid used by the two-route and smooth checks: corridor
// ratios around eps0^2, heights above 4m/(D N(a)), wall-repelling x offsets
std::vector<EvalPoint> acceptance_grid(const FractionalIdeal& a, long m);

// suite in {field, dirichlet, sigma, green2route, laplace, borcherds,
// integrals, growth, all}
SuiteReport run_suite(const std::string& suite, const RunConfig& cfg);
std::string suite_report_json(const SuiteReport& report);

} // namespace hmgreen

#endif

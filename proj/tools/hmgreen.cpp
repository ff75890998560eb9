// Batch front end: field data, divisor sums, exponential sums, Weyl vectors,
// Green function evaluation, local products, boundary multiplicities, exact
// q-expansions and the verification suites. JSON on stdout (CSV for tables);
// exit codes: 0 ok, 1 verification failure, 2 usage error, 3 precision failure.

#include "hmgreen/json_io.hpp"
#include "hmgreen/qseries.hpp"
#include "hmgreen/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>

using namespace hmgreen;

namespace {

std::pair<double, double> parse_pair(const std::string& s, const char* flag) {
    std::istringstream is(s);
    double w1, w2;
    char c;
    if (!(is >> w1 >> c >> w2) || c != ',')
        throw std::invalid_argument(std::string(flag) + " expects two comma-separated values");
    return {w1, w2};
}

void add_truncation_flags(CLI::App* cmd, const std::shared_ptr<Truncation>& t) {
    cmd->add_option("--radius", t->majorant_radius, "lattice sum cutoff for q_z");
    cmd->add_option("--bseries", t->b_max, "exponential-sum depth in Bessel blocks");
    cmd->add_option("--numax", t->nu_trace_max, "frequency trace cutoff (0 = auto)");
    cmd->add_option("--nmax", t->n_max, "smooth decomposition depth");
    cmd->add_option("--tol", t->tol, "truncation/extrapolation target");
}

int run(int argc, char** argv) {
    CLI::App app{
        "Green functions, local products and arithmetic series on Hilbert modular surfaces"};
    app.require_subcommand(1);

    long disc = 5;
    std::string ideal_spec = "OK";
    int jobs = 1;
    unsigned long seed = 1;
    if (const char* env = std::getenv("HMGREEN_JOBS")) jobs = std::max(1, std::atoi(env));
    app.add_option("--disc", disc, "fundamental discriminant of the real quadratic field");
    app.add_option("--ideal", ideal_spec,
                   "ideal: OK, diff, diffinv or {\"basis\": [[p,q,r],[p,q,r]]}");
    app.add_option("--jobs", jobs, "parallel workers for grid evaluations");
    app.add_option("--seed", seed, "seed for randomized property samples");
    bool json_flag = false;
    app.add_flag("--json", json_flag, "emit JSON (the default; flag kept for scripts)");

    long m = 1, b = 1, mmax = 50, bmax = 50, s_int = -1;
    std::string nu_spec = "0,0,1", z_spec = "0.1,1.5,0.2,1.2", w_spec = "1.37,1.0";
    std::string mode = "fourier", suite = "all", s_cplx = "2";
    bool csv = false, special = false;

    auto* cmd_field = app.add_subcommand("field", "fundamental units and exact L-values")->fallthrough();

    auto* cmd_sigma = app.add_subcommand("sigma", "divisor sum at integer s, exact")->fallthrough();
    cmd_sigma->add_option("--m", m)->required();
    cmd_sigma->add_option("--s", s_int, "integer s");

    auto* cmd_gsum = app.add_subcommand("gsum", "exponential sum G^b(a, m, nu)")->fallthrough();
    cmd_gsum->add_option("--m", m)->required();
    cmd_gsum->add_option("--b", b)->required();
    cmd_gsum->add_option("--nu", nu_spec, "frequency as p,q,r");

    auto* cmd_weyl = app.add_subcommand("weyl", "reduced lambda set and Weyl vector")->fallthrough();
    cmd_weyl->add_option("--m", m)->required();
    cmd_weyl->add_option("--w", w_spec, "weight vector w1,w2");

    auto t_green = std::make_shared<Truncation>();
    bool dump_vectors = false;
    auto* cmd_green = app.add_subcommand("green", "Green function evaluation")->fallthrough();
    cmd_green->add_option("--mode", mode, "direct | fourier | reg");
    cmd_green->add_flag("--dump-vectors", dump_vectors,
                        "include the enumerated lattice vectors (direct mode)");
    cmd_green->add_option("--m", m)->required();
    cmd_green->add_option("--s", s_cplx, "s as re[,im] for direct mode");
    cmd_green->add_option("--z", z_spec, "evaluation point x1,y1,x2,y2");
    add_truncation_flags(cmd_green, t_green);

    auto* cmd_bp = app.add_subcommand("borcherds", "local product at the cusp")->fallthrough();
    cmd_bp->add_option("--m", m)->required();
    cmd_bp->add_option("--z", z_spec, "evaluation point x1,y1,x2,y2");
    cmd_bp->add_option("--weyl", w_spec, "weight vector w1,w2");

    auto* cmd_mult = app.add_subcommand("multiplicities", "boundary multiplicity table")->fallthrough();
    cmd_mult->add_option("--m", m)->required();

    auto* cmd_qexp = app.add_subcommand("qexp", "exact q-expansion coefficients")->fallthrough();
    cmd_qexp->add_option("--mmax", mmax);
    cmd_qexp->add_flag("--csv", csv, "emit CSV instead of JSON");

    auto t_verify = std::make_shared<Truncation>();
    auto* cmd_verify = app.add_subcommand("verify", "identity verification suites")->fallthrough();
    cmd_verify->add_option(
        "--suite", suite,
        "field|dirichlet|sigma|green2route|laplace|borcherds|integrals|growth|all");
    cmd_verify->add_option("--mmax", mmax);
    cmd_verify->add_option("--bmax", bmax);
    add_truncation_flags(cmd_verify, t_verify);

    auto* cmd_selftest = app.add_subcommand("selftest", "special function battery")->fallthrough();
    cmd_selftest->add_flag("--special", special, "include the quadrature identity battery");

    app.parse(argc, argv);

    FractionalIdeal a = ideal_from_spec(disc, ideal_spec);

    if (cmd_field->parsed()) {
        const FieldContext& ctx = FieldContext::get(disc);
        Json j{{"disc", disc},
               {"eps0", field_element_to_json(ctx.eps0)},
               {"eps0_norm", rat_string(ctx.eps0.norm())},
               {"eps1", field_element_to_json(ctx.eps1)},
               {"L_minus1", rat_string(ctx.L_minus1)},
               {"zetaK_minus1", rat_string(ctx.zetaK_minus1)},
               {"precision", "exact"}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (cmd_sigma->parsed()) {
        SigmaValue sv = divisor_sigma(a, m, Rat(s_int));
        Json j{{"disc", disc},
               {"m", m},
               {"s", s_int},
               {"rational_part", rat_string(sv.rational_part)},
               {"sqrt_m_part", rat_string(sv.sqrt_m_part)},
               {"value", sv.value()},
               {"precision", "exact"}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (cmd_gsum->parsed()) {
        std::istringstream is(nu_spec);
        long long p, q, r;
        char c1, c2;
        if (!(is >> p >> c1 >> q >> c2 >> r) || c1 != ',' || c2 != ',')
            throw std::invalid_argument("--nu expects p,q,r");
        FieldElement nu(disc, Int(p), Int(q), Int(r));
        std::complex<double> v = gsum(a, m, nu, b);
        Json j{{"disc", disc},
               {"m", m},
               {"b", b},
               {"nu", field_element_to_json(nu)},
               {"re", v.real()},
               {"im", v.imag()},
               {"zero_frequency_count", gsum_count(a, m, b).str()},
               {"precision", "double"}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (cmd_weyl->parsed()) {
        auto w = parse_pair(w_spec, "--w");
        WeylData wd = reduced_and_weyl(a, m, w);
        Json reduced = Json::array();
        for (const auto& lam : wd.reduced) reduced.push_back(field_element_to_json(lam));
        Json j{{"disc", disc},
               {"m", m},
               {"w", Json::array({w.first, w.second})},
               {"reduced", reduced},
               {"rho", field_element_to_json(wd.rho)},
               {"precision", "exact"}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (cmd_green->parsed()) {
        EvalPoint z = eval_point_from_string(z_spec);
        GreenValue v;
        if (mode == "direct") {
            std::istringstream is(s_cplx);
            double re, im = 0;
            char c;
            is >> re;
            if ((is >> c) && c == ',') is >> im;
            v = phi_direct(a, m, Cplx(re, im), z, *t_green);
        } else if (mode == "fourier") {
            v = phi_fourier(a, m, z, *t_green);
        } else if (mode == "reg") {
            v = phi_regularized_direct(a, m, z, *t_green);
        } else {
            throw std::invalid_argument("unknown green mode: " + mode);
        }
        Json j = green_value_to_json(v);
        j["disc"] = disc;
        j["m"] = m;
        j["mode"] = mode;
        if (dump_vectors && mode == "direct") {
            Json arr = Json::array();
            for (const auto& A : enumerate_dual(a, m, z, t_green->majorant_radius))
                arr.push_back(lattice_vector_to_json(A));
            j["vectors"] = arr;
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (cmd_bp->parsed()) {
        EvalPoint z = eval_point_from_string(z_spec);
        auto w = parse_pair(w_spec, "--weyl");
        Cplx psi = local_product(a, m, z, w);
        LogNormBlocks lb = log_norm_block(a, m, z);
        Json j{{"disc", disc},
               {"m", m},
               {"re", psi.real()},
               {"im", psi.imag()},
               {"abs", std::abs(psi)},
               {"log_norm_f5", lb.f5},
               {"log_norm_f6", lb.f6},
               {"precision", "double"}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (cmd_mult->parsed()) {
        BoundaryCycle cyc = boundary_cycle(a.inverse());
        auto mults = vanishing_orders(a, m);
        Json curves = Json::array();
        for (size_t k = 0; k < cyc.points.size(); ++k) {
            curves.push_back(Json{{"k", k},
                                  {"A_k", field_element_to_json(cyc.points[k])},
                                  {"self_intersection", cyc.self_intersections[k]},
                                  {"multiplicity", rat_string(mults[k])}});
        }
        Json j{{"disc", disc}, {"m", m}, {"curves", curves}, {"precision", "exact"}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (cmd_qexp->parsed()) {
        QExpansion qe = qexp(a, mmax);
        if (csv) {
            std::cout << "m,c_m,eisenstein_m\n";
            for (long i = 1; i <= mmax; ++i)
                std::cout << i << "," << rat_string(qe.c[i - 1]) << ","
                          << rat_string(qe.eisenstein[i - 1]) << "\n";
        } else {
            Json cs = Json::array(), es = Json::array();
            for (long i = 0; i < mmax; ++i) {
                cs.push_back(rat_string(qe.c[i]));
                es.push_back(rat_string(qe.eisenstein[i]));
            }
            Json j{{"disc", disc},
                   {"proportionality", rat_string(qe.proportionality)},
                   {"c", cs},
                   {"eisenstein", es},
                   {"precision", "exact"}};
            std::cout << j.dump(2) << "\n";
        }
        return 0;
    }
    if (cmd_verify->parsed()) {
        RunConfig cfg;
        cfg.disc = disc;
        cfg.ideal = ideal_spec;
        cfg.m_max = mmax;
        cfg.b_max = bmax;
        cfg.seed = seed;
        cfg.jobs = jobs;
        cfg.trunc = *t_verify;
        SuiteReport rep = run_suite(suite, cfg);
        std::cout << suite_report_json(rep) << "\n";
        return rep.pass() ? 0 : 1;
    }
    if (cmd_selftest->parsed()) {
        SuiteReport rep;
        rep.suite = "selftest";
        for (auto& c : check_hypergeometric_identity()) rep.checks.push_back(c);
        if (special)
            for (auto& c : check_quadrature_identities()) rep.checks.push_back(c);
        std::cout << suite_report_json(rep) << "\n";
        return rep.pass() ? 0 : 1;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const hmgreen::precision_error& e) {
        std::cerr << "precision failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const hmgreen::unsupported_error& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

#include "hmgreen/arithseries.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace hmgreen {

// ---------------------------------------------------------------------------
// exponential sums
// ---------------------------------------------------------------------------

namespace {

// coset data for a d^{-1} / (b a): representative and k = D N(lambda)/N(a),
// which is an integer; the congruence class of lambda enters only through
// k mod (b D)
struct CosetTable {
    std::vector<std::pair<FieldElement, Int>> entries;
};

const CosetTable& coset_table(const FractionalIdeal& a, long b) {
    static std::map<std::pair<FractionalIdeal, long>, CosetTable> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(a, b);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    CosetTable t;
    for (auto& lam : quotient_reps(a, b)) {
        Rat k = lam.norm() * Rat(a.disc()) / a.norm();
        if (den(k) != 1) throw std::logic_error("norm scaling is not integral on a d^{-1}");
        t.entries.emplace_back(lam, num(k));
    }
    return cache.emplace(key, std::move(t)).first->second;
}

bool congruence_holds(const Int& k, long m, long b, long D) {
    // N(lambda)/N(a) = -m/D (mod b)  <=>  k = -m (mod b D)
    return mod_pos(k + m, Int(b) * D) == 0;
}

std::complex<double> angle_to_unit(const Rat& t) {
    double theta = 2 * M_PI * to_double(frac_part(t));
    return {std::cos(theta), std::sin(theta)};
}

} // namespace

std::complex<double> gsum_with_reps(const FractionalIdeal& a, long m, const FieldElement& nu,
                                    long b, const std::vector<FieldElement>& reps) {
    long D = a.disc();
    FractionalIdeal adinv = a * FractionalIdeal::different_inv(D);
    if (!adinv.contains(nu)) throw std::invalid_argument("nu is not in a d^{-1}");
    Rat scale = a.norm() * Rat(b);
    std::complex<double> acc = 0;
    for (const auto& lam : reps) {
        Rat k = lam.norm() * Rat(D) / a.norm();
        if (!congruence_holds(num(k), m, b, D)) continue;
        Rat t = (nu * lam.conj()).trace() / scale;
        acc += angle_to_unit(t);
    }
    return acc;
}

std::complex<double> gsum(const FractionalIdeal& a, long m, const FieldElement& nu, long b) {
    if (b < 1) throw std::invalid_argument("b must be >= 1");
    long D = a.disc();
    FractionalIdeal adinv = a * FractionalIdeal::different_inv(D);
    if (!adinv.contains(nu)) throw std::invalid_argument("nu is not in a d^{-1}");
    const CosetTable& t = coset_table(a, b);
    Rat scale = a.norm() * Rat(b);
    std::complex<double> acc = 0;
    for (const auto& [lam, k] : t.entries) {
        if (!congruence_holds(k, m, b, D)) continue;
        acc += angle_to_unit((nu * lam.conj()).trace() / scale);
    }
    return acc;
}

Int gsum_count(const FractionalIdeal& a, long m, long b) {
    if (b < 1) throw std::invalid_argument("b must be >= 1");
    long D = a.disc();
    const CosetTable& t = coset_table(a, b);
    Int count = 0;
    for (const auto& [lam, k] : t.entries)
        if (congruence_holds(k, m, b, D)) ++count;
    return count;
}

// ---------------------------------------------------------------------------
// divisor sums
// ---------------------------------------------------------------------------

namespace {

void require_odd_fundamental(long D) {
    if (D % 2 == 0) throw unsupported_error("divisor sum requires odd discriminant");
    if (!is_fundamental_discriminant(D)) throw std::invalid_argument("not fundamental");
}

long genus_norm(const FractionalIdeal& a) {
    static std::map<FractionalIdeal, long> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(a);
    if (it != cache.end()) return it->second;
    FractionalIdeal c = genus_representative(a);
    long n = static_cast<long>(num(c.norm()).convert_to<long long>());
    cache.emplace(a, n);
    return n;
}

std::vector<long> divisors_of(long m) {
    std::vector<long> out;
    for (long d = 1; d * d <= m; ++d) {
        if (m % d) continue;
        out.push_back(d);
        if (d != m / d) out.push_back(m / d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

long character_factor(long D, long d, long long other) {
    long f = 1;
    for (long dp : prime_discriminant_factors(D))
        f *= kronecker(dp, d) + kronecker(dp, other);
    return f;
}

} // namespace

double SigmaValue::value() const {
    return to_double(rational_part) + to_double(sqrt_m_part) * std::sqrt(double(std::abs(m)));
}

SigmaValue divisor_sigma(const FractionalIdeal& a, long m, const Rat& s) {
    long D = a.disc();
    require_odd_fundamental(D);
    if (m == 0) throw std::invalid_argument("m must be nonzero");
    if (den(s) != 1)
        throw std::invalid_argument("divisor sum implemented for integer s (exact arithmetic)");
    long sv = static_cast<long>(num(s).convert_to<long long>());
    long nc = genus_norm(a);
    long am = std::abs(m);

    // sum over divisors: d^s * character product, exact rational
    Rat divisor_part = 0;
    for (long d : divisors_of(am)) {
        long f = character_factor(D, d, static_cast<long long>(nc) * m / d);
        if (f == 0) continue;
        Rat ds = sv >= 0 ? Rat(boost::multiprecision::pow(Int(d), static_cast<unsigned>(sv)))
                         : Rat(1, boost::multiprecision::pow(Int(d), static_cast<unsigned>(-sv)));
        divisor_part += Rat(f) * ds;
    }

    SigmaValue out;
    out.m = m;
    out.s = s;
    // prefactor |m|^{(1-s)/2}: integral exponent lands in Q, half-integral
    // exponent contributes sqrt(|m|) unless |m| is a square
    long e2 = 1 - sv; // twice the exponent
    auto int_pow = [&](const Int& base, long e) {
        return e >= 0 ? Rat(boost::multiprecision::pow(base, static_cast<unsigned>(e)))
                      : Rat(1, boost::multiprecision::pow(base, static_cast<unsigned>(-e)));
    };
    if (e2 % 2 == 0) {
        out.rational_part = int_pow(Int(am), e2 / 2) * divisor_part;
        out.sqrt_m_part = 0;
    } else {
        Int root;
        if (is_perfect_square(Int(am), root)) {
            out.rational_part = int_pow(Int(am), (e2 - 1) / 2) * Rat(root) * divisor_part;
            out.sqrt_m_part = 0;
        } else {
            out.rational_part = 0;
            out.sqrt_m_part = int_pow(Int(am), (e2 - 1) / 2) * divisor_part;
        }
    }
    return out;
}

double divisor_sigma_value(const FractionalIdeal& a, long m, double s) {
    long D = a.disc();
    require_odd_fundamental(D);
    if (m == 0) throw std::invalid_argument("m must be nonzero");
    long nc = genus_norm(a);
    long am = std::abs(m);
    double acc = 0;
    for (long d : divisors_of(am)) {
        long f = character_factor(D, d, static_cast<long long>(nc) * m / d);
        if (f == 0) continue;
        acc += f * std::pow(double(d), s);
    }
    return std::pow(double(am), (1 - s) / 2) * acc;
}

double sigma_derivative(const FractionalIdeal& a, long m, double s) {
    long D = a.disc();
    require_odd_fundamental(D);
    if (m == 0) throw std::invalid_argument("m must be nonzero");
    long nc = genus_norm(a);
    long am = std::abs(m);
    double lm = std::log(double(am));
    double acc = 0;
    for (long d : divisors_of(am)) {
        long f = character_factor(D, d, static_cast<long long>(nc) * m / d);
        if (f == 0) continue;
        // d/ds [ |m|^{(1-s)/2} d^s ] = |m|^{(1-s)/2} d^s (log d - log|m|/2)
        acc += f * std::pow(double(am), (1 - s) / 2) * std::pow(double(d), s) *
               (std::log(double(d)) - lm / 2);
    }
    return acc;
}

RegularizationConstants regularization_constants(const FractionalIdeal& a, long m) {
    long D = a.disc();
    require_odd_fundamental(D);
    const FieldContext& ctx = FieldContext::get(D);
    SigmaValue sm1 = divisor_sigma(a, m, Rat(-1));
    if (sm1.sqrt_m_part != 0) throw std::logic_error("sigma(a,m,-1) must be rational");
    RegularizationConstants out;
    out.q = -sm1.rational_part / ctx.L_minus1;
    if (sm1.rational_part == 0) return out; // L undefined when sigma vanishes
    LValue lw = l_value_and_derivative(D, -1.0);
    double sigma_val = to_double(sm1.rational_part);
    double sigma_der = sigma_derivative(a, m, -1.0);
    double L = to_double(out.q) *
               (2 * lw.deriv / lw.value - 2 * sigma_der / sigma_val +
                std::log(double(D) / to_double(a.norm())));
    out.L = L;
    return out;
}

// ---------------------------------------------------------------------------
// Dirichlet identity check
// ---------------------------------------------------------------------------

namespace {

int moebius(long n) {
    int mu = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

} // namespace

std::vector<DirichletCheck> dirichlet_identity_check(const FractionalIdeal& a, long m, long B) {
    long D = a.disc();
    require_odd_fundamental(D);
    if (B < 1) throw std::invalid_argument("B must be >= 1");
    long nc = genus_norm(a);
    long am = std::abs(m);

    // |m|^{-s/2} zeta(s-1) / L(s, chi_D) sigma(a, m, 1-s)
    //   = sum_b b^{-s} sum_{n1 n2 d = b, d | m} n1 mu(n2) chi_D(n2) w_d
    // with w_d = d * prod_p (chi_{D(p)}(d) + chi_{D(p)}(N(c) m / d))
    std::map<long, long> w;
    for (long d : divisors_of(am))
        w[d] = d * character_factor(D, d, static_cast<long long>(nc) * m / d);

    std::vector<DirichletCheck> out;
    for (long b = 1; b <= B; ++b) {
        Int rhs = 0;
        for (long d : divisors_of(am)) {
            if (b % d) continue;
            long r = b / d;
            for (long n2 = 1; n2 <= r; ++n2) {
                if (r % n2) continue;
                long n1 = r / n2;
                rhs += Int(n1) * moebius(n2) * chi_D(D, n2) * w[d];
            }
        }
        out.push_back({b, gsum_count(a, m, b), rhs});
    }
    return out;
}

} // namespace hmgreen

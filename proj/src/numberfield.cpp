#include "hmgreen/numberfield.hpp"

#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <vector>

namespace hmgreen {

// ---------------------------------------------------------------------------
// FieldElement
// ---------------------------------------------------------------------------

FieldElement::FieldElement(long disc, Int p, Int q, Int r)
    : disc_(disc), p_(std::move(p)), q_(std::move(q)), r_(std::move(r)) {
    if (r_ == 0) throw std::invalid_argument("field element with zero denominator");
    normalize();
}

void FieldElement::normalize() {
    if (r_ < 0) { r_ = -r_; p_ = -p_; q_ = -q_; }
    Int g = boost::multiprecision::gcd(boost::multiprecision::gcd(abs(p_), abs(q_)), r_);
    if (g > 1) { p_ /= g; q_ /= g; r_ /= g; }
}

FieldElement FieldElement::from_rational(long disc, const Rat& x) {
    return FieldElement(disc, num(x), 0, den(x));
}

Rat FieldElement::rational_value() const {
    if (q_ != 0) throw std::domain_error("field element is irrational");
    return Rat(p_) / Rat(r_);
}

static void check_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.disc() != b.disc())
        throw std::invalid_argument("field elements from different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same_field(*this, o);
    return FieldElement(disc_, p_ * o.r_ + o.p_ * r_, q_ * o.r_ + o.q_ * r_, r_ * o.r_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    check_same_field(*this, o);
    return FieldElement(disc_, p_ * o.r_ - o.p_ * r_, q_ * o.r_ - o.q_ * r_, r_ * o.r_);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same_field(*this, o);
    return FieldElement(disc_,
                        p_ * o.p_ + Int(disc_) * q_ * o.q_,
                        p_ * o.q_ + q_ * o.p_,
                        r_ * o.r_);
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    check_same_field(*this, o);
    if (o.is_zero()) throw std::domain_error("division by zero field element");
    // x / y = x * conj(y) / N(y), with N(y) = (p^2 - D q^2) / r^2
    FieldElement t = *this * o.conj();
    Int n = o.p_ * o.p_ - Int(disc_) * o.q_ * o.q_; // r^2 N(y)
    return FieldElement(disc_, t.p_ * o.r_ * o.r_, t.q_ * o.r_ * o.r_, t.r_ * n);
}

FieldElement FieldElement::operator*(const Rat& c) const {
    return FieldElement(disc_, p_ * num(c), q_ * num(c), r_ * den(c));
}

FieldElement FieldElement::operator/(const Rat& c) const {
    if (c == 0) throw std::domain_error("division by zero");
    return FieldElement(disc_, p_ * den(c), q_ * den(c), r_ * num(c));
}

FieldElement FieldElement::pow(long k) const {
    if (k == 0) return one(disc_);
    FieldElement base = k > 0 ? *this : one(disc_) / *this;
    long e = k > 0 ? k : -k;
    FieldElement acc = one(disc_);
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

std::strong_ordering FieldElement::operator<=>(const FieldElement& o) const {
    if (auto c = disc_ <=> o.disc_; c != 0) return c;
    if (auto c = p_.compare(o.p_); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (auto c = q_.compare(o.q_); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    auto c = r_.compare(o.r_);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

int FieldElement::sign_first() const {
    // sign of p + q sqrt(D), exact: compare p^2 with D q^2 when signs differ
    int sp = p_.sign(), sq = q_.sign();
    if (sq == 0) return sp;
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    Int lhs = p_ * p_, rhs = Int(disc_) * q_ * q_;
    int c = lhs.compare(rhs);
    if (c == 0) return 0; // impossible for nonsquare D unless zero
    // |p| > |q| sqrt(D) ? sign follows p : sign follows q
    return c > 0 ? sp : sq;
}

// cached high-precision rational approximations of sqrt(D)
static Rat sqrt_disc_approx(long D) {
    static std::map<long, Rat> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(D);
    if (it != cache.end()) return it->second;
    // floor(sqrt(D * 10^72)) / 10^36: ~36 correct digits
    Int scale = boost::multiprecision::pow(Int(10), 36);
    Int v = isqrt_floor(Int(D) * scale * scale);
    Rat approx = Rat(v) / Rat(scale);
    cache.emplace(D, approx);
    return approx;
}

double FieldElement::embed_first() const {
    Rat v = (Rat(p_) + Rat(q_) * sqrt_disc_approx(disc_)) / Rat(r_);
    return to_double(v);
}

std::string FieldElement::str() const {
    std::ostringstream os;
    os << "(" << p_ << (q_ >= 0 ? "+" : "-") << abs(q_) << "*sqrt(" << disc_ << "))/" << r_;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const FieldElement& x) { return os << x.str(); }

int cross_sign(const FieldElement& u, const FieldElement& v) {
    FieldElement w = u * v.conj();
    return w.q().sign();
}

// ---------------------------------------------------------------------------
// discriminants and units
// ---------------------------------------------------------------------------

static bool squarefree(long n) {
    for (long d = 2; d * d <= n; ++d)
        if (n % (d * d) == 0) return false;
    return true;
}

bool is_fundamental_discriminant(long D) {
    if (D <= 1) return false;
    long root = static_cast<long>(std::sqrt(static_cast<double>(D)));
    for (long r = root - 2; r <= root + 2; ++r)
        if (r >= 0 && r * r == D) return false;
    if (D % 4 == 1) return squarefree(D);
    if (D % 4 == 0) {
        long m = D / 4;
        return squarefree(m) && (m % 4 == 2 || m % 4 == 3);
    }
    return false;
}

std::pair<FieldElement, FieldElement> fundamental_units(long D) {
    if (!is_fundamental_discriminant(D))
        throw std::invalid_argument("not a fundamental discriminant of a real quadratic field");
    // units of O_K are (p + q sqrt(D))/2 with p^2 - D q^2 = +-4; the smallest
    // unit > 1 has the smallest q > 0 among solutions
    for (Int q = 1;; ++q) {
        Int dq2 = Int(D) * q * q;
        Int p;
        if (is_perfect_square(dq2 - 4, p) && p > 0) {
            FieldElement eps0(D, p, q, 2);
            FieldElement eps1 = eps0.norm() == 1 ? eps0 : eps0 * eps0;
            return {eps0, eps1};
        }
        if (is_perfect_square(dq2 + 4, p)) {
            FieldElement eps0(D, p, q, 2);
            FieldElement eps1 = eps0.norm() == 1 ? eps0 : eps0 * eps0;
            return {eps0, eps1};
        }
        if (q > 100000000) throw std::runtime_error("fundamental unit search exceeded bound");
    }
}

const FieldContext& FieldContext::get(long D) {
    static std::map<long, FieldContext> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(D);
    if (it != cache.end()) return it->second;
    FieldContext ctx;
    ctx.D = D;
    auto [e0, e1] = fundamental_units(D);
    ctx.eps0 = e0;
    ctx.eps1 = e1;
    ctx.L_minus1 = l_value_minus1(D);
    ctx.zetaK_minus1 = -ctx.L_minus1 / 12;
    return cache.emplace(D, std::move(ctx)).first->second;
}

// ---------------------------------------------------------------------------
// Kronecker symbol
// ---------------------------------------------------------------------------

int kronecker(long long a, long long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;
    int k = 1;
    // pull out factors of 2 from n; (a|2) = 0, +1, -1 by a mod 8
    int v = 0;
    while ((n & 1) == 0) { n /= 2; ++v; }
    if (v & 1) {
        long long am = ((a % 8) + 8) % 8;
        if (am == 3 || am == 5) k = -k;
    }
    if (n < 0) {
        n = -n;
        if (a < 0) k = -k;
    }
    // now n odd, n > 0
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        v = 0;
        while ((a & 1) == 0) { a /= 2; ++v; }
        if (v & 1) {
            long long nm = n % 8;
            if (nm == 3 || nm == 5) k = -k;
        }
        // reciprocity for odd positive a, n
        if ((a % 4) == 3 && (n % 4) == 3) k = -k;
        long long t = n % a;
        n = a;
        a = t;
    }
    return n == 1 ? k : 0;
}

int chi_D(long D, long long n) { return kronecker(D, n); }

// ---------------------------------------------------------------------------
// L-values
// ---------------------------------------------------------------------------

Rat l_value_minus1(long D) {
    if (!is_fundamental_discriminant(D))
        throw std::invalid_argument("not a fundamental discriminant");
    // B_{2,chi} = D * sum_{a=1}^{D} chi(a) B_2(a/D), B_2(x) = x^2 - x + 1/6
    Rat b2chi = 0;
    for (long a = 1; a <= D; ++a) {
        int c = chi_D(D, a);
        if (c == 0) continue;
        Rat x = Rat(a) / Rat(D);
        b2chi += Rat(c) * (x * x - x + Rat(1, 6));
    }
    b2chi *= D;
    return -b2chi / 2; // L(-1, chi) = -B_{2,chi}/2
}

// dual numbers carry (value, d/ds) through the Euler-Maclaurin formula
namespace {

struct Dual {
    double v = 0, d = 0;
    Dual() = default;
    Dual(double v_, double d_ = 0) : v(v_), d(d_) {}
    Dual operator+(const Dual& o) const { return {v + o.v, d + o.d}; }
    Dual operator-(const Dual& o) const { return {v - o.v, d - o.d}; }
    Dual operator*(const Dual& o) const { return {v * o.v, v * o.d + d * o.v}; }
    Dual operator/(const Dual& o) const {
        return {v / o.v, (d * o.v - v * o.d) / (o.v * o.v)};
    }
    Dual operator-() const { return {-v, -d}; }
};

// b^e for real b > 0 and dual exponent e
Dual pow_base(double b, const Dual& e) {
    double p = std::pow(b, e.v);
    return {p, p * std::log(b) * e.d};
}

const double kBernoulli2j[] = {
    1.0 / 6,   -1.0 / 30,   1.0 / 42,    -1.0 / 30,  5.0 / 66,
    -691.0 / 2730, 7.0 / 6, -3617.0 / 510, 43867.0 / 798,
};
const int kEmBernoulliTerms = 8; // B_2 .. B_16
const int kEmDirectTerms = 32;

// Hurwitz zeta(s, x) with s-derivative, Euler-Maclaurin; s real != 1, x > 0
Dual hurwitz_zeta_dual(const Dual& s, double x, double rel_tol) {
    const int N = kEmDirectTerms, M = kEmBernoulliTerms;
    Dual sum(0, 0);
    for (int k = 0; k < N; ++k) sum = sum + pow_base(x + k, -s);
    double xn = x + N;
    // integral term (x+N)^{1-s} / (s-1)
    sum = sum + pow_base(xn, Dual(1, 0) - s) / (s - Dual(1, 0));
    // boundary term (x+N)^{-s} / 2
    sum = sum + pow_base(xn, -s) * Dual(0.5, 0);
    // Bernoulli corrections: B_{2j}/(2j)! * (s)_{2j-1} * (x+N)^{-s-2j+1}
    double fact = 1; // (2j)!
    Dual last_term(0, 0);
    for (int j = 1; j <= M; ++j) {
        fact *= (2 * j - 1) * (2 * j);
        Dual poch(1, 0); // (s)_{2j-1} = s (s+1) ... (s+2j-2)
        for (int i = 0; i <= 2 * j - 2; ++i) poch = poch * (s + Dual(i, 0));
        Dual term = Dual(kBernoulli2j[j - 1] / fact, 0) * poch *
                    pow_base(xn, -s - Dual(2 * j - 1, 0));
        sum = sum + term;
        last_term = term;
    }
    // next-term tail check (B_18)
    {
        double f2 = fact * (2 * M + 1) * (2 * M + 2);
        Dual poch(1, 0);
        for (int i = 0; i <= 2 * M; ++i) poch = poch * (s + Dual(i, 0));
        Dual next = Dual(kBernoulli2j[M] / f2, 0) * poch *
                    pow_base(xn, -s - Dual(2 * M + 1, 0));
        double scale = std::max(std::abs(sum.v), 1e-300);
        if (std::abs(next.v) > rel_tol * scale && std::abs(next.v) > 1e-15)
            throw precision_error("Hurwitz zeta Euler-Maclaurin depth insufficient");
    }
    (void)last_term;
    return sum;
}

} // namespace

double hurwitz_zeta(double s, double x) {
    return hurwitz_zeta_dual(Dual(s, 0), x, 1e-11).v;
}

double riemann_zeta_em(double s) { return hurwitz_zeta(s, 1.0); }

LValue l_value_and_derivative(long D, double s, double rel_tol) {
    if (!is_fundamental_discriminant(D))
        throw std::invalid_argument("not a fundamental discriminant");
    // L(s, chi) = D^{-s} sum_{a=1}^{D} chi(a) zeta(s, a/D)
    Dual sv(s, 1);
    Dual acc(0, 0);
    for (long a = 1; a <= D; ++a) {
        int c = chi_D(D, a);
        if (c == 0) continue;
        Dual z = hurwitz_zeta_dual(sv, double(a) / double(D), rel_tol);
        acc = acc + Dual(c, 0) * z;
    }
    Dual result = pow_base(double(D), -sv) * acc;
    return {result.v, result.d};
}

double l_value(long D, double s) { return l_value_and_derivative(D, s).value; }

} // namespace hmgreen

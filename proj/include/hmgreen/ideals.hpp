#ifndef HMGREEN_IDEALS_HPP
#define HMGREEN_IDEALS_HPP

// Fractional ideals of O_K as explicit Z-modules of rank 2, canonicalized by
// Hermite normal form over the integral basis {1, omega}.  Hull predicates for
// the cusp resolution cycle use exact rational comparisons only.

#include "hmgreen/numberfield.hpp"

#include <optional>
#include <vector>

namespace hmgreen {

class FractionalIdeal {
public:
    FractionalIdeal() = default;

    // module generated over Z by the given field elements
    static FractionalIdeal from_generators(long D, const std::vector<FieldElement>& gens);
    static FractionalIdeal ring_of_integers(long D); // O_K
    static FractionalIdeal different(long D);        // (sqrt(D))
    static FractionalIdeal different_inv(long D);
    static FractionalIdeal principal(const FieldElement& x);

    long disc() const { return D_; }
    // canonical ordered basis (beta1, beta2)
    std::array<FieldElement, 2> basis() const;
    // positive module norm [O_K : a] as a rational
    const Rat& norm() const { return norm_; }
    Rat volume_sqrtD_coeff() const { return norm_; } // vol(a) = N(a) sqrt(D)

    bool contains(const FieldElement& x) const;
    // exact coordinates of x in the canonical basis
    std::array<Rat, 2> coordinates(const FieldElement& x) const;

    FractionalIdeal operator*(const FractionalIdeal& o) const;
    FractionalIdeal operator*(const FieldElement& x) const; // scale by x != 0
    FractionalIdeal inverse() const;
    FractionalIdeal conj() const;
    FractionalIdeal trace_dual() const { return (*this * different(D_)).inverse(); }
    FractionalIdeal norm_dual() const { return (*this * different(D_)).conj().inverse(); }

    bool operator==(const FractionalIdeal& o) const {
        return D_ == o.D_ && den_ == o.den_ && m_ == o.m_;
    }
    bool operator!=(const FractionalIdeal& o) const { return !(*this == o); }
    bool operator<(const FractionalIdeal& o) const; // map-key order

    bool is_integral() const;
    std::string str() const;

private:
    long D_ = 0;
    // rows of the HNF matrix over {1, omega}: basis_i = (m_[i][0] + m_[i][1]*omega)/den_
    // HNF shape: m_[0] = (a, b), m_[1] = (0, c), a, c > 0, 0 <= b < a
    std::array<std::array<Int, 2>, 2> m_{};
    Int den_ = 1;
    Rat norm_ = 0;

    static FractionalIdeal from_rows(long D, std::vector<std::array<Int, 2>> rows, Int den);
    void finalize();
};

std::ostream& operator<<(std::ostream& os, const FractionalIdeal& a);

// coset representatives of a*d^{-1} / (b*a), reduced into the fundamental
// parallelotope of b*a; exactly b^2 * D of them
std::vector<FieldElement> quotient_reps(const FractionalIdeal& a, long b);

// integral ideal with norm coprime to D in the same genus as a (odd D only)
FractionalIdeal genus_representative(const FractionalIdeal& a);
// genus character vector (chi_{D(p)} over prime divisors p of D, ordered by p)
std::vector<int> genus_character_vector(const FractionalIdeal& a);
// prime discriminant factors D(p) of odd fundamental D, ordered by p
std::vector<long> prime_discriminant_factors(long D);

// Z-basis (alpha, beta) of a with alpha, beta totally positive and
// cross_sign(alpha, beta) > 0
std::pair<FieldElement, FieldElement> totally_positive_basis(const FractionalIdeal& a);

struct BoundaryCycle {
    std::vector<FieldElement> points;        // A_0, ..., A_{r-1}, one period
    std::vector<long> self_intersections;    // b_k with A_{k-1} + A_{k+1} = b_k A_k
    FieldElement period_unit;                // eps1: A_{k+r} = eps1 * A_k
};

// lattice points of a_inv on the boundary of the convex hull of its totally
// positive elements, one period under eps1
BoundaryCycle boundary_cycle(const FractionalIdeal& a_inv);

struct Mat2 {
    FieldElement a, b, c, d; // [[a, b], [c, d]]
    FieldElement det() const { return a * d - b * c; }
    Mat2 inverse() const; // requires det = 1
};

Mat2 operator*(const Mat2& m, const Mat2& n);

// membership in SL(a, b) = [[a, (ab)^{-1}], [ab, a^{-1}]] with det 1
bool sl_member(const Mat2& M, const FractionalIdeal& a, const FractionalIdeal& b);

// matrix M in SL(a, b) with a = alpha O_K + beta b^{-1} and M(infinity) = (alpha : beta)
Mat2 cusp_transport(const FieldElement& alpha, const FieldElement& beta,
                    const FractionalIdeal& b);

// deterministic pseudo-random ideals for property tests
FractionalIdeal random_ideal(long D, unsigned long seed);

} // namespace hmgreen

#endif

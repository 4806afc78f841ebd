#pragma once

#include <string>
#include <vector>

#include "qprove/thetaprod.hpp"

namespace qprove {

/* Specification of a signed generating function sum (-1)^{t(n)} q^{a_n},
 * where a_n runs over the non-negative m with K m + bsq a perfect square.
 * Residue classes are taken mod the minimal period R of the solution set of
 * S^2 = bsq (mod K); each class r carries a sign s_r, and `alternating`
 * selects the (-1)^k alternation along each class. */
struct SquareClassSpec {
    long long K = 1;
    long long bsq = 0;
    long long period = 1;                // R
    std::vector<long long> classes;      // sorted residues in [0, R)
    std::vector<int> signs;              // one per class
    bool alternating = true;
};

/* s * sum_{k in Z} (+-1)^k q^{A k^2 + B k + C}. */
struct BilateralSum {
    int sign = +1;
    bool alternating = true;
    Rational A, B, C;
};

/* Solutions of S^2 = bsq (mod K) by brute force, reduced to the minimal
 * period R of the solution set: returns (R, sorted classes in [0, R)). */
std::pair<long long, std::vector<long long>> solve_residues(long long K, long long bsq);

/* Builds the spec, computing period and classes and validating the signs
 * against closure under r -> R - r. */
SquareClassSpec make_square_spec(long long K, long long bsq,
                                 const std::vector<int>& signs, bool alternating);

/* Pair classes r and R-r via k -> -k-1 into |classes|/2 bilateral sums. */
std::vector<BilateralSum> build_bilateral(const SquareClassSpec& spec);

/* Apply the triple product to each bilateral sum: s q^C (q^{2A}, q^{A+B},
 * q^{A-B}; q^{2A}) with both theta arguments negated in the non-alternating
 * case.  Each product is returned at level 2A. */
std::vector<EProduct> compile_theta(const SquareClassSpec& spec);

/* The exponent bits t(n) of the first `count` terms, in increasing order of
 * a_n (0 for +, 1 for -). */
std::vector<int> sign_pattern(const SquareClassSpec& spec, long long count);

/* Direct enumeration of the signed generating function up to exponent T
 * (the test oracle route: scan S, keep m >= 0). */
QSeries signed_gf_enumerate(const SquareClassSpec& spec, long long T);

enum class Family { p24_thm, p24_cor, p3_thm, p3_cor, m16 };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/* One fully instantiated member of a parametric family. */
struct ParametricInstance {
    Family family;
    long long P = 0;
    long long a = 0;
    int case_id = 1;  // 1 or 2 per the a = P (mod 3) split; 0 for m16
    SquareClassSpec spec;

    /* Closed-form product side, as theta data at base 3*reduction_N:
     * eta(q^N) * theta(u^2/q^N; q^N) / theta(u; q^N) for the threl route,
     * or the direct triple product for m16. */
    long long threl_which = 1;   // which reduction applies (always 1 here)
    long long reduction_N = 0;   // N in the reduction
    long long u_exponent = 0;    // u = q^{u_exponent}
};

/* All admissible (P, a) instances with P an odd prime power <= p_max.
 * Powers of 3 admit no a (the integrality conditions force 3 | a), so they
 * contribute nothing. */
std::vector<ParametricInstance> parametric_instances(Family f, long long p_max);

/* Printed right-hand side of an instance as numerator/denominator factor
 * lists ((e; M) pairs); exponents may be negative for the corollary ranges. */
struct InstanceRhs {
    std::vector<std::pair<long long, long long>> numerator;
    std::vector<std::pair<long long, long long>> denominator;
    /* m16 only: (q^8;q^8)(-q^{4+a};q^8)(-q^{4-a};q^8). */
    bool m16_form = false;
    long long m16_a = 0;
};

InstanceRhs instance_rhs(const ParametricInstance& inst);

}  // namespace qprove

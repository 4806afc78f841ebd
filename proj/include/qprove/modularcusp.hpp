#pragma once

#include <string>
#include <vector>

#include "qprove/thetaprod.hpp"

namespace qprove {

/* A cusp of Gamma_1(N): a reduced fraction numer/denom, with i-infinity
 * encoded as 1/0. */
struct Cusp {
    long long numer = 1;
    long long denom = 0;

    bool is_infinity() const { return denom == 0; }
    std::string str() const
    {
        return is_infinity() ? "oo" : std::to_string(numer) + "/" + std::to_string(denom);
    }
    friend bool operator==(const Cusp& a, const Cusp& b)
    {
        return a.numer == b.numer && a.denom == b.denom;
    }
};

Cusp make_cusp(long long numer, long long denom);

/* Width h_c = N / gcd(D_c, N): the local expansion period at the cusp. */
long long cusp_width(const Cusp& c, long long N);

struct CuspClassSet {
    long long level = 0;
    std::vector<Cusp> representatives;  // one per class, i-infinity first
};

/* a/c ~ a'/c' under Gamma_1(N) iff (a',c') = +-(a + j c, c) mod N for some
 * integer j. */
bool cusps_equivalent(const Cusp& x, const Cusp& y, long long N);

/* A complete duplicate-free set of class representatives; N >= 5. */
CuspClassSet cusp_representatives(long long N);

/* Number of cusp classes of Gamma_1(N) for N >= 5:
 * (1/2) sum_{d|N} phi(d) phi(N/d). */
long long cusp_count_formula(long long N);

/* ord(E_g; c, N) = (1/2) gcd(D_c,N) B2({N_c g / gcd(D_c,N)}) at a finite
 * cusp c. */
Rational order_at_cusp(long long g, const Cusp& c, long long N);

/* Order of a full E-product at a finite cusp: sum of a_g ord(E_g; c, N).
 * The product must be in E form with no eta factor. */
Rational eproduct_order_at_cusp(const EProduct& p, const Cusp& c);

/* Criterion for prod E_g^{a_g} to be a modular function for Gamma_1(N):
 * sum a_g = 0 (mod 12) and sum g^2 a_g = 0 (mod y(N)), y(N) = 2N for even N
 * and N for odd N.  Products that are not pure E quotients fail. */
bool is_modular_function(const EProduct& p);

/* Valence bound: over every finite-cusp class, accumulate the minimum term
 * order; U = -floor(total) bounds the order at i-infinity of any nonzero
 * combination of the terms.  Every term must pass is_modular_function and
 * carry eta = 0. */
struct ValenceBound {
    long long U = 0;
    Rational order_sum;                        // sum of per-cusp minima
    std::vector<Rational> per_cusp_minimum;    // aligned with finite reps
};

ValenceBound valence_bound(const std::vector<EProduct>& terms,
                           const CuspClassSet& cusps);

}  // namespace qprove

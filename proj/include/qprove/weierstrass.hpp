#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qprove/thetaprod.hpp"

namespace qprove {

/* +-q^e as a theta argument. */
struct SignedMonomial {
    int sign = +1;
    long long exponent = 0;

    SignedMonomial operator*(const SignedMonomial& o) const
    {
        return {sign * o.sign, exponent + o.exponent};
    }
    SignedMonomial operator/(const SignedMonomial& o) const
    {
        return {sign * o.sign, exponent - o.exponent};
    }
    std::string str() const
    {
        std::string s = sign < 0 ? "-" : "";
        if (exponent == 0) return s.empty() ? "1" : "-1";
        return s + "q^" + std::to_string(exponent);
    }
};

/* A substitution q -> q^{base}, u, v, x, y into the three-term relation
 *
 *   th(xy) th(x/y) th(uv) th(u/v) - th(xv) th(x/v) th(uy) th(u/y)
 *     = (u/y) th(yv) th(y/v) th(xu) th(x/u),        th(.) = th(.; q^base).
 */
struct WeierstrassInstance {
    long long base = 1;
    SignedMonomial u, v, x, y;
};

struct TaddReport {
    bool verified = false;
    long long checked_through = 0;            // exponents below this agree
    std::optional<Rational> first_discrepancy;
    std::vector<std::string> zero_factors;    // degenerate theta(1) factors
};

/* Expand both sides to T and compare. */
TaddReport instantiate_tadd(const WeierstrassInstance& inst, long long T);

/* The two-term-to-one-product reductions derived from the relation by
 * specializing x = q^N, y = u^2/q^N, v = q^N/u (which == 1) resp.
 * x = q^{2N}, y = u^2/q^{2N}, v = q^{2N}/u (which == 2). */
struct ThrelReduction {
    std::vector<EProduct> lhs_terms;  // two products at level 3N
    EProduct rhs;                     // eta * theta(u^2/q^cN) / theta(u) at level N
    bool verified = false;
};

ThrelReduction reduce_threl(int which, long long N, const SignedMonomial& u, long long T);

/* Exhaustive search for substitutions matching a two-term target: returns
 * every (u, v, x, y) over exponents in [0, bound] and both signs whose
 * relation contains a pair of terms proportional to (t1, t2); candidates
 * are confirmed by expansion before being reported. */
std::vector<WeierstrassInstance> search_specialization(const EProduct& t1,
                                                       const EProduct& t2,
                                                       long long base,
                                                       long long bound,
                                                       long long T);

/* (q^M; q^{2M})^{-1} = (-q^M; q^M): both sides as factor lists, level 2M. */
std::pair<EProduct, EProduct> euler_odd_distinct(long long M);
/* (-q^M; q^{2M})^{-1} = (q^M; q^{2M}) (-q^{2M}; q^{2M}), level 4M. */
std::pair<EProduct, EProduct> euler_negated(long long M);

}  // namespace qprove

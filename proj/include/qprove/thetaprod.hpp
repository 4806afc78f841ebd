#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qprove/qseries.hpp"

namespace qprove {

/* One infinite-product factor argument: sign * q^exponent. */
struct PochArg {
    long long exponent;
    int sign;  // +1 or -1

    friend bool operator<(const PochArg& a, const PochArg& b)
    {
        if (a.exponent != b.exponent) return a.exponent < b.exponent;
        return a.sign < b.sign;
    }
    friend bool operator==(const PochArg& a, const PochArg& b)
    {
        return a.exponent == b.exponent && a.sign == b.sign;
    }
};

/* A scalar times a power of q times a product of Pochhammer factors
 * (s*q^e; q^N)_inf at one fixed level N, together with an explicit power of
 * (q^N; q^N)_inf tracked separately in `eta`.
 *
 * Positive-sign factor exponents live in [1, N-1] (e = N is folded into
 * eta); negative-sign exponents live in [0, N].  When every factor has
 * positive sign and exponents pair up as e <-> N-e, the product is a
 * quotient of the normalized theta blocks
 *
 *     E_g = q^{N B2(g/N)/2} (q^g, q^{N-g}; q^N)_inf,
 *
 * and e_view() recovers that form. */
class EProduct {
public:
    long long level = 1;
    Rational scalar{1};
    Rational qpower{0};
    long long eta = 0;
    std::map<PochArg, long long> slots;

    static EProduct one(long long level);
    /* Product of E_g^{a_g}: sets slots and the matching q-power prefactor. */
    static EProduct from_e_symbols(long long level,
                                   const std::vector<std::pair<long long, long long>>& gs);

    /* The E_g prefactor exponent N*B2(g/N)/2. */
    static Rational e_prefactor(long long g, long long level);

    bool is_constant() const { return slots.empty() && eta == 0; }

    /* Multiply in (sign*q^e; q^M)_inf^power, with M dividing the level
     * (negative signs additionally need 2M | level unless M == level). */
    void mul_poch(long long e, long long M, int sign, long long power);

    friend EProduct eprod_mul(const EProduct& a, const EProduct& b);
    friend EProduct eprod_div(const EProduct& a, const EProduct& b);

    /* The same value expressed at a multiple level; the identity blow-up
     * returns the input unchanged. */
    EProduct blowup(long long target) const;

    /* E-quotient view: exponent a_g per canonical g in [1, N/2].  Present
     * only when all signs are positive and exponents pair up. */
    std::optional<std::map<long long, long long>> e_view() const;
    /* Explicit q-power left over once E prefactors are extracted
     * (qpower - sum a_g * e_prefactor(g)); only for e-viewable products. */
    Rational residual_qpower(const std::map<long long, long long>& eview) const;

    /* Canonical text form, e.g. "105: E22 / E43" or
     * "20: E2 E6 / E4 E8 * q^1 * eta^2 * -1/2". */
    std::string str() const;

    friend bool operator==(const EProduct& a, const EProduct& b);
};

/* expansion of multiplier * p, requiring multiplier * p.scalar to be an
 * exact integer; coefficients of exponents below T are exact. */
QSeries eprod_expand_scaled(const EProduct& p, const BigInt& multiplier, long long T);
/* expansion of p itself (scalar must be an integer). */
QSeries eprod_expand(const EProduct& p, long long T);

/* Parse the canonical text form produced by EProduct::str(). */
EProduct parse_eproduct(const std::string& text);

/* theta(sign*q^a; q^M) = (sign*q^a, sign*q^{M-a}; q^M)_inf. */
struct ThetaMonomial {
    long long modulus;  // M
    Rational arg_exponent;
    int arg_sign;  // +1 or -1
};

struct ThetaNormalization {
    Rational scalar;  // +-1
    Rational shift;   // power of q pulled out
    ThetaMonomial canonical;
};

/* Quasi-periodicity theta(q^M z; q^M) = -z^{-1} theta(z; q^M) and the
 * reflection theta(q^M/z; q^M) = theta(z; q^M) bring the argument exponent
 * into (0, M/2], or to 0 for negative sign.  A positive-sign argument with
 * exponent divisible by M is the zero function and is rejected. */
ThetaNormalization theta_normalize(const ThetaMonomial& m);

/* True iff the monomial normalizes onto theta(1; q^M) = 0. */
bool theta_is_zero(const ThetaMonomial& m);

QSeries theta_expand(const ThetaMonomial& m, long long T);

}  // namespace qprove

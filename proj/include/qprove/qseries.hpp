#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "qprove/rational.hpp"

namespace qprove {

using BigInt = boost::multiprecision::cpp_int;

/* Truncated Laurent series in q^{1/D} with exact integer coefficients.
 *
 * A series stores coefficients for grid indices i in [min_index, limit):
 * the coefficient of q^{i/D}.  All coefficients below `limit` are exact;
 * reading at or beyond `limit` is a bug in the caller and throws.  Series
 * with different D are combined by rescaling to the lcm first, which is
 * loss-free. */
class QSeries {
public:
    QSeries() : scale_(1), min_index_(0), limit_(0) {}

    static QSeries zero(long long scale, long long limit);
    static QSeries one(long long scale, long long limit);
    /* c * q^{index/scale} */
    static QSeries monomial(const BigInt& c, long long index, long long scale,
                            long long limit);

    long long scale() const { return scale_; }
    long long min_index() const { return min_index_; }
    long long limit() const { return limit_; }

    bool is_zero() const;
    /* Grid index of the lowest nonzero coefficient. */
    std::optional<long long> lowest_nonzero() const;

    /* Coefficient at grid index (0 below min_index; throws at/beyond limit). */
    const BigInt& coeff_at_index(long long i) const;
    /* Coefficient of q^e; exponents off the grid are identically zero. */
    BigInt coeff(const Rational& e) const;

    /* Same data on the grid q^{1/(scale*factor)}. */
    QSeries rescaled(long long factor) const;
    /* Multiply every coefficient by c. */
    QSeries scaled_by(const BigInt& c) const;
    /* Multiply by q^{shift} given on this grid. */
    QSeries shifted(long long gridshift) const;
    /* Divide every coefficient by 2; throws on any odd coefficient. */
    QSeries halved_exact() const;
    /* Restrict the exactness bound (new_limit <= limit). */
    QSeries truncated(long long new_limit) const;

    /* In-place multiply by (1 - s*q^{d/scale}); d may be negative or zero. */
    void mul_binomial(int s, long long d);
    /* In-place multiply by 1/(1 - q^{d/scale}) for d > 0. */
    void mul_geometric(long long d);

    std::string str() const;

    friend QSeries series_add(const QSeries& a, const QSeries& b);
    friend QSeries series_sub(const QSeries& a, const QSeries& b);
    friend QSeries series_mul(const QSeries& a, const QSeries& b);
    /* a/b for b with invertible (+-1) lowest nonzero coefficient. */
    friend QSeries series_div(const QSeries& a, const QSeries& b);

    friend bool operator==(const QSeries& a, const QSeries& b);
    friend std::optional<long long> first_difference(const QSeries& a, const QSeries& b);

private:
    static void align(QSeries& a, QSeries& b);
    void reserve_range(long long lo, long long hi);

    long long scale_;      // D
    long long min_index_;  // lowest possibly nonzero grid index
    long long limit_;      // exactness bound (exclusive), grid units
    std::vector<BigInt> coeffs_;
};

/* First grid index where a and b differ, over the common exact range. */
std::optional<long long> first_difference(const QSeries& a, const QSeries& b);

/* (sign*q^e; q^M)_inf truncated below exponent T.  M > 0; e may be
 * negative, in which case the finitely many factors with negative exponent
 * produce a Laurent series. */
QSeries poch_expand(const Rational& e, int sign, const Rational& M, long long T);

/* The bilateral sum  sum_k (+-1)^k q^{A k^2 + B k}  for A > 0, summed by
 * direct term enumeration.  When `alternating`, equals the triple product
 * (q^{2A}, q^{A+B}, q^{A-B}; q^{2A})_inf; otherwise the same with negated
 * second and third arguments. */
QSeries jtp_bilateral(const Rational& A, const Rational& B, bool alternating,
                      long long T);

enum class SquareKind { squares, triangular };

/* sum_{n>=1} q^{M n^2}  resp.  sum_{n>=0} q^{M n(n+1)}, computed through the
 * triple-product forms; the halving in the squares case is checked exact. */
QSeries square_sum_series(SquareKind kind, long long M, long long T);

}  // namespace qprove

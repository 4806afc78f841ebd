#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qprove/qseries.hpp"

using namespace qprove;

namespace {

QSeries from_ints(const std::vector<long long>& c, long long T)
{
    QSeries s = QSeries::zero(1, T);
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) s = series_add(s, QSeries::monomial(c[i], (long long)i, 1, T));
    return s;
}

}  // namespace

TEST_SUITE_BEGIN("qseries");

TEST_CASE("pochhammer with vanishing leading factor is zero")
{
    QSeries s = poch_expand(0, +1, 1, 10);
    CHECK(s.is_zero());
}

TEST_CASE("pentagonal expansion of (q;q)_inf")
{
    QSeries s = poch_expand(1, +1, 1, 13);
    std::vector<long long> expect(13, 0);
    expect[0] = 1;
    expect[1] = -1;
    expect[2] = -1;
    expect[5] = 1;
    expect[7] = 1;
    expect[12] = -1;
    CHECK(s == from_ints(expect, 13));
    // and equals the naive factor-by-factor product
    CHECK(s == from_ints(oracle::naive_poch(1, +1, 1, 13), 13));
}

TEST_CASE("(-q;q^2)_inf begins 1+q+q^3+q^4+q^5")
{
    QSeries s = poch_expand(1, -1, 2, 6);
    CHECK(s == from_ints({1, 1, 0, 1, 1, 1}, 6));
}

TEST_CASE("multiplicative identity and geometric telescoping")
{
    QSeries s = poch_expand(1, +1, 3, 30);
    CHECK(series_mul(QSeries::one(1, 30), s) == s);

    // (1-q) * 1/(1-q) = 1
    QSeries one = QSeries::one(1, 25);
    QSeries geom = QSeries::one(1, 25);
    geom.mul_geometric(1);
    QSeries binom = QSeries::one(1, 25);
    binom.mul_binomial(+1, 1);
    CHECK(series_mul(binom, geom) == one);
}

TEST_CASE("Euler: (q;q)(-q;q) = (q^2;q^2)")
{
    QSeries lhs = series_mul(poch_expand(1, +1, 1, 20), poch_expand(1, -1, 1, 20));
    QSeries rhs = poch_expand(2, +1, 2, 20);
    CHECK(lhs == rhs);
}

TEST_CASE("reciprocal of (q;q)_inf gives partition numbers")
{
    QSeries inv = series_div(QSeries::one(1, 11), poch_expand(1, +1, 1, 11));
    auto p = oracle::partition_counts(11);
    for (long long n = 0; n < 11; ++n)
        CHECK(inv.coeff_at_index(n) == BigInt(p[(size_t)n]));
    CHECK(inv.coeff_at_index(10) == 42);
}

TEST_CASE("(q^2;q^2)/(q;q) = (-q;q)")
{
    QSeries lhs = series_div(poch_expand(2, +1, 2, 20), poch_expand(1, +1, 1, 20));
    CHECK(lhs == poch_expand(1, -1, 1, 20));
}

TEST_CASE("division by one is the identity")
{
    QSeries s = poch_expand(2, -1, 3, 25);
    CHECK(series_div(s, QSeries::one(1, 25)) == s);
}

TEST_CASE("division is inverse to multiplication")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        long long e1 = 1 + rng() % 4, m1 = 1 + rng() % 5;
        long long e2 = 1 + rng() % 3, m2 = 1 + rng() % 4;
        QSeries a = poch_expand(e1, (rng() % 2) ? +1 : -1, m1, 40);
        QSeries b = poch_expand(e2, +1, m2, 40);
        CHECK(series_div(series_mul(a, b), b) == a);
    }
}

TEST_CASE("ring laws to truncation")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 12; ++trial) {
        QSeries a = poch_expand(1 + rng() % 4, (rng() % 2) ? 1 : -1, 1 + rng() % 4, 30);
        QSeries b = poch_expand(1 + rng() % 4, (rng() % 2) ? 1 : -1, 1 + rng() % 4, 30);
        QSeries c = poch_expand(1 + rng() % 4, (rng() % 2) ? 1 : -1, 1 + rng() % 4, 30);
        CHECK(series_mul(series_mul(a, b), c) == series_mul(a, series_mul(b, c)));
        CHECK(series_mul(a, series_add(b, c)) ==
              series_add(series_mul(a, b), series_mul(a, c)));
    }
}

TEST_CASE("bilateral degenerate pairing cancels to zero")
{
    QSeries s = jtp_bilateral(Rational(1, 2), Rational(1, 2), true, 10);
    CHECK(s.is_zero());
}

TEST_CASE("bilateral pentagonal form matches (q;q)_inf")
{
    QSeries s = jtp_bilateral(Rational(3, 2), Rational(1, 2), true, 15);
    QSeries p = poch_expand(1, +1, 1, 15).rescaled(s.scale());
    CHECK(s == p);
}

TEST_CASE("theta series of squares: 1 + 2q + 2q^4 + 2q^9 + 2q^16")
{
    QSeries s = jtp_bilateral(1, 0, false, 17);
    std::vector<long long> expect(17, 0);
    expect[0] = 1;
    expect[1] = 2;
    expect[4] = 2;
    expect[9] = 2;
    expect[16] = 2;
    CHECK(s == from_ints(expect, 17));
}

TEST_CASE("bilateral equals the triple product, 50 random cases")
{
    std::mt19937 rng(23);
    for (int done = 0; done < 50;) {
        long long da = 1 + rng() % 2, db = 1 + rng() % 2;
        Rational A(1 + (long long)(rng() % 6), da);
        Rational B((long long)(rng() % 5), db);
        if (!(B < A)) continue;  // keep exponents of the product nonnegative
        ++done;
        bool alt = rng() % 2;
        long long T = 60;
        QSeries lhs = jtp_bilateral(A, B, alt, T);
        int s = alt ? +1 : -1;
        QSeries rhs = series_mul(
            poch_expand(A * Rational(2), +1, A * Rational(2), T),
            series_mul(poch_expand(A + B, s, A * Rational(2), T),
                       poch_expand(A - B, s, A * Rational(2), T)));
        CHECK(lhs.rescaled(lcm_ll(lhs.scale(), rhs.scale()) / lhs.scale()) ==
              rhs.rescaled(lcm_ll(lhs.scale(), rhs.scale()) / rhs.scale()));
    }
}

TEST_CASE("square and triangular sums")
{
    QSeries sq = square_sum_series(SquareKind::squares, 1, 10);
    CHECK(sq == from_ints({0, 1, 0, 0, 1, 0, 0, 0, 0, 1}, 10));

    QSeries tri = square_sum_series(SquareKind::triangular, 5, 31);
    std::vector<long long> expect(31, 0);
    expect[0] = 1;
    expect[10] = 1;
    expect[30] = 1;
    CHECK(tri == from_ints(expect, 31));

    QSeries sq5 = square_sum_series(SquareKind::squares, 5, 21);
    std::vector<long long> e5(21, 0);
    e5[5] = 1;
    e5[20] = 1;
    CHECK(sq5 == from_ints(e5, 21));
}

TEST_CASE("rescaling preserves represented data")
{
    QSeries s = poch_expand(1, +1, 1, 12);
    QSeries r = s.rescaled(3);
    CHECK(r.scale() == 3);
    for (long long i = 0; i < 12; ++i) {
        CHECK(r.coeff(Rational(i)) == s.coeff_at_index(i));
        if (i > 0) CHECK(r.coeff_at_index(3 * i - 1) == 0);
    }
}

TEST_CASE("reading beyond the exactness bound throws")
{
    QSeries s = poch_expand(1, +1, 1, 5);
    CHECK_THROWS_AS((void)s.coeff_at_index(5), std::out_of_range);
}

TEST_CASE("nonpositive modulus rejected")
{
    CHECK_THROWS_AS(poch_expand(1, +1, 0, 5), std::domain_error);
    CHECK_THROWS_AS(jtp_bilateral(0, 1, true, 5), std::domain_error);
}

TEST_CASE("division demands a unit leading coefficient")
{
    QSeries two = QSeries::monomial(2, 0, 1, 10);
    CHECK_THROWS_AS(series_div(QSeries::one(1, 10), two), std::domain_error);
    CHECK_THROWS_AS(series_div(QSeries::one(1, 10), QSeries::zero(1, 10)),
                    std::domain_error);
    // A shifted unit leading coefficient is fine and shifts the result.
    QSeries q3 = QSeries::monomial(1, 3, 1, 10);
    QSeries r = series_div(QSeries::monomial(5, 4, 1, 10), q3);
    CHECK(r.coeff(Rational(1)) == 5);
    CHECK(r.min_index() == 1);
}

TEST_SUITE_END();

#pragma once

#include <string>
#include <vector>

#include "qprove/qseries.hpp"

namespace qprove {

/* Gaussian binomial [n, k]_q as a polynomial, truncated below T; zero for
 * k < 0 or k > n. */
QSeries qbinomial(long long n, long long k, long long T);

/* Generating function of M_k(n): partitions of n in which k is the least
 * positive integer that is not a part and there are more parts > k than
 * parts < k.  Computed from
 * sum_{n>=k} q^{C(k,2)+(k+1)n} / (q;q)_n * [n-1, k-1]. */
QSeries mk_series(long long k, long long T);

/* Partitions into parts not congruent to 0,7,8,13,15,20,22,27,28 mod 35,
 * with the eight classes 4,9,11,16,19,24,26,31 mod 35 in two colors:
 * 1 / ((q,q^4;q^5)(q^2,q^3,q^4,q^5;q^7)). */
QSeries a_series(long long T);

/* Partial pentagonal sum  sum_{n=-(k-1)}^{k} (-1)^n q^{n(3n-1)/2}. */
QSeries pentagonal_partial(long long k, long long T);

struct CheckReport {
    bool holds = false;
    long long checked_through = 0;
    long long first_discrepancy = -1;
};

/* (-1)^{k-1}/(q;q)_inf * pentagonal_partial(k)
 *   = (-1)^{k-1} + mk_series(k), verified below T. */
CheckReport truncated_pentagonal_check(long long k, long long T);

enum class Conjecture { c41, c41_inequalities, cexp };

struct ScanViolation {
    long long k = 0;
    long long S = 0;    // 0 when not applicable
    int variant = 0;    // cexp: 1 or 2 for the two denominators
    long long n = 0;
    std::string coefficient;
    std::string reason;  // e.g. "negative", "unexpected zero", "nonzero"
};

struct ScanReport {
    Conjecture conjecture;
    long long k_max = 0;
    std::vector<long long> S_set;
    long long T = 0;
    std::vector<ScanViolation> violations;
    /* c41 only: every vanishing coefficient position, verbatim; the series
     * has sporadic zeros beyond the stated set and the report does not
     * paper over them. */
    std::vector<std::pair<long long, std::vector<long long>>> empirical_zeros;
    bool clean() const { return violations.empty(); }
};

/* Numeric sign scans.  c41: coefficients of
 * (-1)^{k-1} (pentagonal_partial(k)/(q;q)_inf - 1) (q,q^6,q^7;q^7)_inf
 * must be nonnegative, vanishing at least on
 * {0 <= n < k(3k+1)/2} u {k(3k+1)/2 + 1}; the full observed zero set is
 * recorded.  c41_inequalities: the A(n) convolution combination is >= 0
 * with the stated strict positions.  cexp: nonnegative coefficients of the
 * two series with denominators (q,q^4;q^5) and (q^2,q^3;q^5).  Scans are
 * evidence, never proof. */
ScanReport conjecture_scan(Conjecture which, long long k_max,
                           const std::vector<long long>& S_set, long long T);

std::string scan_report_json(const ScanReport& rep);

}  // namespace qprove

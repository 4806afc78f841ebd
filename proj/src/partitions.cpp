#include "qprove/partitions.hpp"

#include <json.hpp>

#include "qprove/squares.hpp"

namespace qprove {

QSeries qbinomial(long long n, long long k, long long T)
{
    if (k < 0 || k > n) return QSeries::zero(1, T);
    if (k == 0 || k == n) return QSeries::one(1, T);
    // [n, k] = prod_{i=1..k} (1 - q^{n-k+i}) / (1 - q^i); the quotient is a
    // polynomial, so truncated division is exact.
    QSeries num = QSeries::one(1, T);
    QSeries den = QSeries::one(1, T);
    for (long long i = 1; i <= k; ++i) {
        num.mul_binomial(+1, n - k + i);
        den.mul_binomial(+1, i);
    }
    return series_div(num, den);
}

QSeries mk_series(long long k, long long T)
{
    if (k < 1) throw std::domain_error("mk_series: k must be >= 1");
    QSeries sum = QSeries::zero(1, T);
    long long base = k * (k - 1) / 2;
    // 1/(q;q)_n grown one factor at a time.
    QSeries inv_poch = QSeries::one(1, T);
    for (long long i = 1; i <= k; ++i) inv_poch.mul_geometric(i);
    for (long long n = k;; ++n) {
        if (n > k)
            inv_poch.mul_geometric(n);
        long long shift = base + (k + 1) * n;
        if (shift >= T) break;
        QSeries term = series_mul(inv_poch, qbinomial(n - 1, k - 1, T - shift));
        sum = series_add(sum, term.truncated(T - shift).shifted(shift));
    }
    return sum;
}

QSeries a_series(long long T)
{
    QSeries den = QSeries::one(1, T);
    den = series_mul(den, poch_expand(1, +1, 5, T));
    den = series_mul(den, poch_expand(4, +1, 5, T));
    for (long long e : {2, 3, 4, 5})
        den = series_mul(den, poch_expand(e, +1, 7, T));
    return series_div(QSeries::one(1, T), den);
}

QSeries pentagonal_partial(long long k, long long T)
{
    QSeries s = QSeries::zero(1, T);
    for (long long n = -(k - 1); n <= k; ++n) {
        long long e = n * (3 * n - 1) / 2;
        if (e >= T) continue;
        s = series_add(s, QSeries::monomial((n % 2 == 0) ? 1 : -1, e, 1, T));
    }
    return s;
}

CheckReport truncated_pentagonal_check(long long k, long long T)
{
    CheckReport rep;
    rep.checked_through = T;
    int sgn = (k % 2 == 1) ? +1 : -1;  // (-1)^{k-1}
    QSeries lhs = series_div(pentagonal_partial(k, T), poch_expand(1, +1, 1, T));
    lhs = lhs.scaled_by(sgn);
    QSeries rhs = series_add(QSeries::monomial(sgn, 0, 1, T), mk_series(k, T));
    auto diff = first_difference(lhs, rhs);
    rep.holds = !diff.has_value();
    if (diff) rep.first_discrepancy = *diff;
    return rep;
}

namespace {

/* The signed generating function of the 840m+361 square sequence, used by
 * the convolution inequalities. */
QSeries theorem1_gf(long long T)
{
    SquareClassSpec spec = make_square_spec(
        840, 361, {+1, +1, -1, +1, -1, +1, -1, -1}, true);
    return signed_gf_enumerate(spec, T);
}

}  // namespace

ScanReport conjecture_scan(Conjecture which, long long k_max,
                           const std::vector<long long>& S_set, long long T)
{
    ScanReport rep;
    rep.conjecture = which;
    rep.k_max = k_max;
    rep.S_set = S_set;
    rep.T = T;

    if (which == Conjecture::c41) {
        QSeries theta7 = series_mul(
            series_mul(poch_expand(1, +1, 7, T), poch_expand(6, +1, 7, T)),
            poch_expand(7, +1, 7, T));
        QSeries invpoch = series_div(QSeries::one(1, T), poch_expand(1, +1, 1, T));
        for (long long k = 1; k <= k_max; ++k) {
            int sgn = (k % 2 == 1) ? +1 : -1;
            QSeries inner = series_mul(pentagonal_partial(k, T), invpoch);
            inner = series_sub(inner, QSeries::one(1, T));
            QSeries f = series_mul(inner, theta7).scaled_by(sgn);
            long long zcut = k * (3 * k + 1) / 2;
            std::vector<long long> zeros;
            for (long long n = 0; n < T; ++n) {
                const BigInt& c = f.coeff_at_index(n);
                if (c == 0) zeros.push_back(n);
                bool stated_zero = (n < zcut) || (n == zcut + 1);
                if (stated_zero && c != 0)
                    rep.violations.push_back({k, 0, 0, n, c.str(),
                                              "nonzero at stated zero position"});
                else if (c < 0)
                    rep.violations.push_back({k, 0, 0, n, c.str(), "negative"});
            }
            rep.empirical_zeros.emplace_back(k, std::move(zeros));
        }
        return rep;
    }

    if (which == Conjecture::c41_inequalities) {
        QSeries A = a_series(T);
        QSeries gf = theorem1_gf(T);
        for (long long k = 1; k <= k_max; ++k) {
            int sgn = (k % 2 == 1) ? +1 : -1;
            QSeries comb =
                series_sub(series_mul(A, pentagonal_partial(k, T)), gf).scaled_by(sgn);
            long long zcut = k * (3 * k + 1) / 2;
            for (long long n = 0; n < T; ++n) {
                const BigInt& c = comb.coeff_at_index(n);
                if (c < 0)
                    rep.violations.push_back({k, 0, 0, n, c.str(), "negative"});
                else if (c == 0 && (n == zcut || n >= zcut + 2))
                    rep.violations.push_back({k, 0, 0, n, c.str(), "not strictly positive"});
            }
        }
        return rep;
    }

    // cexp: both denominator variants for every (k, S).
    QSeries den1 = series_mul(poch_expand(1, +1, 5, T), poch_expand(4, +1, 5, T));
    QSeries den2 = series_mul(poch_expand(2, +1, 5, T), poch_expand(3, +1, 5, T));
    for (long long k = 1; k <= k_max; ++k) {
        int sgn = (k % 2 == 0) ? +1 : -1;  // (-1)^k
        for (long long S : S_set) {
            QSeries tail = QSeries::zero(1, T);
            for (long long j = k;; ++j) {
                long long e = 7 * j * (j + 1) / 2 - j * S;
                if (e >= T) break;
                int js = (j % 2 == 0) ? 1 : -1;
                tail = series_add(tail, QSeries::monomial(js, e, 1, T));
                long long e2 = e + (2 * j + 1) * S;
                if (e2 < T)
                    tail = series_add(tail, QSeries::monomial(-js, e2, 1, T));
            }
            for (int variant = 1; variant <= 2; ++variant) {
                QSeries f =
                    series_div(tail, variant == 1 ? den1 : den2).scaled_by(sgn);
                for (long long n = 0; n < T; ++n) {
                    const BigInt& c = f.coeff_at_index(n);
                    if (c < 0)
                        rep.violations.push_back({k, S, variant, n, c.str(), "negative"});
                }
            }
        }
    }
    return rep;
}

std::string scan_report_json(const ScanReport& rep)
{
    nlohmann::ordered_json j;
    j["conjecture"] = rep.conjecture == Conjecture::c41 ? "c41"
                    : rep.conjecture == Conjecture::c41_inequalities ? "c41-inequalities"
                                                                     : "cexp";
    j["k_max"] = rep.k_max;
    if (!rep.S_set.empty()) j["S_set"] = rep.S_set;
    j["T"] = rep.T;
    if (!rep.empirical_zeros.empty()) {
        j["empirical_zeros"] = nlohmann::ordered_json::array();
        for (auto& [k, zeros] : rep.empirical_zeros) {
            nlohmann::ordered_json zj;
            zj["k"] = k;
            zj["zeros"] = zeros;
            j["empirical_zeros"].push_back(zj);
        }
    }
    j["violations"] = nlohmann::ordered_json::array();
    for (const ScanViolation& v : rep.violations) {
        nlohmann::ordered_json vj;
        vj["k"] = v.k;
        if (v.S != 0) vj["S"] = v.S;
        if (v.variant != 0) vj["variant"] = v.variant;
        vj["n"] = v.n;
        vj["coefficient"] = v.coefficient;
        vj["reason"] = v.reason;
        j["violations"].push_back(vj);
    }
    j["clean"] = rep.clean();
    return j.dump(2);
}

}  // namespace qprove

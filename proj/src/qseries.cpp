#include "qprove/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace qprove {

QSeries QSeries::zero(long long scale, long long limit)
{
    QSeries s;
    s.scale_ = scale;
    s.min_index_ = 0;
    s.limit_ = limit;
    return s;
}

QSeries QSeries::one(long long scale, long long limit)
{
    return monomial(1, 0, scale, limit);
}

QSeries QSeries::monomial(const BigInt& c, long long index, long long scale,
                          long long limit)
{
    QSeries s = zero(scale, limit);
    if (index < limit) {
        s.min_index_ = index;
        s.coeffs_.assign(1, c);
    }
    return s;
}

bool QSeries::is_zero() const
{
    for (const BigInt& c : coeffs_)
        if (c != 0) return false;
    return true;
}

std::optional<long long> QSeries::lowest_nonzero() const
{
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return min_index_ + static_cast<long long>(i);
    return std::nullopt;
}

const BigInt& QSeries::coeff_at_index(long long i) const
{
    static const BigInt kZero = 0;
    if (i >= limit_)
        throw std::out_of_range("coefficient read beyond exactness bound");
    if (i < min_index_ || i - min_index_ >= static_cast<long long>(coeffs_.size()))
        return kZero;
    return coeffs_[static_cast<size_t>(i - min_index_)];
}

BigInt QSeries::coeff(const Rational& e) const
{
    Rational idx = e * Rational(scale_);
    if (!idx.is_integer()) return 0;
    return coeff_at_index(idx.num());
}

QSeries QSeries::rescaled(long long factor) const
{
    if (factor == 1) return *this;
    QSeries r;
    r.scale_ = scale_ * factor;
    r.min_index_ = min_index_ * factor;
    r.limit_ = limit_ * factor;
    r.coeffs_.assign(coeffs_.size() * static_cast<size_t>(factor), 0);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        r.coeffs_[i * static_cast<size_t>(factor)] = coeffs_[i];
    return r;
}

QSeries QSeries::scaled_by(const BigInt& c) const
{
    QSeries r = *this;
    for (BigInt& x : r.coeffs_) x *= c;
    return r;
}

QSeries QSeries::shifted(long long gridshift) const
{
    QSeries r = *this;
    r.min_index_ += gridshift;
    r.limit_ += gridshift;
    return r;
}

QSeries QSeries::halved_exact() const
{
    QSeries r = *this;
    for (BigInt& c : r.coeffs_) {
        if (c % 2 != 0)
            throw std::logic_error("halved_exact: odd coefficient");
        c /= 2;
    }
    return r;
}

QSeries QSeries::truncated(long long new_limit) const
{
    if (new_limit > limit_)
        throw std::out_of_range("cannot extend exactness bound");
    QSeries r = *this;
    r.limit_ = new_limit;
    if (new_limit <= r.min_index_) {
        r.coeffs_.clear();
        r.min_index_ = new_limit - 1;
    } else if (new_limit - r.min_index_ < static_cast<long long>(r.coeffs_.size())) {
        r.coeffs_.resize(static_cast<size_t>(new_limit - r.min_index_));
    }
    return r;
}

void QSeries::mul_binomial(int s, long long d)
{
    reserve_range(min_index_, limit_);
    if (d == 0) {
        // (1 - s) is a constant: 0 for s = +1, 2 for s = -1.
        for (BigInt& c : coeffs_)
            c *= (1 - s);
        return;
    }
    if (d > 0) {
        long long n = static_cast<long long>(coeffs_.size());
        for (long long j = n - 1; j >= d; --j) {
            if (s > 0)
                coeffs_[j] -= coeffs_[j - d];
            else
                coeffs_[j] += coeffs_[j - d];
        }
    } else {
        // new[y] = old[y] - s*old[y + |d|]; the vector grows downward by
        // |d| and the exactness bound shrinks by the same amount (the
        // caller budgets working room, see poch_expand).
        size_t k = static_cast<size_t>(-d);
        std::vector<BigInt> out(coeffs_.size() + k, 0);
        for (size_t p = 0; p < out.size(); ++p) {
            BigInt v = 0;
            if (p >= k) v = coeffs_[p - k];
            if (p < coeffs_.size()) {
                if (s > 0)
                    v -= coeffs_[p];
                else
                    v += coeffs_[p];
            }
            out[p] = std::move(v);
        }
        min_index_ += d;
        limit_ += d;
        coeffs_ = std::move(out);
    }
}

void QSeries::mul_geometric(long long d)
{
    if (d <= 0) throw std::domain_error("mul_geometric: exponent must be positive");
    reserve_range(min_index_, limit_);
    long long n = static_cast<long long>(coeffs_.size());
    for (long long j = d; j < n; ++j) coeffs_[j] += coeffs_[j - d];
}

void QSeries::align(QSeries& a, QSeries& b)
{
    long long d = lcm_ll(a.scale_, b.scale_);
    if (a.scale_ != d) a = a.rescaled(d / a.scale_);
    if (b.scale_ != d) b = b.rescaled(d / b.scale_);
}

void QSeries::reserve_range(long long lo, long long hi)
{
    if (coeffs_.empty()) {
        min_index_ = lo;
        coeffs_.assign(static_cast<size_t>(hi - lo), 0);
        return;
    }
    long long cur_hi = min_index_ + static_cast<long long>(coeffs_.size());
    if (lo < min_index_) {
        coeffs_.insert(coeffs_.begin(), static_cast<size_t>(min_index_ - lo), 0);
        min_index_ = lo;
    }
    if (hi > cur_hi)
        coeffs_.resize(coeffs_.size() + static_cast<size_t>(hi - cur_hi), 0);
}

QSeries series_add(const QSeries& a0, const QSeries& b0)
{
    QSeries a = a0, b = b0;
    QSeries::align(a, b);
    QSeries r = QSeries::zero(a.scale_, std::min(a.limit_, b.limit_));
    long long lo = std::min(a.min_index_, b.min_index_);
    long long hi = std::min(r.limit_,
                            std::max(a.min_index_ + (long long)a.coeffs_.size(),
                                     b.min_index_ + (long long)b.coeffs_.size()));
    if (hi <= lo) return r;
    r.reserve_range(lo, hi);
    for (long long i = lo; i < hi; ++i) {
        BigInt v = 0;
        if (i >= a.min_index_ && i - a.min_index_ < (long long)a.coeffs_.size())
            v += a.coeffs_[(size_t)(i - a.min_index_)];
        if (i >= b.min_index_ && i - b.min_index_ < (long long)b.coeffs_.size())
            v += b.coeffs_[(size_t)(i - b.min_index_)];
        r.coeffs_[(size_t)(i - lo)] = std::move(v);
    }
    return r;
}

QSeries series_sub(const QSeries& a, const QSeries& b)
{
    return series_add(a, b.scaled_by(-1));
}

QSeries series_mul(const QSeries& a0, const QSeries& b0)
{
    QSeries a = a0, b = b0;
    QSeries::align(a, b);
    // Exactness bound of a product: a term a_j b_k lands at j+k, so index i
    // is exact as long as every split uses known coefficients.
    long long limit = std::min(a.limit_ + b.min_index_, b.limit_ + a.min_index_);
    QSeries r = QSeries::zero(a.scale_, limit);
    if (a.coeffs_.empty() || b.coeffs_.empty()) return r;
    long long lo = a.min_index_ + b.min_index_;
    if (lo >= limit) return r;
    r.min_index_ = lo;
    r.coeffs_.assign(static_cast<size_t>(limit - lo), 0);
    long long na = static_cast<long long>(a.coeffs_.size());
    long long nb = static_cast<long long>(b.coeffs_.size());
    for (long long j = 0; j < na; ++j) {
        const BigInt& aj = a.coeffs_[(size_t)j];
        if (aj == 0) continue;
        long long kmax = std::min(nb, limit - lo - j);
        for (long long k = 0; k < kmax; ++k) {
            const BigInt& bk = b.coeffs_[(size_t)k];
            if (bk != 0) r.coeffs_[(size_t)(j + k)] += aj * bk;
        }
    }
    return r;
}

QSeries series_div(const QSeries& a0, const QSeries& b0)
{
    QSeries a = a0, b = b0;
    QSeries::align(a, b);
    auto low = b.lowest_nonzero();
    if (!low)
        throw std::domain_error("series division by zero series");
    long long mb = *low;
    const BigInt& lead = b.coeff_at_index(mb);
    if (lead != 1 && lead != -1)
        throw std::domain_error(
            "series division requires unit (+-1) leading coefficient");
    int unit = (lead == 1) ? 1 : -1;

    long long limit = std::min(a.limit_, b.limit_) - mb;
    QSeries r = QSeries::zero(a.scale_, limit);
    long long lo = a.min_index_ - mb;
    if (lo >= limit) return r;
    r.min_index_ = lo;
    r.coeffs_.assign(static_cast<size_t>(limit - lo), 0);

    // Long division from the bottom: r_i = unit*(a_{mb+i} - sum b_{mb+k} r_{i-k}).
    for (long long i = lo; i < limit; ++i) {
        BigInt acc = 0;
        long long ai = i + mb;
        if (ai >= a.min_index_ && ai - a.min_index_ < (long long)a.coeffs_.size())
            acc = a.coeffs_[(size_t)(ai - a.min_index_)];
        long long kmax = std::min(i - lo,
                                  b.limit_ - 1 - mb);
        for (long long k = 1; k <= kmax; ++k) {
            long long bi = mb + k;
            if (bi - b.min_index_ >= (long long)b.coeffs_.size()) break;
            const BigInt& bk = b.coeffs_[(size_t)(bi - b.min_index_)];
            if (bk != 0) acc -= bk * r.coeffs_[(size_t)(i - k - lo)];
        }
        if (unit < 0) acc = -acc;
        r.coeffs_[(size_t)(i - lo)] = std::move(acc);
    }
    return r;
}

bool operator==(const QSeries& a, const QSeries& b)
{
    return !first_difference(a, b).has_value();
}

std::optional<long long> first_difference(const QSeries& a0, const QSeries& b0)
{
    QSeries a = a0, b = b0;
    QSeries::align(a, b);
    long long limit = std::min(a.limit(), b.limit());
    long long lo = std::min(a.min_index(), b.min_index());
    for (long long i = lo; i < limit; ++i) {
        if (a.coeff_at_index(i) != b.coeff_at_index(i)) return i;
    }
    return std::nullopt;
}

std::string QSeries::str() const
{
    std::ostringstream os;
    bool first = true;
    for (long long i = min_index_; i < limit_; ++i) {
        const BigInt& c = coeff_at_index(i);
        if (c == 0) continue;
        BigInt mag = c < 0 ? BigInt(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        Rational e(i, scale_);
        if (e.is_zero()) {
            os << mag;
        } else {
            if (mag != 1) os << mag << "*";
            os << "q";
            if (e != Rational(1))
                os << "^" << (e.is_integer() ? e.str() : "(" + e.str() + ")");
        }
    }
    if (first) os << "0";
    return os.str();
}

QSeries poch_expand(const Rational& e, int sign, const Rational& M, long long T)
{
    if (!(Rational(0) < M))
        throw std::domain_error("poch_expand: modulus must be positive");
    long long D = lcm_ll(e.den(), M.den());
    Rational ie = e * Rational(D);
    Rational im = M * Rational(D);
    long long ei = ie.num(), mi = im.num();
    long long limit = T * D;

    // Collect the factor exponents that can touch coefficients below T.
    std::vector<long long> ds;
    for (long long d = ei; d < limit; d += mi) ds.push_back(d);

    long long neg = 0;
    for (long long d : ds)
        if (d < 0) neg += d;

    // Factors with negative exponent pull higher terms downward, so expand
    // with extra working room and cut back afterwards.
    QSeries r = QSeries::one(D, limit - neg);
    for (long long d : ds) r.mul_binomial(sign, d);
    return r.truncated(limit);
}

QSeries jtp_bilateral(const Rational& A, const Rational& B, bool alternating,
                      long long T)
{
    if (!(Rational(0) < A))
        throw std::domain_error("jtp_bilateral: quadratic coefficient must be positive");
    long long D = lcm_ll(A.den(), B.den());
    long long limit = T * D;

    // |k| beyond which A k^2 + B k >= T for sure.
    double ad = double(A.num()) / double(A.den());
    double bd = double(B.num()) / double(B.den());
    long long K = static_cast<long long>((std::abs(bd) + std::sqrt(bd * bd + 4.0 * ad * std::max<long long>(T, 1))) / (2.0 * ad)) + 2;

    std::map<long long, BigInt> acc;
    for (long long k = -K; k <= K; ++k) {
        Rational v = A * Rational(k) * Rational(k) + B * Rational(k);
        Rational idx = v * Rational(D);
        long long i = idx.num();
        if (i >= limit) continue;
        int s = (alternating && ((k % 2) != 0)) ? -1 : 1;
        acc[i] += s;
    }
    QSeries out = QSeries::zero(D, limit);
    for (auto& [i, c] : acc)
        if (c != 0) out = series_add(out, QSeries::monomial(c, i, D, limit));
    return out;
}

QSeries square_sum_series(SquareKind kind, long long M, long long T)
{
    if (M < 1) throw std::domain_error("square_sum_series: scale must be >= 1");
    if (kind == SquareKind::triangular) {
        QSeries p = poch_expand(Rational(2 * M), 1, Rational(2 * M), T);
        QSeries m = poch_expand(Rational(2 * M), -1, Rational(2 * M), T);
        return series_mul(p, series_mul(m, m));
    }
    QSeries p = poch_expand(Rational(2 * M), 1, Rational(2 * M), T);
    QSeries m = poch_expand(Rational(M), -1, Rational(2 * M), T);
    QSeries prod = series_mul(p, series_mul(m, m));
    prod = series_sub(prod, QSeries::one(prod.scale(), prod.limit()));
    // Every coefficient of the doubled one-sided sum must be even.
    return prod.halved_exact();
}

}  // namespace qprove

#include "qprove/modularcusp.hpp"

#include <algorithm>
#include <set>

namespace qprove {

Cusp make_cusp(long long numer, long long denom)
{
    if (denom < 0) {
        numer = -numer;
        denom = -denom;
    }
    if (denom == 0) return Cusp{1, 0};
    long long g = gcd_ll(numer, denom);
    if (g > 1) {
        numer /= g;
        denom /= g;
    }
    return Cusp{numer, denom};
}

long long cusp_width(const Cusp& c, long long N)
{
    return N / gcd_ll(c.denom, N);
}

namespace {

long long mod(long long a, long long m)
{
    long long r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

bool cusps_equivalent(const Cusp& x, const Cusp& y, long long N)
{
    // (a', c') = s (a + j c, c) mod N reduces to c' = s c (mod N) and
    // a' = s a (mod gcd(c, N)).
    long long g = gcd_ll(x.denom, N);
    for (int s : {+1, -1}) {
        if (mod(y.denom - s * x.denom, N) != 0) continue;
        if (mod(y.numer - s * x.numer, g) == 0) return true;
    }
    return false;
}

long long cusp_count_formula(long long N)
{
    auto phi = [](long long n) {
        long long r = n;
        for (long long p = 2; p * p <= n; ++p) {
            if (n % p == 0) {
                r -= r / p;
                while (n % p == 0) n /= p;
            }
        }
        if (n > 1) r -= r / n;
        return r;
    };
    long long sum = 0;
    for (long long d = 1; d * d <= N; ++d) {
        if (N % d != 0) continue;
        sum += phi(d) * phi(N / d);
        if (d != N / d) sum += phi(N / d) * phi(d);
    }
    return sum / 2;
}

CuspClassSet cusp_representatives(long long N)
{
    if (N < 5) throw std::domain_error("cusp_representatives: level must be >= 5");

    // Enumerate residue pairs (a, c) mod N with gcd(a, c, N) = 1 and keep
    // the lexicographically least point of each orbit under
    // (a, c) -> +-(a + j c, c).
    std::set<std::pair<long long, long long>> seen;
    std::vector<std::pair<long long, long long>> keys;
    for (long long c = 0; c < N; ++c) {
        for (long long a = 0; a < N; ++a) {
            if (std::gcd(gcd_ll(a, c), N) != 1) continue;
            std::pair<long long, long long> best{N, N};
            for (int s : {+1, -1}) {
                long long cs = mod(s * c, N);
                long long as = mod(s * a, N);
                long long step = gcd_ll(c, N);
                // a + j c mod N ranges over the class a mod gcd(c, N).
                long long base = step == 0 ? as : mod(as, step);
                if (step == 0) {
                    best = std::min(best, {as, cs});
                } else {
                    best = std::min(best, {base, cs});
                }
            }
            if (seen.insert(best).second) keys.push_back(best);
        }
    }

    CuspClassSet out;
    out.level = N;
    std::vector<Cusp> reps;
    for (auto& [a0, c0] : keys) {
        Cusp rep;
        if (c0 == 0) {
            // Denominator divisible by N: either i-infinity or a/N.
            if (a0 == mod(1, N) || a0 == mod(-1, N))
                rep = Cusp{1, 0};
            else
                rep = make_cusp(a0, N);
        } else {
            long long a = a0;
            while (gcd_ll(a, c0) != 1) a += N;
            rep = Cusp{a, c0};
        }
        reps.push_back(rep);
    }
    // i-infinity first, then by denominator/numerator for stable output.
    std::sort(reps.begin(), reps.end(), [](const Cusp& x, const Cusp& y) {
        if (x.is_infinity() != y.is_infinity()) return x.is_infinity();
        if (x.denom != y.denom) return x.denom < y.denom;
        return x.numer < y.numer;
    });
    out.representatives = reps;

    // Paranoia: duplicates would poison the valence sum.
    for (size_t i = 0; i + 1 < reps.size(); ++i)
        for (size_t j = i + 1; j < reps.size(); ++j)
            if (cusps_equivalent(reps[i], reps[j], N))
                throw std::logic_error("cusp enumeration produced equivalent reps");
    return out;
}

Rational order_at_cusp(long long g, const Cusp& c, long long N)
{
    if (c.is_infinity())
        throw std::domain_error("order_at_cusp: the infinity cusp is handled by series expansion");
    if (g < 1 || g > N - 1)
        throw std::domain_error("order_at_cusp: g out of range");
    long long d = gcd_ll(c.denom, N);
    Rational x = Rational(c.numer * g, d).frac();
    return Rational(d, 2) * Rational::bernoulli2(x);
}

Rational eproduct_order_at_cusp(const EProduct& p, const Cusp& c)
{
    if (p.eta != 0)
        throw std::domain_error("eproduct_order_at_cusp: eta factor present in " + p.str());
    auto view = p.e_view();
    if (!view)
        throw std::domain_error("eproduct_order_at_cusp: not an E-product: " + p.str());
    Rational sum(0);
    for (auto& [g, a] : *view)
        sum += Rational(a) * order_at_cusp(g, c, p.level);
    return sum;
}

bool is_modular_function(const EProduct& p)
{
    if (p.eta != 0) return false;
    auto view = p.e_view();
    if (!view) return false;
    long long y = (p.level % 2 == 0) ? 2 * p.level : p.level;
    long long sum_a = 0;
    long long sum_g2a = 0;
    for (auto& [g, a] : *view) {
        sum_a += a;
        sum_g2a += ((g * g) % y) * (a % y) % y;
        sum_g2a %= y;
    }
    return sum_a % 12 == 0 && ((sum_g2a % y) + y) % y == 0;
}

ValenceBound valence_bound(const std::vector<EProduct>& terms,
                           const CuspClassSet& cusps)
{
    for (const EProduct& t : terms) {
        if (t.level != cusps.level)
            throw std::domain_error("valence_bound: term level mismatch: " + t.str());
        if (t.eta != 0)
            throw std::domain_error("valence_bound: eta factor present in term " + t.str());
        if (!is_modular_function(t))
            throw std::domain_error("valence_bound: non-modular term " + t.str());
    }
    ValenceBound out;
    out.order_sum = Rational(0);
    for (const Cusp& c : cusps.representatives) {
        if (c.is_infinity()) continue;
        bool first = true;
        Rational mn(0);
        for (const EProduct& t : terms) {
            Rational o = eproduct_order_at_cusp(t, c);
            if (first || o < mn) {
                mn = o;
                first = false;
            }
        }
        out.per_cusp_minimum.push_back(mn);
        out.order_sum += mn;
    }
    out.U = -out.order_sum.floor();
    return out;
}

}  // namespace qprove

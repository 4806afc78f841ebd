#include "qprove/weierstrass.hpp"

#include <algorithm>
#include <array>

namespace qprove {

namespace {

ThetaMonomial make_theta(const SignedMonomial& arg, long long base)
{
    return ThetaMonomial{base, Rational(arg.exponent), arg.sign};
}

/* Minimum exponent of the normalized theta (its series starts there). */
Rational theta_min_exponent(const ThetaMonomial& m)
{
    return theta_normalize(m).shift;
}

/* Product of theta factors times sign*q^{shift}, exact below T. */
QSeries theta_product_expand(const std::vector<ThetaMonomial>& factors, int sign,
                             const Rational& shift, long long T)
{
    for (const ThetaMonomial& f : factors)
        if (theta_is_zero(f)) return QSeries::zero(1, T);

    // Pad so that Laurent factors do not eat into the exactness range.
    Rational pad(0);
    for (const ThetaMonomial& f : factors) {
        Rational mn = theta_min_exponent(f);
        if (mn < Rational(0)) pad -= mn;
    }
    if (shift < Rational(0)) pad -= shift;
    long long Tpad = T + pad.floor() + 1;

    QSeries prod = QSeries::one(1, Tpad);
    for (const ThetaMonomial& f : factors)
        prod = series_mul(prod, theta_expand(f, Tpad));
    if (sign < 0) prod = prod.scaled_by(-1);
    long long D = lcm_ll(prod.scale(), shift.den());
    prod = prod.rescaled(D / prod.scale());
    QSeries out = prod.shifted((shift * Rational(D)).num());
    return out.truncated(std::min(out.limit(), T * D));
}

}  // namespace

TaddReport instantiate_tadd(const WeierstrassInstance& inst, long long T)
{
    TaddReport rep;
    rep.checked_through = T;
    const auto& [b, u, v, x, y] = inst;

    struct Named {
        const char* name;
        SignedMonomial arg;
    };
    std::array<Named, 12> args = {{{"xy", x * y},
                                   {"x/y", x / y},
                                   {"uv", u * v},
                                   {"u/v", u / v},
                                   {"xv", x * v},
                                   {"x/v", x / v},
                                   {"uy", u * y},
                                   {"u/y", u / y},
                                   {"yv", y * v},
                                   {"y/v", y / v},
                                   {"xu", x * u},
                                   {"x/u", x / u}}};
    for (const Named& n : args)
        if (theta_is_zero(make_theta(n.arg, b)))
            rep.zero_factors.push_back(std::string("theta(") + n.arg.str() + ")");

    auto quad = [&](int i0) {
        std::vector<ThetaMonomial> fs;
        for (int i = i0; i < i0 + 4; ++i) fs.push_back(make_theta(args[i].arg, b));
        return fs;
    };
    SignedMonomial uy = u / y;
    QSeries lhs1 = theta_product_expand(quad(0), +1, Rational(0), T);
    QSeries lhs2 = theta_product_expand(quad(4), +1, Rational(0), T);
    QSeries rhs = theta_product_expand(quad(8), uy.sign, Rational(uy.exponent), T);

    QSeries diff = series_sub(series_sub(lhs1, lhs2), rhs);
    auto bad = first_difference(diff, QSeries::zero(diff.scale(), diff.limit()));
    if (bad) {
        rep.verified = false;
        rep.first_discrepancy = Rational(*bad, diff.scale());
    } else {
        rep.verified = true;
    }
    return rep;
}

namespace {

/* eta(q^level) * theta(arg; q^level) as an E-product, using the canonical
 * normalization of the theta factor. */
EProduct eta_theta_eprod(long long level, const SignedMonomial& arg)
{
    ThetaMonomial m{level, Rational(arg.exponent), arg.sign};
    if (theta_is_zero(m))
        throw std::domain_error("degenerate theta(1) factor: theta(" + arg.str() + ")");
    ThetaNormalization n = theta_normalize(m);
    if (!n.canonical.arg_exponent.is_integer())
        throw std::logic_error("non-integer canonical theta exponent");
    long long a = n.canonical.arg_exponent.num();
    int s = n.canonical.arg_sign;
    EProduct p = EProduct::one(level);
    p.eta = 1;
    p.slots[{a, s}] += 1;
    p.slots[{level - a, s}] += 1;
    p.scalar = n.scalar;
    p.qpower = n.shift;
    return p;
}

}  // namespace

ThrelReduction reduce_threl(int which, long long N, const SignedMonomial& u, long long T)
{
    if (which != 1 && which != 2)
        throw std::domain_error("reduce_threl: which must be 1 or 2");
    ThrelReduction red;
    long long c = which;  // the specialization uses q^{cN}
    SignedMonomial u3{u.sign, 3 * u.exponent};  // u^3 has sign s^3 = s

    // First product: theta(u^3 / q^{cN}; q^{3N}).
    red.lhs_terms.push_back(
        eta_theta_eprod(3 * N, SignedMonomial{u3.sign, u3.exponent - c * N}));
    // Second product with its monomial prefactor.
    if (which == 1) {
        EProduct t = eta_theta_eprod(3 * N, SignedMonomial{u3.sign, u3.exponent - 2 * N});
        t.scalar *= Rational(u.sign);
        t.qpower += Rational(N - u.exponent);
        red.lhs_terms.push_back(t);
    } else {
        EProduct t = eta_theta_eprod(3 * N, SignedMonomial{u3.sign, u3.exponent - 4 * N});
        t.scalar *= Rational(-1);  // u^{-2} carries sign +1
        t.qpower += Rational(3 * N - 2 * u.exponent);
        red.lhs_terms.push_back(t);
    }

    // Right-hand side at level N: eta * theta(u^2/q^{cN}) / theta(u/q^{(c-1)N}).
    SignedMonomial u2{+1, 2 * u.exponent};
    EProduct num = eta_theta_eprod(N, SignedMonomial{u2.sign, u2.exponent - c * N});
    ThetaMonomial dm{N, Rational(u.exponent - (c - 1) * N), u.sign};
    if (theta_is_zero(dm))
        throw std::domain_error("degenerate theta(1) factor: theta(" + u.str() + ")");
    ThetaNormalization dn = theta_normalize(dm);
    long long da = dn.canonical.arg_exponent.num();
    EProduct rhs = num;
    rhs.slots[{da, dn.canonical.arg_sign}] -= 1;
    rhs.slots[{N - da, dn.canonical.arg_sign}] -= 1;
    std::erase_if(rhs.slots, [](const auto& kv) { return kv.second == 0; });
    rhs.scalar = rhs.scalar / dn.scalar;
    rhs.qpower -= dn.shift;
    red.rhs = rhs;

    QSeries lhs = series_add(eprod_expand(red.lhs_terms[0], T),
                             eprod_expand(red.lhs_terms[1], T));
    QSeries rhx = eprod_expand(red.rhs, T);
    red.verified = !first_difference(lhs, rhx).has_value();
    return red;
}

namespace {

/* Integer-only theta normalization for the search hot loop:
 * theta(s q^e; q^M) = sigma q^{delta} theta(s q^a; q^M), 0 <= a <= M/2. */
struct NormTheta {
    long long a;
    int s;
    int sigma;
    long long delta;
    bool zero;
};

NormTheta norm_theta_int(int s, long long e, long long M)
{
    // Each quasi-period step multiplies by (-s), so sigma = (-s)^{steps}.
    NormTheta n{0, s, +1, 0, false};
    long long steps, a;
    if (e >= 0) {
        steps = e / M;  // downward
        n.delta = steps * (M - e) + M * steps * (steps - 1) / 2;
        a = e - steps * M;
    } else {
        steps = (-e + M - 1) / M;  // upward
        n.delta = steps * e + M * steps * (steps - 1) / 2;
        a = e + steps * M;
    }
    if (steps % 2 == 1 && s > 0) n.sigma = -1;
    n.zero = (a == 0 && s > 0);
    if (a * 2 > M) a = M - a;
    n.a = a;
    return n;
}

struct ThetaQuotient {
    std::vector<std::pair<long long, int>> num;  // canonical (a, sign)
    std::vector<std::pair<long long, int>> den;
    int sign = +1;
    Rational shift;
};

/* Theta factors of an eta*theta-quotient target. */
ThetaQuotient target_thetas(const EProduct& t, long long base)
{
    if (t.level != base)
        throw std::domain_error("search target level mismatch");
    ThetaQuotient q;
    std::map<PochArg, long long> left = t.slots;
    while (!left.empty()) {
        auto [arg, m] = *left.begin();
        long long partner = base - arg.exponent;
        PochArg pa{partner, arg.sign};
        auto it = left.find(pa);
        long long pm = (arg.exponent == partner) ? m : (it == left.end() ? 0 : it->second);
        long long take = (arg.exponent == partner) ? m / 2 : std::min(std::llabs(m), std::llabs(pm)) * (m > 0 ? 1 : -1);
        if (take == 0 || (m > 0) != (pm > 0))
            throw std::domain_error("search target is not a quotient of thetas");
        long long a = std::min(arg.exponent, partner);
        for (long long i = 0; i < std::llabs(take); ++i)
            (take > 0 ? q.num : q.den).emplace_back(a, arg.sign);
        left.erase({arg.exponent, arg.sign});
        if (arg.exponent != partner) {
            left[pa] -= take;
            if (left[pa] == 0) left.erase(pa);
        }
    }
    if (!(t.scalar == Rational(1) || t.scalar == Rational(-1)))
        throw std::domain_error("search target scalar must be +-1");
    q.sign = t.scalar == Rational(1) ? +1 : -1;
    q.shift = t.qpower;
    std::sort(q.num.begin(), q.num.end());
    std::sort(q.den.begin(), q.den.end());
    return q;
}

}  // namespace

std::vector<WeierstrassInstance> search_specialization(const EProduct& t1,
                                                       const EProduct& t2,
                                                       long long base,
                                                       long long bound,
                                                       long long T)
{
    std::vector<WeierstrassInstance> hits;
    if (t1.eta != t2.eta) return hits;
    ThetaQuotient q1 = target_thetas(t1, base);
    ThetaQuotient q2 = target_thetas(t2, base);

    // Target ratio t1/t2 with common theta factors cancelled.
    std::vector<std::pair<long long, int>> rnum, rden;
    {
        std::map<std::pair<long long, int>, long long> count;
        for (auto& f : q1.num) count[f]++;
        for (auto& f : q1.den) count[f]--;
        for (auto& f : q2.num) count[f]--;
        for (auto& f : q2.den) count[f]++;
        for (auto& [f, c] : count)
            for (long long i = 0; i < std::llabs(c); ++i)
                (c > 0 ? rnum : rden).push_back(f);
    }
    int rsign = q1.sign * q2.sign;
    Rational rshift = q1.shift - q2.shift;
    if (!rshift.is_integer()) return hits;
    long long rshift_i = rshift.num();

    // Candidate relation terms R1 = Q1, R2 = -Q2, R3 = -Q3; the ratio of
    // any two must reproduce rnum/rden with matching sign and shift.
    struct Quad {
        std::array<std::pair<long long, int>, 4> fs;
        int sigma;
        long long delta;
        bool zero;
    };
    auto norm_quad = [&](std::array<std::pair<int, long long>, 4> raw) {
        Quad q{{}, +1, 0, false};
        for (int i = 0; i < 4; ++i) {
            NormTheta n = norm_theta_int(raw[i].first, raw[i].second, base);
            if (n.zero) q.zero = true;
            q.fs[i] = {n.a, n.s};
            q.sigma *= n.sigma;
            q.delta += n.delta;
        }
        std::sort(q.fs.begin(), q.fs.end());
        return q;
    };

    // Ratio Qi/Qj == rnum/rden <=> multiset(Qi) + rden == multiset(Qj) + rnum.
    auto ratio_matches = [&](const Quad& qi, const Quad& qj) {
        std::vector<std::pair<long long, int>> left(qi.fs.begin(), qi.fs.end());
        left.insert(left.end(), rden.begin(), rden.end());
        std::vector<std::pair<long long, int>> right(qj.fs.begin(), qj.fs.end());
        right.insert(right.end(), rnum.begin(), rnum.end());
        std::sort(left.begin(), left.end());
        std::sort(right.begin(), right.end());
        return left == right;
    };

    for (int su = +1; su >= -1; su -= 2)
    for (long long eu = 0; eu <= bound; ++eu)
    for (int sv = +1; sv >= -1; sv -= 2)
    for (long long ev = 0; ev <= bound; ++ev)
    for (int sx = +1; sx >= -1; sx -= 2)
    for (long long ex = 0; ex <= bound; ++ex)
    for (int sy = +1; sy >= -1; sy -= 2)
    for (long long ey = 0; ey <= bound; ++ey) {
        Quad Q1 = norm_quad({{{sx * sy, ex + ey},
                              {sx * sy, ex - ey},
                              {su * sv, eu + ev},
                              {su * sv, eu - ev}}});
        if (Q1.zero) continue;
        Quad Q2 = norm_quad({{{sx * sv, ex + ev},
                              {sx * sv, ex - ev},
                              {su * sy, eu + ey},
                              {su * sy, eu - ey}}});
        if (Q2.zero) continue;
        Quad Q3 = norm_quad({{{sy * sv, ey + ev},
                              {sy * sv, ey - ev},
                              {sx * su, ex + eu},
                              {sx * su, ex - eu}}});
        if (Q3.zero) continue;
        // Fold the (u/y) prefactor into Q3.
        Q3.sigma *= su * sy;
        Q3.delta += eu - ey;

        struct Term {
            const Quad* q;
            int sign;
        };
        std::array<Term, 3> terms = {{{&Q1, +1}, {&Q2, -1}, {&Q3, -1}}};
        bool found = false;
        for (int i = 0; i < 3 && !found; ++i) {
            for (int j = 0; j < 3 && !found; ++j) {
                if (i == j) continue;
                const Term& Ri = terms[i];
                const Term& Rj = terms[j];
                if (Ri.sign * Ri.q->sigma * Rj.sign * Rj.q->sigma != rsign) continue;
                if (Ri.q->delta - Rj.q->delta != rshift_i) continue;
                if (!ratio_matches(*Ri.q, *Rj.q)) continue;
                found = true;
            }
        }
        if (!found) continue;
        WeierstrassInstance inst{base,
                                 {su, eu},
                                 {sv, ev},
                                 {sx, ex},
                                 {sy, ey}};
        if (instantiate_tadd(inst, T).verified) hits.push_back(inst);
    }
    return hits;
}

std::pair<EProduct, EProduct> euler_odd_distinct(long long M)
{
    EProduct lhs = EProduct::one(2 * M);
    lhs.mul_poch(M, 2 * M, +1, -1);
    EProduct rhs = EProduct::one(2 * M);
    rhs.mul_poch(M, M, -1, +1);
    return {lhs, rhs};
}

std::pair<EProduct, EProduct> euler_negated(long long M)
{
    EProduct lhs = EProduct::one(4 * M);
    lhs.mul_poch(M, 2 * M, -1, -1);
    EProduct rhs = EProduct::one(4 * M);
    rhs.mul_poch(M, 2 * M, +1, +1);
    rhs.mul_poch(2 * M, 2 * M, -1, +1);
    return {lhs, rhs};
}

}  // namespace qprove

#include "qprove/squares.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qprove {

std::pair<long long, std::vector<long long>> solve_residues(long long K, long long bsq)
{
    if (K < 1) throw std::domain_error("solve_residues: K must be >= 1");
    std::vector<char> sol(static_cast<size_t>(K), 0);
    long long b = ((bsq % K) + K) % K;
    for (long long s = 0; s < K; ++s)
        if ((s * s) % K == b) sol[static_cast<size_t>(s)] = 1;

    // The minimal period of a K-periodic set divides K.
    long long R = K;
    for (long long d = 1; d < K; ++d) {
        if (K % d != 0) continue;
        bool periodic = true;
        for (long long s = 0; s < K && periodic; ++s)
            if (sol[static_cast<size_t>(s)] != sol[static_cast<size_t>((s + d) % K)])
                periodic = false;
        if (periodic) {
            R = d;
            break;
        }
    }
    std::vector<long long> classes;
    for (long long r = 0; r < R; ++r)
        if (sol[static_cast<size_t>(r)]) classes.push_back(r);
    return {R, classes};
}

SquareClassSpec make_square_spec(long long K, long long bsq,
                                 const std::vector<int>& signs, bool alternating)
{
    auto [R, classes] = solve_residues(K, bsq);
    if (classes.size() != signs.size())
        throw std::domain_error("square spec: expected " + std::to_string(classes.size()) +
                                " signs for K=" + std::to_string(K) +
                                " bsq=" + std::to_string(bsq));
    SquareClassSpec spec;
    spec.K = K;
    spec.bsq = bsq;
    spec.period = R;
    spec.classes = classes;
    spec.signs = signs;
    spec.alternating = alternating;
    // Closure under r -> R - r, required by the pairing step.
    std::set<long long> have(classes.begin(), classes.end());
    for (long long r : classes) {
        long long partner = (R - r) % R;
        if (!have.count(partner))
            throw std::domain_error("square spec: classes not closed under r -> R-r");
    }
    return spec;
}

std::vector<BilateralSum> build_bilateral(const SquareClassSpec& spec)
{
    long long R = spec.period;
    std::map<long long, int> sign_of;
    for (size_t i = 0; i < spec.classes.size(); ++i)
        sign_of[spec.classes[i]] = spec.signs[i];

    std::vector<BilateralSum> out;
    for (size_t i = 0; i < spec.classes.size(); ++i) {
        long long r = spec.classes[i];
        long long partner = (R - r) % R;
        if (partner < r) continue;  // handled by the partner
        if (partner == r)
            throw std::domain_error("build_bilateral: self-paired class r=" +
                                    std::to_string(r));
        int sr = sign_of[r];
        int sp = sign_of[partner];
        // k -> -k-1 maps the partner class onto negative k of class r; the
        // (-1)^k alternation flips sign under that substitution.
        int needed = spec.alternating ? -sr : sr;
        if (sp != needed)
            throw std::domain_error(
                "build_bilateral: incompatible signs for classes " + std::to_string(r) +
                " and " + std::to_string(partner));
        BilateralSum s;
        s.sign = sr;
        s.alternating = spec.alternating;
        s.A = Rational(R * R, spec.K);
        s.B = Rational(2 * r * R, spec.K);
        s.C = Rational(r * r - spec.bsq, spec.K);
        // ((R k + r)^2 - bsq)/K must be an integer for every k.
        for (long long k : {0LL, 1LL, -1LL, 2LL, -2LL}) {
            Rational v = s.A * Rational(k * k) + s.B * Rational(k) + s.C;
            if (!v.is_integer())
                throw std::domain_error("build_bilateral: non-integer exponent values");
        }
        out.push_back(s);
    }
    return out;
}

std::vector<EProduct> compile_theta(const SquareClassSpec& spec)
{
    std::vector<EProduct> out;
    for (const BilateralSum& s : build_bilateral(spec)) {
        Rational lvl = s.A * Rational(2);
        if (!lvl.is_integer())
            throw std::domain_error("compile_theta: level 2A is not an integer");
        long long N = lvl.num();
        Rational ab1 = s.A + s.B;
        Rational ab2 = s.A - s.B;
        if (!ab1.is_integer() || !ab2.is_integer())
            throw std::domain_error("compile_theta: non-integer theta arguments");
        EProduct p = EProduct::one(N);
        p.scalar = Rational(s.sign);
        p.qpower = s.C;
        p.eta = 1;
        int argsign = s.alternating ? +1 : -1;
        p.slots[{ab1.num(), argsign}] += 1;
        p.slots[{ab2.num(), argsign}] += 1;
        out.push_back(p);
    }
    return out;
}

namespace {

/* Terms (exponent, sign bit) of the signed generating function in
 * increasing exponent order, including any negative exponents arising when
 * a residue lies below sqrt(bsq).  Terms for k+1 all exceed terms for k, so
 * blocks arrive in order. */
std::vector<std::pair<long long, int>> enumerate_terms(const SquareClassSpec& spec,
                                                       long long want_terms,
                                                       long long below_T)
{
    std::map<long long, int> sign_of;
    for (size_t i = 0; i < spec.classes.size(); ++i)
        sign_of[spec.classes[i]] = spec.signs[i];

    std::vector<std::pair<long long, int>> terms;
    long long nonneg = 0;
    for (long long k = 0;; ++k) {
        long long block_min = 0;
        bool first_in_block = true;
        for (long long r : spec.classes) {
            long long S = spec.period * k + r;
            long long num = S * S - spec.bsq;
            if (num % spec.K != 0) throw std::logic_error("non-integer exponent");
            long long m = num / spec.K;
            if (first_in_block || m < block_min) block_min = m;
            first_in_block = false;
            int s = sign_of[r];
            if (spec.alternating && (k % 2 != 0)) s = -s;
            terms.emplace_back(m, s);
            if (m >= 0) ++nonneg;
        }
        bool have_count = want_terms >= 0 && nonneg >= want_terms + (long long)spec.classes.size();
        bool past_T = below_T >= 0 && block_min >= below_T;
        if ((want_terms < 0 || have_count) && (below_T < 0 || past_T) && k > 0) break;
    }
    std::sort(terms.begin(), terms.end());
    for (size_t i = 0; i + 1 < terms.size(); ++i)
        if (terms[i].first == terms[i + 1].first)
            throw std::domain_error("colliding exponents across residue classes");
    return terms;
}

}  // namespace

std::vector<int> sign_pattern(const SquareClassSpec& spec, long long count)
{
    if (spec.classes.empty())
        throw std::domain_error("sign_pattern: empty class list");
    auto terms = enumerate_terms(spec, count, -1);
    std::vector<int> bits;
    for (auto& [m, s] : terms) {
        if ((long long)bits.size() >= count) break;
        if (m < 0) continue;  // not part of the generating function
        bits.push_back(s > 0 ? 0 : 1);
    }
    return bits;
}

QSeries signed_gf_enumerate(const SquareClassSpec& spec, long long T)
{
    QSeries out = QSeries::zero(1, T);
    auto terms = enumerate_terms(spec, -1, T);
    for (auto& [m, s] : terms) {
        if (m < 0 || m >= T) continue;
        out = series_add(out, QSeries::monomial(s, m, 1, T));
    }
    return out;
}

std::string family_name(Family f)
{
    switch (f) {
        case Family::p24_thm: return "24P-thm";
        case Family::p24_cor: return "24P-cor";
        case Family::p3_thm: return "3P-thm";
        case Family::p3_cor: return "3P-cor";
        case Family::m16: return "16m";
    }
    return "?";
}

Family family_from_name(const std::string& name)
{
    if (name == "24P-thm") return Family::p24_thm;
    if (name == "24P-cor") return Family::p24_cor;
    if (name == "3P-thm") return Family::p3_thm;
    if (name == "3P-cor") return Family::p3_cor;
    if (name == "16m") return Family::m16;
    throw std::invalid_argument("unknown family '" + name + "'");
}

namespace {

bool is_odd_prime_power(long long P)
{
    if (P < 3 || P % 2 == 0) return false;
    long long p = 0;
    long long n = P;
    for (long long d = 3; d * d <= n; d += 2) {
        if (n % d == 0) {
            p = d;
            while (n % d == 0) n /= d;
            return n == 1;
        }
    }
    (void)p;
    return true;  // P itself prime
}

/* Residue classes and per-class signs mod 6P (24P families) or 3P (3P
 * families), keyed by case; signs attach to residues, ordering is by value. */
SquareClassSpec family_spec(Family f, long long P, long long a, int case_id)
{
    long long K = 0, R = 0;
    std::vector<std::pair<long long, int>> rs;
    switch (f) {
        case Family::p24_thm:
        case Family::p24_cor:
            K = 24 * P;
            R = 6 * P;
            if (case_id == 1)
                rs = {{a, +1}, {2 * P - a, +1}, {4 * P + a, -1}, {6 * P - a, -1}};
            else
                rs = {{a, +1}, {2 * P + a, +1}, {4 * P - a, -1}, {6 * P - a, -1}};
            break;
        case Family::p3_thm:
        case Family::p3_cor:
            K = 3 * P;
            R = 3 * P;
            if (case_id == 1)
                rs = {{a, +1}, {P + a, +1}, {2 * P - a, -1}, {3 * P - a, -1}};
            else
                rs = {{a, +1}, {P - a, +1}, {2 * P + a, -1}, {3 * P - a, -1}};
            break;
        case Family::m16:
            K = 16;
            R = 8;
            rs = {{a, +1}, {8 - a, +1}};
            break;
    }
    std::sort(rs.begin(), rs.end());
    std::vector<int> signs;
    std::vector<long long> classes;
    for (auto& [r, s] : rs) {
        classes.push_back(r);
        signs.push_back(s);
    }
    SquareClassSpec spec = make_square_spec(K, a * a, signs, f != Family::m16);
    if (spec.period != R || spec.classes != classes)
        throw std::logic_error("family residue classes disagree with the solver");
    return spec;
}

}  // namespace

std::vector<ParametricInstance> parametric_instances(Family f, long long p_max)
{
    std::vector<ParametricInstance> out;
    if (f == Family::m16) {
        for (long long a : {1LL, 3LL}) {
            ParametricInstance inst;
            inst.family = f;
            inst.P = 0;
            inst.a = a;
            inst.case_id = 0;
            inst.spec = family_spec(f, 0, a, 0);
            inst.reduction_N = 0;
            out.push_back(inst);
        }
        return out;
    }
    for (long long P = 5; P <= p_max; ++P) {
        if (!is_odd_prime_power(P) || P % 3 == 0) continue;
        long long a_lo, a_hi;
        switch (f) {
            case Family::p24_thm: a_lo = 1; a_hi = P - 1; break;
            case Family::p24_cor: a_lo = P + 1; a_hi = 2 * P - 1; break;
            case Family::p3_thm: a_lo = 1; a_hi = (P - 1) / 2; break;
            default: a_lo = P / 2 + 1; a_hi = P - 1; break;
        }
        for (long long a = a_lo; a <= a_hi; ++a) {
            if (gcd_ll(a, P) != 1) continue;
            // The residue-class case split needs a away from 3 as well: for
            // 3 | a neither case list solves S^2 = a^2, and the product
            // exponents (P +- a)/3 etc. stop being integers.
            if (a % 3 == 0) continue;
            bool p24 = (f == Family::p24_thm || f == Family::p24_cor);
            if (p24 && a % 2 == 0) continue;
            if (f == Family::p3_thm && 2 * a >= P) continue;
            if (f == Family::p3_cor && (2 * a <= P || a >= P)) continue;
            ParametricInstance inst;
            inst.family = f;
            inst.P = P;
            inst.a = a;
            inst.case_id = (((a - P) % 3) == 0) ? 1 : 2;
            inst.spec = family_spec(f, P, a, inst.case_id);
            inst.threl_which = 1;
            if (p24) {
                inst.reduction_N = P;
                inst.u_exponent = (inst.case_id == 1) ? (5 * P + a) / 6 : (5 * P - a) / 6;
                if (((5 * P + (inst.case_id == 1 ? a : -a)) % 6) != 0)
                    throw std::logic_error("non-integral reduction parameter");
            } else {
                inst.reduction_N = 2 * P;
                inst.u_exponent =
                    (inst.case_id == 1) ? (5 * P - 2 * a) / 3 : (5 * P + 2 * a) / 3;
                if (((5 * P + (inst.case_id == 1 ? -2 * a : 2 * a)) % 3) != 0)
                    throw std::logic_error("non-integral reduction parameter");
            }
            out.push_back(inst);
        }
    }
    return out;
}

InstanceRhs instance_rhs(const ParametricInstance& inst)
{
    InstanceRhs rhs;
    long long P = inst.P, a = inst.a;
    switch (inst.family) {
        case Family::p24_thm:
        case Family::p24_cor:
            if (inst.case_id == 1) {
                rhs.numerator = {{(P - a) / 3, P}, {(2 * P + a) / 3, P}, {P, P}};
                rhs.denominator = {{(P - a) / 6, P}, {(5 * P + a) / 6, P}};
            } else {
                rhs.numerator = {{(P + a) / 3, P}, {(2 * P - a) / 3, P}, {P, P}};
                rhs.denominator = {{(P + a) / 6, P}, {(5 * P - a) / 6, P}};
            }
            break;
        case Family::p3_thm:
        case Family::p3_cor:
            if (inst.case_id == 1) {
                rhs.numerator = {{(4 * P - 4 * a) / 3, 2 * P},
                                 {(2 * P + 4 * a) / 3, 2 * P},
                                 {2 * P, 2 * P}};
                rhs.denominator = {{(5 * P - 2 * a) / 3, 2 * P}, {(P + 2 * a) / 3, 2 * P}};
            } else {
                rhs.numerator = {{(4 * P + 4 * a) / 3, 2 * P},
                                 {(2 * P - 4 * a) / 3, 2 * P},
                                 {2 * P, 2 * P}};
                rhs.denominator = {{(5 * P + 2 * a) / 3, 2 * P}, {(P - 2 * a) / 3, 2 * P}};
            }
            break;
        case Family::m16:
            rhs.m16_form = true;
            rhs.m16_a = inst.a;
            break;
    }
    return rhs;
}

}  // namespace qprove

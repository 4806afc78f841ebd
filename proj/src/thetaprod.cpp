#include "qprove/thetaprod.hpp"

#include <algorithm>
#include <sstream>

namespace qprove {

EProduct EProduct::one(long long level)
{
    EProduct p;
    p.level = level;
    return p;
}

Rational EProduct::e_prefactor(long long g, long long level)
{
    return Rational(level, 2) * Rational::bernoulli2(Rational(g, level));
}

EProduct EProduct::from_e_symbols(long long level,
                                  const std::vector<std::pair<long long, long long>>& gs)
{
    EProduct p = one(level);
    for (auto [g, a] : gs) {
        if (g <= 0 || g >= level)
            throw std::domain_error("E_g requires 1 <= g <= N-1");
        p.slots[{g, +1}] += a;
        p.slots[{level - g, +1}] += a;
        p.qpower += e_prefactor(g, level) * Rational(a);
    }
    std::erase_if(p.slots, [](const auto& kv) { return kv.second == 0; });
    return p;
}

void EProduct::mul_poch(long long e, long long M, int sign, long long power)
{
    if (power == 0) return;
    if (M <= 0 || level % M != 0)
        throw std::domain_error("mul_poch: modulus must divide the level");
    if (sign > 0) {
        if (e < 1 || e > M)
            throw std::domain_error("mul_poch: exponent out of range [1, M]");
        for (long long f = e; f <= level; f += M) {
            if (f == level)
                eta += power;
            else
                slots[{f, +1}] += power;
        }
    } else {
        if (e < 0 || e > M)
            throw std::domain_error("mul_poch: exponent out of range [0, M]");
        if (M == level) {
            slots[{e, -1}] += power;
        } else {
            if (level % (2 * M) != 0)
                throw std::domain_error(
                    "mul_poch: negative-sign factor needs 2M dividing the level");
            if (e == 0) {
                // (-1; q^M) = 2 (q^{2M}; q^{2M}) / (q^M; q^M)
                for (long long i = 0; i < std::llabs(power); ++i)
                    scalar = power > 0 ? scalar * Rational(2) : scalar / Rational(2);
                mul_poch(2 * M, 2 * M, +1, power);
                mul_poch(M, M, +1, -power);
            } else {
                // (-x; q) = (x^2; q^2) / (x; q)
                mul_poch(2 * e, 2 * M, +1, power);
                mul_poch(e, M, +1, -power);
            }
        }
    }
    std::erase_if(slots, [](const auto& kv) { return kv.second == 0; });
}

EProduct eprod_mul(const EProduct& a, const EProduct& b)
{
    if (a.level != b.level)
        throw std::domain_error("eprod_mul: mixed levels");
    EProduct r = a;
    r.scalar *= b.scalar;
    r.qpower += b.qpower;
    r.eta += b.eta;
    for (auto& [arg, m] : b.slots) r.slots[arg] += m;
    std::erase_if(r.slots, [](const auto& kv) { return kv.second == 0; });
    return r;
}

EProduct eprod_div(const EProduct& a, const EProduct& b)
{
    if (a.level != b.level)
        throw std::domain_error("eprod_div: mixed levels");
    if (b.scalar.is_zero())
        throw std::domain_error("eprod_div: zero scalar");
    EProduct r = a;
    r.scalar /= b.scalar;
    r.qpower -= b.qpower;
    r.eta -= b.eta;
    for (auto& [arg, m] : b.slots) r.slots[arg] -= m;
    std::erase_if(r.slots, [](const auto& kv) { return kv.second == 0; });
    return r;
}

EProduct EProduct::blowup(long long target) const
{
    if (target == level) return *this;
    if (target <= 0 || target % level != 0)
        throw std::domain_error("blowup: target must be a positive multiple of the level");
    EProduct r = one(target);
    r.scalar = scalar;
    r.qpower = qpower;
    r.mul_poch(level, level, +1, eta);
    for (auto& [arg, m] : slots) r.mul_poch(arg.exponent, level, arg.sign, m);
    return r;
}

std::optional<std::map<long long, long long>> EProduct::e_view() const
{
    std::map<long long, long long> view;
    for (auto& [arg, m] : slots) {
        if (arg.sign < 0) return std::nullopt;
        long long e = arg.exponent;
        if (e < 1 || e > level - 1) return std::nullopt;
        if (2 * e == level) {
            if (m % 2 != 0) return std::nullopt;
            view[e] = m / 2;
            continue;
        }
        long long partner = level - e;
        auto it = slots.find({partner, +1});
        if (it == slots.end() || it->second != m) return std::nullopt;
        view[std::min(e, partner)] = m;
    }
    return view;
}

Rational EProduct::residual_qpower(const std::map<long long, long long>& eview) const
{
    Rational r = qpower;
    for (auto& [g, a] : eview)
        r -= e_prefactor(g, level) * Rational(a);
    return r;
}

bool operator==(const EProduct& a, const EProduct& b)
{
    return a.level == b.level && a.scalar == b.scalar && a.qpower == b.qpower &&
           a.eta == b.eta && a.slots == b.slots;
}

std::string EProduct::str() const
{
    std::ostringstream os;
    os << level << ":";
    auto view = e_view();
    std::string num, den;
    if (view) {
        for (auto& [g, a] : *view) {
            std::string sym = "E" + std::to_string(g);
            if (std::llabs(a) != 1) sym += "^" + std::to_string(std::llabs(a));
            ((a > 0) ? num : den) += " " + sym;
        }
        os << (num.empty() ? " 1" : num);
        if (!den.empty()) os << " /" << den;
        Rational kappa = residual_qpower(*view);
        if (!kappa.is_zero()) os << " * q^" << kappa.str();
        if (eta != 0) os << " * eta^" << eta;
        if (scalar != Rational(1)) os << " * " << scalar.str();
        return os.str();
    }
    // Unpaired products fall back to raw factor notation.
    for (auto& [arg, m] : slots) {
        std::string sym = std::string("P") + (arg.sign < 0 ? "-" : "") +
                          std::to_string(arg.exponent);
        if (std::llabs(m) != 1) sym += "^" + std::to_string(std::llabs(m));
        ((m > 0) ? num : den) += " " + sym;
    }
    os << (num.empty() ? " 1" : num);
    if (!den.empty()) os << " /" << den;
    if (!qpower.is_zero()) os << " * q^" << qpower.str();
    if (eta != 0) os << " * eta^" << eta;
    if (scalar != Rational(1)) os << " * " << scalar.str();
    return os.str();
}

QSeries eprod_expand_scaled(const EProduct& p, const BigInt& multiplier, long long T)
{
    BigInt num = multiplier * BigInt(p.scalar.num());
    if (num % BigInt(p.scalar.den()) != 0)
        throw std::domain_error("eprod_expand: scalar is not an integer after scaling");
    BigInt total = num / BigInt(p.scalar.den());

    long long D = p.qpower.den();
    long long Tgrid = T * D;
    long long shift = (p.qpower * Rational(D)).num();

    // Slot exponents are integers, so the product part lives on the q^1
    // grid; it must be exact below T - qpower.
    long long Lint = (Rational(T) - p.qpower).floor() + 1;
    QSeries numer = QSeries::one(1, Lint);
    QSeries denom = QSeries::one(1, Lint);

    auto mul_into = [&](QSeries& tgt, long long e, int sign, long long times) {
        if (times <= 0) return;
        QSeries f = poch_expand(Rational(e), sign, Rational(p.level), Lint);
        for (long long i = 0; i < times; ++i) tgt = series_mul(tgt, f);
    };
    for (auto& [arg, m] : p.slots) {
        mul_into(m > 0 ? numer : denom, arg.exponent, arg.sign, std::llabs(m));
    }
    if (p.eta != 0)
        mul_into(p.eta > 0 ? numer : denom, p.level, +1, std::llabs(p.eta));

    QSeries prod = series_div(numer.truncated(Lint), denom.truncated(Lint));
    QSeries out = prod.rescaled(D).shifted(shift).scaled_by(total);
    return out.truncated(std::min(out.limit(), Tgrid));
}

QSeries eprod_expand(const EProduct& p, long long T)
{
    return eprod_expand_scaled(p, 1, T);
}

ThetaNormalization theta_normalize(const ThetaMonomial& m)
{
    if (m.modulus <= 0)
        throw std::domain_error("theta_normalize: modulus must be positive");
    ThetaNormalization r{Rational(1), Rational(0), m};
    Rational M(m.modulus);
    Rational& a = r.canonical.arg_exponent;
    int s = r.canonical.arg_sign;

    // theta(s q^a; q^M) = -s q^{M-a} theta(s q^{a-M}; q^M), and inversely
    // theta(s q^a; q^M) = -s q^{a} theta(s q^{a+M}; q^M).
    while (a >= M) {
        r.scalar *= Rational(-s);
        r.shift += M - a;
        a -= M;
    }
    while (a < Rational(0)) {
        r.scalar *= Rational(-s);
        r.shift += a;
        a += M;
    }
    if (a.is_zero() && s > 0)
        throw std::domain_error("theta_normalize: theta(1; q^M) is identically zero");
    // Reflection theta(q^M/z; q^M) = theta(z; q^M): a <-> M - a, no scalar.
    if (a > M / Rational(2)) a = M - a;
    return r;
}

bool theta_is_zero(const ThetaMonomial& m)
{
    if (m.arg_sign < 0) return false;
    Rational q = m.arg_exponent / Rational(m.modulus);
    return q.is_integer();
}

QSeries theta_expand(const ThetaMonomial& m, long long T)
{
    if (theta_is_zero(m)) return QSeries::zero(1, T);
    ThetaNormalization n = theta_normalize(m);
    const ThetaMonomial& c = n.canonical;
    long long pad = 1 + (Rational(0) - n.shift).floor() + 1;
    long long Tin = T + std::max<long long>(0, pad);
    QSeries a = poch_expand(c.arg_exponent, c.arg_sign, Rational(c.modulus), Tin);
    QSeries b = poch_expand(Rational(c.modulus) - c.arg_exponent, c.arg_sign,
                            Rational(c.modulus), Tin);
    QSeries prod = series_mul(a, b);
    if (n.scalar == Rational(-1)) prod = prod.scaled_by(-1);
    long long D = lcm_ll(prod.scale(), n.shift.den());
    prod = prod.rescaled(D / prod.scale());
    long long sh = (n.shift * Rational(D)).num();
    QSeries out = prod.shifted(sh);
    return out.truncated(std::min(out.limit(), T * D));
}

namespace {

std::string trim(const std::string& s)
{
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

Rational parse_rational(const std::string& s)
{
    size_t slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

}  // namespace

EProduct parse_eproduct(const std::string& text)
{
    size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("eproduct: expected '<level>: ...'");
    long long level = std::stoll(trim(text.substr(0, colon)));

    std::vector<std::string> parts;
    std::string rest = text.substr(colon + 1);
    size_t pos = 0;
    while (true) {
        size_t star = rest.find('*', pos);
        if (star == std::string::npos) {
            parts.push_back(trim(rest.substr(pos)));
            break;
        }
        parts.push_back(trim(rest.substr(pos, star - pos)));
        pos = star + 1;
    }

    std::vector<std::pair<long long, long long>> symbols;
    Rational kappa(0), scalar(1);
    long long eta = 0;

    // First section holds the E symbols; '/' flips to the denominator.
    {
        std::string section = parts.empty() ? "" : parts[0];
        std::string spaced;
        for (char ch : section) {
            if (ch == '/')
                spaced += " / ";
            else
                spaced += ch;
        }
        long long side = +1;
        std::istringstream is(spaced);
        std::string tok;
        while (is >> tok) {
            if (tok == "/") {
                side = -1;
                continue;
            }
            if (tok == "1") continue;
            if (tok[0] != 'E')
                throw std::invalid_argument("eproduct: bad symbol '" + tok + "'");
            long long expo = 1;
            size_t caret = tok.find('^');
            std::string gs = tok.substr(1, caret == std::string::npos
                                               ? std::string::npos
                                               : caret - 1);
            if (caret != std::string::npos) expo = std::stoll(tok.substr(caret + 1));
            symbols.emplace_back(std::stoll(gs), side * expo);
        }
    }
    for (size_t i = 1; i < parts.size(); ++i) {
        const std::string& part = parts[i];
        if (part.rfind("q^", 0) == 0)
            kappa = parse_rational(part.substr(2));
        else if (part.rfind("eta^", 0) == 0)
            eta = std::stoll(part.substr(4));
        else
            scalar = parse_rational(part);
    }

    EProduct e = EProduct::from_e_symbols(level, symbols);
    e.scalar = scalar;
    e.eta = eta;
    e.qpower += kappa;
    return e;
}

}  // namespace qprove

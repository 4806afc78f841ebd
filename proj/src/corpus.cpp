#include "qprove/corpus.hpp"

#include <fstream>
#include <sstream>

namespace qprove {

namespace {

std::string trim(const std::string& s)
{
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

Rational parse_rational_tok(const std::string& s)
{
    size_t slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

}  // namespace

ProductExpr parse_product(const std::string& text)
{
    ProductExpr expr;
    size_t i = 0;
    const std::string& s = text;
    auto skip_ws = [&] {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '*')) ++i;
    };
    long long side = +1;
    bool seen_group = false;
    while (true) {
        skip_ws();
        if (i >= s.size()) break;
        char c = s[i];
        if (c == '/') {
            side = -1;
            ++i;
            continue;
        }
        if (c == '(') {
            // (e1,e2,...;M)[^p]
            size_t close = s.find(')', i);
            if (close == std::string::npos)
                throw std::invalid_argument("product: unbalanced '(' in '" + s + "'");
            std::string inner = s.substr(i + 1, close - i - 1);
            i = close + 1;
            long long power = 1;
            if (i < s.size() && s[i] == '^') {
                size_t j = i + 1;
                size_t k = j;
                if (k < s.size() && (s[k] == '-' || s[k] == '+')) ++k;
                while (k < s.size() && isdigit((unsigned char)s[k])) ++k;
                power = std::stoll(s.substr(j, k - j));
                i = k;
            }
            size_t semi = inner.find(';');
            if (semi == std::string::npos)
                throw std::invalid_argument("product: missing ';' in '(" + inner + ")'");
            FactorGroup g;
            g.modulus = std::stoll(trim(inner.substr(semi + 1)));
            g.power = side * power;
            std::istringstream args(inner.substr(0, semi));
            std::string tok;
            while (std::getline(args, tok, ',')) g.args.push_back(std::stoll(trim(tok)));
            expr.groups.push_back(g);
            side = +1;
            seen_group = true;
            continue;
        }
        if (c == 'q') {
            // q^k or q^-k or q^(a/b)
            if (i + 1 >= s.size() || s[i + 1] != '^')
                throw std::invalid_argument("product: expected q^<power>");
            size_t j = i + 2;
            size_t k = j;
            bool paren = k < s.size() && s[k] == '(';
            if (paren) ++k;
            size_t start = paren ? k : j;
            while (k < s.size() &&
                   (isdigit((unsigned char)s[k]) || s[k] == '-' || s[k] == '/'))
                ++k;
            expr.qpower += parse_rational_tok(s.substr(start, k - start));
            if (paren && k < s.size() && s[k] == ')') ++k;
            i = k;
            continue;
        }
        // Leading rational scalar.
        if (seen_group)
            throw std::invalid_argument("product: scalar after groups in '" + s + "'");
        size_t k = i;
        while (k < s.size() && (isdigit((unsigned char)s[k]) || s[k] == '-' || s[k] == '/'))
            ++k;
        if (k == i)
            throw std::invalid_argument("product: unexpected character '" +
                                        std::string(1, c) + "' in '" + s + "'");
        expr.scalar = expr.scalar * parse_rational_tok(s.substr(i, k - i));
        i = k;
    }
    return expr;
}

std::vector<ProductExpr> parse_term_list(const std::string& text)
{
    // Split at top-level " + " / " - " (never inside parentheses).
    std::vector<std::pair<int, std::string>> raw;
    int depth = 0;
    int sign = +1;
    std::string cur;
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth == 0 && (c == '+' || c == '-') && i > 0 && text[i - 1] == ' ' &&
            i + 1 < text.size() && text[i + 1] == ' ') {
            raw.emplace_back(sign, cur);
            sign = (c == '+') ? +1 : -1;
            cur.clear();
            ++i;
            continue;
        }
        cur += c;
    }
    raw.emplace_back(sign, cur);
    std::vector<ProductExpr> out;
    for (auto& [sg, t] : raw) {
        ProductExpr e = parse_product(trim(t));
        if (sg < 0) e.scalar = -e.scalar;
        out.push_back(e);
    }
    return out;
}

EProduct product_to_eproduct(const ProductExpr& expr, long long level)
{
    EProduct p = EProduct::one(level);
    p.scalar = expr.scalar;
    p.qpower = expr.qpower;
    for (const FactorGroup& g : expr.groups) {
        for (long long a : g.args) {
            int sign = a < 0 ? -1 : +1;
            p.mul_poch(a < 0 ? -a : a, g.modulus, sign, g.power);
        }
    }
    return p;
}

QSeries product_expand(const ProductExpr& expr, long long T)
{
    // Levels of the groups need not divide a common small number here;
    // expand each factor directly.
    long long D = expr.qpower.den();
    long long shift = (expr.qpower * Rational(D)).num();
    long long Lint = (Rational(T) - expr.qpower).floor() + 1;
    QSeries numer = QSeries::one(1, Lint);
    QSeries denom = QSeries::one(1, Lint);
    for (const FactorGroup& g : expr.groups) {
        for (long long a : g.args) {
            QSeries f = poch_expand(Rational(a < 0 ? -a : a), a < 0 ? -1 : +1,
                                    Rational(g.modulus), Lint);
            for (long long i = 0; i < std::llabs(g.power); ++i) {
                if (g.power > 0)
                    numer = series_mul(numer, f);
                else
                    denom = series_mul(denom, f);
            }
        }
    }
    QSeries prod = series_div(numer.truncated(Lint), denom.truncated(Lint));
    if (expr.scalar.den() != 1)
        throw std::domain_error("product_expand: non-integer scalar");
    QSeries out = prod.scaled_by(expr.scalar.num()).rescaled(D).shifted(shift);
    return out.truncated(std::min(out.limit(), T * D));
}

SquareClassSpec parse_square_spec(const std::string& text)
{
    long long K = -1, bsq = -1;
    bool alternating = true;
    std::vector<int> signs;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        size_t eq = tok.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("square spec: expected key=value, got '" + tok + "'");
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "K") K = std::stoll(val);
        else if (key == "bsq") bsq = std::stoll(val);
        else if (key == "alternating") alternating = (val == "1" || val == "yes" || val == "true");
        else if (key == "signs") {
            for (char c : val) {
                if (c == '+') signs.push_back(+1);
                else if (c == '-') signs.push_back(-1);
                else if (c != ',') throw std::invalid_argument("square spec: bad sign char");
            }
        } else {
            throw std::invalid_argument("square spec: unknown key '" + key + "'");
        }
    }
    if (K < 1 || bsq < 0)
        throw std::invalid_argument("square spec: K and bsq are required");
    return make_square_spec(K, bsq, signs, alternating);
}

std::vector<CorpusRecord> load_corpus(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open corpus file '" + path + "'");
    std::vector<CorpusRecord> out;
    CorpusRecord cur;
    bool open = false;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::istringstream is(t);
        std::string kw;
        is >> kw;
        std::string rest = trim(t.substr(kw.size()));
        if (kw == "begin") {
            if (open) fail("nested begin");
            cur = CorpusRecord{};
            cur.tag = rest;
            open = true;
        } else if (!open) {
            fail("directive outside record: " + kw);
        } else if (kw == "level") {
            cur.level = std::stoll(rest);
        } else if (kw == "squares") {
            cur.squares = parse_square_spec(rest);
        } else if (kw == "lhs") {
            cur.lhs = parse_term_list(rest);
        } else if (kw == "rhs") {
            cur.rhs = parse_product(rest);
        } else if (kw == "pattern") {
            if (rest == "none") cur.pattern.kind = PatternSpec::none;
            else if (rest == "allplus") cur.pattern.kind = PatternSpec::allplus;
            else if (rest == "floor:(n+2)/4") cur.pattern.kind = PatternSpec::floor_n2_4;
            else if (rest == "floor:5n/4") cur.pattern.kind = PatternSpec::floor_5n_4;
            else if (rest == "floor:(n+4)/8") cur.pattern.kind = PatternSpec::floor_n4_8;
            else if (rest.rfind("zeros16:", 0) == 0) {
                cur.pattern.kind = PatternSpec::zeros16;
                std::istringstream zs(rest.substr(8));
                std::string z;
                while (std::getline(zs, z, ','))
                    cur.pattern.zeros.push_back(std::stoll(trim(z)));
            } else {
                fail("unknown pattern '" + rest + "'");
            }
        } else if (kw == "end") {
            if (cur.tag.empty() || cur.level == 0) fail("incomplete record");
            out.push_back(cur);
            open = false;
        } else {
            fail("unknown directive '" + kw + "'");
        }
    }
    if (open) throw std::runtime_error(path + ": unterminated record");
    return out;
}

IdentityStatement statement_from_record(const CorpusRecord& rec)
{
    IdentityStatement s;
    s.name = rec.tag;
    s.level = rec.level;
    if (rec.squares) {
        for (const EProduct& p : compile_theta(*rec.squares))
            s.lhs_terms.push_back(p.blowup(rec.level));
    } else {
        for (const ProductExpr& e : rec.lhs)
            s.lhs_terms.push_back(product_to_eproduct(e, rec.level));
    }
    s.rhs = product_to_eproduct(rec.rhs, rec.level);
    return s;
}

}  // namespace qprove

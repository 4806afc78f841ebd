#include "qprove/prover.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>

namespace qprove {

uint64_t statement_hash(const IdentityStatement& s)
{
    // FNV-1a over the canonical rendering.
    std::string data = s.name + "|" + std::to_string(s.level);
    for (const EProduct& t : s.lhs_terms) data += "|" + t.str();
    data += "|=|" + s.rhs.str();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string verdict_name(Verdict v)
{
    switch (v) {
        case Verdict::proven: return "proven";
        case Verdict::refuted: return "refuted";
        case Verdict::not_applicable: return "not-applicable";
    }
    return "?";
}

std::vector<EProduct> normalize_statement(const IdentityStatement& s)
{
    if (s.lhs_terms.empty())
        throw std::domain_error("normalize: empty left-hand side");
    for (const EProduct& t : s.lhs_terms)
        if (t.level != s.level)
            throw std::domain_error("normalize: term level mismatch in " + s.name);
    if (s.rhs.level != s.level)
        throw std::domain_error("normalize: rhs level mismatch in " + s.name);

    EProduct pivot = s.lhs_terms.front();
    pivot.scalar = Rational(1);  // divide by the product part only

    std::vector<EProduct> terms;
    for (const EProduct& t : s.lhs_terms) terms.push_back(eprod_div(t, pivot));
    EProduct r = eprod_div(s.rhs, pivot);
    r.scalar = -r.scalar;
    terms.push_back(r);

    for (const EProduct& t : terms)
        if (t.eta != 0)
            throw std::domain_error("normalize: eta factors do not cancel in " + s.name +
                                    " (term " + t.str() + ")");
    return terms;
}

namespace {

CertTerm describe_term(const EProduct& t)
{
    CertTerm c;
    c.text = t.str();
    c.modular = is_modular_function(t);
    auto view = t.e_view();
    if (view) {
        long long y = (t.level % 2 == 0) ? 2 * t.level : t.level;
        long long sa = 0, sg = 0;
        for (auto& [g, a] : *view) {
            sa += a;
            sg = (sg + (g % y) * (g % y) % y * (a % y)) % y;
        }
        c.sum_a = sa;
        c.sum_g2a = ((sg % y) + y) % y;
    }
    return c;
}

}  // namespace

ProofCertificate prove(const IdentityStatement& s)
{
    ProofCertificate cert;
    cert.statement = s.name;
    cert.hash = statement_hash(s);
    cert.level = s.level;

    EProduct pivot = s.lhs_terms.front();
    pivot.scalar = Rational(1);
    cert.divided_by = pivot.str();

    std::vector<EProduct> terms = normalize_statement(s);
    for (const EProduct& t : terms) {
        CertTerm ct = describe_term(t);
        cert.terms.push_back(ct);
        if (!ct.modular) cert.non_modular_terms.push_back(ct.text);
    }
    if (!cert.non_modular_terms.empty()) {
        // The valence argument is unavailable, but a nonzero coefficient in
        // the exact expansion still refutes the statement outright.
        long long Tprobe = 2 * s.level + 16;
        long long L = 1;
        for (const EProduct& t : terms) L = lcm_ll(L, t.scalar.den());
        QSeries probe;
        bool first = true;
        for (const EProduct& t : terms) {
            QSeries e = eprod_expand_scaled(t, L, Tprobe);
            probe = first ? e : series_add(probe, e);
            first = false;
        }
        auto nz = probe.lowest_nonzero();
        if (nz && *nz < probe.limit()) {
            cert.verdict = Verdict::refuted;
            cert.refutation.exponent_index = *nz;
            cert.refutation.denominator = probe.scale();
            cert.refutation.coefficient = probe.coeff_at_index(*nz).str();
            return cert;
        }
        cert.verdict = Verdict::not_applicable;
        return cert;
    }

    CuspClassSet cusps = cusp_representatives(s.level);
    cert.cusp_count = static_cast<long long>(cusps.representatives.size());
    ValenceBound vb = valence_bound(terms, cusps);
    size_t fi = 0;
    for (const Cusp& c : cusps.representatives) {
        if (c.is_infinity()) continue;
        cert.cusp_minima.emplace_back(c.str(), vb.per_cusp_minimum[fi++]);
    }
    cert.order_sum = vb.order_sum;
    cert.bound_U = vb.U;
    cert.verified_through = vb.U;

    // Step 6: expand the combination through q^U; all terms scaled by the
    // common scalar denominator so coefficients stay integral.
    long long T = vb.U + 1;
    long long L = 1;
    for (const EProduct& t : terms) L = lcm_ll(L, t.scalar.den());
    QSeries sum;
    bool first = true;
    for (const EProduct& t : terms) {
        QSeries e = eprod_expand_scaled(t, L, T);
        sum = first ? e : series_add(sum, e);
        first = false;
    }
    long long D = sum.scale();
    long long hi = vb.U * D + 1;
    if (sum.limit() < hi)
        throw std::logic_error("prove: expansion fell short of the bound");
    for (long long i = sum.min_index(); i < hi; ++i) {
        const BigInt& c = sum.coeff_at_index(i);
        if (c != 0) {
            cert.verdict = Verdict::refuted;
            cert.refutation.exponent_index = i;
            cert.refutation.denominator = D;
            cert.refutation.coefficient = c.str();
            return cert;
        }
    }
    cert.verdict = Verdict::proven;
    return cert;
}

bool verify_certificate(const ProofCertificate& cert, const IdentityStatement& s)
{
    if (cert.hash != statement_hash(s))
        throw std::runtime_error("stale certificate: statement hash mismatch");
    ProofCertificate fresh = prove(s);
    if (fresh.verdict != cert.verdict) return false;
    if (fresh.level != cert.level) return false;
    if (fresh.divided_by != cert.divided_by) return false;
    if (fresh.cusp_count != cert.cusp_count) return false;
    if (fresh.bound_U != cert.bound_U) return false;
    if (fresh.verified_through != cert.verified_through) return false;
    if (!(fresh.order_sum == cert.order_sum)) return false;
    if (fresh.cusp_minima.size() != cert.cusp_minima.size()) return false;
    for (size_t i = 0; i < fresh.cusp_minima.size(); ++i) {
        if (fresh.cusp_minima[i].first != cert.cusp_minima[i].first) return false;
        if (!(fresh.cusp_minima[i].second == cert.cusp_minima[i].second)) return false;
    }
    if (fresh.terms.size() != cert.terms.size()) return false;
    for (size_t i = 0; i < fresh.terms.size(); ++i) {
        if (fresh.terms[i].text != cert.terms[i].text) return false;
        if (fresh.terms[i].modular != cert.terms[i].modular) return false;
        if (fresh.terms[i].sum_a != cert.terms[i].sum_a) return false;
        if (fresh.terms[i].sum_g2a != cert.terms[i].sum_g2a) return false;
    }
    // Internal consistency: the recorded minima must add up to the recorded
    // bound before flooring.
    Rational total(0);
    for (auto& [c, mn] : cert.cusp_minima) total += mn;
    if (!(total == cert.order_sum)) return false;
    if (cert.bound_U != -cert.order_sum.floor()) return false;
    if (cert.verdict == Verdict::refuted) {
        if (fresh.refutation.exponent_index != cert.refutation.exponent_index) return false;
        if (fresh.refutation.denominator != cert.refutation.denominator) return false;
        if (fresh.refutation.coefficient != cert.refutation.coefficient) return false;
    }
    return true;
}

std::string certificate_to_json(const ProofCertificate& cert)
{
    nlohmann::ordered_json j;
    j["format"] = "qprove-certificate-v1";
    j["statement"] = cert.statement;
    j["hash"] = cert.hash;
    j["level"] = cert.level;
    j["divided_by"] = cert.divided_by;
    j["terms"] = nlohmann::ordered_json::array();
    for (const CertTerm& t : cert.terms) {
        nlohmann::ordered_json tj;
        tj["eproduct"] = t.text;
        tj["sum_a"] = t.sum_a;
        tj["sum_g2a"] = t.sum_g2a;
        tj["modular"] = t.modular;
        j["terms"].push_back(tj);
    }
    j["cusp_count"] = cert.cusp_count;
    j["cusp_minima"] = nlohmann::ordered_json::array();
    for (auto& [c, mn] : cert.cusp_minima) {
        nlohmann::ordered_json cj;
        cj["cusp"] = c;
        cj["min_order"] = mn.str();
        j["cusp_minima"].push_back(cj);
    }
    j["order_sum"] = cert.order_sum.str();
    j["bound_U"] = cert.bound_U;
    j["verified_through"] = cert.verified_through;
    j["verdict"] = verdict_name(cert.verdict);
    if (cert.verdict == Verdict::refuted) {
        j["refutation"] = {{"exponent_index", cert.refutation.exponent_index},
                           {"denominator", cert.refutation.denominator},
                           {"coefficient", cert.refutation.coefficient}};
    }
    if (!cert.non_modular_terms.empty()) j["non_modular_terms"] = cert.non_modular_terms;
    return j.dump(2);
}

namespace {

Rational rational_from_string(const std::string& s)
{
    size_t slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

}  // namespace

ProofCertificate certificate_from_json(const std::string& text)
{
    nlohmann::json j = nlohmann::json::parse(text);
    ProofCertificate cert;
    cert.statement = j.at("statement").get<std::string>();
    cert.hash = j.at("hash").get<uint64_t>();
    cert.level = j.at("level").get<long long>();
    cert.divided_by = j.at("divided_by").get<std::string>();
    for (auto& tj : j.at("terms")) {
        CertTerm t;
        t.text = tj.at("eproduct").get<std::string>();
        t.sum_a = tj.at("sum_a").get<long long>();
        t.sum_g2a = tj.at("sum_g2a").get<long long>();
        t.modular = tj.at("modular").get<bool>();
        cert.terms.push_back(t);
    }
    cert.cusp_count = j.at("cusp_count").get<long long>();
    for (auto& cj : j.at("cusp_minima")) {
        cert.cusp_minima.emplace_back(cj.at("cusp").get<std::string>(),
                                      rational_from_string(cj.at("min_order").get<std::string>()));
    }
    cert.order_sum = rational_from_string(j.at("order_sum").get<std::string>());
    cert.bound_U = j.at("bound_U").get<long long>();
    cert.verified_through = j.at("verified_through").get<long long>();
    std::string v = j.at("verdict").get<std::string>();
    cert.verdict = v == "proven" ? Verdict::proven
                 : v == "refuted" ? Verdict::refuted
                                  : Verdict::not_applicable;
    if (j.contains("refutation")) {
        cert.refutation.exponent_index = j["refutation"].at("exponent_index").get<long long>();
        cert.refutation.denominator = j["refutation"].at("denominator").get<long long>();
        cert.refutation.coefficient = j["refutation"].at("coefficient").get<std::string>();
    }
    if (j.contains("non_modular_terms"))
        for (auto& t : j["non_modular_terms"])
            cert.non_modular_terms.push_back(t.get<std::string>());
    return cert;
}

}  // namespace qprove

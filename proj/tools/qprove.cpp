#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "qprove/corpus.hpp"
#include "qprove/partitions.hpp"
#include "qprove/weierstrass.hpp"

using namespace qprove;

namespace {

void emit(bool structured, const nlohmann::ordered_json& record,
          const std::string& text)
{
    if (structured)
        std::cout << record.dump() << "\n";
    else
        std::cout << text << "\n";
}

int run_prove(const std::string& corpus_path, const std::string& only,
              const std::string& cert_dir, bool structured, bool verify,
              long long extend_T)
{
    auto records = load_corpus(corpus_path);
    int failures = 0;
    long long proven = 0, total = 0;
    for (const CorpusRecord& rec : records) {
        if (!only.empty() && rec.tag != only) continue;
        ++total;
        IdentityStatement stmt = statement_from_record(rec);
        ProofCertificate cert = prove(stmt);
        bool ok = cert.verdict == Verdict::proven;
        if (ok && extend_T > cert.bound_U) {
            // Overrides may only extend the verified range beyond U.
            auto terms = normalize_statement(stmt);
            long long L = 1;
            for (const EProduct& t : terms) L = lcm_ll(L, t.scalar.den());
            QSeries sum;
            bool first = true;
            for (const EProduct& t : terms) {
                QSeries e = eprod_expand_scaled(t, L, extend_T + 1);
                sum = first ? e : series_add(sum, e);
                first = false;
            }
            if (!sum.is_zero()) ok = false;
            else cert.verified_through = extend_T;
        }
        if (ok) ++proven;
        if (!ok) ++failures;
        nlohmann::ordered_json j;
        j["record"] = "proof";
        j["statement"] = rec.tag;
        j["level"] = rec.level;
        j["bound_U"] = cert.bound_U;
        j["verdict"] = verdict_name(cert.verdict);
        if (cert.verdict == Verdict::refuted) {
            j["first_nonzero_index"] = cert.refutation.exponent_index;
            j["grid_denominator"] = cert.refutation.denominator;
        }
        emit(structured, j,
             rec.tag + ": " + verdict_name(cert.verdict) +
                 " (level " + std::to_string(rec.level) +
                 ", U = " + std::to_string(cert.bound_U) + ")");
        if (!cert_dir.empty()) {
            std::filesystem::create_directories(cert_dir);
            std::ofstream out(cert_dir + "/" + rec.tag + ".cert.json");
            out << certificate_to_json(cert) << "\n";
        }
        if (verify && !verify_certificate(cert, stmt)) {
            ++failures;
            emit(structured, {{"record", "error"}, {"statement", rec.tag}},
                 rec.tag + ": certificate failed re-verification");
        }
    }
    if (total == 0) {
        std::cerr << "no statement matched\n";
        return 2;
    }
    emit(structured,
         {{"record", "summary"}, {"proven", proven}, {"total", total}},
         std::to_string(proven) + "/" + std::to_string(total) + " proven");
    return failures == 0 ? 0 : 1;
}

void print_series(const QSeries& s)
{
    std::cout << s.str() << "\n";
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Mechanical verification of infinite-product identities for "
                 "square-sequence generating functions"};
    app.require_subcommand(1);
    bool structured = false;
    app.add_flag("--structured", structured, "line-delimited JSON records");

    // prove
    auto* prove_cmd = app.add_subcommand("prove", "verify identity statements");
    std::string corpus_path, only, cert_dir;
    bool verify_certs = false;
    prove_cmd->add_option("--corpus", corpus_path, "statement corpus file")->required();
    prove_cmd->add_option("--only", only, "restrict to one statement tag");
    long long prove_T = 0;
    prove_cmd->add_option("--T", prove_T,
                          "extend the verified coefficient range beyond U");
    prove_cmd->add_option("--emit-certs", cert_dir, "write certificates to directory");
    prove_cmd->add_flag("--verify-certs", verify_certs, "re-verify each certificate");

    // expand
    auto* expand_cmd = app.add_subcommand("expand", "expand an E-product");
    std::string eproduct_text;
    long long expand_T = 20;
    expand_cmd->add_option("--eproduct", eproduct_text, "e.g. \"105: E22 / E43\"")->required();
    expand_cmd->add_option("--T", expand_T, "truncation order");

    // cusps
    auto* cusps_cmd = app.add_subcommand("cusps", "cusp class representatives");
    long long cusps_level = 0;
    cusps_cmd->add_option("--level", cusps_level, "group level N >= 5")->required();

    // squares
    auto* squares_cmd = app.add_subcommand("squares", "square-sequence tooling");
    squares_cmd->require_subcommand(1);
    std::string spec_text, family_name_arg;
    long long pattern_terms = 16, sweep_pmax = 60, sweep_T = 0, compile_T = 0;
    auto* compile_cmd = squares_cmd->add_subcommand("compile", "spec -> theta products");
    compile_cmd->add_option("--spec", spec_text,
                            "e.g. \"K=840 bsq=361 alternating=1 signs=+,+,-,+,-,+,-,-\"")
        ->required();
    compile_cmd->add_option("--T", compile_T, "also expand to this order");
    auto* pattern_cmd = squares_cmd->add_subcommand("pattern", "sign pattern t(n)");
    pattern_cmd->add_option("--spec", spec_text, "square spec")->required();
    pattern_cmd->add_option("--terms", pattern_terms, "number of terms");
    auto* sweep_cmd = squares_cmd->add_subcommand("sweep", "verify a parametric family");
    sweep_cmd->add_option("--family", family_name_arg,
                          "24P-thm | 24P-cor | 3P-thm | 3P-cor | 16m")->required();
    sweep_cmd->add_option("--pmax", sweep_pmax, "largest P");
    sweep_cmd->add_option("--T", sweep_T, "expansion override (0 = default)");

    // weierstrass
    auto* ws_cmd = app.add_subcommand("weierstrass", "three-term relation tooling");
    ws_cmd->require_subcommand(1);
    std::string instance_text, target_path;
    long long ws_T = 0, ws_bound = 20, ws_base = 0;
    auto* ws_verify = ws_cmd->add_subcommand("verify", "verify one substitution");
    ws_verify->add_option("--instance", instance_text,
                          "e.g. \"base=35 u=q^10 v=q^3 x=q^14 y=q^6\"")->required();
    ws_verify->add_option("--T", ws_T, "truncation (default 6*base)");
    auto* ws_search = ws_cmd->add_subcommand("search", "search substitutions for a target");
    ws_search->add_option("--target", target_path,
                          "file with two E-product lines")->required();
    ws_search->add_option("--base", ws_base, "theta base modulus")->required();
    ws_search->add_option("--bound", ws_bound, "largest exponent in the grid");
    ws_search->add_option("--T", ws_T, "verification truncation (default 6*base)");

    // partitions
    auto* part_cmd = app.add_subcommand("partitions", "partition-side tooling");
    part_cmd->require_subcommand(1);
    auto* scan_cmd = part_cmd->add_subcommand("scan", "numeric conjecture scan");
    std::string conjecture_name;
    long long scan_kmax = 3, scan_T = 300, scan_smax = 6;
    scan_cmd->add_option("--conjecture", conjecture_name, "c41 | c41-ineq | cexp")->required();
    scan_cmd->add_option("--kmax", scan_kmax, "largest k");
    scan_cmd->add_option("--T", scan_T, "scan depth");
    scan_cmd->add_option("--smax", scan_smax, "largest S (cexp)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*prove_cmd)
            return run_prove(corpus_path, only, cert_dir, structured, verify_certs,
                             prove_T);

        if (*expand_cmd) {
            EProduct p = parse_eproduct(eproduct_text);
            long long L = p.scalar.den();
            QSeries s = eprod_expand_scaled(p, L, expand_T);
            std::cout << p.str() << "\n";
            if (L != 1) std::cout << "(coefficients scaled by " << L << ")\n";
            print_series(s);
            return 0;
        }

        if (*cusps_cmd) {
            CuspClassSet cs = cusp_representatives(cusps_level);
            if (structured) {
                nlohmann::ordered_json j;
                j["record"] = "cusps";
                j["level"] = cusps_level;
                j["count"] = cs.representatives.size();
                j["representatives"] = nlohmann::ordered_json::array();
                for (const Cusp& c : cs.representatives)
                    j["representatives"].push_back(c.str());
                std::cout << j.dump() << "\n";
            } else {
                std::string out = "[";
                for (size_t i = 0; i < cs.representatives.size(); ++i) {
                    if (i) out += ",";
                    out += cs.representatives[i].str();
                }
                out += "]";
                std::cout << out << "\n"
                          << cs.representatives.size() << " classes\n";
            }
            return 0;
        }

        if (*compile_cmd) {
            SquareClassSpec spec = parse_square_spec(spec_text);
            auto products = compile_theta(spec);
            for (const EProduct& p : products) std::cout << p.str() << "\n";
            if (compile_T > 0) {
                QSeries sum;
                bool first = true;
                for (const EProduct& p : products) {
                    QSeries e = eprod_expand(p, compile_T);
                    sum = first ? e : series_add(sum, e);
                    first = false;
                }
                print_series(sum);
            }
            return 0;
        }
        if (*pattern_cmd) {
            SquareClassSpec spec = parse_square_spec(spec_text);
            auto bits = sign_pattern(spec, pattern_terms);
            nlohmann::ordered_json j;
            j["record"] = "pattern";
            j["bits"] = bits;
            std::string text;
            for (int b : bits) text += b ? '1' : '0';
            emit(structured, j, text);
            return 0;
        }
        if (*sweep_cmd) {
            Family fam = family_from_name(family_name_arg);
            auto instances = parametric_instances(fam, sweep_pmax);
            int failures = 0;
            for (const ParametricInstance& inst : instances) {
                long long T = 2 * 3 * std::max<long long>(inst.reduction_N, 4) + 8;
                T = std::max(T, sweep_T);  // overrides only extend the range
                bool ok;
                std::string how;
                if (inst.family == Family::m16) {
                    auto terms = compile_theta(inst.spec);
                    QSeries lhs = eprod_expand(terms.at(0), T);
                    InstanceRhs rhs = instance_rhs(inst);
                    ProductExpr pe;
                    pe.groups.push_back({{8}, 8, 1});
                    pe.groups.push_back({{-(4 + rhs.m16_a)}, 8, 1});
                    pe.groups.push_back({{-(4 - rhs.m16_a)}, 8, 1});
                    ok = !first_difference(lhs, product_expand(pe, T)).has_value();
                    how = "jtp";
                } else {
                    ThrelReduction red =
                        reduce_threl(1, inst.reduction_N, {+1, inst.u_exponent}, T);
                    auto compiled = compile_theta(inst.spec);
                    bool structural = compiled.size() == 2 &&
                                      ((compiled[0] == red.lhs_terms[0] &&
                                        compiled[1] == red.lhs_terms[1]) ||
                                       (compiled[0] == red.lhs_terms[1] &&
                                        compiled[1] == red.lhs_terms[0]));
                    ok = red.verified && structural;
                    how = "threl1";
                }
                if (!ok) ++failures;
                nlohmann::ordered_json j;
                j["record"] = "instance";
                j["family"] = family_name(inst.family);
                j["P"] = inst.P;
                j["a"] = inst.a;
                j["case"] = inst.case_id;
                j["route"] = how;
                j["verified"] = ok;
                emit(structured, j,
                     family_name(inst.family) + " P=" + std::to_string(inst.P) +
                         " a=" + std::to_string(inst.a) + " case=" +
                         std::to_string(inst.case_id) + ": " +
                         (ok ? "verified" : "FAILED") + " (" + how + ")");
            }
            emit(structured,
                 {{"record", "summary"},
                  {"instances", instances.size()},
                  {"failures", failures}},
                 std::to_string(instances.size()) + " instances, " +
                     std::to_string(failures) + " failures");
            return failures == 0 ? 0 : 1;
        }

        if (*ws_verify) {
            // base=35 u=q^10 v=-q^3 x=q^14 y=q^6
            WeierstrassInstance inst;
            std::istringstream is(instance_text);
            std::string tok;
            auto parse_mono = [](const std::string& v) {
                SignedMonomial m{+1, 0};
                std::string t = v;
                if (!t.empty() && t[0] == '-') {
                    m.sign = -1;
                    t = t.substr(1);
                }
                if (t == "1") return m;
                if (t.rfind("q^", 0) == 0)
                    m.exponent = std::stoll(t.substr(2));
                else if (t == "q")
                    m.exponent = 1;
                else
                    throw std::invalid_argument("bad monomial '" + v + "'");
                return m;
            };
            while (is >> tok) {
                size_t eq = tok.find('=');
                if (eq == std::string::npos)
                    throw std::invalid_argument("instance: expected key=value");
                std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
                if (key == "base") inst.base = std::stoll(val);
                else if (key == "u") inst.u = parse_mono(val);
                else if (key == "v") inst.v = parse_mono(val);
                else if (key == "x") inst.x = parse_mono(val);
                else if (key == "y") inst.y = parse_mono(val);
                else throw std::invalid_argument("instance: unknown key " + key);
            }
            long long T = ws_T > 0 ? ws_T : 6 * inst.base;
            TaddReport rep = instantiate_tadd(inst, T);
            nlohmann::ordered_json j;
            j["record"] = "tadd";
            j["verified"] = rep.verified;
            j["checked_through"] = rep.checked_through;
            if (!rep.zero_factors.empty()) j["zero_factors"] = rep.zero_factors;
            if (rep.first_discrepancy)
                j["first_discrepancy"] = rep.first_discrepancy->str();
            emit(structured, j,
                 std::string(rep.verified ? "verified" : "FAILED") + " through q^" +
                     std::to_string(T));
            return rep.verified ? 0 : 1;
        }
        if (*ws_search) {
            std::ifstream in(target_path);
            if (!in) throw std::runtime_error("cannot open target file");
            std::string l1, l2;
            std::getline(in, l1);
            std::getline(in, l2);
            EProduct t1 = parse_eproduct(l1), t2 = parse_eproduct(l2);
            long long T = ws_T > 0 ? ws_T : 6 * ws_base;
            auto hits = search_specialization(t1, t2, ws_base, ws_bound, T);
            for (const WeierstrassInstance& h : hits) {
                nlohmann::ordered_json j;
                j["record"] = "hit";
                j["u"] = h.u.str();
                j["v"] = h.v.str();
                j["x"] = h.x.str();
                j["y"] = h.y.str();
                emit(structured, j,
                     "u=" + h.u.str() + " v=" + h.v.str() + " x=" + h.x.str() +
                         " y=" + h.y.str());
            }
            emit(structured, {{"record", "summary"}, {"hits", hits.size()}},
                 std::to_string(hits.size()) + " hits");
            return 0;
        }

        if (*scan_cmd) {
            Conjecture which;
            if (conjecture_name == "c41") which = Conjecture::c41;
            else if (conjecture_name == "c41-ineq") which = Conjecture::c41_inequalities;
            else if (conjecture_name == "cexp") which = Conjecture::cexp;
            else throw std::invalid_argument("unknown conjecture " + conjecture_name);
            std::vector<long long> S;
            if (which == Conjecture::cexp)
                for (long long s = 1; s <= scan_smax; ++s) S.push_back(s);
            ScanReport rep = conjecture_scan(which, scan_kmax, S, scan_T);
            std::cout << scan_report_json(rep) << "\n";
            return rep.clean() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

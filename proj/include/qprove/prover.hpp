#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qprove/modularcusp.hpp"
#include "qprove/thetaprod.hpp"

namespace qprove {

/* An identity sum_j lhs_terms[j] = rhs between theta products, with every
 * term already blown up to the common proof level. */
struct IdentityStatement {
    std::string name;
    long long level = 0;
    std::vector<EProduct> lhs_terms;
    EProduct rhs;
};

uint64_t statement_hash(const IdentityStatement& s);

enum class Verdict { proven, refuted, not_applicable };

std::string verdict_name(Verdict v);

struct CertTerm {
    std::string text;       // canonical E-product form
    long long sum_a = 0;    // sum of E exponents
    long long sum_g2a = 0;  // sum of g^2 a_g mod y(N)
    bool modular = false;
};

struct RefutationInfo {
    long long exponent_index = 0;  // grid index of first nonzero coefficient
    long long denominator = 1;     // grid denominator D
    std::string coefficient;
};

struct ProofCertificate {
    std::string statement;
    uint64_t hash = 0;
    long long level = 0;
    std::string divided_by;  // the term the identity was normalized against
    std::vector<CertTerm> terms;
    long long cusp_count = 0;
    std::vector<std::pair<std::string, Rational>> cusp_minima;  // finite cusps
    Rational order_sum;
    long long bound_U = 0;
    long long verified_through = 0;  // coefficients of q^0..q^U checked
    Verdict verdict = Verdict::not_applicable;
    RefutationInfo refutation;                  // set when refuted
    std::vector<std::string> non_modular_terms; // set when not applicable
};

/* Step 0: divide the identity lhs - rhs by the product part of the first
 * lhs term.  Every eta factor must cancel. */
std::vector<EProduct> normalize_statement(const IdentityStatement& s);

/* The six-step verification: modularity of every normalized term, cusp
 * representatives, valence bound U, and expansion of the combination
 * through q^U. */
ProofCertificate prove(const IdentityStatement& s);

/* Recompute everything recorded in the certificate; true iff all recorded
 * data reproduce.  Throws on a statement/certificate hash mismatch. */
bool verify_certificate(const ProofCertificate& cert, const IdentityStatement& s);

std::string certificate_to_json(const ProofCertificate& cert);
ProofCertificate certificate_from_json(const std::string& text);

}  // namespace qprove

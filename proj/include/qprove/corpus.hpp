#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qprove/prover.hpp"
#include "qprove/squares.hpp"

namespace qprove {

/* One parsed factor group (e1,...,ek; M)^p: the product of (q^{ei}; q^M)
 * over i, raised to p; a negative ei denotes the argument -q^{|ei|}. */
struct FactorGroup {
    std::vector<long long> args;
    long long modulus = 1;
    long long power = 1;
};

/* scalar * q^{qpower} * prod groups. */
struct ProductExpr {
    Rational scalar{1};
    Rational qpower{0};
    std::vector<FactorGroup> groups;
};

/* Parse "1/2 q^-1 (2,-1,-1;2)^2 / (1,4;5)"; '/' negates the power of the
 * following group. */
ProductExpr parse_product(const std::string& text);

/* Sum of products: terms joined by top-level " + " / " - ". */
std::vector<ProductExpr> parse_term_list(const std::string& text);

/* Blow a product expression up to an E-product at the given level. */
EProduct product_to_eproduct(const ProductExpr& expr, long long level);

QSeries product_expand(const ProductExpr& expr, long long T);

/* Expected t(n) pattern attached to a corpus record, for cross-checks. */
struct PatternSpec {
    enum Kind { none, zeros16, floor_n2_4, floor_5n_4, floor_n4_8, allplus } kind = none;
    std::vector<long long> zeros;  // zeros16 only: residues mod 16 with t(n)=0
};

struct CorpusRecord {
    std::string tag;
    long long level = 0;
    std::optional<SquareClassSpec> squares;   // generating-function side
    std::vector<ProductExpr> lhs;             // explicit term list otherwise
    ProductExpr rhs;
    PatternSpec pattern;
};

std::vector<CorpusRecord> load_corpus(const std::string& path);

/* Build the proof statement: lhs terms from the square spec (compiled and
 * blown up) or from the explicit term list, rhs from the product. */
IdentityStatement statement_from_record(const CorpusRecord& rec);

/* Parse "K=840 bsq=361 alternating=1 signs=+,+,-,+,-,+,-,-". */
SquareClassSpec parse_square_spec(const std::string& text);

}  // namespace qprove

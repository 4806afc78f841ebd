#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "qprove/corpus.hpp"
#include "qprove/squares.hpp"

using namespace qprove;

namespace {

bool agree(const QSeries& a, const QSeries& b)
{
    return !first_difference(a, b).has_value();
}

std::vector<long long> brute_solutions(long long K, long long bsq)
{
    std::vector<long long> out;
    long long b = ((bsq % K) + K) % K;
    for (long long s = 0; s < K; ++s)
        if ((s * s) % K == b) out.push_back(s);
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("squares");

TEST_CASE("residues of squares congruent to 361 mod 840")
{
    auto [R, classes] = solve_residues(840, 361);
    CHECK(R == 210);
    CHECK(classes == std::vector<long long>{19, 61, 79, 89, 121, 131, 149, 191});
}

TEST_CASE("residues for 16m+1 and 48m+1")
{
    auto [r16, c16] = solve_residues(16, 1);
    CHECK(r16 == 8);
    CHECK(c16 == std::vector<long long>{1, 7});

    auto [r48, c48] = solve_residues(48, 1);
    CHECK(r48 == 24);
    CHECK(c48 == std::vector<long long>{1, 7, 17, 23});
}

TEST_CASE("no solutions yields an empty class list")
{
    auto [R, classes] = solve_residues(4, 2);
    CHECK(classes.empty());
    (void)R;
}

TEST_CASE("solver matches brute force on 200 random inputs")
{
    std::mt19937 rng(131);
    for (int trial = 0; trial < 200; ++trial) {
        long long K = 1 + rng() % 500;
        long long bsq = (long long)(rng() % (unsigned long long)(K * K + 1));
        auto [R, classes] = solve_residues(K, bsq);
        auto sols = brute_solutions(K, bsq);
        // Reassemble the solution set from the period and classes.
        std::set<long long> rebuilt;
        for (long long s : classes)
            for (long long v = s; v < K; v += R) rebuilt.insert(v);
        CHECK(rebuilt == std::set<long long>(sols.begin(), sols.end()));
        CHECK(K % R == 0);
        // Minimality: no proper divisor period.
        for (long long d = 1; d < R; ++d) {
            if (R % d != 0) continue;
            bool periodic = true;
            for (long long s = 0; s < K && periodic; ++s) {
                bool in1 = rebuilt.count(s % K) > 0;
                bool in2 = rebuilt.count((s + d) % K) > 0;
                if (in1 != in2) periodic = false;
            }
            CHECK_FALSE(periodic);
        }
    }
}

TEST_CASE("bilateral pairing of the first 840 theorem")
{
    SquareClassSpec spec =
        make_square_spec(840, 361, {+1, +1, -1, +1, -1, +1, -1, -1}, true);
    auto sums = build_bilateral(spec);
    REQUIRE(sums.size() == 4);
    CHECK(sums[0].A == Rational(105, 2));
    CHECK(sums[0].B == Rational(19, 2));
    CHECK(sums[0].C == Rational(0));
    CHECK(sums[0].sign == +1);
    CHECK(sums[1].B == Rational(61, 2));
    CHECK(sums[1].C == Rational(4));
    CHECK(sums[1].sign == +1);
    CHECK(sums[2].B == Rational(79, 2));
    CHECK(sums[2].C == Rational(7));
    CHECK(sums[2].sign == -1);
    CHECK(sums[3].B == Rational(89, 2));
    CHECK(sums[3].C == Rational(9));
    CHECK(sums[3].sign == +1);
    for (const BilateralSum& s : sums) CHECK(s.alternating);
}

TEST_CASE("16m+1 pairs into a single sum over all integers")
{
    SquareClassSpec spec = make_square_spec(16, 1, {+1, +1}, false);
    auto sums = build_bilateral(spec);
    REQUIRE(sums.size() == 1);
    CHECK(sums[0].A == Rational(4));
    CHECK(sums[0].B == Rational(1));
    CHECK(sums[0].C == Rational(0));
    CHECK_FALSE(sums[0].alternating);
}

TEST_CASE("incompatible pairing signs are rejected")
{
    CHECK_THROWS_WITH_AS(
        (void)build_bilateral(make_square_spec(16, 1, {+1, -1}, false)),
        doctest::Contains("incompatible"), std::domain_error);
    CHECK_THROWS_AS((void)build_bilateral(make_square_spec(840, 361,
                        {+1, +1, -1, +1, -1, +1, -1, +1}, true)),
                    std::domain_error);
}

TEST_CASE("compiled theta products of the first 840 theorem")
{
    SquareClassSpec spec =
        make_square_spec(840, 361, {+1, +1, -1, +1, -1, +1, -1, -1}, true);
    auto prods = compile_theta(spec);
    REQUIRE(prods.size() == 4);
    // (q^105, q^62, q^43; q^105), then q^4 (..., q^83, q^22, ...), etc.
    std::vector<std::vector<long long>> slots = {{43, 62}, {22, 83}, {13, 92}, {8, 97}};
    std::vector<long long> cs = {0, 4, 7, 9};
    std::vector<int> signs = {+1, +1, -1, +1};
    for (size_t i = 0; i < 4; ++i) {
        CHECK(prods[i].level == 105);
        CHECK(prods[i].eta == 1);
        CHECK(prods[i].qpower == Rational(cs[i]));
        CHECK(prods[i].scalar == Rational(signs[i]));
        std::vector<long long> got;
        for (auto& [arg, m] : prods[i].slots) {
            CHECK(arg.sign == +1);
            CHECK(m == 1);
            got.push_back(arg.exponent);
        }
        CHECK(got == slots[i]);
    }
}

TEST_CASE("compiled products for 48m+1 and the 16m family")
{
    SquareClassSpec s48 = make_square_spec(48, 1, {+1, +1, -1, -1}, true);
    auto p48 = compile_theta(s48);
    REQUIRE(p48.size() == 2);
    CHECK(p48[0].slots.count({11, +1}) == 1);
    CHECK(p48[0].slots.count({13, +1}) == 1);
    CHECK(p48[1].qpower == Rational(1));
    CHECK(p48[1].slots.count({5, +1}) == 1);
    CHECK(p48[1].slots.count({19, +1}) == 1);

    SquareClassSpec s16 = make_square_spec(16, 1, {+1, +1}, false);
    auto p16 = compile_theta(s16);
    REQUIRE(p16.size() == 1);
    CHECK(p16[0].level == 8);
    CHECK(p16[0].eta == 1);
    CHECK(p16[0].slots.count({3, -1}) == 1);
    CHECK(p16[0].slots.count({5, -1}) == 1);
}

TEST_CASE("sign pattern of the first 840 theorem")
{
    SquareClassSpec spec =
        make_square_spec(840, 361, {+1, +1, -1, +1, -1, +1, -1, -1}, true);
    auto bits = sign_pattern(spec, 16);
    std::set<long long> zeros = {0, 1, 3, 5, 10, 12, 14, 15};
    for (long long n = 0; n < 16; ++n)
        CHECK(bits[(size_t)n] == (zeros.count(n) ? 0 : 1));
}

TEST_CASE("sign pattern of 240m+1 follows floor((n+2)/4)")
{
    SquareClassSpec spec =
        make_square_spec(240, 1, {+1, +1, -1, -1, -1, -1, +1, +1}, false);
    auto bits = sign_pattern(spec, 8);
    for (long long n = 0; n < 8; ++n)
        CHECK(bits[(size_t)n] == ((n + 2) / 4) % 2);
}

TEST_CASE("single all-plus class pattern is all zeros")
{
    SquareClassSpec spec = make_square_spec(16, 9, {+1, +1}, false);
    for (int b : sign_pattern(spec, 10)) CHECK(b == 0);
}

TEST_CASE("compiled combination equals the enumerated generating function")
{
    for (auto [K, bsq, signs, alt] :
         std::vector<std::tuple<long long, long long, std::vector<int>, bool>>{
             {840, 361, {+1, +1, -1, +1, -1, +1, -1, -1}, true},
             {240, 49, {+1, -1, +1, -1, -1, +1, -1, +1}, false},
             {48, 25, {+1, -1, +1, -1}, true},
             {16, 9, {+1, +1}, false}}) {
        SquareClassSpec spec = make_square_spec(K, bsq, signs, alt);
        long long T = 80;
        QSeries sum;
        bool first = true;
        for (const EProduct& p : compile_theta(spec)) {
            QSeries e = eprod_expand(p, T);
            sum = first ? e : series_add(sum, e);
            first = false;
        }
        QSeries expect = oracle::signed_square_gf(K, bsq, spec.period, spec.classes,
                                                  spec.signs, alt, T);
        CHECK(agree(sum, expect));
    }
}

TEST_CASE("parametric instance (24P, P=5, a=1) gives the 120m+1 product")
{
    auto instances = parametric_instances(Family::p24_thm, 5);
    REQUIRE(!instances.empty());
    const ParametricInstance* found = nullptr;
    for (const auto& inst : instances)
        if (inst.P == 5 && inst.a == 1) found = &inst;
    REQUIRE(found != nullptr);
    CHECK(found->case_id == 2);  // 1 and 5 differ mod 3
    InstanceRhs rhs = instance_rhs(*found);
    CHECK(rhs.numerator ==
          std::vector<std::pair<long long, long long>>{{2, 5}, {3, 5}, {5, 5}});
    CHECK(rhs.denominator ==
          std::vector<std::pair<long long, long long>>{{1, 5}, {4, 5}});
}

TEST_CASE("parametric instance (3P, P=7, a=1) matches the printed 21m+1 product")
{
    auto instances = parametric_instances(Family::p3_thm, 7);
    const ParametricInstance* found = nullptr;
    for (const auto& inst : instances)
        if (inst.P == 7 && inst.a == 1) found = &inst;
    REQUIRE(found != nullptr);
    CHECK(found->case_id == 1);
    InstanceRhs rhs = instance_rhs(*found);
    // (q^8, q^6, q^14; q^14) / (q^11, q^3; q^14), which must agree with
    // (q,q^6,q^7;q^7)(q^5,q^9;q^14)/(q,q^3;q^4) as a series.
    long long T = 60;
    ProductExpr gen;
    for (auto& [e, M] : rhs.numerator) gen.groups.push_back({{e}, M, 1});
    for (auto& [e, M] : rhs.denominator) gen.groups.push_back({{e}, M, -1});
    ProductExpr printed = parse_product("(1,6,7;7) (5,9;14) / (1,3;4)");
    CHECK(agree(product_expand(gen, T), product_expand(printed, T)));
}

TEST_CASE("parametric instance (16m, a=3) is the 16m+9 product")
{
    auto instances = parametric_instances(Family::m16, 0);
    REQUIRE(instances.size() == 2);
    CHECK(instances[1].a == 3);
    InstanceRhs rhs = instance_rhs(instances[1]);
    CHECK(rhs.m16_form);
    CHECK(rhs.m16_a == 3);
    // (q^8;q^8)(-q^7;q^8)(-q;q^8) equals the compiled combination.
    auto prods = compile_theta(instances[1].spec);
    REQUIRE(prods.size() == 1);
    ProductExpr pe = parse_product("(8,-7,-1;8)");
    CHECK(agree(eprod_expand(prods[0], 60), product_expand(pe, 60)));
}

TEST_CASE("family residue lists match the solver for all P <= 60")
{
    for (Family f : {Family::p24_thm, Family::p24_cor, Family::p3_thm, Family::p3_cor}) {
        auto instances = parametric_instances(f, 60);
        CHECK(!instances.empty());
        for (const auto& inst : instances) {
            // family_spec already cross-checks against solve_residues; here
            // confirm ordering and integrality probes.
            CHECK(std::is_sorted(inst.spec.classes.begin(), inst.spec.classes.end()));
            auto sums = build_bilateral(inst.spec);
            CHECK(sums.size() == 2);
        }
    }
}

TEST_CASE("powers of three admit no parametric instances")
{
    for (Family f : {Family::p24_thm, Family::p3_thm}) {
        for (const auto& inst : parametric_instances(f, 60)) {
            CHECK(inst.P % 3 != 0);
            CHECK(inst.a % 3 != 0);
        }
    }
}

TEST_SUITE_END();

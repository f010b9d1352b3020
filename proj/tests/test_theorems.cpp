#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qindep/theorems.hpp"

using namespace qindep;

namespace {

FieldPtr rational_q(int m) {
    return field_create(ZPoly{-m, 1}, RootSelector::max_real(), kDefaultPrec);
}

CheckStatus status_of(const HypothesisVerdict& v, const std::string& name) {
    for (const auto& c : v.checks)
        if (c.name == name) return c.status;
    throw std::runtime_error("no check named " + name);
}

} // namespace

TEST_CASE("thm1: q=2, P=X-1, alphas=[1] passes") {
    auto f = rational_q(2);
    auto v = check_thm1(f, parse_poly("x-1"), {FieldElement::one(f)}, 0, kDefaultPrec);
    CHECK(v.satisfied);
    CHECK(v.margin.certainly_positive());  // 2 - 1
    CHECK(status_of(v, "pv") == CheckStatus::Pass);
    CHECK(status_of(v, "size_inequality") == CheckStatus::Pass);
}

TEST_CASE("thm1: ratio -1 is a root of unity") {
    auto f = rational_q(2);
    auto one = FieldElement::one(f);
    auto v = check_thm1(f, parse_poly("x-1"), {one, -one}, 0, kDefaultPrec);
    CHECK(!v.satisfied);
    CHECK(status_of(v, "ratios_not_roots_of_unity") == CheckStatus::Fail);
    CHECK(status_of(v, "size_inequality") == CheckStatus::Pass);
}

TEST_CASE("thm1: alpha=3 violates the size inequality at q=2") {
    auto f = rational_q(2);
    auto v = check_thm1(f, parse_poly("x-1"), {FieldElement::from_rational(f, 3)}, 0,
                        kDefaultPrec);
    CHECK(!v.satisfied);
    CHECK(status_of(v, "size_inequality") == CheckStatus::Fail);
    CHECK(v.margin.certainly_negative());  // 2 - 3
}

TEST_CASE("thm1: non-integral and zero alphas are rejected as checks") {
    auto f = rational_q(2);
    auto half = FieldElement::from_rational(f, mpq_class(1, 2));
    auto v = check_thm1(f, parse_poly("x-1"), {half}, 0, kDefaultPrec);
    CHECK(status_of(v, "alphas_integral_nonzero") == CheckStatus::Fail);
    auto vz = check_thm1(f, parse_poly("x-1"), {FieldElement::zero(f)}, 0, kDefaultPrec);
    CHECK(status_of(vz, "alphas_integral_nonzero") == CheckStatus::Fail);
}

TEST_CASE("thm1: constant P and vanishing P(q^t) fail") {
    auto f = rational_q(2);
    auto one = FieldElement::one(f);
    auto v = check_thm1(f, parse_poly("5"), {one}, 0, kDefaultPrec);
    CHECK(status_of(v, "p_nonvanishing") == CheckStatus::Fail);
    auto w = check_thm1(f, parse_poly("x-8"), {one}, 0, kDefaultPrec);
    CHECK(status_of(w, "p_nonvanishing") == CheckStatus::Fail);
    CHECK(!w.satisfied);
}

TEST_CASE("thm1: non-PV q gives a fail check, not an error") {
    auto f = field_create(parse_poly("x^2-3"), RootSelector::max_real(), kDefaultPrec);
    auto v = check_thm1(f, parse_poly("x-1"), {FieldElement::one(f)}, 0, kDefaultPrec);
    CHECK(status_of(v, "pv") == CheckStatus::Fail);
    CHECK(!v.satisfied);
}

TEST_CASE("thm1 monotonicity: passing set passes on subsets") {
    auto f = rational_q(5);
    std::vector<FieldElement> all = {FieldElement::one(f),
                                     FieldElement::from_rational(f, 2),
                                     FieldElement::from_rational(f, 3)};
    auto v = check_thm1(f, parse_poly("x-1"), all, 0, kDefaultPrec);
    REQUIRE(v.satisfied);
    for (size_t drop = 0; drop < all.size(); ++drop) {
        std::vector<FieldElement> sub;
        for (size_t i = 0; i < all.size(); ++i)
            if (i != drop) sub.push_back(all[i]);
        CHECK(check_thm1(f, parse_poly("x-1"), sub, 0, kDefaultPrec).satisfied);
    }
}

TEST_CASE("degree-1 closed form: condition reduces to |alpha| < q") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> qd(2, 9), ad(-12, 12);
    int done = 0;
    while (done < 50) {
        int m = qd(rng), a = ad(rng);
        if (a == 0) continue;
        ++done;
        auto f = rational_q(m);
        auto v = check_thm1(f, parse_poly("x-1"), {FieldElement::from_rational(f, a)}, 0,
                            kDefaultPrec);
        CHECK(v.satisfied == (std::abs(a) < m));
    }
}

TEST_CASE("cor irrational: q=2, alpha=1 passes (zeta_q(1) path)") {
    auto f = rational_q(2);
    auto v = check_cor_irrational(f, FieldElement::one(f), kDefaultPrec);
    CHECK(v.theorem_id == TheoremId::Cor1_3);
    CHECK(v.satisfied);
}

TEST_CASE("cor irrational: alpha=0 fails positivity") {
    auto f = rational_q(2);
    auto v = check_cor_irrational(f, FieldElement::zero(f), kDefaultPrec);
    CHECK(!v.satisfied);
    CHECK(status_of(v, "positivity") == CheckStatus::Fail);
}

TEST_CASE("cor irrational: golden field boundary alpha=q does not pass") {
    // H_q(q) = q for PV q, so the strict inequality degenerates to q < q
    auto f = field_create(parse_poly("x^2-x-1"), RootSelector::max_real(), kDefaultPrec);
    auto v = check_cor_irrational(f, FieldElement::generator(f), kDefaultPrec);
    CHECK(!v.satisfied);
    auto s = status_of(v, "height_inequality");
    CHECK((s == CheckStatus::Fail || s == CheckStatus::Undecided));
}

TEST_CASE("cor irrational scaling: integer factor >= q forces failure") {
    auto f = rational_q(3);
    CHECK(check_cor_irrational(f, FieldElement::from_rational(f, 2), kDefaultPrec)
              .satisfied);
    CHECK(!check_cor_irrational(f, FieldElement::from_rational(f, 2 * 3), kDefaultPrec)
               .satisfied);
}

TEST_CASE("cor 1.5 routing") {
    auto f = rational_q(2);
    auto v = check_cor_irrational(f, FieldElement::one(f), kDefaultPrec,
                                  TheoremId::Cor1_5);
    CHECK(v.theorem_id == TheoremId::Cor1_5);
    CHECK(v.satisfied);
}

TEST_CASE("thm2 examples") {
    auto f3 = rational_q(3);
    CHECK(check_thm2(f3, FieldElement::from_rational(f3, 2), {1, 2}, kDefaultPrec)
              .satisfied);
    auto f2 = rational_q(2);
    CHECK(check_thm2(f2, FieldElement::one(f2), {1, 3}, kDefaultPrec).satisfied);
    auto v = check_thm2(f2, FieldElement::from_rational(f2, 3), {1, 2}, kDefaultPrec);
    CHECK(!v.satisfied);
    CHECK(status_of(v, "height_inequality") == CheckStatus::Fail);
}

TEST_CASE("thm2: |alpha| >= 1 is enforced") {
    auto f = rational_q(3);
    // 1/2 is both non-integral and of modulus < 1
    auto v = check_thm2(f, FieldElement::from_rational(f, mpq_class(1, 2)), {1, 2},
                        kDefaultPrec);
    CHECK(status_of(v, "alpha_modulus_ge_1") == CheckStatus::Fail);
    // boundary |alpha| = 1 passes (non-strict)
    auto w = check_thm2(f, -FieldElement::one(f), {2, 5}, kDefaultPrec);
    CHECK(status_of(w, "alpha_modulus_ge_1") == CheckStatus::Pass);
    CHECK(w.satisfied);
}

TEST_CASE("thm2: malformed a_list") {
    auto f = rational_q(2);
    auto one = FieldElement::one(f);
    CHECK_THROWS_AS(check_thm2(f, one, {2, 2}, kDefaultPrec), NonIncreasingA);
    CHECK_THROWS_AS(check_thm2(f, one, {3, 1}, kDefaultPrec), NonIncreasingA);
    CHECK_THROWS_AS(check_thm2(f, one, {}, kDefaultPrec), NonIncreasingA);
    CHECK_THROWS_AS(check_thm2(f, one, {0, 1}, kDefaultPrec), NonIncreasingA);
}

TEST_CASE("thm2 over the quartic PV field") {
    auto f = field_create(parse_poly("x^4-x^3-2*x^2+1"), RootSelector::max_real(),
                          kDefaultPrec);
    // alpha = 1: height 1 < |q|^1
    auto v = check_thm2(f, FieldElement::one(f), {1, 2}, kDefaultPrec);
    CHECK(v.satisfied);
}

TEST_CASE("cor1_2 wrapper specializes P = X - 1") {
    auto f = rational_q(2);
    auto v = check_cor_eq(f, {FieldElement::one(f)}, 2, kDefaultPrec);
    CHECK(v.theorem_id == TheoremId::Cor1_2);
    CHECK(v.satisfied);
    auto direct = check_thm1(f, parse_poly("x-1"), {FieldElement::one(f)}, 2,
                             kDefaultPrec);
    CHECK(v.satisfied == direct.satisfied);
    CHECK(v.checks.size() == direct.checks.size());
}

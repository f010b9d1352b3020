#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qindep/proofkit.hpp"
#include "qindep/qseries.hpp"

using namespace qindep;

namespace {

FieldPtr rational_q(int m) {
    return field_create(ZPoly{-m, 1}, RootSelector::max_real(), kDefaultPrec);
}

RelationCoeffs coeffs_for(const FieldPtr& f, const mpq_class& l0,
                          const std::vector<std::vector<mpq_class>>& rows) {
    RelationCoeffs c;
    c.lambda0 = FieldElement::from_rational(f, l0);
    for (const auto& r : rows) {
        std::vector<FieldElement> row;
        for (const auto& v : r) row.push_back(FieldElement::from_rational(f, v));
        c.lambdas.push_back(std::move(row));
    }
    return c;
}

mpz_class q_factorial_int(long q, unsigned long n) {
    mpz_class acc = 1, qp = 1;
    for (unsigned long t = 1; t <= n; ++t) {
        qp *= q;
        acc *= qp - 1;
    }
    return acc;
}

} // namespace

TEST_CASE("falling factorial") {
    CHECK(falling_factorial(0, 7) == 1);
    CHECK(falling_factorial(2, 5) == 20);
    CHECK(falling_factorial(3, 2) == 0);
    CHECK(falling_factorial(1, 0) == 0);
    CHECK(falling_factorial(4, 7) == 7 * 6 * 5 * 4);
}

TEST_CASE("A_poly") {
    auto f = rational_q(2);
    auto zero = coeffs_for(f, 0, {{0, 0}});
    CHECK(A_poly(zero, 1, 9).is_zero());
    auto cnst = coeffs_for(f, 0, {{5}});
    CHECK(A_poly(cnst, 1, 3).rational_value() == 5);
    auto lin = coeffs_for(f, 0, {{1, 2}});
    CHECK(A_poly(lin, 1, 3).rational_value() == 7);  // 1 + 2*3
}

TEST_CASE("X_N with all-zero coefficients vanishes") {
    auto f = rational_q(2);
    auto c = coeffs_for(f, 0, {{0}});
    for (unsigned long N : {1ul, 4ul, 9ul}) {
        auto tr = compute_xn_thm1(f, parse_poly("x-1"), {FieldElement::one(f)}, c, N);
        CHECK(tr.xn_exact.is_zero());
        CHECK(tr.norm == 0);
    }
}

TEST_CASE("X_N with lambda0=-1 only is minus the q-factorial") {
    auto f = rational_q(2);
    auto c = coeffs_for(f, -1, {{0}});
    for (unsigned long N : {1ul, 3ul, 6ul, 10ul}) {
        auto tr = compute_xn_thm1(f, parse_poly("x-1"), {FieldElement::one(f)}, c, N);
        CHECK(tr.xn_exact.rational_value() == -mpq_class(q_factorial_int(2, N)));
        CHECK(abs(tr.norm) == q_factorial_int(2, N));
    }
}

TEST_CASE("partial-sum identity holds exactly for N <= 30") {
    auto f = field_create(parse_poly("x^2-x-1"), RootSelector::max_real(), kDefaultPrec);
    auto q = FieldElement::generator(f);
    std::vector<FieldElement> alphas = {FieldElement::one(f), q};
    RelationCoeffs c;
    c.lambda0 = q - FieldElement::from_rational(f, 2);
    c.lambdas = {{FieldElement::one(f), q}, {-q, FieldElement::from_rational(f, 3)}};
    ZPoly P = parse_poly("x-1");

    for (unsigned long N : {1ul, 2ul, 5ul, 12ul, 30ul}) {
        auto tr = compute_xn_thm1(f, P, alphas, c, N);
        // independent evaluation: pref_N * (l0t + sum_n inner_n / pref_n)
        FieldElement gen = FieldElement::generator(f);
        FieldElement qpow = FieldElement::one(f), pref = FieldElement::one(f);
        FieldElement series = c.lambda0_tilde();
        std::vector<FieldElement> apow(alphas.size(), FieldElement::one(f));
        std::vector<FieldElement> prefs;
        FieldElement acc = FieldElement::zero(f);
        for (unsigned long n = 1; n <= N; ++n) {
            qpow = qpow * gen;
            pref = pref * (qpow - FieldElement::one(f));
            FieldElement inner = FieldElement::zero(f);
            for (size_t k = 0; k < alphas.size(); ++k) {
                apow[k] = apow[k] * alphas[k];
                inner = inner + A_poly(c, k + 1, n) * apow[k];
            }
            acc = acc + inner / pref;
        }
        FieldElement expect = pref * (series + acc);
        CHECK(tr.xn_exact == expect);
        CHECK(is_algebraic_integer(tr.xn_exact));
        CHECK(tr.norm.get_den() == 1);
        CHECK(tr.norm == norm_exact(tr.xn_exact));
    }
}

TEST_CASE("telescoping identity for N <= 30") {
    auto f = rational_q(3);
    std::vector<FieldElement> alphas = {FieldElement::from_rational(f, 2),
                                        FieldElement::from_rational(f, -1)};
    auto c = coeffs_for(f, 2, {{1, -2}, {3, 1}});
    ZPoly P = parse_poly("x^2-2");  // nonvanishing at powers of 3
    FieldElement gen = FieldElement::generator(f);

    auto pref_prod = [&](unsigned long N) {
        FieldElement pref = FieldElement::one(f), qpow = FieldElement::one(f);
        for (unsigned long t = 1; t <= N; ++t) {
            qpow = qpow * gen;
            pref = pref * (qpow * qpow - FieldElement::from_rational(f, 2));
        }
        return pref;
    };
    for (unsigned long N : {1ul, 4ul, 11ul, 30ul}) {
        auto a = compute_xn_thm1(f, P, alphas, c, N);
        auto b = compute_xn_thm1(f, P, alphas, c, N + 1);
        FieldElement lhs =
            b.xn_exact / pref_prod(N + 1) - a.xn_exact / pref_prod(N);
        FieldElement a1 = alphas[0].pow(N + 1), a2 = alphas[1].pow(N + 1);
        FieldElement rhs = (A_poly(c, 1, N + 1) * a1 + A_poly(c, 2, N + 1) * a2) /
                           pref_prod(N + 1);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("trace ratio converges to the qseries value") {
    // lambda0=0, lambda_{0,1}=1 at q=2, P=X-1, alpha=1:
    // X_N / prod = 1 + sum_{n<=N} 1/[n]_2!  ->  E_2(1)
    auto f = rational_q(2);
    auto c = coeffs_for(f, 0, {{1}});
    unsigned long N = 40;
    auto tr = compute_xn_thm1(f, parse_poly("x-1"), {FieldElement::one(f)}, c, N);
    mpq_class ratio = tr.xn_exact.rational_value() / q_factorial_int(2, N);
    auto e = eval_series(SeriesSpec::exact(SeriesKind::Eq, f, FieldElement::one(f)),
                         Precision(128));
    // |ratio - E_2(1)| is the series tail at N, far below 2^-128
    CHECK(e.re().contains(ratio));
}

TEST_CASE("trace ratio with derivative terms matches f_j combination") {
    // lambda_{1,1} = 1 at alpha = 2: limit is f_1(2)/2^1 = E'(2)*2/2
    auto f = rational_q(3);
    auto c = coeffs_for(f, 0, {{0, 1}});
    auto alpha = FieldElement::from_rational(f, 2);
    unsigned long N = 35;
    auto tr = compute_xn_thm1(f, parse_poly("x-1"), {alpha}, c, N);
    mpz_class pref = q_factorial_int(3, N);
    mpq_class ratio = tr.xn_exact.rational_value() / pref;
    auto d = SeriesSpec::exact(SeriesKind::Eq, f, alpha);
    d.derivative_order = 1;
    auto limit = eval_series(d, Precision(128));  // sum n 2^n/[n]_3! starts here
    // ratio = sum_{n<=N} r_1(n) 2^{n-1} * 2 / [n]_3! ... with x^{n-j} scaling:
    // A(n) alpha^n = n 2^n, series form uses r_1(n) x^{n-1}; multiply by x
    auto scaled = ball_mul(limit.re(), RealBall::exact_int(2, Precision(128)),
                           Precision(128));
    CHECK(scaled.contains(ratio));
}

TEST_CASE("main bound envelopes the truncation remainder") {
    // The remainder R_N = (prod_{t<=N} P(q^t)) sum_{n>N} A(n) alpha^n / prod
    // is what the main bound shape estimates; here R_N = prod * (E_2(1) -
    // partial sum), computable as prod * E - X_N in ball arithmetic.
    auto f = rational_q(2);
    auto c = coeffs_for(f, 0, {{1}});
    // [N]_2! reaches ~2^325, so the series enclosure must be much tighter
    // than 2^-351 for the remainder ball to resolve
    Precision p(512);
    auto e = eval_series(SeriesSpec::exact(SeriesKind::Eq, f, FieldElement::one(f)), p);
    double worst = 0;
    for (unsigned long N = 3; N <= 25; ++N) {
        auto tr = compute_xn_thm1(f, parse_poly("x-1"), {FieldElement::one(f)}, c, N, p);
        RealBall prod = RealBall::exact(q_factorial_int(2, N), p);
        RealBall rn = ball_sub(ball_mul(prod, e.re(), p),
                               ball_abs(tr.conj_enclosures[0], p), p);
        double r = ball_abs(rn).upper_d();
        double bd = tr.bound_main.lower_d();
        REQUIRE(bd > 0);
        worst = std::max(worst, r / bd);
    }
    // empirical constant fit over the scan and then frozen
    CHECK(worst < 4.0);
}

TEST_CASE("conjugate bound envelopes sigma_l(X_N) unconditionally") {
    auto f = field_create(parse_poly("x^2-x-1"), RootSelector::max_real(), kDefaultPrec);
    auto q = FieldElement::generator(f);
    RelationCoeffs c;
    c.lambda0 = -q;
    c.lambdas = {{FieldElement::one(f), q}};
    Precision p(192);
    double worst = 0;
    for (unsigned long N = 2; N <= 20; ++N) {
        auto tr = compute_xn_thm1(f, parse_poly("x-1"), {q}, c, N, p);
        REQUIRE(tr.bound_conj.size() == 1);
        double lhs = ball_abs(tr.conj_enclosures[1], p).upper_d();
        double bd = tr.bound_conj[0].lower_d();
        REQUIRE(bd > 0);
        worst = std::max(worst, lhs / bd);
    }
    // empirical constant fit over the scan and then frozen
    CHECK(worst < 16.0);
}

TEST_CASE("progression setup") {
    auto s = ProgressionSetup::create({1, 2});
    CHECK(s.d == 2);
    CHECK(s.d_list == std::vector<unsigned long>{2, 1});
    CHECK(s.delta == 1);
    CHECK(s.N_i(0, 2) == 4);
    CHECK(s.N_i(1, 2) == 2);
    auto t = ProgressionSetup::create({2, 3, 5});
    CHECK(t.d == 30);
    CHECK(t.delta == 1);
    CHECK(ProgressionSetup::create({4}).delta == 4);
    CHECK_THROWS_AS(ProgressionSetup::create({2, 2}), NonIncreasingA);
    CHECK_THROWS_AS(ProgressionSetup::create({0, 1}), NonIncreasingA);
}

TEST_CASE("thm2 worked example: X_2 = 751") {
    auto f = rational_q(2);
    auto setup = ProgressionSetup::create({1, 2});
    auto c = coeffs_for(f, 0, {{1}, {0}});
    auto tr = compute_xn_thm2(f, FieldElement::one(f), setup, c, 2);
    CHECK(tr.xn_exact.rational_value() == 751);
    CHECK(tr.norm == 751);
}

TEST_CASE("thm2 with k=1, a=(1) collapses to the thm1 machinery") {
    auto f = rational_q(2);
    auto setup = ProgressionSetup::create({1});
    auto alpha = FieldElement::from_rational(f, 1);
    for (unsigned long N : {1ul, 3ul, 7ul}) {
        auto c2 = coeffs_for(f, -2, {{3}});
        auto t2 = compute_xn_thm2(f, alpha, setup, c2, N);
        auto t1 = compute_xn_thm1(f, parse_poly("x-1"), {alpha}, c2, N);
        CHECK(t1.xn_exact == t2.xn_exact);
        CHECK(t1.norm == t2.norm);
    }
}

TEST_CASE("thm2 integrality over the quartic field") {
    auto f = field_create(parse_poly("x^4-x^3-2*x^2+1"), RootSelector::max_real(),
                          kDefaultPrec);
    auto q = FieldElement::generator(f);
    auto setup = ProgressionSetup::create({1, 2});
    RelationCoeffs c;
    c.lambda0 = q;
    c.lambdas = {{FieldElement::one(f)}, {-q}};
    for (unsigned long N : {1ul, 2ul, 3ul}) {
        auto tr = compute_xn_thm2(f, FieldElement::one(f), setup, c, N);
        CHECK(is_algebraic_integer(tr.xn_exact));
        CHECK(tr.norm.get_den() == 1);
    }
}

TEST_CASE("elimination terms: leading term and decay envelope") {
    auto f = rational_q(3);
    auto alpha = FieldElement::from_rational(f, 2);
    auto setup = ProgressionSetup::create({1, 2});
    auto c = coeffs_for(f, 0, {{1}, {1}});
    Precision p(128);
    for (unsigned long N = 1; N <= 8; ++N) {
        auto terms = elimination_terms(f, alpha, setup, c, N, p);
        REQUIRE(terms.size() == 3);  // d_1 = 2 offsets + d_2 = 1 offset
        for (const auto& t : terms) {
            if (t.leading) {
                CHECK(t.j == 1);
                CHECK(t.l == 0);
                // alpha^{N(d_1 - d_2)} = 2^N exactly
                mpz_class lead;
                mpz_pow_ui(lead.get_mpz_t(), mpz_class(2).get_mpz_t(), N);
                CHECK(t.value_exact.rational_value() == mpq_class(lead));
            } else {
                CHECK(ball_abs(t.value, p).certainly_lt(t.envelope));
            }
        }
    }
}

TEST_CASE("elimination terms: alpha=1 leading term is exactly 1") {
    auto f = rational_q(2);
    auto setup = ProgressionSetup::create({1, 2});
    auto c = coeffs_for(f, 0, {{1}, {1}});
    auto terms = elimination_terms(f, FieldElement::one(f), setup, c, 5, kDefaultPrec);
    CHECK(terms[0].leading);
    CHECK(terms[0].value_exact.rational_value() == 1);
}

TEST_CASE("elimination terms: single progression telescopes") {
    auto f = rational_q(2);
    auto setup = ProgressionSetup::create({2});
    auto c = coeffs_for(f, 0, {{1}});
    auto terms = elimination_terms(f, FieldElement::one(f), setup, c, 3, kDefaultPrec);
    CHECK(terms.size() == 1);
    CHECK(terms[0].leading);
}

TEST_CASE("norm dichotomy classifications") {
    auto f = rational_q(2);
    ZPoly P = parse_poly("x-1");
    auto one = FieldElement::one(f);

    auto zero = coeffs_for(f, 0, {{0}});
    auto rz = norm_dichotomy_scan(
        [&](unsigned long N) { return compute_xn_thm1(f, P, {one}, zero, N); }, 1, 10);
    CHECK(rz.classification == DichotomyClass::IdenticallyZeroTail);
    for (const auto& e : rz.entries) CHECK(e.forced_zero);

    auto cor = coeffs_for(f, 0, {{1}});
    auto rc = norm_dichotomy_scan(
        [&](unsigned long N) { return compute_xn_thm1(f, P, {one}, cor, N); }, 1, 12);
    CHECK(rc.classification == DichotomyClass::Growing);

    auto l0 = coeffs_for(f, -1, {{0}});
    auto rl = norm_dichotomy_scan(
        [&](unsigned long N) { return compute_xn_thm1(f, P, {one}, l0, N); }, 1, 12);
    CHECK(rl.classification == DichotomyClass::Growing);
    CHECK(abs(rl.entries.back().norm) == q_factorial_int(2, 12));
}

TEST_CASE("vanishing P(q^t) raises DenominatorVanishes") {
    auto f = rational_q(2);
    auto c = coeffs_for(f, 1, {{1}});
    CHECK_THROWS_AS(
        compute_xn_thm1(f, parse_poly("x-4"), {FieldElement::one(f)}, c, 5),
        DenominatorVanishes);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qindep/poly.hpp"

using namespace qindep;

TEST_CASE("parse coefficient list and expression forms agree") {
    ZPoly a = parse_poly("1,0,-2,-1,1");
    ZPoly b = parse_poly("x^4-x^3-2*x^2+1");
    CHECK(a == b);
    CHECK(degree(a) == 4);
    CHECK(parse_poly("x-1") == ZPoly({-1, 1}));
    CHECK(parse_poly("2x^2") == ZPoly({0, 0, 2}));
}

TEST_CASE("divrem and gcd") {
    QPoly f = to_qpoly(parse_poly("x^3-1"));
    QPoly g = to_qpoly(parse_poly("x-1"));
    auto [q, r] = poly_divrem(f, g);
    CHECK(degree(r) < 0);
    CHECK(q == to_qpoly(parse_poly("x^2+x+1")));
    CHECK(poly_gcd(f, g) == g);
}

TEST_CASE("rational roots") {
    auto roots = rational_roots(parse_poly("2x^2-x-1"));  // roots 1, -1/2
    CHECK(roots.size() == 2);
    CHECK(std::find(roots.begin(), roots.end(), mpq_class(1)) != roots.end());
    CHECK(std::find(roots.begin(), roots.end(), mpq_class(-1, 2)) != roots.end());
    CHECK(rational_roots(parse_poly("x^2+1")).empty());
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic(1) == ZPoly({-1, 1}));
    CHECK(cyclotomic(2) == ZPoly({1, 1}));
    CHECK(cyclotomic(4) == ZPoly({1, 0, 1}));
    CHECK(cyclotomic(6) == ZPoly({1, -1, 1}));
    CHECK(cyclotomic(12) == ZPoly({1, 0, -1, 0, 1}));
    CHECK(euler_phi(12) == 4);
}

TEST_CASE("factor degrees mod p") {
    // x^2+1 splits mod 5 (since -1 is a QR), irreducible mod 3
    auto d5 = factor_degrees_mod_p(parse_poly("x^2+1"), 5);
    CHECK(d5 == std::vector<int>({1, 1}));
    auto d3 = factor_degrees_mod_p(parse_poly("x^2+1"), 3);
    CHECK(d3 == std::vector<int>({2}));
}

TEST_CASE("parse rational vector") {
    auto v = parse_rational_vector("[1,0,3/2]");
    REQUIRE(v.size() == 3);
    CHECK(v[2] == mpq_class(3, 2));
    auto s = parse_rational_vector("-5/3");
    REQUIRE(s.size() == 1);
    CHECK(s[0] == mpq_class(-5, 3));
}

#ifndef QINDEP_POLY_HPP
#define QINDEP_POLY_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "qindep/ball.hpp"

namespace qindep {

/* Coefficient vectors are stored low-to-high; the zero polynomial is the
 * empty vector.  All arithmetic is exact. */
using ZPoly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;

int degree(const ZPoly& p);
int degree(const QPoly& p);
void normalize(ZPoly& p);
void normalize(QPoly& p);

QPoly to_qpoly(const ZPoly& p);
// Clears denominators and divides by integer content; sign chosen so the
// leading coefficient is positive.
ZPoly primitive_part(const QPoly& p);

QPoly poly_add(const QPoly& a, const QPoly& b);
QPoly poly_sub(const QPoly& a, const QPoly& b);
QPoly poly_mul(const QPoly& a, const QPoly& b);
QPoly poly_scale(const QPoly& a, const mpq_class& c);
// Euclidean division; divisor must be nonzero.
std::pair<QPoly, QPoly> poly_divrem(const QPoly& a, const QPoly& b);
// Monic gcd over Q[x].
QPoly poly_gcd(const QPoly& a, const QPoly& b);
QPoly poly_derivative(const QPoly& p);
ZPoly poly_derivative(const ZPoly& p);
QPoly poly_monic(const QPoly& p);

mpq_class poly_eval(const QPoly& p, const mpq_class& x);
ComplexBall poly_eval(const ZPoly& p, const ComplexBall& x, Precision prec);
ComplexBall poly_eval(const QPoly& p, const ComplexBall& x, Precision prec);
RealBall poly_eval(const ZPoly& p, const RealBall& x, Precision prec);

bool poly_is_squarefree(const ZPoly& p);
// Exact rational roots of an integer polynomial.
std::vector<mpq_class> rational_roots(const ZPoly& p);

unsigned long euler_phi(unsigned long n);
// n-th cyclotomic polynomial, exact.
ZPoly cyclotomic(unsigned long n);
// All n >= 1 with phi(n) <= bound.
std::vector<unsigned long> orders_with_phi_at_most(unsigned long bound);

/* Degrees of the irreducible factors of p mod `prime`, via distinct-degree
 * factorization, or empty when p is not squarefree mod prime (skip the
 * prime).  Requires prime not dividing the leading coefficient. */
std::vector<int> factor_degrees_mod_p(const ZPoly& p, unsigned long prime);

/* Parses either a comma-separated coefficient list (low-to-high) or an
 * expression like "x^4-x^3-2*x^2+1". */
ZPoly parse_poly(const std::string& s);
std::string poly_to_string(const ZPoly& p);

// "[a0,a1,...]" rational list, or a bare rational like "3/2".
std::vector<mpq_class> parse_rational_vector(const std::string& s);

} // namespace qindep

#endif

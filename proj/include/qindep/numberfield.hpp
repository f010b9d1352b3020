#ifndef QINDEP_NUMBERFIELD_HPP
#define QINDEP_NUMBERFIELD_HPP

#include <memory>
#include <vector>

#include "qindep/ball.hpp"
#include "qindep/poly.hpp"

namespace qindep {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

struct RootSelector {
    enum Kind { MaxReal, Index } kind = MaxReal;
    size_t index = 1;  // 1-based, used when kind == Index

    static RootSelector max_real() { return {MaxReal, 1}; }
    static RootSelector at(size_t k) { return {Index, k}; }
};

/* Certified isolation of all complex roots of a squarefree integer
 * polynomial: pairwise disjoint disks, each containing exactly one root.
 * Real roots come back with an exactly-zero imaginary part. */
std::vector<ComplexBall> isolate_roots(const ZPoly& p, Precision prec);

/* Q(q) presented by an irreducible integer polynomial.  Immutable and
 * shareable; sigma_1 sends q to the distinguished root. */
class NumberField : public std::enable_shared_from_this<NumberField> {
  public:
    const ZPoly& min_poly() const { return min_poly_; }
    unsigned degree() const { return degree_; }
    // Root disks in embedding order (index 0 is the distinguished root).
    const std::vector<ComplexBall>& roots() const { return roots_; }
    Precision root_precision() const { return root_prec_; }

    // Re-certified root disks at (at least) the requested precision,
    // preserving embedding order.
    std::vector<ComplexBall> roots_at(Precision prec) const;

  private:
    friend FieldPtr field_create(const ZPoly&, RootSelector, Precision);
    NumberField() = default;

    ZPoly min_poly_;
    unsigned degree_ = 0;
    std::vector<ComplexBall> roots_;
    Precision root_prec_ = kDefaultPrec;
};

/* Verifies irreducibility, isolates roots, selects the distinguished
 * embedding.  Throws ReduciblePolynomial / RootIsolationFailed. */
FieldPtr field_create(const ZPoly& min_poly, RootSelector sel, Precision prec);

/* Element of Q(q) as rational coordinates in the power basis
 * 1, q, ..., q^{n_q - 1}. */
class FieldElement {
  public:
    FieldElement() = default;
    FieldElement(FieldPtr field, QPoly coeffs);

    static FieldElement from_rational(FieldPtr field, const mpq_class& r);
    static FieldElement generator(FieldPtr field);  // q itself
    static FieldElement zero(FieldPtr field) { return from_rational(field, 0); }
    static FieldElement one(FieldPtr field) { return from_rational(field, 1); }

    const FieldPtr& field() const { return field_; }
    const QPoly& coeffs() const { return coeffs_; }
    bool is_zero() const { return degree(coeffs_) < 0; }
    bool is_rational() const { return degree(coeffs_) <= 0; }
    mpq_class rational_value() const;  // requires is_rational()

    bool operator==(const FieldElement& o) const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;  // DivisionByZeroElement
    FieldElement operator-() const;
    FieldElement pow(unsigned long e) const;

  private:
    void check_same_field(const FieldElement& o) const;

    FieldPtr field_;
    QPoly coeffs_;
};

// Enclosure of sigma_l(a), 1-based l.
ComplexBall embed(const FieldElement& a, size_t l, Precision prec);

// Monic rational polynomial of minimal degree annihilating a.
QPoly minimal_polynomial(const FieldElement& a);

// True iff the minimal polynomial is monic with integer coefficients.
bool is_algebraic_integer(const FieldElement& a);

// Exact field norm: det of the multiplication-by-a matrix.
mpq_class norm_exact(const FieldElement& a);

// Enclosure of prod_l max{1, |sigma_l(a)|}.
RealBall q_height(const FieldElement& a, Precision prec);

// True iff a/b is a root of unity (cyclotomic minimal polynomial test).
bool is_ratio_root_of_unity(const FieldElement& a, const FieldElement& b);

struct PVReport {
    bool is_pv = false;
    ComplexBall dominant_root;
    std::vector<RealBall> conjugate_moduli;
    enum Sign { Plus, Minus } sign_convention = Plus;
};

/* Decides whether q (or -q) is a PV number, certified by strict enclosure
 * comparisons; throws Undecidable when laddering cannot separate a
 * conjugate modulus from 1 (Salem-like borderline inputs). */
PVReport pv_check(const FieldPtr& field, Precision prec);

} // namespace qindep

#endif

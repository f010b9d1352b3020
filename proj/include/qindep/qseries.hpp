#ifndef QINDEP_QSERIES_HPP
#define QINDEP_QSERIES_HPP

#include <optional>
#include <string>

#include "qindep/numberfield.hpp"

namespace qindep {

enum class SeriesKind { Eq, Lq, ZetaQ1, EqP, Tq, EqM };

std::string series_kind_name(SeriesKind k);
SeriesKind series_kind_from_name(const std::string& s);

/* Which function to evaluate, with its parameters and argument.  The
 * argument may be exact (a field element; partial sums are then computed
 * exactly in Q(q) and embedded once at the end) or a complex enclosure.
 * `progression` is E_{q,M}'s modulus and is never conflated with the
 * derivative order. */
struct SeriesSpec {
    SeriesKind kind = SeriesKind::Eq;
    FieldPtr field;                      // defines q (distinguished root)
    ZPoly P;                             // EqP only
    unsigned progression = 1;            // EqM only (M >= 1)
    unsigned derivative_order = 0;       // j
    std::optional<FieldElement> x_exact;
    std::optional<ComplexBall> x_ball;

    static SeriesSpec numeric(SeriesKind k, FieldPtr f, const ComplexBall& x);
    static SeriesSpec exact(SeriesKind k, FieldPtr f, const FieldElement& x);
};

// [n]_q = q^n - 1, exact.
FieldElement q_bracket(const FieldPtr& field, unsigned long n);
// [n]_q! = (q^n-1)...(q-1), exact; n = 0 gives 1.
FieldElement q_factorial(const FieldPtr& field, unsigned long n);

/* Upper bound on |sum_{n>N} term_n| via a geometric majorant whose ratio is
 * certified < 1; throws ThresholdNotReached when N is too small for the
 * majorant to apply. */
RealBall tail_bound(const SeriesSpec& spec, unsigned long N, Precision prec);

// Smallest truncation point whose tail bound is <= 2^{-target_bits}.
unsigned long choose_truncation(const SeriesSpec& spec, unsigned target_bits,
                                Precision prec);

/* Enclosure of the function value (j-th derivative, term-wise) whose radius
 * includes the rigorous truncation tail. */
ComplexBall eval_series(const SeriesSpec& spec, Precision prec);

/* f_j(x) = x^j E^{(j)}(x), cross-checked internally against the
 * r_j(n)-weighted series form. */
ComplexBall f_j(const SeriesSpec& spec, Precision prec);

/* First index from which the leading term of P(q^t) certifiably dominates,
 * so P(q^t) != 0 for all t beyond it; zeros below are excluded exactly. */
unsigned long poly_nonvanishing_threshold(const FieldPtr& field, const ZPoly& P,
                                          Precision prec);

} // namespace qindep

#endif

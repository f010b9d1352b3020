#ifndef QINDEP_RELATIONS_HPP
#define QINDEP_RELATIONS_HPP

#include <functional>
#include <vector>

#include "qindep/numberfield.hpp"

namespace qindep {

using IntMatrix = std::vector<std::vector<mpz_class>>;

/* Exact-integer LLL (rational Gram-Schmidt, delta = 0.99).  Rows span the
 * lattice; throws DegenerateBasis on dependent rows. */
IntMatrix lll_reduce(const IntMatrix& basis);

/* Search for an integer relation among enclosed values.  With a field set,
 * each value v_i is expanded to {q^b v_i : 0 <= b < n_q}, so an integer
 * relation among the expanded list is a power-basis O_q-relation.
 * reevaluate, when provided, supplies fresh enclosures at a requested
 * precision for independent verification of a candidate. */
struct RelationQuery {
    std::vector<ComplexBall> values;
    FieldPtr field;  // null: plain integer relations
    mpz_class max_height = 1000000;
    Precision precision = kDefaultPrec;
    std::function<std::vector<ComplexBall>(Precision)> reevaluate;
};

enum class RelationStatus { RelationFound, NoneBelowHeight };

struct RelationResult {
    RelationStatus status = RelationStatus::NoneBelowHeight;
    // One coefficient per (expanded) value; empty unless a relation was found.
    std::vector<mpz_class> coefficients;
    // Field mode: coefficients regrouped per value as power-basis rows.
    IntMatrix field_coefficients;
    RealBall residual;
    /* Lower bound certificate: any true relation over the given values has
     * height strictly greater than this, derived from the shortest
     * Gram-Schmidt vector of the reduced lattice and the enclosure radii. */
    mpz_class certified_height_bound;
};

/* Either exhibits a verified relation of height <= max_height or reports
 * none_below_height with the certificate.  Throws PrecisionTooLow when the
 * value radii exceed 2^{-precision+16}. */
RelationResult find_relation(const RelationQuery& query);

// Enclosure of |sum c_i v_i| from the given enclosures.
RealBall verify_relation(const std::vector<ComplexBall>& values,
                         const std::vector<mpz_class>& coefficients, Precision prec);

} // namespace qindep

#endif

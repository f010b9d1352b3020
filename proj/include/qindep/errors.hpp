#ifndef QINDEP_ERRORS_HPP
#define QINDEP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qindep {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// numerics
struct DivisorMayBeZero : Error { using Error::Error; };
struct AmbiguousEnclosure : Error { using Error::Error; };
struct PrecisionExhausted : Error { using Error::Error; };

// numberfield
struct ReduciblePolynomial : Error { using Error::Error; };
struct RootIsolationFailed : Error { using Error::Error; };
struct DivisionByZeroElement : Error { using Error::Error; };
struct FieldMismatch : Error { using Error::Error; };
struct Undecidable : Error { using Error::Error; };

// qseries
struct DomainViolation : Error { using Error::Error; };
struct DenominatorVanishes : Error { using Error::Error; };
struct ThresholdNotReached : Error { using Error::Error; };

// theorems
struct NonIncreasingA : Error { using Error::Error; };

// relations
struct DegenerateBasis : Error { using Error::Error; };
struct PrecisionTooLow : Error { using Error::Error; };

// cli
struct UsageError : Error { using Error::Error; };

} // namespace qindep

#endif

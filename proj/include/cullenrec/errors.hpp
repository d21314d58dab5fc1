#pragma once

#include <stdexcept>
#include <string>

namespace cullenrec {

// Common base so callers can catch everything thrown by this library at once.
struct Error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

// Malformed input: bad recurrence order, coefficient/initial length mismatch,
// zero trailing coefficient, unparsable polynomial or JSON, ...
struct InvalidSpec : Error {
	using Error::Error;
};

// A certified computation could not be completed even at the precision cap.
// Callers that own a precision ladder retry at higher precision before this
// escapes to the user.
struct PrecisionExhausted : Error {
	using Error::Error;
};

// The dominant Binet coefficient is exactly zero, so the dominant-root
// machinery (kappa thresholds, growth constants) does not apply.
struct DegenerateDominantCoefficient : Error {
	using Error::Error;
};

// Lattice basis is linearly dependent.
struct SingularBasis : Error {
	using Error::Error;
};

// The reduction scale parameter C was raised past its retry cap without the
// distance condition ever succeeding.
struct ScaleCapExceeded : Error {
	using Error::Error;
};

// A standing hypothesis (order >= 2, irreducibility, dominant real root
// > 1, nonzero dominant coefficient) failed for the supplied recurrence.
struct HypothesisFailure : Error {
	using Error::Error;
};

// Matveev data requires gamma to be a positive real algebraic number.
struct NonPositiveGamma : Error {
	using Error::Error;
};

// Binet coefficient extraction requires all characteristic roots simple.
struct RepeatedRoots : Error {
	using Error::Error;
};

// A Matveev evaluation was requested with neither computable gammas nor
// replayed A-values.
struct MissingAValues : Error {
	using Error::Error;
};

// Height of a symbolic quotient with an exactly-zero denominator.
struct DivisionByZeroSymbol : Error {
	using Error::Error;
};

} // namespace cullenrec

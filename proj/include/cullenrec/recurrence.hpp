#pragma once

// Integer linear recurrences U_n = a_1 U_{n-1} + ... + a_r U_{n-r}: exact term
// evaluation, characteristic polynomial, and the generating-function numerator
// used to extract Binet coefficients.

#include <gmpxx.h>

#include <vector>

#include "cullenrec/polynomial.hpp"

namespace cullenrec {

struct RecurrenceSpec {
	int order = 0;                       // r >= 1
	std::vector<mpz_class> coefficients; // a_1 ... a_r, a_r != 0
	std::vector<mpz_class> initials;     // U_0 ... U_{r-1}, not all zero

	// Throws InvalidSpec on any structural violation.
	void validate() const;

	// Exact U_from ... U_to (inclusive); requires 0 <= from <= to.
	std::vector<mpz_class> eval_terms(long from, long to) const;
	mpz_class term(long n) const;

	// Monic x^r - a_1 x^{r-1} - ... - a_r.
	IntPoly char_poly() const;
	// Numerator N(z) of the generating function sum U_n z^n = N(z)/D(z) with
	// D(z) = 1 - a_1 z - ... - a_r z^r; degree < r.
	IntPoly numerator_poly() const;
};

RecurrenceSpec fibonacci_spec();
// Order-3 sequence G_{n+3} = 3 G_{n+2} - 3 G_{n+1} + 2 G_n with G_0=0,
// G_1=G_2=1: periodic of period 6 despite the dominant characteristic root 2,
// because the Binet coefficient attached to 2 vanishes.
RecurrenceSpec counterexample_spec();

} // namespace cullenrec

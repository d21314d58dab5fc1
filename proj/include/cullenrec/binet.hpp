#pragma once

// Certified Binet decompositions U_n = sum_i f_i alpha_i^n for recurrences
// with simple characteristic roots, dominance classification, growth
// constants, and the standing-hypothesis report.
//
// Coefficients come from the generating-function residue formula
// f_i = -alpha_i N(1/alpha_i) / D'(1/alpha_i) and are cross-checked against an
// interval Gaussian solve of the Vandermonde system.  Whether a coefficient is
// *exactly* zero is decided symbolically: with M(x) = x^{r-1} N(1/x) and
// g = gcd(charpoly, M), a simple root alpha has f = 0 iff g(alpha) = 0, and
// evaluating g and charpoly/g on the root enclosure decides membership.

#include <optional>
#include <vector>

#include "cullenrec/recurrence.hpp"
#include "cullenrec/roots.hpp"

namespace cullenrec {

struct BinetDecomposition {
	std::vector<RootEnclosure> roots;          // decreasing modulus upper bound
	std::vector<ComplexInterval> coefficients; // f_i matching roots
	std::vector<bool> coefficient_exactly_zero;
	int dominant_index = -1;   // -1 when no root certifiably dominates
	RealInterval dominance_gap; // clamped delta in (0,1); exact 0 if unusable
	bool degenerate = false;   // dominant coefficient is exactly zero
};

struct DominanceReport {
	bool has_dominant = false;
	bool dominant_real_gt1 = false;
	RealInterval delta;     // min(delta_raw, 1 - 2^-10), exact 0 if unusable
	RealInterval delta_raw; // 1 - log|alpha_2| / log alpha_1
};

struct HypothesisReport {
	bool order_ge_2 = false;
	std::optional<bool> irreducible; // nullopt: could not be decided
	bool dominant_real_gt1 = false;
	bool f1_nonzero = false;

	bool all_hold() const {
		return order_ge_2 && irreducible.value_or(false) && dominant_real_gt1 &&
		       f1_nonzero;
	}
};

// Coefficients for the given (already isolated) roots; all roots must be
// simple, else RepeatedRoots.  Throws PrecisionExhausted when the supplied
// enclosures are too coarse to separate coefficients from zero.
BinetDecomposition binet_coefficients(const RecurrenceSpec& spec,
                                      const std::vector<RootEnclosure>& roots);

// Isolation plus coefficients under one precision ladder.
BinetDecomposition binet_decompose(const RecurrenceSpec& spec,
                                   mpfr_prec_t precision = kDefaultPrecision);

DominanceReport classify_dominance(const std::vector<RootEnclosure>& roots);
inline DominanceReport classify_dominance(const BinetDecomposition& d) {
	return classify_dominance(d.roots);
}

// c_1 = sum |f_i|, so |U_n| <= c_1 * alpha_1^n; the bound is re-checked
// against exact terms for n <= 200 before being returned.
RealInterval growth_constant(const BinetDecomposition& decomp,
                             const RecurrenceSpec& spec);

HypothesisReport check_hypotheses(const RecurrenceSpec& spec);

} // namespace cullenrec

#pragma once

// Certified complex root isolation for integer polynomials.
//
// Approximations come from the Aberth-Ehrlich simultaneous iteration in plain
// MPFR midpoint arithmetic; certification wraps each approximation in a
// Weierstrass disk D(z_i, n*|W_i|) with W_i = p(z_i) / (lc * prod(z_i - z_j))
// evaluated in outward-rounded interval arithmetic.  Pairwise-disjoint disks
// each contain exactly one root.  Realness is decided by conjugate accounting:
// a box meeting the real axis whose mirror image touches no other box must
// hold a real root.  Multiplicities come from Yun's squarefree decomposition.

#include <vector>

#include "cullenrec/interval.hpp"
#include "cullenrec/polynomial.hpp"

namespace cullenrec {

struct RootEnclosure {
	ComplexInterval enclosure;
	int multiplicity = 1;
	bool is_real = false;
	RealInterval modulus; // enclosure of |alpha|

	// True when this enclosure's modulus is strictly larger than the other's.
	bool modulus_above(const RootEnclosure& o) const {
		return o.modulus.strictly_below(modulus);
	}
};

// All complex roots of a nonconstant polynomial, with multiplicities, sorted
// by decreasing modulus upper bound.  Sum of multiplicities equals the degree.
// Throws PrecisionExhausted when disjointness cannot be certified below the
// precision cap, InvalidSpec for constant/zero input.
std::vector<RootEnclosure> isolate_roots(const IntPoly& poly,
                                         mpfr_prec_t precision = kDefaultPrecision);

} // namespace cullenrec

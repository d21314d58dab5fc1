#pragma once

// Exact lattice tools over Z: LLL reduction with rational Gram-Schmidt data,
// a rational lower bound on the shortest nonzero vector, and exact
// closest-vector enumeration (Fincke-Pohst) for the small dimensions the
// reduction step uses.

#include <gmpxx.h>

#include <vector>

namespace cullenrec {

struct IntegerLattice {
	std::vector<std::vector<mpz_class>> basis; // basis[i] is a basis vector

	int rank() const { return static_cast<int>(basis.size()); }
	int dimension() const { return basis.empty() ? 0 : static_cast<int>(basis[0].size()); }
	void validate() const;
};

// LLL with delta = 3/4 over exact rationals; throws SingularBasis when the
// input vectors are linearly dependent.
IntegerLattice lll_reduce(IntegerLattice lattice);

// Rational r with 0 < r <= ||v|| for every nonzero vector v of the lattice,
// from the first vector of an LLL-reduced basis: ||b_1|| / 2^{(m-1)/2}.
mpq_class shortest_vector_floor(const IntegerLattice& reduced);

struct ClosestVector {
	mpz_class distance_sq;
	std::vector<mpz_class> coefficients; // closest point = sum coeff_i basis_i
};

// Exact closest lattice point to an integer target, enumerated over the
// (preferably reduced) basis; distance 0 means the target lies in the lattice.
ClosestVector closest_vector(const IntegerLattice& lattice,
                             const std::vector<mpz_class>& target);

} // namespace cullenrec

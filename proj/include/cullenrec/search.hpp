#pragma once

// Exhaustive search below the reduced bounds, exact solution certificates,
// the parity argument excluding equal indices, and the certificate for the
// order-3 recurrence whose dominant Binet coefficient vanishes.

#include <gmpxx.h>

#include <vector>

#include "cullenrec/baker.hpp"
#include "cullenrec/recurrence.hpp"

namespace cullenrec {

struct SolutionTuple {
	std::vector<long> indices; // n_1 > ... > n_k >= 0 (Fibonacci relaxes to >=)
	long ell = 0;
	mpz_class x = 2;

	bool operator==(const SolutionTuple& o) const {
		return indices == o.indices && ell == o.ell && x == o.x;
	}
	bool operator<(const SolutionTuple& o) const {
		if (indices != o.indices) return indices < o.indices;
		if (ell != o.ell) return ell < o.ell;
		return cmp(x, o.x) < 0;
	}
};

// F_0 = 0, F_1 = 1, ...; the first count Fibonacci numbers.
std::vector<mpz_class> fibonacci_table(long count);

// All (n_1, n_2, ell) with F_{n_1} + F_{n_2} = ell 2^ell + 1, n_1 >= n_2 >= 0,
// n_1 <= n1_max, 0 <= ell <= ell_max.  Each ell admits at most two candidate
// n_1 because the larger term carries at least half the target, so the scan
// is a pair of binary searches per ell.
std::vector<SolutionTuple> search_fibonacci(long ell_max, long n1_max);

// All strictly descending index tuples with sum_i U_{n_i} = ell x^ell + Q(x)
// inside the box, by descending branch-and-bound on exact partial sums.  The
// prefix-extrema pruning is sound for sign-changing sequences too.
std::vector<SolutionTuple> search_general(const ProblemInstance& instance, long n1_max,
                                          long ell_max);

// Exact check that the tuple solves the instance's equation with
// nonincreasing nonnegative indices.
bool certify_solution(const ProblemInstance& instance, const SolutionTuple& tuple);

struct ParityCertificate {
	bool symbolic_ok = false; // 2 F_{n_1} is even while ell 2^ell + 1 is odd
	bool sweep_ok = false;    // no equality anywhere in the swept box
	long swept_n1 = 0, swept_ell = 0;

	bool valid() const { return symbolic_ok && sweep_ok; }
};

// Equal indices force 2 F_{n_1} = ell 2^ell + 1, even = odd; the symbolic
// contradiction is cross-checked by brute force over the box.
ParityCertificate parity_excludes_equal_indices(long n1_max = 60, long ell_max = 60);

struct CounterexampleCertificate {
	bool base_period_checks = false;        // G_6 = G_0, G_7 = G_1, G_8 = G_2, which
	                                        // with order-3 linearity force period 6
	bool factorization_ok = false;          // char poly = (x - 2)(x^2 - x + 1)
	bool dominant_coefficient_zero = false; // exactly, by the symbolic witness
	bool hypotheses_reject = false;         // the standing hypotheses refuse the spec
	bool family_values_ok = false;          // G_n = 1 iff n = 1, 2 (mod 6) in range
	long verified_k_range = 0;              // families checked for k <= this

	bool valid() const {
		return base_period_checks && factorization_ok && dominant_coefficient_zero &&
		       hypotheses_reject && family_values_ok;
	}
};

// Certify that the given recurrence (by default the built-in order-3 one)
// solves G_n = 1 * 2^1 - 1 on the two full residue classes 6k+1, 6k+2 while
// its dominant root 2 carries an exactly-zero Binet coefficient: growth-based
// finiteness arguments cannot apply to it, and the hypothesis checker must
// reject it.
CounterexampleCertificate verify_counterexample(const RecurrenceSpec& spec = counterexample_spec(),
                                                long k_range = 10000);

} // namespace cullenrec

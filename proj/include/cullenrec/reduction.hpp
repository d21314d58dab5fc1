#pragma once

// Lattice reduction for inhomogeneous linear forms in logarithms (de Weger's
// method with exact closest-vector certificates), plus the two-stage campaign
// that contracts the chain's astronomical bound for the built-in Fibonacci
// instance to a searchable range.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "cullenrec/baker.hpp"
#include "cullenrec/interval.hpp"

namespace cullenrec {

struct ReductionProblem {
	std::vector<RealInterval> thetas;       // lambda = beta + sum_j b_j theta_j
	RealInterval beta;
	std::vector<mpz_class> variable_bounds; // |b_j| <= X_j
	RealInterval decay_scale;               // |lambda| <= K rho^{-target}
	RealInterval decay_base;                // rho > 1
	mpz_class scale = 0;                    // C; 0 picks 100 prod X_j
	int max_attempts = 10;                  // scale retries, x10 each
	bool certified = false;                 // carry the full width of beta
	void validate() const;
};

struct ReductionOutcome {
	bool success = false;
	bool certified = false;     // false: beta was taken at its midpoint
	mpq_class lambda_lower = 0; // floor on |lambda| over the admissible box
	mpz_class new_bound = 0;    // target <= new_bound
	mpz_class scale_used = 0;
	int attempts = 0;
};

// One reduction step: build the approximation lattice at scale C, certify a
// distance floor by exact enumeration, and convert it into a new bound on the
// decay target.  Throws ScaleCapExceeded when no scale in the attempt budget
// works, and PrecisionExhausted when a scaled logarithm straddles an integer
// (the inputs are then too wide for the scale).
ReductionOutcome reduce_inhomogeneous(const ReductionProblem& problem,
                                      mpfr_prec_t precision = kDefaultPrecision);

struct CampaignStage {
	std::string name;
	int subproblems = 0;
	mpz_class bound;           // max of the per-subproblem new bounds
	int max_attempts_seen = 0;
};

struct CampaignReport {
	bool certified = false;
	mpz_class initial_bound; // chain absolute bound fed into round 1
	mpz_class initial_ell;   // chain ell bound
	mpz_class gap_bound;     // final n_1 - n_2 bound
	mpz_class absolute_bound; // final n_1 bound
	std::vector<CampaignStage> stages;
	std::vector<std::string> notes;
};

// Single campaign stages for the built-in Fibonacci instance, splitting ell
// into dyadic octaves so the ell-dependent constant becomes a per-subproblem
// beta.  The gap stage bounds n_1 - n_2 given current n_1 and ell bounds; the
// absolute stage bounds n_1 given in addition a gap bound (one subproblem per
// octave and gap value d).  Replay mode takes each octave constant at its
// midpoint (the published treatment; outcome uncertified); rigorous mode
// carries the full octave width, which no scale can absorb, and throws
// ScaleCapExceeded.  workers > 1 splits subproblems across threads with a
// deterministic max-merge.
CampaignStage fibonacci_gap_stage(const mpz_class& n1_bound, const mpz_class& ell_bound,
                                  BoundMode mode, int workers = 1,
                                  mpfr_prec_t precision = kDefaultPrecision);
CampaignStage fibonacci_absolute_stage(const mpz_class& n1_bound, const mpz_class& ell_bound,
                                       const mpz_class& gap_bound, BoundMode mode, int workers = 1,
                                       mpfr_prec_t precision = kDefaultPrecision);

// Two rounds of (gap stage, absolute stage), seeded with the resolved bounds
// of the replay/rigorous chain and re-deriving the ell bound between rounds.
CampaignReport fibonacci_reduction_campaign(BoundMode mode = BoundMode::Replay,
                                            int workers = 1,
                                            mpfr_prec_t precision = kDefaultPrecision);

} // namespace cullenrec

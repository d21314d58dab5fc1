#pragma once

// The bound-chasing pipeline for sum_{i=1..k} U_{n_i} = ell * x^ell + Q(x):
// vanishing thresholds for the linear forms, the linear bound ell <= c * n_1,
// gap bounds n_1 - n_i <= C_i (log x)^{a_i} (log n_1)^{b_i}, the matching
// absolute bound on n_1, and its resolution into an explicit integer via the
// n <= C (log n)^b fixpoint.
//
// Every produced constant is recorded in a BoundLedger entry with the formula
// it came from.  Replay mode reruns the chain with the hand-picked A-values
// and inequality shapes of the published Fibonacci treatment (checking that
// they dominate the computed minima); rigorous mode derives everything from
// certified enclosures.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "cullenrec/binet.hpp"
#include "cullenrec/interval.hpp"
#include "cullenrec/polynomial.hpp"
#include "cullenrec/recurrence.hpp"

namespace cullenrec {

// One instance of the equation: k terms of U, base x, shift polynomial Q.
struct ProblemInstance {
	RecurrenceSpec spec;
	IntPoly shift;      // Q
	mpz_class base = 2; // x >= 2
	int terms = 1;      // k >= 1

	void validate() const;
};

enum class BoundMode { Replay, Rigorous };

const char* to_string(BoundMode mode);

struct LedgerEntry {
	std::string name;
	RealInterval value;
	BoundMode mode = BoundMode::Rigorous;
	std::string provenance; // defining formula or "published choice"
};

// A bound of the shape  target <= coefficient * (log x)^a * (log n_1)^b,
// valid under the side conditions collected in the ledger notes.  The two
// exceptions are target "ell" (bound is coefficient * n_1) and "absolute"
// (the bounded quantity is n_1 itself, resolved holds the closing integer).
struct StageBound {
	std::string target;
	RealInterval coefficient;
	int log_x_power = 0;
	int log_n_power = 0;
	std::optional<mpz_class> resolved;
};

// coefficient * (log x)^a folded into a plain (log n_1)^b coefficient.
RealInterval folded_coefficient(const StageBound& bound, const mpz_class& base,
                                mpfr_prec_t prec = kDefaultPrecision);

struct BoundLedger {
	BoundMode mode = BoundMode::Rigorous;
	std::vector<LedgerEntry> entries;
	std::vector<StageBound> stage_bounds;
	std::vector<std::string> notes;

	void add(const std::string& name, const RealInterval& value,
	         BoundMode entry_mode, const std::string& provenance);
	void note(const std::string& text);
	const LedgerEntry* find(const std::string& name) const;
	const StageBound* stage(const std::string& target) const;
};

// Vanishing thresholds: if the form 1 - ell f_1^{-1} x^ell alpha_1^{-n_1}
// (1 + alpha_1^{n_2-n_1} + ... + alpha_1^{n_i-n_1})^{-1} vanishes then
// n_1 < kappa_i, provided alpha_1 is irrational.  values[i-1] holds kappa_i
// for i = 1..k; max_kappa majorises them and is >= 0.
struct KappaThresholds {
	std::vector<RealInterval> values;
	RealInterval max_kappa = RealInterval::exact(0);
};

KappaThresholds kappa_thresholds(const BinetDecomposition& decomp, int terms);

// ell <= slope * n_1 for n_1 >= 1 (generic), and optionally a sharper
// special_slope * n_1 valid for n_1 >= special_from (instance-specific).
struct EllBound {
	RealInterval slope;
	std::optional<mpq_class> special_slope;
	long special_from = 0;
};

EllBound ell_upper_bound(const ProblemInstance& instance,
                         const BinetDecomposition& decomp, BoundLedger& ledger,
                         mpfr_prec_t prec = kDefaultPrecision);

// Resolution of n <= coefficient * (log n)^b: the smallest certified N with
// N > coefficient * (log N)^b and log N > b, so that no n >= N satisfies the
// inequality.  For b = 0 this is floor(coefficient) + 1.
mpz_class resolve_fixpoint(const RealInterval& coefficient, int log_power);

// The full chain for one instance: hypotheses, thresholds, ell bound, gap
// stages 2..k, absolute stage, fixpoint.  Throws HypothesisFailure when the
// spec fails the standing hypotheses (order >= 2, irreducible characteristic
// polynomial, real dominant root > 1, nonvanishing dominant coefficient).
BoundLedger bound_chain(const ProblemInstance& instance, BoundMode mode,
                        mpfr_prec_t precision = kDefaultPrecision);

// The Fibonacci instance F_{n_1} + F_{n_2} = ell 2^ell + 1.
ProblemInstance fibonacci_instance();

// bound_chain specialised to fibonacci_instance() with the exact height of
// f_1^{-1} = sqrt(5) injected; supports both modes.
BoundLedger fibonacci_bound_chain(BoundMode mode,
                                  mpfr_prec_t precision = kDefaultPrecision);

} // namespace cullenrec

#pragma once

// Absolute logarithmic heights of algebraic numbers, symbolic height
// composition by subadditivity, and Matveev's lower bound for linear forms in
// logarithms of real algebraic numbers.

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <vector>

#include "cullenrec/polynomial.hpp"
#include "cullenrec/roots.hpp"

namespace cullenrec {

// An algebraic number given by its (primitive, positive-leading) minimal
// polynomial, certified enclosures of all conjugates, and the index of the
// designated one.
struct AlgebraicNumberRef {
	IntPoly minimal_polynomial;
	std::vector<RootEnclosure> conjugates;
	int selected = 0;

	int degree() const { return minimal_polynomial.degree(); }
	const ComplexInterval& value() const {
		return conjugates[static_cast<size_t>(selected)].enclosure;
	}
	bool selected_is_real() const {
		return conjugates[static_cast<size_t>(selected)].is_real;
	}

	// Isolates the conjugates and selects the real one with the largest real
	// part.  Requires a squarefree polynomial with at least one real root and
	// rejects a certified-reducible one.
	static AlgebraicNumberRef largest_real_root(const IntPoly& p,
	                                            mpfr_prec_t prec = kDefaultPrecision);
};

// h(eta) = (1/d)(log|c_d| + sum_i log max(1, |eta^(i)|)).
RealInterval log_height(const AlgebraicNumberRef& x,
                        mpfr_prec_t prec = kDefaultPrecision);
// h(p/q) = log max(|p|, q) for p/q in lowest terms.
RealInterval log_height(const mpq_class& x, mpfr_prec_t prec = kDefaultPrecision);

// Symbolic products/quotients/powers/sums of algebraic numbers and rationals.
// height() composes upper bounds (h(xy), h(x/y) <= h(x)+h(y); h(x^n) = |n|h(x);
// h(x+y) <= h(x)+h(y)+log 2) with an exact fast path when the whole expression
// is rational; value() evaluates the expression over complex intervals.
class HeightExpr {
public:
	static HeightExpr rational(const mpq_class& v);
	static HeightExpr integer(long v);
	static HeightExpr ref(AlgebraicNumberRef r);
	static HeightExpr pow(const HeightExpr& base, long e);
	static HeightExpr mul(const HeightExpr& a, const HeightExpr& b);
	static HeightExpr div(const HeightExpr& a, const HeightExpr& b);
	static HeightExpr add(const HeightExpr& a, const HeightExpr& b);

	bool is_rational() const;
	// Exact value of a rational expression; DivisionByZeroSymbol on division
	// by an exact zero.
	mpq_class rational_value() const;
	RealInterval height(mpfr_prec_t prec = kDefaultPrecision) const;
	ComplexInterval value(mpfr_prec_t prec = kDefaultPrecision) const;

private:
	enum class Kind { Rational, Ref, Pow, Mul, Div, Add };
	struct Node {
		Kind kind;
		mpq_class rat;
		long exp = 0;
		std::shared_ptr<const AlgebraicNumberRef> r;
		std::shared_ptr<const Node> a, b;
	};
	std::shared_ptr<const Node> n_;
	static HeightExpr wrap(std::shared_ptr<const Node> n);
	static bool node_rational(const Node& n);
	static mpq_class node_value(const Node& n);
	static RealInterval node_height(const Node& n, mpfr_prec_t prec);
	static ComplexInterval node_eval(const Node& n, mpfr_prec_t prec);
};

// A_j = max{D h(gamma), |log gamma|, 4/25} for a positive real gamma.
RealInterval matveev_A(const HeightExpr& gamma, int field_degree,
                       mpfr_prec_t prec = kDefaultPrecision);

// Data for log|Lambda| >= -(7/5) 30^{s+3} s^{4.5} D^2 (1+log D)(1+log B) prod A_j.
// When a_values is present those values are used verbatim (replay of published
// constants); otherwise each A_j is computed from the gammas.
struct LinearFormInstance {
	std::vector<HeightExpr> gammas;
	mpz_class B = 1;
	std::vector<mpz_class> b; // optional exponents; |b_j| <= B enforced if given
	int field_degree = 1;
	std::optional<std::vector<RealInterval>> a_values;
};

// The s- and D-dependent factor (7/5) 30^{s+3} s^{4.5} D^2 (1+log D).
RealInterval matveev_structural_constant(int s, int field_degree,
                                         mpfr_prec_t prec = kDefaultPrecision);

// Lower bound on log|Lambda| (the caller certifies Lambda != 0 separately).
RealInterval matveev_lower_bound(const LinearFormInstance& instance,
                                 mpfr_prec_t prec = kDefaultPrecision);

} // namespace cullenrec

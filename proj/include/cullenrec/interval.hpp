#pragma once

// Outward-rounded interval arithmetic over MPFR.
//
// RealInterval is a closed interval [lo, hi] whose endpoints are MPFR floats.
// Every operation rounds the lower endpoint toward -inf and the upper endpoint
// toward +inf, so the result always contains the exact mathematical image of
// its operands.  ComplexInterval is the rectangle re + i*im of two such
// intervals.  Precision is carried per value; binary operations compute at the
// larger of the two operand precisions.

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <vector>

#include "cullenrec/errors.hpp"

namespace cullenrec {

// Precision ladder used throughout: start at kDefaultPrecision bits and double
// on PrecisionExhausted up to kPrecisionCap.
inline constexpr mpfr_prec_t kDefaultPrecision = 256;
inline constexpr mpfr_prec_t kPrecisionCap = 8192;

class RealInterval {
public:
	explicit RealInterval(mpfr_prec_t prec = kDefaultPrecision);
	RealInterval(const RealInterval& other);
	RealInterval(RealInterval&& other) noexcept;
	RealInterval& operator=(const RealInterval& other);
	RealInterval& operator=(RealInterval&& other) noexcept;
	~RealInterval();

	// --- constructors for exact values -----------------------------------
	static RealInterval exact(long v, mpfr_prec_t prec = kDefaultPrecision);
	static RealInterval exact(const mpz_class& v, mpfr_prec_t prec = kDefaultPrecision);
	// Rational p/q, outward-rounded to the target precision.
	static RealInterval of_rational(const mpq_class& v, mpfr_prec_t prec = kDefaultPrecision);
	// Decimal string, outward-rounded ("1.4" becomes the tightest enclosure).
	static RealInterval of_string(const std::string& s, mpfr_prec_t prec = kDefaultPrecision);
	static RealInterval of_double(double v, mpfr_prec_t prec = kDefaultPrecision);
	// Interval from two exact rational endpoints.
	static RealInterval of_endpoints(const mpq_class& lo, const mpq_class& hi,
	                                 mpfr_prec_t prec = kDefaultPrecision);

	mpfr_prec_t precision() const { return prec_; }
	const __mpfr_struct* lo() const { return lo_; }
	const __mpfr_struct* hi() const { return hi_; }
	double lo_double() const; // rounded down
	double hi_double() const; // rounded up
	// Exact dyadic endpoint values (endpoints are binary floats, hence rational).
	mpq_class lo_rational() const;
	mpq_class hi_rational() const;

	// --- predicates -------------------------------------------------------
	bool contains_zero() const;
	bool contains(const mpq_class& v) const;
	bool contains(const RealInterval& other) const; // other subset of this
	bool is_positive() const;                       // lo > 0
	bool is_negative() const;                       // hi < 0
	bool is_nonnegative() const;                    // lo >= 0
	// hi < other.lo: every point of *this is below every point of other.
	bool strictly_below(const RealInterval& other) const;
	bool overlaps(const RealInterval& other) const;
	// Upper bound on the width hi - lo, as a double (+inf if it overflows).
	double width_upper() const;

	// floor(x) when it is the same for the whole interval; ok=false otherwise.
	mpz_class floor_unambiguous(bool& ok) const;
	// Nearest integer to the midpoint (always defined).
	mpz_class round_mid() const;

	// --- arithmetic (outward rounded) -------------------------------------
	friend RealInterval operator+(const RealInterval& a, const RealInterval& b);
	friend RealInterval operator-(const RealInterval& a, const RealInterval& b);
	friend RealInterval operator*(const RealInterval& a, const RealInterval& b);
	friend RealInterval operator/(const RealInterval& a, const RealInterval& b);
	RealInterval operator-() const;
	RealInterval& operator+=(const RealInterval& b);
	RealInterval& operator-=(const RealInterval& b);
	RealInterval& operator*=(const RealInterval& b);
	RealInterval& operator/=(const RealInterval& b);

	RealInterval abs() const;
	RealInterval sqrt() const; // requires lo >= 0
	RealInterval log() const;  // requires lo > 0
	RealInterval exp() const;
	RealInterval pow_ui(unsigned long e) const;
	// max(this, other) and min(this, other), endpointwise.
	RealInterval max_with(const RealInterval& other) const;
	RealInterval min_with(const RealInterval& other) const;
	// Convex hull.
	RealInterval hull(const RealInterval& other) const;
	// Same value, re-rounded at a (typically smaller) precision.
	RealInterval rounded_to(mpfr_prec_t prec) const;

	// Decimal rendering "[lo, hi]" with the given significant digits, rounded
	// outward so the printed interval still contains the true one.
	std::string to_string(int digits = 20) const;
	// Single-endpoint decimal strings (outward).
	std::string lo_string(int digits = 20) const;
	std::string hi_string(int digits = 20) const;

private:
	mpfr_t lo_;
	mpfr_t hi_;
	mpfr_prec_t prec_;

	friend class ComplexInterval;
	static mpfr_prec_t join_prec(const RealInterval& a, const RealInterval& b);
};

RealInterval operator+(const RealInterval& a, const RealInterval& b);
RealInterval operator-(const RealInterval& a, const RealInterval& b);
RealInterval operator*(const RealInterval& a, const RealInterval& b);
RealInterval operator/(const RealInterval& a, const RealInterval& b);

// Rectangle re + i*im.
class ComplexInterval {
public:
	RealInterval re;
	RealInterval im;

	explicit ComplexInterval(mpfr_prec_t prec = kDefaultPrecision)
	    : re(prec), im(prec) {}
	ComplexInterval(RealInterval r, RealInterval i)
	    : re(std::move(r)), im(std::move(i)) {}
	static ComplexInterval exact_real(const mpz_class& v,
	                                  mpfr_prec_t prec = kDefaultPrecision) {
		return ComplexInterval(RealInterval::exact(v, prec), RealInterval::exact(0, prec));
	}

	bool is_exact_real() const; // im == [0, 0]
	bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }

	friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b);
	friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b);
	friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b);
	friend ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b);
	ComplexInterval operator-() const;
	ComplexInterval conj() const;

	// Enclosure of |z| = sqrt(re^2 + im^2).
	RealInterval abs() const;
	// Enclosure of |z|^2 (cheaper, used for pivot selection and comparisons).
	RealInterval abs_sq() const;
	ComplexInterval pow_ui(unsigned long e) const;

	// Rectangles are disjoint when they separate in either coordinate.
	bool disjoint_from(const ComplexInterval& other) const;

	std::string to_string(int digits = 20) const;
};

// Run fn(prec) with prec doubling from `start` to `cap`; rethrows the last
// PrecisionExhausted if even the cap fails.
template <typename Fn>
auto with_precision_ladder(Fn&& fn, mpfr_prec_t start = kDefaultPrecision,
                           mpfr_prec_t cap = kPrecisionCap) {
	for (mpfr_prec_t p = start;; p *= 2) {
		if (p > cap) p = cap;
		try {
			return fn(p);
		} catch (const PrecisionExhausted&) {
			if (p >= cap) throw;
		}
	}
}

} // namespace cullenrec

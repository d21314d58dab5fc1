#pragma once

// Exact polynomial arithmetic: IntPoly over Z (GMP integers) and RatPoly over
// Q, plus the handful of algorithms the library needs — evaluation (exact and
// interval), derivative, Euclidean gcd over Q, Yun's squarefree factorization,
// and small-prime irreducibility tests.  Coefficients are stored low-to-high.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "cullenrec/interval.hpp"

namespace cullenrec {

struct IntPoly {
	std::vector<mpz_class> c; // c[0] + c[1] x + ... ; empty == zero polynomial

	IntPoly() = default;
	explicit IntPoly(std::vector<mpz_class> coeffs) : c(std::move(coeffs)) { trim(); }
	static IntPoly from_longs(const std::vector<long>& coeffs);

	void trim(); // drop leading zeros
	bool is_zero() const { return c.empty(); }
	int degree() const { return static_cast<int>(c.size()) - 1; } // -1 for zero
	const mpz_class& leading() const { return c.back(); }
	bool is_monic() const { return !c.empty() && c.back() == 1; }

	mpz_class eval(const mpz_class& x) const;
	mpq_class eval(const mpq_class& x) const;
	RealInterval eval(const RealInterval& x) const;
	ComplexInterval eval(const ComplexInterval& x) const;

	IntPoly derivative() const;
	// x^deg * p(1/x): coefficient reversal, padded to the given degree.
	IntPoly reversed(int deg) const;
	mpz_class content() const;         // gcd of coefficients (0 for zero poly)
	IntPoly primitive_part() const;    // content removed, leading coeff > 0
	// Cauchy bound: all complex roots have |z| <= 1 + max|c_i|/|c_n|.
	mpq_class root_bound() const;

	bool operator==(const IntPoly& o) const { return c == o.c; }
	std::string to_string(const std::string& var = "x") const;
};

IntPoly operator+(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const mpz_class& k, const IntPoly& a);

// Quotient of an exact division; nullopt when b does not divide a over Z.
std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b);

struct RatPoly {
	std::vector<mpq_class> c;

	RatPoly() = default;
	explicit RatPoly(std::vector<mpq_class> coeffs) : c(std::move(coeffs)) { trim(); }
	static RatPoly of(const IntPoly& p);

	void trim();
	bool is_zero() const { return c.empty(); }
	int degree() const { return static_cast<int>(c.size()) - 1; }
	RatPoly monic() const;
	RatPoly derivative() const;
	mpq_class eval(const mpq_class& x) const;
	// Clear denominators, divide by content: primitive integer polynomial with
	// positive leading coefficient (same roots).
	IntPoly primitive_integer() const;
};

RatPoly operator+(const RatPoly& a, const RatPoly& b);
RatPoly operator-(const RatPoly& a, const RatPoly& b);
RatPoly operator*(const RatPoly& a, const RatPoly& b);
// Euclidean division a = q*b + r, deg r < deg b.
void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r);
// Monic gcd over Q.
RatPoly gcd(const RatPoly& a, const RatPoly& b);

// Yun's algorithm: p = prod_i out[i]^(i+1) up to a rational constant, with
// each out[i] primitive over Z (out[i] may be the constant-1 polynomial).
std::vector<IntPoly> squarefree_decomposition(const IntPoly& p);

// Exact irreducibility over Q for a primitive polynomial.
//   degree <= 3: rational root test;
//   degree == 4: rational roots + bounded search for quadratic factors;
//   degree >= 5: factorization mod p for a few small primes -- returns
//                true on a certified irreducible reduction, nullopt when
//                every tried prime was inconclusive.
std::optional<bool> irreducible_over_q(const IntPoly& p);

// All rational roots of p (exact).
std::vector<mpq_class> rational_roots(const IntPoly& p);

} // namespace cullenrec

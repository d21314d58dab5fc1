#include "cullenrec/binet.hpp"

#include <algorithm>

#include "cullenrec/errors.hpp"

namespace cullenrec {

namespace {

void sort_by_modulus(std::vector<RootEnclosure>& roots) {
	std::sort(roots.begin(), roots.end(), [](const RootEnclosure& a, const RootEnclosure& b) {
		mpq_class ma = a.modulus.hi_rational(), mb = b.modulus.hi_rational();
		if (ma != mb) return ma > mb;
		mpq_class ra = a.enclosure.re.lo_rational(), rb = b.enclosure.re.lo_rational();
		if (ra != rb) return ra > rb;
		return a.enclosure.im.lo_rational() > b.enclosure.im.lo_rational();
	});
}

// Gaussian elimination with interval coefficients; a pivot whose interval
// contains zero makes the division throw PrecisionExhausted, which the
// caller's ladder absorbs.
std::vector<ComplexInterval> solve_linear(std::vector<std::vector<ComplexInterval>> a,
                                          std::vector<ComplexInterval> b) {
	const size_t n = b.size();
	for (size_t col = 0; col < n; ++col) {
		size_t pivot = col;
		mpq_class best = a[col][col].abs_sq().lo_rational();
		for (size_t row = col + 1; row < n; ++row) {
			mpq_class cand = a[row][col].abs_sq().lo_rational();
			if (cand > best) { best = cand; pivot = row; }
		}
		std::swap(a[col], a[pivot]);
		std::swap(b[col], b[pivot]);
		for (size_t row = col + 1; row < n; ++row) {
			ComplexInterval m = a[row][col] / a[col][col];
			for (size_t k = col; k < n; ++k)
				a[row][k] = a[row][k] - m * a[col][k];
			b[row] = b[row] - m * b[col];
		}
	}
	std::vector<ComplexInterval> x(n);
	for (size_t row = n; row-- > 0;) {
		ComplexInterval acc = b[row];
		for (size_t k = row + 1; k < n; ++k)
			acc = acc - a[row][k] * x[k];
		x[row] = acc / a[row][row];
	}
	return x;
}

bool boxes_overlap(const ComplexInterval& a, const ComplexInterval& b) {
	return a.re.overlaps(b.re) && a.im.overlaps(b.im);
}

// g = gcd(charpoly, x^{r-1} N(1/x)) and its cofactor q = charpoly / g.  A
// simple characteristic root is a zero of exactly one of g, q, and it carries
// a vanishing Binet coefficient iff that one is g.
struct VanishingTest {
	bool nothing_vanishes = false;
	IntPoly g, q;
};

VanishingTest build_vanishing_test(const RecurrenceSpec& spec) {
	VanishingTest t;
	const IntPoly cp = spec.char_poly();
	const IntPoly m = spec.numerator_poly().reversed(spec.order - 1);
	RatPoly g = gcd(RatPoly::of(cp), RatPoly::of(m));
	if (g.degree() < 1) {
		t.nothing_vanishes = true;
		return t;
	}
	RatPoly q, r;
	divmod(RatPoly::of(cp), g, q, r);
	if (!r.is_zero()) throw Error("internal: gcd does not divide the characteristic polynomial");
	t.g = g.primitive_integer();
	t.q = q.primitive_integer();
	return t;
}

// true/false when decided, nullopt when the enclosure is too coarse.
std::optional<bool> vanishes_at(const VanishingTest& t, const ComplexInterval& box) {
	if (t.nothing_vanishes) return false;
	if (!t.g.eval(box).contains_zero()) return false;
	if (!t.q.eval(box).contains_zero()) return true;
	return std::nullopt;
}

} // namespace

BinetDecomposition binet_coefficients(const RecurrenceSpec& spec,
                                      const std::vector<RootEnclosure>& roots_in) {
	spec.validate();
	BinetDecomposition d;
	d.roots = roots_in;
	sort_by_modulus(d.roots);
	int total = 0;
	for (const auto& e : d.roots) {
		if (e.multiplicity > 1)
			throw RepeatedRoots("Binet coefficients require simple characteristic roots");
		total += e.multiplicity;
	}
	if (total != spec.order)
		throw InvalidSpec("root multiplicities do not match the recurrence order");

	const size_t r = static_cast<size_t>(spec.order);
	const mpfr_prec_t prec = d.roots[0].enclosure.re.precision();
	const IntPoly numer = spec.numerator_poly();
	const IntPoly denom_dz = spec.char_poly().reversed(spec.order).derivative();
	const ComplexInterval one = ComplexInterval::exact_real(1, prec);

	for (size_t i = 0; i < r; ++i) {
		const ComplexInterval& alpha = d.roots[i].enclosure;
		ComplexInterval inv = one / alpha;
		ComplexInterval f = -(alpha * numer.eval(inv) / denom_dz.eval(inv));
		d.coefficients.push_back(std::move(f));
	}

	// Residual self-check: the interval Gaussian solve of the Vandermonde
	// system encloses the same coefficients, so the two must overlap.
	{
		std::vector<std::vector<ComplexInterval>> a(r);
		std::vector<ComplexInterval> b;
		const auto terms = spec.eval_terms(0, spec.order - 1);
		for (size_t n = 0; n < r; ++n) {
			for (size_t i = 0; i < r; ++i)
				a[n].push_back(d.roots[i].enclosure.pow_ui(static_cast<unsigned long>(n)));
			b.push_back(ComplexInterval::exact_real(terms[n], prec));
		}
		auto solved = solve_linear(std::move(a), std::move(b));
		for (size_t i = 0; i < r; ++i)
			if (!boxes_overlap(solved[i], d.coefficients[i]))
				throw Error("internal: Binet coefficient cross-check failed");
	}

	const VanishingTest vt = build_vanishing_test(spec);
	d.coefficient_exactly_zero.assign(r, false);
	for (size_t i = 0; i < r; ++i) {
		auto z = vanishes_at(vt, d.roots[i].enclosure);
		if (!z.has_value())
			throw PrecisionExhausted("cannot decide whether a Binet coefficient vanishes");
		d.coefficient_exactly_zero[i] = *z;
		if (*z) d.coefficients[i] = ComplexInterval::exact_real(0, prec);
	}

	DominanceReport rep = classify_dominance(d.roots);
	d.dominant_index = rep.has_dominant ? 0 : -1;
	d.dominance_gap = rep.delta;
	d.degenerate = rep.has_dominant && d.coefficient_exactly_zero[0];
	return d;
}

BinetDecomposition binet_decompose(const RecurrenceSpec& spec, mpfr_prec_t precision) {
	const IntPoly cp = spec.char_poly();
	return with_precision_ladder(
	    [&](mpfr_prec_t p) {
		    return binet_coefficients(spec, isolate_roots(cp, p));
	    },
	    precision);
}

DominanceReport classify_dominance(const std::vector<RootEnclosure>& roots) {
	DominanceReport rep;
	if (roots.empty()) return rep;
	const RootEnclosure& top = roots[0];
	const mpfr_prec_t prec = top.modulus.precision();
	rep.delta = RealInterval::exact(0L, prec);
	rep.delta_raw = rep.delta;

	bool dom = top.multiplicity == 1;
	for (size_t j = 1; dom && j < roots.size(); ++j)
		dom = roots[j].modulus.strictly_below(top.modulus);
	rep.has_dominant = dom;
	if (!dom) return rep;

	rep.dominant_real_gt1 = top.is_real && top.enclosure.re.lo_rational() > 1;
	if (top.modulus.lo_rational() <= 1) return rep; // log alpha_1 not positive

	const mpq_class clamp_q(1023, 1024); // keep delta inside the open unit interval
	const RealInterval clamp = RealInterval::of_rational(clamp_q, prec);
	if (roots.size() == 1) {
		rep.delta_raw = RealInterval::exact(1L, prec);
		rep.delta = clamp;
		return rep;
	}
	const RealInterval& m2 = roots[1].modulus;
	if (m2.lo_rational() > 0) {
		rep.delta_raw = RealInterval::exact(1L, prec) - m2.log() / top.modulus.log();
		rep.delta = rep.delta_raw.min_with(clamp);
	} else if (m2.hi_rational() < 1) {
		// |alpha_2| < 1 certified, so delta_raw > 1 and only the clamp matters.
		rep.delta_raw = RealInterval::exact(1L, prec);
		rep.delta = clamp;
	}
	return rep;
}

RealInterval growth_constant(const BinetDecomposition& decomp, const RecurrenceSpec& spec) {
	if (decomp.dominant_index != 0)
		throw DegenerateDominantCoefficient("growth constant requires a dominant root");
	const mpfr_prec_t prec = decomp.roots[0].modulus.precision();
	RealInterval c1 = RealInterval::exact(0L, prec);
	for (const auto& f : decomp.coefficients) c1 += f.abs();

	// Guarantee check against exact terms: |U_n| <= c1 * alpha_1^n.
	const mpq_class c1_hi = c1.hi_rational();
	const mpq_class a1_hi = decomp.roots[0].modulus.hi_rational();
	const auto terms = spec.eval_terms(0, 200);
	mpq_class pw(1);
	for (size_t n = 0; n < terms.size(); ++n) {
		if (abs(mpq_class(terms[n])) > c1_hi * pw)
			throw Error("internal: growth constant fails on exact terms");
		pw *= a1_hi;
	}
	return c1;
}

HypothesisReport check_hypotheses(const RecurrenceSpec& spec) {
	spec.validate();
	HypothesisReport rep;
	rep.order_ge_2 = spec.order >= 2;
	const IntPoly cp = spec.char_poly();
	rep.irreducible = irreducible_over_q(cp);

	return with_precision_ladder([&](mpfr_prec_t p) {
		HypothesisReport out = rep;
		auto roots = isolate_roots(cp, p);
		DominanceReport dom = classify_dominance(roots);
		out.dominant_real_gt1 = dom.dominant_real_gt1;
		out.f1_nonzero = false;
		if (dom.has_dominant && roots[0].multiplicity == 1) {
			auto z = vanishes_at(build_vanishing_test(spec), roots[0].enclosure);
			if (!z.has_value())
				throw PrecisionExhausted("cannot decide dominant-coefficient vanishing");
			out.f1_nonzero = !*z;
		}
		return out;
	});
}

} // namespace cullenrec

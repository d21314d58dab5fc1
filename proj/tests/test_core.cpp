#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "cullenrec/binet.hpp"
#include "cullenrec/errors.hpp"
#include "cullenrec/heights.hpp"
#include "cullenrec/interval.hpp"
#include "cullenrec/polynomial.hpp"
#include "cullenrec/recurrence.hpp"
#include "cullenrec/roots.hpp"

using namespace cullenrec;

namespace {

// The enclosure lies strictly inside (lo, hi).
void check_window(const RealInterval& v, double lo, double hi) {
	CHECK(v.lo_double() > lo);
	CHECK(v.hi_double() < hi);
}

} // namespace

TEST_CASE("fibonacci terms") {
	RecurrenceSpec fib = fibonacci_spec();
	std::vector<mpz_class> t = fib.eval_terms(0, 12);
	long expect[] = {0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144};
	REQUIRE(t.size() == 13);
	for (int i = 0; i <= 12; ++i) CHECK(t[static_cast<size_t>(i)] == expect[i]);
	CHECK(fib.term(100) == mpz_class("354224848179261915075"));
	CHECK(fib.term(0) == 0);
}

TEST_CASE("ternary example has period six") {
	RecurrenceSpec g = counterexample_spec();
	std::vector<mpz_class> t = g.eval_terms(0, 29);
	long pattern[] = {0, 1, 1, 0, -1, -1};
	for (int n = 0; n <= 29; ++n) CHECK(t[static_cast<size_t>(n)] == pattern[n % 6]);
}

TEST_CASE("recurrence validation") {
	RecurrenceSpec bad_order{0, {}, {}};
	CHECK_THROWS_AS(bad_order.validate(), InvalidSpec);
	RecurrenceSpec zero_tail{2, {1, 0}, {0, 1}};
	CHECK_THROWS_AS(zero_tail.validate(), InvalidSpec);
	RecurrenceSpec zero_initials{2, {1, 1}, {0, 0}};
	CHECK_THROWS_AS(zero_initials.validate(), InvalidSpec);
	RecurrenceSpec short_coeffs{2, {1}, {0, 1}};
	CHECK_THROWS_AS(short_coeffs.validate(), InvalidSpec);
	CHECK_NOTHROW(fibonacci_spec().validate());
	CHECK_NOTHROW(counterexample_spec().validate());
}

TEST_CASE("characteristic and numerator polynomials") {
	CHECK(fibonacci_spec().char_poly() == IntPoly::from_longs({-1, -1, 1}));
	CHECK(fibonacci_spec().numerator_poly() == IntPoly::from_longs({0, 1}));
	IntPoly cp = counterexample_spec().char_poly();
	CHECK(cp == IntPoly::from_longs({-2, 3, -3, 1}));
	CHECK(counterexample_spec().numerator_poly() == IntPoly::from_longs({0, 1, -2}));

	// x^3 - 3x^2 + 3x - 2 = (x - 2)(x^2 - x + 1)
	std::optional<IntPoly> q = divide_exact(cp, IntPoly::from_longs({-2, 1}));
	REQUIRE(q.has_value());
	CHECK(*q == IntPoly::from_longs({1, -1, 1}));
	CHECK(!divide_exact(cp, IntPoly::from_longs({1, 1})).has_value());
}

TEST_CASE("polynomial algebra") {
	IntPoly p = IntPoly::from_longs({5, -1, 0, 2}); // 2x^3 - x + 5
	CHECK(p.degree() == 3);
	CHECK(p.eval(mpz_class(3)) == 56);
	CHECK(p.derivative() == IntPoly::from_longs({-1, 0, 6}));
	CHECK(IntPoly::from_longs({-1, -1, 1}).reversed(2) == IntPoly::from_longs({1, -1, -1}));
	CHECK(IntPoly::from_longs({6, -4, 2}).content() == 2);
	CHECK(IntPoly::from_longs({6, -4, 2}).primitive_part() == IntPoly::from_longs({3, -2, 1}));
	CHECK(IntPoly().is_zero());
	CHECK(IntPoly::from_longs({0, 0}).is_zero()); // trims to zero
	CHECK(fibonacci_spec().char_poly().is_monic());

	// (x - 1)^2 (x + 2) = x^3 - 3x + 2
	std::vector<IntPoly> sq = squarefree_decomposition(IntPoly::from_longs({2, -3, 0, 1}));
	REQUIRE(sq.size() == 2);
	CHECK(sq[0] == IntPoly::from_longs({2, 1}));
	CHECK(sq[1] == IntPoly::from_longs({-1, 1}));

	CHECK(irreducible_over_q(IntPoly::from_longs({-1, -1, 1})) == std::optional<bool>(true));
	CHECK(irreducible_over_q(counterexample_spec().char_poly()) == std::optional<bool>(false));
	CHECK(irreducible_over_q(IntPoly::from_longs({-5, 0, 1})) == std::optional<bool>(true));

	std::vector<mpq_class> rr = rational_roots(counterexample_spec().char_poly());
	REQUIRE(rr.size() == 1);
	CHECK(rr[0] == 2);
	rr = rational_roots(IntPoly::from_longs({-1, 2}));
	REQUIRE(rr.size() == 1);
	CHECK(rr[0] == mpq_class(1, 2));
}

TEST_CASE("interval arithmetic encloses exact images") {
	RealInterval third = RealInterval::of_rational(mpq_class(1, 3));
	CHECK(third.contains(mpq_class(1, 3)));
	CHECK(third.width_upper() < 1e-15);

	RealInterval s = RealInterval::exact(2).sqrt();
	check_window(s, 1.41421356, 1.41421357);
	CHECK((s * s).contains(mpq_class(2)));

	RealInterval l = RealInterval::exact(2).log();
	check_window(l, 0.693147180, 0.693147181);
	CHECK(l.exp().contains(mpq_class(2)));
	check_window(RealInterval::exact(1).exp(), 2.718281828, 2.718281829);

	CHECK(RealInterval::of_string("0.1").contains(mpq_class(1, 10)));
	check_window(RealInterval::exact(3).pow_ui(4), 80.999999, 81.000001);

	RealInterval sym = RealInterval::of_endpoints(mpq_class(-1), mpq_class(1)) * RealInterval::exact(5);
	CHECK(sym.contains(mpq_class(-5)));
	CHECK(sym.contains(mpq_class(5)));
	CHECK(sym.contains_zero());

	RealInterval a = RealInterval::of_endpoints(mpq_class(-3), mpq_class(-2)).abs();
	CHECK(a.is_positive());
	CHECK(a.contains(mpq_class(5, 2)));
}

TEST_CASE("interval predicates and rounding") {
	bool ok = false;
	CHECK(RealInterval::of_endpoints(mpq_class(5, 2), mpq_class(13, 5)).floor_unambiguous(ok) == 2);
	CHECK(ok);
	RealInterval straddle = RealInterval::of_endpoints(mpq_class(29, 10), mpq_class(31, 10));
	straddle.floor_unambiguous(ok);
	CHECK(!ok);
	CHECK(RealInterval::of_endpoints(mpq_class(9, 10), mpq_class(11, 10)).round_mid() == 1);

	RealInterval lo = RealInterval::of_endpoints(mpq_class(1), mpq_class(2));
	RealInterval hi = RealInterval::of_endpoints(mpq_class(3), mpq_class(4));
	CHECK(lo.strictly_below(hi));
	CHECK(!lo.overlaps(hi));
	CHECK(lo.hull(hi).contains(mpq_class(5, 2)));
	CHECK(lo.max_with(hi).contains(mpq_class(7, 2)));
	CHECK(lo.min_with(hi).contains(mpq_class(3, 2)));
}

TEST_CASE("complex modulus with zero-straddling parts") {
	RealInterval narrow = RealInterval::of_endpoints(mpq_class(-1, 1000), mpq_class(1, 1000));
	ComplexInterval z(narrow, RealInterval::exact(3));
	RealInterval m = z.abs();
	CHECK(m.lo_double() > 2.999);
	CHECK(m.hi_double() < 3.001);
	CHECK(m.is_nonnegative());

	ComplexInterval origin(narrow, narrow);
	CHECK(origin.abs().is_nonnegative());
	CHECK(origin.contains_zero());

	ComplexInterval w(RealInterval::exact(1), RealInterval::exact(2));
	CHECK((w * w.conj()).im.contains_zero());
	CHECK((w * w.conj()).re.contains(mpq_class(5)));
}

TEST_CASE("precision ladder retries and gives up") {
	int calls = 0;
	RealInterval out = with_precision_ladder([&](mpfr_prec_t p) {
		++calls;
		if (p < 512) throw PrecisionExhausted("too narrow");
		return RealInterval::exact(1, p);
	}, 64);
	CHECK(calls == 4); // 64, 128, 256, 512
	CHECK(out.contains(mpq_class(1)));
	CHECK_THROWS_AS(with_precision_ladder([](mpfr_prec_t) -> RealInterval {
		throw PrecisionExhausted("always");
	}, 64), PrecisionExhausted);
}

TEST_CASE("widths shrink as precision doubles") {
	auto width_at = [](mpfr_prec_t p) {
		return RealInterval::exact(2, p).sqrt().log().exp().width_upper();
	};
	double w64 = width_at(64), w128 = width_at(128), w256 = width_at(256);
	CHECK(w64 > 0);
	CHECK(w128 <= w64);
	CHECK(w256 <= w128);
	CHECK(w256 < 1e-60);
}

TEST_CASE("root isolation on the fibonacci polynomial") {
	std::vector<RootEnclosure> roots = isolate_roots(fibonacci_spec().char_poly());
	REQUIRE(roots.size() == 2);
	CHECK(roots[0].is_real);
	CHECK(roots[0].multiplicity == 1);
	check_window(roots[0].modulus, 1.61803398, 1.61803399);
	check_window(roots[1].modulus, 0.61803398, 0.61803399);
	CHECK(roots[0].modulus_above(roots[1]));
}

TEST_CASE("root isolation on the ternary example") {
	std::vector<RootEnclosure> roots = isolate_roots(counterexample_spec().char_poly());
	REQUIRE(roots.size() == 3);
	CHECK(roots[0].is_real);
	CHECK(roots[0].enclosure.re.contains(mpq_class(2)));
	CHECK(roots[0].enclosure.im.contains_zero());
	// the complex pair sits exactly on the unit circle
	CHECK(roots[1].modulus.contains(mpq_class(1)));
	CHECK(roots[2].modulus.contains(mpq_class(1)));
	CHECK(!roots[1].is_real);
	CHECK(!roots[2].is_real);
}

TEST_CASE("root isolation with multiplicities") {
	// (x - 1)^3
	std::vector<RootEnclosure> roots = isolate_roots(IntPoly::from_longs({-1, 3, -3, 1}));
	int total = 0;
	for (const auto& r : roots) {
		total += r.multiplicity;
		CHECK(r.enclosure.re.contains(mpq_class(1)));
		CHECK(r.enclosure.im.contains_zero());
	}
	CHECK(total == 3);
	CHECK_THROWS_AS(isolate_roots(IntPoly::from_longs({7})), InvalidSpec);
}

TEST_CASE("binet decomposition of fibonacci") {
	BinetDecomposition d = binet_decompose(fibonacci_spec());
	REQUIRE(d.coefficients.size() == 2);
	CHECK(!d.degenerate);
	CHECK(d.dominant_index == 0);
	check_window(d.coefficients[0].re, 0.44721359, 0.44721360); // 1/sqrt(5)
	CHECK(d.coefficients[0].im.contains_zero());
	CHECK(!d.coefficient_exactly_zero[0]);
	CHECK(!d.coefficient_exactly_zero[1]);
	CHECK(d.dominance_gap.is_positive());

	check_window(growth_constant(d, fibonacci_spec()), 0.89442719, 0.89442720); // 2/sqrt(5)

	DominanceReport dom = classify_dominance(d);
	CHECK(dom.has_dominant);
	CHECK(dom.dominant_real_gt1);
	check_window(dom.delta_raw, 1.999, 2.001);
	CHECK(dom.delta.hi_double() <= 1023.0 / 1024.0 + 1e-12); // clamp
	CHECK(dom.delta.lo_double() > 0.99);
}

TEST_CASE("binet decomposition of the ternary example is degenerate") {
	BinetDecomposition d = binet_decompose(counterexample_spec());
	CHECK(d.degenerate);
	REQUIRE(d.dominant_index == 0);
	CHECK(d.coefficient_exactly_zero[0]);
	CHECK(d.coefficients[0].contains_zero());
}

TEST_CASE("binet reconstruction contains the exact terms") {
	RecurrenceSpec fib = fibonacci_spec();
	BinetDecomposition d = binet_decompose(fib);
	std::vector<mpz_class> terms = fib.eval_terms(0, 500);
	std::vector<ComplexInterval> pw(d.roots.size(), ComplexInterval::exact_real(mpz_class(1)));
	for (int n = 0; n <= 500; ++n) {
		ComplexInterval sum = d.coefficients[0] * pw[0];
		for (size_t i = 1; i < pw.size(); ++i) sum = sum + d.coefficients[i] * pw[i];
		CHECK(sum.re.contains(mpq_class(terms[static_cast<size_t>(n)])));
		CHECK(sum.im.contains_zero());
		for (size_t i = 0; i < pw.size(); ++i) pw[i] = pw[i] * d.roots[i].enclosure;
	}
}

TEST_CASE("standing hypotheses") {
	HypothesisReport fib = check_hypotheses(fibonacci_spec());
	CHECK(fib.order_ge_2);
	CHECK(fib.irreducible == std::optional<bool>(true));
	CHECK(fib.dominant_real_gt1);
	CHECK(fib.f1_nonzero);
	CHECK(fib.all_hold());

	HypothesisReport bad = check_hypotheses(counterexample_spec());
	CHECK(bad.order_ge_2);
	CHECK(bad.irreducible == std::optional<bool>(false));
	CHECK(bad.dominant_real_gt1);
	CHECK(!bad.f1_nonzero);
	CHECK(!bad.all_hold());

	RecurrenceSpec unary{1, {2}, {1}};
	HypothesisReport small = check_hypotheses(unary);
	CHECK(!small.order_ge_2);
	CHECK(!small.all_hold());
}

TEST_CASE("logarithmic heights") {
	check_window(log_height(mpq_class(3, 7)), 1.94591014, 1.94591015); // log 7
	check_window(log_height(mpq_class(22, 7)), 3.09104245, 3.09104246); // log 22
	check_window(log_height(mpq_class(5)), 1.60943791, 1.60943792);
	RealInterval one = log_height(mpq_class(1));
	CHECK(one.contains_zero());
	CHECK(one.width_upper() < 1e-15);
	CHECK(log_height(mpq_class(-2, 9)).lo_double() > 2.19); // log 9

	AlgebraicNumberRef phi = AlgebraicNumberRef::largest_real_root(IntPoly::from_longs({-1, -1, 1}));
	CHECK(phi.degree() == 2);
	CHECK(phi.selected_is_real());
	check_window(phi.value().re, 1.6180, 1.6181);
	check_window(log_height(phi), 0.24060591, 0.24060592); // (log phi)/2

	AlgebraicNumberRef rt5 = AlgebraicNumberRef::largest_real_root(IntPoly::from_longs({-5, 0, 1}));
	check_window(log_height(rt5), 0.80471895, 0.80471896); // (log 5)/2
}

TEST_CASE("height expressions") {
	AlgebraicNumberRef phi = AlgebraicNumberRef::largest_real_root(IntPoly::from_longs({-1, -1, 1}));
	AlgebraicNumberRef rt5 = AlgebraicNumberRef::largest_real_root(IntPoly::from_longs({-5, 0, 1}));
	RealInterval h_phi = HeightExpr::ref(phi).height();
	RealInterval h_rt5 = HeightExpr::ref(rt5).height();

	// h(x^n) = |n| h(x)
	RealInterval h3 = HeightExpr::pow(HeightExpr::ref(phi), 3).height();
	CHECK(h3.overlaps(h_phi * RealInterval::exact(3)));
	RealInterval hm2 = HeightExpr::pow(HeightExpr::ref(phi), -2).height();
	CHECK(hm2.overlaps(h_phi * RealInterval::exact(2)));

	// subadditivity
	RealInterval hm = HeightExpr::mul(HeightExpr::ref(phi), HeightExpr::ref(rt5)).height();
	CHECK(hm.hi_double() <= h_phi.hi_double() + h_rt5.hi_double() + 1e-12);
	RealInterval hd = HeightExpr::div(HeightExpr::ref(rt5), HeightExpr::ref(phi)).height();
	CHECK(hd.hi_double() <= h_phi.hi_double() + h_rt5.hi_double() + 1e-12);
	RealInterval ha = HeightExpr::add(HeightExpr::ref(phi), HeightExpr::integer(1)).height();
	CHECK(ha.hi_double() <= h_phi.hi_double() + 0.693147181 + 1e-12);

	// exact rational fast path
	HeightExpr prod = HeightExpr::mul(HeightExpr::rational(mpq_class(2, 3)),
	                                  HeightExpr::rational(mpq_class(3, 2)));
	CHECK(prod.is_rational());
	CHECK(prod.rational_value() == 1);
	CHECK(prod.height().contains_zero());
	CHECK(prod.height().width_upper() < 1e-15);

	HeightExpr div0 = HeightExpr::div(HeightExpr::integer(1), HeightExpr::rational(mpq_class(0)));
	CHECK_THROWS_AS(div0.rational_value(), DivisionByZeroSymbol);

	// value() evaluates the expression
	ComplexInterval v = HeightExpr::add(HeightExpr::ref(phi), HeightExpr::integer(1)).value();
	check_window(v.re, 2.6180, 2.6181); // phi + 1 = phi^2
	CHECK(v.im.contains_zero());
}

TEST_CASE("matveev A-values") {
	AlgebraicNumberRef phi = AlgebraicNumberRef::largest_real_root(IntPoly::from_longs({-1, -1, 1}));
	check_window(matveev_A(HeightExpr::ref(phi), 2), 0.48121182, 0.48121183); // log phi
	RealInterval floor = matveev_A(HeightExpr::rational(mpq_class(1)), 1);
	CHECK(floor.contains(mpq_class(4, 25)));
	CHECK(floor.hi_double() < 0.1600001);
	check_window(matveev_A(HeightExpr::integer(2), 1), 0.69314718, 0.69314719); // log 2
	CHECK_THROWS_AS(matveev_A(HeightExpr::integer(-2), 1), NonPositiveGamma);
}

TEST_CASE("matveev structural constant") {
	check_window(matveev_structural_constant(4, 2), 1.0616e14, 1.0618e14);
	CHECK(matveev_structural_constant(3, 2).hi_double() <
	      matveev_structural_constant(4, 2).lo_double());
	CHECK(matveev_structural_constant(2, 2).hi_double() <
	      matveev_structural_constant(3, 2).lo_double());
	CHECK(matveev_structural_constant(1, 1).is_positive());
	CHECK_THROWS_AS(matveev_structural_constant(0, 1), InvalidSpec);
	CHECK_THROWS_AS(matveev_structural_constant(1, 0), InvalidSpec);
}

TEST_CASE("matveev lower bound is monotone") {
	LinearFormInstance base;
	base.a_values = std::vector<RealInterval>{
		RealInterval::of_rational(mpq_class(3, 2)),
		RealInterval::of_rational(mpq_class(1, 2)),
		RealInterval::of_rational(mpq_class(17, 10)),
	};
	base.B = 1000;
	base.field_degree = 2;
	RealInterval lb = matveev_lower_bound(base);
	CHECK(lb.hi_double() < 0);

	LinearFormInstance bigger_b = base;
	bigger_b.B = 1000000;
	CHECK(matveev_lower_bound(bigger_b).hi_double() < lb.lo_double());

	LinearFormInstance bigger_a = base;
	(*bigger_a.a_values)[0] = RealInterval::of_rational(mpq_class(3));
	CHECK(matveev_lower_bound(bigger_a).hi_double() < lb.lo_double());

	AlgebraicNumberRef phi = AlgebraicNumberRef::largest_real_root(IntPoly::from_longs({-1, -1, 1}));
	LinearFormInstance sym;
	sym.gammas = {HeightExpr::ref(phi), HeightExpr::integer(2)};
	sym.B = 100;
	sym.field_degree = 2;
	sym.b = {100, -100};
	RealInterval lb2 = matveev_lower_bound(sym);
	CHECK(lb2.hi_double() < 0);
	sym.b = {200, 1};
	CHECK_THROWS_AS(matveev_lower_bound(sym), InvalidSpec);

	LinearFormInstance empty;
	CHECK_THROWS_AS(matveev_lower_bound(empty), MissingAValues);
	LinearFormInstance none;
	none.a_values = std::vector<RealInterval>{}; // empty counts as absent
	CHECK_THROWS_AS(matveev_lower_bound(none), MissingAValues);
	LinearFormInstance neg;
	neg.gammas = {HeightExpr::integer(-2)};
	CHECK_THROWS_AS(matveev_lower_bound(neg), NonPositiveGamma);
}

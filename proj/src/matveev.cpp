#include "cullenrec/heights.hpp"

#include "cullenrec/errors.hpp"

namespace cullenrec {

RealInterval matveev_A(const HeightExpr& gamma, int field_degree, mpfr_prec_t prec) {
	ComplexInterval v = gamma.value(prec);
	if (!v.is_exact_real())
		throw NonPositiveGamma("gamma must be certified real");
	if (v.re.lo_rational() <= 0)
		throw NonPositiveGamma("gamma must be certified positive");
	RealInterval dh = RealInterval::exact(static_cast<long>(field_degree), prec) *
	                  gamma.height(prec);
	RealInterval lg = v.re.log().abs();
	RealInterval floor_term = RealInterval::of_rational(mpq_class(4, 25), prec);
	return dh.max_with(lg).max_with(floor_term);
}

RealInterval matveev_structural_constant(int s, int field_degree, mpfr_prec_t prec) {
	if (s < 1 || field_degree < 1)
		throw InvalidSpec("Matveev bound needs s >= 1 and D >= 1");
	mpz_class pow30;
	mpz_ui_pow_ui(pow30.get_mpz_t(), 30, static_cast<unsigned long>(s) + 3);
	RealInterval sv = RealInterval::exact(static_cast<long>(s), prec);
	RealInterval s45 = sv.pow_ui(4) * sv.sqrt();
	RealInterval dv = RealInterval::exact(static_cast<long>(field_degree), prec);
	RealInterval d_part = dv.pow_ui(2) * (RealInterval::exact(1L, prec) + dv.log());
	return RealInterval::of_rational(mpq_class(7, 5), prec) *
	       RealInterval::exact(pow30, prec) * s45 * d_part;
}

RealInterval matveev_lower_bound(const LinearFormInstance& instance, mpfr_prec_t prec) {
	const size_t s = instance.a_values.has_value() ? instance.a_values->size()
	                                               : instance.gammas.size();
	if (s == 0)
		throw MissingAValues("provide either gammas or replay A-values");
	if (instance.B < 1) throw InvalidSpec("exponent bound B must be positive");
	if (instance.field_degree < 1) throw InvalidSpec("field degree must be positive");
	for (const auto& bj : instance.b)
		if (abs(bj) > instance.B)
			throw InvalidSpec("exponent exceeds the declared bound B");

	RealInterval prod = RealInterval::exact(1L, prec);
	if (instance.a_values.has_value()) {
		for (const auto& a : *instance.a_values) prod *= a;
	} else {
		for (const auto& g : instance.gammas)
			prod *= matveev_A(g, instance.field_degree, prec);
	}
	RealInterval logb = RealInterval::exact(1L, prec) +
	                    RealInterval::exact(instance.B, prec).log();
	return -(matveev_structural_constant(static_cast<int>(s), instance.field_degree, prec) *
	         logb * prod);
}

} // namespace cullenrec

#include "cullenrec/heights.hpp"

#include "cullenrec/errors.hpp"

namespace cullenrec {

AlgebraicNumberRef AlgebraicNumberRef::largest_real_root(const IntPoly& p,
                                                         mpfr_prec_t prec) {
	AlgebraicNumberRef ref;
	ref.minimal_polynomial = p.primitive_part();
	if (ref.minimal_polynomial.degree() < 1)
		throw InvalidSpec("algebraic number needs a nonconstant minimal polynomial");
	auto reducible = irreducible_over_q(ref.minimal_polynomial);
	if (reducible.has_value() && !*reducible)
		throw InvalidSpec("minimal polynomial is reducible");
	ref.conjugates = isolate_roots(ref.minimal_polynomial, prec);
	int best = -1;
	for (size_t i = 0; i < ref.conjugates.size(); ++i) {
		const auto& e = ref.conjugates[i];
		if (e.multiplicity != 1)
			throw InvalidSpec("minimal polynomial must be squarefree");
		if (!e.is_real) continue;
		if (best < 0 ||
		    e.enclosure.re.lo_rational() >
		        ref.conjugates[static_cast<size_t>(best)].enclosure.re.lo_rational())
			best = static_cast<int>(i);
	}
	if (best < 0) throw InvalidSpec("polynomial has no real root to select");
	ref.selected = best;
	return ref;
}

RealInterval log_height(const AlgebraicNumberRef& x, mpfr_prec_t prec) {
	const int d = x.degree();
	if (d < 1 || x.conjugates.size() != static_cast<size_t>(d))
		throw InvalidSpec("conjugate count must equal the degree");
	RealInterval acc = RealInterval::exact(abs(x.minimal_polynomial.leading()), prec).log();
	const RealInterval one = RealInterval::exact(1L, prec);
	for (const auto& conj : x.conjugates)
		acc += conj.modulus.max_with(one).log();
	return acc / RealInterval::exact(static_cast<long>(d), prec);
}

RealInterval log_height(const mpq_class& x, mpfr_prec_t prec) {
	mpq_class v(x);
	v.canonicalize();
	mpz_class m = abs(v.get_num());
	if (v.get_den() > m) m = v.get_den();
	if (m == 1) return RealInterval::exact(0L, prec);
	return RealInterval::exact(m, prec).log();
}

// --- HeightExpr ---------------------------------------------------------------

HeightExpr HeightExpr::wrap(std::shared_ptr<const Node> n) {
	HeightExpr e;
	e.n_ = std::move(n);
	return e;
}

HeightExpr HeightExpr::rational(const mpq_class& v) {
	auto n = std::make_shared<Node>();
	n->kind = Kind::Rational;
	n->rat = v;
	n->rat.canonicalize();
	return wrap(std::move(n));
}

HeightExpr HeightExpr::integer(long v) { return rational(mpq_class(v)); }

HeightExpr HeightExpr::ref(AlgebraicNumberRef r) {
	auto n = std::make_shared<Node>();
	n->kind = Kind::Ref;
	n->r = std::make_shared<const AlgebraicNumberRef>(std::move(r));
	return wrap(std::move(n));
}

HeightExpr HeightExpr::pow(const HeightExpr& base, long e) {
	auto n = std::make_shared<Node>();
	n->kind = Kind::Pow;
	n->a = base.n_;
	n->exp = e;
	return wrap(std::move(n));
}

HeightExpr HeightExpr::mul(const HeightExpr& a, const HeightExpr& b) {
	auto n = std::make_shared<Node>();
	n->kind = Kind::Mul;
	n->a = a.n_;
	n->b = b.n_;
	return wrap(std::move(n));
}

HeightExpr HeightExpr::div(const HeightExpr& a, const HeightExpr& b) {
	auto n = std::make_shared<Node>();
	n->kind = Kind::Div;
	n->a = a.n_;
	n->b = b.n_;
	return wrap(std::move(n));
}

HeightExpr HeightExpr::add(const HeightExpr& a, const HeightExpr& b) {
	auto n = std::make_shared<Node>();
	n->kind = Kind::Add;
	n->a = a.n_;
	n->b = b.n_;
	return wrap(std::move(n));
}

bool HeightExpr::node_rational(const Node& n) {
	switch (n.kind) {
	case Kind::Rational: return true;
	case Kind::Ref: return false;
	case Kind::Pow: return node_rational(*n.a);
	default: return node_rational(*n.a) && node_rational(*n.b);
	}
}

mpq_class HeightExpr::node_value(const Node& n) {
	switch (n.kind) {
	case Kind::Rational: return n.rat;
	case Kind::Ref: throw Error("internal: rational value of an algebraic node");
	case Kind::Pow: {
		mpq_class base = node_value(*n.a);
		if (n.exp == 0) return mpq_class(1);
		if (base == 0 && n.exp < 0)
			throw DivisionByZeroSymbol("zero raised to a negative power");
		unsigned long e = static_cast<unsigned long>(n.exp < 0 ? -n.exp : n.exp);
		mpz_class num, den;
		mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), e);
		mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), e);
		mpq_class v(num, den);
		v.canonicalize();
		if (n.exp < 0) v = 1 / v;
		return v;
	}
	case Kind::Mul: return node_value(*n.a) * node_value(*n.b);
	case Kind::Div: {
		mpq_class d = node_value(*n.b);
		if (d == 0) throw DivisionByZeroSymbol("division by an exact zero");
		return node_value(*n.a) / d;
	}
	case Kind::Add: return node_value(*n.a) + node_value(*n.b);
	}
	throw Error("internal: unknown expression node");
}

bool HeightExpr::is_rational() const { return node_rational(*n_); }

mpq_class HeightExpr::rational_value() const { return node_value(*n_); }

RealInterval HeightExpr::node_height(const Node& n, mpfr_prec_t prec) {
	if (node_rational(n)) return log_height(node_value(n), prec);
	switch (n.kind) {
	case Kind::Ref: return log_height(*n.r, prec);
	case Kind::Pow: {
		unsigned long e = static_cast<unsigned long>(n.exp < 0 ? -n.exp : n.exp);
		return RealInterval::exact(static_cast<long>(e), prec) * node_height(*n.a, prec);
	}
	case Kind::Mul:
	case Kind::Div: {
		if (n.kind == Kind::Div && node_rational(*n.b) && node_value(*n.b) == 0)
			throw DivisionByZeroSymbol("division by an exact zero");
		return node_height(*n.a, prec) + node_height(*n.b, prec);
	}
	case Kind::Add:
		return node_height(*n.a, prec) + node_height(*n.b, prec) +
		       RealInterval::exact(2L, prec).log();
	default:
		throw Error("internal: unknown expression node");
	}
}

RealInterval HeightExpr::height(mpfr_prec_t prec) const {
	return node_height(*n_, prec);
}

ComplexInterval HeightExpr::node_eval(const Node& n, mpfr_prec_t prec) {
	switch (n.kind) {
	case Kind::Rational:
		return ComplexInterval(RealInterval::of_rational(n.rat, prec),
		                       RealInterval::exact(0L, prec));
	case Kind::Ref: {
		ComplexInterval v = n.r->value();
		if (n.r->selected_is_real())
			return ComplexInterval(v.re, RealInterval::exact(0L, prec));
		return v;
	}
	case Kind::Pow: {
		ComplexInterval base = node_eval(*n.a, prec);
		unsigned long e = static_cast<unsigned long>(n.exp < 0 ? -n.exp : n.exp);
		ComplexInterval p = base.pow_ui(e);
		if (n.exp >= 0) return p;
		return ComplexInterval(RealInterval::exact(1L, prec),
		                       RealInterval::exact(0L, prec)) /
		       p;
	}
	case Kind::Mul: return node_eval(*n.a, prec) * node_eval(*n.b, prec);
	case Kind::Div: {
		if (node_rational(*n.b) && node_value(*n.b) == 0)
			throw DivisionByZeroSymbol("division by an exact zero");
		return node_eval(*n.a, prec) / node_eval(*n.b, prec);
	}
	case Kind::Add: return node_eval(*n.a, prec) + node_eval(*n.b, prec);
	}
	throw Error("internal: unknown expression node");
}

ComplexInterval HeightExpr::value(mpfr_prec_t prec) const {
	return node_eval(*n_, prec);
}

} // namespace cullenrec

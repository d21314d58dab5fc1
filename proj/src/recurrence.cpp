#include "cullenrec/recurrence.hpp"

#include "cullenrec/errors.hpp"

namespace cullenrec {

void RecurrenceSpec::validate() const {
	if (order < 1) throw InvalidSpec("recurrence order must be >= 1");
	if (coefficients.size() != static_cast<size_t>(order))
		throw InvalidSpec("coefficient count must equal the order");
	if (initials.size() != static_cast<size_t>(order))
		throw InvalidSpec("initial-value count must equal the order");
	if (coefficients.back() == 0)
		throw InvalidSpec("trailing coefficient a_r must be nonzero");
	bool all_zero = true;
	for (const auto& u : initials)
		if (u != 0) { all_zero = false; break; }
	if (all_zero) throw InvalidSpec("initial values must not all be zero");
}

std::vector<mpz_class> RecurrenceSpec::eval_terms(long from, long to) const {
	validate();
	if (from < 0 || from > to) throw InvalidSpec("eval_terms requires 0 <= from <= to");
	const size_t r = static_cast<size_t>(order);
	std::vector<mpz_class> window(initials); // U_{n-r} ... U_{n-1}
	std::vector<mpz_class> out;
	out.reserve(static_cast<size_t>(to - from + 1));
	for (long n = 0; n <= to; ++n) {
		mpz_class un;
		if (n < order) {
			un = initials[static_cast<size_t>(n)];
		} else {
			un = 0;
			for (size_t j = 0; j < r; ++j)
				un += coefficients[j] * window[r - 1 - j];
			for (size_t j = 0; j + 1 < r; ++j) window[j] = window[j + 1];
			window[r - 1] = un;
		}
		if (n >= from) out.push_back(un);
	}
	return out;
}

mpz_class RecurrenceSpec::term(long n) const {
	return eval_terms(n, n)[0];
}

IntPoly RecurrenceSpec::char_poly() const {
	validate();
	std::vector<mpz_class> c(static_cast<size_t>(order) + 1);
	c[static_cast<size_t>(order)] = 1;
	for (int j = 1; j <= order; ++j)
		c[static_cast<size_t>(order - j)] = -coefficients[static_cast<size_t>(j - 1)];
	return IntPoly(std::move(c));
}

IntPoly RecurrenceSpec::numerator_poly() const {
	validate();
	std::vector<mpz_class> c(static_cast<size_t>(order));
	for (int n = 0; n < order; ++n) {
		mpz_class v = initials[static_cast<size_t>(n)];
		for (int j = 1; j <= n; ++j)
			v -= coefficients[static_cast<size_t>(j - 1)] * initials[static_cast<size_t>(n - j)];
		c[static_cast<size_t>(n)] = v;
	}
	return IntPoly(std::move(c));
}

RecurrenceSpec fibonacci_spec() {
	RecurrenceSpec s;
	s.order = 2;
	s.coefficients = {1, 1};
	s.initials = {0, 1};
	return s;
}

RecurrenceSpec counterexample_spec() {
	RecurrenceSpec s;
	s.order = 3;
	s.coefficients = {3, -3, 2};
	s.initials = {0, 1, 1};
	return s;
}

} // namespace cullenrec

#include "cullenrec/search.hpp"

#include <algorithm>
#include <optional>

#include "cullenrec/binet.hpp"
#include "cullenrec/errors.hpp"
#include "cullenrec/interval.hpp"

namespace cullenrec {

namespace {

mpz_class power(const mpz_class& x, long e) {
	mpz_class out;
	mpz_pow_ui(out.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(e));
	return out;
}

// ell x^ell + Q(x)
mpz_class target_value(const mpz_class& base, const IntPoly& shift, long ell) {
	return ell * power(base, ell) + shift.eval(base);
}

} // namespace

std::vector<mpz_class> fibonacci_table(long count) {
	if (count <= 0) return {};
	return fibonacci_spec().eval_terms(0, count - 1);
}

std::vector<SolutionTuple> search_fibonacci(long ell_max, long n1_max) {
	if (n1_max < 0 || ell_max < 0) throw InvalidSpec("search box must be nonempty");
	const std::vector<mpz_class> fib = fibonacci_table(n1_max + 1);
	std::vector<SolutionTuple> found;
	for (long ell = 0; ell <= ell_max; ++ell) {
		const mpz_class target = target_value(2, IntPoly::from_longs({1}), ell);
		// With n_1 >= n_2 the larger term carries at least half the target,
		// so n_1 ranges over the few indices with
		// ceil(target/2) <= F_{n_1} <= target; F_1 = F_2 duplicates count
		// separately, hence the equal_range lookups.
		const mpz_class half = (target + 1) / 2;
		auto first = std::lower_bound(fib.begin(), fib.end(), half);
		auto last = std::upper_bound(first, fib.end(), target);
		for (auto it = first; it != last; ++it) {
			const mpz_class rest = target - *it;
			auto [lo, hi] = std::equal_range(fib.begin(), fib.end(), rest);
			for (auto jt = lo; jt != hi; ++jt) {
				if (jt - fib.begin() > it - fib.begin()) continue;
				found.push_back({{it - fib.begin(), jt - fib.begin()}, ell, 2});
			}
		}
	}
	return found;
}

std::vector<SolutionTuple> search_general(const ProblemInstance& instance, long n1_max,
                                          long ell_max) {
	instance.validate();
	if (n1_max < 0 || ell_max < 0) throw InvalidSpec("search box must be nonempty");
	const std::vector<mpz_class> values = instance.spec.eval_terms(0, n1_max);
	// Terms may be negative for a general recurrence; prefix extrema give the
	// reachable window for any tail of indices below a cutoff.
	std::vector<mpz_class> prefix_max(values.size()), prefix_min(values.size());
	prefix_max[0] = prefix_min[0] = values[0];
	for (size_t n = 1; n < values.size(); ++n) {
		prefix_max[n] = std::max(prefix_max[n - 1], values[n]);
		prefix_min[n] = std::min(prefix_min[n - 1], values[n]);
	}

	std::vector<SolutionTuple> found;
	std::vector<long> chosen;
	const auto descend = [&](auto&& self, long remaining, long cutoff, const mpz_class& rest,
	                         long ell) -> void {
		if (remaining == 0) {
			if (rest == 0) found.push_back({chosen, ell, instance.base});
			return;
		}
		for (long n = cutoff; n >= 0; --n) {
			// Window of sums reachable with `remaining` indices <= n; both
			// ends tighten as n drops, so a miss on either side is final.
			if (rest > remaining * prefix_max[n]) break;
			if (rest < remaining * prefix_min[n]) break;
			chosen.push_back(n);
			self(self, remaining - 1, n - 1, rest - values[n], ell);
			chosen.pop_back();
		}
	};
	for (long ell = 0; ell <= ell_max; ++ell)
		descend(descend, instance.terms, n1_max, target_value(instance.base, instance.shift, ell),
		        ell);
	return found;
}

bool certify_solution(const ProblemInstance& instance, const SolutionTuple& tuple) {
	instance.validate();
	if (tuple.indices.size() != static_cast<size_t>(instance.terms)) return false;
	if (tuple.ell < 0 || tuple.x != instance.base) return false;
	mpz_class sum = 0;
	long prev = -1;
	for (long n : tuple.indices) {
		if (n < 0) return false;
		if (prev >= 0 && n > prev) return false;
		prev = n;
		sum += instance.spec.term(n);
	}
	return sum == target_value(instance.base, instance.shift, tuple.ell);
}

ParityCertificate parity_excludes_equal_indices(long n1_max, long ell_max) {
	if (n1_max < 0 || ell_max < 0) throw InvalidSpec("sweep box must be nonempty");
	ParityCertificate cert;
	cert.swept_n1 = n1_max;
	cert.swept_ell = ell_max;
	const std::vector<mpz_class> fib = fibonacci_table(n1_max + 1);
	cert.symbolic_ok = true;
	cert.sweep_ok = true;
	for (long ell = 0; ell <= ell_max; ++ell) {
		// ell 2^ell is even or zero, so the right side is odd
		const mpz_class target = target_value(2, IntPoly::from_longs({1}), ell);
		if (mpz_odd_p(target.get_mpz_t()) == 0) cert.symbolic_ok = false;
		for (long n = 0; n <= n1_max; ++n)
			if (2 * fib[n] == target) cert.sweep_ok = false;
	}
	return cert;
}

CounterexampleCertificate verify_counterexample(const RecurrenceSpec& spec, long k_range) {
	spec.validate();
	if (k_range < 0) throw InvalidSpec("family range must be nonnegative");
	CounterexampleCertificate cert;
	cert.verified_k_range = k_range;

	std::optional<IntPoly> rest = divide_exact(spec.char_poly(), IntPoly::from_longs({-2, 1}));
	cert.factorization_ok = rest && *rest == IntPoly::from_longs({1, -1, 1});

	try {
		BinetDecomposition decomp = binet_decompose(spec, kDefaultPrecision);
		cert.dominant_coefficient_zero = decomp.degenerate && decomp.dominant_index >= 0 &&
		                                 decomp.coefficient_exactly_zero[decomp.dominant_index];
	} catch (const Error&) {
		cert.dominant_coefficient_zero = false;
	}

	try {
		cert.hypotheses_reject = !check_hypotheses(spec).all_hold();
	} catch (const Error&) {
		cert.hypotheses_reject = true;
	}

	// G_6 = G_0, G_7 = G_1, G_8 = G_2 and order-3 linearity force period 6;
	// the family values are still checked directly over the requested range.
	const long horizon = std::max<long>(6 * k_range + 2, 8);
	const std::vector<mpz_class> values = spec.eval_terms(0, horizon);
	cert.base_period_checks = spec.order == 3 && values[6] == values[0] &&
	                          values[7] == values[1] && values[8] == values[2];
	cert.family_values_ok = true;
	for (long n = 0; n <= 6 * k_range + 2; ++n) {
		const bool expect_one = (n % 6 == 1 || n % 6 == 2);
		if ((values[n] == 1) != expect_one) {
			cert.family_values_ok = false;
			break;
		}
	}
	return cert;
}

} // namespace cullenrec

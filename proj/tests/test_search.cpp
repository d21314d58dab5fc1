#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gmpxx.h>

#include <algorithm>
#include <vector>

#include "cullenrec/baker.hpp"
#include "cullenrec/errors.hpp"
#include "cullenrec/polynomial.hpp"
#include "cullenrec/recurrence.hpp"
#include "cullenrec/search.hpp"

using namespace cullenrec;

namespace {

SolutionTuple tup(std::vector<long> idx, long ell, long x = 2) {
	SolutionTuple t;
	t.indices = std::move(idx);
	t.ell = ell;
	t.x = x;
	return t;
}

std::vector<SolutionTuple> sorted(std::vector<SolutionTuple> v) {
	std::sort(v.begin(), v.end());
	return v;
}

mpz_class power(const mpz_class& b, long e) {
	mpz_class r;
	mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
	return r;
}

mpz_class target_of(const ProblemInstance& inst, long ell) {
	return ell * power(inst.base, ell) + inst.shift.eval(inst.base);
}

} // namespace

TEST_CASE("fibonacci table") {
	std::vector<mpz_class> f = fibonacci_table(13);
	REQUIRE(f.size() == 13);
	long expect[] = {0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144};
	for (int i = 0; i < 13; ++i) CHECK(f[static_cast<size_t>(i)] == expect[i]);
	CHECK(fibonacci_table(1).size() == 1);
}

TEST_CASE("the two-term fibonacci search finds the known solutions") {
	std::vector<SolutionTuple> got = sorted(search_fibonacci(135, 200));
	std::vector<SolutionTuple> want = {
		tup({1, 0}, 0), tup({2, 0}, 0), tup({3, 1}, 1), tup({3, 2}, 1),
		tup({4, 0}, 1), tup({6, 1}, 2), tup({6, 2}, 2), tup({14, 6}, 6),
	};
	CHECK(got == want);
}

TEST_CASE("the general search agrees on the fibonacci box") {
	std::vector<SolutionTuple> fib = sorted(search_fibonacci(135, 200));
	std::vector<SolutionTuple> gen = sorted(search_general(fibonacci_instance(), 200, 135));
	CHECK(fib == gen);
	for (const auto& t : gen) {
		REQUIRE(t.indices.size() == 2);
		CHECK(t.indices[0] > t.indices[1]); // strict descent
		CHECK(certify_solution(fibonacci_instance(), t));
	}
}

TEST_CASE("the single-term search finds the known solutions") {
	ProblemInstance inst = fibonacci_instance();
	inst.terms = 1;
	std::vector<SolutionTuple> got = sorted(search_general(inst, 200, 135));
	std::vector<SolutionTuple> want = {tup({1}, 0), tup({2}, 0), tup({4}, 1)};
	CHECK(got == want);
}

TEST_CASE("search matches brute force on small boxes") {
	std::vector<mpz_class> f = fibonacci_table(41);
	ProblemInstance inst = fibonacci_instance();

	std::vector<SolutionTuple> naive2;
	for (long ell = 0; ell <= 12; ++ell) {
		mpz_class target = target_of(inst, ell);
		for (long n1 = 0; n1 <= 40; ++n1)
			for (long n2 = 0; n2 <= n1; ++n2)
				if (f[static_cast<size_t>(n1)] + f[static_cast<size_t>(n2)] == target)
					naive2.push_back(tup({n1, n2}, ell));
	}
	CHECK(sorted(search_fibonacci(12, 40)) == sorted(naive2));

	inst.terms = 1;
	std::vector<SolutionTuple> naive1;
	for (long ell = 0; ell <= 12; ++ell) {
		mpz_class target = target_of(inst, ell);
		for (long n1 = 0; n1 <= 40; ++n1)
			if (f[static_cast<size_t>(n1)] == target) naive1.push_back(tup({n1}, ell));
	}
	CHECK(sorted(search_general(inst, 40, 12)) == sorted(naive1));
}

TEST_CASE("searching a sign-changing sequence matches brute force") {
	ProblemInstance inst{counterexample_spec(), IntPoly::from_longs({-1}), 2, 1};
	std::vector<mpz_class> g = counterexample_spec().eval_terms(0, 100);

	std::vector<SolutionTuple> naive;
	for (long ell = 0; ell <= 1; ++ell) {
		mpz_class target = target_of(inst, ell);
		for (long n = 0; n <= 100; ++n)
			if (g[static_cast<size_t>(n)] == target) naive.push_back(tup({n}, ell));
	}
	std::vector<SolutionTuple> got = sorted(search_general(inst, 100, 1));
	CHECK(got == sorted(naive));

	// ell = 1 forces G_n = 1, which happens exactly at n = 1, 2 mod 6
	int ones = 0;
	for (const auto& t : got)
		if (t.ell == 1) {
			++ones;
			CHECK((t.indices[0] % 6 == 1 || t.indices[0] % 6 == 2));
		}
	CHECK(ones == 34);
}

TEST_CASE("solution certification") {
	ProblemInstance inst = fibonacci_instance();
	CHECK(certify_solution(inst, tup({14, 6}, 6)));
	CHECK(certify_solution(inst, tup({3, 2}, 1)));
	CHECK(!certify_solution(inst, tup({14, 6}, 5)));  // wrong ell
	CHECK(!certify_solution(inst, tup({6, 14}, 6)));  // ascending
	CHECK(!certify_solution(inst, tup({14, -1}, 6))); // negative index
	CHECK(!certify_solution(inst, tup({14}, 6)));     // wrong arity
	CHECK(!certify_solution(inst, tup({14, 6}, 6, 3))); // wrong base
	CHECK(!certify_solution(inst, tup({14, 6}, -1)));
}

TEST_CASE("parity certificate") {
	ParityCertificate c = parity_excludes_equal_indices(60, 60);
	CHECK(c.symbolic_ok);
	CHECK(c.sweep_ok);
	CHECK(c.swept_n1 == 60);
	CHECK(c.swept_ell == 60);
	CHECK(c.valid());
}

TEST_CASE("negative boxes are rejected") {
	CHECK_THROWS_AS(search_fibonacci(-1, 10), InvalidSpec);
	CHECK_THROWS_AS(search_fibonacci(10, -1), InvalidSpec);
	CHECK_THROWS_AS(search_general(fibonacci_instance(), -1, 10), InvalidSpec);
	CHECK_THROWS_AS(search_general(fibonacci_instance(), 10, -1), InvalidSpec);
}

TEST_CASE("counterexample certificate") {
	CounterexampleCertificate c = verify_counterexample();
	CHECK(c.base_period_checks);
	CHECK(c.factorization_ok);
	CHECK(c.dominant_coefficient_zero);
	CHECK(c.hypotheses_reject);
	CHECK(c.family_values_ok);
	CHECK(c.verified_k_range == 10000);
	CHECK(c.valid());

	CounterexampleCertificate small = verify_counterexample(counterexample_spec(), 0);
	CHECK(small.valid());
	CHECK(small.verified_k_range == 0);
}

TEST_CASE("tampered specs fail the certificate") {
	RecurrenceSpec wrong_tail{3, {3, -3, 1}, {0, 1, 1}};
	CounterexampleCertificate c = verify_counterexample(wrong_tail, 100);
	CHECK(!c.base_period_checks);
	CHECK(!c.factorization_ok);
	CHECK(!c.valid());

	RecurrenceSpec wrong_start{3, {3, -3, 2}, {0, 1, 2}};
	CounterexampleCertificate d = verify_counterexample(wrong_start, 100);
	CHECK(d.factorization_ok); // the polynomial still factors
	CHECK(!d.dominant_coefficient_zero);
	CHECK(!d.family_values_ok);
	CHECK(!d.valid());
}

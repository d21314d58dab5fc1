#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gmpxx.h>

#include <vector>

#include "cullenrec/errors.hpp"
#include "cullenrec/interval.hpp"
#include "cullenrec/lattice.hpp"
#include "cullenrec/reduction.hpp"

using namespace cullenrec;

namespace {

mpz_class norm_sq(const std::vector<mpz_class>& v) {
	mpz_class s = 0;
	for (const auto& x : v) s += x * x;
	return s;
}

mpz_class det2(const IntegerLattice& l) {
	return l.basis[0][0] * l.basis[1][1] - l.basis[0][1] * l.basis[1][0];
}

// v = c1 b1 + c2 b2 with integer c
bool in_lattice_2d(const IntegerLattice& l, const std::vector<mpz_class>& v) {
	mpz_class d = det2(l);
	if (d == 0) return false;
	mpq_class c1(v[0] * l.basis[1][1] - v[1] * l.basis[1][0], d);
	mpq_class c2(v[1] * l.basis[0][0] - v[0] * l.basis[0][1], d);
	c1.canonicalize();
	c2.canonicalize();
	return c1.get_den() == 1 && c2.get_den() == 1;
}

mpz_class brute_shortest_sq_2d(const IntegerLattice& l, long box) {
	mpz_class best = -1;
	for (long c1 = -box; c1 <= box; ++c1)
		for (long c2 = -box; c2 <= box; ++c2) {
			if (c1 == 0 && c2 == 0) continue;
			std::vector<mpz_class> v = {c1 * l.basis[0][0] + c2 * l.basis[1][0],
			                            c1 * l.basis[0][1] + c2 * l.basis[1][1]};
			mpz_class n = norm_sq(v);
			if (best < 0 || n < best) best = n;
		}
	return best;
}

} // namespace

TEST_CASE("lattice validation") {
	IntegerLattice empty;
	CHECK_THROWS_AS(empty.validate(), InvalidSpec);
	IntegerLattice ragged{{{1, 2}, {1}}};
	CHECK_THROWS_AS(ragged.validate(), InvalidSpec);
	IntegerLattice tall{{{1}, {2}}};
	CHECK_THROWS_AS(tall.validate(), SingularBasis);
	IntegerLattice dependent{{{1, 2}, {2, 4}}};
	CHECK_THROWS_AS(lll_reduce(dependent), SingularBasis);
}

TEST_CASE("lll reduction preserves the lattice") {
	IntegerLattice l{{{201, 37}, {1648, 297}}};
	IntegerLattice r = lll_reduce(l);
	REQUIRE(r.rank() == 2);
	REQUIRE(r.dimension() == 2);

	// unimodular change of basis: same determinant up to sign, mutual membership
	mpz_class d0 = det2(l), d1 = det2(r);
	CHECK(abs(d0) == abs(d1));
	for (const auto& v : r.basis) CHECK(in_lattice_2d(l, v));
	for (const auto& v : l.basis) CHECK(in_lattice_2d(r, v));

	// delta = 3/4 guarantee in dimension 2: ||b_1||^2 <= 2 |det|
	CHECK(norm_sq(r.basis[0]) <= 2 * abs(d1));
}

TEST_CASE("reduced first vector against brute force") {
	IntegerLattice cases[] = {
		{{{201, 37}, {1648, 297}}},
		{{{1, 0}, {70000, 1}}},
		{{{997, 1}, {0, 997}}},
	};
	for (auto& l : cases) {
		IntegerLattice r = lll_reduce(l);
		mpz_class brute = brute_shortest_sq_2d(r, 4);
		mpz_class first = norm_sq(r.basis[0]);
		CHECK(first >= brute);
		CHECK(first <= 2 * brute); // dimension-2 LLL bound

		mpq_class floor = shortest_vector_floor(r);
		CHECK(floor > 0);
		CHECK(floor * floor <= mpq_class(brute));
	}
}

TEST_CASE("closest vector oracles") {
	IntegerLattice diag{{{2, 0}, {0, 3}}};
	ClosestVector cv = closest_vector(diag, {mpz_class(1), mpz_class(1)});
	CHECK(cv.distance_sq == 2);

	// rank below dimension leaves an orthogonal residual
	IntegerLattice plane{{{1, 0, 0}, {0, 1, 0}}};
	cv = closest_vector(plane, {mpz_class(0), mpz_class(0), mpz_class(5)});
	CHECK(cv.distance_sq == 25);

	IntegerLattice skew{{{2, 1}, {1, 2}}};
	cv = closest_vector(skew, {mpz_class(3), mpz_class(3)});
	CHECK(cv.distance_sq == 0);
	CHECK(cv.coefficients.size() == 2);
	CHECK(cv.coefficients[0] * 2 + cv.coefficients[1] == 3);
	CHECK(cv.coefficients[0] + cv.coefficients[1] * 2 == 3);

	IntegerLattice bad{{{1, 0}}};
	CHECK_THROWS_AS(closest_vector(bad, {mpz_class(1), mpz_class(1), mpz_class(1)}), InvalidSpec);
}

TEST_CASE("closest vector against brute force in dimension 3") {
	IntegerLattice l{{{3, 1, 0}, {1, 4, 1}, {0, 1, 5}}};
	std::vector<mpz_class> target = {7, 7, 7};
	ClosestVector cv = closest_vector(l, target);

	mpz_class brute = -1;
	for (long c1 = -6; c1 <= 6; ++c1)
		for (long c2 = -6; c2 <= 6; ++c2)
			for (long c3 = -6; c3 <= 6; ++c3) {
				mpz_class d = 0;
				for (int j = 0; j < 3; ++j) {
					mpz_class x = c1 * l.basis[0][static_cast<size_t>(j)] +
					              c2 * l.basis[1][static_cast<size_t>(j)] +
					              c3 * l.basis[2][static_cast<size_t>(j)] -
					              target[static_cast<size_t>(j)];
					d += x * x;
				}
				if (brute < 0 || d < brute) brute = d;
			}
	CHECK(cv.distance_sq == brute);

	// the reported coefficients reproduce the reported distance
	mpz_class check = 0;
	for (int j = 0; j < 3; ++j) {
		mpz_class x = -target[static_cast<size_t>(j)];
		for (int i = 0; i < 3; ++i)
			x += cv.coefficients[static_cast<size_t>(i)] * l.basis[static_cast<size_t>(i)][static_cast<size_t>(j)];
		check += x * x;
	}
	CHECK(check == cv.distance_sq);
}

TEST_CASE("reduction problem validation") {
	ReductionProblem p;
	CHECK_THROWS_AS(p.validate(), InvalidSpec); // no thetas
	p.thetas = {RealInterval::exact(2).log()};
	p.variable_bounds = {};
	CHECK_THROWS_AS(p.validate(), InvalidSpec); // bound count mismatch
	p.variable_bounds = {mpz_class(0)};
	p.decay_scale = RealInterval::exact(1);
	p.decay_base = RealInterval::exact(2);
	CHECK_THROWS_AS(p.validate(), InvalidSpec); // X_j < 1
	p.variable_bounds = {mpz_class(1000)};
	p.decay_base = RealInterval::exact(1);
	CHECK_THROWS_AS(p.validate(), InvalidSpec); // decay base must exceed 1
	p.decay_base = RealInterval::exact(2);
	p.max_attempts = 0;
	CHECK_THROWS_AS(p.validate(), InvalidSpec);
	p.max_attempts = 10;
	CHECK_NOTHROW(p.validate());
}

TEST_CASE("inhomogeneous reduction contracts a toy problem") {
	ReductionProblem p;
	p.thetas = {RealInterval::exact(2).log(), RealInterval::exact(3).log()};
	p.beta = RealInterval::exact(5).log();
	p.variable_bounds = {mpz_class("1000000000000"), mpz_class("1000000000000")};
	p.decay_scale = RealInterval::exact(1000000);
	p.decay_base = RealInterval::exact(2);

	ReductionOutcome out = reduce_inhomogeneous(p);
	CHECK(out.success);
	CHECK(!out.certified); // beta taken at its midpoint
	CHECK(out.lambda_lower > 0);
	CHECK(out.new_bound > 0);
	CHECK(out.new_bound < 1000);
	CHECK(out.scale_used > 0);
	CHECK(out.attempts >= 1);

	// narrow exact beta supports a certified pass
	p.certified = true;
	ReductionOutcome cert = reduce_inhomogeneous(p);
	CHECK(cert.success);
	CHECK(cert.certified);
	CHECK(cert.new_bound < 1000);
}

TEST_CASE("reduction failure modes") {
	ReductionProblem p;
	p.thetas = {RealInterval::of_endpoints(mpq_class(1, 2), mpq_class(51, 100))};
	p.beta = RealInterval::exact(1);
	p.variable_bounds = {mpz_class(1000)};
	p.decay_scale = RealInterval::exact(10);
	p.decay_base = RealInterval::exact(2);
	CHECK_THROWS_AS(reduce_inhomogeneous(p), PrecisionExhausted); // theta too wide

	ReductionProblem q;
	q.thetas = {RealInterval::exact(2).log(), RealInterval::exact(3).log()};
	q.beta = RealInterval::exact(5).log();
	q.variable_bounds = {mpz_class("100000000000000000000"), mpz_class("100000000000000000000")};
	q.decay_scale = RealInterval::exact(10);
	q.decay_base = RealInterval::exact(2);
	q.scale = 1; // far too small for the box
	q.max_attempts = 1;
	CHECK_THROWS_AS(reduce_inhomogeneous(q), ScaleCapExceeded);
}

TEST_CASE("fibonacci gap stage") {
	mpz_class n1("1000000"), ell("750000");
	CampaignStage s = fibonacci_gap_stage(n1, ell, BoundMode::Replay);
	CHECK(s.name == "gap");
	CHECK(s.subproblems == 19);
	CHECK(s.bound == 48);
	CHECK(s.max_attempts_seen >= 1);

	// deterministic under threading
	CampaignStage t = fibonacci_gap_stage(n1, ell, BoundMode::Replay, 2);
	CHECK(t.bound == s.bound);
	CHECK(t.subproblems == s.subproblems);

	CHECK_THROWS_AS(fibonacci_gap_stage(mpz_class(5), ell, BoundMode::Replay), InvalidSpec);
	CHECK_THROWS_AS(fibonacci_gap_stage(n1, mpz_class(1), BoundMode::Replay), InvalidSpec);
	CHECK_THROWS_AS(fibonacci_gap_stage(n1, ell, BoundMode::Replay, 0), InvalidSpec);

	// the certified variant cannot absorb the octave width
	CHECK_THROWS_AS(fibonacci_gap_stage(n1, ell, BoundMode::Rigorous), ScaleCapExceeded);
}

TEST_CASE("fibonacci absolute stage") {
	mpz_class n1("1000000"), ell("750000"), gap(10);
	CampaignStage s = fibonacci_absolute_stage(n1, ell, gap, BoundMode::Replay);
	CHECK(s.name == "absolute");
	CHECK(s.subproblems == 19 * 11); // octaves times gap values
	CHECK(s.bound >= 6);
	CHECK(s.bound < n1);
}

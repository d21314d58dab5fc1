#include "cullenrec/reduction.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <utility>

#include "cullenrec/errors.hpp"
#include "cullenrec/lattice.hpp"

namespace cullenrec {

namespace {

mpz_class floor_q(const mpq_class& q) {
	mpz_class out;
	mpz_fdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
	return out;
}

mpz_class ceil_q(const mpq_class& q) {
	mpz_class out;
	mpz_cdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
	return out;
}

mpq_class sqrt_lower(const mpq_class& q) {
	if (q <= 0) return mpq_class(0);
	mpz_class nd = q.get_num() * q.get_den();
	mpz_class s = sqrt(mpz_class(nd << 64));
	mpq_class out(s, mpz_class(q.get_den() << 32));
	out.canonicalize();
	return out;
}

// Deterministic parallel map over subproblems; merges by max, so the result
// does not depend on thread scheduling.
mpz_class run_stage(const std::vector<ReductionProblem>& subs, int workers, mpfr_prec_t prec,
                    int& attempts_seen) {
	attempts_seen = 0;
	if (subs.empty()) return 0;
	const int nw = std::max(1, std::min<int>(workers, static_cast<int>(subs.size())));
	std::vector<mpz_class> local_bound(nw, 0);
	std::vector<int> local_attempts(nw, 0);
	std::vector<std::exception_ptr> errors(nw);
	auto body = [&](int w) {
		try {
			for (size_t i = static_cast<size_t>(w); i < subs.size(); i += nw) {
				ReductionOutcome out = reduce_inhomogeneous(subs[i], prec);
				if (out.new_bound > local_bound[w]) local_bound[w] = out.new_bound;
				local_attempts[w] = std::max(local_attempts[w], out.attempts);
			}
		} catch (...) {
			errors[w] = std::current_exception();
		}
	};
	if (nw == 1) {
		body(0);
	} else {
		std::vector<std::thread> pool;
		pool.reserve(nw);
		for (int w = 0; w < nw; ++w) pool.emplace_back(body, w);
		for (auto& t : pool) t.join();
	}
	for (auto& e : errors)
		if (e) std::rethrow_exception(e);
	mpz_class best = 0;
	for (int w = 0; w < nw; ++w) {
		if (local_bound[w] > best) best = local_bound[w];
		attempts_seen = std::max(attempts_seen, local_attempts[w]);
	}
	return best;
}

} // namespace

void ReductionProblem::validate() const {
	if (thetas.empty()) throw InvalidSpec("need at least one theta");
	if (variable_bounds.size() != thetas.size())
		throw InvalidSpec("one variable bound per theta");
	for (const auto& x : variable_bounds)
		if (x < 1) throw InvalidSpec("variable bounds must be at least 1");
	if (!(decay_base.lo_rational() > 1)) throw InvalidSpec("decay base must exceed 1");
	if (!decay_scale.is_positive()) throw InvalidSpec("decay scale must be positive");
	if (scale < 0) throw InvalidSpec("scale must be nonnegative");
	if (max_attempts < 1) throw InvalidSpec("need at least one attempt");
}

ReductionOutcome reduce_inhomogeneous(const ReductionProblem& problem, mpfr_prec_t precision) {
	problem.validate();
	const size_t m = problem.thetas.size();
	mpz_class C = problem.scale;
	if (C == 0) {
		// the lattice gap ~ (C |theta_m|)^{1/m} has to clear the floor error
		// budget ~ sum X_j, so start around (sum X_j)^m
		mpz_class sum = 1;
		for (const auto& x : problem.variable_bounds) sum += x;
		mpz_pow_ui(C.get_mpz_t(), sum.get_mpz_t(), static_cast<unsigned long>(m));
		C *= 100;
	}
	const mpq_class beta_lo = problem.beta.lo_rational();
	const mpq_class beta_hi = problem.beta.hi_rational();
	const mpq_class beta_mid = (beta_lo + beta_hi) / 2;
	const mpq_class half_width = (beta_hi - beta_lo) / 2;

	// floor error budget: |C lambda - S| < sum_j |b_j| + 1 for the nearest
	// integer combination S, since every dropped fractional part is in [0, 1)
	mpq_class budget = 1;
	for (const auto& x : problem.variable_bounds) budget += mpq_class(x);
	// identity coordinates of the lattice carry b_1 .. b_{m-1}
	mpq_class id_sq = 0;
	for (size_t j = 0; j + 1 < m; ++j)
		id_sq += mpq_class(problem.variable_bounds[j] * problem.variable_bounds[j]);

	bool width_blocked = false;
	for (int attempt = 1; attempt <= problem.max_attempts; ++attempt, C *= 10) {
		RealInterval cI = RealInterval::exact(C, precision);
		std::vector<mpz_class> floors(m);
		for (size_t j = 0; j < m; ++j) {
			bool ok = false;
			floors[j] = (cI * problem.thetas[j]).floor_unambiguous(ok);
			if (!ok)
				throw PrecisionExhausted(
				    "scaled logarithm straddles an integer; inputs too wide for this scale");
		}
		mpz_class beta_floor = floor_q(mpq_class(C) * beta_mid);

		IntegerLattice lattice;
		lattice.basis.assign(m, std::vector<mpz_class>(m, 0));
		for (size_t j = 0; j < m; ++j) {
			if (j + 1 < m) lattice.basis[j][j] = 1;
			lattice.basis[j][m - 1] = floors[j];
		}
		std::vector<mpz_class> target(m, 0);
		target[m - 1] = -beta_floor;

		mpz_class dist_sq;
		try {
			dist_sq = closest_vector(lll_reduce(lattice), target).distance_sq;
		} catch (const SingularBasis&) {
			continue; // a floor collapsed to zero; a larger scale fixes it
		}
		if (dist_sq == 0) continue; // target lies in the lattice; rescale

		mpq_class slack = mpq_class(dist_sq) - id_sq;
		if (slack <= 0) continue;
		mpq_class lam = (sqrt_lower(slack) - budget) / mpq_class(C);
		if (lam <= 0) continue;
		if (problem.certified) {
			lam -= half_width;
			if (lam <= 0) {
				width_blocked = true;
				continue;
			}
		}

		ReductionOutcome out;
		out.success = true;
		out.certified = problem.certified;
		out.lambda_lower = lam;
		out.scale_used = C;
		out.attempts = attempt;
		RealInterval lamI = RealInterval::of_rational(lam, precision);
		RealInterval nb = (problem.decay_scale / lamI).log() / problem.decay_base.log();
		mpz_class bound = ceil_q(nb.hi_rational());
		if (bound < 0) bound = 0;
		out.new_bound = bound;
		return out;
	}
	throw ScaleCapExceeded(
	    width_blocked
	        ? "the constant's interval width dominates the lattice gap at every scale"
	        : "no scale certified a positive linear-form floor within the attempt budget");
}

namespace {

// Shared Fibonacci constants at a given working precision.
struct FibData {
	RealInterval one, alpha, inv_alpha, log2v, log_sqrt5, neg_log_alpha, gap_K, abs_K;

	explicit FibData(mpfr_prec_t p)
	    : one(RealInterval::exact(1L, p)) {
		RealInterval two = RealInterval::exact(2L, p);
		RealInterval sqrt5 = RealInterval::exact(5L, p).sqrt();
		alpha = (one + sqrt5) / two;
		inv_alpha = one / alpha;
		log2v = two.log();
		log_sqrt5 = sqrt5.log();
		neg_log_alpha = -alpha.log();
		// |log(1 + u)| <= 2|u| once |u| <= 1/2, which the regime floors give
		gap_K = two * (two * sqrt5 + one);
		abs_K = two * (two + sqrt5);
	}
};

// Dyadic octaves of ell in [2, ell_bound]; each contributes a beta of width
// log 2 plus rounding.
std::vector<std::pair<mpz_class, mpz_class>> ell_octaves(const mpz_class& ell_bound) {
	std::vector<std::pair<mpz_class, mpz_class>> octaves;
	for (unsigned long t = 1; (mpz_class(1) << t) <= ell_bound; ++t) {
		mpz_class lo = mpz_class(1) << t;
		mpz_class hi = (mpz_class(1) << (t + 1)) - 1;
		if (hi > ell_bound) hi = ell_bound;
		if (lo < 2) lo = 2;
		if (lo <= hi) octaves.emplace_back(lo, hi);
	}
	return octaves;
}

// the floors need more bits than the largest scale (~100 X1 X2 10^10)
mpfr_prec_t stage_precision(const mpz_class& n1_bound, const mpz_class& ell_bound,
                            mpfr_prec_t precision) {
	size_t scale_bits = mpz_sizeinbase(mpz_class(n1_bound * ell_bound).get_mpz_t(), 2);
	return std::max<mpfr_prec_t>(precision,
	                             static_cast<mpfr_prec_t>((scale_bits + 41 + 64 + 63) / 64 * 64));
}

void check_stage_inputs(const mpz_class& n1_bound, const mpz_class& ell_bound, int workers) {
	if (workers < 1) throw InvalidSpec("workers must be at least 1");
	if (n1_bound < 6 || ell_bound < 2)
		throw InvalidSpec("stage needs bounds n1 >= 6 and ell >= 2");
}

} // namespace

CampaignStage fibonacci_gap_stage(const mpz_class& n1_bound, const mpz_class& ell_bound,
                                  BoundMode mode, int workers, mpfr_prec_t precision) {
	check_stage_inputs(n1_bound, ell_bound, workers);
	const bool certified = (mode == BoundMode::Rigorous);
	return with_precision_ladder(
	    [&](mpfr_prec_t p) {
		    FibData fib(p);
		    std::vector<ReductionProblem> subs;
		    for (const auto& [lo, hi] : ell_octaves(ell_bound)) {
			    ReductionProblem pr;
			    pr.thetas = {fib.log2v, fib.neg_log_alpha};
			    pr.variable_bounds = {hi, n1_bound};
			    RealInterval blo = fib.log_sqrt5 + RealInterval::exact(lo, p).log();
			    RealInterval bhi = fib.log_sqrt5 + RealInterval::exact(hi, p).log();
			    pr.beta = blo.hull(bhi);
			    pr.decay_scale = fib.gap_K;
			    pr.decay_base = fib.alpha;
			    pr.certified = certified;
			    subs.push_back(std::move(pr));
		    }
		    CampaignStage st;
		    st.name = "gap";
		    st.subproblems = static_cast<int>(subs.size());
		    st.bound = run_stage(subs, workers, p, st.max_attempts_seen);
		    if (st.bound < 4) st.bound = 4; // the linearisation already covers gaps below 5
		    if (st.bound > n1_bound) st.bound = n1_bound;
		    return st;
	    },
	    stage_precision(n1_bound, ell_bound, precision), kPrecisionCap);
}

CampaignStage fibonacci_absolute_stage(const mpz_class& n1_bound, const mpz_class& ell_bound,
                                       const mpz_class& gap_bound, BoundMode mode, int workers,
                                       mpfr_prec_t precision) {
	check_stage_inputs(n1_bound, ell_bound, workers);
	if (gap_bound < 0) throw InvalidSpec("gap bound must be nonnegative");
	const bool certified = (mode == BoundMode::Rigorous);
	return with_precision_ladder(
	    [&](mpfr_prec_t p) {
		    FibData fib(p);
		    std::vector<ReductionProblem> subs;
		    for (const auto& [lo, hi] : ell_octaves(ell_bound)) {
			    RealInterval blo = fib.log_sqrt5 + RealInterval::exact(lo, p).log();
			    RealInterval bhi = fib.log_sqrt5 + RealInterval::exact(hi, p).log();
			    for (mpz_class d = 0; d <= gap_bound; ++d) {
				    ReductionProblem pr;
				    pr.thetas = {fib.log2v, fib.neg_log_alpha};
				    pr.variable_bounds = {hi, n1_bound};
				    RealInterval corr = -(fib.one + fib.inv_alpha.pow_ui(d.get_ui())).log();
				    pr.beta = (blo + corr).hull(bhi + corr);
				    pr.decay_scale = fib.abs_K;
				    pr.decay_base = fib.alpha;
				    pr.certified = certified;
				    subs.push_back(std::move(pr));
			    }
		    }
		    CampaignStage st;
		    st.name = "absolute";
		    st.subproblems = static_cast<int>(subs.size());
		    st.bound = run_stage(subs, workers, p, st.max_attempts_seen);
		    if (st.bound < 6) st.bound = 6; // chain regime floor
		    return st;
	    },
	    stage_precision(n1_bound, ell_bound, precision), kPrecisionCap);
}

CampaignReport fibonacci_reduction_campaign(BoundMode mode, int workers,
                                            mpfr_prec_t precision) {
	if (workers < 1) throw InvalidSpec("workers must be at least 1");
	BoundLedger led = fibonacci_bound_chain(mode, precision);
	const StageBound* absb = led.stage("absolute");
	const StageBound* ellb = led.stage("ell");
	if (!absb || !ellb || !absb->resolved || !ellb->resolved)
		throw Error("internal: bound chain is missing resolved stages");

	CampaignReport rep;
	rep.certified = (mode == BoundMode::Rigorous);
	rep.initial_bound = *absb->resolved;
	rep.initial_ell = *ellb->resolved;

	// all stages run at the precision the largest scale needs, so the
	// octave floors of later rounds reuse identical enclosures
	const mpfr_prec_t start = stage_precision(rep.initial_bound, rep.initial_ell, precision);

	mpz_class abs_bound = rep.initial_bound;
	mpz_class ell_bound = rep.initial_ell;
	mpz_class gap_bound = 0;
	for (int round = 1; round <= 2; ++round) {
		CampaignStage gap = fibonacci_gap_stage(abs_bound, ell_bound, mode, workers, start);
		gap.name = "round " + std::to_string(round) + " gap";
		if (round > 1 && gap.bound > gap_bound)
			throw Error("internal: gap stage failed to contract");
		gap_bound = gap.bound;
		rep.stages.push_back(std::move(gap));

		CampaignStage abs = fibonacci_absolute_stage(abs_bound, ell_bound, gap_bound, mode,
		                                             workers, start);
		abs.name = "round " + std::to_string(round) + " absolute";
		if (round > 1 && abs.bound > abs_bound)
			throw Error("internal: absolute stage failed to contract");
		abs_bound = abs.bound;
		rep.stages.push_back(std::move(abs));

		ell_bound = ceil_q(mpq_class(3 * abs_bound, 4));
		if (gap_bound > abs_bound) gap_bound = abs_bound;
	}
	rep.gap_bound = gap_bound;
	rep.absolute_bound = abs_bound;
	rep.notes.push_back(
	    "form floors feed |lambda| <= 2(2 sqrt 5 + 1) alpha^{n_2 - n_1} and "
	    "|lambda| <= 2(2 + sqrt 5) alpha^{-n_1}, valid for n_1 >= 6, ell >= 2");
	rep.notes.push_back(
	    rep.certified
	        ? "every subproblem carried the full octave width of its constant"
	        : "octave constants were taken at their midpoints, as published; "
	          "the resulting bounds are replay artifacts, not certificates");
	return rep;
}

} // namespace cullenrec

#include "cullenrec/lattice.hpp"

#include <algorithm>
#include <utility>

#include "cullenrec/errors.hpp"

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

mpz_class round_q(const mpq_class& q) { return floor_q(q + mpq_class(1, 2)); }

// Rational bracketing of sqrt(q) to ~2^-32, via the integer square root.
mpq_class sqrt_lower(const mpq_class& q) {
	if (q <= 0) return mpq_class(0);
	mpz_class nd = q.get_num() * q.get_den();
	mpz_class s = sqrt(mpz_class(nd << 64));
	mpq_class out(s, mpz_class(q.get_den() << 32));
	out.canonicalize();
	return out;
}

mpq_class sqrt_upper(const mpq_class& q) {
	if (q <= 0) return mpq_class(0);
	mpz_class nd = q.get_num() * q.get_den();
	mpz_class s = sqrt(mpz_class(nd << 64)) + 1;
	mpq_class out(s, mpz_class(q.get_den() << 32));
	out.canonicalize();
	return out;
}

struct GramSchmidt {
	std::vector<std::vector<mpq_class>> bstar;
	std::vector<std::vector<mpq_class>> mu; // mu[i][j] for j < i
	std::vector<mpq_class> B;               // ||b*_i||^2
};

GramSchmidt decompose(const std::vector<std::vector<mpz_class>>& basis) {
	const size_t m = basis.size(), n = basis[0].size();
	GramSchmidt g;
	g.bstar.assign(m, std::vector<mpq_class>(n, 0));
	g.mu.assign(m, std::vector<mpq_class>(m, 0));
	g.B.assign(m, 0);
	for (size_t i = 0; i < m; ++i) {
		for (size_t c = 0; c < n; ++c) g.bstar[i][c] = mpq_class(basis[i][c]);
		for (size_t j = 0; j < i; ++j) {
			mpq_class dot = 0;
			for (size_t c = 0; c < n; ++c) dot += mpq_class(basis[i][c]) * g.bstar[j][c];
			g.mu[i][j] = dot / g.B[j];
			for (size_t c = 0; c < n; ++c) g.bstar[i][c] -= g.mu[i][j] * g.bstar[j][c];
		}
		mpq_class norm = 0;
		for (size_t c = 0; c < n; ++c) norm += g.bstar[i][c] * g.bstar[i][c];
		if (norm == 0) throw SingularBasis("linearly dependent basis vectors");
		g.B[i] = norm;
	}
	return g;
}

// Depth-first Fincke-Pohst over Gram-Schmidt coordinates.  partial carries
// the exact contribution of levels > i plus the component of the target
// orthogonal to the basis span.
struct Enumerator {
	const GramSchmidt& g;
	const std::vector<mpq_class>& t; // target in Gram-Schmidt coordinates
	std::vector<mpz_class> cur;
	std::vector<mpz_class> best_x;
	mpq_class best;

	void run(size_t i, const mpq_class& partial) {
		mpq_class center = t[i];
		for (size_t j = i + 1; j < g.B.size(); ++j)
			center -= g.mu[j][i] * mpq_class(cur[j]);
		mpq_class budget = best - partial;
		if (budget < 0) return;
		mpq_class w = sqrt_upper(budget / g.B[i]);
		mpz_class hi = floor_q(center + w);
		for (mpz_class x = ceil_q(center - w); x <= hi; ++x) {
			mpq_class d = mpq_class(x) - center;
			mpq_class next = partial + g.B[i] * d * d;
			if (next > best) continue;
			cur[i] = x;
			if (i == 0) {
				if (next < best || best_x.empty()) {
					best = next;
					best_x = cur;
				}
			} else {
				run(i - 1, next);
			}
		}
	}
};

} // namespace

void IntegerLattice::validate() const {
	if (basis.empty()) throw InvalidSpec("empty lattice basis");
	const size_t n = basis[0].size();
	if (n == 0) throw InvalidSpec("lattice vectors must have positive dimension");
	for (const auto& v : basis)
		if (v.size() != n) throw InvalidSpec("lattice basis vectors differ in length");
	if (basis.size() > n) throw SingularBasis("more basis vectors than the ambient dimension");
}

IntegerLattice lll_reduce(IntegerLattice lattice) {
	lattice.validate();
	auto& b = lattice.basis;
	const size_t m = b.size();
	GramSchmidt g = decompose(b); // also certifies independence
	const mpq_class delta(3, 4);
	size_t k = 1;
	while (k < m) {
		// size-reduce b_k; b*_k and the norms are unchanged by this
		for (size_t j = k; j-- > 0;) {
			mpz_class r = round_q(g.mu[k][j]);
			if (r == 0) continue;
			mpq_class rq(r);
			for (size_t c = 0; c < b[k].size(); ++c) b[k][c] -= r * b[j][c];
			for (size_t j2 = 0; j2 < j; ++j2) g.mu[k][j2] -= rq * g.mu[j][j2];
			g.mu[k][j] -= rq;
		}
		if (g.B[k] >= (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.B[k - 1]) {
			++k;
		} else {
			std::swap(b[k], b[k - 1]);
			g = decompose(b);
			k = (k > 1) ? k - 1 : 1;
		}
	}
	return lattice;
}

mpq_class shortest_vector_floor(const IntegerLattice& reduced) {
	reduced.validate();
	mpz_class norm = 0;
	for (const auto& v : reduced.basis[0]) norm += v * v;
	if (norm == 0) throw SingularBasis("zero vector in a reduced basis");
	mpz_class pow2 = mpz_class(1) << static_cast<unsigned long>(reduced.rank() - 1);
	return sqrt_lower(mpq_class(norm, pow2));
}

ClosestVector closest_vector(const IntegerLattice& lattice,
                             const std::vector<mpz_class>& target) {
	lattice.validate();
	const auto& b = lattice.basis;
	const size_t m = b.size(), n = b[0].size();
	if (target.size() != n)
		throw InvalidSpec("target length does not match the lattice dimension");
	GramSchmidt g = decompose(b);

	std::vector<mpq_class> t(m);
	for (size_t i = 0; i < m; ++i) {
		mpq_class dot = 0;
		for (size_t c = 0; c < n; ++c) dot += mpq_class(target[c]) * g.bstar[i][c];
		t[i] = dot / g.B[i];
	}
	// Component of the target orthogonal to the basis span (zero for full rank).
	mpq_class residual = 0;
	for (size_t c = 0; c < n; ++c) {
		mpq_class r = mpq_class(target[c]);
		for (size_t i = 0; i < m; ++i) r -= t[i] * g.bstar[i][c];
		residual += r * r;
	}

	// Babai nearest-plane point seeds the enumeration radius.
	std::vector<mpz_class> x(m);
	for (size_t ii = m; ii-- > 0;) {
		mpq_class c = t[ii];
		for (size_t j = ii + 1; j < m; ++j) c -= g.mu[j][ii] * mpq_class(x[j]);
		x[ii] = round_q(c);
	}
	mpq_class babai = residual;
	for (size_t i = 0; i < m; ++i) {
		mpq_class c = t[i];
		for (size_t j = i + 1; j < m; ++j) c -= g.mu[j][i] * mpq_class(x[j]);
		mpq_class d = mpq_class(x[i]) - c;
		babai += g.B[i] * d * d;
	}

	Enumerator en{g, t, x, x, babai};
	en.run(m - 1, residual);

	// Cross-check the rational bookkeeping against the integer distance.
	ClosestVector out;
	out.coefficients = en.best_x;
	mpz_class dist = 0;
	for (size_t c = 0; c < n; ++c) {
		mpz_class v = -target[c];
		for (size_t i = 0; i < m; ++i) v += en.best_x[i] * b[i][c];
		dist += v * v;
	}
	if (mpq_class(dist) != en.best)
		throw Error("internal: closest-vector bookkeeping mismatch");
	out.distance_sq = dist;
	return out;
}

} // namespace cullenrec

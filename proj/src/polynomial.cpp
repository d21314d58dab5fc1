#include "cullenrec/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace cullenrec {

// --- IntPoly ----------------------------------------------------------------

IntPoly IntPoly::from_longs(const std::vector<long>& coeffs) {
	std::vector<mpz_class> c(coeffs.begin(), coeffs.end());
	return IntPoly(std::move(c));
}

void IntPoly::trim() {
	while (!c.empty() && c.back() == 0) c.pop_back();
}

mpz_class IntPoly::eval(const mpz_class& x) const {
	mpz_class acc = 0;
	for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
	return acc;
}

mpq_class IntPoly::eval(const mpq_class& x) const {
	mpq_class acc = 0;
	for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + mpq_class(*it);
	return acc;
}

RealInterval IntPoly::eval(const RealInterval& x) const {
	RealInterval acc = RealInterval::exact(0L, x.precision());
	for (auto it = c.rbegin(); it != c.rend(); ++it)
		acc = acc * x + RealInterval::exact(*it, x.precision());
	return acc;
}

ComplexInterval IntPoly::eval(const ComplexInterval& x) const {
	ComplexInterval acc(x.re.precision());
	for (auto it = c.rbegin(); it != c.rend(); ++it)
		acc = acc * x + ComplexInterval::exact_real(*it, x.re.precision());
	return acc;
}

IntPoly IntPoly::derivative() const {
	if (c.size() <= 1) return IntPoly();
	std::vector<mpz_class> d(c.size() - 1);
	for (size_t i = 1; i < c.size(); ++i) d[i - 1] = mpz_class(i) * c[i];
	return IntPoly(std::move(d));
}

IntPoly IntPoly::reversed(int deg) const {
	std::vector<mpz_class> r(deg + 1, 0);
	for (size_t i = 0; i < c.size() && static_cast<int>(i) <= deg; ++i)
		r[deg - i] = c[i];
	return IntPoly(std::move(r));
}

mpz_class IntPoly::content() const {
	mpz_class g = 0;
	for (const auto& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
	return g;
}

IntPoly IntPoly::primitive_part() const {
	if (is_zero()) return IntPoly();
	mpz_class g = content();
	if (leading() < 0) g = -g;
	std::vector<mpz_class> r(c.size());
	for (size_t i = 0; i < c.size(); ++i) r[i] = c[i] / g;
	return IntPoly(std::move(r));
}

mpq_class IntPoly::root_bound() const {
	if (degree() < 1) return 0;
	mpz_class m = 0;
	for (size_t i = 0; i + 1 < c.size(); ++i) {
		mpz_class a = ::abs(c[i]);
		if (a > m) m = a;
	}
	mpq_class b(m, ::abs(leading()));
	b.canonicalize();
	return b + 1;
}

std::string IntPoly::to_string(const std::string& var) const {
	if (is_zero()) return "0";
	std::ostringstream os;
	bool first = true;
	for (int i = degree(); i >= 0; --i) {
		const mpz_class& a = c[i];
		if (a == 0) continue;
		if (!first) os << (a > 0 ? " + " : " - ");
		else if (a < 0) os << "-";
		mpz_class m = ::abs(a);
		if (m != 1 || i == 0) os << m.get_str();
		if (i > 0) {
			if (m != 1) os << "*";
			os << var;
			if (i > 1) os << "^" << i;
		}
		first = false;
	}
	return os.str();
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
	std::vector<mpz_class> r(std::max(a.c.size(), b.c.size()), 0);
	for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
	for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
	return IntPoly(std::move(r));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
	std::vector<mpz_class> r(std::max(a.c.size(), b.c.size()), 0);
	for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
	for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
	return IntPoly(std::move(r));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
	if (a.is_zero() || b.is_zero()) return IntPoly();
	std::vector<mpz_class> r(a.c.size() + b.c.size() - 1, 0);
	for (size_t i = 0; i < a.c.size(); ++i)
		for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
	return IntPoly(std::move(r));
}

IntPoly operator*(const mpz_class& k, const IntPoly& a) {
	std::vector<mpz_class> r(a.c.size());
	for (size_t i = 0; i < a.c.size(); ++i) r[i] = k * a.c[i];
	return IntPoly(std::move(r));
}

std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b) {
	if (b.is_zero()) return std::nullopt;
	if (a.is_zero()) return IntPoly();
	if (a.degree() < b.degree()) return std::nullopt;
	std::vector<mpz_class> rem = a.c;
	std::vector<mpz_class> quo(a.degree() - b.degree() + 1, 0);
	for (int i = a.degree() - b.degree(); i >= 0; --i) {
		mpz_class& lead = rem[i + b.degree()];
		if (lead == 0) continue;
		if (lead % b.leading() != 0) return std::nullopt;
		mpz_class q = lead / b.leading();
		quo[i] = q;
		for (int j = 0; j <= b.degree(); ++j) rem[i + j] -= q * b.c[j];
	}
	for (const auto& x : rem)
		if (x != 0) return std::nullopt;
	return IntPoly(std::move(quo));
}

// --- RatPoly ----------------------------------------------------------------

RatPoly RatPoly::of(const IntPoly& p) {
	std::vector<mpq_class> c(p.c.size());
	for (size_t i = 0; i < p.c.size(); ++i) c[i] = mpq_class(p.c[i]);
	return RatPoly(std::move(c));
}

void RatPoly::trim() {
	while (!c.empty() && c.back() == 0) c.pop_back();
}

RatPoly RatPoly::monic() const {
	if (is_zero()) return RatPoly();
	std::vector<mpq_class> r(c.size());
	for (size_t i = 0; i < c.size(); ++i) r[i] = c[i] / c.back();
	return RatPoly(std::move(r));
}

RatPoly RatPoly::derivative() const {
	if (c.size() <= 1) return RatPoly();
	std::vector<mpq_class> d(c.size() - 1);
	for (size_t i = 1; i < c.size(); ++i) d[i - 1] = mpq_class(static_cast<long>(i)) * c[i];
	return RatPoly(std::move(d));
}

mpq_class RatPoly::eval(const mpq_class& x) const {
	mpq_class acc = 0;
	for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
	return acc;
}

IntPoly RatPoly::primitive_integer() const {
	if (is_zero()) return IntPoly();
	mpz_class den = 1;
	for (const auto& q : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
	std::vector<mpz_class> r(c.size());
	for (size_t i = 0; i < c.size(); ++i) {
		mpq_class s = c[i] * mpq_class(den);
		r[i] = s.get_num(); // denominator is 1 after scaling
	}
	return IntPoly(std::move(r)).primitive_part();
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
	std::vector<mpq_class> r(std::max(a.c.size(), b.c.size()), 0);
	for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
	for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
	return RatPoly(std::move(r));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
	std::vector<mpq_class> r(std::max(a.c.size(), b.c.size()), 0);
	for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
	for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
	return RatPoly(std::move(r));
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
	if (a.is_zero() || b.is_zero()) return RatPoly();
	std::vector<mpq_class> r(a.c.size() + b.c.size() - 1, 0);
	for (size_t i = 0; i < a.c.size(); ++i)
		for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
	return RatPoly(std::move(r));
}

void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r) {
	if (b.is_zero()) throw InvalidSpec("polynomial division by zero");
	std::vector<mpq_class> rem = a.c;
	std::vector<mpq_class> quo;
	if (a.degree() >= b.degree()) quo.assign(a.degree() - b.degree() + 1, 0);
	for (int i = static_cast<int>(rem.size()) - 1 - b.degree(); i >= 0; --i) {
		mpq_class f = rem[i + b.degree()] / b.c.back();
		if (f == 0) continue;
		quo[i] = f;
		for (int j = 0; j <= b.degree(); ++j) rem[i + j] -= f * b.c[j];
	}
	q = RatPoly(std::move(quo));
	r = RatPoly(std::move(rem));
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
	RatPoly x = a, y = b;
	while (!y.is_zero()) {
		RatPoly q, r;
		divmod(x, y, q, r);
		x = y;
		y = r;
	}
	return x.monic();
}

std::vector<IntPoly> squarefree_decomposition(const IntPoly& p) {
	if (p.degree() < 1) return {};
	RatPoly f = RatPoly::of(p).monic();
	RatPoly fp = f.derivative();
	RatPoly g = gcd(f, fp);
	std::vector<IntPoly> out;
	if (g.degree() == 0) {
		out.push_back(p.primitive_part());
		return out;
	}
	RatPoly q, r;
	divmod(f, g, q, r);
	RatPoly c = q; // f / g
	divmod(fp, g, q, r);
	RatPoly d = q - c.derivative(); // f'/g - c'
	while (c.degree() > 0) {
		RatPoly a = gcd(c, d);
		out.push_back(a.degree() > 0 ? a.primitive_integer()
		                             : IntPoly(std::vector<mpz_class>{1}));
		divmod(c, a, q, r);
		c = q;
		divmod(d, a, q, r);
		d = q - c.derivative();
	}
	return out;
}

// --- root finding over Q, irreducibility ------------------------------------

namespace {

// Divisors of |n| by trial division; empty when n has an unfactored composite
// cofactor beyond the trial bound (callers treat that as "inconclusive").
std::vector<mpz_class> divisors(mpz_class n, unsigned long trial_bound = 1000000) {
	n = ::abs(n);
	if (n == 0) return {};
	std::vector<std::pair<mpz_class, int>> fac;
	for (unsigned long d = 2; mpz_class(d) * d <= n && d <= trial_bound; d += (d == 2 ? 1 : 2)) {
		if (n % d == 0) {
			int e = 0;
			while (n % d == 0) {
				n /= d;
				++e;
			}
			fac.emplace_back(d, e);
		}
	}
	if (n > 1) {
		if (mpz_probab_prime_p(n.get_mpz_t(), 32) == 0 && n > mpz_class(trial_bound) * trial_bound)
			return {}; // composite cofactor we refuse to factor
		fac.emplace_back(n, 1);
	}
	std::vector<mpz_class> divs{1};
	for (const auto& [p, e] : fac) {
		size_t base = divs.size();
		mpz_class pk = 1;
		for (int i = 1; i <= e; ++i) {
			pk *= p;
			for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
		}
	}
	std::sort(divs.begin(), divs.end());
	return divs;
}

// F_p[x] helpers with small primes; coefficients in [0, p).
using ModPoly = std::vector<long>;

void mod_trim(ModPoly& a) {
	while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly mod_mul(const ModPoly& a, const ModPoly& b, long p) {
	if (a.empty() || b.empty()) return {};
	ModPoly r(a.size() + b.size() - 1, 0);
	for (size_t i = 0; i < a.size(); ++i) {
		if (a[i] == 0) continue;
		for (size_t j = 0; j < b.size(); ++j)
			r[i + j] = (r[i + j] + a[i] * b[j]) % p;
	}
	mod_trim(r);
	return r;
}

long mod_inv(long a, long p) {
	long t = 0, nt = 1, r = p, nr = a % p;
	while (nr != 0) {
		long q = r / nr;
		std::swap(t -= q * nt, nt);
		std::swap(r -= q * nr, nr);
	}
	return ((t % p) + p) % p;
}

ModPoly mod_rem(ModPoly a, const ModPoly& m, long p) {
	long inv = mod_inv(m.back(), p);
	while (a.size() >= m.size()) {
		long f = a.back() * inv % p;
		size_t off = a.size() - m.size();
		if (f != 0)
			for (size_t j = 0; j < m.size(); ++j)
				a[off + j] = ((a[off + j] - f * m[j]) % p + p) % p;
		a.pop_back();
		mod_trim(a);
		if (a.size() < m.size()) break;
	}
	return a;
}

ModPoly mod_gcd(ModPoly a, ModPoly b, long p) {
	while (!b.empty()) {
		ModPoly r = mod_rem(a, b, p);
		a = b;
		b = r;
	}
	if (!a.empty()) {
		long inv = mod_inv(a.back(), p);
		for (auto& x : a) x = x * inv % p;
	}
	return a;
}

// x^(p^k) mod m, via k successive p-th powers.
ModPoly mod_frobenius(const ModPoly& m, long p, int k) {
	ModPoly x{0, 1};
	ModPoly acc = mod_rem(x, m, p);
	for (int i = 0; i < k; ++i) {
		// acc <- acc^p mod m by square-and-multiply on the exponent p
		ModPoly result{1};
		ModPoly base = acc;
		long e = p;
		while (e > 0) {
			if (e & 1) result = mod_rem(mod_mul(result, base, p), m, p);
			base = mod_rem(mod_mul(base, base, p), m, p);
			e >>= 1;
		}
		acc = result;
	}
	return acc;
}

ModPoly mod_sub(ModPoly a, const ModPoly& b, long p) {
	if (a.size() < b.size()) a.resize(b.size(), 0);
	for (size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
	mod_trim(a);
	return a;
}

// Certified irreducibility of f over F_p (false may mean "not squarefree").
bool mod_p_irreducible(const IntPoly& f, long p) {
	int n = f.degree();
	ModPoly m(n + 1);
	for (int i = 0; i <= n; ++i) {
		mpz_class r = f.c[i] % p;
		m[i] = r.get_si();
		if (m[i] < 0) m[i] += p;
	}
	mod_trim(m);
	if (static_cast<int>(m.size()) - 1 != n) return false; // degree dropped mod p
	// squarefree check
	ModPoly d(n, 0);
	for (int i = 1; i <= n; ++i) d[i - 1] = (m[i] * (i % p)) % p;
	mod_trim(d);
	if (d.empty() || mod_gcd(m, d, p).size() != 1) return false;
	// x^(p^n) == x (mod m) and gcd(x^(p^(n/q)) - x, m) == 1 for primes q | n
	ModPoly x{0, 1};
	ModPoly fr = mod_frobenius(m, p, n);
	if (mod_sub(fr, x, p) != ModPoly{}) return false;
	for (int q = 2; q <= n; ++q) {
		if (n % q != 0) continue;
		bool isprime = true;
		for (int t = 2; t * t <= q; ++t)
			if (q % t == 0) isprime = false;
		if (!isprime) continue;
		ModPoly g = mod_sub(mod_frobenius(m, p, n / q), x, p);
		if (g.empty()) return false;
		if (mod_gcd(m, g, p).size() != 1) return false;
	}
	return true;
}

} // namespace

std::vector<mpq_class> rational_roots(const IntPoly& poly) {
	std::vector<mpq_class> roots;
	IntPoly p = poly.primitive_part();
	if (p.degree() < 1) return roots;
	// strip x^v
	size_t v = 0;
	while (v < p.c.size() && p.c[v] == 0) ++v;
	if (v > 0) {
		roots.emplace_back(0);
		p = IntPoly(std::vector<mpz_class>(p.c.begin() + v, p.c.end()));
		if (p.degree() < 1) return roots;
	}
	auto nums = divisors(p.c[0]);
	auto dens = divisors(p.leading());
	for (const auto& r : nums)
		for (const auto& s : dens) {
			mpq_class cand(r, s);
			cand.canonicalize();
			if (p.eval(cand) == 0) roots.push_back(cand);
			cand = -cand;
			if (p.eval(cand) == 0) roots.push_back(cand);
		}
	std::sort(roots.begin(), roots.end());
	roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
	return roots;
}

std::optional<bool> irreducible_over_q(const IntPoly& poly) {
	IntPoly p = poly.primitive_part();
	int n = p.degree();
	if (n <= 0) return false; // constants are units/zero, not irreducible
	if (n == 1) return true;
	if (p.c[0] == 0) return false; // x divides
	// repeated factors mean reducible
	RatPoly f = RatPoly::of(p);
	if (gcd(f, f.derivative()).degree() > 0) return false;
	auto nums = divisors(p.c[0]);
	auto dens = divisors(p.leading());
	if (nums.empty() || dens.empty()) {
		// could not factor the edge coefficients; fall back to mod-p certificates
		for (long q : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L})
			if (p.leading() % q != 0 && mod_p_irreducible(p, q)) return true;
		return std::nullopt;
	}
	if (!rational_roots(p).empty()) return false;
	if (n <= 3) return true; // no rational root: irreducible for degrees 2, 3
	if (n == 4) {
		// monic-normalized quadratic factor search: p = lc * (x^2+bx+c)(...) is
		// too loose for general lc, so enumerate a*x^2 + b*x + c with a | lc,
		// c | c0 and |b| within twice the root bound's scale.
		mpq_class rb = p.root_bound();
		mpz_class bcap = 2 * (rb.get_num() / rb.get_den() + 1);
		for (const auto& a0 : divisors(p.leading()))
			for (int sa = 0; sa < 2; ++sa) {
				mpz_class a = sa ? -a0 : a0;
				for (const auto& c0 : divisors(p.c[0]))
					for (int sc = 0; sc < 2; ++sc) {
						mpz_class cc = sc ? -c0 : c0;
						mpz_class blim = bcap * ::abs(a);
						for (mpz_class b = -blim; b <= blim; ++b) {
							IntPoly quad(std::vector<mpz_class>{cc, b, a});
							auto q = divide_exact(p, quad);
							if (q.has_value()) return false;
						}
					}
			}
		return true;
	}
	// degree >= 5: small-prime certificates only
	for (long q : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L})
		if (p.leading() % q != 0 && mod_p_irreducible(p, q)) return true;
	return std::nullopt;
}

} // namespace cullenrec

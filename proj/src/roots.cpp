#include "cullenrec/roots.hpp"

#include <algorithm>
#include <cmath>

#include "cullenrec/errors.hpp"

namespace cullenrec {

namespace {

// Midpoint complex arithmetic on GMP floats for the Aberth iteration; no
// rounding control needed here because every iterate is certified afterwards.
struct Cf {
	mpf_class re, im;

	Cf() = default;
	Cf(mpf_class r, mpf_class i) : re(std::move(r)), im(std::move(i)) {}
};

Cf operator+(const Cf& a, const Cf& b) { return {a.re + b.re, a.im + b.im}; }
Cf operator-(const Cf& a, const Cf& b) { return {a.re - b.re, a.im - b.im}; }
Cf operator*(const Cf& a, const Cf& b) {
	return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
mpf_class norm(const Cf& a) { return a.re * a.re + a.im * a.im; }
Cf operator/(const Cf& a, const Cf& b) {
	mpf_class d = norm(b);
	return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

Cf eval_mid(const std::vector<mpf_class>& coeffs, const Cf& z) {
	Cf acc(mpf_class(0, z.re.get_prec()), mpf_class(0, z.re.get_prec()));
	for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
		acc = acc * z;
		acc.re += *it;
	}
	return acc;
}

// Aberth-Ehrlich iteration: simultaneous refinement of all d root
// approximations of a squarefree polynomial.
std::vector<Cf> aberth(const IntPoly& p, mpfr_prec_t prec) {
	const int d = p.degree();
	const unsigned long work = static_cast<unsigned long>(prec) + 64;
	std::vector<mpf_class> pc, dc;
	for (const auto& v : p.c) pc.emplace_back(v, work);
	const IntPoly dp = p.derivative();
	for (const auto& v : dp.c) dc.emplace_back(v, work);

	// Seeds on a slightly perturbed circle of the Cauchy radius.
	const double radius = mpq_class(p.root_bound()).get_d();
	std::vector<Cf> z;
	for (int k = 0; k < d; ++k) {
		double th = 2.0 * 3.14159265358979323846 * (k + 0.25) / d + 0.42;
		z.emplace_back(mpf_class(radius * std::cos(th), work),
		               mpf_class(radius * std::sin(th), work));
	}

	mpf_class eps(1, work);
	eps >>= static_cast<unsigned long>(prec) + 16;
	for (int iter = 0; iter < 600; ++iter) {
		mpf_class worst(0, work);
		for (int i = 0; i < d; ++i) {
			Cf pv = eval_mid(pc, z[i]);
			Cf dv = eval_mid(dc, z[i]);
			if (norm(dv) == 0) { // nudge off a critical point
				z[i].re += eps;
				z[i].im += eps;
				worst = 1;
				continue;
			}
			Cf newton = pv / dv;
			Cf s(mpf_class(0, work), mpf_class(0, work));
			bool collided = false;
			for (int j = 0; j < d; ++j) {
				if (j == i) continue;
				Cf diff = z[i] - z[j];
				if (norm(diff) == 0) { collided = true; break; }
				s = s + Cf(mpf_class(1, work), mpf_class(0, work)) / diff;
			}
			if (collided) {
				z[i].re += eps;
				z[i].im -= eps;
				worst = 1;
				continue;
			}
			Cf denom = Cf(mpf_class(1, work), mpf_class(0, work)) - newton * s;
			Cf step = norm(denom) == 0 ? newton : newton / denom;
			z[i] = z[i] - step;
			mpf_class rel = norm(step) / (1 + norm(z[i]));
			if (rel > worst) worst = rel;
		}
		if (worst < eps * eps) break;
	}
	return z;
}

mpq_class exact_rational(const mpf_class& f) {
	mpq_class q;
	mpq_set_f(q.get_mpq_t(), f.get_mpf_t());
	return q;
}

ComplexInterval exact_point(const mpq_class& re, const mpq_class& im, mpfr_prec_t prec) {
	return ComplexInterval(RealInterval::of_endpoints(re, re, prec),
	                       RealInterval::of_endpoints(im, im, prec));
}

// Certified enclosures for one squarefree factor: Weierstrass disks around the
// Aberth iterates, returned as axis-aligned boxes.  Throws PrecisionExhausted
// when the disks are not pairwise disjoint at this precision.
std::vector<ComplexInterval> certify_factor(const IntPoly& p,
                                            const std::vector<Cf>& approx,
                                            mpfr_prec_t prec) {
	const int d = p.degree();
	std::vector<mpq_class> re(d), im(d);
	for (int i = 0; i < d; ++i) {
		re[i] = exact_rational(approx[i].re);
		im[i] = exact_rational(approx[i].im);
	}
	const ComplexInterval lc = ComplexInterval::exact_real(p.leading(), prec);
	std::vector<ComplexInterval> boxes;
	for (int i = 0; i < d; ++i) {
		ComplexInterval zi = exact_point(re[i], im[i], prec);
		ComplexInterval denom = lc;
		for (int j = 0; j < d; ++j) {
			if (j == i) continue;
			denom = denom * (zi - exact_point(re[j], im[j], prec));
		}
		ComplexInterval w = p.eval(zi) / denom;
		mpq_class r = mpz_class(d) * w.abs().hi_rational();
		boxes.emplace_back(RealInterval::of_endpoints(re[i] - r, re[i] + r, prec),
		                   RealInterval::of_endpoints(im[i] - r, im[i] + r, prec));
	}
	for (int i = 0; i < d; ++i)
		for (int j = i + 1; j < d; ++j)
			if (!boxes[i].disjoint_from(boxes[j]))
				throw PrecisionExhausted("root enclosures overlap within a factor");
	return boxes;
}

ComplexInterval conj_box(const ComplexInterval& b) {
	return b.conj();
}

RootEnclosure make_enclosure(ComplexInterval box, bool real, int multiplicity,
                             mpfr_prec_t prec) {
	RootEnclosure e;
	if (real) box.im = RealInterval::exact(0L, prec);
	e.is_real = real;
	e.multiplicity = multiplicity;
	e.modulus = real ? box.re.abs() : box.abs();
	e.enclosure = std::move(box);
	return e;
}

std::vector<RootEnclosure> isolate_at(const IntPoly& poly, mpfr_prec_t prec) {
	std::vector<RootEnclosure> out;
	const auto factors = squarefree_decomposition(poly);
	for (size_t fi = 0; fi < factors.size(); ++fi) {
		const IntPoly& f = factors[fi];
		const int mult = static_cast<int>(fi) + 1;
		if (f.degree() < 1) continue;
		if (f.degree() == 1) {
			mpq_class root(-f.c[0], f.c[1]);
			root.canonicalize();
			RealInterval r = RealInterval::of_endpoints(root, root, prec);
			ComplexInterval box(r, RealInterval::exact(0L, prec));
			out.push_back(make_enclosure(std::move(box), true, mult, prec));
			continue;
		}
		auto approx = aberth(f, prec);
		auto boxes = certify_factor(f, approx, prec);
		// Realness by conjugate accounting within this factor: the conjugate
		// of the unique root in a box is again a root of f, so if the
		// mirrored box meets no sibling, that root is self-conjugate.
		for (size_t i = 0; i < boxes.size(); ++i) {
			bool real;
			if (!boxes[i].im.contains_zero()) {
				real = false;
			} else {
				real = true;
				ComplexInterval mirror = conj_box(boxes[i]);
				for (size_t j = 0; j < boxes.size(); ++j) {
					if (j == i) continue;
					if (!mirror.disjoint_from(boxes[j]))
						throw PrecisionExhausted("conjugate accounting inconclusive");
				}
			}
			out.push_back(make_enclosure(boxes[i], real, mult, prec));
		}
	}
	// Roots of coprime factors are distinct; their enclosures must separate.
	for (size_t i = 0; i < out.size(); ++i)
		for (size_t j = i + 1; j < out.size(); ++j)
			if (!out[i].enclosure.disjoint_from(out[j].enclosure))
				throw PrecisionExhausted("root enclosures overlap across factors");
	int total = 0;
	for (const auto& e : out) total += e.multiplicity;
	if (total != poly.degree())
		throw Error("internal: multiplicities do not sum to the degree");
	std::sort(out.begin(), out.end(), [](const RootEnclosure& a, const RootEnclosure& b) {
		mpq_class ma = a.modulus.hi_rational(), mb = b.modulus.hi_rational();
		if (ma != mb) return ma > mb;
		mpq_class ra = a.enclosure.re.lo_rational(), rb = b.enclosure.re.lo_rational();
		if (ra != rb) return ra > rb;
		return a.enclosure.im.lo_rational() > b.enclosure.im.lo_rational();
	});
	return out;
}

} // namespace

std::vector<RootEnclosure> isolate_roots(const IntPoly& poly, mpfr_prec_t precision) {
	if (poly.degree() < 1) throw InvalidSpec("root isolation requires a nonconstant polynomial");
	if (precision < 64) precision = 64;
	return with_precision_ladder(
	    [&](mpfr_prec_t p) { return isolate_at(poly, p); }, precision);
}

} // namespace cullenrec

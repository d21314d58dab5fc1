#include "cullenrec/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cullenrec {

namespace {

// mpq from an mpfr value that is known to be finite.
mpq_class mpq_from_mpfr(const mpfr_t x) {
	if (!mpfr_number_p(x)) throw PrecisionExhausted("non-finite interval endpoint");
	mpq_t q;
	mpq_init(q);
	mpfr_get_q(q, x);
	mpq_class out(q);
	mpq_clear(q);
	return out;
}

} // namespace

RealInterval::RealInterval(mpfr_prec_t prec) : prec_(prec) {
	mpfr_init2(lo_, prec);
	mpfr_init2(hi_, prec);
	mpfr_set_zero(lo_, 1);
	mpfr_set_zero(hi_, 1);
}

RealInterval::RealInterval(const RealInterval& other) : prec_(other.prec_) {
	mpfr_init2(lo_, prec_);
	mpfr_init2(hi_, prec_);
	mpfr_set(lo_, other.lo_, MPFR_RNDD);
	mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

RealInterval::RealInterval(RealInterval&& other) noexcept : prec_(other.prec_) {
	mpfr_init2(lo_, 2); // minimal placeholders so other stays destructible
	mpfr_init2(hi_, 2);
	mpfr_swap(lo_, other.lo_);
	mpfr_swap(hi_, other.hi_);
}

RealInterval& RealInterval::operator=(const RealInterval& other) {
	if (this == &other) return *this;
	if (prec_ != other.prec_) {
		mpfr_set_prec(lo_, other.prec_);
		mpfr_set_prec(hi_, other.prec_);
		prec_ = other.prec_;
	}
	mpfr_set(lo_, other.lo_, MPFR_RNDD);
	mpfr_set(hi_, other.hi_, MPFR_RNDU);
	return *this;
}

RealInterval& RealInterval::operator=(RealInterval&& other) noexcept {
	mpfr_swap(lo_, other.lo_);
	mpfr_swap(hi_, other.hi_);
	std::swap(prec_, other.prec_);
	return *this;
}

RealInterval::~RealInterval() {
	mpfr_clear(lo_);
	mpfr_clear(hi_);
}

RealInterval RealInterval::exact(long v, mpfr_prec_t prec) {
	RealInterval r(prec);
	mpfr_set_si(r.lo_, v, MPFR_RNDD);
	mpfr_set_si(r.hi_, v, MPFR_RNDU);
	return r;
}

RealInterval RealInterval::exact(const mpz_class& v, mpfr_prec_t prec) {
	RealInterval r(prec);
	mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
	mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
	return r;
}

RealInterval RealInterval::of_rational(const mpq_class& v, mpfr_prec_t prec) {
	RealInterval r(prec);
	mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
	mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
	return r;
}

RealInterval RealInterval::of_string(const std::string& s, mpfr_prec_t prec) {
	RealInterval r(prec);
	if (mpfr_set_str(r.lo_, s.c_str(), 10, MPFR_RNDD) != 0)
		throw InvalidSpec("unparsable number: " + s);
	mpfr_set_str(r.hi_, s.c_str(), 10, MPFR_RNDU);
	return r;
}

RealInterval RealInterval::of_double(double v, mpfr_prec_t prec) {
	RealInterval r(prec);
	mpfr_set_d(r.lo_, v, MPFR_RNDD);
	mpfr_set_d(r.hi_, v, MPFR_RNDU);
	return r;
}

RealInterval RealInterval::of_endpoints(const mpq_class& lo, const mpq_class& hi,
                                        mpfr_prec_t prec) {
	if (lo > hi) throw InvalidSpec("interval endpoints out of order");
	RealInterval r(prec);
	mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
	mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
	return r;
}

double RealInterval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double RealInterval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
mpq_class RealInterval::lo_rational() const { return mpq_from_mpfr(lo_); }
mpq_class RealInterval::hi_rational() const { return mpq_from_mpfr(hi_); }

bool RealInterval::contains_zero() const {
	return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool RealInterval::contains(const mpq_class& v) const {
	return mpfr_cmp_q(lo_, v.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, v.get_mpq_t()) >= 0;
}

bool RealInterval::contains(const RealInterval& other) const {
	return mpfr_cmp(lo_, other.lo_) <= 0 && mpfr_cmp(hi_, other.hi_) >= 0;
}

bool RealInterval::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool RealInterval::is_negative() const { return mpfr_sgn(hi_) < 0; }
bool RealInterval::is_nonnegative() const { return mpfr_sgn(lo_) >= 0; }

bool RealInterval::strictly_below(const RealInterval& other) const {
	return mpfr_cmp(hi_, other.lo_) < 0;
}

bool RealInterval::overlaps(const RealInterval& other) const {
	return !(strictly_below(other) || other.strictly_below(*this));
}

double RealInterval::width_upper() const {
	mpfr_t w;
	mpfr_init2(w, 64);
	mpfr_sub(w, hi_, lo_, MPFR_RNDU);
	double d = mpfr_get_d(w, MPFR_RNDU);
	mpfr_clear(w);
	return d;
}

mpz_class RealInterval::floor_unambiguous(bool& ok) const {
	mpz_class flo, fhi;
	mpfr_get_z(flo.get_mpz_t(), lo_, MPFR_RNDD);
	mpfr_get_z(fhi.get_mpz_t(), hi_, MPFR_RNDD);
	ok = (flo == fhi);
	return flo;
}

mpz_class RealInterval::round_mid() const {
	mpfr_t mid;
	mpfr_init2(mid, prec_ + 1);
	mpfr_add(mid, lo_, hi_, MPFR_RNDN);
	mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
	mpz_class out;
	mpfr_get_z(out.get_mpz_t(), mid, MPFR_RNDN);
	mpfr_clear(mid);
	return out;
}

mpfr_prec_t RealInterval::join_prec(const RealInterval& a, const RealInterval& b) {
	return std::max(a.prec_, b.prec_);
}

RealInterval operator+(const RealInterval& a, const RealInterval& b) {
	RealInterval r(RealInterval::join_prec(a, b));
	mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
	mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
	return r;
}

RealInterval operator-(const RealInterval& a, const RealInterval& b) {
	RealInterval r(RealInterval::join_prec(a, b));
	mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
	mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
	return r;
}

RealInterval operator*(const RealInterval& a, const RealInterval& b) {
	RealInterval r(RealInterval::join_prec(a, b));
	mpfr_t t, best;
	mpfr_init2(t, r.prec_);
	mpfr_init2(best, r.prec_);

	const __mpfr_struct* as[2] = {a.lo_, a.hi_};
	const __mpfr_struct* bs[2] = {b.lo_, b.hi_};

	// lower endpoint: min of the four products, each rounded down
	bool first = true;
	for (const auto* x : as)
		for (const auto* y : bs) {
			mpfr_mul(t, x, y, MPFR_RNDD);
			if (first || mpfr_cmp(t, best) < 0) mpfr_set(best, t, MPFR_RNDD);
			first = false;
		}
	mpfr_set(r.lo_, best, MPFR_RNDD);

	// upper endpoint: max of the four products, each rounded up
	first = true;
	for (const auto* x : as)
		for (const auto* y : bs) {
			mpfr_mul(t, x, y, MPFR_RNDU);
			if (first || mpfr_cmp(t, best) > 0) mpfr_set(best, t, MPFR_RNDU);
			first = false;
		}
	mpfr_set(r.hi_, best, MPFR_RNDU);

	mpfr_clear(t);
	mpfr_clear(best);
	return r;
}

RealInterval operator/(const RealInterval& a, const RealInterval& b) {
	if (b.contains_zero())
		throw PrecisionExhausted("division by an interval containing zero");
	RealInterval r(RealInterval::join_prec(a, b));
	mpfr_t t, best;
	mpfr_init2(t, r.prec_);
	mpfr_init2(best, r.prec_);

	const __mpfr_struct* as[2] = {a.lo_, a.hi_};
	const __mpfr_struct* bs[2] = {b.lo_, b.hi_};

	bool first = true;
	for (const auto* x : as)
		for (const auto* y : bs) {
			mpfr_div(t, x, y, MPFR_RNDD);
			if (first || mpfr_cmp(t, best) < 0) mpfr_set(best, t, MPFR_RNDD);
			first = false;
		}
	mpfr_set(r.lo_, best, MPFR_RNDD);

	first = true;
	for (const auto* x : as)
		for (const auto* y : bs) {
			mpfr_div(t, x, y, MPFR_RNDU);
			if (first || mpfr_cmp(t, best) > 0) mpfr_set(best, t, MPFR_RNDU);
			first = false;
		}
	mpfr_set(r.hi_, best, MPFR_RNDU);

	mpfr_clear(t);
	mpfr_clear(best);
	return r;
}

RealInterval RealInterval::operator-() const {
	RealInterval r(prec_);
	mpfr_neg(r.lo_, hi_, MPFR_RNDD);
	mpfr_neg(r.hi_, lo_, MPFR_RNDU);
	return r;
}

RealInterval& RealInterval::operator+=(const RealInterval& b) { return *this = *this + b; }
RealInterval& RealInterval::operator-=(const RealInterval& b) { return *this = *this - b; }
RealInterval& RealInterval::operator*=(const RealInterval& b) { return *this = *this * b; }
RealInterval& RealInterval::operator/=(const RealInterval& b) { return *this = *this / b; }

RealInterval RealInterval::abs() const {
	RealInterval r(prec_);
	if (is_nonnegative()) return *this;
	if (mpfr_sgn(hi_) <= 0) return -*this;
	// straddles zero: [0, max(-lo, hi)]
	mpfr_set_zero(r.lo_, 1);
	mpfr_neg(r.hi_, lo_, MPFR_RNDU);
	if (mpfr_cmp(hi_, r.hi_) > 0) mpfr_set(r.hi_, hi_, MPFR_RNDU);
	return r;
}

RealInterval RealInterval::sqrt() const {
	if (mpfr_sgn(lo_) < 0)
		throw PrecisionExhausted("sqrt of an interval extending below zero");
	RealInterval r(prec_);
	mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
	mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
	return r;
}

RealInterval RealInterval::log() const {
	if (mpfr_sgn(lo_) <= 0)
		throw PrecisionExhausted("log of an interval touching zero");
	RealInterval r(prec_);
	mpfr_log(r.lo_, lo_, MPFR_RNDD);
	mpfr_log(r.hi_, hi_, MPFR_RNDU);
	return r;
}

RealInterval RealInterval::exp() const {
	RealInterval r(prec_);
	mpfr_exp(r.lo_, lo_, MPFR_RNDD);
	mpfr_exp(r.hi_, hi_, MPFR_RNDU);
	return r;
}

RealInterval RealInterval::pow_ui(unsigned long e) const {
	// Repeated interval multiplication handles sign changes correctly.
	RealInterval acc = RealInterval::exact(1L, prec_);
	RealInterval base = *this;
	while (e > 0) {
		if (e & 1UL) acc = acc * base;
		e >>= 1UL;
		if (e > 0) base = base * base;
	}
	return acc;
}

RealInterval RealInterval::max_with(const RealInterval& other) const {
	RealInterval r(join_prec(*this, other));
	mpfr_max(r.lo_, lo_, other.lo_, MPFR_RNDD);
	mpfr_max(r.hi_, hi_, other.hi_, MPFR_RNDU);
	return r;
}

RealInterval RealInterval::min_with(const RealInterval& other) const {
	RealInterval r(join_prec(*this, other));
	mpfr_min(r.lo_, lo_, other.lo_, MPFR_RNDD);
	mpfr_min(r.hi_, hi_, other.hi_, MPFR_RNDU);
	return r;
}

RealInterval RealInterval::hull(const RealInterval& other) const {
	RealInterval r(join_prec(*this, other));
	mpfr_min(r.lo_, lo_, other.lo_, MPFR_RNDD);
	mpfr_max(r.hi_, hi_, other.hi_, MPFR_RNDU);
	return r;
}

RealInterval RealInterval::rounded_to(mpfr_prec_t prec) const {
	RealInterval r(prec);
	mpfr_set(r.lo_, lo_, MPFR_RNDD);
	mpfr_set(r.hi_, hi_, MPFR_RNDU);
	return r;
}

namespace {
std::string mpfr_to_decimal(const mpfr_t x, int digits, mpfr_rnd_t rnd) {
	char buf[512];
	mpfr_snprintf(buf, sizeof buf, "%.*R*e", digits, rnd, x);
	return std::string(buf);
}
} // namespace

std::string RealInterval::lo_string(int digits) const {
	return mpfr_to_decimal(lo_, digits, MPFR_RNDD);
}

std::string RealInterval::hi_string(int digits) const {
	return mpfr_to_decimal(hi_, digits, MPFR_RNDU);
}

std::string RealInterval::to_string(int digits) const {
	return "[" + lo_string(digits) + ", " + hi_string(digits) + "]";
}

// --- ComplexInterval -------------------------------------------------------

bool ComplexInterval::is_exact_real() const {
	return mpfr_zero_p(im.lo()) && mpfr_zero_p(im.hi());
}

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
	return ComplexInterval(a.re + b.re, a.im + b.im);
}

ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
	return ComplexInterval(a.re - b.re, a.im - b.im);
}

ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
	return ComplexInterval(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
	RealInterval den = b.re * b.re + b.im * b.im;
	if (den.contains_zero())
		throw PrecisionExhausted("complex division by an enclosure containing zero");
	return ComplexInterval((a.re * b.re + a.im * b.im) / den,
	                       (a.im * b.re - a.re * b.im) / den);
}

ComplexInterval ComplexInterval::operator-() const {
	return ComplexInterval(-re, -im);
}

ComplexInterval ComplexInterval::conj() const {
	return ComplexInterval(re, -im);
}

RealInterval ComplexInterval::abs() const {
	if (is_exact_real()) return re.abs();
	return abs_sq().sqrt();
}

RealInterval ComplexInterval::abs_sq() const {
	// Square via |.| so a zero-straddling component still gives a
	// nonnegative (and tight) enclosure.
	RealInterval ra = re.abs(), ia = im.abs();
	return ra * ra + ia * ia;
}

ComplexInterval ComplexInterval::pow_ui(unsigned long e) const {
	ComplexInterval acc = exact_real(1, re.precision());
	ComplexInterval base = *this;
	while (e > 0) {
		if (e & 1UL) acc = acc * base;
		e >>= 1UL;
		if (e > 0) base = base * base;
	}
	return acc;
}

bool ComplexInterval::disjoint_from(const ComplexInterval& other) const {
	return !re.overlaps(other.re) || !im.overlaps(other.im);
}

std::string ComplexInterval::to_string(int digits) const {
	return re.to_string(digits) + " + i*" + im.to_string(digits);
}

} // namespace cullenrec

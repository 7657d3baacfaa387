/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#include <effcalc/exact_real.hpp>
#include <effcalc/error.hpp>

#include <algorithm>
#include <map>
#include <mutex>

namespace effcalc {

struct ExactReal::Node {
	Approximator f;
	std::optional<Rational> exact;
	std::mutex mu;
	std::map<Precision, Rational> cache;
};

ExactReal::ExactReal()
: ExactReal(Rational(0))
{}

ExactReal::ExactReal(const Rational &q)
: node_(std::make_shared<Node>())
{
	node_->exact = q;
}

ExactReal::ExactReal(Approximator f)
: node_(std::make_shared<Node>())
{
	node_->f = std::move(f);
}

Rational ExactReal::approx(Precision M) const
{
	if (node_->exact)
		return *node_->exact;
	{
		std::lock_guard lock(node_->mu);
		auto it = node_->cache.find(M);
		if (it != node_->cache.end())
			return it->second;
	}
	Rational q = node_->f(M);
	std::lock_guard lock(node_->mu);
	return node_->cache.emplace(M, std::move(q)).first->second;
}

const std::optional<Rational> &ExactReal::exact() const
{
	return node_->exact;
}

bool ExactReal::is_exact_zero() const
{
	return node_->exact && node_->exact->is_zero();
}

namespace {

Rational floor_to(const Rational &q, Precision M)
{
	Rational s = Rational::pow2(M);
	return Rational((q * s).floor()) / s;
}

/* within 2^-K of x and a multiple of 2^-(K+1); keeps long sums of exact
 * rational terms from growing their denominators */
Rational dyadic_approx(const ExactReal &x, Precision K)
{
	Rational s = Rational::pow2(K + 1);
	return Rational((x.approx(K + 1) * s + Rational(1, 2)).floor()) / s;
}

} // namespace

ExactReal add(const ExactReal &x, const ExactReal &y)
{
	if (x.exact() && y.exact())
		return ExactReal(*x.exact() + *y.exact());
	if (x.is_exact_zero())
		return y;
	if (y.is_exact_zero())
		return x;
	return ExactReal([x, y](Precision M) {
		return x.approx(M + 1) + y.approx(M + 1);
	});
}

ExactReal neg(const ExactReal &x)
{
	if (x.exact())
		return ExactReal(-*x.exact());
	return ExactReal([x](Precision M) { return -x.approx(M); });
}

ExactReal sub(const ExactReal &x, const ExactReal &y)
{
	return add(x, neg(y));
}

ExactReal mul(const ExactReal &x, const ExactReal &y)
{
	if (x.exact() && y.exact())
		return ExactReal(*x.exact() * *y.exact());
	if (x.is_exact_zero() || y.is_exact_zero())
		return ExactReal(0);
	return ExactReal([x, y](Precision M) {
		/* |x|,|y| <= B; |xy - ab| <= (2B+1) 2^-K <= 2^-M */
		mpz_class B = std::max(x.approx(0).abs().ceil(), y.approx(0).abs().ceil()) + 1;
		Precision K = M + 1 + ceil_log2(mpz_class(B + 1));
		return x.approx(K) * y.approx(K);
	});
}

ExactReal absval(const ExactReal &x)
{
	if (x.exact())
		return ExactReal(x.exact()->abs());
	return ExactReal([x](Precision M) { return x.approx(M).abs(); });
}

ExactReal maxval(const ExactReal &x, const ExactReal &y)
{
	if (x.exact() && y.exact())
		return ExactReal(std::max(*x.exact(), *y.exact()));
	return ExactReal([x, y](Precision M) {
		return std::max(x.approx(M), y.approx(M));
	});
}

ExactReal minval(const ExactReal &x, const ExactReal &y)
{
	return neg(maxval(neg(x), neg(y)));
}

namespace {

/* floor(V^(a/b) * 2^S) for V >= 0, a > 0; `exact` tells whether the
 * floor is the exact value. */
mpz_class floor_pow(const Rational &V, unsigned long a, unsigned long b,
                    Precision S, bool *exact)
{
	mpz_class num, den;
	mpz_pow_ui(num.get_mpz_t(), V.num().get_mpz_t(), a);
	mpz_pow_ui(den.get_mpz_t(), V.den().get_mpz_t(), a);
	Precision sh = S * static_cast<Precision>(b);
	if (sh >= 0)
		num <<= static_cast<mp_bitcnt_t>(sh);
	else
		den <<= static_cast<mp_bitcnt_t>(-sh);
	mpz_class F, R;
	mpz_fdiv_qr(F.get_mpz_t(), R.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
	bool rex = false;
	mpz_class r = iroot(F, b, &rex);
	*exact = R == 0 && rex;
	return r;
}

/* Exact value of V^(a/b) when it is rational. */
std::optional<Rational> exact_root(const Rational &V, long a, unsigned long b)
{
	mpz_class num = V.num(), den = V.den();
	if (a < 0)
		std::swap(num, den);
	if (num < 0)
		return std::nullopt;
	unsigned long ua = static_cast<unsigned long>(a < 0 ? -a : a);
	mpz_pow_ui(num.get_mpz_t(), num.get_mpz_t(), ua);
	mpz_pow_ui(den.get_mpz_t(), den.get_mpz_t(), ua);
	bool e1 = false, e2 = false;
	mpz_class rn = iroot(num, b, &e1);
	mpz_class rd = iroot(den, b, &e2);
	if (e1 && e2)
		return Rational(rn, rd);
	return std::nullopt;
}

long small_num(const Rational &w, const char *what)
{
	if (!w.num().fits_slong_p() || !w.den().fits_ulong_p())
		throw ResourceLimit(std::string(what) + ": exponent too large");
	return w.num().get_si();
}

} // namespace

ExactReal rat_pow(const mpz_class &n, const Rational &w)
{
	if (n < 0)
		throw RangeError("rat_pow: negative base");
	if (n == 0) {
		if (w.sign() <= 0)
			throw UndefinedPower("0^" + w.str() + " is undefined");
		return ExactReal(0);
	}
	if (n == 1 || w.is_zero())
		return ExactReal(1);
	long a = small_num(w, "rat_pow");
	unsigned long b = w.den().get_ui();
	if (auto e = exact_root(Rational(n), a, b))
		return ExactReal(*e);
	/* V = n^a, result floor(V^(1/b) 2^M) / 2^M, error < 2^-M */
	Rational V = a >= 0 ? Rational(n) : Rational(mpz_class(1), n);
	unsigned long ua = static_cast<unsigned long>(a < 0 ? -a : a);
	return ExactReal([V, ua, b](Precision M) {
		Precision S = std::max<Precision>(M, 0);
		bool ex;
		mpz_class r = floor_pow(V, ua, b, S, &ex);
		return Rational(r) / Rational::pow2(S);
	});
}

ExactReal rat_pow(std::uint64_t n, const Rational &w)
{
	return rat_pow(mpz_class(std::to_string(n)), w);
}

ExactReal pow_nonneg(const ExactReal &y, const Rational &e)
{
	if (e.sign() <= 0)
		throw RangeError("pow_nonneg: exponent must be positive");
	long a = small_num(e, "pow_nonneg");
	unsigned long b = e.den().get_ui();
	if (y.exact()) {
		Rational v = std::max(*y.exact(), Rational(0));
		if (v.is_zero())
			return ExactReal(0);
		if (auto r = exact_root(v, a, b))
			return ExactReal(*r);
	}
	if (e == Rational(1))
		return ExactReal([y](Precision M) {
			return std::max(y.approx(M), Rational(0));
		});
	unsigned long ua = static_cast<unsigned long>(a);
	return ExactReal([y, ua, b](Precision M) {
		Precision S = std::max<Precision>(M, 0) + 2;
		Rational width = Rational::pow2(-M);
		Rational scale = Rational::pow2(S);
		Precision K = S;
		for (;;) {
			Rational c = y.approx(K), err = Rational::pow2(-K);
			Rational lo = std::max(c - err, Rational(0));
			Rational hi = std::max(c + err, Rational(0));
			bool ex = false;
			mpz_class L = floor_pow(lo, ua, b, S, &ex);
			mpz_class U = floor_pow(hi, ua, b, S, &ex);
			if (!ex)
				U += 1;
			Rational l = Rational(L) / scale, u = Rational(U) / scale;
			if (u - l <= width)
				return (l + u) / Rational(2);
			K += std::max<Precision>(4, (K - S) + 4);
		}
	});
}

ExactReal sqrt(const ExactReal &y)
{
	return pow_nonneg(y, Rational(1, 2));
}

ExactReal modulus(const ExactReal &re, const ExactReal &im)
{
	if (re.is_exact_zero())
		return absval(im);
	if (im.is_exact_zero())
		return absval(re);
	return sqrt(add(mul(re, re), mul(im, im)));
}

namespace {

/* floor-accumulated fixed-point atan(1/x) * 2^P */
mpz_class atan_inv(unsigned long x, Precision P)
{
	mpz_class power = 1;
	power <<= static_cast<mp_bitcnt_t>(P);
	power /= x;
	mpz_class total = 0;
	unsigned long x2 = x * x;
	for (unsigned long k = 0; power != 0; k++) {
		mpz_class term = power / (2 * k + 1);
		if (k % 2)
			total -= term;
		else
			total += term;
		power /= x2;
	}
	return total;
}

struct PiCache {
	std::mutex mu;
	std::map<Precision, Rational> values;
};

PiCache &pi_cache()
{
	static PiCache c;
	return c;
}

} // namespace

ExactReal pi()
{
	static const ExactReal value([](Precision M) {
		Precision Mp = std::max<Precision>(M, 0);
		Precision P = Mp + 16 + bit_length(mpz_class(static_cast<long>(Mp)));
		auto &c = pi_cache();
		{
			std::lock_guard lock(c.mu);
			auto it = c.values.find(P);
			if (it != c.values.end())
				return it->second;
		}
		mpz_class v = 16 * atan_inv(5, P) - 4 * atan_inv(239, P);
		Rational r = Rational(v) / Rational::pow2(P);
		std::lock_guard lock(c.mu);
		c.values.emplace(P, r);
		return r;
	});
	return value;
}

namespace {

/* cos or sin of a rational r, within 2^-(Q) of the truncated floor sum */
Rational taylor(const Rational &r, bool is_sin, Precision Q)
{
	Rational r2 = r * r;
	Rational term = is_sin ? r : Rational(1);
	Rational total = 0;
	Rational eps = Rational::pow2(-Q);
	Rational rabs = r.abs();
	for (long i = 0;; i++) {
		total += term;
		long k = is_sin ? 2 * i + 2 : 2 * i + 1;
		term = -(term * r2) / Rational(static_cast<long>(k) * (k + 1));
		/* alternating series with decreasing terms: remainder < |term| */
		if (term.abs() < eps && Rational(k) > rabs + Rational(1))
			break;
	}
	return floor_to(total, Q);
}

ExactReal trig(const ExactReal &x, bool is_sin)
{
	if (x.is_exact_zero())
		return ExactReal(is_sin ? 0 : 1);
	ExactReal p = pi();
	return ExactReal([x, p, is_sin](Precision M) {
		Precision Mp = std::max<Precision>(M, 0);
		Rational a = x.approx(Mp + 3);
		Rational two_pi = p.approx(8) * Rational(2);
		mpz_class k = (a / two_pi + Rational(1, 2)).floor();
		Precision P = Mp + 6 + bit_length(k);
		Rational r = a - Rational(2) * Rational(k) * p.approx(P);
		r = floor_to(r, Mp + 6);
		return taylor(r, is_sin, Mp + 5);
	});
}

} // namespace

ExactReal cos(const ExactReal &x)
{
	return trig(x, false);
}

ExactReal sin(const ExactReal &x)
{
	return trig(x, true);
}

std::pair<ExactReal, ExactReal> quarter_turn(const Rational &tau)
{
	/* reduce mod 4 */
	Rational four(4);
	Rational r = tau - four * Rational((tau / four).floor());
	if (r.is_integer()) {
		switch (r.num().get_si()) {
		case 0: return {ExactReal(1), ExactReal(0)};
		case 1: return {ExactReal(0), ExactReal(1)};
		case 2: return {ExactReal(-1), ExactReal(0)};
		default: return {ExactReal(0), ExactReal(-1)};
		}
	}
	ExactReal angle = mul(ExactReal(r / Rational(2)), pi());
	return {cos(angle), sin(angle)};
}

ExactReal sum(const std::vector<ExactReal> &xs)
{
	std::vector<ExactReal> inexact;
	Rational known = 0;
	for (const auto &x : xs) {
		if (x.exact())
			known += *x.exact();
		else
			inexact.push_back(x);
	}
	if (inexact.empty())
		return ExactReal(known);
	return ExactReal([known, inexact = std::move(inexact)](Precision M) {
		Precision K = M + ceil_log2(static_cast<std::uint64_t>(inexact.size()));
		Rational s = known;
		for (const auto &x : inexact)
			s += dyadic_approx(x, K);
		return s;
	});
}

Rational sum_with_tail(const TermFn &terms, const TailFn &nu, Precision M)
{
	std::uint64_t N = nu(M + 1);
	if (N > max_series_terms)
		throw ResourceLimit("series needs " + std::to_string(N) +
		                    " terms at precision " + std::to_string(M));
	Precision K = M + 1 + ceil_log2(N);
	Rational s = 0;
	for (std::uint64_t m = 0; m < N; m++)
		s += dyadic_approx(terms(m), K);
	return s;
}

ExactReal series(TermFn terms, TailFn nu)
{
	return ExactReal([terms = std::move(terms), nu = std::move(nu)](Precision M) {
		return sum_with_tail(terms, nu, M);
	});
}

std::size_t display_digits(Precision M)
{
	if (M <= 0)
		return 0;
	return static_cast<std::size_t>((M * 302 + 999) / 1000);
}

std::string format_approx(const Rational &q, Precision M)
{
	return q.str() + " ≈ " + q.decimal(display_digits(M)) +
	       " (±2^-" + std::to_string(M) + ")";
}

} // namespace effcalc

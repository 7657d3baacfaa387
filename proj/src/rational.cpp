/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#include <effcalc/rational.hpp>
#include <effcalc/error.hpp>

#include <cctype>
#include <limits>
#include <ostream>

namespace effcalc {

Rational::Rational(const mpz_class &n, const mpz_class &d)
: q_(n, d)
{
	if (d == 0)
		throw RangeError("zero denominator");
	q_.canonicalize();
}

Rational operator/(const Rational &a, const Rational &b)
{
	if (b.is_zero())
		throw RangeError("division by zero");
	return Rational(mpq_class(a.q_ / b.q_));
}

Rational Rational::parse(std::string_view s)
{
	auto fail = [&](const char *why) {
		throw ParseError(1, 1, std::string(why) + " in rational '" + std::string(s) + "'");
	};
	std::size_t i = 0;
	bool neg = false;
	if (i < s.size() && (s[i] == '-' || s[i] == '+'))
		neg = s[i++] == '-';
	auto digits = [&](std::string &out) {
		std::size_t b = i;
		while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
			i++;
		if (b == i)
			fail("expected digits");
		out.assign(s.substr(b, i - b));
	};
	std::string n, d = "1";
	digits(n);
	if (i < s.size() && s[i] == '/') {
		i++;
		digits(d);
	}
	if (i != s.size())
		fail("trailing characters");
	mpz_class den(d);
	if (den == 0)
		fail("zero denominator");
	mpz_class num(n);
	return Rational(neg ? mpz_class(-num) : num, den);
}

Rational Rational::pow2(std::int64_t e)
{
	mpz_class p = 1;
	if (e >= 0) {
		mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
		return Rational(p);
	}
	mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
	return Rational(mpz_class(1), p);
}

mpz_class Rational::floor() const
{
	mpz_class r;
	mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
	return r;
}

mpz_class Rational::ceil() const
{
	mpz_class r;
	mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
	return r;
}

std::string Rational::str() const
{
	if (is_integer())
		return q_.get_num().get_str();
	return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::decimal(std::size_t digits) const
{
	mpz_class scale;
	mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
	mpq_class a = ::abs(q_) * scale + mpq_class(1, 2);
	mpz_class r;
	mpz_fdiv_q(r.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
	std::string s = r.get_str();
	if (s.size() <= digits)
		s.insert(0, digits + 1 - s.size(), '0');
	if (digits > 0)
		s.insert(s.size() - digits, ".");
	if (sign() < 0 && r != 0)
		s.insert(0, "-");
	return s;
}

std::ostream &operator<<(std::ostream &os, const Rational &q)
{
	return os << q.str();
}

std::int64_t bit_length(const mpz_class &n)
{
	if (n == 0)
		return 0;
	return static_cast<std::int64_t>(mpz_sizeinbase(n.get_mpz_t(), 2));
}

std::int64_t ceil_log2(const mpz_class &n)
{
	if (n <= 1)
		return 0;
	mpz_class m = n - 1;
	return bit_length(m);
}

std::int64_t ceil_log2(std::uint64_t n)
{
	std::int64_t e = 0;
	while (e < 64 && (std::uint64_t{1} << e) < n)
		e++;
	return e;
}

mpz_class iroot(const mpz_class &n, unsigned long b, bool *exact)
{
	mpz_class r;
	int ex = mpz_root(r.get_mpz_t(), n.get_mpz_t(), b);
	if (exact)
		*exact = ex != 0;
	return r;
}

std::uint64_t saturate_u64(const mpz_class &n)
{
	if (n <= 0)
		return 0;
	if (bit_length(n) > 64)
		return std::numeric_limits<std::uint64_t>::max();
	mpz_class hi = n >> 32;
	mpz_class lo = n - (hi << 32);
	return (static_cast<std::uint64_t>(hi.get_ui()) << 32) | lo.get_ui();
}

} // namespace effcalc

/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace effcalc {

/// Canonical arbitrary-precision fraction with positive denominator.
class Rational {
public:
	Rational() = default;
	Rational(int v) : q_(v) {}
	Rational(long v) : q_(v) {}
	Rational(long long v) : q_(mpz_class(std::to_string(v))) {}
	Rational(unsigned long v) : q_(v) {}
	Rational(unsigned long long v) : q_(mpz_class(std::to_string(v))) {}
	Rational(const mpz_class &n) : q_(n) {}
	Rational(const mpz_class &n, const mpz_class &d);
	explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

	/// Parses "a" or "a/b" (optional leading '-'); throws ParseError.
	static Rational parse(std::string_view s);

	/// 2^e for any integer e.
	static Rational pow2(std::int64_t e);

	const mpq_class &get() const { return q_; }
	mpz_class num() const { return q_.get_num(); }
	mpz_class den() const { return q_.get_den(); }

	int sign() const { return sgn(q_); }
	bool is_zero() const { return sign() == 0; }
	bool is_integer() const { return q_.get_den() == 1; }

	Rational abs() const { return Rational(mpq_class(::abs(q_))); }
	mpz_class floor() const;
	mpz_class ceil() const;
	double to_double() const { return q_.get_d(); }

	/// "a" or "a/b".
	std::string str() const;

	/// Decimal expansion with `digits` fractional digits, rounded half away
	/// from zero.
	std::string decimal(std::size_t digits) const;

	friend Rational operator+(const Rational &a, const Rational &b) { return Rational(mpq_class(a.q_ + b.q_)); }
	friend Rational operator-(const Rational &a, const Rational &b) { return Rational(mpq_class(a.q_ - b.q_)); }
	friend Rational operator*(const Rational &a, const Rational &b) { return Rational(mpq_class(a.q_ * b.q_)); }
	friend Rational operator/(const Rational &a, const Rational &b);
	friend Rational operator-(const Rational &a) { return Rational(mpq_class(-a.q_)); }

	Rational &operator+=(const Rational &b) { q_ += b.q_; return *this; }
	Rational &operator-=(const Rational &b) { q_ -= b.q_; return *this; }
	Rational &operator*=(const Rational &b) { q_ *= b.q_; return *this; }

	friend bool operator==(const Rational &a, const Rational &b) { return a.q_ == b.q_; }
	friend std::strong_ordering operator<=>(const Rational &a, const Rational &b)
	{
		int c = cmp(a.q_, b.q_);
		return c < 0 ? std::strong_ordering::less
		     : c > 0 ? std::strong_ordering::greater
		             : std::strong_ordering::equal;
	}

private:
	mpq_class q_;
};

std::ostream &operator<<(std::ostream &os, const Rational &q);

/// Number of bits of |n| (0 for n = 0).
std::int64_t bit_length(const mpz_class &n);

/// Smallest e >= 0 with 2^e >= n (0 for n <= 1).
std::int64_t ceil_log2(const mpz_class &n);
std::int64_t ceil_log2(std::uint64_t n);

/// Floor b-th root of n >= 0; `exact` is set when n is a perfect b-th power.
mpz_class iroot(const mpz_class &n, unsigned long b, bool *exact = nullptr);

/// Conversion to uint64 saturating at UINT64_MAX (negative values map to 0).
std::uint64_t saturate_u64(const mpz_class &n);

} // namespace effcalc

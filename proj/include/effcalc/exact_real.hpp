/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#pragma once

#include <effcalc/rational.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace effcalc {

using Precision = std::int64_t;

/// A computable real: approx(M) is within 2^-M of the represented value.
/// Values built only from rationals carry their exact value as a tag.
/// Approximations are memoized per precision; copies share the cache.
class ExactReal {
public:
	using Approximator = std::function<Rational(Precision)>;

	ExactReal();
	ExactReal(const Rational &q);
	ExactReal(int v) : ExactReal(Rational(v)) {}
	explicit ExactReal(Approximator f);

	Rational approx(Precision M) const;

	const std::optional<Rational> &exact() const;
	bool is_exact_zero() const;

private:
	struct Node;
	std::shared_ptr<Node> node_;
};

inline Rational approx(const ExactReal &x, Precision M) { return x.approx(M); }

ExactReal add(const ExactReal &x, const ExactReal &y);
ExactReal neg(const ExactReal &x);
ExactReal sub(const ExactReal &x, const ExactReal &y);
ExactReal mul(const ExactReal &x, const ExactReal &y);
ExactReal absval(const ExactReal &x);
ExactReal maxval(const ExactReal &x, const ExactReal &y);
ExactReal minval(const ExactReal &x, const ExactReal &y);

inline ExactReal operator+(const ExactReal &x, const ExactReal &y) { return add(x, y); }
inline ExactReal operator-(const ExactReal &x, const ExactReal &y) { return sub(x, y); }
inline ExactReal operator-(const ExactReal &x) { return neg(x); }
inline ExactReal operator*(const ExactReal &x, const ExactReal &y) { return mul(x, y); }

/// n^w. Throws UndefinedPower for n = 0 and w <= 0.
ExactReal rat_pow(std::uint64_t n, const Rational &w);
ExactReal rat_pow(const mpz_class &n, const Rational &w);

/// y^e for y >= 0 and e > 0 (values of y below zero are clamped to 0).
ExactReal pow_nonneg(const ExactReal &y, const Rational &e);
ExactReal sqrt(const ExactReal &y);

/// |re + j*im|.
ExactReal modulus(const ExactReal &re, const ExactReal &im);

ExactReal pi();
ExactReal cos(const ExactReal &x);
ExactReal sin(const ExactReal &x);

/// (cos(tau*pi/2), sin(tau*pi/2)); exact when tau is an integer.
std::pair<ExactReal, ExactReal> quarter_turn(const Rational &tau);

ExactReal sum(const std::vector<ExactReal> &xs);

using TermFn = std::function<ExactReal(std::uint64_t)>;
/// Tail modulus: sum of |term_m| over m >= nu(K) is below 2^-K.
using TailFn = std::function<std::uint64_t(Precision)>;

/// Largest number of terms a single series evaluation may sum.
inline constexpr std::uint64_t max_series_terms = std::uint64_t{1} << 26;

/// Sum of the series within 2^-M. Throws ResourceLimit past max_series_terms.
Rational sum_with_tail(const TermFn &terms, const TailFn &nu, Precision M);
ExactReal series(TermFn terms, TailFn nu);

/// Number of decimal digits shown for an approximation at precision M.
std::size_t display_digits(Precision M);

/// "q ≈ decimal (±2^-M)".
std::string format_approx(const Rational &q, Precision M);

} // namespace effcalc

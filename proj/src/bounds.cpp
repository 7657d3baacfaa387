/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#include "bounds.hpp"

#include <effcalc/error.hpp>

namespace effcalc::detail {

std::uint64_t smallest_power_exceeding(const Rational &e, const Rational &R)
{
	if (e.sign() <= 0)
		throw RangeError("smallest_power_exceeding: exponent must be positive");
	if (R < Rational(1))
		return 1;
	if (!e.num().fits_ulong_p() || !e.den().fits_ulong_p())
		throw ResourceLimit("exponent too large");
	unsigned long c = e.num().get_ui(), d = e.den().get_ui();
	/* N^(c/d) > R  <=>  N^c > R^d; answer is floor(root_c(floor(R^d))) + 1 */
	mpz_class num, den;
	mpz_pow_ui(num.get_mpz_t(), R.num().get_mpz_t(), d);
	mpz_pow_ui(den.get_mpz_t(), R.den().get_mpz_t(), d);
	mpz_class F = num / den;
	mpz_class r = iroot(F, c) + 1;
	return saturate_u64(r);
}

mpz_class ceil_pow2(const Rational &e)
{
	if (e.sign() < 0)
		throw RangeError("ceil_pow2: negative exponent");
	if (!e.num().fits_ulong_p() || !e.den().fits_ulong_p())
		throw ResourceLimit("exponent too large");
	unsigned long a = e.num().get_ui(), b = e.den().get_ui();
	mpz_class p = 1;
	p <<= a;
	bool exact = false;
	mpz_class r = iroot(p, b, &exact);
	return exact ? r : mpz_class(r + 1);
}

TailFn memo_tail(TailFn nu)
{
	struct State {
		TailFn nu;
		std::mutex mu;
		std::map<Precision, std::uint64_t> values;
	};
	auto st = std::make_shared<State>();
	st->nu = std::move(nu);
	return [st](Precision M) {
		{
			std::lock_guard lock(st->mu);
			auto it = st->values.find(M);
			if (it != st->values.end())
				return it->second;
		}
		std::uint64_t v = st->nu(M);
		std::lock_guard lock(st->mu);
		st->values.emplace(M, v);
		return v;
	};
}

} // namespace effcalc::detail

/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#include <effcalc/limit_real.hpp>

namespace effcalc {

std::string to_string(LimitMode m)
{
	switch (m) {
	case LimitMode::limsup: return "limsup";
	case LimitMode::liminf: return "liminf";
	case LimitMode::lim: return "lim";
	}
	return "lim";
}

LimitReal constant_limit(LimitMode mode, Rational c)
{
	return {mode, [c = std::move(c)](std::uint64_t) { return c; }};
}

LimitReal alternating_limit(LimitMode mode, Rational a, Rational b)
{
	return {mode, [a = std::move(a), b = std::move(b)](std::uint64_t k) {
		return k % 2 ? b : a;
	}};
}

} // namespace effcalc

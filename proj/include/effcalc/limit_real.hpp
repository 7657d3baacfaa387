/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#pragma once

#include <effcalc/rational.hpp>

#include <cstdint>
#include <functional>
#include <string>

namespace effcalc {

enum class LimitMode { limsup, liminf, lim };

std::string to_string(LimitMode m);

/// A real given as limsup, liminf or lim of a rational sequence. The value
/// is not computable from the generator in general; only stages are.
struct LimitReal {
	LimitMode mode;
	std::function<Rational(std::uint64_t)> generator;

	Rational stage(std::uint64_t k) const { return generator(k); }
};

inline Rational limit_stage(const LimitReal &x, std::uint64_t k) { return x.stage(k); }

LimitReal constant_limit(LimitMode mode, Rational c);
/// Stages a, b, a, b, ...
LimitReal alternating_limit(LimitMode mode, Rational a, Rational b);

} // namespace effcalc

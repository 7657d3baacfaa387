/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#pragma once

#include <effcalc/exact_real.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>

namespace effcalc::detail {

/// Smallest integer N >= 1 with N^e > R (e > 0), saturating at UINT64_MAX.
std::uint64_t smallest_power_exceeding(const Rational &e, const Rational &R);

/// ceil(2^e) for e >= 0.
mpz_class ceil_pow2(const Rational &e);

/// Same tail modulus, with values memoized (for moduli backed by searches).
TailFn memo_tail(TailFn nu);

/// Precision arguments below zero are treated as zero by tail moduli.
inline Precision clamp0(Precision M) { return M < 0 ? 0 : M; }

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b)
{
	return a + b < a ? UINT64_MAX : a + b;
}

} // namespace effcalc::detail

/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#pragma once

#include <effcalc/rational.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace effcalc {

enum class EstimateKind {
	value,
	cap,   ///< the grid cap k was reached (reported as infinity)
	floor, ///< the grid floor 1 was reached (Psi only)
};

/// Stage value of an anytime Omega/Psi estimator.
struct StageEstimate {
	Rational value;
	EstimateKind kind = EstimateKind::value;

	std::string str() const;
};

/// Depth of the partial sums examined at stage k: 2^(k+2).
std::uint64_t estimator_depth(std::uint64_t stage);

namespace detail {

/* Both take certified lower bounds y[i] of |f_n| for n = k+1 .. k+y.size().
 * Omega: smallest w in the grid {i 2^-k : 0 <= i <= k 2^k} with
 *        sum n^w y_n > k, cap when there is none.
 * Psi:   largest w in the grid on [1, k] with sum min(y_n,1)^w > k,
 *        floor when it fails at 1, cap when it holds at k. */
StageEstimate omega_from_lows(const std::vector<Rational> &y, std::uint64_t k);
StageEstimate psi_from_lows(const std::vector<Rational> &y, std::uint64_t k);

} // namespace detail

} // namespace effcalc

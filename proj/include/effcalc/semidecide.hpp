/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#pragma once

#include <effcalc/exact_real.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>

namespace effcalc {

struct Halted {
	std::uint64_t steps;
	Rational upper_x; ///< certified upper bound of x
	Rational lower_y; ///< certified lower bound of y, upper_x < lower_y
	std::optional<std::uint64_t> witness;
};

struct Exhausted {
	std::uint64_t fuel;
};

using SemiDecision = std::variant<Halted, Exhausted>;

inline bool halted(const SemiDecision &d) { return std::holds_alternative<Halted>(d); }

/// One line summary, e.g. "Halted steps=4 upper_x=1/8 lower_y=3/8".
std::string describe(const SemiDecision &d);

/// Searches M = 0, 1, ... (one fuel unit each) for
/// approx(x,M) + 2^-M < approx(y,M) - 2^-M.
SemiDecision semidecide_lt(const ExactReal &x, const ExactReal &y, std::uint64_t fuel);

using IndexedReal = std::function<ExactReal(std::uint64_t)>;
using RealFamily = std::function<ExactReal(std::uint64_t n, std::uint64_t m)>;

/// Dovetails (m, M) along diagonals m + M = d, m ascending, looking for a
/// certified x_m < y. The halting m is returned as the witness.
SemiDecision semidecide_exists_lt(const IndexedReal &x, const ExactReal &y, std::uint64_t fuel);
SemiDecision semidecide_exists_lt(const RealFamily &x, const ExactReal &y,
                                  std::uint64_t n, std::uint64_t fuel);

} // namespace effcalc

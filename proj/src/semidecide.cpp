/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#include <effcalc/semidecide.hpp>
#include <effcalc/error.hpp>

namespace effcalc {

std::string describe(const SemiDecision &d)
{
	if (auto *h = std::get_if<Halted>(&d)) {
		std::string s = "Halted steps=" + std::to_string(h->steps) +
		                " upper_x=" + h->upper_x.str() +
		                " lower_y=" + h->lower_y.str();
		if (h->witness)
			s += " witness=" + std::to_string(*h->witness);
		return s;
	}
	return "Exhausted fuel=" + std::to_string(std::get<Exhausted>(d).fuel);
}

namespace {

std::optional<Halted> check(const ExactReal &x, const ExactReal &y, Precision M)
{
	Rational e = Rational::pow2(-M);
	Rational ux = x.approx(M) + e;
	Rational ly = y.approx(M) - e;
	if (ux < ly)
		return Halted{0, ux, ly, std::nullopt};
	return std::nullopt;
}

} // namespace

SemiDecision semidecide_lt(const ExactReal &x, const ExactReal &y, std::uint64_t fuel)
{
	if (fuel == 0)
		throw PreconditionViolation("fuel must be at least 1");
	for (std::uint64_t M = 0; M < fuel; M++) {
		if (auto h = check(x, y, static_cast<Precision>(M))) {
			h->steps = M + 1;
			return *h;
		}
	}
	return Exhausted{fuel};
}

SemiDecision semidecide_exists_lt(const IndexedReal &x, const ExactReal &y, std::uint64_t fuel)
{
	if (fuel == 0)
		throw PreconditionViolation("fuel must be at least 1");
	std::uint64_t steps = 0;
	for (std::uint64_t d = 0;; d++) {
		for (std::uint64_t m = 0; m <= d; m++) {
			if (steps == fuel)
				return Exhausted{fuel};
			steps++;
			if (auto h = check(x(m), y, static_cast<Precision>(d - m))) {
				h->steps = steps;
				h->witness = m;
				return *h;
			}
		}
	}
}

SemiDecision semidecide_exists_lt(const RealFamily &x, const ExactReal &y,
                                  std::uint64_t n, std::uint64_t fuel)
{
	return semidecide_exists_lt([&](std::uint64_t m) { return x(n, m); }, y, fuel);
}

} // namespace effcalc

/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#include <effcalc/integrity.hpp>
#include <effcalc/error.hpp>

namespace effcalc {

NormPredicate::NormPredicate(std::uint64_t M, std::uint64_t N)
: M(M), N(N)
{
	if (M >= N)
		throw PreconditionViolation("norm predicate needs M < N");
}

Rational NormPredicate::threshold() const
{
	return Rational::pow2(-static_cast<Precision>(M)) - Rational::pow2(-static_cast<Precision>(N));
}

CollisionPredicate::CollisionPredicate(Rational epsilon, Rational r_min)
: epsilon(std::move(epsilon)), r_min(std::move(r_min))
{
	if (this->epsilon.sign() <= 0 || this->r_min.sign() <= 0)
		throw RangeError("collision predicate needs eps > 0 and rmin > 0");
}

SemiDecision go_norm_check(const ExactReal &norm, const NormPredicate &pred, std::uint64_t fuel)
{
	return semidecide_lt(norm, ExactReal(pred.threshold()), fuel);
}

SemiDecision nogo_norm_check(const NormPredicate &pred)
{
	/* witness v at distance 2^-N + 1 > 2^-N from the twin */
	Rational r = Rational::pow2(-static_cast<Precision>(pred.N));
	return Halted{0, r, r + Rational(1), std::nullopt};
}

ExactReal min_pairwise_distance(const std::vector<Point2> &agents)
{
	if (agents.size() < 2)
		throw PreconditionViolation("pairwise distance needs two agents");
	std::optional<ExactReal> best;
	for (std::size_t i = 0; i < agents.size(); i++)
		for (std::size_t j = i + 1; j < agents.size(); j++) {
			ExactReal d = modulus(sub(agents[i].first, agents[j].first),
			                      sub(agents[i].second, agents[j].second));
			best = best ? minval(*best, d) : d;
		}
	return *best;
}

SemiDecision collision_go_check(const std::vector<Point2> &agents,
                                const CollisionPredicate &pred, std::uint64_t fuel)
{
	Rational thr = pred.r_min + Rational(2) * pred.epsilon;
	if (agents.size() < 2)
		return Halted{0, thr, thr + Rational(1), std::nullopt};
	return semidecide_lt(ExactReal(thr), min_pairwise_distance(agents), fuel);
}

} // namespace effcalc

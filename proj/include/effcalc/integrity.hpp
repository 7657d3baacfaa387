/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#pragma once

#include <effcalc/semidecide.hpp>

#include <cstdint>
#include <utility>
#include <vector>

namespace effcalc {

/// ||v|| < q with q = 2^-M - 2^-N, M < N.
struct NormPredicate {
	std::uint64_t M;
	std::uint64_t N;

	NormPredicate(std::uint64_t M, std::uint64_t N);
	Rational threshold() const;
};

using Point2 = std::pair<ExactReal, ExactReal>;

struct CollisionPredicate {
	Rational epsilon; ///< twin-to-entity tolerance per agent
	Rational r_min;

	CollisionPredicate(Rational epsilon, Rational r_min);
};

/// GO check: halts iff the norm is certified below the threshold.
SemiDecision go_norm_check(const ExactReal &norm, const NormPredicate &pred, std::uint64_t fuel);

/// NO-GO check for implication-shaped predicates: always halts at once,
/// since points farther than 2^-N from the twin falsify the antecedent.
SemiDecision nogo_norm_check(const NormPredicate &pred);

/// Minimum pairwise Euclidean distance.
ExactReal min_pairwise_distance(const std::vector<Point2> &agents);

/// GO check for collision avoidance: semidecides r_min + 2 eps < d where d
/// is the minimum pairwise distance. Fewer than two agents halt at once.
SemiDecision collision_go_check(const std::vector<Point2> &agents,
                                const CollisionPredicate &pred, std::uint64_t fuel);

} // namespace effcalc

/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#include <effcalc/estimate.hpp>

#include <mpfr.h>

#include <cmath>
#include <functional>

namespace effcalc {

std::string StageEstimate::str() const
{
	switch (kind) {
	case EstimateKind::cap: return "∞ (cap reached)";
	case EstimateKind::floor: return "1 (grid floor)";
	case EstimateKind::value: break;
	}
	return value.decimal(4) + " (" + value.str() + ")";
}

std::uint64_t estimator_depth(std::uint64_t stage)
{
	return std::uint64_t{1} << (stage + 2);
}

namespace detail {

namespace {

constexpr mpfr_prec_t bits = 128;

/* RAII wrapper for one mpfr_t */
struct Mp {
	mpfr_t v;
	Mp() { mpfr_init2(v, bits); mpfr_set_ui(v, 0, MPFR_RNDN); }
	~Mp() { mpfr_clear(v); }
	Mp(const Mp &) = delete;
	Mp &operator=(const Mp &) = delete;
	Mp(Mp &&o) noexcept { mpfr_init2(v, bits); mpfr_swap(v, o.v); }
};

/* Certified lower sums sum_i exp(w * L_i) * c_i; all roundings downwards,
 * so the result is monotone in w whenever each w * L_i is. */
class LowerSum {
public:
	/* base[i] > 0 (or 0 for absent terms), weight[i] >= 0 */
	LowerSum(std::vector<Mp> logs, std::vector<Mp> weights, std::vector<double> dlogs,
	         std::vector<double> dweights)
	: logs_(std::move(logs)), weights_(std::move(weights))
	, dlogs_(std::move(dlogs)), dweights_(std::move(dweights))
	{}

	/* certified: sum > threshold at w = i 2^-k */
	bool exceeds(std::uint64_t i, std::uint64_t k, std::uint64_t threshold) const
	{
		Mp w, t, s;
		mpfr_set_ui_2exp(w.v, static_cast<unsigned long>(i), -static_cast<long>(k), MPFR_RNDN);
		for (std::size_t j = 0; j < logs_.size(); j++) {
			if (mpfr_zero_p(weights_[j].v))
				continue;
			mpfr_mul(t.v, w.v, logs_[j].v, MPFR_RNDD);
			mpfr_exp(t.v, t.v, MPFR_RNDD);
			mpfr_mul(t.v, t.v, weights_[j].v, MPFR_RNDD);
			mpfr_add(s.v, s.v, t.v, MPFR_RNDD);
		}
		return mpfr_cmp_ui(s.v, static_cast<unsigned long>(threshold)) > 0;
	}

	/* floating-point guide for the same predicate */
	bool exceeds_approx(std::uint64_t i, std::uint64_t k, std::uint64_t threshold) const
	{
		double w = std::ldexp(static_cast<double>(i), -static_cast<int>(k));
		double s = 0;
		for (std::size_t j = 0; j < dlogs_.size(); j++)
			if (dweights_[j] > 0)
				s += std::exp(w * dlogs_[j]) * dweights_[j];
		return s > static_cast<double>(threshold);
	}

private:
	std::vector<Mp> logs_, weights_;
	std::vector<double> dlogs_, dweights_;
};

void set_q(mpfr_t r, const Rational &q, mpfr_rnd_t rnd)
{
	mpfr_set_q(r, q.get().get_mpq_t(), rnd);
}

/* First i in [lo, hi] where pred flips from `from` to !from, assuming
 * monotonicity; pred(hi) != from is required. */
std::uint64_t first_flip(std::uint64_t lo, std::uint64_t hi, bool from,
                         const std::function<bool(std::uint64_t)> &pred)
{
	while (lo < hi) {
		std::uint64_t mid = lo + (hi - lo) / 2;
		if (pred(mid) == from)
			lo = mid + 1;
		else
			hi = mid;
	}
	return lo;
}

/* Guided search for the first grid point in [lo, hi] where the certified
 * predicate differs from `from`: bisect the floating-point predicate,
 * then confirm the boundary with certified evaluations, falling back to a
 * certified bisection. */
std::uint64_t guided_flip(std::uint64_t lo, std::uint64_t hi, bool from,
                          const std::function<bool(std::uint64_t)> &certified,
                          const std::function<bool(std::uint64_t)> &guide)
{
	std::uint64_t g = guide(hi) != from ? first_flip(lo, hi, from, guide) : hi;
	if (certified(g) != from && (g == lo || certified(g - 1) == from))
		return g;
	return first_flip(lo, hi, from, certified);
}

LowerSum make_sum(const std::vector<Rational> &y, std::uint64_t k, bool psi)
{
	std::vector<Mp> logs, weights;
	std::vector<double> dlogs, dweights;
	logs.reserve(y.size());
	weights.reserve(y.size());
	for (std::size_t j = 0; j < y.size(); j++) {
		Mp L, W;
		if (!psi) {
			/* n^w y_n, n = k+1+j */
			mpfr_set_ui(L.v, static_cast<unsigned long>(k + 1 + j), MPFR_RNDD);
			mpfr_log(L.v, L.v, MPFR_RNDD);
			set_q(W.v, y[j], MPFR_RNDD);
		} else if (y[j].sign() > 0) {
			/* min(y,1)^w: log rounded down keeps the product a lower bound */
			Rational v = std::min(y[j], Rational(1));
			set_q(L.v, v, MPFR_RNDD);
			mpfr_log(L.v, L.v, MPFR_RNDD);
			mpfr_set_ui(W.v, 1, MPFR_RNDN);
		}
		dlogs.push_back(mpfr_get_d(L.v, MPFR_RNDN));
		dweights.push_back(mpfr_get_d(W.v, MPFR_RNDN));
		logs.push_back(std::move(L));
		weights.push_back(std::move(W));
	}
	return LowerSum(std::move(logs), std::move(weights), std::move(dlogs), std::move(dweights));
}

} // namespace

StageEstimate omega_from_lows(const std::vector<Rational> &y, std::uint64_t k)
{
	LowerSum s = make_sum(y, k, false);
	std::uint64_t top = k << k;
	auto cert = [&](std::uint64_t i) { return s.exceeds(i, k, k); };
	auto guide = [&](std::uint64_t i) { return s.exceeds_approx(i, k, k); };
	if (!cert(top))
		return {Rational(static_cast<unsigned long>(k)), EstimateKind::cap};
	std::uint64_t i = guided_flip(0, top, false, cert, guide);
	return {Rational(mpz_class(static_cast<unsigned long>(i)), mpz_class(1) << k),
	        EstimateKind::value};
}

StageEstimate psi_from_lows(const std::vector<Rational> &y, std::uint64_t k)
{
	LowerSum s = make_sum(y, k, true);
	std::uint64_t bottom = std::uint64_t{1} << k, top = k << k;
	auto cert = [&](std::uint64_t i) { return s.exceeds(i, k, k); };
	auto guide = [&](std::uint64_t i) { return s.exceeds_approx(i, k, k); };
	if (!cert(bottom))
		return {Rational(1), EstimateKind::floor};
	if (cert(top))
		return {Rational(static_cast<unsigned long>(k)), EstimateKind::cap};
	/* first failing grid point, the estimate is the one before it */
	std::uint64_t i = guided_flip(bottom, top, true, cert, guide) - 1;
	return {Rational(mpz_class(static_cast<unsigned long>(i)), mpz_class(1) << k),
	        EstimateKind::value};
}

} // namespace detail

} // namespace effcalc

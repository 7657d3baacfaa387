/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#pragma once

#include <effcalc/wiener.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace effcalc {

/// Decay label: a rational p >= 1 or infinity.
class Exponent {
public:
	Exponent(Rational p);
	static Exponent inf();

	bool is_inf() const { return inf_; }
	/// Finite value; meaningless for infinity.
	const Rational &value() const { return p_; }
	std::string str() const;

	friend bool operator==(const Exponent &a, const Exponent &b)
	{
		return a.inf_ == b.inf_ && (a.inf_ || a.p_ == b.p_);
	}
	friend bool operator<(const Exponent &a, const Exponent &b)
	{
		if (a.inf_)
			return false;
		return b.inf_ || a.p_ < b.p_;
	}
	friend bool operator<=(const Exponent &a, const Exponent &b) { return a == b || a < b; }

private:
	Exponent() = default;
	Rational p_ = 1;
	bool inf_ = false;
};

/// f(m) = re + j im.
using LpCoeff = std::pair<ExactReal, ExactReal>;
using LpCoeffFn = std::function<LpCoeff(std::uint64_t)>;
/// Norm in closed form for library families, given the exponent.
using NormFn = std::function<ExactReal(const Exponent &)>;

class LpDescriptor;

struct LpCauchySeq {
	std::function<LpDescriptor(std::uint64_t)> elements;
	std::function<std::uint64_t(Precision)> modulus;
};

/// Realizer of an element of the l^p hierarchy: label p, coefficients
/// f(m), and a tail modulus nu with sum_{m >= nu(M)} |f(m)|^p < 2^-M
/// (p finite) or |f(m)| <= 2^-M for m >= nu(M) (p infinite).
class LpDescriptor {
public:
	LpDescriptor(Exponent p, LpCoeffFn coeff, TailFn nu,
	             std::optional<std::vector<std::uint64_t>> support = std::nullopt,
	             NormFn closed_norm = nullptr);

	const Exponent &p() const { return p_; }
	LpCoeff coefficient(std::uint64_t m) const;
	/// |f(m)|
	ExactReal magnitude(std::uint64_t m) const;
	std::uint64_t tail(Precision M) const;

	const std::vector<std::uint64_t> *support() const { return support_.get(); }
	const NormFn *closed_norm() const { return closed_norm_.get(); }
	const LpCauchySeq *limit() const { return limit_.get(); }

	LpDescriptor relabeled(Exponent p) const;
	LpDescriptor with_tail(Exponent p, TailFn nu, bool keep_limit) const;

	const void *source() const { return coeff_.get(); }

private:
	friend LpDescriptor lp_effective_limit(const LpCauchySeq &seq);
	struct Source;

	Exponent p_;
	std::shared_ptr<const Source> coeff_;
	std::shared_ptr<const TailFn> nu_;
	std::shared_ptr<const std::vector<std::uint64_t>> support_;
	std::shared_ptr<const NormFn> closed_norm_;
	std::shared_ptr<const LpCauchySeq> limit_;
};

// constructors

LpDescriptor lp_zero(const Exponent &p);
/// value * e_k
LpDescriptor spike(const Exponent &p, std::uint64_t k, const Rational &value = 1);
/// f(m) = r^(m+1), 0 < r < 1.
LpDescriptor geometric(const Exponent &p, const Rational &r = Rational(1, 2));
/// f(m) = (m+1)^-s; needs s p > 1 for finite p.
LpDescriptor pdecay(const Exponent &p, const Rational &s);
/// j entries of value j^(-1/omega) at indices 0 .. j-1: unit omega-norm.
LpDescriptor block_vector(const Exponent &p, const Rational &omega, std::uint64_t j);

// operations

ExactReal lp_norm(const LpDescriptor &f);
LpDescriptor lp_effective_limit(const LpCauchySeq &seq);
/// Relabels to tau > p; throws NotAnUpcast otherwise.
LpDescriptor upcast_decay(const LpDescriptor &f, const Exponent &tau);

/// Tail search for one n: K with q 2^(-K (omega-sigma)/tau') < 2^-n,
/// tau' = tau, or 1 for tau = infinity.
SemiDecision probe_decay(const Exponent &tau, const Rational &omega, const Rational &sigma,
                         const Rational &q, std::uint64_t n, std::uint64_t fuel);

/// Relabels f (at tau) to omega given sigma < omega < tau and
/// q >= sum |f(m)|^sigma; throws FuelExhausted when a search runs dry.
LpDescriptor certify_decay(const LpDescriptor &f, const Rational &omega,
                           const Rational &sigma, const Rational &q, std::uint64_t fuel);

/// Anytime estimator of the degree of decay; needs p = infinity.
StageEstimate psi_estimate(const LpDescriptor &f, std::uint64_t stage);

/// l^inf descriptor with degree of decay min(x, tau) for the limsup real x.
LpDescriptor thm4_witness(const LimitReal &x, const Rational &tau);

/// Isometry between the Wiener algebra at smoothness 0 and l^1.
LpDescriptor wiener_to_l1(const FourierDescriptor &f);
/// Inverse direction; the imaginary part of g(0) has no image and is dropped.
FourierDescriptor l1_to_wiener(const LpDescriptor &g);

} // namespace effcalc

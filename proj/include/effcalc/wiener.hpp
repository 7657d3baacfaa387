/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#pragma once

#include <effcalc/estimate.hpp>
#include <effcalc/exact_real.hpp>
#include <effcalc/limit_real.hpp>
#include <effcalc/semidecide.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace effcalc {

using CoeffFn = std::function<ExactReal(std::uint64_t)>;

/// Memoizing coefficient generator, shared between relabeled descriptors.
class CoefficientSource {
public:
	explicit CoefficientSource(CoeffFn f);
	~CoefficientSource();

	ExactReal at(std::uint64_t index) const;

private:
	struct Cache;
	CoeffFn f_;
	std::unique_ptr<Cache> cache_;
};

class FourierDescriptor;

/// elements(m) at a common smoothness label, and a modulus with
/// ||f_{nu(M)+l} - f_{nu(M)+k}|| < 2^-M.
struct FourierCauchySeq {
	std::function<FourierDescriptor(std::uint64_t)> elements;
	std::function<std::uint64_t(Precision)> modulus;
};

/// Realizer of an element of the weighted Wiener algebra: label omega,
/// coefficients (0 -> x0, 2m -> cos_m, 2m-1 -> sin_m) and a tail modulus
/// nu with sum_{m >= nu(M)} eps(omega,m) |x_2m + j x_2m-1| < 2^-M.
///
/// Descriptors of finite trigonometric polynomials additionally list the
/// modes that may be nonzero; effective limits keep their Cauchy sequence
/// so that norms and point values can be taken from an element.
class FourierDescriptor {
public:
	FourierDescriptor(Rational omega, CoeffFn coeff, TailFn nu,
	                  std::optional<std::vector<std::uint64_t>> support = std::nullopt);

	const Rational &omega() const { return omega_; }
	ExactReal coefficient(std::uint64_t index) const { return coeff_->at(index); }
	std::uint64_t tail(Precision M) const;

	/// |x_0| for m = 0, |x_2m + j x_2m-1| otherwise.
	ExactReal mode_modulus(std::uint64_t m) const;

	/// Sorted modes outside of which all coefficients vanish, if known.
	const std::vector<std::uint64_t> *support() const { return support_.get(); }

	struct Limit;
	const Limit *limit() const { return limit_.get(); }

	/// Same data under another label. No validity check.
	FourierDescriptor relabeled(Rational omega) const;
	/// Same coefficients with a new tail modulus; drops limit structure.
	FourierDescriptor with_tail(Rational omega, TailFn nu) const;

	const CoefficientSource *source() const { return coeff_.get(); }
	const TailFn *tail_fn() const { return nu_.get(); }

private:
	friend FourierDescriptor effective_limit(const FourierCauchySeq &seq);
	FourierDescriptor() = default;

	Rational omega_;
	std::shared_ptr<const CoefficientSource> coeff_;
	std::shared_ptr<const TailFn> nu_;
	std::shared_ptr<const std::vector<std::uint64_t>> support_;
	std::shared_ptr<const Limit> limit_;
};

struct FourierDescriptor::Limit {
	FourierCauchySeq seq;
	FourierDescriptor element(std::uint64_t m) const;
};

/// eps(w,n): 1 if w = 0, 0 if w > 0 and n = 0, n^w otherwise.
ExactReal epsilon(const Rational &omega, std::uint64_t n);

// constructors

enum class Basis { cos, sin };

struct TrigTerm {
	Basis basis;
	std::uint64_t m; ///< frequency; m = 0 with Basis::cos is the constant
	Rational value;

	friend bool operator==(const TrigTerm &, const TrigTerm &) = default;
};

FourierDescriptor zero_descriptor(const Rational &omega);
/// Throws RangeError on duplicate frequencies or "sin 0".
FourierDescriptor trigpoly(const Rational &omega, const std::vector<TrigTerm> &terms);
/// eps(w,j)^-1 cos_j for j >= 1, the constant 1 for j = 0.
FourierDescriptor normalized_mode(const Rational &omega, std::uint64_t j);
/// Coefficients m^-s on one basis. Needs s - omega > 1.
FourierDescriptor pseries(const Rational &omega, const Rational &s, Basis basis);

// operations

Rational eval_at(const FourierDescriptor &f, const ExactReal &t, Precision M);
ExactReal wiener_norm(const FourierDescriptor &f);
/// x (f + g); throws SmoothnessMismatch when labels differ.
FourierDescriptor linear_combine(const ExactReal &x, const FourierDescriptor &f,
                                 const FourierDescriptor &g);
FourierDescriptor effective_limit(const FourierCauchySeq &seq);
/// Weyl derivative of order tau; throws InsufficientSmoothness if tau > omega.
FourierDescriptor frac_derivative(const FourierDescriptor &f, const Rational &tau);
/// Relabels to 0 <= tau < omega; throws NotADowncast otherwise.
FourierDescriptor upcast_smoothness(const FourierDescriptor &f, const Rational &tau);

/// One run of the tail search behind certify_membership for a single n:
/// looks for m with q (m+1)^-(sigma-omega) < 2^-n.
SemiDecision probe_membership(const Rational &omega, const Rational &sigma,
                              const Rational &q, std::uint64_t n, std::uint64_t fuel);

/// Relabels f (at tau) to omega given tau < omega < sigma and
/// q >= ||f||_sigma. nu(n) = h(n) + 1 where h(n) is found by search;
/// throws FuelExhausted when a search runs dry.
FourierDescriptor certify_membership(const FourierDescriptor &f, const Rational &omega,
                                     const Rational &sigma, const Rational &q,
                                     std::uint64_t fuel);

/// Anytime estimator of the degree of smoothness. stage >= 1.
StageEstimate omega_estimate(const FourierDescriptor &f, std::uint64_t stage);

/// lambda(m) = max { l : l <= H_m } with H_m the m-th harmonic number.
std::uint64_t harmonic_index(std::uint64_t m);

/// Descriptor at smoothness 0 whose degree of smoothness is max(tau, x)
/// for the liminf real x.
FourierDescriptor thm2_witness(const LimitReal &x, const Rational &tau);

} // namespace effcalc

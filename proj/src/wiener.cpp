/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#include <effcalc/wiener.hpp>
#include <effcalc/error.hpp>

#include "bounds.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

namespace effcalc {

struct CoefficientSource::Cache {
	std::mutex mu;
	std::unordered_map<std::uint64_t, ExactReal> values;
};

CoefficientSource::CoefficientSource(CoeffFn f)
: f_(std::move(f)), cache_(std::make_unique<Cache>())
{}

CoefficientSource::~CoefficientSource() = default;

ExactReal CoefficientSource::at(std::uint64_t index) const
{
	{
		std::lock_guard lock(cache_->mu);
		auto it = cache_->values.find(index);
		if (it != cache_->values.end())
			return it->second;
	}
	ExactReal v = f_(index);
	std::lock_guard lock(cache_->mu);
	return cache_->values.emplace(index, std::move(v)).first->second;
}

FourierDescriptor::FourierDescriptor(Rational omega, CoeffFn coeff, TailFn nu,
                                     std::optional<std::vector<std::uint64_t>> support)
: omega_(std::move(omega))
, coeff_(std::make_shared<CoefficientSource>(std::move(coeff)))
, nu_(std::make_shared<TailFn>(std::move(nu)))
{
	if (omega_.sign() < 0)
		throw RangeError("smoothness label must be >= 0, got " + omega_.str());
	if (support) {
		std::sort(support->begin(), support->end());
		support->erase(std::unique(support->begin(), support->end()), support->end());
		support_ = std::make_shared<const std::vector<std::uint64_t>>(std::move(*support));
	}
}

std::uint64_t FourierDescriptor::tail(Precision M) const
{
	return std::max<std::uint64_t>(1, (*nu_)(M));
}

ExactReal FourierDescriptor::mode_modulus(std::uint64_t m) const
{
	if (m == 0)
		return absval(coefficient(0));
	return modulus(coefficient(2 * m), coefficient(2 * m - 1));
}

FourierDescriptor FourierDescriptor::relabeled(Rational omega) const
{
	FourierDescriptor g = *this;
	g.omega_ = std::move(omega);
	return g;
}

FourierDescriptor FourierDescriptor::with_tail(Rational omega, TailFn nu) const
{
	FourierDescriptor g = *this;
	g.omega_ = std::move(omega);
	g.nu_ = std::make_shared<TailFn>(std::move(nu));
	g.limit_.reset();
	return g;
}

FourierDescriptor FourierDescriptor::Limit::element(std::uint64_t m) const
{
	return seq.elements(m);
}

ExactReal epsilon(const Rational &omega, std::uint64_t n)
{
	if (omega.is_zero())
		return ExactReal(1);
	if (n == 0)
		return ExactReal(0);
	return rat_pow(n, omega);
}

// constructors

FourierDescriptor zero_descriptor(const Rational &omega)
{
	return FourierDescriptor(omega, [](std::uint64_t) { return ExactReal(0); },
	                         [](Precision) { return std::uint64_t{1}; },
	                         std::vector<std::uint64_t>{});
}

FourierDescriptor trigpoly(const Rational &omega, const std::vector<TrigTerm> &terms)
{
	std::map<std::uint64_t, Rational> coeffs;
	std::vector<std::uint64_t> modes;
	std::uint64_t top = 0;
	for (const auto &t : terms) {
		if (t.basis == Basis::sin && t.m == 0)
			throw RangeError("sin 0 is not a basis function");
		std::uint64_t idx = t.m == 0 ? 0 : t.basis == Basis::cos ? 2 * t.m : 2 * t.m - 1;
		if (!coeffs.emplace(idx, t.value).second)
			throw RangeError("duplicate term for frequency " + std::to_string(t.m));
		modes.push_back(t.m);
		top = std::max(top, t.m);
	}
	return FourierDescriptor(
		omega,
		[coeffs = std::move(coeffs)](std::uint64_t idx) {
			auto it = coeffs.find(idx);
			return it == coeffs.end() ? ExactReal(0) : ExactReal(it->second);
		},
		[top](Precision) { return top + 1; },
		std::move(modes));
}

FourierDescriptor normalized_mode(const Rational &omega, std::uint64_t j)
{
	if (j == 0)
		return trigpoly(omega, {{Basis::cos, 0, Rational(1)}});
	ExactReal c = rat_pow(j, -omega);
	return FourierDescriptor(
		omega,
		[c, j](std::uint64_t idx) { return idx == 2 * j ? c : ExactReal(0); },
		[j](Precision) { return j + 1; },
		std::vector<std::uint64_t>{j});
}

FourierDescriptor pseries(const Rational &omega, const Rational &s, Basis basis)
{
	Rational a = s - omega;
	if (a <= Rational(1))
		throw RangeError("pseries needs s - omega > 1 (s=" + s.str() +
		                 ", omega=" + omega.str() + ")");
	/* sum_{m>=N} m^-a <= N^(1-a) a/(a-1) */
	Rational c = a / (a - Rational(1));
	TailFn nu = [a, c](Precision M) {
		return detail::smallest_power_exceeding(a - Rational(1),
		                                        c * Rational::pow2(detail::clamp0(M)));
	};
	Rational ms = -s;
	return FourierDescriptor(
		omega,
		[ms, basis](std::uint64_t idx) {
			if (idx == 0)
				return ExactReal(0);
			bool even = idx % 2 == 0;
			if (even != (basis == Basis::cos))
				return ExactReal(0);
			return rat_pow((idx + 1) / 2, ms);
		},
		detail::memo_tail(std::move(nu)));
}

// operations

namespace {

std::vector<std::uint64_t> modes_below(const FourierDescriptor &f, std::uint64_t N)
{
	if (const auto *s = f.support())
		return *s;
	if (N > max_series_terms)
		throw ResourceLimit("series needs " + std::to_string(N) + " terms");
	std::vector<std::uint64_t> v(N);
	for (std::uint64_t m = 0; m < N; m++)
		v[m] = m;
	return v;
}

} // namespace

Rational eval_at(const FourierDescriptor &f, const ExactReal &t, Precision M)
{
	if (const auto *L = f.limit()) {
		FourierDescriptor g = L->element(L->seq.modulus(M + 1)).relabeled(f.omega());
		return eval_at(g, t, M + 1);
	}
	std::vector<ExactReal> terms;
	for (std::uint64_t m : modes_below(f, f.tail(M + 1))) {
		if (m == 0) {
			terms.push_back(f.coefficient(0));
			continue;
		}
		ExactReal a = f.coefficient(2 * m), b = f.coefficient(2 * m - 1);
		if (a.is_exact_zero() && b.is_exact_zero())
			continue;
		ExactReal mt = mul(ExactReal(Rational(m)), t);
		if (!a.is_exact_zero())
			terms.push_back(mul(a, cos(mt)));
		if (!b.is_exact_zero())
			terms.push_back(mul(b, sin(mt)));
	}
	return sum(terms).approx(M + 1);
}

namespace {

ExactReal norm_branch(const FourierDescriptor &f, const Rational &tau)
{
	auto term = [f, tau](std::uint64_t m) {
		return mul(epsilon(tau, m), f.mode_modulus(m));
	};
	if (const auto *s = f.support()) {
		std::vector<ExactReal> terms;
		for (std::uint64_t m : *s)
			terms.push_back(term(m));
		return sum(terms);
	}
	return series(term, [f](Precision M) { return f.tail(M); });
}

} // namespace

ExactReal wiener_norm(const FourierDescriptor &f)
{
	if (f.limit()) {
		/* | ||f|| - ||f_e|| | <= ||f - f_e|| <= 2^-(M+1) */
		return ExactReal([f](Precision M) {
			const auto *L = f.limit();
			FourierDescriptor g = L->element(L->seq.modulus(M + 1)).relabeled(f.omega());
			return wiener_norm(g).approx(M + 1);
		});
	}
	ExactReal b0 = norm_branch(f, Rational(0));
	if (f.omega().is_zero())
		return b0;
	return maxval(b0, norm_branch(f, f.omega()));
}

FourierDescriptor linear_combine(const ExactReal &x, const FourierDescriptor &f,
                                 const FourierDescriptor &g)
{
	if (f.omega() != g.omega())
		throw SmoothnessMismatch("smoothness labels differ: " + f.omega().str() +
		                         " vs " + g.omega().str());
	if (x.is_exact_zero())
		return zero_descriptor(f.omega());
	std::optional<std::vector<std::uint64_t>> support;
	if (f.support() && g.support()) {
		support = *f.support();
		support->insert(support->end(), g.support()->begin(), g.support()->end());
	}
	TailFn nu = [x, f, g](Precision M) {
		mpz_class X = x.approx(0).abs().ceil() + 1;
		Precision B = ceil_log2(mpz_class(X + 1));
		return std::max(f.tail(M + 1 + B), g.tail(M + 1 + B));
	};
	return FourierDescriptor(
		f.omega(),
		[x, f, g](std::uint64_t idx) {
			return mul(x, add(f.coefficient(idx), g.coefficient(idx)));
		},
		detail::memo_tail(std::move(nu)), std::move(support));
}

FourierDescriptor effective_limit(const FourierCauchySeq &seq)
{
	auto L = std::make_shared<FourierDescriptor::Limit>(FourierDescriptor::Limit{seq});
	FourierDescriptor first = seq.elements(0);
	FourierDescriptor out(
		first.omega(),
		[L](std::uint64_t idx) {
			return ExactReal([L, idx](Precision M) {
				return L->element(L->seq.modulus(M + 1)).coefficient(idx).approx(M + 1);
			});
		},
		detail::memo_tail([L](Precision M) {
			return L->element(L->seq.modulus(M + 2)).tail(M + 2);
		}));
	out.limit_ = L;
	return out;
}

FourierDescriptor frac_derivative(const FourierDescriptor &f, const Rational &tau)
{
	if (tau.sign() < 0)
		throw RangeError("derivative order must be >= 0");
	if (tau > f.omega())
		throw InsufficientSmoothness("derivative of order " + tau.str() +
		                             " needs smoothness >= " + tau.str() +
		                             ", descriptor has " + f.omega().str());
	auto [c, s] = quarter_turn(tau);
	bool keep_const = tau.is_zero();
	std::optional<std::vector<std::uint64_t>> support;
	if (const auto *sp = f.support()) {
		support.emplace();
		for (std::uint64_t m : *sp)
			if (m != 0 || keep_const)
				support->push_back(m);
	}
	Rational label = f.omega() - tau;
	FourierDescriptor out(
		label,
		[f, tau, c = c, s = s, keep_const](std::uint64_t idx) {
			if (idx == 0)
				return keep_const ? f.coefficient(0) : ExactReal(0);
			std::uint64_t m = (idx + 1) / 2;
			ExactReal a = f.coefficient(2 * m), b = f.coefficient(2 * m - 1);
			ExactReal r = idx % 2 == 0 ? add(mul(a, c), mul(b, s))
			                           : sub(mul(b, c), mul(a, s));
			return mul(rat_pow(m, tau), r);
		},
		[f](Precision M) { return f.tail(M); }, std::move(support));
	if (const auto *L = f.limit()) {
		/* bounded operator: ||D f||_{w-t} <= ||f||_w, so the modulus carries over */
		FourierCauchySeq seq{
			[L, tau](std::uint64_t m) { return frac_derivative(L->element(m), tau); },
			L->seq.modulus};
		FourierDescriptor lim = effective_limit(seq).relabeled(label);
		return lim;
	}
	return out;
}

FourierDescriptor upcast_smoothness(const FourierDescriptor &f, const Rational &tau)
{
	if (tau.sign() < 0)
		throw RangeError("smoothness label must be >= 0, got " + tau.str());
	if (tau >= f.omega())
		throw NotADowncast("upcast needs 0 <= tau < omega (tau=" + tau.str() +
		                   ", omega=" + f.omega().str() + ")");
	return f.relabeled(tau);
}

SemiDecision probe_membership(const Rational &omega, const Rational &sigma,
                              const Rational &q, std::uint64_t n, std::uint64_t fuel)
{
	Rational p = sigma - omega;
	ExactReal qq(q), shift(Rational::pow2(-static_cast<Precision>(n)));
	return semidecide_exists_lt(
		[=](std::uint64_t m) { return sub(mul(qq, rat_pow(m + 1, -p)), shift); },
		ExactReal(0), fuel);
}

FourierDescriptor certify_membership(const FourierDescriptor &f, const Rational &omega,
                                     const Rational &sigma, const Rational &q,
                                     std::uint64_t fuel)
{
	if (!(f.omega() < omega && omega < sigma))
		throw PreconditionViolation("certify_membership needs tau < omega < sigma (tau=" +
		                            f.omega().str() + ", omega=" + omega.str() +
		                            ", sigma=" + sigma.str() + ")");
	if (q.sign() <= 0)
		throw PreconditionViolation("certify_membership needs q > 0");
	TailFn nu = [omega, sigma, q, fuel](Precision M) {
		auto n = static_cast<std::uint64_t>(detail::clamp0(M));
		SemiDecision d = probe_membership(omega, sigma, q, n, fuel);
		if (auto *h = std::get_if<Halted>(&d))
			return *h->witness + 1;
		throw FuelExhausted("tail search for n=" + std::to_string(n) +
		                    " exhausted its fuel", fuel);
	};
	return f.with_tail(omega, detail::memo_tail(std::move(nu)));
}

StageEstimate omega_estimate(const FourierDescriptor &f, std::uint64_t stage)
{
	if (stage == 0)
		throw PreconditionViolation("stage must be >= 1");
	if (stage > 20)
		throw ResourceLimit("stage above 20 needs more than 2^22 coefficients");
	constexpr Precision P = 96;
	Rational err = Rational::pow2(-P);
	std::uint64_t D = estimator_depth(stage);
	std::vector<Rational> lows;
	lows.reserve(D - stage);
	for (std::uint64_t n = stage + 1; n <= D; n++)
		lows.push_back(std::max(Rational(0), f.mode_modulus(n).approx(P) - err));
	return detail::omega_from_lows(lows, stage);
}

// harmonic index

namespace {

struct HarmonicState {
	std::mutex mu;
	std::uint64_t scanned = 0;           // H_scanned is accounted for
	unsigned __int128 lo = 0, hi = 0;    // floor/ceil of H_scanned * 2^96
	std::vector<std::uint64_t> thresholds; // thresholds[l-1] = min { m : H_m >= l }
};

bool exact_reaches(std::uint64_t m, std::uint64_t l)
{
	mpq_class h = 0;
	for (std::uint64_t n = 1; n <= m; n++)
		h += mpq_class(1, n);
	return h >= l;
}

} // namespace

std::uint64_t harmonic_index(std::uint64_t m)
{
	static HarmonicState st;
	if (m > (std::uint64_t{1} << 32))
		throw ResourceLimit("harmonic index beyond 2^32");
	std::lock_guard lock(st.mu);
	const unsigned __int128 one = static_cast<unsigned __int128>(1) << 96;
	while (st.scanned < m) {
		std::uint64_t n = ++st.scanned;
		st.lo += one / n;
		st.hi += (one + n - 1) / n;
		std::uint64_t l = st.thresholds.size() + 1;
		unsigned __int128 target = one * l;
		bool reached;
		if (st.lo >= target)
			reached = true;
		else if (st.hi < target)
			reached = false;
		else
			reached = exact_reaches(n, l);
		if (reached)
			st.thresholds.push_back(n);
	}
	return static_cast<std::uint64_t>(
		std::upper_bound(st.thresholds.begin(), st.thresholds.end(), m) -
		st.thresholds.begin());
}

FourierDescriptor thm2_witness(const LimitReal &x, const Rational &tau)
{
	if (tau.sign() <= 0)
		throw RangeError("thm2 witness needs tau > 0");
	auto y = [x, tau](std::uint64_t j) {
		return std::max(tau, x.stage(harmonic_index(j))) + Rational(1);
	};
	auto element = [y](std::uint64_t m) {
		/* f_m = sum_{l=1}^{m+1} sin_l l^-y_{l-1} */
		return FourierDescriptor(
			Rational(0),
			[y, m](std::uint64_t idx) {
				if (idx % 2 == 0)
					return ExactReal(0);
				std::uint64_t l = (idx + 1) / 2;
				if (l > m + 1 && m != UINT64_MAX)
					return ExactReal(0);
				return rat_pow(l, -y(l - 1));
			},
			[m](Precision) { return detail::sat_add(m, 2); });
	};
	/* ||f_m - f_{m+l}|| <= q (m+2)^(-tau/2), q = (2+tau)/tau >= zeta(1+tau/2) */
	Rational q = (Rational(2) + tau) / tau;
	Rational half = tau / Rational(2);
	auto modulus = [q, half](Precision M) {
		std::uint64_t t = detail::smallest_power_exceeding(
			half, q * Rational::pow2(detail::clamp0(M)));
		return t > 2 ? t - 2 : 0;
	};
	return effective_limit({element, modulus});
}

} // namespace effcalc

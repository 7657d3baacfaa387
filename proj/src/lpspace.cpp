/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#include <effcalc/lpspace.hpp>
#include <effcalc/error.hpp>

#include "bounds.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

namespace effcalc {

Exponent::Exponent(Rational p)
: p_(std::move(p))
{
	if (p_ < Rational(1))
		throw RangeError("decay label must be >= 1 or inf, got " + p_.str());
}

Exponent Exponent::inf()
{
	Exponent e;
	e.inf_ = true;
	return e;
}

std::string Exponent::str() const
{
	return inf_ ? "inf" : p_.str();
}

struct LpDescriptor::Source {
	explicit Source(LpCoeffFn f) : f(std::move(f)) {}

	LpCoeffFn f;
	mutable std::mutex mu;
	mutable std::unordered_map<std::uint64_t, LpCoeff> cache;

	LpCoeff at(std::uint64_t m) const
	{
		{
			std::lock_guard lock(mu);
			auto it = cache.find(m);
			if (it != cache.end())
				return it->second;
		}
		LpCoeff v = f(m);
		std::lock_guard lock(mu);
		return cache.emplace(m, std::move(v)).first->second;
	}
};

LpDescriptor::LpDescriptor(Exponent p, LpCoeffFn coeff, TailFn nu,
                           std::optional<std::vector<std::uint64_t>> support,
                           NormFn closed_norm)
: p_(std::move(p))
, coeff_(std::make_shared<Source>(std::move(coeff)))
, nu_(std::make_shared<TailFn>(std::move(nu)))
{
	if (support) {
		std::sort(support->begin(), support->end());
		support->erase(std::unique(support->begin(), support->end()), support->end());
		support_ = std::make_shared<const std::vector<std::uint64_t>>(std::move(*support));
	}
	if (closed_norm)
		closed_norm_ = std::make_shared<const NormFn>(std::move(closed_norm));
}

LpCoeff LpDescriptor::coefficient(std::uint64_t m) const
{
	return coeff_->at(m);
}

ExactReal LpDescriptor::magnitude(std::uint64_t m) const
{
	auto [re, im] = coefficient(m);
	return modulus(re, im);
}

std::uint64_t LpDescriptor::tail(Precision M) const
{
	return std::max<std::uint64_t>(1, (*nu_)(M));
}

LpDescriptor LpDescriptor::relabeled(Exponent p) const
{
	LpDescriptor g = *this;
	g.p_ = std::move(p);
	return g;
}

LpDescriptor LpDescriptor::with_tail(Exponent p, TailFn nu, bool keep_limit) const
{
	LpDescriptor g = *this;
	g.p_ = std::move(p);
	g.nu_ = std::make_shared<TailFn>(std::move(nu));
	if (!keep_limit)
		g.limit_.reset();
	return g;
}

// constructors

LpDescriptor lp_zero(const Exponent &p)
{
	return LpDescriptor(p, [](std::uint64_t) { return LpCoeff{ExactReal(0), ExactReal(0)}; },
	                    [](Precision) { return std::uint64_t{1}; },
	                    std::vector<std::uint64_t>{});
}

LpDescriptor spike(const Exponent &p, std::uint64_t k, const Rational &value)
{
	return LpDescriptor(
		p,
		[k, value](std::uint64_t m) {
			return LpCoeff{ExactReal(m == k ? value : Rational(0)), ExactReal(0)};
		},
		[k](Precision) { return k + 1; }, std::vector<std::uint64_t>{k});
}

LpDescriptor geometric(const Exponent &p, const Rational &r)
{
	if (r.sign() <= 0 || r >= Rational(1))
		throw RangeError("geometric ratio must lie in (0, 1), got " + r.str());
	/* |f(m)|^p <= r^(m+1) for p >= 1, tail sum <= r^(N+1)/(1-r);
	 * for p = inf the bound r^(N+1) is used directly */
	bool inf = p.is_inf();
	TailFn nu = [r, inf](Precision M) {
		Rational eps = Rational::pow2(-detail::clamp0(M));
		Rational scale = inf ? Rational(1) : Rational(1) / (Rational(1) - r);
		Rational t = r * r;
		std::uint64_t N = 1;
		while (t * scale >= eps) {
			t *= r;
			N++;
		}
		return N;
	};
	return LpDescriptor(
		p,
		[r](std::uint64_t m) {
			mpz_class n, d;
			mpz_pow_ui(n.get_mpz_t(), r.num().get_mpz_t(), m + 1);
			mpz_pow_ui(d.get_mpz_t(), r.den().get_mpz_t(), m + 1);
			return LpCoeff{ExactReal(Rational(n, d)), ExactReal(0)};
		},
		detail::memo_tail(std::move(nu)));
}

LpDescriptor pdecay(const Exponent &p, const Rational &s)
{
	if (s.sign() <= 0)
		throw RangeError("pdecay needs s > 0");
	TailFn nu;
	if (p.is_inf()) {
		/* (m+1)^-s <= 2^-M once m+1 >= 2^(M/s) */
		nu = [s](Precision M) {
			mpz_class c = detail::ceil_pow2(Rational(detail::clamp0(M)) / s);
			return std::max<std::uint64_t>(1, saturate_u64(c - 1));
		};
	} else {
		Rational a = s * p.value();
		if (a <= Rational(1))
			throw RangeError("pdecay needs s p > 1 (s=" + s.str() + ", p=" + p.str() + ")");
		/* sum_{k>=N+1} k^-a <= (N+1)^(1-a) a/(a-1) */
		Rational c = a / (a - Rational(1));
		nu = [a, c](Precision M) {
			std::uint64_t K = detail::smallest_power_exceeding(
				a - Rational(1), c * Rational::pow2(detail::clamp0(M)));
			return std::max<std::uint64_t>(1, K - 1);
		};
	}
	Rational ms = -s;
	return LpDescriptor(
		p,
		[ms](std::uint64_t m) { return LpCoeff{rat_pow(detail::sat_add(m, 1), ms), ExactReal(0)}; },
		detail::memo_tail(std::move(nu)));
}

LpDescriptor block_vector(const Exponent &p, const Rational &omega, std::uint64_t j)
{
	if (j == 0)
		return lp_zero(p);
	Rational inv = Rational(1) / omega;
	ExactReal v = rat_pow(j, -inv);
	NormFn norm = [j, inv](const Exponent &e) {
		/* ||h_j||_e = j^(1/e - 1/omega), j^(-1/omega) for e = inf */
		return rat_pow(j, (e.is_inf() ? Rational(0) : Rational(1) / e.value()) - inv);
	};
	return LpDescriptor(
		p,
		[v, j](std::uint64_t m) { return LpCoeff{m < j ? v : ExactReal(0), ExactReal(0)}; },
		[j](Precision) { return j; }, std::nullopt, std::move(norm));
}

// operations

ExactReal lp_norm(const LpDescriptor &f)
{
	if (const auto *cn = f.closed_norm())
		return (*cn)(f.p());
	if (f.limit()) {
		return ExactReal([f](Precision M) {
			const auto *L = f.limit();
			LpDescriptor g = L->elements(L->modulus(M + 1)).relabeled(f.p());
			return lp_norm(g).approx(M + 1);
		});
	}
	if (f.p().is_inf()) {
		if (const auto *s = f.support()) {
			ExactReal best(0);
			for (std::uint64_t m : *s)
				best = maxval(best, f.magnitude(m));
			return best;
		}
		/* Widen the prefix one tail level at a time: once the prefix max
		 * clears the tail bound 2^-K it is the supremum. Otherwise the
		 * last level K = M+1 leaves a tail below 2^-(M+1). */
		return ExactReal([f](Precision M) {
			Rational best = 0;
			std::uint64_t done = 0;
			for (Precision K = 0; K <= M + 1; K++) {
				std::uint64_t N = f.tail(K);
				if (N > max_series_terms)
					throw ResourceLimit("sup needs " + std::to_string(N) + " terms");
				for (; done < N; done++)
					best = std::max(best, f.magnitude(done).approx(M + 1));
				if (best - Rational::pow2(-(M + 1)) >= Rational::pow2(-K))
					return best;
			}
			return std::max(best, Rational::pow2(-(M + 2)));
		});
	}
	Rational p = f.p().value();
	auto term = [f, p](std::uint64_t m) { return pow_nonneg(f.magnitude(m), p); };
	ExactReal total;
	if (const auto *s = f.support()) {
		std::vector<ExactReal> terms;
		for (std::uint64_t m : *s)
			terms.push_back(term(m));
		total = sum(terms);
	} else {
		total = series(term, [f](Precision M) { return f.tail(M); });
	}
	return pow_nonneg(total, Rational(1) / p);
}

LpDescriptor lp_effective_limit(const LpCauchySeq &seq)
{
	auto L = std::make_shared<const LpCauchySeq>(seq);
	LpDescriptor first = seq.elements(0);
	Exponent p = first.p();
	auto part = [L](std::uint64_t m, bool im) {
		return ExactReal([L, m, im](Precision M) {
			LpCoeff c = L->elements(L->modulus(M + 1)).coefficient(m);
			return (im ? c.second : c.first).approx(M + 1);
		});
	};
	TailFn nu;
	if (p.is_inf()) {
		nu = [L](Precision M) { return L->elements(L->modulus(M + 1)).tail(M + 1); };
	} else {
		Rational pv = p.value();
		nu = [L, pv](Precision M) {
			/* element within 2^-K, K = ceil(M/p) + 1, and its tail p-norm below 2^-K */
			Precision K = static_cast<Precision>(
				(Rational(detail::clamp0(M)) / pv).ceil().get_si()) + 1;
			Precision Kp = static_cast<Precision>((Rational(K) * pv).ceil().get_si());
			return L->elements(L->modulus(K)).tail(Kp);
		};
	}
	LpDescriptor out(
		p, [part](std::uint64_t m) { return LpCoeff{part(m, false), part(m, true)}; },
		detail::memo_tail(std::move(nu)));
	out.limit_ = L;
	return out;
}

LpDescriptor upcast_decay(const LpDescriptor &f, const Exponent &tau)
{
	if (!(f.p() < tau))
		throw NotAnUpcast("upcast needs tau > p (p=" + f.p().str() +
		                  ", tau=" + tau.str() + ")");
	TailFn nu;
	if (tau.is_inf()) {
		/* |y|^p < 2^-(pM) termwise beyond nu(ceil(pM)) */
		Rational p = f.p().value();
		nu = [f, p](Precision M) {
			Precision K = static_cast<Precision>(
				(Rational(detail::clamp0(M)) * p).ceil().get_si());
			return std::max(f.tail(K), f.tail(0));
		};
	} else {
		/* |y| < 1 beyond nu(0), so |y|^tau <= |y|^p there */
		nu = [f](Precision M) { return std::max(f.tail(M), f.tail(0)); };
	}
	return f.with_tail(tau, std::move(nu), true);
}

SemiDecision probe_decay(const Exponent &tau, const Rational &omega, const Rational &sigma,
                         const Rational &q, std::uint64_t n, std::uint64_t fuel)
{
	Rational tp = tau.is_inf() ? Rational(1) : tau.value();
	Rational rate = (omega - sigma) / tp;
	ExactReal qq(q), shift(Rational::pow2(-static_cast<Precision>(n)));
	return semidecide_exists_lt(
		[=](std::uint64_t K) {
			return sub(mul(qq, rat_pow(2, -(Rational(K) * rate))), shift);
		},
		ExactReal(0), fuel);
}

LpDescriptor certify_decay(const LpDescriptor &f, const Rational &omega,
                           const Rational &sigma, const Rational &q, std::uint64_t fuel)
{
	if (!(Rational(1) <= sigma && sigma < omega && Exponent(omega) < f.p()))
		throw PreconditionViolation("certify_decay needs 1 <= sigma < omega < tau (sigma=" +
		                            sigma.str() + ", omega=" + omega.str() +
		                            ", tau=" + f.p().str() + ")");
	if (q.sign() <= 0)
		throw PreconditionViolation("certify_decay needs q > 0");
	Exponent tau = f.p();
	TailFn nu = [f, tau, omega, sigma, q, fuel](Precision M) {
		auto n = static_cast<std::uint64_t>(detail::clamp0(M));
		SemiDecision d = probe_decay(tau, omega, sigma, q, n, fuel);
		if (auto *h = std::get_if<Halted>(&d))
			return f.tail(static_cast<Precision>(*h->witness));
		throw FuelExhausted("tail search for n=" + std::to_string(n) +
		                    " exhausted its fuel", fuel);
	};
	return f.with_tail(Exponent(omega), detail::memo_tail(std::move(nu)), false);
}

StageEstimate psi_estimate(const LpDescriptor &f, std::uint64_t stage)
{
	if (!f.p().is_inf())
		throw PreconditionViolation("psi estimate needs a descriptor at p = inf, got p=" +
		                            f.p().str());
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
		lows.push_back(std::max(Rational(0), f.magnitude(n).approx(P) - err));
	return detail::psi_from_lows(lows, stage);
}

LpDescriptor thm4_witness(const LimitReal &x, const Rational &tau)
{
	if (tau <= Rational(1))
		throw RangeError("thm4 witness needs tau > 1");
	auto coeff = [x, tau](std::uint64_t m) {
		Rational y = std::min(tau, x.stage(harmonic_index(m)));
		if (y.sign() <= 0)
			throw RangeError("thm4 target stage must be positive, got " + y.str());
		return LpCoeff{rat_pow(detail::sat_add(m, 1), -(Rational(1) / y)), ExactReal(0)};
	};
	/* (m+1)^(-1/y) <= (m+1)^(-1/tau) <= 2^-M once m+1 >= 2^(M tau) */
	TailFn nu = [tau](Precision M) {
		mpz_class c = detail::ceil_pow2(Rational(detail::clamp0(M)) * tau);
		return std::max<std::uint64_t>(1, saturate_u64(c - 1));
	};
	return LpDescriptor(Exponent::inf(), coeff, detail::memo_tail(std::move(nu)));
}

LpDescriptor wiener_to_l1(const FourierDescriptor &f)
{
	if (!f.omega().is_zero())
		throw SmoothnessMismatch("isometry needs smoothness 0, got " + f.omega().str());
	if (const auto *L = f.limit()) {
		auto seq = L->seq;
		return lp_effective_limit(
			{[seq](std::uint64_t m) { return wiener_to_l1(seq.elements(m).relabeled(0)); },
			 seq.modulus});
	}
	std::optional<std::vector<std::uint64_t>> support;
	if (f.support())
		support = *f.support();
	return LpDescriptor(
		Exponent(1),
		[f](std::uint64_t m) {
			if (m == 0)
				return LpCoeff{f.coefficient(0), ExactReal(0)};
			return LpCoeff{f.coefficient(2 * m), f.coefficient(2 * m - 1)};
		},
		[f](Precision M) { return f.tail(M); }, std::move(support));
}

FourierDescriptor l1_to_wiener(const LpDescriptor &g)
{
	if (!(g.p() == Exponent(1)))
		throw PreconditionViolation("isometry needs p = 1, got " + g.p().str());
	if (const auto *L = g.limit()) {
		auto seq = *L;
		return effective_limit(
			{[seq](std::uint64_t m) { return l1_to_wiener(seq.elements(m).relabeled(Exponent(1))); },
			 seq.modulus});
	}
	std::optional<std::vector<std::uint64_t>> support;
	if (g.support())
		support = *g.support();
	return FourierDescriptor(
		Rational(0),
		[g](std::uint64_t idx) {
			if (idx == 0)
				return g.coefficient(0).first;
			LpCoeff c = g.coefficient((idx + 1) / 2);
			return idx % 2 == 0 ? c.first : c.second;
		},
		[g](Precision M) { return g.tail(M); }, std::move(support));
}

} // namespace effcalc

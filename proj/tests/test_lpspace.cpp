/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#include <doctest.h>

#include "oracles.hpp"

#include <effcalc/error.hpp>
#include <effcalc/lpspace.hpp>

#include <cmath>

using namespace effcalc;

namespace {

double norm_d(const LpDescriptor &f, Precision M = 16) { return lp_norm(f).approx(M).to_double(); }

} // namespace

TEST_CASE("exponent labels")
{
	CHECK_THROWS_AS(Exponent(Rational(1, 2)), RangeError);
	CHECK(Exponent::inf().str() == "inf");
	CHECK(Exponent(Rational(3, 2)).str() == "3/2");
	CHECK(Exponent(2) < Exponent::inf());
	CHECK_FALSE(Exponent::inf() < Exponent::inf());
}

TEST_CASE("spike norms are |value| for every p")
{
	for (Exponent p : {Exponent(1), Exponent(Rational(3, 2)), Exponent(4), Exponent::inf()})
		CHECK(lp_norm(spike(p, 5, Rational(-3, 4))).approx(12) - Rational(3, 4) <=
		      Rational::pow2(-12));
}

TEST_CASE("geometric norms have closed forms")
{
	/* sum_{m>=1} r^(mp) = r^p / (1 - r^p) */
	for (int p : {1, 2, 3}) {
		double rp = std::pow(0.5, p);
		CHECK(std::fabs(norm_d(geometric(Exponent(p))) - std::pow(rp / (1 - rp), 1.0 / p)) < 1e-4);
	}
	CHECK(std::fabs(norm_d(geometric(Exponent::inf(), Rational(1, 3))) - 1.0 / 3) < 1e-4);
	CHECK_THROWS_AS(geometric(Exponent(1), Rational(3, 2)), RangeError);
}

TEST_CASE("p-decay norms are zeta values")
{
	CHECK(std::fabs(norm_d(pdecay(Exponent(1), 2), 12) - M_PI * M_PI / 6) < 1.0 / 4096);
	CHECK(std::fabs(norm_d(pdecay(Exponent(2), 1), 12) - M_PI / std::sqrt(6.0)) < 1.0 / 4096);
	CHECK(norm_d(pdecay(Exponent::inf(), Rational(1, 2))) == doctest::Approx(1.0));
	CHECK_THROWS_AS(pdecay(Exponent(2), Rational(1, 2)), RangeError);
}

TEST_CASE("block vectors have unit norm at their own exponent")
{
	for (std::uint64_t j : {1, 2, 5, 17}) {
		LpDescriptor b = block_vector(Exponent(2), 2, j);
		CHECK(std::fabs(norm_d(b) - 1.0) < 1e-4);
		/* at p = 4: j^(1/4 - 1/2) */
		LpDescriptor b4 = block_vector(Exponent(4), 2, j);
		CHECK(std::fabs(norm_d(b4) - std::pow(double(j), -0.25)) < 1e-4);
	}
}

TEST_CASE("norms decrease as p grows")
{
	std::vector<std::function<LpDescriptor(const Exponent &)>> fams = {
		[](const Exponent &p) { return geometric(p, Rational(2, 3)); },
		[](const Exponent &p) { return pdecay(p, 2); },
		[](const Exponent &p) { return block_vector(p, 1, 7); },
	};
	for (const auto &fam : fams) {
		Rational prev = lp_norm(fam(Exponent(1))).approx(10);
		for (Exponent p : {Exponent(2), Exponent(4), Exponent::inf()}) {
			Rational cur = lp_norm(fam(p)).approx(10);
			CHECK(cur <= prev + Rational::pow2(-9));
			prev = cur;
		}
	}
}

TEST_CASE("upcast keeps data and refuses to shrink the exponent")
{
	LpDescriptor f = pdecay(Exponent(2), 1);
	LpDescriptor g = upcast_decay(f, Exponent(3));
	CHECK(g.p() == Exponent(3));
	for (std::uint64_t m = 0; m < 20; m++)
		CHECK(g.magnitude(m).approx(16) == f.magnitude(m).approx(16));
	CHECK_THROWS_AS(upcast_decay(f, Exponent(2)), NotAnUpcast);
	CHECK_THROWS_AS(upcast_decay(f, Exponent(1)), NotAnUpcast);
	CHECK_NOTHROW(upcast_decay(f, Exponent::inf()));
}

TEST_CASE("decay certificates")
{
	/* (m+1)^-1 at p = inf; sum (m+1)^-2 = zeta(2) < 2 */
	LpDescriptor f = pdecay(Exponent::inf(), 1);
	LpDescriptor g = certify_decay(f, 3, 2, 2, 100000);
	CHECK(g.p() == Exponent(3));
	CHECK(std::fabs(norm_d(g, 8) - std::cbrt(1.2020569031595942)) < 1.0 / 256);
	CHECK_THROWS_AS(certify_decay(f, 2, 3, 2, 100), PreconditionViolation);
	CHECK_THROWS_AS(certify_decay(f, 3, 2, 2, 2).tail(10), FuelExhausted);
}

TEST_CASE("decay estimates")
{
	CHECK(psi_estimate(spike(Exponent::inf(), 0), 6).kind == EstimateKind::floor);
	/* decay 1 sits on the grid floor */
	StageEstimate e = psi_estimate(pdecay(Exponent::inf(), 1), 10);
	CHECK(e.kind == EstimateKind::floor);
	CHECK(e.str() == "1 (grid floor)");
	/* (m+1)^-1/2 has degree 2, approached from below */
	StageEstimate h = psi_estimate(pdecay(Exponent::inf(), Rational(1, 2)), 10);
	CHECK(h.kind == EstimateKind::value);
	CHECK(h.value < Rational(2));
	CHECK(h.value > Rational(7, 4));
	CHECK_THROWS_AS(psi_estimate(pdecay(Exponent(2), 1), 4), PreconditionViolation);
}

TEST_CASE("decay witness for a constant target")
{
	LpDescriptor f = thm4_witness(constant_limit(LimitMode::limsup, Rational(3, 2)), 2);
	CHECK(f.p().is_inf());
	StageEstimate e = psi_estimate(f, 10);
	CHECK(std::fabs(e.value.to_double() - 1.5) < 0.15);
}

TEST_CASE("Wiener algebra and l1 are isometric")
{
	FourierDescriptor f = trigpoly(0, {{Basis::cos, 0, Rational(-1, 2)},
	                                   {Basis::cos, 2, Rational(3, 4)},
	                                   {Basis::sin, 2, 1}});
	LpDescriptor g = wiener_to_l1(f);
	CHECK(g.p() == Exponent(1));
	CHECK((lp_norm(g).approx(14) - wiener_norm(f).approx(14)).abs() <= Rational::pow2(-13));
	FourierDescriptor back = l1_to_wiener(g);
	for (std::uint64_t idx = 0; idx <= 6; idx++)
		CHECK(back.coefficient(idx).approx(20) == f.coefficient(idx).approx(20));
	CHECK_THROWS_AS(wiener_to_l1(trigpoly(1, {})), PreconditionViolation);
}

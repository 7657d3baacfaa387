/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#include <doctest.h>

#include "random_reals.hpp"

#include <effcalc/dsl.hpp>
#include <effcalc/lpspace.hpp>
#include <effcalc/wiener.hpp>

using namespace effcalc;

TEST_CASE("approximations at different precisions are consistent")
{
	std::mt19937_64 rng(1);
	for (int i = 0; i < 200; i++) {
		ExactReal x = random_real(rng, 3);
		for (Precision M : {0, 3, 8, 17, 24})
			for (Precision K : {M, M + 1, Precision{24}}) {
				Rational d = (x.approx(M) - x.approx(K)).abs();
				CHECK(d <= Rational::pow2(-M) + Rational::pow2(-K));
			}
	}
}

TEST_CASE("power laws")
{
	std::mt19937_64 rng(2);
	std::uniform_int_distribution<int> n(1, 16), num(-16, 16), den(1, 4);
	for (int i = 0; i < 100; i++) {
		std::uint64_t b = n(rng);
		Rational w1(num(rng), den(rng)), w2(num(rng), den(rng));
		Precision M = 20;
		Rational lhs = mul(rat_pow(b, w1), rat_pow(b, w2)).approx(M);
		Rational rhs = rat_pow(b, w1 + w2).approx(M);
		CHECK((lhs - rhs).abs() <= Rational::pow2(-M + 1));
	}
}

TEST_CASE("arithmetic identities hold within the error contract")
{
	std::mt19937_64 rng(3);
	for (int i = 0; i < 100; i++) {
		ExactReal x = random_real(rng, 2), y = random_real(rng, 2);
		Precision M = 16;
		CHECK((add(x, y).approx(M) - add(y, x).approx(M)).abs() <= Rational::pow2(-M + 1));
		CHECK((mul(x, y).approx(M) - mul(y, x).approx(M)).abs() <= Rational::pow2(-M + 1));
		CHECK(sub(x, x).approx(M).abs() <= Rational::pow2(-M));
		ExactReal s = sqrt(mul(x, x));
		CHECK((s.approx(M) - absval(x).approx(M)).abs() <= Rational::pow2(-M + 1));
	}
}

TEST_CASE("norm axioms on random trigonometric polynomials")
{
	std::mt19937_64 rng(4);
	std::uniform_int_distribution<int> num(-6, 6), den(1, 5), m(0, 6);
	auto poly = [&](const Rational &omega) {
		std::vector<TrigTerm> t;
		for (std::uint64_t k = 1; k <= 6; k++)
			if (rng() % 2)
				t.push_back({rng() % 2 ? Basis::cos : Basis::sin, k, Rational(num(rng), den(rng))});
		return trigpoly(omega, t);
	};
	for (int i = 0; i < 30; i++) {
		Rational omega(m(rng), 2);
		FourierDescriptor f = poly(omega), g = poly(omega);
		/* |c| <= 1 keeps |c| approx(||f||) within the same error budget */
		Rational c(num(rng), den(rng) + 5);
		Precision M = 14;
		FourierDescriptor cf = linear_combine(ExactReal(c), f, zero_descriptor(omega));
		Rational lhs = wiener_norm(cf).approx(M);
		Rational rhs = c.abs() * wiener_norm(f).approx(M);
		CHECK((lhs - rhs).abs() <= Rational::pow2(-M + 2));
		FourierDescriptor sum = linear_combine(ExactReal(1), f, g);
		CHECK(wiener_norm(sum).approx(M) <=
		      wiener_norm(f).approx(M) + wiener_norm(g).approx(M) + Rational::pow2(-M + 2));
		/* dominance under relabeling */
		if (omega.sign() > 0) {
			FourierDescriptor u = upcast_smoothness(f, Rational(0));
			CHECK(wiener_norm(u).approx(M) <= wiener_norm(f).approx(M) + Rational::pow2(-M + 1));
		}
	}
}

TEST_CASE("norm monotonicity in p on shared data")
{
	std::mt19937_64 rng(5);
	std::uniform_int_distribution<int> k(0, 20), num(1, 9);
	for (int i = 0; i < 20; i++) {
		Rational r(num(rng), 10);
		std::vector<LpDescriptor> fs = {geometric(Exponent(1), r), spike(Exponent(1), k(rng), r)};
		for (const auto &f : fs) {
			Rational prev = lp_norm(f).approx(10);
			for (Exponent p : {Exponent(Rational(3, 2)), Exponent(2), Exponent(5), Exponent::inf()}) {
				Rational cur = lp_norm(upcast_decay(f, p)).approx(10);
				CHECK(cur <= prev + Rational::pow2(-9));
				prev = cur;
			}
		}
	}
}

TEST_CASE("printer round trip on generated descriptors")
{
	std::mt19937_64 rng(6);
	std::uniform_int_distribution<int> num(-20, 20), den(1, 7), m(0, 9);
	for (int i = 0; i < 200; i++) {
		std::string s = "wiener omega=" + Rational(m(rng), den(rng)).str() + " trigpoly[";
		for (int j = 0, n = m(rng); j < n; j++) {
			if (j)
				s += ", ";
			s += (rng() % 2 ? "cos " : "sin ") + std::to_string(j + 1) + ": " +
			     Rational(num(rng), den(rng)).str();
		}
		s += "]";
		DescriptorAst a = parse_descriptor(s);
		CHECK(parse_descriptor(print_descriptor(a)) == a);
	}
}

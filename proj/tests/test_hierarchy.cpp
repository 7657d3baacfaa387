/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#include <doctest.h>

#include <effcalc/error.hpp>
#include <effcalc/hierarchy.hpp>

#include <cmath>
#include <sstream>

using namespace effcalc;

TEST_CASE("arithmetic enumerators")
{
	EvensEnumerator e;
	CHECK(e.at(0) == 0);
	CHECK(e.at(7) == 14);
	CHECK(e.first_step(10, 100) == std::optional<std::uint64_t>(5));
	CHECK(e.first_step(10, 5) == std::nullopt);
	CHECK(e.first_step(11, 1000) == std::nullopt);
	CHECK(e.membership(11) == std::optional<bool>(false));
	CHECK(e.membership(12) == std::optional<bool>(true));
	ArithmeticEnumerator a(3, 4);
	CHECK(a.at(2) == 11);
	CHECK(a.membership(1) == std::optional<bool>(false));
	CHECK_THROWS(make_enumerator("primes"));
}

TEST_CASE("toy machine programs")
{
	CHECK(ToyMachineEnumerator::program_text(0) == "[HALT]");
	CHECK(ToyMachineEnumerator::program_text(1) == "[INC0]");
	ToyMachineEnumerator t;
	/* [HALT] halts on its first instruction */
	CHECK(t.first_step(0, 10) == std::optional<std::uint64_t>(0));
	CHECK(t.membership(0) == std::optional<bool>(true));
	/* scanning agrees with first_step */
	for (std::uint64_t n = 1; n <= 6; n++) {
		auto k = t.first_step(n, 400);
		if (k) {
			CHECK(t.at(*k) == n);
			for (std::uint64_t j = 0; j < *k; j++)
				CHECK(t.at(j) != n);
		}
	}
	ToyMachineEnumerator small(64);
	CHECK_THROWS_AS(small.at(1000), ResourceLimit);
}

TEST_CASE("toy machine: looping programs are never reported")
{
	/* [DEC0 0] jumps to itself forever on a zero counter */
	ToyMachineEnumerator t;
	std::uint64_t loop = 0;
	for (std::uint64_t i = 0; i < 64; i++)
		if (ToyMachineEnumerator::program_text(i) == "[DEC0 0]")
			loop = i;
	REQUIRE(loop != 0);
	CHECK(t.first_step(loop, 20000) == std::nullopt);
	CHECK(t.membership(loop) == std::nullopt);
}

TEST_CASE("freezing family matches its frozen target")
{
	auto e = std::make_shared<EvensEnumerator>();
	for (std::uint64_t n = 0; n <= 9; n++) {
		FourierDescriptor f = counterexample_wiener(1, Rational(1, 2), e, n);
		CHECK(f.omega() == Rational(1, 2));
		auto t = counterexample_wiener_target(1, *e, n, 1000);
		REQUIRE(t);
		for (std::uint64_t idx = 0; idx <= 14; idx++)
			for (Precision M : {4, 12, 20})
				CHECK((f.coefficient(idx).approx(M) - t->coefficient(idx).approx(M)).abs() <=
				      Rational::pow2(-M + 1));
	}
}

TEST_CASE("norm dichotomy with a transparent enumerator")
{
	auto e = std::make_shared<EvensEnumerator>();
	Rational tol = Rational::pow2(-10);
	for (std::uint64_t n = 0; n <= 16; n++) {
		bool member = n % 2 == 0;
		Rational w = wiener_norm(*counterexample_wiener_target(1, *e, n, 1000)).approx(10);
		Rational l = lp_norm(*counterexample_lp_target(1, *e, n, 1000)).approx(10);
		for (const Rational &q : {w, l}) {
			if (member)
				CHECK((q - Rational(1)).abs() <= tol);
			else
				CHECK(q.abs() <= tol);
		}
	}
}

TEST_CASE("source-side norms of unfrozen limits vanish")
{
	auto e = std::make_shared<EvensEnumerator>();
	FourierDescriptor f = counterexample_wiener(1, Rational(1, 2), e, 3);
	CHECK(wiener_norm(f).approx(6) <= Rational::pow2(-5));
	LpDescriptor g = counterexample_lp(1, Exponent(2), e, 3);
	CHECK(lp_norm(g).approx(6) <= Rational::pow2(-5));
}

TEST_CASE("block vectors at the source exponent")
{
	/* ||h_4||_2 with omega 1 = 4^(1/2 - 1) = 1/2 */
	CHECK(std::fabs(lp_norm(block_vector(Exponent(2), 1, 4)).approx(16).to_double() - 0.5) < 1e-4);
}

TEST_CASE("no-downcast report over evens")
{
	auto e = std::make_shared<EvensEnumerator>();
	NoDowncastReport r = no_downcast_wiener(1, Rational(1, 2), e, 256, 0, 16);
	REQUIRE(r.rows.size() == 17);
	for (const auto &row : r.rows) {
		CHECK(row.realizer);
		CHECK(row.membership == std::optional<bool>(row.index % 2 == 0));
		CHECK(halted(row.check) == (row.index % 2 == 1));
		if (auto *h = std::get_if<Halted>(&row.check)) {
			/* recheck at twice the precision */
			Rational norm = wiener_norm(*counterexample_wiener_target(1, *e, row.index, 256))
			                    .approx(2 * static_cast<Precision>(h->steps) + 2);
			CHECK(norm < Rational(1, 2));
		}
	}
	CHECK_THROWS_AS(no_downcast_wiener(1, 2, e, 8, 0, 1), PreconditionViolation);
	CHECK_THROWS_AS(no_downcast_lp(2, Exponent(2), e, 8, 0, 1), PreconditionViolation);
}

TEST_CASE("no-downcast report over a toy machine makes no claims it cannot back")
{
	auto e = std::make_shared<ToyMachineEnumerator>();
	NoDowncastReport r = no_downcast_lp(1, Exponent(2), e, 64, 0, 8);
	for (const auto &row : r.rows) {
		CHECK_FALSE(halted(row.check));
		if (!row.realizer)
			CHECK(row.membership == std::nullopt);
	}
}

TEST_CASE("reports are deterministic")
{
	auto run = [] {
		auto e = std::make_shared<ToyMachineEnumerator>();
		std::ostringstream os;
		print_report(os, no_downcast_wiener(2, 1, e, 128, 0, 10), true);
		print_report(os, no_downcast_wiener(2, 1, e, 128, 0, 10), false);
		return os.str();
	};
	CHECK(run() == run());
}

TEST_CASE("upcast report")
{
	std::vector<std::pair<std::string, FourierDescriptor>> ws = {
		{"p3", pseries(1, 3, Basis::cos)}, {"t", trigpoly(1, {{Basis::cos, 2, 1}})}};
	UpcastReport r = upcast_demo(ws, Rational(1, 2), 10);
	REQUIRE(r.rows.size() == 2);
	for (const auto &row : r.rows)
		CHECK((row.coefficients_identical && row.tails_valid && row.norm_dominated));
	std::vector<std::pair<std::string, LpDescriptor>> none;
	CHECK(upcast_demo(none, Exponent(2), 10).rows.empty());
	std::vector<std::pair<std::string, LpDescriptor>> chain = {
		{"g", geometric(Exponent(1))}, {"g2", geometric(Exponent(2))}};
	for (const auto &row : upcast_demo(chain, Exponent::inf(), 10).rows)
		CHECK((row.coefficients_identical && row.tails_valid && row.norm_dominated));
}

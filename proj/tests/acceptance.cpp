/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

/* Acceptance gate: one PASS/FAIL line per criterion, each with its own
 * tolerance and time limit. Exit status is nonzero if any line fails.
 * Usage: acceptance GOLDEN_DIR */

#include "golden.hpp"
#include "oracles.hpp"
#include "random_reals.hpp"

#include <effcalc/dsl.hpp>
#include <effcalc/hierarchy.hpp>
#include <effcalc/integrity.hpp>
#include <effcalc/lpspace.hpp>
#include <effcalc/wiener.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace effcalc;

namespace {

struct Outcome {
	bool ok = true;
	std::string detail;

	void require(bool cond, const std::string &what)
	{
		if (!cond && ok) {
			ok = false;
			detail = what;
		}
	}
};

int failures = 0;

void criterion(int id, const char *title, double limit_s, const std::function<Outcome()> &body)
{
	auto t0 = std::chrono::steady_clock::now();
	Outcome o;
	try {
		o = body();
	} catch (const std::exception &e) {
		o.ok = false;
		o.detail = std::string("exception: ") + e.what();
	}
	double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
	bool in_time = secs < limit_s;
	bool pass = o.ok && in_time;
	failures += !pass;
	char timing[64];
	std::snprintf(timing, sizeof timing, "%.2fs/%.0fs", secs, limit_s);
	std::cout << (pass ? "PASS" : "FAIL") << " " << id << " " << title << " [" << timing << "]";
	if (!o.ok)
		std::cout << " :: " << o.detail;
	else if (!in_time)
		std::cout << " :: over time limit";
	else if (!o.detail.empty())
		std::cout << " :: " << o.detail;
	std::cout << std::endl;
}

std::string str(const Rational &q) { return q.str(); }

Outcome exact_real_consistency()
{
	Outcome o;
	std::mt19937_64 rng(0xacce55);
	for (int i = 0; i < 1000; i++) {
		ExactReal x = random_real(rng, 3);
		std::vector<Rational> a;
		for (Precision M = 0; M <= 24; M++)
			a.push_back(x.approx(M));
		for (Precision M = 0; M <= 24; M++)
			for (Precision K = M + 1; K <= 24; K++)
				o.require((a[M] - a[K]).abs() <= Rational::pow2(-M) + Rational::pow2(-K),
				          "real #" + std::to_string(i) + " at M=" + std::to_string(M) +
				              ", M'=" + std::to_string(K));
	}
	o.detail = "1000 reals, all pairs M < M' <= 24";
	return o;
}

Outcome norm_oracle()
{
	Outcome o;
	Rational tol = Rational::pow2(-12);
	for (auto [a, b] : {std::pair{0L, 1UL}, {1L, 2UL}, {1L, 1UL}, {3L, 2UL}}) {
		Rational omega{mpz_class(a), mpz_class(b)};
		for (std::uint64_t m = 1; m <= 8; m++) {
			Rational q = wiener_norm(trigpoly(omega, {{Basis::cos, m, 1}})).approx(12);
			o.require(oracle::near_power(q, m, a, b, tol),
			          "||cos_" + std::to_string(m) + "|| at omega=" + str(omega) + " = " + str(q));
			Rational u = wiener_norm(normalized_mode(omega, m)).approx(12);
			o.require((u - Rational(1)).abs() <= tol,
			          "normalized mode " + std::to_string(m) + " at omega=" + str(omega));
		}
	}
	return o;
}

std::vector<TrigTerm> random_terms(std::mt19937_64 &rng)
{
	std::uniform_int_distribution<int> num(-9, 9), den(1, 8);
	std::vector<TrigTerm> t;
	for (std::uint64_t m = 0; m <= 8; m++) {
		if (rng() % 3 == 0)
			t.push_back({Basis::cos, m, Rational(num(rng), den(rng))});
		if (m > 0 && rng() % 3 == 0)
			t.push_back({Basis::sin, m, Rational(num(rng), den(rng))});
	}
	return t;
}

Rational term_value(const std::vector<TrigTerm> &t, Basis b, std::uint64_t m)
{
	for (const auto &x : t)
		if (x.basis == b && x.m == m)
			return x.value;
	return 0;
}

Outcome fractional_calculus()
{
	Outcome o;
	std::mt19937_64 rng(0xd1ff);
	for (int i = 0; i < 20; i++) {
		auto terms = random_terms(rng);
		FourierDescriptor f = trigpoly(2, terms);
		FourierDescriptor d1 = frac_derivative(f, 1);
		for (std::uint64_t m = 1; m <= 8; m++) {
			Rational a = term_value(terms, Basis::cos, m), b = term_value(terms, Basis::sin, m);
			o.require(oracle::within(d1.coefficient(2 * m).approx(20), (Rational(m) * b).get(),
			                         Rational::pow2(-20)) &&
			              oracle::within(d1.coefficient(2 * m - 1).approx(20),
			                             (-Rational(m) * a).get(), Rational::pow2(-20)),
			          "first derivative, poly " + std::to_string(i) + " mode " + std::to_string(m));
		}
		o.require(d1.coefficient(0).approx(20) == 0, "constant survives differentiation");
		FourierDescriptor dd = frac_derivative(frac_derivative(f, Rational(1, 2)), Rational(1, 2));
		for (std::uint64_t idx = 0; idx <= 16; idx++)
			o.require((dd.coefficient(idx).approx(18) - d1.coefficient(idx).approx(18)).abs() <=
			              Rational::pow2(-18),
			          "semigroup, poly " + std::to_string(i) + " index " + std::to_string(idx));
		for (Rational tau : {Rational(1, 3), Rational(3, 2)}) {
			FourierDescriptor d = frac_derivative(f, tau);
			for (std::uint64_t m = 1; m <= 8; m++) {
				Rational lhs = d.mode_modulus(m).approx(19);
				Rational rhs = mul(rat_pow(m, tau), f.mode_modulus(m)).approx(19);
				o.require((lhs - rhs).abs() <= Rational::pow2(-18),
				          "modulus, poly " + std::to_string(i) + " tau=" + str(tau));
			}
		}
	}
	return o;
}

Outcome semidecision()
{
	Outcome o;
	for (std::uint64_t n = 0; n <= 16; n++) {
		ExactReal x(Rational(1) - Rational(mpz_class(1), mpz_class(n + 1)));
		bool h = halted(semidecide_lt(x, ExactReal(Rational(9, 10)), 10000));
		o.require(h == (n <= 8), "n=" + std::to_string(n) + (h ? " halted" : " exhausted"));
	}
	std::mt19937_64 rng(0x1e55);
	std::uniform_int_distribution<int> num(-50, 50), den(1, 30), base(2, 30);
	for (int i = 0; i < 100; i++) {
		ExactReal x, y;
		if (i % 2 == 0) {
			Rational q(num(rng), den(rng));
			x = ExactReal(q);
			y = add(ExactReal(q / Rational(3)), ExactReal(q * Rational(2, 3)));
		} else {
			std::uint64_t b = base(rng);
			Rational w(num(rng), den(rng));
			x = rat_pow(b, w);
			y = mul(rat_pow(b, w / Rational(2)), rat_pow(b, w / Rational(2)));
		}
		o.require(!halted(semidecide_lt(x, y, 300)), "x = y pair " + std::to_string(i) + " halted");
	}
	o.detail = "halting set n <= 8; 100 equal pairs exhausted";
	return o;
}

Outcome hierarchy_evidence()
{
	Outcome o;
	Rational tol = Rational::pow2(-10);
	std::vector<std::pair<std::string, FourierDescriptor>> ws;
	for (const char *s : {"wiener omega=1 trigpoly[cos 3: 1, sin 1: -1/2, const 1/4]",
	                      "wiener omega=1 trigpoly[sin 2: 1/3]", "wiener omega=1 pseries s=3",
	                      "wiener omega=1 pseries s=7/2 basis=sin",
	                      "wiener omega=1 trigpoly[cos 2: 1/2, cos 4: 1/4, cos 8: 1/8]"})
		ws.emplace_back(s, build_wiener(parse_descriptor(s)));
	std::vector<std::pair<std::string, LpDescriptor>> ls;
	for (const char *s : {"lp p=1 spike k=3 value=2", "lp p=1 geometric", "lp p=1 pdecay s=3",
	                      "lp p=1 geometric ratio=3/4",
	                      "lp p=1 from-wiener wiener omega=0 trigpoly[cos 3: 1, sin 1: -1/2]"})
		ls.emplace_back(s, build_lp(parse_descriptor(s)));
	for (const auto &r : {upcast_demo(ws, Rational(1, 2), 12), upcast_demo(ls, Exponent(2), 12)})
		for (const auto &row : r.rows)
			o.require(row.coefficients_identical && row.tails_valid && row.norm_dominated,
			          "upcast of " + row.sample);

	auto e = std::make_shared<EvensEnumerator>();
	for (std::uint64_t n = 0; n <= 16; n++) {
		bool member = n % 2 == 0;
		auto wt = counterexample_wiener_target(1, *e, n, 4096);
		auto lt = counterexample_lp_target(1, *e, n, 4096);
		o.require(wt && lt, "missing target for n=" + std::to_string(n));
		for (const Rational &q : {wiener_norm(*wt).approx(10), lp_norm(*lt).approx(10)})
			o.require(member ? (q - Rational(1)).abs() <= tol : q.abs() <= tol,
			          "norm dichotomy at n=" + std::to_string(n) + ": " + str(q));
	}
	for (const auto &r : {no_downcast_wiener(1, Rational(1, 2), e, 4096, 0, 16),
	                      no_downcast_lp(1, Exponent(2), e, 4096, 0, 16)})
		for (const auto &row : r.rows)
			o.require(row.membership == std::optional<bool>(row.index % 2 == 0) &&
			              halted(row.check) == (row.index % 2 == 1),
			          "report row " + std::to_string(row.index));
	o.detail = "10 upcasts, dichotomy and report on 0..16";
	return o;
}

/* the documented checkpoint stage for the estimator criteria */
constexpr std::uint64_t omega_stage = 12;
constexpr std::uint64_t witness_omega_stage = 8;
constexpr std::uint64_t witness_psi_stage = 12;

Outcome omega_oracle()
{
	Outcome o;
	std::string reached;
	for (Rational s : {Rational(5, 2), Rational(3), Rational(4)}) {
		FourierDescriptor f = pseries(0, s, Basis::cos);
		StageEstimate e = omega_estimate(f, omega_stage);
		double err = std::fabs(e.value.to_double() - (s - Rational(1)).to_double());
		o.require(e.kind == EstimateKind::value && err < 0.1,
		          "s=" + str(s) + " stage " + std::to_string(omega_stage) + ": " + e.str());
		reached += " s=" + str(s) + ":" + e.str();
	}
	for (const char *t : {"wiener omega=0 trigpoly[cos 3: 1]",
	                      "wiener omega=0 trigpoly[cos 1: 1, sin 7: -2, const 5]"}) {
		StageEstimate e = omega_estimate(build_wiener(parse_descriptor(t)), omega_stage);
		o.require(e.kind == EstimateKind::cap, std::string(t) + ": " + e.str());
	}
	o.detail = "stage " + std::to_string(omega_stage) + reached;
	return o;
}

Outcome witnesses()
{
	Outcome o;
	o.require(harmonic_index(1) == 1 && harmonic_index(4) == 2 && harmonic_index(11) == 3,
	          "harmonic index spot values");
	StageEstimate w = omega_estimate(thm2_witness(constant_limit(LimitMode::liminf, 2), 1),
	                                 witness_omega_stage);
	o.require(std::fabs(w.value.to_double() - 2.0) < 0.15, "smoothness witness: " + w.str());
	StageEstimate p = psi_estimate(
		thm4_witness(constant_limit(LimitMode::limsup, Rational(3, 2)), 2), witness_psi_stage);
	o.require(std::fabs(p.value.to_double() - 1.5) < 0.15, "decay witness: " + p.str());
	o.detail = "Omega@" + std::to_string(witness_omega_stage) + "=" + w.str() + ", Psi@" +
	           std::to_string(witness_psi_stage) + "=" + p.str();
	return o;
}

LpDescriptor lift(const LpDescriptor &f, const Exponent &p)
{
	return p == f.p() ? f : upcast_decay(f, p);
}

Outcome lp_suite()
{
	Outcome o;
	std::vector<std::function<LpDescriptor(const Exponent &)>> fams = {
		[](const Exponent &p) { return spike(p, 4, Rational(-5, 3)); },
		[](const Exponent &p) { return geometric(p); },
		[](const Exponent &p) { return geometric(p, Rational(9, 10)); },
		[](const Exponent &p) { return pdecay(p, 2); },
		[](const Exponent &p) { return pdecay(p, 3); },
		[](const Exponent &p) { return block_vector(p, 1, 5); },
		[](const Exponent &p) { return block_vector(p, 2, 9); },
		[](const Exponent &p) {
			return lift(wiener_to_l1(trigpoly(0, {{Basis::cos, 2, 1}, {Basis::sin, 5, -3}})), p);
		},
		[](const Exponent &p) { return lift(wiener_to_l1(pseries(0, 3, Basis::sin)), p); },
		[](const Exponent &p) { return lift(geometric(Exponent(1), Rational(1, 5)), p); },
	};
	for (std::size_t i = 0; i < fams.size(); i++) {
		Rational prev;
		bool first = true;
		for (Exponent p : {Exponent(1), Exponent(2), Exponent(4), Exponent::inf()}) {
			Rational cur = lp_norm(fams[i](p)).approx(10);
			if (!first)
				o.require(cur <= prev + Rational::pow2(-9),
				          "family " + std::to_string(i) + " at p=" + p.str());
			prev = cur;
			first = false;
		}
	}
	std::vector<std::string> ws = {
		"wiener omega=0 trigpoly[cos 1: 1]",
		"wiener omega=0 trigpoly[cos 3: 1, sin 1: -1/2, const 1/4]",
		"wiener omega=0 trigpoly[cos 2: -3, sin 2: 4]",
		"wiener omega=0 trigpoly[const -7/3]",
		"wiener omega=0 trigpoly[]",
		"wiener omega=0 pseries s=2",
		"wiener omega=0 pseries s=3 basis=sin",
		"wiener omega=0 pseries s=5/2",
		"wiener omega=0 cex target=1 enum=evens n=4",
		"wiener omega=0 trigpoly[cos 1: 1/2, cos 2: 1/4, sin 3: 1/8, sin 9: 1/16]",
	};
	for (const auto &s : ws) {
		FourierDescriptor f = build_wiener(parse_descriptor(s));
		Rational a = lp_norm(wiener_to_l1(f)).approx(12), b = wiener_norm(f).approx(12);
		o.require((a - b).abs() <= Rational::pow2(-11), "isometry on " + s);
	}
	o.detail = "10 monotone families, 10 isometries";
	return o;
}

Outcome integrity()
{
	Outcome o;
	NormPredicate pred(1, 2);
	auto cos1 = [](Rational c) { return wiener_norm(trigpoly(0, {{Basis::cos, 1, c}})); };
	o.require(halted(go_norm_check(cos1(Rational(1, 8)), pred, 4096)), "(1/8) cos_1 must halt");
	o.require(!halted(go_norm_check(cos1(Rational(1, 4)), pred, 4096)), "(1/4) cos_1 halted");
	o.require(!halted(go_norm_check(cos1(1), pred, 4096)), "cos_1 halted");
	for (std::uint64_t M = 0; M < 10; M++)
		o.require(halted(nogo_norm_check(NormPredicate(M, M + 1 + M % 3))), "NO-GO check exhausted");

	std::mt19937_64 rng(0x9e0);
	std::uniform_int_distribution<int> coord(-12, 12), count(2, 3);
	CollisionPredicate cp(Rational(1, 8), Rational(1, 2));
	Rational thr2 = (cp.r_min + Rational(2) * cp.epsilon) * (cp.r_min + Rational(2) * cp.epsilon);
	int safe = 0;
	for (int i = 0; i < 50; i++) {
		std::vector<std::pair<Rational, Rational>> pts;
		std::vector<Point2> ag;
		for (int k = count(rng); k > 0; k--) {
			Rational x(coord(rng), 6), y(coord(rng), 6);
			pts.emplace_back(x, y);
			ag.emplace_back(ExactReal(x), ExactReal(y));
		}
		bool expect = true;
		for (std::size_t a = 0; a < pts.size(); a++)
			for (std::size_t b = a + 1; b < pts.size(); b++) {
				Rational dx = pts[a].first - pts[b].first, dy = pts[a].second - pts[b].second;
				expect = expect && dx * dx + dy * dy > thr2;
			}
		safe += expect;
		o.require(halted(collision_go_check(ag, cp, 128)) == expect,
		          "configuration " + std::to_string(i));
	}
	o.detail = std::to_string(safe) + "/50 configurations safe";
	return o;
}

Outcome golden_transcripts(const std::string &dir)
{
	Outcome o;
	auto cases = golden::load(dir);
	o.require(cases.size() == 15, "expected 15 cases, found " + std::to_string(cases.size()));
	for (const auto &c : cases) {
		std::string a = golden::transcript(c.args), b = golden::transcript(c.args);
		o.require(a == c.expected, c.name + ": first run differs");
		o.require(b == c.expected, c.name + ": second run differs");
	}
	return o;
}

} // namespace

int main(int argc, char **argv)
{
	std::string dir = argc > 1 ? argv[1] : "tests/golden";
	criterion(1, "exact-real consistency", 10, exact_real_consistency);
	criterion(2, "norm oracle", 5, norm_oracle);
	criterion(3, "fractional calculus", 10, fractional_calculus);
	criterion(4, "semi-decision", 5, semidecision);
	criterion(5, "upcast / no-downcast evidence", 20, hierarchy_evidence);
	criterion(6, "smoothness estimator oracle", 60, omega_oracle);
	criterion(7, "hierarchy witnesses", 120, witnesses);
	criterion(8, "lp suite", 10, lp_suite);
	criterion(9, "integrity suite", 10, integrity);
	criterion(10, "CLI golden transcripts", 5, [&] { return golden_transcripts(dir); });
	std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
	          << std::endl;
	return failures == 0 ? 0 : 1;
}

/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#include <effcalc/hierarchy.hpp>
#include <effcalc/error.hpp>

#include "bounds.hpp"

#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>

namespace effcalc {

std::optional<std::uint64_t> Enumerator::first_step(std::uint64_t n, std::uint64_t bound) const
{
	for (std::uint64_t k = 0; k < bound; k++)
		if (at(k) == n)
			return k;
	return std::nullopt;
}

ArithmeticEnumerator::ArithmeticEnumerator(std::uint64_t offset, std::uint64_t stride)
: offset_(offset), stride_(stride)
{
	if (stride == 0)
		throw RangeError("stride must be positive");
}

std::string ArithmeticEnumerator::label() const
{
	return "arith(" + std::to_string(offset_) + "," + std::to_string(stride_) + ")";
}

std::uint64_t ArithmeticEnumerator::at(std::uint64_t k) const
{
	return offset_ + stride_ * k;
}

std::optional<std::uint64_t> ArithmeticEnumerator::first_step(std::uint64_t n,
                                                              std::uint64_t bound) const
{
	if (!*membership(n))
		return std::nullopt;
	std::uint64_t k = (n - offset_) / stride_;
	if (k < bound)
		return k;
	return std::nullopt;
}

std::optional<bool> ArithmeticEnumerator::membership(std::uint64_t n) const
{
	return n >= offset_ && (n - offset_) % stride_ == 0;
}

// toy machines

namespace {

enum class Op : std::uint8_t { halt, inc0, inc1, dec0, dec1 };

struct Instr {
	Op op;
	std::uint64_t target = 0;
};

std::vector<Instr> decode(std::uint64_t i)
{
	/* words of length L over 3 + 2L symbols, shortest first */
	std::uint64_t L = 1;
	mpz_class rest(std::to_string(i));
	for (;; L++) {
		mpz_class count;
		mpz_ui_pow_ui(count.get_mpz_t(), 3 + 2 * L, L);
		if (rest < count)
			break;
		rest -= count;
	}
	std::vector<Instr> prog(L);
	std::uint64_t base = 3 + 2 * L;
	for (std::uint64_t pos = L; pos-- > 0;) {
		mpz_class q, r;
		mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), rest.get_mpz_t(), base);
		std::uint64_t s = r.get_ui();
		rest = q;
		if (s == 0)
			prog[pos] = {Op::halt};
		else if (s == 1)
			prog[pos] = {Op::inc0};
		else if (s == 2)
			prog[pos] = {Op::inc1};
		else if (s < 3 + L)
			prog[pos] = {Op::dec0, s - 3};
		else
			prog[pos] = {Op::dec1, s - 3 - L};
	}
	return prog;
}

struct Machine {
	std::vector<Instr> prog;
	std::uint64_t pc = 0, c0 = 0, c1 = 0;
	bool halted = false;

	/* one instruction; true when the machine halts on this step */
	bool step()
	{
		if (pc >= prog.size() || prog[pc].op == Op::halt) {
			halted = true;
			return true;
		}
		const Instr &in = prog[pc];
		switch (in.op) {
		case Op::inc0: c0++; pc++; break;
		case Op::inc1: c1++; pc++; break;
		case Op::dec0:
			if (c0 == 0) pc = in.target; else { c0--; pc++; }
			break;
		case Op::dec1:
			if (c1 == 0) pc = in.target; else { c1--; pc++; }
			break;
		case Op::halt: break;
		}
		return false;
	}
};

} // namespace

struct ToyMachineEnumerator::State {
	std::uint64_t budget;
	std::mutex mu;
	std::vector<std::uint64_t> out;                // h(0 .. out.size()-1)
	std::vector<Machine> machines;
	std::uint64_t diag = 0, pos = 0;               // next (machine pos, diagonal diag)
	std::map<std::uint64_t, std::uint64_t> halts;  // machine -> step

	void extend(std::uint64_t k)
	{
		if (k >= budget)
			throw ResourceLimit("toy machine enumeration beyond " +
			                    std::to_string(budget) + " steps");
		while (out.size() <= k) {
			std::uint64_t i = pos;
			while (machines.size() <= i)
				machines.push_back(Machine{decode(machines.size())});
			Machine &mc = machines[i];
			std::uint64_t h = 0;
			if (!mc.halted && mc.step()) {
				h = i;
				halts.emplace(i, out.size());
			}
			out.push_back(h);
			if (++pos > diag) {
				diag++;
				pos = 0;
			}
		}
	}
};

ToyMachineEnumerator::ToyMachineEnumerator(std::uint64_t budget)
: st_(std::make_unique<State>())
{
	st_->budget = budget;
}

ToyMachineEnumerator::~ToyMachineEnumerator() = default;

std::uint64_t ToyMachineEnumerator::at(std::uint64_t k) const
{
	std::lock_guard lock(st_->mu);
	st_->extend(k);
	return st_->out[k];
}

std::optional<std::uint64_t> ToyMachineEnumerator::first_step(std::uint64_t n,
                                                              std::uint64_t bound) const
{
	std::lock_guard lock(st_->mu);
	auto found = [&]() -> std::optional<std::uint64_t> {
		if (n == 0 && !st_->out.empty())
			return 0; /* program 0 is [HALT] */
		auto it = st_->halts.find(n);
		if (it != st_->halts.end())
			return it->second;
		return std::nullopt;
	};
	if (auto k = found())
		return *k < bound ? k : std::nullopt;
	if (bound == 0)
		return std::nullopt;
	std::uint64_t limit = bound - 1;
	/* grow in chunks so that early halts are found cheaply */
	for (std::uint64_t upto = std::min<std::uint64_t>(limit, 1024);;) {
		st_->extend(upto);
		if (auto k = found())
			return *k < bound ? k : std::nullopt;
		if (upto == limit)
			return std::nullopt;
		upto = std::min(limit, upto * 2);
	}
}

std::optional<bool> ToyMachineEnumerator::membership(std::uint64_t n) const
{
	std::lock_guard lock(st_->mu);
	if (st_->halts.count(n))
		return true;
	return std::nullopt;
}

std::string ToyMachineEnumerator::program_text(std::uint64_t i)
{
	std::string s = "[";
	auto prog = decode(i);
	for (std::size_t k = 0; k < prog.size(); k++) {
		if (k)
			s += ", ";
		switch (prog[k].op) {
		case Op::halt: s += "HALT"; break;
		case Op::inc0: s += "INC0"; break;
		case Op::inc1: s += "INC1"; break;
		case Op::dec0: s += "DEC0 " + std::to_string(prog[k].target); break;
		case Op::dec1: s += "DEC1 " + std::to_string(prog[k].target); break;
		}
	}
	return s + "]";
}

std::unique_ptr<Enumerator> make_enumerator(const std::string &name)
{
	if (name == "evens")
		return std::make_unique<EvensEnumerator>();
	if (name == "toymachine")
		return std::make_unique<ToyMachineEnumerator>();
	throw RangeError("unknown enumerator '" + name + "' (expected evens or toymachine)");
}

// counterexamples

FourierDescriptor counterexample_wiener(const Rational &omega, const Rational &tau,
                                        std::shared_ptr<const Enumerator> e, std::uint64_t n)
{
	if (tau.sign() < 0 || !(tau < omega))
		throw PreconditionViolation("counterexample needs 0 <= tau < omega (tau=" +
		                            tau.str() + ", omega=" + omega.str() + ")");
	auto element = [omega, tau, e, n](std::uint64_t m) {
		auto k = e->first_step(n, m);
		return normalized_mode(omega, k ? *k : m).relabeled(tau);
	};
	/* ||f_m - f_{m+l}||_tau <= 2 m^(tau-omega) < 2^-M once m^(omega-tau) > 2^(M+1) */
	Rational gap = omega - tau;
	auto modulus = [gap](Precision M) {
		return detail::smallest_power_exceeding(gap, Rational::pow2(detail::clamp0(M) + 1));
	};
	return effective_limit({element, modulus});
}

LpDescriptor counterexample_lp(const Rational &omega, const Exponent &tau,
                               std::shared_ptr<const Enumerator> e, std::uint64_t n)
{
	if (omega < Rational(1) || !(Exponent(omega) < tau))
		throw PreconditionViolation("counterexample needs 1 <= omega < tau (omega=" +
		                            omega.str() + ", tau=" + tau.str() + ")");
	auto element = [omega, tau, e, n](std::uint64_t m) {
		auto k = e->first_step(n, m);
		return block_vector(tau, omega, detail::sat_add(k ? *k : m, 1));
	};
	/* ||h_a - h_b||_tau <= 2 (m+1)^-(1/omega - 1/tau) for a, b >= m+1 */
	Rational rate = Rational(1) / omega - (tau.is_inf() ? Rational(0) : Rational(1) / tau.value());
	auto modulus = [rate](Precision M) {
		return detail::smallest_power_exceeding(rate, Rational::pow2(detail::clamp0(M) + 1)) - 1;
	};
	return lp_effective_limit({element, modulus});
}

namespace {

std::optional<std::uint64_t> try_first_step(const Enumerator &e, std::uint64_t n,
                                            std::uint64_t fuel)
{
	try {
		return e.first_step(n, fuel);
	} catch (const ResourceLimit &) {
		return std::nullopt;
	}
}

} // namespace

std::optional<FourierDescriptor> counterexample_wiener_target(
	const Rational &omega, const Enumerator &e, std::uint64_t n, std::uint64_t fuel)
{
	if (auto k = try_first_step(e, n, fuel))
		return normalized_mode(omega, *k);
	if (e.membership(n) == std::optional<bool>(false))
		return zero_descriptor(omega);
	return std::nullopt;
}

std::optional<LpDescriptor> counterexample_lp_target(
	const Rational &omega, const Enumerator &e, std::uint64_t n, std::uint64_t fuel)
{
	if (auto k = try_first_step(e, n, fuel))
		return block_vector(Exponent(omega), omega, *k + 1);
	if (e.membership(n) == std::optional<bool>(false))
		return lp_zero(Exponent(omega));
	return std::nullopt;
}

namespace {

NoDowncastReport no_downcast_rows(Base base, const Rational &omega, std::string tau,
                                  const std::shared_ptr<const Enumerator> &e, std::uint64_t fuel,
                                  std::uint64_t first, std::uint64_t last)
{
	if (first > last)
		throw RangeError("empty index range");
	NoDowncastReport rep{base, omega, std::move(tau), e->label(), fuel, {}};
	ExactReal half(Rational(1, 2));
	for (std::uint64_t n = first; n <= last; n++) {
		NoDowncastRow row{n, try_first_step(*e, n, fuel), std::nullopt, false, Exhausted{fuel}};
		std::optional<ExactReal> norm;
		if (base == Base::wiener) {
			if (auto t = counterexample_wiener_target(omega, *e, n, fuel))
				norm = wiener_norm(*t);
		} else if (auto t = counterexample_lp_target(omega, *e, n, fuel)) {
			norm = lp_norm(*t);
		}
		row.membership = e->membership(n);
		if (norm) {
			row.realizer = true;
			row.check = semidecide_lt(*norm, half, fuel);
		}
		rep.rows.push_back(std::move(row));
		if (n == last)
			break;
	}
	return rep;
}

} // namespace

NoDowncastReport no_downcast_wiener(const Rational &omega, const Rational &tau,
                                    std::shared_ptr<const Enumerator> e, std::uint64_t fuel,
                                    std::uint64_t first, std::uint64_t last)
{
	if (tau.sign() < 0 || !(tau < omega))
		throw PreconditionViolation("wiener base needs 0 <= tau < omega");
	return no_downcast_rows(Base::wiener, omega, tau.str(), e, fuel, first, last);
}

NoDowncastReport no_downcast_lp(const Rational &omega, const Exponent &tau,
                                std::shared_ptr<const Enumerator> e, std::uint64_t fuel,
                                std::uint64_t first, std::uint64_t last)
{
	if (omega < Rational(1) || !(Exponent(omega) < tau))
		throw PreconditionViolation("lp base needs 1 <= omega < tau");
	return no_downcast_rows(Base::lp, omega, tau.str(), e, fuel, first, last);
}

namespace {

std::string membership_text(const std::optional<bool> &m)
{
	if (!m)
		return "unknown";
	return *m ? "member" : "non-member";
}

std::string base_text(Base b)
{
	return b == Base::wiener ? "wiener" : "lp";
}

} // namespace

void print_report(std::ostream &os, const NoDowncastReport &r, bool records)
{
	if (records) {
		os << "report=no-downcast base=" << base_text(r.base) << " omega=" << r.omega
		   << " tau=" << r.tau << " enum=" << r.enumerator << " fuel=" << r.fuel << "\n";
		for (const auto &row : r.rows) {
			os << "index=" << row.index << " enumerated_at="
			   << (row.enumerated_at ? std::to_string(*row.enumerated_at) : "none")
			   << " membership=" << membership_text(row.membership)
			   << " realizer=" << (row.realizer ? "yes" : "no");
			if (auto *h = std::get_if<Halted>(&row.check))
				os << " outcome=halted steps=" << h->steps;
			else
				os << " outcome=exhausted steps=" << r.fuel;
			os << " fuel=" << r.fuel << "\n";
		}
		return;
	}
	os << "no-downcast evidence: base=" << base_text(r.base) << " omega=" << r.omega
	   << " tau=" << r.tau << " enum=" << r.enumerator << " fuel=" << r.fuel << "\n";
	os << "index | enumerated@step | target-norm check | steps/fuel | membership\n";
	std::size_t halted_rows = 0;
	for (const auto &row : r.rows) {
		std::string check, steps;
		if (auto *h = std::get_if<Halted>(&row.check)) {
			check = "halted (< 1/2)";
			steps = std::to_string(h->steps);
			halted_rows++;
		} else {
			check = row.realizer ? "exhausted" : "exhausted (no claim)";
			steps = std::to_string(r.fuel);
		}
		os << std::setw(5) << row.index << " | " << std::setw(15)
		   << (row.enumerated_at ? std::to_string(*row.enumerated_at) : "-") << " | "
		   << std::left << std::setw(20) << check << std::right << " | "
		   << std::setw(10) << (steps + "/" + std::to_string(r.fuel)) << " | "
		   << membership_text(row.membership) << "\n";
	}
	os << "halted " << halted_rows << " of " << r.rows.size()
	   << "; halted rows certify norm < 1/2, exhausted rows make no claim\n";
	os << "evidence consistent with the omega-norm predicate not being decided by "
	      "tau-side realizers (not a proof)\n";
}

// upcast evidence

namespace {

const Precision sample_precisions[] = {0, 8, 16, 24};

bool same_coefficients(const FourierDescriptor &f, const FourierDescriptor &g)
{
	for (std::uint64_t idx = 0; idx <= 16; idx++)
		for (Precision P : sample_precisions)
			if (f.coefficient(idx).approx(P) != g.coefficient(idx).approx(P))
				return false;
	return true;
}

bool same_coefficients(const LpDescriptor &f, const LpDescriptor &g)
{
	for (std::uint64_t m = 0; m <= 8; m++)
		for (Precision P : sample_precisions) {
			auto a = f.coefficient(m), b = g.coefficient(m);
			if (a.first.approx(P) != b.first.approx(P) || a.second.approx(P) != b.second.approx(P))
				return false;
		}
	return true;
}

} // namespace

UpcastReport upcast_demo(const std::vector<std::pair<std::string, FourierDescriptor>> &samples,
                         const Rational &tau, Precision M)
{
	UpcastReport rep{Base::wiener, {}};
	for (const auto &[name, f] : samples) {
		FourierDescriptor g = upcast_smoothness(f, tau);
		UpcastRow row{name, f.omega().str(), tau.str(), same_coefficients(f, g), true, false};
		for (Precision K = 0; K <= 12; K++)
			row.tails_valid = row.tails_valid && f.tail(K) == g.tail(K);
		Rational slack = Rational::pow2(-M + 1);
		row.norm_dominated = wiener_norm(g).approx(M) <= wiener_norm(f).approx(M) + slack;
		rep.rows.push_back(std::move(row));
	}
	return rep;
}

UpcastReport upcast_demo(const std::vector<std::pair<std::string, LpDescriptor>> &samples,
                         const Exponent &tau, Precision M)
{
	UpcastReport rep{Base::lp, {}};
	for (const auto &[name, f] : samples) {
		LpDescriptor g = upcast_decay(f, tau);
		UpcastRow row{name, f.p().str(), tau.str(), same_coefficients(f, g), true, false};
		/* spot check the relabeled contract on 64 entries past the modulus */
		for (Precision K = 0; K <= 8 && row.tails_valid; K++) {
			std::uint64_t N = g.tail(K);
			Rational eps = Rational::pow2(-K), acc = 0;
			for (std::uint64_t m = N; m < N + 64; m++) {
				Rational a = g.magnitude(m).approx(K + 12);
				if (tau.is_inf())
					row.tails_valid = row.tails_valid && a <= eps + Rational::pow2(-(K + 12));
				else
					acc += pow_nonneg(ExactReal(a), tau.value()).approx(K + 12);
			}
			if (!tau.is_inf())
				row.tails_valid = row.tails_valid && acc < eps + Rational::pow2(-(K + 4));
		}
		Rational slack = Rational::pow2(-M + 1);
		row.norm_dominated = lp_norm(g).approx(M) <= lp_norm(f).approx(M) + slack;
		rep.rows.push_back(std::move(row));
	}
	return rep;
}

void print_report(std::ostream &os, const UpcastReport &r, bool records)
{
	auto yes = [](bool b) { return b ? "yes" : "no"; };
	if (records) {
		os << "report=upcast base=" << base_text(r.base) << "\n";
		for (const auto &row : r.rows)
			os << "sample=" << row.sample << " from=" << row.from << " to=" << row.to
			   << " data_identical=" << yes(row.coefficients_identical)
			   << " tail_check=" << yes(row.tails_valid)
			   << " norm_dominated=" << yes(row.norm_dominated) << "\n";
		return;
	}
	os << "upcast evidence: base=" << base_text(r.base) << "\n";
	os << "sample | from -> to | data identical | tail check | norm dominated\n";
	for (const auto &row : r.rows)
		os << row.sample << " | " << row.from << " -> " << row.to << " | "
		   << yes(row.coefficients_identical) << " | " << yes(row.tails_valid) << " | "
		   << yes(row.norm_dominated) << "\n";
	os << r.rows.size() << " samples\n";
}

} // namespace effcalc

/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#pragma once

#include <effcalc/lpspace.hpp>
#include <effcalc/wiener.hpp>

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace effcalc {

/// Total enumeration h(0), h(1), ... of a set A. A_m = { h(0) .. h(m-1) }.
class Enumerator {
public:
	virtual ~Enumerator() = default;

	virtual std::string label() const = 0;
	virtual std::uint64_t at(std::uint64_t k) const = 0;

	/// Smallest k < bound with h(k) = n. The default scans; subclasses
	/// with structure answer directly.
	virtual std::optional<std::uint64_t> first_step(std::uint64_t n, std::uint64_t bound) const;

	/// Membership in A when the enumerator knows its complement.
	virtual std::optional<bool> membership(std::uint64_t n) const = 0;
};

/// h(k) = offset + stride k.
class ArithmeticEnumerator : public Enumerator {
public:
	ArithmeticEnumerator(std::uint64_t offset, std::uint64_t stride);

	std::string label() const override;
	std::uint64_t at(std::uint64_t k) const override;
	std::optional<std::uint64_t> first_step(std::uint64_t n, std::uint64_t bound) const override;
	std::optional<bool> membership(std::uint64_t n) const override;

private:
	std::uint64_t offset_, stride_;
};

/// The even numbers, h(k) = 2k.
class EvensEnumerator : public ArithmeticEnumerator {
public:
	EvensEnumerator() : ArithmeticEnumerator(0, 2) {}
	std::string label() const override { return "evens"; }
};

/// Halting set of two-counter programs, enumerated by dovetailed simulation.
///
/// Program i is the i-th word (by length, then lexicographically) over the
/// instructions HALT, INC0, INC1, DEC0 t, DEC1 t (t < length). DECr t jumps
/// to t when counter r is zero and otherwise decrements it and falls through;
/// running past the end halts. Enumeration step k gives one instruction of
/// running time to a machine along the diagonals of (machine, turn), and
/// outputs i when machine i halts on that step, 0 otherwise.
class ToyMachineEnumerator : public Enumerator {
public:
	/// Steps beyond `budget` are refused with ResourceLimit.
	explicit ToyMachineEnumerator(std::uint64_t budget = std::uint64_t{1} << 22);
	~ToyMachineEnumerator() override;

	std::string label() const override { return "toymachine"; }
	std::uint64_t at(std::uint64_t k) const override;
	std::optional<std::uint64_t> first_step(std::uint64_t n, std::uint64_t bound) const override;
	/// Unknown unless the machine was seen halting during earlier runs.
	std::optional<bool> membership(std::uint64_t n) const override;

	/// Readable listing of program i, e.g. "[INC0, DEC0 0]".
	static std::string program_text(std::uint64_t i);

private:
	struct State;
	std::unique_ptr<State> st_;
};

std::unique_ptr<Enumerator> make_enumerator(const std::string &name);

/// Freezing family in the Wiener algebra at smoothness tau: element m is
/// the normalized mode k if h(k) = n for some k < m, mode m otherwise.
/// The limit has omega-norm 1 for n in A and 0 otherwise.
FourierDescriptor counterexample_wiener(const Rational &omega, const Rational &tau,
                                        std::shared_ptr<const Enumerator> e, std::uint64_t n);

/// Block-vector analogue in l^tau: element m is h_{k+1} or h_{m+1}.
LpDescriptor counterexample_lp(const Rational &omega, const Exponent &tau,
                               std::shared_ptr<const Enumerator> e, std::uint64_t n);

/// The limit as an omega-side realizer, when it can be named: n found
/// within `fuel` enumeration steps, or membership known to the enumerator.
std::optional<FourierDescriptor> counterexample_wiener_target(
	const Rational &omega, const Enumerator &e, std::uint64_t n, std::uint64_t fuel);
std::optional<LpDescriptor> counterexample_lp_target(
	const Rational &omega, const Enumerator &e, std::uint64_t n, std::uint64_t fuel);

enum class Base { wiener, lp };

struct NoDowncastRow {
	std::uint64_t index;
	std::optional<std::uint64_t> enumerated_at;
	std::optional<bool> membership;
	bool realizer; ///< an omega-side realizer was available
	SemiDecision check;
};

struct NoDowncastReport {
	Base base;
	Rational omega;
	std::string tau;
	std::string enumerator;
	std::uint64_t fuel;
	std::vector<NoDowncastRow> rows;
};

/// For each n in [first, last]: semidecide ||f_n*||_omega < 1/2 with the
/// given fuel, where f_n* is the limit of the tau-side family. Halted rows
/// are non-members; Exhausted rows make no claim.
NoDowncastReport no_downcast_wiener(const Rational &omega, const Rational &tau,
                                    std::shared_ptr<const Enumerator> e, std::uint64_t fuel,
                                    std::uint64_t first, std::uint64_t last);
NoDowncastReport no_downcast_lp(const Rational &omega, const Exponent &tau,
                                std::shared_ptr<const Enumerator> e, std::uint64_t fuel,
                                std::uint64_t first, std::uint64_t last);

void print_report(std::ostream &os, const NoDowncastReport &r, bool records);

struct UpcastRow {
	std::string sample;
	std::string from, to;
	bool coefficients_identical;
	bool tails_valid;
	bool norm_dominated;
};

struct UpcastReport {
	Base base;
	std::vector<UpcastRow> rows;
};

/// Relabels every sample and checks data identity at several precisions,
/// tail moduli and norm comparison at precision M.
UpcastReport upcast_demo(const std::vector<std::pair<std::string, FourierDescriptor>> &samples,
                         const Rational &tau, Precision M);
UpcastReport upcast_demo(const std::vector<std::pair<std::string, LpDescriptor>> &samples,
                         const Exponent &tau, Precision M);

void print_report(std::ostream &os, const UpcastReport &r, bool records);

} // namespace effcalc

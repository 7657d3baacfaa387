/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#pragma once

#include <effcalc/integrity.hpp>
#include <effcalc/lpspace.hpp>
#include <effcalc/wiener.hpp>

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace effcalc {

/*
 * descriptor := "wiener" "omega=" rat wbody
 *             | "lp" "p=" (rat | "inf") lbody
 * wbody      := "trigpoly" "[" [term {"," term}] "]"
 *             | "pseries" "s=" rat ["basis=" ("cos" | "sin")]
 *             | "thm2" "tau=" rat "target=" target
 *             | "cex" "target=" rat "enum=" name "n=" nat
 * term       := ("cos" | "sin") nat ":" rat | "const" rat
 * lbody      := "spike" "k=" nat ["value=" rat]
 *             | "geometric" ["ratio=" rat]
 *             | "pdecay" "s=" rat
 *             | "thm4" "tau=" rat "target=" target
 *             | "cex" "target=" rat "enum=" name "n=" nat
 *             | "from-wiener" descriptor
 * target     := [("limsup" | "liminf" | "lim")] ("const" rat | "alt" "(" rat "," rat ")")
 * rat        := ["-"] int ["/" posint]
 */

struct TargetSpec {
	LimitMode mode;
	bool alternating = false;
	Rational a, b;

	LimitReal to_limit() const;
	friend bool operator==(const TargetSpec &, const TargetSpec &) = default;
};

struct TrigBody {
	std::vector<TrigTerm> terms;
};
struct PseriesBody {
	Rational s;
	Basis basis = Basis::cos;
};
struct Thm2Body {
	Rational tau;
	TargetSpec target;
};
struct CexBody {
	Rational target;
	std::string enumerator;
	std::uint64_t n;
};
struct SpikeBody {
	std::uint64_t k;
	Rational value = 1;
};
struct GeometricBody {
	Rational ratio = Rational(1, 2);
};
struct PdecayBody {
	Rational s;
};
struct Thm4Body {
	Rational tau;
	TargetSpec target;
};
struct DescriptorAst;
struct FromWienerBody {
	std::shared_ptr<const DescriptorAst> inner;
};

enum class DescriptorKind { wiener, lp };

struct DescriptorAst {
	DescriptorKind kind;
	/// omega for wiener; p for lp, nullopt meaning inf.
	std::optional<Rational> label;
	std::variant<TrigBody, PseriesBody, Thm2Body, CexBody, SpikeBody, GeometricBody,
	             PdecayBody, Thm4Body, FromWienerBody> body;
};

bool operator==(const DescriptorAst &a, const DescriptorAst &b);

/// Throws ParseError (line, column, expected tokens) or RangeError.
DescriptorAst parse_descriptor(std::string_view text);
/// Canonical text; reparses to an equal AST.
std::string print_descriptor(const DescriptorAst &ast);

FourierDescriptor build_wiener(const DescriptorAst &ast);
LpDescriptor build_lp(const DescriptorAst &ast);

/*
 * Real expressions:
 *   expr  := term {("+" | "-") term}
 *   term  := unary {"*" unary | "/" posint}
 *   unary := "-" unary | atom
 *   atom  := int | "pi" | "(" expr ")"
 *          | "pow" "(" nat "," rat ")"
 *          | ("abs" | "sqrt" | "cos" | "sin") "(" expr ")"
 *          | ("max" | "min") "(" expr "," expr ")"
 */
ExactReal parse_real(std::string_view text);

/// "(x,y);(x,y);..." with rational coordinates.
std::vector<Point2> parse_agents(std::string_view text);

/// "a..b" with naturals a <= b.
std::pair<std::uint64_t, std::uint64_t> parse_range(std::string_view text);

} // namespace effcalc

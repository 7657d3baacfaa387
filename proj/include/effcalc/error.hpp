/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace effcalc {

/// Base class of every error raised by the library.
struct Error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

/// A contract precondition does not hold (CLI exit code 4).
struct PreconditionViolation : Error {
	using Error::Error;
};

struct UndefinedPower : PreconditionViolation {
	using PreconditionViolation::PreconditionViolation;
};

struct SmoothnessMismatch : PreconditionViolation {
	using PreconditionViolation::PreconditionViolation;
};

struct InsufficientSmoothness : PreconditionViolation {
	using PreconditionViolation::PreconditionViolation;
};

struct NotADowncast : PreconditionViolation {
	using PreconditionViolation::PreconditionViolation;
};

struct NotAnUpcast : PreconditionViolation {
	using PreconditionViolation::PreconditionViolation;
};

/// A value is outside its legal range (negative smoothness label, p < 1, ...).
struct RangeError : PreconditionViolation {
	using PreconditionViolation::PreconditionViolation;
};

/// A series would need more terms than the desk-scale budget allows.
struct ResourceLimit : Error {
	using Error::Error;
};

/// A fuel-bounded search inside a lazily evaluated object ran dry
/// (CLI exit code 3). Carries the fuel that was spent.
struct FuelExhausted : Error {
	std::uint64_t fuel;

	FuelExhausted(const std::string &what, std::uint64_t fuel)
	: Error(what), fuel(fuel)
	{}
};

/// Syntax error in the descriptor or expression language (CLI exit code 2).
struct ParseError : Error {
	std::size_t line;
	std::size_t column;

	ParseError(std::size_t line, std::size_t column, const std::string &msg)
	: Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg)
	, line(line), column(column)
	{}
};

} // namespace effcalc

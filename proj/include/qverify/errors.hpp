#pragma once

#include <stdexcept>
#include <string>

namespace qv {

// Base class for failures raised while evaluating exact expressions.
// Everything derived from EvalError is a property of the *point* being
// evaluated (a pole, a missing binding), never a rounding artifact:
// all arithmetic in this library is exact.
class EvalError : public std::runtime_error {
  public:
	explicit EvalError(const std::string &what) : std::runtime_error(what) {}
};

// A denominator factor evaluated to zero: either a Pochhammer symbol in a
// fraction form, the implicit (B;B)_k factor of a series term, a closed-form
// Div node, or a plain rational division by zero. Carries enough context to
// attribute the pole: the summation index k and the factor index when the
// zero arose inside a series term, and the AST path when it arose inside an
// expression tree.
class ZeroDenominator : public EvalError {
  public:
	ZeroDenominator(const std::string &what, long k = -1, long factor = -1,
	                std::string path = {})
	    : EvalError(what), k_(k), factor_(factor), path_(std::move(path))
	{}

	long k() const { return k_; }
	long factor() const { return factor_; }
	const std::string &path() const { return path_; }

  private:
	long k_;
	long factor_;
	std::string path_;
};

// Closed-form evaluation reports poles with the AST path of the offending
// node; same failure class as a vanished Pochhammer denominator.
using PoleError = ZeroDenominator;

class MissingVariable : public EvalError {
  public:
	explicit MissingVariable(const std::string &name)
	    : EvalError("unbound variable '" + name + "'"), name_(name)
	{}
	const std::string &name() const { return name_; }

  private:
	std::string name_;
};

// Raising 0 to a negative power (a zero variable under a negative exponent).
class ZeroBase : public EvalError {
  public:
	explicit ZeroBase(const std::string &what) : EvalError(what) {}
};

// Inverting a monomial whose coefficient is zero.
class ZeroCoefficient : public EvalError {
  public:
	explicit ZeroCoefficient(const std::string &what) : EvalError(what) {}
};

// The sampler could not produce a valid point (or enough pole-free points)
// within the configured resample budget.
class ResampleExhausted : public std::runtime_error {
  public:
	explicit ResampleExhausted(const std::string &what)
	    : std::runtime_error(what)
	{}
};

// Structural misuse independent of any point: malformed series shapes,
// unknown identity ids, invalid configs.
class SpecError : public std::logic_error {
  public:
	explicit SpecError(const std::string &what) : std::logic_error(what) {}
};

} // namespace qv

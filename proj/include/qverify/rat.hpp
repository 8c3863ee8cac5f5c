#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

#include "qverify/errors.hpp"

namespace qv {

using Integer = mpz_class;

// Exact rational scalar. Always canonical: denominator positive,
// gcd(|num|, den) = 1. Division by zero throws ZeroDenominator instead of
// hitting GMP's fatal divide-by-zero path. Equality is structural, which for
// canonical rationals coincides with value equality; there is no tolerance
// anywhere in this library.
class Rat {
  public:
	Rat() : v_(0) {}
	Rat(int n) : v_(n) {}
	Rat(long n) : v_(static_cast<signed long>(n)) {}
	explicit Rat(const Integer &n) : v_(n) {}
	Rat(long num, long den);
	Rat(const Integer &num, const Integer &den);

	static Rat parse(std::string_view text);

	Integer num() const { return v_.get_num(); }
	Integer den() const { return v_.get_den(); }

	bool is_zero() const { return sgn(v_) == 0; }
	bool is_one() const { return v_ == 1; }
	bool is_integer() const { return v_.get_den() == 1; }
	int sign() const { return sgn(v_); }

	// Exact integer power; negative exponents invert (0 under a negative
	// exponent throws ZeroBase).
	Rat pow(long e) const;
	Rat inv() const { return Rat(1) / *this; }

	std::string str() const;

	friend Rat operator+(const Rat &a, const Rat &b) { return Rat(mpq_class(a.v_ + b.v_)); }
	friend Rat operator-(const Rat &a, const Rat &b) { return Rat(mpq_class(a.v_ - b.v_)); }
	friend Rat operator*(const Rat &a, const Rat &b) { return Rat(mpq_class(a.v_ * b.v_)); }
	friend Rat operator/(const Rat &a, const Rat &b);
	friend Rat operator-(const Rat &a) { return Rat(mpq_class(-a.v_)); }

	Rat &operator+=(const Rat &o) { v_ += o.v_; return *this; }
	Rat &operator-=(const Rat &o) { v_ -= o.v_; return *this; }
	Rat &operator*=(const Rat &o) { v_ *= o.v_; return *this; }
	Rat &operator/=(const Rat &o) { *this = *this / o; return *this; }

	friend bool operator==(const Rat &a, const Rat &b) { return a.v_ == b.v_; }
	friend bool operator!=(const Rat &a, const Rat &b) { return a.v_ != b.v_; }
	friend bool operator<(const Rat &a, const Rat &b) { return a.v_ < b.v_; }

	friend std::ostream &operator<<(std::ostream &os, const Rat &r);

  private:
	explicit Rat(mpq_class v) : v_(std::move(v)) {}

	mpq_class v_; // kept canonical
};

} // namespace qv

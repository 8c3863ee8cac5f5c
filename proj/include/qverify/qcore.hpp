#pragma once

#include <vector>

#include "qverify/rat.hpp"

namespace qv {

// q-shifted factorial (x; base)_count = prod_{i=0}^{count-1} (1 - x*base^i),
// computed by direct product. Zero results are legitimate values.
Rat pochhammer(const Rat &x, const Rat &base, long count);

// prod_i (nums[i]; base)_count / prod_j (dens[j]; base)_count.
// Throws ZeroDenominator (with the offending factor index) when a denominator
// Pochhammer vanishes — that is a pole of the fraction form, not a value.
Rat poch_fraction(const std::vector<Rat> &nums, const std::vector<Rat> &dens,
                  const Rat &base, long count);

// Incremental form of the same product for per-k loops: advance() multiplies
// in the next factor (1 - x*base^k).
class PochAccumulator {
  public:
	PochAccumulator(Rat x, Rat base)
	    : x_(std::move(x)), base_(std::move(base)), shifted_(x_)
	{}

	void advance()
	{
		value_ *= Rat(1) - shifted_;
		shifted_ *= base_;
		++count_;
	}

	const Rat &value() const { return value_; }
	long count() const { return count_; }

  private:
	Rat x_;
	Rat base_;
	Rat shifted_; // x * base^count
	Rat value_ = Rat(1);
	long count_ = 0;
};

// Catalan number C_n = binom(2n, n) / (n + 1), exact.
Integer catalan(long n);

struct ShapiroResult {
	bool equal;
	Integer lhs; // sum_{k=0}^{n} C_{2k} * C_{2n-2k}
	Integer rhs; // 4^n * C_n
};

// Checks the Catalan convolution sum_{k} C_{2k} C_{2n-2k} = 4^n C_n exactly.
ShapiroResult shapiro_check(long n);

} // namespace qv

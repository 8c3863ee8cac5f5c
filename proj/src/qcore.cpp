#include "qverify/qcore.hpp"

#include <string>

namespace qv {

Rat pochhammer(const Rat &x, const Rat &base, long count)
{
	if (count < 0)
		throw SpecError("pochhammer: negative count");
	PochAccumulator acc(x, base);
	while (acc.count() < count)
		acc.advance();
	return acc.value();
}

Rat poch_fraction(const std::vector<Rat> &nums, const std::vector<Rat> &dens,
                  const Rat &base, long count)
{
	Rat result(1);
	for (const Rat &a : nums)
		result *= pochhammer(a, base, count);
	for (std::size_t j = 0; j < dens.size(); ++j) {
		const Rat d = pochhammer(dens[j], base, count);
		if (d.is_zero())
			throw ZeroDenominator("poch_fraction: denominator factor " +
			                          std::to_string(j) + " vanishes",
			                      count, static_cast<long>(j));
		result /= d;
	}
	return result;
}

Integer catalan(long n)
{
	if (n < 0)
		throw SpecError("catalan: negative index");
	Integer c;
	mpz_bin_uiui(c.get_mpz_t(), 2 * static_cast<unsigned long>(n),
	             static_cast<unsigned long>(n));
	// binom(2n,n) is divisible by n+1
	mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(),
	                static_cast<unsigned long>(n) + 1);
	return c;
}

ShapiroResult shapiro_check(long n)
{
	if (n < 0)
		throw SpecError("shapiro_check: negative index");
	Integer lhs(0);
	for (long k = 0; k <= n; ++k)
		lhs += catalan(2 * k) * catalan(2 * n - 2 * k);
	Integer pow4;
	mpz_ui_pow_ui(pow4.get_mpz_t(), 4, static_cast<unsigned long>(n));
	Integer rhs = pow4 * catalan(n);
	return {lhs == rhs, lhs, rhs};
}

} // namespace qv

#include "qverify/series.hpp"

#include <string>

#include "qverify/qcore.hpp"

namespace qv {

void SeriesSpec::validate() const
{
	if (!base.coeff().is_one() || !base.var_exps().empty() ||
	    !base.p_exp().is_constant() ||
	    (base.p_exp().c0 != 1 && base.p_exp().c0 != 2))
		throw SpecError("series: base must be p or p^2");
	if (upper.empty())
		throw SpecError("series: no upper parameters");
	if (!allow_general_shape && upper.size() != lower.size() + 1)
		throw SpecError("series: expected |upper| == |lower| + 1");
	const Mono terminator = Mono::p_pow({0, -base.p_exp().c0, 0});
	if (upper[0] != terminator)
		throw SpecError("series: upper[0] must be the terminating parameter "
		                "q^{-n} in the series base");
}

Rat term(const SeriesSpec &spec, const Point &pt, long k)
{
	if (k < 0)
		throw SpecError("series: negative summation index");
	const Rat base = eval_mono(spec.base, pt);
	Rat value(1);
	for (const Mono &a : spec.upper)
		value *= pochhammer(eval_mono(a, pt), base, k);
	const Rat implicit = pochhammer(base, base, k);
	if (implicit.is_zero())
		throw ZeroDenominator("series term: implicit (B;B)_k vanishes", k, 0);
	value /= implicit;
	for (std::size_t j = 0; j < spec.lower.size(); ++j) {
		const Rat d = pochhammer(eval_mono(spec.lower[j], pt), base, k);
		if (d.is_zero())
			throw ZeroDenominator("series term: lower parameter " +
			                          std::to_string(j) + " vanishes at k=" +
			                          std::to_string(k),
			                      k, static_cast<long>(j) + 1);
		value /= d;
	}
	return value * eval_mono(spec.argument, pt).pow(k);
}

Rat eval_phi(const SeriesSpec &spec, const Point &pt)
{
	spec.validate();
	const Rat base = eval_mono(spec.base, pt);
	const Rat z = eval_mono(spec.argument, pt);

	std::vector<PochAccumulator> uppers;
	uppers.reserve(spec.upper.size());
	for (const Mono &a : spec.upper)
		uppers.emplace_back(eval_mono(a, pt), base);
	std::vector<PochAccumulator> lowers;
	lowers.reserve(spec.lower.size() + 1);
	lowers.emplace_back(base, base); // implicit (B;B)_k
	for (const Mono &b : spec.lower)
		lowers.emplace_back(eval_mono(b, pt), base);

	Rat sum(0);
	Rat zk(1);
	for (long k = 0;; ++k) {
		Rat numer(1);
		for (const auto &acc : uppers)
			numer *= acc.value();
		Rat t = numer * zk;
		for (std::size_t j = 0; j < lowers.size(); ++j) {
			if (lowers[j].value().is_zero())
				throw ZeroDenominator(
				    "series: denominator factor " + std::to_string(j) +
				        " vanishes at k=" + std::to_string(k),
				    k, static_cast<long>(j));
			t /= lowers[j].value();
		}
		sum += t;
		if (k == pt.n)
			break;
		for (auto &acc : uppers)
			acc.advance();
		for (auto &acc : lowers)
			acc.advance();
		zk *= z;
	}
	return sum;
}

} // namespace qv

#include "qverify/rat.hpp"

#include <ostream>

namespace qv {

namespace {

mpq_class make_canonical(const Integer &num, const Integer &den)
{
	if (sgn(den) == 0)
		throw ZeroDenominator("rational with zero denominator");
	mpq_class v(num, den);
	v.canonicalize();
	return v;
}

} // namespace

Rat::Rat(long num, long den) : v_(make_canonical(Integer(num), Integer(den))) {}

Rat::Rat(const Integer &num, const Integer &den) : v_(make_canonical(num, den)) {}

Rat Rat::parse(std::string_view text)
{
	std::string s(text);
	if (s.empty())
		throw SpecError("empty rational literal");
	auto slash = s.find('/');
	try {
		if (slash == std::string::npos)
			return Rat(Integer(s), Integer(1));
		return Rat(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
	} catch (const std::invalid_argument &) {
		throw SpecError("malformed rational literal '" + s + "'");
	}
}

Rat operator/(const Rat &a, const Rat &b)
{
	if (b.is_zero())
		throw ZeroDenominator("division by zero");
	return Rat(mpq_class(a.v_ / b.v_));
}

Rat Rat::pow(long e) const
{
	if (e == 0)
		return Rat(1);
	if (is_zero()) {
		if (e < 0)
			throw ZeroBase("0 raised to a negative power");
		return Rat(0);
	}
	const unsigned long a = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1
	                              : static_cast<unsigned long>(e);
	Integer pn, pd;
	mpz_pow_ui(pn.get_mpz_t(), num().get_mpz_t(), a);
	mpz_pow_ui(pd.get_mpz_t(), den().get_mpz_t(), a);
	// powers of a canonical pair stay coprime; only the sign needs care
	return e > 0 ? Rat(pn, pd) : Rat(pd, pn);
}

std::string Rat::str() const
{
	if (is_integer())
		return num().get_str();
	return num().get_str() + "/" + den().get_str();
}

std::ostream &operator<<(std::ostream &os, const Rat &r)
{
	return os << r.str();
}

} // namespace qv

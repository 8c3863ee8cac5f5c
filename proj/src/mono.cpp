#include "qverify/mono.hpp"

#include <string>

namespace qv {

void Mono::normalize()
{
	if (coeff_.is_zero()) {
		p_exp_ = {};
		var_exps_.clear();
		return;
	}
	for (auto it = var_exps_.begin(); it != var_exps_.end();) {
		if (it->second == 0)
			it = var_exps_.erase(it);
		else
			++it;
	}
}

std::vector<std::string> Mono::variables() const
{
	std::vector<std::string> names;
	names.reserve(var_exps_.size());
	for (const auto &[name, _] : var_exps_)
		names.push_back(name);
	return names;
}

Mono operator*(const Mono &a, const Mono &b)
{
	Rat c = a.coeff_ * b.coeff_;
	if (c.is_zero())
		return Mono(Rat(0));
	std::map<std::string, int> exps = a.var_exps_;
	for (const auto &[name, e] : b.var_exps_)
		exps[name] += e;
	return Mono(std::move(c), a.p_exp_ + b.p_exp_, std::move(exps));
}

Mono operator/(const Mono &a, const Mono &b) { return a * mono_inv(b); }

Mono mono_mul(const Mono &a, const Mono &b) { return a * b; }

Mono mono_inv(const Mono &m)
{
	if (m.is_zero())
		throw ZeroCoefficient("inverting a monomial with zero coefficient");
	std::map<std::string, int> exps;
	for (const auto &[name, e] : m.var_exps())
		exps[name] = -e;
	return Mono(m.coeff().inv(), -m.p_exp(), std::move(exps));
}

Mono Mono::pow(int e) const
{
	if (e == 0)
		return Mono();
	if (is_zero()) {
		if (e < 0)
			throw ZeroCoefficient("inverting a monomial with zero coefficient");
		return Mono(Rat(0));
	}
	std::map<std::string, int> exps;
	for (const auto &[name, ve] : var_exps_)
		exps[name] = ve * e;
	return Mono(coeff_.pow(e), p_exp_ * e, std::move(exps));
}

void Point::validate() const
{
	if (p.is_zero() || p == Rat(1) || p == Rat(-1))
		throw SpecError("point: p must avoid {0, 1, -1}");
	if (n < 0 || k < 0)
		throw SpecError("point: n and k must be nonnegative");
	for (const auto &[name, value] : vars)
		if (value.is_zero())
			throw SpecError("point: variable '" + name + "' is zero");
}

Rat eval_mono(const Mono &m, const Point &pt)
{
	if (m.is_zero())
		return Rat(0);
	if (pt.p.is_zero())
		throw ZeroBase("eval_mono: p is zero");
	Rat value = m.coeff() * pt.p.pow(m.p_exp().value(pt.n, pt.k));
	for (const auto &[name, e] : m.var_exps()) {
		auto it = pt.vars.find(name);
		if (it == pt.vars.end())
			throw MissingVariable(name);
		if (it->second.is_zero() && e < 0)
			throw ZeroBase("eval_mono: variable '" + name +
			               "' is zero under a negative exponent");
		value *= it->second.pow(e);
	}
	return value;
}

} // namespace qv

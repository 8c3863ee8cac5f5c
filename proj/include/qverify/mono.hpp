#pragma once

#include <map>
#include <string>
#include <vector>

#include "qverify/rat.hpp"

namespace qv {

// Exponent affine in the discrete indices n and k: c0 + cn*n + ck*k.
// All coefficients are integers; this is an exponent of p, where q = p^2,
// so every half-integer power of q in the source formulas is representable.
struct AffineExp {
	long c0 = 0;
	long cn = 0;
	long ck = 0;

	long value(long n, long k) const { return c0 + cn * n + ck * k; }
	bool is_zero() const { return c0 == 0 && cn == 0 && ck == 0; }
	bool is_constant() const { return cn == 0 && ck == 0; }
	bool depends_on_k() const { return ck != 0; }

	friend AffineExp operator+(AffineExp a, AffineExp b)
	{
		return {a.c0 + b.c0, a.cn + b.cn, a.ck + b.ck};
	}
	friend AffineExp operator-(AffineExp a, AffineExp b)
	{
		return {a.c0 - b.c0, a.cn - b.cn, a.ck - b.ck};
	}
	friend AffineExp operator-(AffineExp a) { return {-a.c0, -a.cn, -a.ck}; }
	friend AffineExp operator*(AffineExp a, long s)
	{
		return {a.c0 * s, a.cn * s, a.ck * s};
	}
	friend bool operator==(const AffineExp &, const AffineExp &) = default;
};

// Parameter monomial coeff * p^{p_exp(n,k)} * prod_v v^{e_v}.
// Canonical form: zero-exponent variables are never stored, and a zero
// coefficient forces p_exp = 0 and no variables (the canonical zero, which
// only arises from x -> 0 substitutions; samplers never produce it).
class Mono {
  public:
	Mono() : coeff_(1) {}
	explicit Mono(Rat coeff) : coeff_(std::move(coeff)) { normalize(); }
	Mono(Rat coeff, AffineExp p_exp, std::map<std::string, int> var_exps = {})
	    : coeff_(std::move(coeff)), p_exp_(p_exp), var_exps_(std::move(var_exps))
	{
		normalize();
	}

	static Mono var(const std::string &name, int exp = 1)
	{
		return Mono(Rat(1), {}, {{name, exp}});
	}
	// p^{e}; remember exponents are in p units (q = p^2)
	static Mono p_pow(AffineExp e) { return Mono(Rat(1), e); }

	const Rat &coeff() const { return coeff_; }
	const AffineExp &p_exp() const { return p_exp_; }
	const std::map<std::string, int> &var_exps() const { return var_exps_; }

	bool is_zero() const { return coeff_.is_zero(); }
	bool is_one() const
	{
		return coeff_.is_one() && p_exp_.is_zero() && var_exps_.empty();
	}
	bool depends_on_k() const { return p_exp_.depends_on_k(); }
	int var_exp(const std::string &name) const
	{
		auto it = var_exps_.find(name);
		return it == var_exps_.end() ? 0 : it->second;
	}
	std::vector<std::string> variables() const;

	Mono pow(int e) const;

	friend Mono operator*(const Mono &a, const Mono &b);
	friend Mono operator/(const Mono &a, const Mono &b);
	friend Mono operator-(const Mono &a)
	{
		return Mono(-a.coeff_, a.p_exp_, a.var_exps_);
	}
	friend bool operator==(const Mono &, const Mono &) = default;

  private:
	void normalize();

	Rat coeff_;
	AffineExp p_exp_;
	std::map<std::string, int> var_exps_;
};

Mono mono_mul(const Mono &a, const Mono &b);
Mono mono_inv(const Mono &m); // throws ZeroCoefficient on coeff 0

// A rational instantiation of the symbolic parameters. p is the square root
// of the series base q; k is meaningful only for the relation identities.
struct Point {
	Rat p;
	long n = 0;
	long k = 0;
	std::map<std::string, Rat> vars;

	// p not in {0, 1, -1}; n, k >= 0; every variable nonzero
	void validate() const;
};

Rat eval_mono(const Mono &m, const Point &pt);

} // namespace qv

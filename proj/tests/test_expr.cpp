#include <doctest.h>

#include "qverify/expr.hpp"

using namespace qv;

namespace {

Mono qp(long c0, long cn = 0, long ck = 0) { return Mono::p_pow({c0, cn, ck}); }

const Mono P = qp(1);
const Mono Q = qp(2);
const Mono a = Mono::var("a");
const Mono b = Mono::var("b");
const AffineExp len_n{0, 1, 0};

Point worked_point()
{
	Point pt;
	pt.p = Rat(2);
	pt.n = 1;
	pt.vars = {{"a", Rat(3)}, {"b", Rat(5)}};
	return pt;
}

// prefactor-times-products closed form: q^{-n/2} [ab; a,b]_n(q) [a,b,-q^{1/2}; ab]_n(q^{1/2})
ExprPtr andrews_rhs()
{
	return mul(mul(constant(qp(0, -1)),
	               pochfrac({a * b}, {a, b}, Q, len_n)),
	           pochfrac({a, b, -P}, {a * b}, P, len_n));
}

} // namespace

TEST_CASE("constants and field operations")
{
	const Point pt = worked_point();
	CHECK(eval_expr(constant(Mono{}), pt) == Rat(1));
	CHECK(eval_expr(neg(constant(Mono{})), pt) == Rat(-1));
	CHECK(eval_expr(add(constant(Mono{}), constant(Mono{})), pt) == Rat(2));
	CHECK(eval_expr(sub(constant(qp(2)), constant(a)), pt) == Rat(1));
	CHECK(eval_expr(mul(constant(a), constant(b)), pt) == Rat(15));
	CHECK(eval_expr(div(constant(a), constant(b)), pt) == Rat(3, 5));
}

TEST_CASE("explicit zero denominator raises a pole with its path")
{
	const auto e = div(constant(Mono{}), sub(constant(Mono{}), constant(Mono{})));
	try {
		eval_expr(e, worked_point());
		FAIL("expected PoleError");
	} catch (const PoleError &p) {
		CHECK(p.path() == ".R");
	}
}

TEST_CASE("closed form of the worked point, factor by factor")
{
	const Point pt = worked_point();

	// [ab; a, b]_1 in base q: (1-15)/((1-3)(1-5)) = -7/4
	const auto frac_q = pochfrac({a * b}, {a, b}, Q, len_n);
	CHECK(eval_expr(frac_q, pt) == Rat(-7, 4));

	// [a, b, -q^{1/2}; ab]_1 in base q^{1/2}: (1-3)(1-5)(1+2)/(1-15) = -12/7
	const auto frac_p = pochfrac({a, b, -P}, {a * b}, P, len_n);
	CHECK(eval_expr(frac_p, pt) == Rat(-12, 7));

	// q^{-n/2} = 1/2
	CHECK(eval_expr(constant(qp(0, -1)), pt) == Rat(1, 2));

	CHECK(eval_expr(andrews_rhs(), pt) == Rat(3, 2));
}

TEST_CASE("reciprocal sanity: e * (1/e) = 1 when e is nonzero")
{
	const Point pt = worked_point();
	for (const ExprPtr &e :
	     {andrews_rhs(), constant(a * b), sub(constant(Q), constant(b))}) {
		CHECK(eval_expr(mul(e, div(constant(Mono{}), e)), pt) == Rat(1));
	}
}

TEST_CASE("poch with length zero is 1 regardless of argument")
{
	Point pt = worked_point();
	pt.n = 0;
	CHECK(eval_expr(poch(a * b * qp(5), Q, len_n), pt) == Rat(1));
	CHECK(eval_expr(poch(a, Q, {0, 0, 0}), pt) == Rat(1));
}

TEST_CASE("poch evaluates the direct product")
{
	const Point pt = worked_point(); // n = 1
	CHECK(eval_expr(poch(a, Q, len_n), pt) == Rat(-2));     // 1 - 3
	CHECK(eval_expr(poch(a, Q, {2, 0, 0}), pt) == Rat(-2) * (Rat(1) - Rat(12)));
	CHECK_THROWS_AS(eval_expr(poch(a, Q, {-1, 0, 0}), pt), EvalError);
}

TEST_CASE("evaluation is deterministic")
{
	const Point pt = worked_point();
	const auto e = andrews_rhs();
	CHECK(eval_expr(e, pt) == eval_expr(e, pt));
}

TEST_CASE("fraction-form pole carries factor index and path")
{
	// denominator entry is the monomial 1, and (1;q)_1 = 0
	const auto e = mul(constant(a), pochfrac({a}, {Mono{}}, Q, len_n));
	try {
		eval_expr(e, worked_point());
		FAIL("expected PoleError");
	} catch (const PoleError &p) {
		CHECK(p.factor() == 0);
		CHECK(p.path() == ".R");
	}
}

TEST_CASE("structural equality")
{
	CHECK(expr_equal(andrews_rhs(), andrews_rhs()));
	CHECK_FALSE(expr_equal(andrews_rhs(), mul(andrews_rhs(), constant(Q))));
	CHECK_FALSE(expr_equal(constant(a), constant(b)));
	CHECK(expr_equal(poch(a, Q, len_n), poch(a, Q, len_n)));
	CHECK_FALSE(expr_equal(poch(a, Q, len_n), poch(a, P, len_n)));
}

TEST_CASE("degree bound and variable collection")
{
	CHECK(degree_bound(constant(Mono{}), 3) == 0);
	CHECK(degree_bound(andrews_rhs(), 0) == 0);
	CHECK(degree_bound(andrews_rhs(), 3) > 0);

	std::set<std::string> vars;
	collect_variables(andrews_rhs(), vars);
	CHECK(vars == std::set<std::string>{"a", "b"});
}

TEST_CASE("transform_monos rebuilds leftmost-first")
{
	int touched = 0;
	Mono first;
	transform_monos(andrews_rhs(), [&](const Mono &m) {
		if (touched++ == 0)
			first = m;
		return m;
	});
	CHECK(first == qp(0, -1)); // the q^{-n/2} prefactor
	CHECK(touched > 1);
}

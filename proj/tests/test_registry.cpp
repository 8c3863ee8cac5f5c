#include <doctest.h>

#include <set>

#include "qverify/registry.hpp"

using namespace qv;

namespace {

Mono qp(long c0, long cn = 0, long ck = 0) { return Mono::p_pow({c0, cn, ck}); }

Point worked_point()
{
	Point pt;
	pt.p = Rat(2);
	pt.n = 1;
	pt.vars = {{"a", Rat(3)}, {"b", Rat(5)}};
	return pt;
}

} // namespace

TEST_CASE("registry inventory")
{
	const auto &all = builtin_identities();
	CHECK(all.size() == 17);

	std::set<std::string> ids;
	for (const Identity &ident : all)
		ids.insert(ident.id);
	CHECK(ids.size() == 17);
	for (const char *id :
	     {"sears", "andrews_sum", "andrews_conj", "thm_a", "thm_a_swap",
	      "thm_a_proof_step", "known_eval", "thm_b", "rel_b", "guo_a",
	      "corl_a", "corl_b", "thm_c", "rel_c", "guo_44", "corl_c", "corl_d"})
		CHECK(ids.count(id) == 1);

	CHECK_THROWS_AS(lookup("no_such_identity"), SpecError);
	CHECK(find_identity("no_such_identity") == nullptr);
}

TEST_CASE("declared variable sets")
{
	CHECK(lookup("andrews_sum").variables == std::vector<std::string>{"a", "b"});
	CHECK(lookup("sears").variables ==
	      std::vector<std::string>{"a", "b", "c", "d", "e"});
	CHECK(lookup("known_eval").variables == std::vector<std::string>{"a", "c"});
	CHECK(lookup("thm_b").variables == std::vector<std::string>{"a", "b", "x"});

	for (const Identity &ident : builtin_identities()) {
		CHECK_NOTHROW(validate_identity(ident));
		CHECK(ident.uses_k == (ident.id == "rel_b" || ident.id == "rel_c"));
	}
}

TEST_CASE("sears' dependent lower parameter is q^{1-n}abc/de at the exponent level")
{
	const Identity &sears = lookup("sears");
	const PhiNode *series = as_phi(sears.lhs);
	REQUIRE(series != nullptr);
	const Mono expected = qp(2, -2) * Mono::var("a") * Mono::var("b") *
	                      Mono::var("c") /
	                      (Mono::var("d") * Mono::var("e"));
	CHECK(series->spec.lower[2] == expected);
}

TEST_CASE("builtin specialization links")
{
	const auto &links = builtin_specializations();
	CHECK(links.size() == 8);

	std::set<std::pair<std::string, std::string>> pairs;
	for (const SpecializationLink &link : links) {
		CHECK_NOTHROW(lookup(link.general_id));
		CHECK_NOTHROW(lookup(link.special_id));
		pairs.insert({link.general_id, link.special_id});
	}
	const std::set<std::pair<std::string, std::string>> expected = {
	    {"thm_b", "andrews_sum"}, {"thm_b", "guo_a"},  {"thm_b", "corl_a"},
	    {"thm_b", "corl_b"},      {"thm_c", "andrews_conj"},
	    {"thm_c", "guo_44"},      {"thm_c", "corl_c"}, {"thm_c", "corl_d"},
	};
	CHECK(pairs == expected);
}

TEST_CASE("x=0 collapse removes exactly the (qx, x) pair")
{
	for (const SpecializationLink &link : builtin_specializations()) {
		const bool is_zero_link =
		    link.subst.entries.count("x") && !link.subst.entries.at("x");
		if (!is_zero_link)
			continue;
		const Identity &general = lookup(link.general_id);
		const Identity &special = lookup(link.special_id);
		const ExprPtr collapsed = apply_substitution(general.lhs, link.subst);
		// the 5phi4 collapses to the special identity's 4phi3, structurally
		CHECK(expr_equal(collapsed, special.lhs));
	}
}

TEST_CASE("substituting a monomial for x matches evaluating at that value")
{
	const Identity &thm_b = lookup("thm_b");
	const Mono replacement = qp(-1) * Mono::var("a") * Mono::var("b");
	const Substitution subst{{{"x", replacement}}};

	Point pt = worked_point();
	pt.n = 2;
	Point with_x = pt;
	with_x.vars["x"] = eval_mono(replacement, pt);

	for (const ExprPtr &side : {thm_b.lhs, thm_b.rhs}) {
		const ExprPtr substituted = apply_substitution(side, subst);
		CHECK(eval_expr(substituted, pt) == eval_expr(side, with_x));
	}
}

TEST_CASE("zero substitution on plain monomials")
{
	const Substitution zero_x{{{"x", std::nullopt}}};
	CHECK(substitute_mono(Mono::var("x") * Mono::var("a"), zero_x) ==
	      Mono(Rat(0)));
	CHECK(substitute_mono(Mono::var("a"), zero_x) == Mono::var("a"));
	CHECK_THROWS_AS(substitute_mono(Mono::var("x", -1), zero_x), ZeroBase);
}

TEST_CASE("worked point through the registry records")
{
	const Identity &andrews = lookup("andrews_sum");
	const Point pt = worked_point();
	CHECK(eval_expr(andrews.lhs, pt) == Rat(3, 2));
	CHECK(eval_expr(andrews.rhs, pt) == Rat(3, 2));
}

TEST_CASE("n=0 evaluations across the registry")
{
	// at n = 0 every series is the single k=0 term and every fraction form
	// is empty; both sides of each identity must agree (and do so by direct
	// evaluation, no sampling involved)
	Point pt;
	pt.p = Rat(2);
	pt.n = 0;
	pt.vars = {{"a", Rat(3)}, {"b", Rat(5)}, {"c", Rat(7)},
	           {"d", Rat(-2)}, {"e", Rat(9, 4)}, {"x", Rat(5, 3)}};
	for (const Identity &ident : builtin_identities()) {
		const Rat lhs = eval_expr(ident.lhs, pt);
		const Rat rhs = eval_expr(ident.rhs, pt);
		CHECK(lhs == rhs);
		if (as_phi(ident.lhs))
			CHECK(lhs == Rat(1));
	}
}

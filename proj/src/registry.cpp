#include "qverify/registry.hpp"

#include <algorithm>
#include <stdexcept>

namespace qv {

// Transcription conventions. Everything lives in p with q = p^2, so each
// half-integer q-power is an integer p-power: q^{1/2-n} is p^{1-2n},
// q^{n/2} is p^n, -q^{1/2} is coeff -1 with p-exponent 1. Series bases are
// Q = p^2 for the q-series rows and P = p for the q^{1/2}-Pochhammer rows.
namespace {

Mono qp(long c0, long cn = 0, long ck = 0) { return Mono::p_pow({c0, cn, ck}); }

const Mono one{};
const Mono P = qp(1);       // q^{1/2}
const Mono Q = qp(2);       // q
const Mono QMN = qp(0, -2); // q^{-n}, the terminating parameter

const Mono a = Mono::var("a");
const Mono b = Mono::var("b");
const Mono c = Mono::var("c");
const Mono d = Mono::var("d");
const Mono e = Mono::var("e");
const Mono x = Mono::var("x");

const AffineExp len_n{0, 1, 0};

ExprPtr phi_q(std::vector<Mono> upper, std::vector<Mono> lower)
{
	return phi(SeriesSpec{std::move(upper), std::move(lower), Q, Q});
}

// fraction forms of length n in base q resp. q^{1/2}
ExprPtr pf_q(std::vector<Mono> nums, std::vector<Mono> dens)
{
	return pochfrac(std::move(nums), std::move(dens), Q, len_n);
}
ExprPtr pf_p(std::vector<Mono> nums, std::vector<Mono> dens)
{
	return pochfrac(std::move(nums), std::move(dens), P, len_n);
}

ExprPtr C(Mono m) { return constant(std::move(m)); }

ExprPtr mul3(ExprPtr e1, ExprPtr e2, ExprPtr e3)
{
	return mul(mul(std::move(e1), std::move(e2)), std::move(e3));
}
ExprPtr mul4(ExprPtr e1, ExprPtr e2, ExprPtr e3, ExprPtr e4)
{
	return mul(mul3(std::move(e1), std::move(e2), std::move(e3)), std::move(e4));
}

Identity make_sears()
{
	auto lhs = phi_q({QMN, a, b, c}, {d, e, qp(2, -2) * a * b * c / (d * e)});
	auto rhs = mul(pf_q({d / a, d * e / (b * c)}, {d, d * e / (a * b * c)}),
	               phi_q({QMN, a, e / b, e / c},
	                     {e, d * e / (b * c), qp(2, -2) * a / d}));
	return {"sears", lhs, rhs, {"a", "b", "c", "d", "e"}, false,
	        "Sears' transformation between two balanced terminating 4phi3 series"};
}

Identity make_andrews_sum()
{
	auto lhs = phi_q({QMN, a, b, qp(1, -2) / (a * b)},
	                 {qp(2, -2) / a, qp(2, -2) / b, P * a * b});
	auto rhs = mul3(C(qp(0, -1)), pf_q({a * b}, {a, b}), pf_p({a, b, -P}, {a * b}));
	return {"andrews_sum", lhs, rhs, {"a", "b"}, false,
	        "Andrews' terminating 4phi3 summation (q-analogue of the Catalan "
	        "convolution)"};
}

Identity make_andrews_conj()
{
	auto lhs = phi_q({QMN, a, b, qp(3, -2) / (a * b)},
	                 {qp(2, -2) / a, qp(4, -2) / b, P * a * b});
	// (q^{1/2}-ab)(q-b q^{n/2}) / (q^{3/2}-a b^2 q^n)
	auto frac = div(mul(sub(C(P), C(a * b)), sub(C(Q), C(qp(0, 1) * b))),
	                sub(C(qp(3)), C(qp(0, 2) * a * b * b)));
	// { q^{1-n/2}/(q-b) + ab(q^{1/2}-b q^{n/2})(q-ab q^n)
	//   / [(q^{1/2}-b)(q^{1/2}-ab q^n)(q-ab q^{n/2})] }
	auto braces =
	    add(div(C(qp(2, -1)), sub(C(Q), C(b))),
	        div(mul3(C(a * b), sub(C(P), C(qp(0, 1) * b)),
	                 sub(C(Q), C(qp(0, 2) * a * b))),
	            mul3(sub(C(P), C(b)), sub(C(P), C(qp(0, 2) * a * b)),
	                 sub(C(Q), C(qp(0, 1) * a * b)))));
	auto rhs = mul4(pf_q({a * b / Q}, {a, b / Q}),
	                pf_p({a, b / Q, -P}, {a * b / Q}), frac, braces);
	return {"andrews_conj", lhs, rhs, {"a", "b"}, false,
	        "Andrews' conjectured 4phi3 summation, companion to andrews_sum"};
}

Identity make_thm_a()
{
	auto lhs = phi_q({QMN, a, b, qp(1, -2) / (a * b)},
	                 {qp(2, -2) / a, qp(0, -2) / b, P * a * b});
	auto rhs = mul(pf_q({a * b}, {a, Q * b}), pf_p({a, P * b, -P}, {a * b}));
	return {"thm_a", lhs, rhs, {"a", "b"}, false,
	        "4phi3 summation with the b-shifted lower row; Sears transform of "
	        "known_eval"};
}

Identity make_thm_a_swap()
{
	auto lhs = phi_q({QMN, a, b, qp(1, -2) / (a * b)},
	                 {qp(0, -2) / a, qp(2, -2) / b, P * a * b});
	auto rhs = mul(pf_q({a * b}, {Q * a, b}), pf_p({P * a, b, -P}, {a * b}));
	return {"thm_a_swap", lhs, rhs, {"a", "b"}, false,
	        "thm_a with a and b exchanged"};
}

Identity make_thm_a_proof_step()
{
	auto lhs = phi_q({QMN, a, b, qp(1, -2) / (a * b)},
	                 {qp(2, -2) / a, qp(0, -2) / b, P * a * b});
	auto rhs = mul(pf_q({qp(2, -2) / (a * a), Q * a * b}, {qp(2, -2) / a, Q * b}),
	               phi_q({QMN, a, P * a, qp(0, 2) * a * a * b * b},
	                     {P * a * b, Q * a * b, a * a}));
	return {"thm_a_proof_step", lhs, rhs, {"a", "b"}, false,
	        "Sears rewrite of thm_a's series toward known_eval's form"};
}

Identity make_known_eval()
{
	auto lhs = phi_q({QMN, a, P * a, qp(0, 2) * c * c}, {P * c, Q * c, a * a});
	auto rhs = pf_p({-P, qp(0, 1) * c, qp(0, -1) * a / c},
	                {-a, qp(1, 1) * c, qp(0, -1) / c});
	return {"known_eval", lhs, rhs, {"a", "c"}, false,
	        "closed evaluation of the 4phi3 with upper row q^-n, a, q^(1/2)a, "
	        "q^n c^2"};
}

Identity make_thm_b()
{
	auto lhs = phi_q({QMN, Q * x, a, b, qp(1, -2) / (a * b)},
	                 {x, qp(2, -2) / a, qp(2, -2) / b, P * a * b});
	auto rhs = mul3(div(sub(C(qp(0, -1)), C(x)), sub(C(one), C(x))),
	                pf_q({a * b}, {a, b}), pf_p({a, b, -P}, {a * b}));
	return {"thm_b", lhs, rhs, {"a", "b", "x"}, false,
	        "5phi4 extension of andrews_sum carrying the free parameter x"};
}

Identity make_rel_b()
{
	// (qx;q)_k/(x;q)_k telescopes to (1-x q^k)/(1-x); encoded in the
	// telescoped form since fraction-form lengths are affine in n only.
	auto lhs = div(sub(C(one), C(qp(0, 0, 2) * x)), sub(C(one), C(x)));
	auto t1 = mul(div(mul(sub(C(one), C(qp(0, -2) / a)),
	                      sub(C(qp(0, -2) / b), C(x))),
	                  mul(sub(C(one), C(x)),
	                      sub(C(qp(0, -2) / b), C(qp(0, -2) / a)))),
	              div(sub(C(one), C(qp(0, -2, 2) / a)),
	                  sub(C(one), C(qp(0, -2) / a))));
	auto t2 = mul(div(mul(sub(C(one), C(qp(0, -2) / b)),
	                      sub(C(qp(0, -2) / a), C(x))),
	                  mul(sub(C(one), C(x)),
	                      sub(C(qp(0, -2) / a), C(qp(0, -2) / b)))),
	              div(sub(C(one), C(qp(0, -2, 2) / b)),
	                  sub(C(one), C(qp(0, -2) / b))));
	return {"rel_b", lhs, add(t1, t2), {"a", "b", "x"}, true,
	        "two-node partial-fraction split of (1-xq^k)/(1-x) at q^-n/a and "
	        "q^-n/b"};
}

Identity make_guo_a()
{
	auto lhs = phi_q({QMN, a, b, qp(3, -2) / (a * b)},
	                 {qp(2, -2) / a, qp(2, -2) / b, P * a * b});
	auto rhs = mul3(div(sub(C(one), C(qp(-1, 1) * a * b)),
	                    sub(C(one), C(qp(-1, 2) * a * b))),
	                pf_q({a * b}, {a, b}), pf_p({a, b, -P}, {a * b}));
	return {"guo_a", lhs, rhs, {"a", "b"}, false,
	        "Guo's 4phi3 summation; x = q^(1/2-n)/ab in thm_b"};
}

Identity make_corl_a()
{
	auto lhs = phi_q({QMN, a, b, qp(1, -2) / (a * b)},
	                 {qp(2, -2) / a, qp(2, -2) / b, qp(-1) * a * b});
	auto rhs = mul3(C(qp(0, -1)), pf_q({a * b}, {a, b}),
	                pf_p({a, b, -P}, {qp(-1) * a * b}));
	return {"corl_a", lhs, rhs, {"a", "b"}, false, "x = q^(-1/2)ab in thm_b"};
}

Identity make_corl_b()
{
	auto lhs = phi_q({QMN, a, b, qp(3, -2) / (a * b)},
	                 {qp(2, -2) / a, qp(4, -2) / b, qp(-1) * a * b});
	auto rhs = mul3(div(sub(C(b), C(qp(2, -1))), sub(C(b), C(Q))),
	                pf_q({a * b / Q}, {a, b / Q}),
	                pf_p({a, b / Q, -P}, {a * b / Q}));
	return {"corl_b", lhs, rhs, {"a", "b"}, false,
	        "x -> b/q, b -> b/q in thm_b"};
}

Identity make_thm_c()
{
	auto lhs = phi_q({QMN, Q * x, a, b, qp(3, -2) / (a * b)},
	                 {x, qp(2, -2) / a, qp(4, -2) / b, P * a * b});
	// (q^{1/2}-ab)(q-b q^{n/2}) / [(1-x)(q^{3/2}-a b^2 q^n)]
	auto frac = div(mul(sub(C(P), C(a * b)), sub(C(Q), C(qp(0, 1) * b))),
	                mul(sub(C(one), C(x)),
	                    sub(C(qp(3)), C(qp(0, 2) * a * b * b))));
	// { (q^{1-n/2}-x b q^{n/2})/(q-b)
	//   - (q^{1/2}-b q^{n/2})(q^{1/2}x-ab)(q-ab q^n)
	//     / [(q^{1/2}-b)(q^{1/2}-ab q^n)(q-ab q^{n/2})] }
	auto braces =
	    sub(div(sub(C(qp(2, -1)), C(qp(0, 1) * x * b)), sub(C(Q), C(b))),
	        div(mul3(sub(C(P), C(qp(0, 1) * b)), sub(C(P * x), C(a * b)),
	                 sub(C(Q), C(qp(0, 2) * a * b))),
	            mul3(sub(C(P), C(b)), sub(C(P), C(qp(0, 2) * a * b)),
	                 sub(C(Q), C(qp(0, 1) * a * b)))));
	auto rhs = mul4(pf_q({a * b / Q}, {a, b / Q}),
	                pf_p({a, b / Q, -P}, {a * b / Q}), frac, braces);
	return {"thm_c", lhs, rhs, {"a", "b", "x"}, false,
	        "5phi4 extension of andrews_conj carrying the free parameter x"};
}

Identity make_rel_c()
{
	auto lhs = div(sub(C(one), C(qp(0, 0, 2) * x)), sub(C(one), C(x)));
	auto t1 = mul(div(mul(sub(C(one), C(qp(2, -2) / b)),
	                      sub(C(x), C(qp(-1) * a * b))),
	                  mul(sub(C(one), C(x)),
	                      sub(C(qp(2, -2) / b), C(qp(-1) * a * b)))),
	              div(sub(C(one), C(qp(2, -2, 2) / b)),
	                  sub(C(one), C(qp(2, -2) / b))));
	auto t2 = mul(div(mul(sub(C(one), C(qp(-1) * a * b)),
	                      sub(C(qp(2, -2) / b), C(x))),
	                  mul(sub(C(one), C(x)),
	                      sub(C(qp(2, -2) / b), C(qp(-1) * a * b)))),
	              div(sub(C(one), C(qp(-1, 0, 2) * a * b)),
	                  sub(C(one), C(qp(-1) * a * b))));
	return {"rel_c", lhs, add(t1, t2), {"a", "b", "x"}, true,
	        "partial-fraction split of (1-xq^k)/(1-x) at q^(1-n)/b and "
	        "q^(-1/2)ab"};
}

Identity make_guo_44()
{
	auto lhs = phi_q({QMN, a, b, qp(5, -2) / (a * b)},
	                 {qp(4, -2) / a, qp(4, -2) / b, qp(-1) * a * b});
	auto rhs = mul3(div(mul(C(qp(0, -1)), sub(C(qp(3)), C(a * b))),
	                    sub(C(qp(3)), C(qp(0, 2) * a * b))),
	                pf_q({a * b / Q}, {a / Q, b / Q}),
	                pf_p({qp(-1) * a, qp(-1) * b, -P}, {qp(-3) * a * b}));
	return {"guo_44", lhs, rhs, {"a", "b"}, false,
	        "Guo's second 4phi3 summation; x -> a/q, a -> a/q in thm_c"};
}

Identity make_corl_c()
{
	auto lhs = phi_q({QMN, a, b, qp(3, -2) / (a * b)},
	                 {qp(2, -2) / a, qp(4, -2) / b, qp(-1) * a * b});
	auto rhs = mul3(C(qp(0, -1)), pf_q({a * b / Q}, {a, b / Q}),
	                pf_p({a, qp(-1) * b, -P}, {a * b / Q}));
	return {"corl_c", lhs, rhs, {"a", "b"}, false, "x = q^(-1/2)ab in thm_c"};
}

Identity make_corl_d()
{
	auto lhs = phi_q({QMN, a, b, qp(5, -2) / (a * b)},
	                 {qp(2, -2) / a, qp(4, -2) / b, P * a * b});
	// (q^{1/2}-ab)(q-b q^{n/2}) / [(q^{3/2}-ab q^n)(q^{3/2}-a b^2 q^n)]
	auto frac = div(mul(sub(C(P), C(a * b)), sub(C(Q), C(qp(0, 1) * b))),
	                mul(sub(C(qp(3)), C(qp(0, 2) * a * b)),
	                    sub(C(qp(3)), C(qp(0, 2) * a * b * b))));
	// { (q^{1/2}-b q^{n/2})(q+ab q^{n/2})(q-ab q^n)
	//   / [(q^{1/2}-b)(q^{1/2}-ab q^n)]  -  q^{1+n/2}(q^{1/2}-a)/(1-q/b) }
	auto braces =
	    sub(div(mul3(sub(C(P), C(qp(0, 1) * b)), add(C(Q), C(qp(0, 1) * a * b)),
	                 sub(C(Q), C(qp(0, 2) * a * b))),
	            mul(sub(C(P), C(b)), sub(C(P), C(qp(0, 2) * a * b)))),
	        div(mul(C(qp(2, 1)), sub(C(P), C(a))), sub(C(one), C(Q / b))));
	auto rhs = mul4(pf_q({a * b / Q}, {a, b / Q}),
	                pf_p({a, b / Q, -P}, {a * b / Q}), frac, braces);
	return {"corl_d", lhs, rhs, {"a", "b"}, false,
	        "x = q^(3/2-n)/ab in thm_c"};
}

Substitution subst_zero(const std::string &v)
{
	Substitution s;
	s.entries[v] = std::nullopt;
	return s;
}

Substitution subst(const std::string &v, Mono m)
{
	Substitution s;
	s.entries[v] = std::move(m);
	return s;
}

Substitution subst2(const std::string &v1, Mono m1, const std::string &v2, Mono m2)
{
	Substitution s;
	s.entries[v1] = std::move(m1);
	s.entries[v2] = std::move(m2);
	return s;
}

} // namespace

const std::vector<Identity> &builtin_identities()
{
	static const std::vector<Identity> identities = {
	    make_sears(),        make_andrews_sum(), make_andrews_conj(),
	    make_thm_a(),        make_thm_a_swap(),  make_thm_a_proof_step(),
	    make_known_eval(),   make_thm_b(),       make_rel_b(),
	    make_guo_a(),        make_corl_a(),      make_corl_b(),
	    make_thm_c(),        make_rel_c(),       make_guo_44(),
	    make_corl_c(),       make_corl_d(),
	};
	return identities;
}

const std::vector<SpecializationLink> &builtin_specializations()
{
	static const std::vector<SpecializationLink> links = {
	    {"thm_b", "andrews_sum", subst_zero("x"), "x = 0"},
	    {"thm_b", "guo_a", subst("x", qp(1, -2) / (a * b)), "x = q^(1/2-n)/ab"},
	    {"thm_b", "corl_a", subst("x", qp(-1) * a * b), "x = q^(-1/2)ab"},
	    {"thm_b", "corl_b", subst2("x", b / Q, "b", b / Q), "x -> b/q, b -> b/q"},
	    {"thm_c", "andrews_conj", subst_zero("x"), "x = 0"},
	    {"thm_c", "guo_44", subst2("x", a / Q, "a", a / Q), "x -> a/q, a -> a/q"},
	    {"thm_c", "corl_c", subst("x", qp(-1) * a * b), "x = q^(-1/2)ab"},
	    {"thm_c", "corl_d", subst("x", qp(3, -2) / (a * b)), "x = q^(3/2-n)/ab"},
	};
	return links;
}

const SpecializationLink &sears_instance_link()
{
	// Sears parameter assignment under which the sears statement becomes
	// thm_a_proof_step: c, d, e pinned to monomials in a, b, n (a, b as
	// themselves). The dependent lower entry q^{1-n}abc/de then equals
	// q^{-n}/b, and e/b, e/c reproduce the proof step's upper row.
	static const SpecializationLink link = [] {
		SpecializationLink l{"sears", "thm_a_proof_step", {},
		                     "sears with c=q^(1/2-n)/ab, d=q^(1-n)/a, "
		                     "e=q^(1/2)ab"};
		l.subst.entries["c"] = qp(1, -2) / (a * b);
		l.subst.entries["d"] = qp(2, -2) / a;
		l.subst.entries["e"] = P * a * b;
		return l;
	}();
	return link;
}

const Identity *find_identity(const std::string &id)
{
	for (const Identity &ident : builtin_identities())
		if (ident.id == id)
			return &ident;
	return nullptr;
}

const Identity &lookup(const std::string &id)
{
	if (const Identity *ident = find_identity(id))
		return *ident;
	throw SpecError("unknown identity '" + id + "'");
}

Mono substitute_mono(const Mono &m, const Substitution &s)
{
	Mono acc = m;
	for (const auto &[v, repl] : s.entries) {
		const int e = m.var_exp(v);
		if (e == 0)
			continue;
		if (!repl) {
			if (e < 0)
				throw ZeroBase("substituting 0 for '" + v +
				               "' under a negative exponent");
			return Mono(Rat(0));
		}
		acc = (acc / Mono::var(v, 1).pow(e)) * repl->pow(e);
	}
	return acc;
}

namespace {

SeriesSpec collapse_series(SeriesSpec spec, const std::string &v)
{
	auto depends = [&v](const Mono &m) { return m.var_exp(v) != 0; };
	const auto u_it = std::find_if(spec.upper.begin(), spec.upper.end(), depends);
	const auto l_it = std::find_if(spec.lower.begin(), spec.lower.end(), depends);
	if (u_it == spec.upper.end() || l_it == spec.lower.end() ||
	    std::count_if(spec.upper.begin(), spec.upper.end(), depends) != 1 ||
	    std::count_if(spec.lower.begin(), spec.lower.end(), depends) != 1)
		throw SpecError("zero substitution for '" + v +
		                "' needs exactly one upper/lower parameter pair");
	if (*u_it != spec.base * *l_it)
		throw SpecError("zero substitution for '" + v +
		                "' requires the upper parameter to be base * lower");
	spec.upper.erase(u_it);
	spec.lower.erase(l_it);
	return spec;
}

} // namespace

ExprPtr apply_substitution(const ExprPtr &e, const Substitution &s)
{
	if (const PhiNode *node = std::get_if<PhiNode>(&e->node())) {
		SeriesSpec spec = node->spec;
		for (const auto &[v, repl] : s.entries)
			if (!repl)
				spec = collapse_series(std::move(spec), v);
		for (Mono &m : spec.upper)
			m = substitute_mono(m, s);
		for (Mono &m : spec.lower)
			m = substitute_mono(m, s);
		spec.argument = substitute_mono(spec.argument, s);
		return phi(std::move(spec));
	}
	if (const NegNode *node = std::get_if<NegNode>(&e->node()))
		return neg(apply_substitution(node->arg, s));
	if (const BinNode *node = std::get_if<BinNode>(&e->node()))
		return std::make_shared<Expr>(BinNode{node->op,
		                                      apply_substitution(node->lhs, s),
		                                      apply_substitution(node->rhs, s)});
	return transform_monos(e, [&s](const Mono &m) { return substitute_mono(m, s); });
}

void validate_identity(const Identity &ident)
{
	std::set<std::string> used;
	collect_variables(ident.lhs, used);
	collect_variables(ident.rhs, used);
	for (const std::string &v : used)
		if (std::find(ident.variables.begin(), ident.variables.end(), v) ==
		    ident.variables.end())
			throw SpecError("identity '" + ident.id + "' uses undeclared '" +
			                v + "'");
	bool has_k = false;
	auto probe = [&has_k](const Mono &m) {
		if (m.depends_on_k())
			has_k = true;
		return m;
	};
	transform_monos(ident.lhs, probe);
	transform_monos(ident.rhs, probe);
	if (has_k && !ident.uses_k)
		throw SpecError("identity '" + ident.id +
		                "' mentions k but is not marked usesk");
}

bool identity_equal(const Identity &a, const Identity &b)
{
	return a.id == b.id && a.variables == b.variables &&
	       a.uses_k == b.uses_k && expr_equal(a.lhs, b.lhs) &&
	       expr_equal(a.rhs, b.rhs);
}

} // namespace qv

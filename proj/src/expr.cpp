#include "qverify/expr.hpp"

#include <cstdlib>
#include <string>

#include "qverify/qcore.hpp"

namespace qv {

ExprPtr constant(Mono m) { return std::make_shared<Expr>(ConstNode{std::move(m)}); }

ExprPtr poch(Mono arg, Mono base, AffineExp length)
{
	return std::make_shared<Expr>(PochNode{std::move(arg), std::move(base), length});
}

ExprPtr pochfrac(std::vector<Mono> nums, std::vector<Mono> dens, Mono base,
                 AffineExp length)
{
	return std::make_shared<Expr>(
	    PochFracNode{std::move(nums), std::move(dens), std::move(base), length});
}

ExprPtr phi(SeriesSpec spec)
{
	spec.validate();
	return std::make_shared<Expr>(PhiNode{std::move(spec)});
}

ExprPtr add(ExprPtr a, ExprPtr b)
{
	return std::make_shared<Expr>(BinNode{BinOp::add, std::move(a), std::move(b)});
}
ExprPtr sub(ExprPtr a, ExprPtr b)
{
	return std::make_shared<Expr>(BinNode{BinOp::sub, std::move(a), std::move(b)});
}
ExprPtr mul(ExprPtr a, ExprPtr b)
{
	return std::make_shared<Expr>(BinNode{BinOp::mul, std::move(a), std::move(b)});
}
ExprPtr div(ExprPtr a, ExprPtr b)
{
	return std::make_shared<Expr>(BinNode{BinOp::div, std::move(a), std::move(b)});
}
ExprPtr neg(ExprPtr a) { return std::make_shared<Expr>(NegNode{std::move(a)}); }

namespace {

long eval_length(const AffineExp &length, const Point &pt, const std::string &path)
{
	if (length.depends_on_k())
		throw SpecError("Pochhammer length must not depend on k (at " + path + ")");
	const long len = length.value(pt.n, 0);
	if (len < 0)
		throw EvalError("negative Pochhammer length at " + path);
	return len;
}

Rat eval_node(const ExprPtr &e, const Point &pt, const std::string &path);

Rat eval_pochfrac(const PochFracNode &node, const Point &pt, const std::string &path)
{
	const long len = eval_length(node.length, pt, path);
	const Rat base = eval_mono(node.base, pt);
	Rat value(1);
	for (const Mono &m : node.nums)
		value *= pochhammer(eval_mono(m, pt), base, len);
	for (std::size_t j = 0; j < node.dens.size(); ++j) {
		const Rat d = pochhammer(eval_mono(node.dens[j], pt), base, len);
		if (d.is_zero())
			throw PoleError("fraction-form denominator factor " +
			                    std::to_string(j) + " vanishes at " + path,
			                -1, static_cast<long>(j), path);
		value /= d;
	}
	return value;
}

Rat eval_node(const ExprPtr &e, const Point &pt, const std::string &path)
{
	return std::visit(
	    [&](const auto &node) -> Rat {
		    using T = std::decay_t<decltype(node)>;
		    if constexpr (std::is_same_v<T, ConstNode>) {
			    return eval_mono(node.value, pt);
		    } else if constexpr (std::is_same_v<T, PochNode>) {
			    return pochhammer(eval_mono(node.arg, pt),
			                      eval_mono(node.base, pt),
			                      eval_length(node.length, pt, path));
		    } else if constexpr (std::is_same_v<T, PochFracNode>) {
			    return eval_pochfrac(node, pt, path);
		    } else if constexpr (std::is_same_v<T, PhiNode>) {
			    try {
				    return eval_phi(node.spec, pt);
			    } catch (const ZeroDenominator &z) {
				    throw ZeroDenominator(std::string(z.what()) + " at " + path,
				                          z.k(), z.factor(), path);
			    }
		    } else if constexpr (std::is_same_v<T, NegNode>) {
			    return -eval_node(node.arg, pt, path + "/neg");
		    } else {
			    const Rat l = eval_node(node.lhs, pt, path + ".L");
			    const Rat r = eval_node(node.rhs, pt, path + ".R");
			    switch (node.op) {
			    case BinOp::add: return l + r;
			    case BinOp::sub: return l - r;
			    case BinOp::mul: return l * r;
			    case BinOp::div:
				    if (r.is_zero())
					    throw PoleError("denominator vanishes at " + path +
					                        ".R",
					                    -1, -1, path + ".R");
				    return l / r;
			    }
			    std::abort();
		    }
	    },
	    e->node());
}

} // namespace

Rat eval_expr(const ExprPtr &e, const Point &pt) { return eval_node(e, pt, ""); }

bool expr_equal(const ExprPtr &a, const ExprPtr &b)
{
	if (a == b)
		return true;
	if (!a || !b)
		return false;
	if (a->node().index() != b->node().index())
		return false;
	return std::visit(
	    [&](const auto &na) -> bool {
		    using T = std::decay_t<decltype(na)>;
		    const auto &nb = std::get<T>(b->node());
		    if constexpr (std::is_same_v<T, ConstNode>) {
			    return na.value == nb.value;
		    } else if constexpr (std::is_same_v<T, PochNode>) {
			    return na.arg == nb.arg && na.base == nb.base &&
			           na.length == nb.length;
		    } else if constexpr (std::is_same_v<T, PochFracNode>) {
			    return na.nums == nb.nums && na.dens == nb.dens &&
			           na.base == nb.base && na.length == nb.length;
		    } else if constexpr (std::is_same_v<T, PhiNode>) {
			    return na.spec == nb.spec;
		    } else if constexpr (std::is_same_v<T, NegNode>) {
			    return expr_equal(na.arg, nb.arg);
		    } else {
			    return na.op == nb.op && expr_equal(na.lhs, nb.lhs) &&
			           expr_equal(na.rhs, nb.rhs);
		    }
	    },
	    a->node());
}

namespace {

long mono_degree(const Mono &m, long n)
{
	const long e0 = std::labs(m.p_exp().value(n, 0));
	const long en = std::labs(m.p_exp().value(n, n));
	long deg = std::max(e0, en);
	for (const auto &[_, e] : m.var_exps())
		deg += std::labs(static_cast<long>(e));
	return deg;
}

// sum_{i=0}^{len-1} (deg(arg) + i*base_p)
long poch_degree(const Mono &arg, const Mono &base, long len, long n)
{
	if (len <= 0)
		return 0;
	return len * mono_degree(arg, n) + base.p_exp().c0 * len * (len - 1) / 2;
}

} // namespace

long degree_bound(const ExprPtr &e, long n)
{
	return std::visit(
	    [&](const auto &node) -> long {
		    using T = std::decay_t<decltype(node)>;
		    if constexpr (std::is_same_v<T, ConstNode>) {
			    return mono_degree(node.value, n);
		    } else if constexpr (std::is_same_v<T, PochNode>) {
			    return poch_degree(node.arg, node.base, node.length.value(n, 0), n);
		    } else if constexpr (std::is_same_v<T, PochFracNode>) {
			    const long len = node.length.value(n, 0);
			    long deg = 0;
			    for (const Mono &m : node.nums)
				    deg += poch_degree(m, node.base, len, n);
			    for (const Mono &m : node.dens)
				    deg += poch_degree(m, node.base, len, n);
			    return deg;
		    } else if constexpr (std::is_same_v<T, PhiNode>) {
			    const SeriesSpec &s = node.spec;
			    long deg = 0;
			    for (const Mono &m : s.upper)
				    deg += poch_degree(m, s.base, n, n);
			    deg += poch_degree(s.base, s.base, n, n);
			    for (const Mono &m : s.lower)
				    deg += poch_degree(m, s.base, n, n);
			    deg += n * mono_degree(s.argument, n);
			    return deg;
		    } else if constexpr (std::is_same_v<T, NegNode>) {
			    return degree_bound(node.arg, n);
		    } else {
			    return degree_bound(node.lhs, n) + degree_bound(node.rhs, n);
		    }
	    },
	    e->node());
}

void collect_variables(const ExprPtr &e, std::set<std::string> &out)
{
	auto from_mono = [&out](const Mono &m) {
		for (const auto &[name, _] : m.var_exps())
			out.insert(name);
	};
	std::visit(
	    [&](const auto &node) {
		    using T = std::decay_t<decltype(node)>;
		    if constexpr (std::is_same_v<T, ConstNode>) {
			    from_mono(node.value);
		    } else if constexpr (std::is_same_v<T, PochNode>) {
			    from_mono(node.arg);
		    } else if constexpr (std::is_same_v<T, PochFracNode>) {
			    for (const Mono &m : node.nums)
				    from_mono(m);
			    for (const Mono &m : node.dens)
				    from_mono(m);
		    } else if constexpr (std::is_same_v<T, PhiNode>) {
			    for (const Mono &m : node.spec.upper)
				    from_mono(m);
			    for (const Mono &m : node.spec.lower)
				    from_mono(m);
			    from_mono(node.spec.argument);
		    } else if constexpr (std::is_same_v<T, NegNode>) {
			    collect_variables(node.arg, out);
		    } else {
			    collect_variables(node.lhs, out);
			    collect_variables(node.rhs, out);
		    }
	    },
	    e->node());
}

ExprPtr transform_monos(const ExprPtr &e,
                        const std::function<Mono(const Mono &)> &fn)
{
	return std::visit(
	    [&](const auto &node) -> ExprPtr {
		    using T = std::decay_t<decltype(node)>;
		    if constexpr (std::is_same_v<T, ConstNode>) {
			    return constant(fn(node.value));
		    } else if constexpr (std::is_same_v<T, PochNode>) {
			    return poch(fn(node.arg), node.base, node.length);
		    } else if constexpr (std::is_same_v<T, PochFracNode>) {
			    std::vector<Mono> nums, dens;
			    for (const Mono &m : node.nums)
				    nums.push_back(fn(m));
			    for (const Mono &m : node.dens)
				    dens.push_back(fn(m));
			    return pochfrac(std::move(nums), std::move(dens), node.base,
			                    node.length);
		    } else if constexpr (std::is_same_v<T, PhiNode>) {
			    SeriesSpec s = node.spec;
			    for (Mono &m : s.upper)
				    m = fn(m);
			    for (Mono &m : s.lower)
				    m = fn(m);
			    s.argument = fn(s.argument);
			    return phi(std::move(s));
		    } else if constexpr (std::is_same_v<T, NegNode>) {
			    return neg(transform_monos(node.arg, fn));
		    } else {
			    return std::make_shared<Expr>(
			        BinNode{node.op, transform_monos(node.lhs, fn),
			                transform_monos(node.rhs, fn)});
		    }
	    },
	    e->node());
}

const PhiNode *as_phi(const ExprPtr &e)
{
	return e ? std::get_if<PhiNode>(&e->node()) : nullptr;
}

} // namespace qv

#pragma once

#include <functional>
#include <memory>
#include <set>
#include <variant>
#include <vector>

#include "qverify/series.hpp"

namespace qv {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Leaf: a parameter monomial (rational constants included).
struct ConstNode {
	Mono value;
};

// (arg; base)_{length}, length affine in n.
struct PochNode {
	Mono arg;
	Mono base;
	AffineExp length;
};

// prod (nums; base)_len / prod (dens; base)_len — the fraction form.
struct PochFracNode {
	std::vector<Mono> nums;
	std::vector<Mono> dens;
	Mono base;
	AffineExp length;
};

struct PhiNode {
	SeriesSpec spec;
};

struct NegNode {
	ExprPtr arg;
};

enum class BinOp { add, sub, mul, div };

struct BinNode {
	BinOp op;
	ExprPtr lhs;
	ExprPtr rhs;
};

// Immutable closed-form expression tree. The evaluator never rewrites it;
// what was encoded is exactly what is computed.
class Expr {
  public:
	using Node =
	    std::variant<ConstNode, PochNode, PochFracNode, PhiNode, NegNode, BinNode>;

	explicit Expr(Node node) : node_(std::move(node)) {}
	const Node &node() const { return node_; }

  private:
	Node node_;
};

ExprPtr constant(Mono m);
ExprPtr poch(Mono arg, Mono base, AffineExp length);
ExprPtr pochfrac(std::vector<Mono> nums, std::vector<Mono> dens, Mono base,
                 AffineExp length);
ExprPtr phi(SeriesSpec spec);
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr sub(ExprPtr a, ExprPtr b);
ExprPtr mul(ExprPtr a, ExprPtr b);
ExprPtr div(ExprPtr a, ExprPtr b);
ExprPtr neg(ExprPtr a);

// Exact evaluation. Poles (Div by zero, vanished denominator Pochhammer,
// series pole) throw PoleError carrying the AST path of the offending node,
// e.g. "mul.R/div.R".
Rat eval_expr(const ExprPtr &e, const Point &pt);

bool expr_equal(const ExprPtr &a, const ExprPtr &b);

// Upper bound on max(numerator degree, denominator degree) of the value as a
// rational function of p and the variables, for fixed n (and any 0 <= k <= n).
// Feeds the Schwartz-Zippel confidence note.
long degree_bound(const ExprPtr &e, long n);

void collect_variables(const ExprPtr &e, std::set<std::string> &out);

// Rebuilds the tree with fn applied to every parameter monomial: Const
// values, Poch/PochFrac entries, series upper/lower/argument. Series bases
// are structural (p or p^2) and are left untouched.
ExprPtr transform_monos(const ExprPtr &e,
                        const std::function<Mono(const Mono &)> &fn);

// Root accessor for term-by-term series comparisons; null when the root is
// not a series node.
const PhiNode *as_phi(const ExprPtr &e);

} // namespace qv

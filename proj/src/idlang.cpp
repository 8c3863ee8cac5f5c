#include "qverify/idlang.hpp"

#include <cctype>
#include <set>

namespace qv {

namespace {

// ---------------------------------------------------------------------
// lexer
// ---------------------------------------------------------------------

enum class Tok {
	ident,
	integer,
	lbrace,
	rbrace,
	lparen,
	rparen,
	lbracket,
	rbracket,
	semi,
	comma,
	pipe,
	caret,
	star,
	slash,
	plus,
	minus,
	equals,
	end,
};

struct Token {
	Tok kind;
	std::string text;
	long line;
	long col;
};

struct ParseAbort {};

const std::set<std::string> &reserved_words()
{
	static const std::set<std::string> words = {
	    "identity", "vars", "lhs",  "rhs", "usesk", "phi", "poch",
	    "pochfrac", "base", "len",  "z",   "q",     "n",   "k"};
	return words;
}

class Parser {
  public:
	explicit Parser(std::string_view text) : source_(text) {}

	IdentityDoc run()
	{
		doc_.source = source_;
		try {
			lex();
			std::set<std::string> seen;
			while (peek().kind != Tok::end) {
				Identity ident = parse_identity();
				if (!seen.insert(ident.id).second)
					fail(tokens_[identity_start_],
					     "duplicate identity '" + ident.id + "'");
				doc_.identities.push_back(std::move(ident));
			}
		} catch (const ParseAbort &) {
			// diagnostics already recorded; keep whatever parsed cleanly
		}
		return doc_;
	}

  private:
	std::string source_;
	std::vector<Token> tokens_;
	std::size_t at_ = 0;
	std::size_t identity_start_ = 0;
	IdentityDoc doc_;
	std::vector<std::string> var_order_;
	std::set<std::string> vars_;

	[[noreturn]] void fail(const Token &at, const std::string &message)
	{
		doc_.diagnostics.push_back({at.line, at.col, message});
		throw ParseAbort{};
	}

	void lex()
	{
		long line = 1, col = 1;
		std::size_t i = 0;
		auto push = [&](Tok kind, std::string text) {
			tokens_.push_back({kind, std::move(text), line, col});
		};
		while (i < source_.size()) {
			const char ch = source_[i];
			if (ch == '\n') {
				++i;
				++line;
				col = 1;
				continue;
			}
			if (std::isspace(static_cast<unsigned char>(ch))) {
				++i;
				++col;
				continue;
			}
			if (ch == '#') {
				while (i < source_.size() && source_[i] != '\n')
					++i;
				continue;
			}
			if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
				std::size_t start = i;
				while (i < source_.size() &&
				       (std::isalnum(static_cast<unsigned char>(source_[i])) ||
				        source_[i] == '_'))
					++i;
				push(Tok::ident, source_.substr(start, i - start));
				col += static_cast<long>(i - start);
				continue;
			}
			if (std::isdigit(static_cast<unsigned char>(ch))) {
				std::size_t start = i;
				while (i < source_.size() &&
				       std::isdigit(static_cast<unsigned char>(source_[i])))
					++i;
				push(Tok::integer, source_.substr(start, i - start));
				col += static_cast<long>(i - start);
				continue;
			}
			Tok kind;
			switch (ch) {
			case '{': kind = Tok::lbrace; break;
			case '}': kind = Tok::rbrace; break;
			case '(': kind = Tok::lparen; break;
			case ')': kind = Tok::rparen; break;
			case '[': kind = Tok::lbracket; break;
			case ']': kind = Tok::rbracket; break;
			case ';': kind = Tok::semi; break;
			case ',': kind = Tok::comma; break;
			case '|': kind = Tok::pipe; break;
			case '^': kind = Tok::caret; break;
			case '*': kind = Tok::star; break;
			case '/': kind = Tok::slash; break;
			case '+': kind = Tok::plus; break;
			case '-': kind = Tok::minus; break;
			case '=': kind = Tok::equals; break;
			default:
				tokens_.push_back({Tok::end, "", line, col});
				doc_.diagnostics.push_back(
				    {line, col,
				     std::string("unexpected character '") + ch + "'"});
				throw ParseAbort{};
			}
			push(kind, std::string(1, ch));
			++i;
			++col;
		}
		tokens_.push_back({Tok::end, "", line, col});
	}

	const Token &peek() const { return tokens_[at_]; }
	const Token &get()
	{
		const Token &t = tokens_[at_];
		if (t.kind != Tok::end)
			++at_;
		return t;
	}
	bool accept(Tok kind)
	{
		if (peek().kind == kind) {
			++at_;
			return true;
		}
		return false;
	}
	const Token &expect(Tok kind, const std::string &what)
	{
		if (peek().kind != kind)
			fail(peek(), "expected " + what);
		return get();
	}
	void expect_word(const std::string &word)
	{
		const Token &t = peek();
		if (t.kind != Tok::ident || t.text != word)
			fail(t, "expected '" + word + "'");
		get();
	}
	bool peek_word(const std::string &word) const
	{
		return peek().kind == Tok::ident && peek().text == word;
	}

	long to_long(const Token &t)
	{
		if (t.text.size() > 12)
			fail(t, "integer literal too large");
		return std::stol(t.text);
	}

	// -----------------------------------------------------------------
	// exponents and lengths
	// -----------------------------------------------------------------

	enum class AffineCtx { exponent, length };

	// one signed term; exponent context accumulates doubled (p-unit)
	// coefficients, length context plain integers in n
	void parse_affine_term(bool negative, AffineExp &acc, AffineCtx ctx)
	{
		const Token &start = peek();
		long num = 1;
		bool have_num = false;
		if (peek().kind == Tok::integer) {
			num = to_long(get());
			have_num = true;
		}
		int which = 0; // 0 constant, 1 n, 2 k
		if (peek_word("n") || peek_word("k")) {
			which = peek().text == "n" ? 1 : 2;
			get();
		} else if (!have_num) {
			fail(start, "expected integer, n, or k in exponent");
		}
		long den = 1;
		if (peek().kind == Tok::slash &&
		    tokens_[at_ + 1].kind == Tok::integer) {
			get();
			den = to_long(get());
			if (den <= 0)
				fail(start, "bad exponent: zero denominator");
		}
		if (negative)
			num = -num;
		long value;
		if (ctx == AffineCtx::exponent) {
			// q-exponent doubled into a p-exponent; only halves survive
			if ((2 * num) % den != 0)
				fail(start,
				     "bad exponent: not expressible as an integer power of p "
				     "(q = p^2 admits only half-integer q-exponents)");
			value = 2 * num / den;
		} else {
			if (which == 2)
				fail(start, "length must not involve k");
			if (num % den != 0)
				fail(start, "bad length: must be an integer expression in n");
			value = num / den;
		}
		if (which == 0)
			acc.c0 += value;
		else if (which == 1)
			acc.cn += value;
		else
			acc.ck += value;
	}

	AffineExp parse_affine(AffineCtx ctx)
	{
		AffineExp acc;
		parse_affine_term(accept(Tok::minus), acc, ctx);
		while (peek().kind == Tok::plus || peek().kind == Tok::minus)
			parse_affine_term(get().kind == Tok::minus, acc, ctx);
		return acc;
	}

	AffineExp parse_q_exponent()
	{
		if (accept(Tok::lparen)) {
			AffineExp e = parse_affine(AffineCtx::exponent);
			expect(Tok::rparen, "')' after exponent");
			return e;
		}
		const bool negative = accept(Tok::minus);
		const Token &t = get();
		if (t.kind == Tok::integer)
			return {2 * to_long(t) * (negative ? -1 : 1), 0, 0};
		if (t.kind == Tok::ident && t.text == "n")
			return {0, negative ? -2 : 2, 0};
		if (t.kind == Tok::ident && t.text == "k")
			return {0, 0, negative ? -2 : 2};
		fail(t, "expected an exponent after '^'");
	}

	// -----------------------------------------------------------------
	// expressions
	// -----------------------------------------------------------------

	static const ConstNode *as_const(const ExprPtr &e)
	{
		return std::get_if<ConstNode>(&e->node());
	}

	ExprPtr fold_neg(ExprPtr e)
	{
		if (const ConstNode *c = as_const(e))
			return constant(-c->value);
		return neg(std::move(e));
	}

	ExprPtr parse_expr()
	{
		ExprPtr e = parse_mul();
		while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
			const bool is_sub = get().kind == Tok::minus;
			ExprPtr rhs = parse_mul();
			e = is_sub ? sub(std::move(e), std::move(rhs))
			           : add(std::move(e), std::move(rhs));
		}
		return e;
	}

	ExprPtr parse_mul()
	{
		ExprPtr e = parse_unary();
		while (peek().kind == Tok::star || peek().kind == Tok::slash) {
			const Token &op = get();
			ExprPtr rhs = parse_unary();
			const ConstNode *cl = as_const(e);
			const ConstNode *cr = as_const(rhs);
			if (op.kind == Tok::slash && cr && cr->value.is_zero())
				fail(op, "division by the zero monomial");
			if (cl && cr) {
				e = constant(op.kind == Tok::star ? cl->value * cr->value
				                                  : cl->value / cr->value);
			} else {
				e = op.kind == Tok::star ? mul(std::move(e), std::move(rhs))
				                         : div(std::move(e), std::move(rhs));
			}
		}
		return e;
	}

	ExprPtr parse_unary()
	{
		if (accept(Tok::minus))
			return fold_neg(parse_unary());
		return parse_atom();
	}

	ExprPtr parse_atom()
	{
		const Token &t = peek();
		if (t.kind == Tok::integer) {
			get();
			return constant(Mono(Rat(Integer(t.text), Integer(1))));
		}
		if (t.kind == Tok::lparen) {
			get();
			ExprPtr e = parse_expr();
			expect(Tok::rparen, "')'");
			return e;
		}
		if (t.kind != Tok::ident)
			fail(t, "expected an expression");
		if (t.text == "q") {
			get();
			if (accept(Tok::caret))
				return constant(Mono::p_pow(parse_q_exponent()));
			return constant(Mono::p_pow({2, 0, 0}));
		}
		if (t.text == "phi")
			return parse_phi();
		if (t.text == "poch")
			return parse_poch();
		if (t.text == "pochfrac")
			return parse_pochfrac();
		if (t.text == "n" || t.text == "k")
			fail(t, "'" + t.text +
			            "' may appear only inside exponents and lengths");
		if (reserved_words().count(t.text))
			fail(t, "unexpected keyword '" + t.text + "'");
		get();
		if (!vars_.count(t.text))
			fail(t, "unknown variable '" + t.text + "'");
		int exp = 1;
		if (accept(Tok::caret)) {
			const bool negative = accept(Tok::minus);
			const long v = to_long(expect(Tok::integer, "integer exponent"));
			exp = static_cast<int>(negative ? -v : v);
		}
		return constant(Mono::var(t.text, exp));
	}

	// -----------------------------------------------------------------
	// series and fraction-form nodes
	// -----------------------------------------------------------------

	Mono parse_mono(const std::string &what)
	{
		const Token &start = peek();
		ExprPtr e = parse_expr();
		if (const ConstNode *c = as_const(e))
			return c->value;
		fail(start, what + " must be a monomial");
	}

	std::vector<Mono> parse_mono_list(const std::string &what)
	{
		std::vector<Mono> monos;
		monos.push_back(parse_mono(what));
		while (accept(Tok::comma))
			monos.push_back(parse_mono(what));
		return monos;
	}

	Mono parse_base()
	{
		const Token &start = peek();
		const Mono m = parse_mono("series base");
		if (!(m == Mono::p_pow({1, 0, 0}) || m == Mono::p_pow({2, 0, 0})))
			fail(start, "series base must be q or q^(1/2)");
		return m;
	}

	ExprPtr parse_phi()
	{
		const Token &start = get(); // 'phi'
		expect(Tok::lbracket, "'['");
		expect_word("base");
		Mono base = parse_base();
		expect(Tok::rbracket, "']'");
		expect(Tok::lparen, "'('");
		std::vector<Mono> upper = parse_mono_list("series parameter");
		expect(Tok::semi, "';' between upper and lower parameters");
		std::vector<Mono> lower = parse_mono_list("series parameter");
		expect(Tok::pipe, "'|' before the series argument");
		expect_word("z");
		expect(Tok::equals, "'='");
		Mono argument = parse_mono("series argument");
		expect(Tok::rparen, "')'");
		try {
			return phi(SeriesSpec{std::move(upper), std::move(lower),
			                      std::move(argument), std::move(base)});
		} catch (const SpecError &err) {
			fail(start, err.what());
		}
	}

	std::pair<Mono, AffineExp> parse_base_len()
	{
		expect(Tok::lbracket, "'['");
		expect_word("base");
		Mono base = parse_base();
		expect(Tok::comma, "','");
		expect_word("len");
		AffineExp length = parse_affine(AffineCtx::length);
		expect(Tok::rbracket, "']'");
		return {std::move(base), length};
	}

	ExprPtr parse_poch()
	{
		get(); // 'poch'
		auto [base, length] = parse_base_len();
		expect(Tok::lparen, "'('");
		Mono arg = parse_mono("Pochhammer argument");
		expect(Tok::rparen, "')'");
		return poch(std::move(arg), std::move(base), length);
	}

	ExprPtr parse_pochfrac()
	{
		get(); // 'pochfrac'
		auto [base, length] = parse_base_len();
		expect(Tok::lparen, "'('");
		std::vector<Mono> nums = parse_mono_list("fraction-form entry");
		expect(Tok::semi, "';' between numerator and denominator entries");
		std::vector<Mono> dens = parse_mono_list("fraction-form entry");
		expect(Tok::rparen, "')'");
		return pochfrac(std::move(nums), std::move(dens), std::move(base),
		                length);
	}

	// -----------------------------------------------------------------
	// identity blocks
	// -----------------------------------------------------------------

	Identity parse_identity()
	{
		identity_start_ = at_;
		expect_word("identity");
		const Token &name = peek();
		if (name.kind != Tok::ident || reserved_words().count(name.text))
			fail(name, "expected an identity name");
		get();
		expect(Tok::lbrace, "'{'");
		expect_word("vars");
		vars_.clear();
		var_order_.clear();
		while (peek().kind != Tok::semi) {
			const Token &v = peek();
			if (v.kind != Tok::ident)
				fail(v, "expected a variable name");
			if (reserved_words().count(v.text))
				fail(v, "'" + v.text +
				            "' is reserved and cannot be a variable");
			if (!vars_.insert(v.text).second)
				fail(v, "duplicate variable '" + v.text + "'");
			var_order_.push_back(v.text);
			get();
		}
		if (var_order_.empty())
			fail(peek(), "expected at least one variable");
		expect(Tok::semi, "';'");
		expect_word("lhs");
		ExprPtr lhs = parse_expr();
		expect(Tok::semi, "';' after lhs");
		expect_word("rhs");
		ExprPtr rhs = parse_expr();
		expect(Tok::semi, "';' after rhs");
		bool uses_k = false;
		if (peek_word("usesk")) {
			get();
			expect(Tok::semi, "';' after usesk");
			uses_k = true;
		}
		expect(Tok::rbrace, "'}'");
		Identity ident{name.text, std::move(lhs), std::move(rhs), var_order_,
		               uses_k, ""};
		try {
			validate_identity(ident);
		} catch (const SpecError &err) {
			fail(name, err.what());
		}
		return ident;
	}
};

// ---------------------------------------------------------------------
// canonical serialization
// ---------------------------------------------------------------------

// one exponent term in q units from a p-unit coefficient; var is "" for the
// constant term
void append_q_term(std::string &out, bool &first, long p_coeff,
                   const std::string &var)
{
	if (p_coeff == 0)
		return;
	const bool negative = p_coeff < 0;
	const long mag = negative ? -p_coeff : p_coeff;
	std::string text;
	if (var.empty()) {
		text = mag % 2 == 0 ? std::to_string(mag / 2)
		                    : std::to_string(mag) + "/2";
	} else if (mag == 2) {
		text = var;
	} else if (mag % 2 == 0) {
		text = std::to_string(mag / 2) + var;
	} else if (mag == 1) {
		text = var + "/2";
	} else {
		text = std::to_string(mag) + var + "/2";
	}
	if (!first || negative)
		out += negative ? "-" : "+";
	out += text;
	first = false;
}

std::string q_power_string(const AffineExp &p_exp)
{
	if (p_exp == AffineExp{2, 0, 0})
		return "q";
	std::string terms;
	bool first = true;
	append_q_term(terms, first, p_exp.c0, "");
	append_q_term(terms, first, p_exp.cn, "n");
	append_q_term(terms, first, p_exp.ck, "k");
	const bool simple =
	    (p_exp.cn == 0 && p_exp.ck == 0 && p_exp.c0 % 2 == 0) ||
	    (p_exp.c0 == 0 && p_exp.ck == 0 && (p_exp.cn == 2 || p_exp.cn == -2)) ||
	    (p_exp.c0 == 0 && p_exp.cn == 0 && (p_exp.ck == 2 || p_exp.ck == -2));
	return simple ? "q^" + terms : "q^(" + terms + ")";
}

std::string mono_string(const Mono &m)
{
	if (m.is_zero())
		return "0";
	std::vector<std::string> nums, dens;
	const Rat coeff = m.coeff();
	const Integer abs_num = abs(coeff.num());
	if (abs_num != 1)
		nums.push_back(abs_num.get_str());
	if (coeff.den() != 1)
		dens.push_back(coeff.den().get_str());
	if (!m.p_exp().is_zero())
		nums.push_back(q_power_string(m.p_exp()));
	for (const auto &[name, e] : m.var_exps()) {
		const int mag = e < 0 ? -e : e;
		const std::string factor =
		    mag == 1 ? name : name + "^" + std::to_string(mag);
		(e > 0 ? nums : dens).push_back(factor);
	}
	std::string out = coeff.sign() < 0 ? "-" : "";
	if (nums.empty()) {
		out += "1";
	} else {
		for (std::size_t i = 0; i < nums.size(); ++i)
			out += (i ? "*" : "") + nums[i];
	}
	if (dens.size() == 1) {
		out += "/" + dens[0];
	} else if (dens.size() > 1) {
		out += "/(";
		for (std::size_t i = 0; i < dens.size(); ++i)
			out += (i ? "*" : "") + dens[i];
		out += ")";
	}
	return out;
}

// precedence of the folded-monomial text: 0 if it opens with a minus sign,
// 1 if it is a product/quotient chain, 3 if a single bare factor
int mono_level(const std::string &text)
{
	if (!text.empty() && text[0] == '-')
		return 0;
	if (text.find('*') != std::string::npos ||
	    text.find('/') != std::string::npos)
		return 1;
	return 3;
}

std::string base_string(const Mono &base)
{
	return base.p_exp().c0 == 2 ? "q" : "q^(1/2)";
}

std::string length_string(const AffineExp &length)
{
	std::string out;
	if (length.cn == 1)
		out = "n";
	else if (length.cn == -1)
		out = "-n";
	else if (length.cn != 0)
		out = std::to_string(length.cn) + "n";
	if (out.empty())
		return std::to_string(length.c0);
	if (length.c0 > 0)
		out += "+" + std::to_string(length.c0);
	else if (length.c0 < 0)
		out += std::to_string(length.c0);
	return out;
}

std::string mono_list_string(const std::vector<Mono> &monos)
{
	std::string out;
	for (std::size_t i = 0; i < monos.size(); ++i)
		out += (i ? ", " : "") + mono_string(monos[i]);
	return out;
}

std::string print_at(const std::string &text, int level, int min_level)
{
	return level < min_level ? "(" + text + ")" : text;
}

std::string print_expr(const ExprPtr &e, int min_level)
{
	return std::visit(
	    [&](const auto &node) -> std::string {
		    using T = std::decay_t<decltype(node)>;
		    if constexpr (std::is_same_v<T, ConstNode>) {
			    const std::string text = mono_string(node.value);
			    return print_at(text, mono_level(text), min_level);
		    } else if constexpr (std::is_same_v<T, PochNode>) {
			    return "poch[base " + base_string(node.base) + ", len " +
			           length_string(node.length) + "](" +
			           mono_string(node.arg) + ")";
		    } else if constexpr (std::is_same_v<T, PochFracNode>) {
			    return "pochfrac[base " + base_string(node.base) + ", len " +
			           length_string(node.length) + "](" +
			           mono_list_string(node.nums) + " ; " +
			           mono_list_string(node.dens) + ")";
		    } else if constexpr (std::is_same_v<T, PhiNode>) {
			    const SeriesSpec &s = node.spec;
			    return "phi[base " + base_string(s.base) + "](" +
			           mono_list_string(s.upper) + " ; " +
			           mono_list_string(s.lower) +
			           " | z=" + mono_string(s.argument) + ")";
		    } else if constexpr (std::is_same_v<T, NegNode>) {
			    return print_at("-" + print_expr(node.arg, 2), 0, min_level);
		    } else {
			    const char *op = nullptr;
			    int level = 0;
			    switch (node.op) {
			    case BinOp::add: op = " + "; level = 0; break;
			    case BinOp::sub: op = " - "; level = 0; break;
			    case BinOp::mul: op = " * "; level = 1; break;
			    case BinOp::div: op = " / "; level = 1; break;
			    }
			    const std::string text = print_expr(node.lhs, level) + op +
			                             print_expr(node.rhs, level + 1);
			    return print_at(text, level, min_level);
		    }
	    },
	    e->node());
}

} // namespace

IdentityDoc parse_identities(std::string_view text)
{
	return Parser(text).run();
}

std::string serialize_identities(const std::vector<Identity> &identities)
{
	std::string out;
	bool first = true;
	for (const Identity &ident : identities) {
		if (!first)
			out += "\n";
		first = false;
		out += "identity " + ident.id + " {\n";
		out += "  vars";
		for (const std::string &v : ident.variables)
			out += " " + v;
		out += ";\n";
		out += "  lhs " + print_expr(ident.lhs, 0) + ";\n";
		out += "  rhs " + print_expr(ident.rhs, 0) + ";\n";
		if (ident.uses_k)
			out += "  usesk;\n";
		out += "}\n";
	}
	return out;
}

} // namespace qv

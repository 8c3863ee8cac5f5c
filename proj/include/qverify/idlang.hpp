#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qverify/registry.hpp"

namespace qv {

// Textual identity-definition language (.qid files, 8-bit clean ASCII).
//
//   document   := identity*
//   identity   := "identity" NAME "{" "vars" NAME+ ";"
//                 "lhs" expr ";" "rhs" expr ";" ("usesk" ";")? "}"
//   expr       := mul (("+" | "-") mul)*          (left-associative)
//   mul        := unary (("*" | "/") unary)*      (left-associative)
//   unary      := "-" unary | atom
//   atom       := INT | NAME | qpower | phi-node | poch-node
//               | pochfrac-node | "(" expr ")"
//   qpower     := "q" ("^" (simple | "(" affine ")"))?
//   simple     := ["-"] (INT | "n" | "k")
//   affine     := ["-"] term (("+" | "-") term)*  over n, k with integer or
//                 half-integer coefficients (halves are legal only on q:
//                 every exponent is doubled into an integer power of p)
//   phi-node   := "phi" "[" "base" base "]"
//                 "(" monos ";" monos "|" "z" "=" mono ")"
//   poch-node  := "poch" "[" "base" base "," "len" length "]" "(" mono ")"
//   pochfrac-node := "pochfrac" "[" "base" base "," "len" length "]"
//                 "(" monos ";" monos ")"
//   base       := "q" | "q^(1/2)";  length := affine in n, integer coeffs
//
// "#" starts a comment running to end of line; whitespace is insignificant.
// Products, quotients and negations of constant monomials fold into a single
// monomial while parsing, so "q^(1/2-n)/(a*b)" is one series parameter.
// Series parameters must fold to monomials. Identifier names "identity",
// "vars", "lhs", "rhs", "usesk", "phi", "poch", "pochfrac", "base", "len",
// "z", "q", "n", "k" are reserved.

struct Diagnostic {
	long line;
	long col;
	std::string message;
};

struct IdentityDoc {
	std::string source;
	std::vector<Identity> identities;
	std::vector<Diagnostic> diagnostics;

	bool ok() const { return diagnostics.empty(); }
};

// Never throws on malformed input: identities parsed before the first hard
// error are kept, and diagnostics carry (line, column, message).
IdentityDoc parse_identities(std::string_view text);

// Canonical form: fixed clause order and spacing, monomial factors printed
// coefficient, q-power, then variables alphabetically (negative exponents
// in a trailing denominator group). parse(serialize(ids)) reproduces the
// records structurally and serialize is idempotent across the round-trip.
std::string serialize_identities(const std::vector<Identity> &identities);

} // namespace qv

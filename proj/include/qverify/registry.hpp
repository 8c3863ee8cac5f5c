#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qverify/expr.hpp"

namespace qv {

// A named LHS = RHS statement over a declared variable set. uses_k marks the
// relation identities that hold for every k in 0..n (the partial-fraction
// splits); everything else fixes k = 0.
struct Identity {
	std::string id;
	ExprPtr lhs;
	ExprPtr rhs;
	std::vector<std::string> variables;
	bool uses_k = false;
	std::string provenance;
};

// variable -> replacement monomial; a disengaged optional substitutes zero,
// which on a series removes the (base*x, x) upper/lower pair (the termwise
// x -> 0 limit) and turns plain monomial occurrences into the zero monomial.
struct Substitution {
	std::map<std::string, std::optional<Mono>> entries;
};

struct SpecializationLink {
	std::string general_id;
	std::string special_id;
	Substitution subst;
	std::string provenance;
};

// The golden corpus: all seventeen encoded statements, exactly as displayed
// by their sources (no algebraic pre-simplification).
const std::vector<Identity> &builtin_identities();

// The eight reductions among them.
const std::vector<SpecializationLink> &builtin_specializations();

// thm_a_proof_step realized as an instance of sears (all five Sears
// parameters pinned to monomials in a, b, n). Not part of the builtin link
// set; exists so the instantiation claim is testable.
const SpecializationLink &sears_instance_link();

const Identity *find_identity(const std::string &id);
const Identity &lookup(const std::string &id); // throws SpecError if unknown

Mono substitute_mono(const Mono &m, const Substitution &s);
ExprPtr apply_substitution(const ExprPtr &e, const Substitution &s);

// Declared variables must cover the used ones; k-dependence must match
// uses_k. Throws SpecError on violation.
void validate_identity(const Identity &ident);

// Structural equality of records: id, variable list, usesk flag, both trees.
// Provenance is registry metadata and deliberately excluded (the textual
// interchange format carries it only as a comment).
bool identity_equal(const Identity &a, const Identity &b);

} // namespace qv

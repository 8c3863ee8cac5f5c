#pragma once

#include <vector>

#include "qverify/mono.hpp"

namespace qv {

// A terminating basic hypergeometric series
//
//   sum_{k=0}^{n}  prod_i (upper_i; B)_k
//                  ---------------------------------------  * z^k
//                  (B; B)_k * prod_j (lower_j; B)_k
//
// where B is the base (p or p^2, i.e. q^(1/2) or q). The implicit (B;B)_k
// denominator factor from the series definition is supplied at evaluation
// time; identity authors never list it. upper[0] must be the terminating
// parameter q^{-n} (p^{-2n} for base q), which kills every term with k > n.
struct SeriesSpec {
	std::vector<Mono> upper;
	std::vector<Mono> lower;
	Mono argument; // z
	Mono base;     // coeff 1, no variables, constant p-exponent 1 or 2

	// permits shapes other than |upper| == |lower| + 1
	bool allow_general_shape = false;

	void validate() const; // throws SpecError on a malformed spec

	friend bool operator==(const SeriesSpec &, const SeriesSpec &) = default;
};

// Single summand, computed independently of any running state (each
// Pochhammer from scratch). k may exceed pt.n; such terms are exactly zero.
Rat term(const SeriesSpec &spec, const Point &pt, long k);

// Full sum over k = 0..pt.n via incremental per-k factor updates.
// ZeroDenominator carries the offending k and factor index (0 is the
// implicit (B;B)_k factor, j >= 1 is lower[j-1]).
Rat eval_phi(const SeriesSpec &spec, const Point &pt);

} // namespace qv

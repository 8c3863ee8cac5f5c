#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qverify/registry.hpp"

namespace qv {

struct SampleConfig {
	std::uint64_t seed = 42;
	long n_min = 0;
	long n_max = 6;
	long samples_per_n = 25;
	long numerator_bound = 10;
	long denominator_bound = 10;
	long max_resamples = 200;

	// Bounds of 1 are accepted (they exhaust the sampler by construction,
	// which is observable behavior); anything below is rejected.
	void validate() const;

	friend bool operator==(const SampleConfig &, const SampleConfig &) = default;
};

enum class Verdict { pass, fail, inconclusive };
std::string_view to_string(Verdict v);

struct NTally {
	long n;
	long tested;
	long poles;
};

struct Failure {
	Point point;
	long k = 0;       // relation index at which the two sides diverged
	std::string what; // which comparison diverged
	Rat lhs;
	Rat rhs;
};

struct Report {
	std::string identity; // identity id, or "general->special" for links
	SampleConfig config;
	std::vector<NTally> tallies;
	std::vector<Failure> failures;
	Verdict verdict = Verdict::pass;
	long degree_bound = 0;
	std::vector<std::string> warnings;
	std::string note;
};

// Deterministic point stream. Streams are keyed on (seed, label, n), so a
// full run produces identical draws no matter how evaluation work is
// scheduled across threads.
class SampleRng {
  public:
	SampleRng(std::uint64_t seed, std::string_view label, long n);

	std::uint64_t next() { return eng_(); }
	// ±num/den with 1 <= num <= num_bound, 1 <= den <= den_bound; never zero
	Rat rational(long num_bound, long den_bound);

  private:
	std::mt19937_64 eng_;
};

// One candidate point per attempt (p, then each declared variable, in
// declaration order); invalid candidates (p in {0,1,-1}) are redrawn.
// Throws ResampleExhausted after config.max_resamples failed draws.
Point sample_point(SampleRng &rng, const SampleConfig &config,
                   const Identity &identity, long n);

Report verify_identity(const Identity &identity, const SampleConfig &config);

// Samples points of the special identity, pushes them through the
// substitution baked into the general identity's sides, and requires
// general-LHS = special-LHS and general-RHS = special-RHS exactly. For
// zero ("collapse") substitutions the two series are additionally compared
// term by term at every k in 0..n.
Report verify_specialization(const Identity &general, const Identity &special,
                             const Substitution &subst,
                             const SampleConfig &config,
                             const std::string &label);
Report verify_specialization(const SpecializationLink &link,
                             const SampleConfig &config);

// Schwartz-Zippel-style statement: degree bound of the cleared-denominator
// difference from the encoded trees, the per-variable sample-space size, and
// the resulting per-point false-pass bound.
std::string confidence_note(const Identity &identity, const SampleConfig &config);

// Deliberate transcription errors for verifier self-tests; each must be
// caught within a handful of samples.
Identity mutate_rhs_times_q(const Identity &identity);
Identity mutate_bump_first_exponent(const Identity &identity);
Identity mutate_swap_vars(const Identity &identity, const std::string &v1,
                          const std::string &v2);

// Every identity in order, then every link. jobs > 1 distributes evaluation
// across threads; reports (and their bytes, once serialized) are unchanged.
std::vector<Report> verify_all(const std::vector<Identity> &identities,
                               const std::vector<SpecializationLink> &links,
                               const SampleConfig &config, int jobs = 1);

Verdict worst_verdict(const std::vector<Report> &reports);

std::string report_json(const Report &report);
std::string reports_json(const std::vector<Report> &reports,
                         const SampleConfig &config);
std::string render_table(const std::vector<Report> &reports);

} // namespace qv

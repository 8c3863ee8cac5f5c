#include "qverify/verifier.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <functional>
#include <future>
#include <numeric>

namespace qv {

using ordered_json = nlohmann::ordered_json;

void SampleConfig::validate() const
{
	if (n_min < 0 || n_max < n_min)
		throw SpecError("sample config: need 0 <= n_min <= n_max");
	if (samples_per_n < 1)
		throw SpecError("sample config: samples_per_n must be >= 1");
	if (numerator_bound < 1 || denominator_bound < 1)
		throw SpecError("sample config: bounds must be >= 1");
	if (max_resamples < 1)
		throw SpecError("sample config: max_resamples must be >= 1");
}

std::string_view to_string(Verdict v)
{
	switch (v) {
	case Verdict::pass: return "PASS";
	case Verdict::fail: return "FAIL";
	case Verdict::inconclusive: return "INCONCLUSIVE";
	}
	return "?";
}

namespace {

std::uint64_t splitmix64(std::uint64_t &state)
{
	state += 0x9E3779B97F4A7C15ULL;
	std::uint64_t z = state;
	z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
	z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
	return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s)
{
	std::uint64_t h = 14695981039346656037ULL;
	for (unsigned char c : s) {
		h ^= c;
		h *= 1099511628211ULL;
	}
	return h;
}

} // namespace

SampleRng::SampleRng(std::uint64_t seed, std::string_view label, long n)
{
	std::uint64_t state = seed;
	std::uint64_t mixed = splitmix64(state);
	state = mixed ^ fnv1a(label);
	mixed = splitmix64(state);
	state = mixed ^ static_cast<std::uint64_t>(n);
	eng_.seed(splitmix64(state));
}

Rat SampleRng::rational(long num_bound, long den_bound)
{
	const long num = 1 + static_cast<long>(next() % static_cast<std::uint64_t>(num_bound));
	const long den = 1 + static_cast<long>(next() % static_cast<std::uint64_t>(den_bound));
	const bool negative = (next() & 1) != 0;
	return Rat(negative ? -num : num, den);
}

Point sample_point(SampleRng &rng, const SampleConfig &config,
                   const Identity &identity, long n)
{
	for (long attempt = 0; attempt < config.max_resamples; ++attempt) {
		Point pt;
		pt.n = n;
		pt.p = rng.rational(config.numerator_bound, config.denominator_bound);
		for (const std::string &v : identity.variables)
			pt.vars[v] = rng.rational(config.numerator_bound,
			                          config.denominator_bound);
		if (pt.p.is_zero() || pt.p == Rat(1) || pt.p == Rat(-1))
			continue;
		return pt;
	}
	throw ResampleExhausted(
	    fmt::format("no valid point for '{}' at n={} within {} draws",
	                identity.id, n, config.max_resamples));
}

namespace {

// A judged comparison: either all checks agreed, or `failure` holds the
// first divergence. Poles throw ZeroDenominator out of `check`.
struct PointJudge {
	std::vector<Failure> failures;

	bool check(const Point &pt, long k, const std::string &what, const Rat &l,
	           const Rat &r)
	{
		if (l == r)
			return true;
		failures.push_back({pt, k, what, l, r});
		return false;
	}
};

struct NRun {
	NTally tally;
	bool exhausted = false;
	std::vector<Failure> failures;
};

// Shared sampling loop: draws points at fixed n until samples_per_n of them
// have been judged, skipping poles, within the resample budget.
template <typename JudgeFn>
NRun run_points(const Identity &sample_source, const SampleConfig &config,
                const std::string &label, long n, JudgeFn &&judge)
{
	NRun run;
	run.tally = {n, 0, 0};
	SampleRng rng(config.seed, label, n);
	while (run.tally.tested < config.samples_per_n) {
		if (run.tally.poles > config.max_resamples) {
			run.exhausted = true;
			break;
		}
		Point pt;
		try {
			pt = sample_point(rng, config, sample_source, n);
		} catch (const ResampleExhausted &) {
			run.exhausted = true;
			break;
		}
		try {
			judge(pt, run.failures);
			++run.tally.tested;
		} catch (const ZeroDenominator &) {
			++run.tally.poles;
		}
	}
	return run;
}

void finalize_report(Report &rep, const std::vector<NRun> &runs)
{
	bool exhausted = false;
	for (const NRun &run : runs) {
		rep.tallies.push_back(run.tally);
		rep.failures.insert(rep.failures.end(), run.failures.begin(),
		                    run.failures.end());
		exhausted = exhausted || run.exhausted;
		const long seen = run.tally.tested + run.tally.poles;
		if (seen > 0 && run.tally.poles * 5 >= seen)
			rep.warnings.push_back(fmt::format(
			    "pole rate >= 20% at n={} ({} of {} draws); the statement's "
			    "constraints may exclude much of the sample space",
			    run.tally.n, run.tally.poles, seen));
	}
	if (!rep.failures.empty())
		rep.verdict = Verdict::fail;
	else if (exhausted)
		rep.verdict = Verdict::inconclusive;
	else
		rep.verdict = Verdict::pass;
	if (rep.verdict == Verdict::inconclusive)
		rep.warnings.push_back("resample budget exhausted before enough "
		                       "pole-free points were found");
}

} // namespace

Report verify_identity(const Identity &identity, const SampleConfig &config)
{
	config.validate();
	Report rep;
	rep.identity = identity.id;
	rep.config = config;
	rep.degree_bound = degree_bound(identity.lhs, config.n_max) +
	                   degree_bound(identity.rhs, config.n_max);
	rep.note = confidence_note(identity, config);

	std::vector<NRun> runs;
	for (long n = config.n_min; n <= config.n_max; ++n) {
		runs.push_back(run_points(
		    identity, config, identity.id, n,
		    [&](const Point &pt, std::vector<Failure> &failures) {
			    PointJudge judge;
			    const long k_max = identity.uses_k ? pt.n : 0;
			    for (long k = 0; k <= k_max; ++k) {
				    Point at = pt;
				    at.k = k;
				    const Rat l = eval_expr(identity.lhs, at);
				    const Rat r = eval_expr(identity.rhs, at);
				    if (!judge.check(at, k, "lhs != rhs", l, r))
					    break;
			    }
			    failures.insert(failures.end(), judge.failures.begin(),
			                    judge.failures.end());
		    }));
	}
	finalize_report(rep, runs);
	return rep;
}

Report verify_specialization(const Identity &general, const Identity &special,
                             const Substitution &subst,
                             const SampleConfig &config,
                             const std::string &label)
{
	config.validate();
	const ExprPtr gen_lhs = apply_substitution(general.lhs, subst);
	const ExprPtr gen_rhs = apply_substitution(general.rhs, subst);

	bool collapse = false;
	for (const auto &[_, repl] : subst.entries)
		collapse = collapse || !repl.has_value();
	const PhiNode *phi_gen = collapse ? as_phi(gen_lhs) : nullptr;
	const PhiNode *phi_special = collapse ? as_phi(special.lhs) : nullptr;

	Report rep;
	rep.identity = label;
	rep.config = config;
	rep.degree_bound =
	    std::max(degree_bound(gen_lhs, config.n_max) +
	                 degree_bound(special.lhs, config.n_max),
	             degree_bound(gen_rhs, config.n_max) +
	                 degree_bound(special.rhs, config.n_max));
	rep.note = fmt::format(
	    "specialization check: {} instantiated to match {}; both routes are "
	    "evaluated exactly at points sampled for {}",
	    general.id, special.id, special.id);

	std::vector<NRun> runs;
	for (long n = config.n_min; n <= config.n_max; ++n) {
		runs.push_back(run_points(
		    special, config, label, n,
		    [&](const Point &pt, std::vector<Failure> &failures) {
			    PointJudge judge;
			    bool ok =
			        judge.check(pt, 0, "general lhs != special lhs",
			                    eval_expr(gen_lhs, pt),
			                    eval_expr(special.lhs, pt)) &&
			        judge.check(pt, 0, "general rhs != special rhs",
			                    eval_expr(gen_rhs, pt),
			                    eval_expr(special.rhs, pt));
			    if (ok && phi_gen && phi_special)
				    for (long k = 0; k <= pt.n; ++k)
					    if (!judge.check(pt, k,
					                     fmt::format("series terms differ "
					                                 "at k={}",
					                                 k),
					                     term(phi_gen->spec, pt, k),
					                     term(phi_special->spec, pt, k)))
						    break;
			    failures.insert(failures.end(), judge.failures.begin(),
			                    judge.failures.end());
		    }));
	}
	finalize_report(rep, runs);
	return rep;
}

Report verify_specialization(const SpecializationLink &link,
                             const SampleConfig &config)
{
	return verify_specialization(lookup(link.general_id),
	                             lookup(link.special_id), link.subst, config,
	                             link.general_id + "->" + link.special_id);
}

namespace {

// distinct nonzero reduced rationals ±num/den within the bounds
long sample_space_size(long num_bound, long den_bound)
{
	long count = 0;
	for (long num = 1; num <= num_bound; ++num)
		for (long den = 1; den <= den_bound; ++den)
			if (std::gcd(num, den) == 1)
				++count;
	return 2 * count;
}

} // namespace

std::string confidence_note(const Identity &identity, const SampleConfig &config)
{
	const long space = sample_space_size(config.numerator_bound,
	                                     config.denominator_bound);
	const long p_space = space - 2; // p additionally avoids +-1
	std::string degrees;
	long d_max = 0;
	for (long n = config.n_min; n <= config.n_max; ++n) {
		const long d = degree_bound(identity.lhs, n) +
		               degree_bound(identity.rhs, n);
		d_max = std::max(d_max, d);
		degrees += fmt::format("{}n={}:{}", degrees.empty() ? "" : " ", n, d);
	}
	std::string note = fmt::format(
	    "for each fixed n both sides are rational functions of p and {} "
	    "sampled variable(s) [{}]; the encoded trees bound the total degree "
	    "of the cleared-denominator difference by {} ({}); each variable "
	    "is drawn from {} distinct nonzero rationals (p from {}), so one "
	    "exact agreement is a false pass with probability <= {}/{} per "
	    "point, and {} independent agreements per n drive that to "
	    "negligible",
	    identity.variables.size(), fmt::join(identity.variables, ","), d_max,
	    degrees, space, p_space, d_max, p_space, config.samples_per_n);
	if (degree_bound(identity.lhs, config.n_min) +
	        degree_bound(identity.rhs, config.n_min) ==
	    0)
		note += fmt::format("; at n={} both sides are constants, so a single "
		                    "agreement is an exact proof at that n",
		                    config.n_min);
	return note;
}

Identity mutate_rhs_times_q(const Identity &identity)
{
	Identity mutated = identity;
	mutated.id += "#rhs_times_q";
	mutated.rhs = mul(identity.rhs, constant(Mono::p_pow({2, 0, 0})));
	return mutated;
}

Identity mutate_bump_first_exponent(const Identity &identity)
{
	Identity mutated = identity;
	mutated.id += "#bump_exponent";
	bool done = false;
	mutated.rhs = transform_monos(identity.rhs, [&done](const Mono &m) {
		if (done)
			return m;
		done = true;
		return m * Mono::p_pow({1, 0, 0});
	});
	if (!done)
		throw SpecError("no monomial to mutate in '" + identity.id + "'");
	return mutated;
}

Identity mutate_swap_vars(const Identity &identity, const std::string &v1,
                          const std::string &v2)
{
	Identity mutated = identity;
	mutated.id += "#swap_" + v1 + v2;
	mutated.rhs = transform_monos(identity.rhs, [&](const Mono &m) {
		const int e1 = m.var_exp(v1);
		const int e2 = m.var_exp(v2);
		if (e1 == e2)
			return m;
		std::map<std::string, int> exps = m.var_exps();
		exps.erase(v1);
		exps.erase(v2);
		if (e2 != 0)
			exps[v1] = e2;
		if (e1 != 0)
			exps[v2] = e1;
		return Mono(m.coeff(), m.p_exp(), std::move(exps));
	});
	return mutated;
}

std::vector<Report> verify_all(const std::vector<Identity> &identities,
                               const std::vector<SpecializationLink> &links,
                               const SampleConfig &config, int jobs)
{
	config.validate();
	for (const SpecializationLink &link : links) {
		bool gen = false, spec = false;
		for (const Identity &ident : identities) {
			gen = gen || ident.id == link.general_id;
			spec = spec || ident.id == link.special_id;
		}
		if (!gen || !spec)
			throw SpecError("link '" + link.general_id + "->" +
			                link.special_id + "' references an unknown id");
	}

	std::vector<std::function<Report()>> tasks;
	for (const Identity &ident : identities)
		tasks.push_back([&ident, &config] { return verify_identity(ident, config); });
	for (const SpecializationLink &link : links)
		tasks.push_back([&link, &identities, &config] {
			const Identity *gen = nullptr, *spec = nullptr;
			for (const Identity &ident : identities) {
				if (ident.id == link.general_id)
					gen = &ident;
				if (ident.id == link.special_id)
					spec = &ident;
			}
			return verify_specialization(*gen, *spec, link.subst, config,
			                             link.general_id + "->" +
			                                 link.special_id);
		});

	std::vector<Report> reports(tasks.size());
	if (jobs <= 1) {
		for (std::size_t i = 0; i < tasks.size(); ++i)
			reports[i] = tasks[i]();
		return reports;
	}
	for (std::size_t start = 0; start < tasks.size();
	     start += static_cast<std::size_t>(jobs)) {
		const std::size_t stop =
		    std::min(tasks.size(), start + static_cast<std::size_t>(jobs));
		std::vector<std::future<Report>> wave;
		for (std::size_t i = start; i < stop; ++i)
			wave.push_back(std::async(std::launch::async, tasks[i]));
		for (std::size_t i = start; i < stop; ++i)
			reports[i] = wave[i - start].get();
	}
	return reports;
}

Verdict worst_verdict(const std::vector<Report> &reports)
{
	Verdict worst = Verdict::pass;
	for (const Report &rep : reports) {
		if (rep.verdict == Verdict::fail)
			return Verdict::fail;
		if (rep.verdict == Verdict::inconclusive)
			worst = Verdict::inconclusive;
	}
	return worst;
}

namespace {

ordered_json config_json(const SampleConfig &config)
{
	ordered_json j;
	j["seed"] = config.seed;
	j["n_min"] = config.n_min;
	j["n_max"] = config.n_max;
	j["samples_per_n"] = config.samples_per_n;
	j["numerator_bound"] = config.numerator_bound;
	j["denominator_bound"] = config.denominator_bound;
	j["max_resamples"] = config.max_resamples;
	return j;
}

ordered_json point_json(const Point &pt)
{
	ordered_json j;
	j["p"] = pt.p.str();
	j["n"] = pt.n;
	j["k"] = pt.k;
	ordered_json vars = ordered_json::object();
	for (const auto &[name, value] : pt.vars)
		vars[name] = value.str();
	j["vars"] = vars;
	return j;
}

ordered_json to_json(const Report &rep)
{
	ordered_json j;
	j["identity"] = rep.identity;
	j["verdict"] = std::string(to_string(rep.verdict));
	j["config"] = config_json(rep.config);
	ordered_json tallies = ordered_json::array();
	for (const NTally &t : rep.tallies) {
		ordered_json tj;
		tj["n"] = t.n;
		tj["tested"] = t.tested;
		tj["poles"] = t.poles;
		tallies.push_back(tj);
	}
	j["tallies"] = tallies;
	ordered_json failures = ordered_json::array();
	for (const Failure &f : rep.failures) {
		ordered_json fj;
		fj["point"] = point_json(f.point);
		fj["k"] = f.k;
		fj["what"] = f.what;
		fj["lhs"] = f.lhs.str();
		fj["rhs"] = f.rhs.str();
		failures.push_back(fj);
	}
	j["failures"] = failures;
	j["degree_bound"] = rep.degree_bound;
	j["warnings"] = rep.warnings;
	j["note"] = rep.note;
	return j;
}

} // namespace

std::string report_json(const Report &report)
{
	return to_json(report).dump(2) + "\n";
}

std::string reports_json(const std::vector<Report> &reports,
                         const SampleConfig &config)
{
	ordered_json j;
	j["schema"] = "qverify.report.v1";
	j["config"] = config_json(config);
	j["overall"] = std::string(to_string(worst_verdict(reports)));
	ordered_json list = ordered_json::array();
	for (const Report &rep : reports)
		list.push_back(to_json(rep));
	j["reports"] = list;
	return j.dump(2) + "\n";
}

std::string render_table(const std::vector<Report> &reports)
{
	std::string out = fmt::format("{:<28} {:<13} {:>6} {:>7} {:>6} {:>10}\n",
	                              "identity", "verdict", "n", "tested",
	                              "poles", "degree<=");
	for (const Report &rep : reports) {
		long tested = 0, poles = 0;
		for (const NTally &t : rep.tallies) {
			tested += t.tested;
			poles += t.poles;
		}
		const std::string n_range =
		    rep.tallies.empty()
		        ? "-"
		        : fmt::format("{}..{}", rep.tallies.front().n,
		                      rep.tallies.back().n);
		out += fmt::format("{:<28} {:<13} {:>6} {:>7} {:>6} {:>10}\n",
		                   rep.identity, to_string(rep.verdict), n_range,
		                   tested, poles, rep.degree_bound);
		for (const Failure &f : rep.failures)
			out += fmt::format("    {} at n={}, k={}: lhs={} rhs={}\n", f.what,
			                   f.point.n, f.k, f.lhs.str(), f.rhs.str());
		for (const std::string &w : rep.warnings)
			out += fmt::format("    warning: {}\n", w);
	}
	return out;
}

} // namespace qv

#include <doctest.h>

#include "qverify/verifier.hpp"

using namespace qv;

namespace {

SampleConfig small_config()
{
	SampleConfig config;
	config.n_min = 0;
	config.n_max = 2;
	config.samples_per_n = 5;
	return config;
}

} // namespace

TEST_CASE("point sampling is deterministic and seed-sensitive")
{
	const Identity &ident = lookup("andrews_sum");
	SampleConfig config;

	SampleRng r1(42, ident.id, 1);
	SampleRng r2(42, ident.id, 1);
	const Point p1 = sample_point(r1, config, ident, 1);
	const Point p2 = sample_point(r2, config, ident, 1);
	CHECK(p1.p == p2.p);
	CHECK(p1.vars == p2.vars);
	CHECK_NOTHROW(p1.validate());

	SampleRng r3(43, ident.id, 1);
	const Point p3 = sample_point(r3, config, ident, 1);
	const bool differs = !(p3.p == p1.p) || p3.vars != p1.vars;
	CHECK(differs);
}

TEST_CASE("bounds of 1 exhaust the sampler: only +-1 can be drawn for p")
{
	const Identity &ident = lookup("andrews_sum");
	SampleConfig config;
	config.numerator_bound = 1;
	config.denominator_bound = 1;
	SampleRng rng(42, ident.id, 0);
	CHECK_THROWS_AS(sample_point(rng, config, ident, 0), ResampleExhausted);

	config.n_max = 0;
	const Report rep = verify_identity(ident, config);
	CHECK(rep.verdict == Verdict::inconclusive);
}

TEST_CASE("config validation")
{
	SampleConfig config;
	config.samples_per_n = 0;
	CHECK_THROWS_AS(config.validate(), SpecError);
	config = SampleConfig{};
	config.n_min = 3;
	config.n_max = 1;
	CHECK_THROWS_AS(config.validate(), SpecError);
	config = SampleConfig{};
	config.numerator_bound = 0;
	CHECK_THROWS_AS(config.validate(), SpecError);
}

TEST_CASE("verify_identity passes the worked identity and is reproducible")
{
	const Identity &ident = lookup("andrews_sum");
	SampleConfig config = small_config();
	const Report r1 = verify_identity(ident, config);
	CHECK(r1.verdict == Verdict::pass);
	CHECK(r1.failures.empty());
	for (const NTally &t : r1.tallies)
		CHECK(t.tested == config.samples_per_n);

	const Report r2 = verify_identity(ident, config);
	CHECK(report_json(r1) == report_json(r2));

	config.seed = 43;
	const Report r3 = verify_identity(ident, config);
	CHECK(r3.verdict == Verdict::pass);
	CHECK(report_json(r3) != report_json(r1));
}

TEST_CASE("a scaled side fails within a handful of samples")
{
	const Identity mutated = mutate_rhs_times_q(lookup("andrews_sum"));
	SampleConfig config;
	config.n_min = 2;
	config.n_max = 2;
	config.samples_per_n = 5;
	const Report rep = verify_identity(mutated, config);
	CHECK(rep.verdict == Verdict::fail);
	CHECK(!rep.failures.empty());
	// soundness of FAIL: the recorded point reproduces the divergence
	const Failure &f = rep.failures.front();
	Point at = f.point;
	CHECK(eval_expr(mutated.lhs, at) == f.lhs);
	CHECK(eval_expr(mutated.rhs, at) == f.rhs);
	CHECK(f.lhs != f.rhs);
}

TEST_CASE("an always-pole side yields INCONCLUSIVE with a warning")
{
	Identity broken;
	broken.id = "always_pole";
	broken.variables = {"a"};
	broken.lhs = constant(Mono{});
	broken.rhs = div(constant(Mono{}), sub(constant(Mono{}), constant(Mono{})));
	SampleConfig config;
	config.n_min = 0;
	config.n_max = 0;
	config.samples_per_n = 2;
	config.max_resamples = 10;
	const Report rep = verify_identity(broken, config);
	CHECK(rep.verdict == Verdict::inconclusive);
	CHECK(!rep.warnings.empty());
	CHECK(rep.tallies.front().poles > 0);
}

TEST_CASE("specialization links verify, wrong substitutions fail")
{
	SampleConfig config = small_config();
	for (const SpecializationLink &link : builtin_specializations()) {
		const Report rep = verify_specialization(link, config);
		CHECK(rep.verdict == Verdict::pass);
	}

	// deliberately wrong: x -> q^{1/2}ab instead of q^{-1/2}ab
	const Substitution wrong{
	    {{"x", Mono(Rat(1), {1, 0, 0}, {{"a", 1}, {"b", 1}})}}};
	const Report rep = verify_specialization(lookup("thm_b"), lookup("corl_a"),
	                                         wrong, config, "thm_b->corl_a!");
	CHECK(rep.verdict == Verdict::fail);
}

TEST_CASE("thm_a_proof_step is an instance of sears")
{
	const SpecializationLink &link = sears_instance_link();
	CHECK(link.general_id == "sears");
	CHECK(link.special_id == "thm_a_proof_step");

	// the pinned assignment sends the dependent lower entry q^{1-n}abc/de
	// to q^{-n}/b, the proof step's remaining lower parameter
	const Mono a = Mono::var("a"), b = Mono::var("b");
	const Mono c = *link.subst.entries.at("c");
	const Mono d = *link.subst.entries.at("d");
	const Mono e = *link.subst.entries.at("e");
	CHECK(Mono::p_pow({2, -2, 0}) * a * b * c / (d * e) ==
	      Mono::p_pow({0, -2, 0}) / b);

	const Report rep = verify_specialization(link, small_config());
	CHECK(rep.verdict == Verdict::pass);
}

TEST_CASE("confidence note reports the degree bound and variables")
{
	SampleConfig config;
	const std::string note = confidence_note(lookup("sears"), config);
	CHECK(note.find("5 sampled variable(s)") != std::string::npos);
	CHECK(note.find("a,b,c,d,e") != std::string::npos);
	CHECK(note.find("n=0:0") != std::string::npos); // exact at n = 0

	const std::string andrews = confidence_note(lookup("andrews_sum"), config);
	CHECK(andrews.find("exact proof") != std::string::npos);
}

TEST_CASE("verify_all output is byte-identical across parallelism levels")
{
	SampleConfig config = small_config();
	const auto seq = verify_all(builtin_identities(), builtin_specializations(),
	                            config, 1);
	const auto par = verify_all(builtin_identities(), builtin_specializations(),
	                            config, 4);
	CHECK(seq.size() == 17 + 8);
	CHECK(reports_json(seq, config) == reports_json(par, config));
	CHECK(worst_verdict(seq) == Verdict::pass);
}

TEST_CASE("verify_all rejects links against unknown identities")
{
	SpecializationLink bogus{"thm_b", "nonexistent", {}, ""};
	CHECK_THROWS_AS(
	    verify_all(builtin_identities(), {bogus}, small_config(), 1),
	    SpecError);
}

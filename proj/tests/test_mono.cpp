#include <doctest.h>

#include <random>

#include "qverify/mono.hpp"

using namespace qv;

namespace {

Point worked_point()
{
	Point pt;
	pt.p = Rat(2);
	pt.n = 1;
	pt.vars = {{"a", Rat(3)}, {"b", Rat(5)}};
	return pt;
}

Mono random_mono(std::mt19937_64 &rng)
{
	const long num = 1 + static_cast<long>(rng() % 7);
	const long den = 1 + static_cast<long>(rng() % 7);
	Mono m(Rat((rng() & 1) ? -num : num, den),
	       {static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 5) - 2,
	        static_cast<long>(rng() % 3) - 1});
	if (rng() & 1)
		m = m * Mono::var("a", static_cast<int>(rng() % 5) - 2);
	if (rng() & 1)
		m = m * Mono::var("b", static_cast<int>(rng() % 5) - 2);
	return m;
}

Point random_point(std::mt19937_64 &rng)
{
	auto rat = [&rng] {
		const long num = 2 + static_cast<long>(rng() % 7);
		const long den = 1 + static_cast<long>(rng() % 7);
		return Rat((rng() & 1) ? -num : num, den);
	};
	Point pt;
	pt.p = rat();
	while (pt.p == Rat(1) || pt.p == Rat(-1))
		pt.p = rat();
	pt.n = static_cast<long>(rng() % 5);
	pt.k = static_cast<long>(rng() % 4);
	pt.vars = {{"a", rat()}, {"b", rat()}};
	return pt;
}

} // namespace

TEST_CASE("mono evaluation")
{
	CHECK(eval_mono(Mono{}, worked_point()) == Rat(1));

	// q^{1/2-n}/ab at p=2, n=1, a=3, b=5: p^{-1}/15 = 1/30
	const Mono m(Rat(1), {1, -2, 0}, {{"a", -1}, {"b", -1}});
	CHECK(eval_mono(m, worked_point()) == Rat(1, 30));

	// -q^{1/2} at p=2
	CHECK(eval_mono(Mono(Rat(-1), {1, 0, 0}), worked_point()) == Rat(-2));
}

TEST_CASE("mono algebra")
{
	std::mt19937_64 rng(3);
	const Mono m = random_mono(rng);
	CHECK(m * Mono{} == m);
	CHECK(m * mono_inv(m) == Mono{});

	// q^{1/2}ab * q^{-n}/b = q^{1/2-n} a
	const Mono lhs = Mono(Rat(1), {1, 0, 0}, {{"a", 1}, {"b", 1}}) *
	                 Mono(Rat(1), {0, -2, 0}, {{"b", -1}});
	CHECK(lhs == Mono(Rat(1), {1, -2, 0}, {{"a", 1}}));

	CHECK_THROWS_AS(mono_inv(Mono(Rat(0))), ZeroCoefficient);
	CHECK(Mono(Rat(0)) * m == Mono(Rat(0)));
	CHECK(m.pow(0) == Mono{});
	CHECK(m.pow(2) == m * m);
	CHECK(m.pow(-1) == mono_inv(m));
}

TEST_CASE("eval_mono is a homomorphism at every valid point")
{
	std::mt19937_64 rng(17);
	for (int trial = 0; trial < 200; ++trial) {
		const Mono m1 = random_mono(rng);
		const Mono m2 = random_mono(rng);
		const Point pt = random_point(rng);
		CHECK(eval_mono(m1 * m2, pt) == eval_mono(m1, pt) * eval_mono(m2, pt));
		CHECK(eval_mono(mono_inv(m1), pt) == Rat(1) / eval_mono(m1, pt));
	}
}

TEST_CASE("evaluation errors")
{
	Point pt = worked_point();
	CHECK_THROWS_AS(eval_mono(Mono::var("z"), pt), MissingVariable);

	pt.vars["z"] = Rat(0);
	CHECK_THROWS_AS(eval_mono(Mono::var("z", -1), pt), ZeroBase);
	CHECK(eval_mono(Mono::var("z", 2), pt) == Rat(0));
}

TEST_CASE("point invariants")
{
	Point pt = worked_point();
	CHECK_NOTHROW(pt.validate());

	Point bad_p = pt;
	bad_p.p = Rat(1);
	CHECK_THROWS_AS(bad_p.validate(), SpecError);
	bad_p.p = Rat(0);
	CHECK_THROWS_AS(bad_p.validate(), SpecError);

	Point zero_var = pt;
	zero_var.vars["a"] = Rat(0);
	CHECK_THROWS_AS(zero_var.validate(), SpecError);

	Point neg_n = pt;
	neg_n.n = -1;
	CHECK_THROWS_AS(neg_n.validate(), SpecError);
}

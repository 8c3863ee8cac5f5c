#include <doctest.h>

#include "qverify/rat.hpp"

using namespace qv;

TEST_CASE("rationals are always canonical")
{
	CHECK(Rat(6, 4) == Rat(3, 2));
	CHECK(Rat(1, -2) == Rat(-1, 2));
	CHECK(Rat(-4, -6) == Rat(2, 3));
	CHECK(Rat(0, 7) == Rat(0));
	CHECK(Rat(3, 2).den() == 2);
	CHECK(Rat(-1, 2).num() == -1);
	CHECK(Rat(-1, 2).den() == 2);
}

TEST_CASE("arithmetic is exact")
{
	const Rat a(1, 3), b(1, 6);
	CHECK(a + b == Rat(1, 2));
	CHECK(a - b == Rat(1, 6));
	CHECK(a * b == Rat(1, 18));
	CHECK(a / b == Rat(2));
	CHECK(-a == Rat(-1, 3));

	Rat acc(0);
	for (int i = 0; i < 100; ++i)
		acc += Rat(1, 100);
	CHECK(acc == Rat(1));
}

TEST_CASE("division by zero is reported, never silent")
{
	CHECK_THROWS_AS(Rat(1) / Rat(0), ZeroDenominator);
	CHECK_THROWS_AS(Rat(3, 0), ZeroDenominator);
	Rat r(5);
	CHECK_THROWS_AS(r /= Rat(0), ZeroDenominator);
}

TEST_CASE("integer powers")
{
	CHECK(Rat(2, 3).pow(0) == Rat(1));
	CHECK(Rat(2, 3).pow(3) == Rat(8, 27));
	CHECK(Rat(2, 3).pow(-2) == Rat(9, 4));
	CHECK(Rat(-1, 2).pow(3) == Rat(-1, 8));
	CHECK(Rat(-1, 2).pow(-3) == Rat(-8));
	CHECK(Rat(0).pow(4) == Rat(0));
	CHECK_THROWS_AS(Rat(0).pow(-1), ZeroBase);
}

TEST_CASE("parse and print round-trip")
{
	CHECK(Rat::parse("3/5") == Rat(3, 5));
	CHECK(Rat::parse("-7") == Rat(-7));
	CHECK(Rat::parse("0") == Rat(0));
	CHECK(Rat::parse("-6/4") == Rat(-3, 2));
	CHECK(Rat(22, 7).str() == "22/7");
	CHECK(Rat(-5).str() == "-5");
	CHECK(Rat::parse(Rat(-22, 7).str()) == Rat(-22, 7));
	CHECK_THROWS_AS(Rat::parse("1/0"), ZeroDenominator);
	CHECK_THROWS_AS(Rat::parse("abc"), SpecError);
}

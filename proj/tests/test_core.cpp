#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixture.hpp"

#include "sgqft/rationalfn.hpp"
#include "sgqft/series.hpp"

#include <random>

using namespace sgqft;
using fixture::P;

namespace {

std::mt19937 rng(20240817);

Rational randRational()
{
	std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
	return Rational(num(rng), den(rng));
}

Poly randPoly(int atoms = 3, int maxTerms = 4, int maxExp = 3)
{
	std::vector<Atom> pool{Atom::kappa(), Atom::coordI(2), Atom::coordT(), Atom::vertex1(0, 3),
	                       Atom::coordC()};
	std::uniform_int_distribution<int> nterms(0, maxTerms), pick(0, atoms - 1), exp(0, maxExp);
	Poly p;
	int k = nterms(rng);
	for (int t = 0; t < k; ++t) {
		Monomial m;
		for (int f = 0; f < 3; ++f) {
			int e = exp(rng);
			if (e > 0)
				m.exps[pool[static_cast<size_t>(pick(rng))]] += e;
		}
		p.add(m, randRational());
	}
	return p;
}

} // namespace

TEST_CASE("rational normal form and parsing")
{
	CHECK(Rational(6, 8) == Rational(3, 4));
	CHECK(Rational(-6, -8) == Rational(3, 4));
	CHECK(Rational(6, -8).str() == "-3/4");
	CHECK(Rational::parse("5/24").str() == "5/24");
	CHECK(Rational::parse("-7").str() == "-7");
	CHECK(Rational(0).str() == "0");
	CHECK(Rational(5, 24).denominator() == 24);
	CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
	CHECK(Rational::doubleFactorialOdd(3).str() == "15");
	CHECK(Rational::binomial(5, 2) == Rational(10));
	CHECK(Rational::binomial(-2, 2) == Rational(3));
}

TEST_CASE("poly arithmetic: additive inverse and distributivity")
{
	Poly kappa{Atom::kappa()};
	CHECK((kappa + kappa.scaled(Rational(-1))).isZero());

	// (1/2 F1'' + 1/2 (F1')^2) * kappa expands term by term.
	Poly lhs = P("1/2 F1d2 + 1/2 F1d1^2") * kappa;
	CHECK(lhs == P("1/2 F1d2 k + 1/2 F1d1^2 k"));

	// (F0''')^2 kappa^3 scaled by 5/24 is the kappa^3 term of W_2.
	CHECK(P("F0d3^2 k^3").scaled(Rational(5, 24)) == P("5/24 F0d3^2 k^3"));
}

TEST_CASE("poly ring laws on random triples")
{
	for (int it = 0; it < 60; ++it) {
		Poly a = randPoly(), b = randPoly(), c = randPoly();
		CHECK((a + b) + c == a + (b + c));
		CHECK(a * b == b * a);
		CHECK((a * b) * c == a * (b * c));
		CHECK(a * (b + c) == a * b + a * c);
	}
}

TEST_CASE("derivation satisfies Leibniz and the propagator rule")
{
	Derivation dt;
	dt.setRule(Atom::kappa(), P("k^2 F0d3"));
	dt.setRule(Atom::vertex1(1, 1), P("F1d2"));
	dt.setRule(Atom::vertex1(1, 2), P("F1d3"));
	dt.setRule(Atom::vertex1(0, 3), P("F0d4"));

	CHECK(dt(Poly(Atom::kappa())) == P("k^2 F0d3"));
	CHECK(dt(Poly(Rational(7))).isZero());
	CHECK(dt(P("F1d1 k")) == P("F1d2 k + F1d1 k^2 F0d3"));

	for (int it = 0; it < 40; ++it) {
		Poly a = randPoly(), b = randPoly();
		CHECK(dt(a * b) == dt(a) * b + a * dt(b));
	}
}

TEST_CASE("integrate_kappa inverts the kappa derivative")
{
	Atom kap = Atom::kappa();
	CHECK(integrate_kappa(Poly(), kap, P("F2")) == P("F2"));
	CHECK(integrate_kappa(P("k^2"), kap) == P("1/3 k^3"));
	CHECK_THROWS_AS(integrate_kappa(Poly(Monomial::atom(kap, -1), Rational(1)), kap),
	                std::domain_error);

	Derivation dk;
	dk.setRule(kap, Poly(1));
	for (int it = 0; it < 40; ++it) {
		Poly p = randPoly();
		CHECK(dk(integrate_kappa(p, kap)) == p);
	}
}

TEST_CASE("substitution examples from the 1D specialization")
{
	// W_2 with F_{g>=1} -> 0 and F_0^{(n)} -> I_{n-1} gives F_2^{1D}.
	Poly w2 = P("F2 + 1/2 F1d2 k + 1/2 F1d1^2 k + 1/8 F0d4 k^2 + 1/2 F1d1 F0d3 k^2"
	            " + 5/24 F0d3^2 k^3");
	std::map<Atom, Poly> sub;
	sub[Atom::vertex1(2, 0)] = Poly();
	sub[Atom::vertex1(1, 1)] = Poly();
	sub[Atom::vertex1(1, 2)] = Poly();
	sub[Atom::vertex1(0, 3)] = Poly(Atom::coordI(2));
	sub[Atom::vertex1(0, 4)] = Poly(Atom::coordI(3));
	CHECK(substitute(w2, sub) == P("5/24 I2^2 k^3 + 1/8 I3 k^2"));

	// F_2^{1D} at the A_1 point: I2 -> -2, I3 -> 0, kappa -> 1/(2c).
	std::map<Atom, RationalFn> curve;
	curve[Atom::coordI(2)] = RationalFn(Rational(-2));
	curve[Atom::coordI(3)] = RationalFn(Rational(0));
	curve[Atom::kappa()] = RationalFn(Poly(1), P("2 c"));
	RationalFn f2 = substitute(P("5/24 I2^2 k^3 + 1/8 I3 k^2"), curve);
	CHECK(f2 == RationalFn(Poly(Rational(5)), P("48 c^3")));

	// Identity assignment passes through.
	Poly p = randPoly();
	CHECK(substitute(p, std::map<Atom, Poly>{}) == p);
}

TEST_CASE("rational function canonical form")
{
	Atom c = Atom::coordC();
	// (c^2-1)/(c-1) reduces to c+1 over positive-leading denominators.
	RationalFn a(P("c^2 - 1"), P("c - 1"));
	CHECK(a.identicalTo(RationalFn(P("c + 1"))));
	// Same function built two ways has identical representation.
	RationalFn b1 = RationalFn(Poly(Rational(5)), P("48 c^3"));
	RationalFn b2 = RationalFn(P("10 c^2"), P("96 c^5"));
	CHECK(b1.identicalTo(b2));
	// Negative-leading denominators get flipped.
	RationalFn d(P("c"), P("1 - c"));
	CHECK(d.den().coefficientOf(c, 1).constantTerm() == Rational(1));
	// Laurent clearing.
	RationalFn e(Poly(Monomial::atom(c, -2), Rational(1)), P("c"));
	CHECK(e.identicalTo(RationalFn(Poly(1), P("c^3"))));
	CHECK_THROWS_AS(RationalFn(Poly(1), Poly()), std::domain_error);
	// Derivative via the quotient rule: d/dc (1/(2c)) = -1/(2c^2).
	Derivation dc;
	dc.setRule(c, Poly(1));
	CHECK(RationalFn(Poly(1), P("2 c")).derived(dc) == RationalFn(P("-1"), P("2 c^2")));
}

TEST_CASE("truncated series: log/exp inverse pair and composition")
{
	Atom T = Atom::coordT();
	std::vector<Atom> vars{T};
	TruncatedSeries one(vars, 8, Poly(1));
	CHECK(series_log(one).isZero());

	// exp(T - T^2/2) has log T - T^2/2.
	TruncatedSeries s(vars, 8, P("T - 1/2 T^2"));
	CHECK(series_log(series_exp(s)) == s);

	// log requires unit constant term.
	CHECK_THROWS_AS(series_log(TruncatedSeries(vars, 4, P("T"))), std::domain_error);
	CHECK_THROWS_AS(series_exp(TruncatedSeries(vars, 4, Poly(1))), std::domain_error);

	for (int it = 0; it < 10; ++it) {
		Poly body;
		std::uniform_int_distribution<int> e(1, 5);
		for (int t = 0; t < 3; ++t)
			body.add(Monomial::atom(T, e(rng)), randRational());
		TruncatedSeries u(vars, 7, body);
		CHECK(series_log(series_exp(u)) == u);
	}
}

TEST_CASE("series_log of the trivalent generating function gives a^g_{2g-2}")
{
	// log sum_m (6m)!/((3m)!(2m)!) (x/288)^m to x^4; first coefficient 5/24.
	Atom x = Atom::named("x");
	Poly body(1);
	for (int m = 1; m <= 4; ++m) {
		Rational c = Rational::factorial(static_cast<unsigned long>(6 * m)) /
		             (Rational::factorial(static_cast<unsigned long>(3 * m)) *
		              Rational::factorial(static_cast<unsigned long>(2 * m))) /
		             Rational(288).pow(m);
		body.add(Monomial::atom(x, m), c);
	}
	auto lg = series_log(TruncatedSeries({x}, 4, body));
	CHECK(lg.poly().coefficientOf(x, 1).constantTerm() == Rational(5, 24));
	// The x^2..x^4 coefficients are a^g_{2g-2} for g = 3,4,5; checked
	// against enumeration in the applications suite.
	CHECK(lg.poly().coefficientOf(x, 2).constantTerm() == Rational(5, 16));
	CHECK(lg.poly().coefficientOf(x, 3).constantTerm() == Rational(1105, 1152));
	CHECK(lg.poly().coefficientOf(x, 4).constantTerm() == Rational(565, 128));
}

TEST_CASE("rational function canonical form is representation independent")
{
	// p r / (q r) and p / q normalize to identical representations for
	// univariate p, q, r.
	Atom c = Atom::coordC();
	std::uniform_int_distribution<long> coef(-4, 4);
	std::uniform_int_distribution<int> deg(0, 3);
	auto randUni = [&]() {
		Poly p;
		int d = deg(rng);
		for (int k = 0; k <= d; ++k)
			p.add(Monomial::atom(c, k), Rational(coef(rng)));
		return p;
	};
	int done = 0;
	while (done < 25) {
		Poly p = randUni(), q = randUni(), r = randUni();
		if (q.isZero() || r.isZero())
			continue;
		++done;
		RationalFn lhs(p * r, q * r);
		RationalFn rhs(p, q);
		CHECK(lhs.identicalTo(rhs));
		CHECK(lhs == rhs);
	}
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixture.hpp"
#include "tables.hpp"

#include "sgqft/applications.hpp"
#include "sgqft/gaussian.hpp"

#include <algorithm>

using namespace sgqft;
using fixture::P;

namespace {

// Literal permutation sum (1/(2^l l!)) sum_{sigma in S_2l} prod kappa,
// the raw form of the Gaussian moment.
Poly permutationMoment(const std::vector<int> &types)
{
	std::vector<int> slots = types; // one entry per half-edge slot
	std::sort(slots.begin(), slots.end());
	size_t n = slots.size();
	REQUIRE(n % 2 == 0);
	Poly total;
	std::vector<size_t> idx(n);
	std::iota(idx.begin(), idx.end(), 0);
	std::sort(idx.begin(), idx.end());
	do {
		Poly prod(1);
		for (size_t j = 0; j + 1 < n; j += 2)
			prod *= Poly(Atom::kappa(slots[idx[j]], slots[idx[j + 1]]));
		total += prod;
	} while (std::next_permutation(idx.begin(), idx.end()));
	long l = static_cast<long>(n / 2);
	Rational norm = Rational(2).pow(l) * Rational::factorial(static_cast<unsigned long>(l));
	return total.scaled(norm.inverse());
}

} // namespace

TEST_CASE("pairing counts: (2l-1)!! for one type")
{
	for (int l = 1; l <= 5; ++l) {
		Poly m = wick::moment({2 * l});
		Poly want = Poly(Monomial::atom(Atom::kappa(), l),
		                 Rational::doubleFactorialOdd(static_cast<unsigned long>(l)));
		CHECK(m == want);
	}
	// Odd counts vanish.
	CHECK(wick::moment({3}).isZero());
	CHECK(wick::moment({2, 1}).isZero());
}

TEST_CASE("canonical matchings equal the permutation sum for l <= 3")
{
	CHECK(wick::moment({2, 0}) == permutationMoment({1, 1}));
	CHECK(wick::moment({2, 2}) == permutationMoment({1, 1, 2, 2}));
	CHECK(wick::moment({1, 3}) == permutationMoment({1, 2, 2, 2}));
	CHECK(wick::moment({4, 2}) == permutationMoment({1, 1, 1, 1, 2, 2}));
	CHECK(wick::moment({3, 3}) == permutationMoment({1, 1, 1, 2, 2, 2}));
}

TEST_CASE("Wick free energies match the graph-sum realization")
{
	FeynmanContext ctx(1);
	auto wf = wick_free_energies(3, ctx);
	CHECK(wf[2] == tables::w2());
	CHECK(wf[3] == tables::w3());
	CHECK(oracle_equivalence(3, ctx));

	FeynmanContext ctx2(2);
	auto wf2 = wick_free_energies(2, ctx2);
	CHECK(wf2[2] == tables::w2_N2());
	CHECK(oracle_equivalence(2, ctx2));
}

TEST_CASE("all vertex weights zero kills the free energies")
{
	FeynmanContext ctx(1);
	ctx.vertexRule = [](int, const std::vector<int> &) { return Poly(); };
	auto wf = wick_free_energies(3, ctx);
	CHECK(wf[2].isZero());
	CHECK(wf[3].isZero());
}

TEST_CASE("only even lambda exponents appear in the connected log")
{
	// Probed indirectly: the disconnected sum at odd weight has an odd
	// number of half-edges and a vanishing moment. Spot-check weight 3
	// multisets by hand: a single (0,5)-type vertex or (0,3)+(1,1) etc.
	// all carry odd slot counts.
	FeynmanContext ctx(1);
	auto wf = wick_free_energies(4, ctx);
	CHECK(!wf[2].isZero());
	CHECK(!wf[3].isZero());
	CHECK(wf[4] == tables::w4());
}

TEST_CASE("closed 1D partition sum: first orders")
{
	auto z = one_d_partition_coefficients(2);
	Atom lam2 = Atom::named("lambda2");
	// n = 0 term.
	CHECK(z.poly().coefficient(Monomial::one()) == Rational(1));
	// n = 1: (1/2) t0^2 lambda^-2 + (1/2) t1.
	Monomial m1;
	m1.exps[Atom::coordTee(0)] = 2;
	m1.exps[lam2] = -1;
	CHECK(z.poly().coefficient(m1) == Rational(1, 2));
	CHECK(z.poly().coefficient(Monomial::atom(Atom::coordTee(1))) == Rational(1, 2));
	// n = 2 spot checks: 3!! = 3 pairings. t3/8 at lambda^2... partition
	// {m4=1}: 3/4! = 1/8; {m1=1,m3=1}: 3/(1! 3!) = 1/2 at lambda^0.
	Monomial m4;
	m4.exps[Atom::coordTee(3)] = 1;
	m4.exps[lam2] = 1;
	CHECK(z.poly().coefficient(m4) == Rational(1, 8));
	Monomial m13;
	m13.exps[Atom::coordTee(0)] = 1;
	m13.exps[Atom::coordTee(2)] = 1;
	CHECK(z.poly().coefficient(m13) == Rational(1, 2));
}

TEST_CASE("log of the 1D partition sum matches the stable-graph free energy")
{
	// [lambda^{2g-2}] log Z(t) equals F_g^{1D} with the I_k(t) series and
	// kappa = 1/(1 - I_1(t)) substituted, to t-degree D.
	const int g = 2;
	const long D = 5;
	auto z = one_d_partition_coefficients(g - 1 + static_cast<int>(D));
	// Restrict to t-degree <= D before taking the log.
	std::vector<Atom> tvars;
	for (auto &[m, c] : z.poly().terms())
		for (auto &[a, e] : m.exps)
			if (a.kind == AtomKind::CoordTee)
				tvars.push_back(a);
	std::sort(tvars.begin(), tvars.end());
	tvars.erase(std::unique(tvars.begin(), tvars.end()), tvars.end());
	TruncatedSeries zt(tvars, D, z.poly());
	TruncatedSeries logz = series_log(zt);
	// Collect the lambda2-exponent g-1 slice.
	Atom lam2 = Atom::named("lambda2");
	Poly lhs;
	for (auto &[m, c] : logz.poly().terms()) {
		if (m.exponent(lam2) != g - 1)
			continue;
		Monomial rest = m;
		rest.exps.erase(lam2);
		lhs.add(rest, c);
	}

	// Right side: compose F_g^{1D} with the coordinate series.
	Poly f = one_d_free_energy(g);
	auto I = coordinates_I_from_t(2 * g - 1, D);
	std::map<Atom, TruncatedSeries> sub;
	for (int k = 1; k <= 2 * g - 1; ++k)
		sub[Atom::coordI(k)] = I[static_cast<size_t>(k)];
	// kappa = sum_j I_1^j to degree D.
	TruncatedSeries kap(tvars, D, Poly(1));
	TruncatedSeries powerI1(tvars, D, Poly(1));
	for (long j = 1; j <= D; ++j) {
		powerI1 *= I[1];
		kap += powerI1;
	}
	sub[Atom::kappa()] = kap;
	TruncatedSeries rhs = series_compose(f, sub, tvars, D);
	CHECK(TruncatedSeries(tvars, D, lhs) == rhs);
}

TEST_CASE("degenerate vertex rule: F_0''' = 0 reduces both pipelines alike")
{
	FeynmanContext ctx(1);
	ctx.vertexRule = [](int g, const std::vector<int> &nu) -> Poly {
		if (g == 0 && nu[0] == 3)
			return Poly();
		return Poly(Atom::vertex(g, nu));
	};
	auto wf = wick_free_energies(3, ctx);
	for (int g = 2; g <= 3; ++g) {
		Poly direct = realized_free_energy(g, ctx);
		CHECK(wf[g] == direct);
		// No trivalent genus-0 vertex survives.
		for (auto &[m, c] : direct.terms())
			CHECK(m.exponent(Atom::vertex1(0, 3)) == 0);
	}
}

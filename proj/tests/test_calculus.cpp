#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixture.hpp"

#include "sgqft/graph_sum.hpp"

#include <random>

using namespace sgqft;

namespace {

std::mt19937 rng(24601);

// The N = 2 dumbbell with bridge labels (1,2) and both loops (1,1).
StableGraph labelledDumbbell()
{
	StableGraph g;
	g.addVertex(0);
	g.addVertex(0);
	g.addEdge(0, 0, 1, 1);
	g.addEdge(0, 1, 1, 2);
	g.addEdge(1, 1, 1, 1);
	return g;
}

GraphSum randomSum(int g, int n)
{
	GraphSum s;
	std::uniform_int_distribution<long> coef(-5, 5);
	for (auto &[key, cls] : enumerate_stable(g, n)) {
		long c = coef(rng);
		if (c != 0)
			s += GraphSum::single(cls.rep, Rational(c));
	}
	return s;
}

} // namespace

TEST_CASE("edge cutting: the three displayed examples")
{
	// K kills the lone genus-2 vertex.
	CHECK(op_cut(GraphSum::single(fixture::loneVertex(2))).isZero());

	// K(dumbbell) = 2 (cut a loop) + 1 (cut the bridge; disconnects).
	GraphSum kd = op_cut(GraphSum::single(fixture::dumbbell()));
	CHECK(kd.size() == 2);
	StableGraph cutLoop; // loop-vertex -- edge -- vertex with two legs
	cutLoop.addVertex(0);
	cutLoop.addVertex(0);
	cutLoop.addEdge(0, 0);
	cutLoop.addEdge(0, 1);
	cutLoop.addLeg(1);
	cutLoop.addLeg(1);
	CHECK(kd.coefficientOf(cutLoop) == Rational(2));
	StableGraph cutBridge; // two loop+leg components
	cutBridge.addVertex(0);
	cutBridge.addVertex(0);
	cutBridge.addEdge(0, 0);
	cutBridge.addEdge(1, 1);
	cutBridge.addLeg(0);
	cutBridge.addLeg(1);
	CHECK(kd.coefficientOf(cutBridge) == Rational(1));

	// K(theta) = 3 x (double edge, one leg on each side).
	GraphSum kt = op_cut(GraphSum::single(fixture::theta()));
	CHECK(kt.size() == 1);
	StableGraph doubled;
	doubled.addVertex(0);
	doubled.addVertex(0);
	doubled.addEdge(0, 1);
	doubled.addEdge(0, 1);
	doubled.addLeg(0);
	doubled.addLeg(1);
	CHECK(kt.coefficientOf(doubled) == Rational(3));
}

TEST_CASE("attach operator: the displayed examples")
{
	// On the one-leg genus-1 vertex: just the two-leg vertex.
	GraphSum d1 = op_attach(GraphSum::single(fixture::loneVertex(1, 1)));
	CHECK(d1.size() == 1);
	CHECK(d1.coefficientOf(fixture::loneVertex(1, 2)) == Rational(1));

	// On the dumbbell: multiplicities 2 (leg on an end), 2 (insertion in a
	// loop), 1 (insertion in the bridge).
	GraphSum dd = op_attach(GraphSum::single(fixture::dumbbell()));
	CHECK(dd.size() == 3);
	StableGraph legOnEnd = fixture::dumbbell();
	legOnEnd.addLeg(0);
	CHECK(dd.coefficientOf(legOnEnd) == Rational(2));
	StableGraph loopIns; // x(leg) =double= v -- bridge -- w(loop)
	loopIns.addVertex(0);
	loopIns.addVertex(0);
	loopIns.addVertex(0);
	loopIns.addEdge(0, 1);
	loopIns.addEdge(0, 1);
	loopIns.addEdge(1, 2);
	loopIns.addEdge(2, 2);
	loopIns.addLeg(0);
	CHECK(dd.coefficientOf(loopIns) == Rational(2));
	StableGraph bridgeIns; // v(loop) -- x(leg) -- w(loop)
	bridgeIns.addVertex(0);
	bridgeIns.addVertex(0);
	bridgeIns.addVertex(0);
	bridgeIns.addEdge(0, 0);
	bridgeIns.addEdge(0, 1);
	bridgeIns.addEdge(1, 2);
	bridgeIns.addEdge(2, 2);
	bridgeIns.addLeg(1);
	CHECK(dd.coefficientOf(bridgeIns) == Rational(1));

	CHECK(op_attach(GraphSum{}).isZero());
}

TEST_CASE("glue operator: the displayed examples")
{
	GraphSum g1 = op_glue_leg(GraphSum::single(fixture::loneVertex(1, 1)));
	CHECK(g1.size() == 1);
	StableGraph glued;
	glued.addVertex(1);
	glued.addVertex(0);
	glued.addEdge(0, 1);
	glued.addLeg(1);
	glued.addLeg(1);
	CHECK(g1.coefficientOf(glued) == Rational(1));

	GraphSum g2 = op_glue_leg(GraphSum::single(fixture::loopWithLegs(0, 2)));
	CHECK(g2.size() == 1);
	StableGraph glued2; // loop vertex with one leg -- trivalent with two legs
	glued2.addVertex(0);
	glued2.addVertex(0);
	glued2.addEdge(0, 0);
	glued2.addEdge(0, 1);
	glued2.addLeg(0);
	glued2.addLeg(1);
	glued2.addLeg(1);
	CHECK(g2.coefficientOf(glued2) == Rational(2));

	// Zero on graphs without legs.
	CHECK(op_glue_leg(GraphSum::single(fixture::loneVertex(2))).isZero());
}

TEST_CASE("operators are linear and preserve stability")
{
	for (int it = 0; it < 6; ++it) {
		GraphSum a = randomSum(1, 1), b = randomSum(1, 1);
		Rational x(3), y(-2);
		GraphSum mix = a.scaled(x) + b.scaled(y);
		CHECK(op_cut(mix) == op_cut(a).scaled(x) + op_cut(b).scaled(y));
		CHECK(op_D(mix) == op_D(a).scaled(x) + op_D(b).scaled(y));
	}
	for (auto &[key, cls] : enumerate_stable(2, 1)) {
		for (auto out : {op_cut(GraphSum::single(cls.rep)), op_attach(GraphSum::single(cls.rep)),
		                 op_glue_leg(GraphSum::single(cls.rep))})
			for (auto &[k2, t] : out.terms()) {
				CHECK(is_stable(t.rep));
				t.rep.validate();
			}
		// Edge/leg bookkeeping: K drops one edge and adds two legs; D adds
		// one leg, preserves genus and connectivity.
		auto kOut = op_cut(GraphSum::single(cls.rep));
		for (auto &[k2, t] : kOut.terms()) {
			CHECK(t.rep.numEdges() == cls.rep.numEdges() - 1);
			CHECK(t.rep.numLegs() == cls.rep.numLegs() + 2);
		}
		GraphSum dOut = op_D(GraphSum::single(cls.rep));
		for (auto &[k2, t] : dOut.terms()) {
			CHECK(t.rep.numLegs() == cls.rep.numLegs() + 1);
			CHECK(genus(t.rep) == 2);
			CHECK(t.rep.isConnected());
		}
	}
}

TEST_CASE("abstract free energies match the worked examples")
{
	// F_{0,4} = 1/24 (4-valent vertex) + 1/8 (two trivalent vertices).
	GraphSum f04 = abstract_free_energy(0, 4);
	CHECK(f04.size() == 2);
	CHECK(f04.coefficientOf(fixture::loneVertex(0, 4)) == Rational(1, 24));
	StableGraph twoTri;
	twoTri.addVertex(0);
	twoTri.addVertex(0);
	twoTri.addEdge(0, 1);
	twoTri.addLeg(0);
	twoTri.addLeg(0);
	twoTri.addLeg(1);
	twoTri.addLeg(1);
	CHECK(f04.coefficientOf(twoTri) == Rational(1, 8));

	// F_{1,1} term by term.
	GraphSum f11 = abstract_free_energy(1, 1);
	CHECK(f11.size() == 2);
	CHECK(f11.coefficientOf(fixture::loneVertex(1, 1)) == Rational(1));
	CHECK(f11.coefficientOf(fixture::loopWithLegs(0, 1)) == Rational(1, 2));

	// F_{2,0}: the seven-term sum.
	GraphSum f20 = abstract_free_energy(2, 0);
	CHECK(f20.size() == 7);
	CHECK(f20.coefficientOf(fixture::loneVertex(2)) == Rational(1));
	CHECK(f20.coefficientOf(fixture::theta()) == Rational(1, 12));
	CHECK(f20.coefficientOf(fixture::dumbbell()) == Rational(1, 8));
	CHECK(f20.coefficientOf(fixture::loopWithLegs(1, 0)) == Rational(1, 2));
}

TEST_CASE("operator D: Lemma instances")
{
	GraphSum lhs = op_D(abstract_free_energy(1, 1));
	CHECK(lhs == abstract_free_energy(1, 2).scaled(Rational(2)));
	CHECK(op_D(abstract_free_energy(0, 3)) == abstract_free_energy(0, 4).scaled(Rational(4)));
	CHECK(verify_lemma_D(1, 1));
	CHECK(verify_lemma_D(0, 3));
	CHECK(verify_lemma_D(2, 0));
}

TEST_CASE("the seven identities of the worked recursion example")
{
	auto F = [](int g, int n) { return abstract_free_energy(g, n); };
	auto K = [](const GraphSum &s) { return op_cut(s); };
	CHECK(K(F(0, 4)) == (F(0, 3) * F(0, 3)).scaled(Rational(9, 2)));
	CHECK(K(F(0, 5)) == (F(0, 3) * F(0, 4)).scaled(Rational(12)));
	CHECK(K(F(1, 1)) == F(0, 3).scaled(Rational(3)));
	CHECK(K(F(1, 2)) == F(0, 4).scaled(Rational(6)) + (F(1, 1) * F(0, 3)).scaled(Rational(3)));
	CHECK(K(F(1, 3)) == F(0, 5).scaled(Rational(10)) + (F(1, 1) * F(0, 4)).scaled(Rational(4)) +
	                        (F(1, 2) * F(0, 3)).scaled(Rational(6)));
	CHECK(K(F(2, 0)) == F(1, 2) + (F(1, 1) * F(1, 1)).scaled(Rational(1, 2)));
	CHECK(K(F(2, 1)) == F(1, 3).scaled(Rational(3)) + (F(1, 1) * F(1, 2)).scaled(Rational(2)));
}

TEST_CASE("Theorem 1 and Theorem 2 on small cells")
{
	for (auto [g, n] : std::vector<std::pair<int, int>>{
	         {0, 3}, {0, 4}, {0, 5}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {3, 0}}) {
		CAPTURE(g);
		CAPTURE(n);
		CHECK(verify_recursion_thm1(g, n));
		CHECK(verify_recursion_thm2(g, n));
	}
}

TEST_CASE("labelled operators: the displayed N = 2 examples")
{
	GraphSum db = GraphSum::single(labelledDumbbell());

	// K_11 cuts either loop; the two results are distinct classes.
	GraphSum k11 = op_cut_ij(db, 1, 1);
	CHECK(k11.size() == 2);
	Rational total(0);
	for (auto &[key, t] : k11.terms()) {
		CHECK(t.rep.numLegs() == 2);
		total += t.coef;
	}
	CHECK(total == Rational(2));

	// K_12 cuts the bridge; K_22 has nothing to cut.
	GraphSum k12 = op_cut_ij(db, 1, 2);
	CHECK(k12.size() == 1);
	CHECK(k12.terms().begin()->second.coef == Rational(1));
	CHECK(k12.terms().begin()->second.rep.numComponents() == 2);
	CHECK(op_cut_ij(db, 2, 2).isZero());

	// The attach operator with label 1 on the genus-1 vertex with leg 2.
	StableGraph v12 = fixture::loneVertex(1, 0);
	v12.addLeg(0, 2);
	GraphSum d1 = op_attach_i(GraphSum::single(v12), 1, 2);
	CHECK(d1.size() == 1);
	StableGraph want = fixture::loneVertex(1, 0);
	want.addLeg(0, 2);
	want.addLeg(0, 1);
	CHECK(d1.coefficientOf(want) == Rational(1));

	// Attach with insertion: genus-0 vertex, loop (2,2), leg 1.
	StableGraph loop22;
	loop22.addVertex(0);
	loop22.addEdge(0, 0, 2, 2);
	loop22.addLeg(0, 1);
	GraphSum d1loop = op_attach_i(GraphSum::single(loop22), 1, 2);
	// Vertex part (legs {1,1}) plus insertions with x-labels {1,1}, {2,2}
	// each once and {1,2} twice.
	CHECK(d1loop.size() == 4);
	StableGraph vert = loop22;
	vert.addLeg(0, 1);
	CHECK(d1loop.coefficientOf(vert) == Rational(1));
	auto insertion = [&](int p, int q) {
		StableGraph h;
		h.addVertex(0);
		h.addVertex(0);
		h.addEdge(0, 1, 2, p);
		h.addEdge(0, 1, 2, q);
		h.addLeg(0, 1);
		h.addLeg(1, 1);
		return h;
	};
	CHECK(d1loop.coefficientOf(insertion(1, 1)) == Rational(1));
	CHECK(d1loop.coefficientOf(insertion(2, 2)) == Rational(1));
	CHECK(d1loop.coefficientOf(insertion(1, 2)) == Rational(2));

	// Glue with label 1 on the genus-1 vertex with leg 2: four graphs,
	// one per choice of the new internal edge labels.
	GraphSum g1 = op_glue_i(GraphSum::single(v12), 1, 2);
	CHECK(g1.size() == 4);
	for (auto &[key, t] : g1.terms()) {
		CHECK(t.coef == Rational(1));
		CHECK(t.rep.numLegs() == 2);
		std::multiset<int> legLabels;
		for (int h : t.rep.externalLegs)
			legLabels.insert(t.rep.label(h));
		CHECK(legLabels == std::multiset<int>{1, 2});
	}
}

TEST_CASE("labelled N = 2 free energy matches the displayed coefficients")
{
	GraphSum f2 = abstract_free_energy_by_legs(2, {0, 0});
	StableGraph e11;
	e11.addVertex(1);
	e11.addVertex(1);
	e11.addEdge(0, 1, 1, 1);
	CHECK(f2.coefficientOf(e11) == Rational(1, 2));
	StableGraph e22;
	e22.addVertex(1);
	e22.addVertex(1);
	e22.addEdge(0, 1, 2, 2);
	CHECK(f2.coefficientOf(e22) == Rational(1, 2));
	StableGraph e12;
	e12.addVertex(1);
	e12.addVertex(1);
	e12.addEdge(0, 1, 1, 2);
	CHECK(f2.coefficientOf(e12) == Rational(1));
	CHECK(f2.coefficientOf(fixture::loneVertex(2)) == Rational(1));
}

TEST_CASE("labelled lemma and labelled recursion for N = 2")
{
	CHECK(verify_lemma_D_labelled(1, {1, 0}, 1));
	CHECK(verify_lemma_D_labelled(1, {1, 0}, 2));
	CHECK(verify_lemma_D_labelled(0, {2, 1}, 2));

	CHECK(verify_recursion_labelled(2, {0, 0}, 1, 1));
	CHECK(verify_recursion_labelled(2, {0, 0}, 1, 2));
	CHECK(verify_recursion_labelled(1, {1, 0}, 1, 1));
	CHECK(verify_recursion_labelled(1, {1, 1}, 1, 2));
	CHECK(verify_recursion_labelled(1, {1, 0}, 2, 1));

	// N = 1 reduces to the unlabelled theorem.
	CHECK(verify_recursion_labelled(2, {0}, 1, 1));
}

TEST_CASE("enumeration is closed under the operators")
{
	// Every graph K / D produces from an enumerated class appears in the
	// enumeration of its own cell.
	auto keysOf = [](const ClassMap &m) {
		std::set<std::string> s;
		for (auto &[k, c] : m)
			s.insert(k);
		return s;
	};
	EnumOptions disc;
	disc.connected = false;
	auto conn12 = keysOf(enumerate_stable(1, 2));
	auto disc22 = keysOf(enumerate_stable(2, 2, disc));
	auto conn21 = keysOf(enumerate_stable(2, 1));
	for (auto &[key, cls] : enumerate_stable(2, 0)) {
		GraphSum cut = op_cut(GraphSum::single(cls.rep));
		for (auto &[k, t] : cut.terms()) {
			bool inCell = t.rep.isConnected() ? conn12.count(canonicalize(t.rep).key) > 0
			                                  : disc22.count(canonicalize(t.rep).key) > 0;
			CHECK(inCell);
		}
		GraphSum d = op_D(GraphSum::single(cls.rep));
		for (auto &[k, t] : d.terms())
			CHECK(conn21.count(canonicalize(t.rep).key) > 0);
	}
}

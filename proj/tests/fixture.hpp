#pragma once

// Shared test helpers: a tiny expression parser so expected values can be
// transcribed legibly, plus an independent brute-force automorphism
// counter used as the oracle for the canonicalizer.

#include "sgqft/applications.hpp"
#include "sgqft/gaussian.hpp"
#include "sgqft/graph_sum.hpp"

#include <cctype>
#include <numeric>
#include <string>

namespace fixture {

using namespace sgqft;

// Grammar (terms joined by +/-):
//   term   := [coef] factor*
//   coef   := digits[/digits]
//   factor := atom ['^' [-]digits]
//   atom   := 'F'g'd'n | 'F'g'('a,b,...')' | 'F'g | 'k'ij | 'k'
//           | 'I'n | 'T' | 'c' | 't'n | 'lam2'
inline Poly P(const std::string &src)
{
	Poly out;
	size_t i = 0;
	auto skip = [&] {
		while (i < src.size() && (src[i] == ' ' || src[i] == '*' || src[i] == '\n' || src[i] == '\t'))
			++i;
	};
	auto number = [&]() -> long {
		size_t start = i;
		while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i])))
			++i;
		return std::stol(src.substr(start, i - start));
	};
	skip();
	bool firstTerm = true;
	while (i < src.size()) {
		int sign = 1;
		skip();
		if (i < src.size() && (src[i] == '+' || src[i] == '-')) {
			sign = (src[i] == '-') ? -1 : 1;
			++i;
		} else if (!firstTerm) {
			throw std::invalid_argument("P: expected +/- between terms near: " + src.substr(i, 12));
		}
		firstTerm = false;
		skip();
		Rational coef(sign);
		Monomial mono;
		bool sawAnything = false;
		while (i < src.size() && src[i] != '+' && src[i] != '-') {
			skip();
			if (i >= src.size() || src[i] == '+' || src[i] == '-')
				break;
			sawAnything = true;
			if (std::isdigit(static_cast<unsigned char>(src[i]))) {
				long num = number();
				long den = 1;
				if (i < src.size() && src[i] == '/') {
					++i;
					den = number();
				}
				coef *= Rational(num, den);
				skip();
				continue;
			}
			Atom a;
			if (src.compare(i, 4, "lam2") == 0) {
				i += 4;
				a = Atom::named("lambda2");
			} else if (src[i] == 'F') {
				++i;
				int g = static_cast<int>(number());
				if (i < src.size() && src[i] == 'd') {
					++i;
					a = Atom::vertex1(g, static_cast<int>(number()));
				} else if (i < src.size() && src[i] == '(') {
					++i;
					std::vector<int> nu;
					while (src[i] != ')') {
						nu.push_back(static_cast<int>(number()));
						if (src[i] == ',')
							++i;
					}
					++i;
					a = Atom::vertex(g, nu);
				} else {
					a = Atom::vertex1(g, 0);
				}
			} else if (src[i] == 'k') {
				++i;
				if (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
					int x = src[i] - '0';
					int y = src[i + 1] - '0';
					i += 2;
					a = Atom::kappa(x, y);
				} else {
					a = Atom::kappa();
				}
			} else if (src[i] == 'I') {
				++i;
				a = Atom::coordI(static_cast<int>(number()));
			} else if (src[i] == 'T') {
				++i;
				a = Atom::coordT();
			} else if (src[i] == 'c') {
				++i;
				a = Atom::coordC();
			} else if (src[i] == 't') {
				++i;
				a = Atom::coordTee(static_cast<int>(number()));
			} else {
				throw std::invalid_argument("P: bad atom near: " + src.substr(i, 12));
			}
			int e = 1;
			if (i < src.size() && src[i] == '^') {
				++i;
				int esign = 1;
				if (src[i] == '-') {
					esign = -1;
					++i;
				}
				e = esign * static_cast<int>(number());
			}
			mono.exps[a] += e;
			if (mono.exps[a] == 0)
				mono.exps.erase(a);
			skip();
		}
		if (!sawAnything)
			throw std::invalid_argument("P: empty term");
		out.add(mono, coef);
	}
	return out;
}

// Brute force over every genus-respecting vertex bijection and every
// half-edge bijection compatible with it; the independent oracle for
// canonicalize()'s |Aut|.
inline long bruteForceAut(const StableGraph &g)
{
	int n = g.numVertices();
	int H = g.numHalfEdges();
	std::vector<int> vperm(static_cast<size_t>(n));
	std::iota(vperm.begin(), vperm.end(), 0);
	std::set<std::pair<int, int>> pairSet;
	for (auto &[a, b] : g.internalPairs)
		pairSet.insert({std::min(a, b), std::max(a, b)});
	std::set<int> legSet(g.externalLegs.begin(), g.externalLegs.end());
	long count = 0;
	do {
		bool genusOk = true;
		for (int v = 0; v < n; ++v)
			if (g.vertexGenus[static_cast<size_t>(v)] !=
			    g.vertexGenus[static_cast<size_t>(vperm[static_cast<size_t>(v)])])
				genusOk = false;
		if (!genusOk)
			continue;
		std::vector<int> hperm(static_cast<size_t>(H));
		std::iota(hperm.begin(), hperm.end(), 0);
		do {
			bool ok = true;
			for (int h = 0; h < H && ok; ++h) {
				int img = hperm[static_cast<size_t>(h)];
				if (g.halfEdgeOwner[static_cast<size_t>(img)] !=
				    vperm[static_cast<size_t>(g.halfEdgeOwner[static_cast<size_t>(h)])])
					ok = false;
				if (g.label(h) != g.label(img))
					ok = false;
				if (legSet.count(h) != legSet.count(img))
					ok = false;
			}
			for (auto &[a, b] : g.internalPairs) {
				if (!ok)
					break;
				int ia = hperm[static_cast<size_t>(a)], ib = hperm[static_cast<size_t>(b)];
				if (!pairSet.count({std::min(ia, ib), std::max(ia, ib)}))
					ok = false;
			}
			if (ok)
				++count;
		} while (std::next_permutation(hperm.begin(), hperm.end()));
	} while (std::next_permutation(vperm.begin(), vperm.end()));
	return count;
}

// Handy builders for the classical reference graphs.
inline StableGraph loneVertex(int genus, int legs = 0)
{
	StableGraph g;
	g.addVertex(genus);
	for (int i = 0; i < legs; ++i)
		g.addLeg(0);
	return g;
}

inline StableGraph theta()
{
	StableGraph g;
	g.addVertex(0);
	g.addVertex(0);
	g.addEdge(0, 1);
	g.addEdge(0, 1);
	g.addEdge(0, 1);
	return g;
}

inline StableGraph dumbbell()
{
	StableGraph g;
	g.addVertex(0);
	g.addVertex(0);
	g.addEdge(0, 0);
	g.addEdge(0, 1);
	g.addEdge(1, 1);
	return g;
}

inline StableGraph loopWithLegs(int genus, int legs)
{
	StableGraph g;
	g.addVertex(genus);
	g.addEdge(0, 0);
	for (int i = 0; i < legs; ++i)
		g.addLeg(0);
	return g;
}

} // namespace fixture

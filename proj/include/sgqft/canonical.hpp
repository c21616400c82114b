#pragma once

#include "sgqft/graph.hpp"
#include "sgqft/rational.hpp"

#include <gmpxx.h>

#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace sgqft {

struct BudgetError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

// Desk-scale resource guard. `weight` caps the stability weight 2g-2+n of
// enumerations; graphs with more than 4*weight half-edges or 2*weight
// vertices are refused by the canonicalizer.
struct Budget {
	int weight = 24;

	static Budget &global()
	{
		static Budget b = [] {
			Budget init;
			if (const char *env = std::getenv("SGQFT_BUDGET"))
				init.weight = std::max(1, std::atoi(env));
			return init;
		}();
		return b;
	}

	void checkGraph(const StableGraph &g) const
	{
		if (g.numVertices() > 2 * weight || g.numHalfEdges() > 4 * weight)
			throw BudgetError("graph exceeds configured size budget");
	}
	void checkWeight(int w) const
	{
		if (w > weight)
			throw BudgetError("request exceeds configured size budget");
	}
};

namespace detail {

// Vertex-indexed multigraph view used by the canonicalizer: loops, legs
// and per-neighbor edge label multisets.
struct DenseGraph {
	int n = 0;
	std::vector<int> genus;
	std::vector<std::vector<std::pair<int, int>>> loops; // unordered label pairs, sorted
	std::vector<std::vector<int>> legs;                  // labels, sorted
	std::vector<std::map<int, std::vector<std::pair<int, int>>>> adj; // (label@v, label@w), sorted

	static DenseGraph from(const StableGraph &g)
	{
		DenseGraph d;
		d.n = g.numVertices();
		d.genus = g.vertexGenus;
		d.loops.resize(static_cast<size_t>(d.n));
		d.legs.resize(static_cast<size_t>(d.n));
		d.adj.resize(static_cast<size_t>(d.n));
		for (auto &[a, b] : g.internalPairs) {
			int v = g.halfEdgeOwner[static_cast<size_t>(a)];
			int w = g.halfEdgeOwner[static_cast<size_t>(b)];
			int la = g.label(a), lb = g.label(b);
			if (v == w) {
				d.loops[static_cast<size_t>(v)].emplace_back(std::min(la, lb), std::max(la, lb));
			} else {
				d.adj[static_cast<size_t>(v)][w].emplace_back(la, lb);
				d.adj[static_cast<size_t>(w)][v].emplace_back(lb, la);
			}
		}
		for (int h : g.externalLegs)
			d.legs[static_cast<size_t>(g.halfEdgeOwner[static_cast<size_t>(h)])].push_back(g.label(h));
		for (int v = 0; v < d.n; ++v) {
			std::sort(d.loops[static_cast<size_t>(v)].begin(), d.loops[static_cast<size_t>(v)].end());
			std::sort(d.legs[static_cast<size_t>(v)].begin(), d.legs[static_cast<size_t>(v)].end());
			for (auto &[w, pairs] : d.adj[static_cast<size_t>(v)])
				std::sort(pairs.begin(), pairs.end());
		}
		return d;
	}

	int degree(int v) const
	{
		int d = 2 * static_cast<int>(loops[static_cast<size_t>(v)].size()) +
		        static_cast<int>(legs[static_cast<size_t>(v)].size());
		for (auto &[w, pairs] : adj[static_cast<size_t>(v)])
			d += static_cast<int>(pairs.size());
		return d;
	}
};

// Iterated 1-WL style color refinement; colors are isomorphism-invariant
// and totally ordered via their defining strings.
inline std::vector<int> refineColors(const DenseGraph &d)
{
	auto encodePairs = [](const std::vector<std::pair<int, int>> &ps) {
		std::string s;
		for (auto &[a, b] : ps)
			s += std::to_string(a) + "," + std::to_string(b) + ";";
		return s;
	};
	std::vector<std::string> key(static_cast<size_t>(d.n));
	for (int v = 0; v < d.n; ++v) {
		std::string s = "g" + std::to_string(d.genus[static_cast<size_t>(v)]) + "|d" +
		                std::to_string(d.degree(v)) + "|L";
		for (int l : d.legs[static_cast<size_t>(v)])
			s += std::to_string(l) + ",";
		s += "|O" + encodePairs(d.loops[static_cast<size_t>(v)]);
		key[static_cast<size_t>(v)] = s;
	}
	std::vector<int> color(static_cast<size_t>(d.n), 0);
	int classes = 0;
	for (int round = 0; round <= d.n; ++round) {
		std::map<std::string, int> rank;
		for (auto &k : key)
			rank[k];
		int idx = 0;
		for (auto &[k, r] : rank)
			r = idx++;
		std::vector<int> next(static_cast<size_t>(d.n));
		for (int v = 0; v < d.n; ++v)
			next[static_cast<size_t>(v)] = rank[key[static_cast<size_t>(v)]];
		if (idx == classes) {
			color = next;
			break;
		}
		classes = idx;
		color = next;
		// Extend keys by the multiset of (neighbor color, edge labels).
		for (int v = 0; v < d.n; ++v) {
			std::vector<std::string> nb;
			for (auto &[w, pairs] : d.adj[static_cast<size_t>(v)])
				nb.push_back("c" + std::to_string(color[static_cast<size_t>(w)]) + "e" + encodePairs(pairs));
			std::sort(nb.begin(), nb.end());
			std::string s = "r" + std::to_string(color[static_cast<size_t>(v)]) + "#";
			for (auto &x : nb)
				s += x + "&";
			key[static_cast<size_t>(v)] = s;
		}
	}
	return color;
}

using Chunk = std::vector<int>;

struct CanonicalSearch {
	const DenseGraph &d;
	std::vector<std::vector<int>> classMembers; // vertices per ordered class
	std::vector<int> posClass;                  // class id per position
	std::vector<int> perm;                      // position -> vertex
	std::vector<char> used;
	std::vector<Chunk> best;
	size_t bestLen = 0;
	unsigned long autCount = 0;

	explicit CanonicalSearch(const DenseGraph &dense) : d(dense)
	{
		auto color = refineColors(d);
		int classes = 0;
		for (int c : color)
			classes = std::max(classes, c + 1);
		classMembers.resize(static_cast<size_t>(classes));
		for (int v = 0; v < d.n; ++v)
			classMembers[static_cast<size_t>(color[static_cast<size_t>(v)])].push_back(v);
		for (size_t c = 0; c < classMembers.size(); ++c)
			for (size_t k = 0; k < classMembers[c].size(); ++k)
				posClass.push_back(static_cast<int>(c));
		perm.assign(static_cast<size_t>(d.n), -1);
		used.assign(static_cast<size_t>(d.n), 0);
		best.resize(static_cast<size_t>(d.n));
	}

	Chunk chunkFor(int k, int v) const
	{
		Chunk c;
		c.push_back(d.genus[static_cast<size_t>(v)]);
		c.push_back(static_cast<int>(d.legs[static_cast<size_t>(v)].size()));
		for (int l : d.legs[static_cast<size_t>(v)])
			c.push_back(l);
		c.push_back(static_cast<int>(d.loops[static_cast<size_t>(v)].size()));
		for (auto &[a, b] : d.loops[static_cast<size_t>(v)]) {
			c.push_back(a);
			c.push_back(b);
		}
		for (int j = 0; j < k; ++j) {
			auto it = d.adj[static_cast<size_t>(perm[static_cast<size_t>(j)])].find(v);
			if (it == d.adj[static_cast<size_t>(perm[static_cast<size_t>(j)])].end()) {
				c.push_back(0);
				continue;
			}
			c.push_back(static_cast<int>(it->second.size()));
			for (auto &[a, b] : it->second) {
				c.push_back(a);
				c.push_back(b);
			}
		}
		return c;
	}

	void dfs(size_t k)
	{
		if (k == static_cast<size_t>(d.n)) {
			++autCount;
			return;
		}
		int cls = posClass[k];
		// Minimal extension chunk over the eligible vertices.
		std::vector<std::pair<Chunk, int>> cands;
		for (int v : classMembers[static_cast<size_t>(cls)]) {
			if (used[static_cast<size_t>(v)])
				continue;
			cands.emplace_back(chunkFor(static_cast<int>(k), v), v);
		}
		const Chunk *minChunk = &cands.front().first;
		for (auto &[c, v] : cands)
			if (c < *minChunk)
				minChunk = &c;
		if (k < bestLen) {
			if (*minChunk > best[k])
				return; // cannot match the best prefix
			if (*minChunk < best[k]) {
				best[k] = *minChunk;
				bestLen = k + 1;
				autCount = 0;
			}
		} else {
			best[k] = *minChunk;
			bestLen = k + 1;
		}
		for (auto &[c, v] : cands) {
			if (!(c == best[k]))
				continue;
			used[static_cast<size_t>(v)] = 1;
			perm[static_cast<size_t>(k)] = v;
			dfs(k + 1);
			used[static_cast<size_t>(v)] = 0;
			perm[static_cast<size_t>(k)] = -1;
		}
	}
};

} // namespace detail

struct CanonicalResult {
	std::string key;        // bytes identifying the isomorphism class
	mpz_class aut;          // |Aut| at the half-edge level
	StableGraph canonical;  // deterministic representative
};

// Canonicalize a (possibly disconnected, possibly labelled) stable graph.
//
// Automorphisms act on half-edges: they induce a genus-preserving vertex
// bijection and must preserve the pairing, the leg set and every label.
// |Aut| factors as (vertex-level automorphisms) x (half-edge bijections
// over the identity): m parallel edges give m!, m identical loops give
// 2^m m! when the two loop labels agree (m! otherwise), and legs of equal
// label at one vertex permute freely.
inline CanonicalResult canonicalize(const StableGraph &g, const Budget &budget = Budget::global())
{
	budget.checkGraph(g);
	g.validate();
	CanonicalResult res;
	if (g.numVertices() == 0) {
		res.key = "()";
		res.aut = 1;
		return res;
	}
	auto dense = detail::DenseGraph::from(g);
	detail::CanonicalSearch search(dense);
	search.dfs(0);

	// Rebuild the canonical representative from the winning chunks and
	// serialize them as the key.
	std::string key;
	StableGraph canon;
	std::vector<std::vector<int>> chunkEdges; // decode pass below
	for (size_t k = 0; k < search.best.size(); ++k) {
		const auto &c = search.best[k];
		size_t p = 0;
		int gv = c[p++];
		canon.addVertex(gv);
		int nlegs = c[p++];
		std::vector<int> legLabels(c.begin() + static_cast<long>(p), c.begin() + static_cast<long>(p + static_cast<size_t>(nlegs)));
		p += static_cast<size_t>(nlegs);
		int nloops = c[p++];
		std::vector<std::pair<int, int>> loopPairs;
		for (int t = 0; t < nloops; ++t) {
			int a = c[p++], b = c[p++];
			loopPairs.emplace_back(a, b);
		}
		for (auto &[a, b] : loopPairs) {
			int h1 = canon.addHalfEdge(static_cast<int>(k), a);
			int h2 = canon.addHalfEdge(static_cast<int>(k), b);
			canon.internalPairs.emplace_back(h1, h2);
		}
		for (int j = 0; static_cast<size_t>(j) < k; ++j) {
			int cnt = c[p++];
			for (int t = 0; t < cnt; ++t) {
				int a = c[p++], b = c[p++];
				canon.addEdge(j, static_cast<int>(k), a, b);
			}
		}
		for (int l : legLabels)
			canon.addLeg(static_cast<int>(k), l);
		key += "[";
		for (int x : c)
			key += std::to_string(x) + ".";
		key += "]";
	}
	res.key = std::move(key);
	res.canonical = std::move(canon);

	// Half-edge factor over the identity vertex map.
	mpz_class factor = 1;
	auto factorial = [](size_t m) {
		mpz_class f;
		mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m));
		return f;
	};
	for (int v = 0; v < dense.n; ++v) {
		// Loop classes.
		std::map<std::pair<int, int>, size_t> loopMult;
		for (auto &lp : dense.loops[static_cast<size_t>(v)])
			++loopMult[lp];
		for (auto &[lp, m] : loopMult) {
			factor *= factorial(m);
			if (lp.first == lp.second) {
				mpz_class two;
				mpz_ui_pow_ui(two.get_mpz_t(), 2, static_cast<unsigned long>(m));
				factor *= two;
			}
		}
		// Leg classes.
		std::map<int, size_t> legMult;
		for (int l : dense.legs[static_cast<size_t>(v)])
			++legMult[l];
		for (auto &[l, m] : legMult)
			factor *= factorial(m);
		// Parallel edge classes, counted once per unordered vertex pair.
		for (auto &[w, pairs] : dense.adj[static_cast<size_t>(v)]) {
			if (w < v)
				continue;
			std::map<std::pair<int, int>, size_t> mult;
			for (auto &pr : pairs)
				++mult[pr];
			for (auto &[pr, m] : mult)
				factor *= factorial(m);
		}
	}
	res.aut = factor * mpz_class(static_cast<unsigned long>(search.autCount));
	return res;
}

inline Rational invAut(const CanonicalResult &c)
{
	return Rational(mpq_class(mpz_class(1), c.aut));
}

} // namespace sgqft

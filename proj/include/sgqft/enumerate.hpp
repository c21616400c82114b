#pragma once

#include "sgqft/canonical.hpp"
#include "sgqft/graph.hpp"

#include <functional>
#include <tuple>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace sgqft {

struct EnumOptions {
	int N = 1;                 // label alphabet size; 1 = unlabelled calculus
	bool genusZeroOnly = false;
	bool connected = true;
};

// One isomorphism class: canonical representative and |Aut|.
struct GraphClass {
	StableGraph rep;
	mpz_class aut;
};

using ClassMap = std::map<std::string, GraphClass>; // keyed by CanonicalKey

namespace detail {

// All multisets of vertex types (genus, valence) with total stability
// weight W = sum(2g_v - 2 + d_v); types emitted in non-decreasing order.
inline void vertexMultisets(int W, bool genusZeroOnly,
                            const std::function<void(const std::vector<std::pair<int, int>> &)> &sink)
{
	std::vector<std::pair<int, int>> cur;
	std::function<void(int, std::pair<int, int>)> rec = [&](int rem, std::pair<int, int> minType) {
		if (rem == 0) {
			sink(cur);
			return;
		}
		for (int w = 1; w <= rem; ++w) {
			int gMax = genusZeroOnly ? 0 : (w + 2) / 2;
			for (int gv = 0; gv <= gMax; ++gv) {
				int dv = w + 2 - 2 * gv;
				if (dv < 0)
					continue;
				if (gv == 0 && dv < 3)
					continue;
				if (gv == 1 && dv < 1)
					continue;
				std::pair<int, int> type{w, gv};
				if (type < minType)
					continue;
				cur.emplace_back(gv, dv);
				rec(rem - w, type);
				cur.pop_back();
			}
		}
	};
	rec(W, {0, 0});
}

// Distribute n legs over vertices, at most cap[v] at vertex v.
inline void legDistributions(const std::vector<int> &cap, int n,
                             const std::function<void(const std::vector<int> &)> &sink)
{
	std::vector<int> cur(cap.size(), 0);
	std::function<void(size_t, int)> rec = [&](size_t v, int rem) {
		if (v == cap.size()) {
			if (rem == 0)
				sink(cur);
			return;
		}
		int hi = std::min(cap[v], rem);
		for (int l = 0; l <= hi; ++l) {
			cur[v] = l;
			rec(v + 1, rem - l);
		}
		cur[v] = 0;
	};
	rec(0, n);
}

// All loop/edge matrices realizing the internal degree sequence `deg`.
// loops[v] and upper-triangular entries a[v][w] are chosen recursively.
inline void adjacencyStructures(
    const std::vector<int> &deg,
    const std::function<void(const std::vector<int> &, const std::vector<std::vector<int>> &)> &sink)
{
	size_t n = deg.size();
	std::vector<int> rem = deg;
	std::vector<int> loops(n, 0);
	std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
	std::function<void(size_t)> startVertex;
	std::function<void(size_t, size_t)> fillRow = [&](size_t v, size_t w) {
		if (w == n) {
			if (rem[v] == 0)
				startVertex(v + 1);
			return;
		}
		int hi = std::min(rem[v], rem[w]);
		for (int m = 0; m <= hi; ++m) {
			a[v][w] = m;
			rem[v] -= m;
			rem[w] -= m;
			fillRow(v, w + 1);
			rem[v] += m;
			rem[w] += m;
			a[v][w] = 0;
		}
	};
	startVertex = [&](size_t v) {
		if (v == n) {
			sink(loops, a);
			return;
		}
		for (int L = 0; 2 * L <= rem[v]; ++L) {
			loops[v] = L;
			rem[v] -= 2 * L;
			fillRow(v, v + 1);
			rem[v] += 2 * L;
			loops[v] = 0;
		}
	};
	startVertex(0);
}

inline bool matrixConnected(const std::vector<std::vector<int>> &a)
{
	size_t n = a.size();
	if (n <= 1)
		return true;
	std::vector<char> vis(n, 0);
	std::vector<size_t> stack{0};
	vis[0] = 1;
	size_t seen = 1;
	while (!stack.empty()) {
		size_t v = stack.back();
		stack.pop_back();
		for (size_t w = 0; w < n; ++w) {
			if (vis[w] || (a[v][w] == 0 && a[w][v] == 0))
				continue;
			vis[w] = 1;
			++seen;
			stack.push_back(w);
		}
	}
	return seen == n;
}

// Cheap isomorph rejection: a structure is kept only if no transposition
// of adjacent vertices of equal (genus, valence) type makes the encoding
// (legs, loops, matrix) lexicographically smaller. Every orbit's global
// lexicographic minimum survives this filter.
inline bool locallyMinimal(const std::vector<std::pair<int, int>> &types,
                           const std::vector<int> &legs, const std::vector<int> &loops,
                           const std::vector<std::vector<int>> &a)
{
	size_t n = types.size();
	// Symmetrize the upper-triangular input once.
	std::vector<std::vector<int>> sym = a;
	for (size_t v = 0; v < n; ++v)
		for (size_t w = v + 1; w < n; ++w)
			sym[w][v] = sym[v][w];
	auto swappedLess = [&](size_t v) {
		size_t u = v + 1;
		// Compare (legs, loops, upper matrix) of the structure with v,u
		// transposed against the original, lexicographically.
		if (legs[v] != legs[u])
			return legs[u] < legs[v];
		if (loops[v] != loops[u])
			return loops[u] < loops[v];
		std::vector<std::vector<int>> a2 = sym;
		std::swap(a2[v], a2[u]);
		for (size_t w = 0; w < n; ++w)
			std::swap(a2[w][v], a2[w][u]);
		for (size_t x = 0; x < n; ++x)
			for (size_t y = x + 1; y < n; ++y)
				if (a2[x][y] != sym[x][y])
					return a2[x][y] < sym[x][y];
		return false;
	};
	for (size_t v = 0; v + 1 < n; ++v) {
		if (types[v] != types[v + 1])
			continue;
		if (swappedLess(v))
			return false;
	}
	return true;
}

inline StableGraph buildGraph(const std::vector<std::pair<int, int>> &types,
                              const std::vector<int> &legs, const std::vector<int> &loops,
                              const std::vector<std::vector<int>> &a)
{
	StableGraph g;
	for (auto &[gv, dv] : types)
		g.addVertex(gv);
	size_t n = types.size();
	for (size_t v = 0; v < n; ++v)
		for (int t = 0; t < loops[v]; ++t)
			g.addEdge(static_cast<int>(v), static_cast<int>(v));
	for (size_t v = 0; v < n; ++v)
		for (size_t w = v + 1; w < n; ++w)
			for (int t = 0; t < a[v][w]; ++t)
				g.addEdge(static_cast<int>(v), static_cast<int>(w));
	for (size_t v = 0; v < n; ++v)
		for (int t = 0; t < legs[v]; ++t)
			g.addLeg(static_cast<int>(v));
	return g;
}

inline void insertClass(ClassMap &out, const StableGraph &g, const Budget &budget)
{
	auto c = canonicalize(g, budget);
	out.emplace(std::move(c.key), GraphClass{std::move(c.canonical), std::move(c.aut)});
}

// All ways to write each half-edge label; legs realize exactly the given
// label multiset, internal half-edges range over 1..N.
inline void labelAssignments(const StableGraph &unlabelled, const std::vector<int> &legCounts, int N,
                             ClassMap &out, const Budget &budget)
{
	StableGraph g = unlabelled;
	g.labels.assign(g.halfEdgeOwner.size(), 0);
	// Leg slots.
	std::vector<int> legSlots = g.externalLegs;
	std::vector<int> counts = legCounts;
	std::vector<int> internals;
	for (auto &[x, y] : g.internalPairs) {
		internals.push_back(x);
		internals.push_back(y);
	}
	std::function<void(size_t)> fillInternal = [&](size_t idx) {
		if (idx == internals.size()) {
			insertClass(out, g, budget);
			return;
		}
		for (int l = 1; l <= N; ++l) {
			g.labels[static_cast<size_t>(internals[idx])] = l;
			fillInternal(idx + 1);
		}
	};
	std::function<void(size_t)> fillLegs = [&](size_t idx) {
		if (idx == legSlots.size()) {
			fillInternal(0);
			return;
		}
		for (int l = 1; l <= N; ++l) {
			if (counts[static_cast<size_t>(l - 1)] == 0)
				continue;
			--counts[static_cast<size_t>(l - 1)];
			g.labels[static_cast<size_t>(legSlots[idx])] = l;
			fillLegs(idx + 1);
			++counts[static_cast<size_t>(l - 1)];
		}
	};
	fillLegs(0);
}

} // namespace detail

// Connected unlabelled enumeration of G^c_{g,n} (one canonical
// representative per isomorphism class, with |Aut|). Results are
// memoized per (g, n, genusZeroOnly, budget weight).
inline ClassMap enumerate_connected_unlabelled(int g, int n, bool genusZeroOnly,
                                               const Budget &budget = Budget::global())
{
	if (2 * g - 2 + n <= 0)
		throw std::domain_error("enumerate: unstable (g,n)");
	budget.checkWeight(2 * g - 2 + n);
	static std::mutex cacheMutex;
	static std::map<std::tuple<int, int, bool, int>, ClassMap> cache;
	auto cacheKey = std::make_tuple(g, n, genusZeroOnly, budget.weight);
	{
		std::lock_guard<std::mutex> lock(cacheMutex);
		if (auto it = cache.find(cacheKey); it != cache.end())
			return it->second;
	}
	ClassMap out;
	int W = 2 * g - 2 + n;
	detail::vertexMultisets(W, genusZeroOnly, [&](const std::vector<std::pair<int, int>> &types) {
		int k = static_cast<int>(types.size());
		int sumG = 0, sumD = 0;
		for (auto &[gv, dv] : types) {
			sumG += gv;
			sumD += dv;
		}
		int E = g - 1 + k - sumG;
		if (E < 0 || sumD != 2 * E + n)
			return;
		std::vector<int> caps;
		for (auto &[gv, dv] : types)
			caps.push_back(dv);
		detail::legDistributions(caps, n, [&](const std::vector<int> &legs) {
			std::vector<int> deg(caps.size());
			for (size_t v = 0; v < caps.size(); ++v)
				deg[v] = caps[v] - legs[v];
			detail::adjacencyStructures(deg, [&](const std::vector<int> &loops,
			                                     const std::vector<std::vector<int>> &a) {
				// Stability of every vertex is already encoded in the types;
				// only connectivity can fail (loops never connect anything).
				if (!detail::matrixConnected(a))
					return;
				if (!detail::locallyMinimal(types, legs, loops, a))
					return;
				detail::insertClass(out, detail::buildGraph(types, legs, loops, a), budget);
			});
		});
	});
	std::lock_guard<std::mutex> lock(cacheMutex);
	cache[cacheKey] = out;
	return out;
}

// Public enumeration per the module contract. With N >= 2 every graph
// carries half-edge labels in 1..N and the legs range over all label
// multisets of size n.
inline ClassMap enumerate_stable(int g, int n, const EnumOptions &opts = {},
                                 const Budget &budget = Budget::global())
{
	if (2 * g - 2 + n <= 0)
		throw std::domain_error("enumerate_stable: unstable (g,n)");
	if (opts.N < 1)
		throw std::domain_error("enumerate_stable: N must be >= 1");
	if (!opts.connected) {
		// Disconnected graphs are multisets of connected classes with
		// additive genus and legs.
		ClassMap out;
		std::vector<std::pair<std::pair<int, int>, GraphClass>> comps;
		for (int gc = 0; gc <= g; ++gc)
			for (int nc = 0; nc <= n; ++nc) {
				if (2 * gc - 2 + nc <= 0 || 2 * gc - 2 + nc > 2 * g - 2 + n)
					continue;
				EnumOptions copts = opts;
				copts.connected = true;
				for (auto &[key, cls] : enumerate_stable(gc, nc, copts, budget))
					comps.push_back({{gc, nc}, cls});
			}
		std::function<void(size_t, int, int, const StableGraph &)> rec =
		    [&](size_t idx, int gLeft, int nLeft, const StableGraph &acc) {
			    if (gLeft == 0 && nLeft == 0 && acc.numVertices() > 0) {
				    detail::insertClass(out, acc, budget);
				    return;
			    }
			    if (idx == comps.size())
				    return;
			    // Skip component idx entirely.
			    rec(idx + 1, gLeft, nLeft, acc);
			    // Or use one more copy of it.
			    auto &[cell, cls] = comps[idx];
			    if (cell.first <= gLeft && cell.second <= nLeft)
				    rec(idx, gLeft - cell.first, nLeft - cell.second, disjointUnion(acc, cls.rep));
		    };
		rec(0, g, n, StableGraph{});
		return out;
	}
	ClassMap unl = enumerate_connected_unlabelled(g, n, opts.genusZeroOnly, budget);
	if (opts.N == 1)
		return unl;
	ClassMap out;
	// All leg label multisets of size n over 1..N.
	std::vector<int> counts(static_cast<size_t>(opts.N), 0);
	std::function<void(int, int)> chooseCounts = [&](int slot, int rem) {
		if (slot == opts.N) {
			if (rem != 0)
				return;
			for (auto &[key, cls] : unl)
				detail::labelAssignments(cls.rep, counts, opts.N, out, budget);
			return;
		}
		for (int c = 0; c <= rem; ++c) {
			counts[static_cast<size_t>(slot)] = c;
			chooseCounts(slot + 1, rem - c);
		}
		counts[static_cast<size_t>(slot)] = 0;
	};
	chooseCounts(0, n);
	return out;
}

// Labelled enumeration with exactly legCounts[j-1] legs labelled j.
inline ClassMap enumerate_labelled_by_legs(int g, const std::vector<int> &legCounts,
                                           const Budget &budget = Budget::global())
{
	int n = 0;
	for (int l : legCounts)
		n += l;
	if (2 * g - 2 + n <= 0)
		throw std::domain_error("enumerate_labelled_by_legs: unstable cell");
	int N = static_cast<int>(legCounts.size());
	ClassMap unl = enumerate_connected_unlabelled(g, n, false, budget);
	if (N == 1)
		return unl; // the N = 1 labelled calculus is the unlabelled one
	ClassMap out;
	for (auto &[key, cls] : unl)
		detail::labelAssignments(cls.rep, legCounts, N, out, budget);
	return out;
}

// Identity behind forgetting leg markings: for every unmarked class, the
// marked classes over it satisfy (1/k!) sum 1/|Aut| = 1/|Aut(unmarked)|.
inline bool verify_marking_identity(int g, int k, const Budget &budget = Budget::global())
{
	if (2 * g - 2 + k <= 0)
		throw std::domain_error("verify_marking_identity: unstable (g,k)");
	ClassMap unl = enumerate_connected_unlabelled(g, k, false, budget);
	for (auto &[key, cls] : unl) {
		// Mark the k legs with distinct labels 1..k in every way.
		StableGraph m = cls.rep;
		m.labels.assign(m.halfEdgeOwner.size(), 0);
		std::vector<int> perm(static_cast<size_t>(k));
		for (int i = 0; i < k; ++i)
			perm[static_cast<size_t>(i)] = i + 1;
		std::map<std::string, mpz_class> marked;
		std::sort(perm.begin(), perm.end());
		do {
			for (int i = 0; i < k; ++i)
				m.labels[static_cast<size_t>(m.externalLegs[static_cast<size_t>(i)])] =
				    perm[static_cast<size_t>(i)];
			auto c = canonicalize(m, budget);
			marked.emplace(std::move(c.key), std::move(c.aut));
		} while (std::next_permutation(perm.begin(), perm.end()));
		Rational lhs(0);
		for (auto &[mk, aut] : marked)
			lhs += Rational(mpq_class(mpz_class(1), aut));
		lhs /= Rational::factorial(static_cast<unsigned long>(k));
		if (lhs != Rational(mpq_class(mpz_class(1), cls.aut)))
			return false;
	}
	return true;
}

} // namespace sgqft

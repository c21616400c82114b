#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sgqft {

// A stable graph: genus-labelled vertices carrying half-edges, which are
// either paired into internal edges or free as external legs. Half-edge
// labels (0 = unlabelled, 1..N otherwise) implement both the labelled
// calculus of dimension N and distinct leg markings.
struct StableGraph {
	std::vector<int> vertexGenus;
	std::vector<int> halfEdgeOwner;               // half-edge id -> vertex index
	std::vector<std::pair<int, int>> internalPairs; // unordered pairs of half-edge ids
	std::vector<int> externalLegs;                // half-edge ids
	std::vector<int> labels;                      // per half-edge; empty means all 0

	int numVertices() const { return static_cast<int>(vertexGenus.size()); }
	int numHalfEdges() const { return static_cast<int>(halfEdgeOwner.size()); }
	int numEdges() const { return static_cast<int>(internalPairs.size()); }
	int numLegs() const { return static_cast<int>(externalLegs.size()); }

	int label(int h) const { return labels.empty() ? 0 : labels[static_cast<size_t>(h)]; }

	void setLabel(int h, int l)
	{
		if (labels.empty())
			labels.assign(halfEdgeOwner.size(), 0);
		labels[static_cast<size_t>(h)] = l;
	}

	bool isLabelled() const
	{
		return std::any_of(labels.begin(), labels.end(), [](int l) { return l != 0; });
	}

	int addVertex(int g)
	{
		vertexGenus.push_back(g);
		return numVertices() - 1;
	}

	int addHalfEdge(int vertex, int lbl = 0)
	{
		halfEdgeOwner.push_back(vertex);
		if (!labels.empty() || lbl != 0) {
			if (labels.empty())
				labels.assign(halfEdgeOwner.size() - 1, 0);
			labels.push_back(lbl);
		}
		return numHalfEdges() - 1;
	}

	void addEdge(int v, int w, int lv = 0, int lw = 0)
	{
		int a = addHalfEdge(v, lv);
		int b = addHalfEdge(w, lw);
		internalPairs.emplace_back(a, b);
	}

	void addLeg(int v, int lbl = 0) { externalLegs.push_back(addHalfEdge(v, lbl)); }

	int valence(int v) const
	{
		int d = 0;
		for (int owner : halfEdgeOwner)
			d += (owner == v);
		return d;
	}

	void validate() const
	{
		std::vector<int> seen(halfEdgeOwner.size(), 0);
		for (auto &[a, b] : internalPairs) {
			if (a == b)
				throw std::invalid_argument("StableGraph: half-edge paired with itself");
			++seen[static_cast<size_t>(a)];
			++seen[static_cast<size_t>(b)];
		}
		for (int h : externalLegs)
			++seen[static_cast<size_t>(h)];
		for (int s : seen)
			if (s != 1)
				throw std::invalid_argument("StableGraph: pairs and legs must partition half-edges");
		for (int owner : halfEdgeOwner)
			if (owner < 0 || owner >= numVertices())
				throw std::invalid_argument("StableGraph: half-edge owner out of range");
		if (!labels.empty() && labels.size() != halfEdgeOwner.size())
			throw std::invalid_argument("StableGraph: label vector size mismatch");
	}

	int numComponents() const
	{
		std::vector<int> parent(vertexGenus.size());
		std::iota(parent.begin(), parent.end(), 0);
		auto find = [&](int x) {
			while (parent[static_cast<size_t>(x)] != x)
				x = parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
			return x;
		};
		for (auto &[a, b] : internalPairs) {
			int ra = find(halfEdgeOwner[static_cast<size_t>(a)]);
			int rb = find(halfEdgeOwner[static_cast<size_t>(b)]);
			if (ra != rb)
				parent[static_cast<size_t>(ra)] = rb;
		}
		int c = 0;
		for (size_t v = 0; v < parent.size(); ++v)
			c += (find(static_cast<int>(v)) == static_cast<int>(v));
		return c;
	}

	bool isConnected() const { return numVertices() <= 1 || numComponents() == 1; }
};

// genus = |E| - |V| + #components + sum of vertex genera.
inline int genus(const StableGraph &g)
{
	int s = 0;
	for (int gv : g.vertexGenus)
		s += gv;
	return g.numEdges() - g.numVertices() + g.numComponents() + s;
}

// Valence >= 3 at genus-0 vertices, >= 1 at genus-1 vertices.
inline bool is_stable(const StableGraph &g)
{
	std::vector<int> val(g.vertexGenus.size(), 0);
	for (int owner : g.halfEdgeOwner)
		++val[static_cast<size_t>(owner)];
	for (size_t v = 0; v < g.vertexGenus.size(); ++v) {
		if (g.vertexGenus[v] == 0 && val[v] < 3)
			return false;
		if (g.vertexGenus[v] == 1 && val[v] < 1)
			return false;
	}
	return true;
}

inline StableGraph disjointUnion(const StableGraph &a, const StableGraph &b)
{
	StableGraph u = a;
	int voff = a.numVertices();
	int hoff = a.numHalfEdges();
	u.vertexGenus.insert(u.vertexGenus.end(), b.vertexGenus.begin(), b.vertexGenus.end());
	for (int owner : b.halfEdgeOwner)
		u.halfEdgeOwner.push_back(owner + voff);
	for (auto &[x, y] : b.internalPairs)
		u.internalPairs.emplace_back(x + hoff, y + hoff);
	for (int h : b.externalLegs)
		u.externalLegs.push_back(h + hoff);
	if (!u.labels.empty() || !b.labels.empty()) {
		if (u.labels.empty())
			u.labels.assign(static_cast<size_t>(hoff), 0);
		for (int h = 0; h < b.numHalfEdges(); ++h)
			u.labels.push_back(b.label(h));
	}
	return u;
}

} // namespace sgqft

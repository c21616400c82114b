#pragma once

#include "sgqft/graph_sum.hpp"
#include "sgqft/rationalfn.hpp"

#include <json.hpp>

namespace sgqft {

using nlohmann::json;

inline json graph_to_json(const StableGraph &g)
{
	json j;
	j["vertices"] = json::array();
	for (int gv : g.vertexGenus)
		j["vertices"].push_back(json{{"genus", gv}});
	j["edges"] = json::array();
	json edgeLabels = json::array();
	for (auto &[a, b] : g.internalPairs) {
		j["edges"].push_back(json::array(
		    {g.halfEdgeOwner[static_cast<size_t>(a)], g.halfEdgeOwner[static_cast<size_t>(b)]}));
		edgeLabels.push_back(json::array({g.label(a), g.label(b)}));
	}
	j["legs"] = json::array();
	json legLabels = json::array();
	for (int h : g.externalLegs) {
		j["legs"].push_back(g.halfEdgeOwner[static_cast<size_t>(h)]);
		legLabels.push_back(g.label(h));
	}
	if (g.isLabelled()) {
		j["edgeLabels"] = edgeLabels;
		j["legLabels"] = legLabels;
	}
	return j;
}

inline StableGraph graph_from_json(const json &j)
{
	StableGraph g;
	for (auto &v : j.at("vertices"))
		g.addVertex(v.at("genus").get<int>());
	bool labelled = j.contains("edgeLabels") || j.contains("legLabels");
	size_t ei = 0;
	for (auto &e : j.at("edges")) {
		int la = 0, lb = 0;
		if (j.contains("edgeLabels")) {
			la = j["edgeLabels"].at(ei).at(0).get<int>();
			lb = j["edgeLabels"].at(ei).at(1).get<int>();
		}
		g.addEdge(e.at(0).get<int>(), e.at(1).get<int>(), la, lb);
		++ei;
	}
	size_t li = 0;
	for (auto &v : j.at("legs")) {
		int l = 0;
		if (j.contains("legLabels"))
			l = j["legLabels"].at(li).get<int>();
		g.addLeg(v.get<int>(), l);
		++li;
	}
	(void)labelled;
	g.validate();
	return g;
}

inline json graph_sum_to_json(const GraphSum &s)
{
	json arr = json::array();
	for (auto &[key, t] : s.terms())
		arr.push_back(json{{"coef", t.coef.str()}, {"graph", graph_to_json(t.rep)}});
	return arr;
}

inline json poly_to_json(const Poly &p)
{
	json terms = json::array();
	for (auto &[m, c] : p.terms()) {
		json atoms = json::object();
		for (auto &[a, e] : m.exps)
			atoms[a.str()] = e;
		terms.push_back(json{{"coef", c.str()}, {"atoms", atoms}});
	}
	return json{{"terms", terms}};
}

inline json rationalfn_to_json(const RationalFn &f)
{
	if (f.isPolynomial())
		return poly_to_json(f.num());
	return json{{"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}};
}

} // namespace sgqft

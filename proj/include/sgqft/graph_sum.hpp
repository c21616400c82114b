#pragma once

#include "sgqft/enumerate.hpp"

#include <optional>

namespace sgqft {

// Finite formal Q-linear combination of stable-graph isomorphism classes.
// Graphs may be disconnected; the product is disjoint union.
class GraphSum {
  public:
	struct Term {
		StableGraph rep; // canonical representative
		Rational coef;
	};

	GraphSum() = default;

	static GraphSum single(const StableGraph &g, const Rational &c = Rational(1),
	                       const Budget &budget = Budget::global())
	{
		GraphSum s;
		s.add(g, c, budget);
		return s;
	}

	void add(const StableGraph &g, const Rational &c, const Budget &budget = Budget::global())
	{
		if (c.isZero())
			return;
		auto cr = canonicalize(g, budget);
		auto [it, fresh] = terms_.emplace(std::move(cr.key), Term{std::move(cr.canonical), c});
		if (!fresh) {
			it->second.coef += c;
			if (it->second.coef.isZero())
				terms_.erase(it);
		}
	}

	void addCanonical(const std::string &key, const StableGraph &rep, const Rational &c)
	{
		if (c.isZero())
			return;
		auto [it, fresh] = terms_.emplace(key, Term{rep, c});
		if (!fresh) {
			it->second.coef += c;
			if (it->second.coef.isZero())
				terms_.erase(it);
		}
	}

	const std::map<std::string, Term> &terms() const { return terms_; }
	bool isZero() const { return terms_.empty(); }
	size_t size() const { return terms_.size(); }

	Rational coefficientOf(const StableGraph &g) const
	{
		auto key = canonicalize(g).key;
		auto it = terms_.find(key);
		return it == terms_.end() ? Rational(0) : it->second.coef;
	}

	GraphSum scaled(const Rational &s) const
	{
		GraphSum r;
		if (s.isZero())
			return r;
		for (auto &[k, t] : terms_)
			r.terms_.emplace(k, Term{t.rep, t.coef * s});
		return r;
	}

	GraphSum &operator+=(const GraphSum &o)
	{
		for (auto &[k, t] : o.terms_)
			addCanonical(k, t.rep, t.coef);
		return *this;
	}
	GraphSum &operator-=(const GraphSum &o)
	{
		for (auto &[k, t] : o.terms_)
			addCanonical(k, t.rep, -t.coef);
		return *this;
	}
	friend GraphSum operator+(GraphSum a, const GraphSum &b) { return a += b; }
	friend GraphSum operator-(GraphSum a, const GraphSum &b) { return a -= b; }

	// Bilinear product: disjoint union of representatives, re-canonicalized.
	friend GraphSum operator*(const GraphSum &a, const GraphSum &b)
	{
		GraphSum r;
		for (auto &[ka, ta] : a.terms_)
			for (auto &[kb, tb] : b.terms_)
				r.add(disjointUnion(ta.rep, tb.rep), ta.coef * tb.coef);
		return r;
	}

	friend bool operator==(const GraphSum &a, const GraphSum &b)
	{
		if (a.terms_.size() != b.terms_.size())
			return false;
		auto ia = a.terms_.begin();
		for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib)
			if (ia->first != ib->first || ia->second.coef != ib->second.coef)
				return false;
		return true;
	}
	friend bool operator!=(const GraphSum &a, const GraphSum &b) { return !(a == b); }

  private:
	std::map<std::string, Term> terms_;
};

namespace ops {

// Edge-cutting operator K: cut each internal edge (per parallel copy),
// freeing its two half-edges as legs with their labels kept.
inline GraphSum cutAll(const StableGraph &g, std::optional<std::pair<int, int>> labelFilter,
                       const Budget &budget)
{
	GraphSum out;
	for (size_t e = 0; e < g.internalPairs.size(); ++e) {
		if (labelFilter) {
			auto [a, b] = g.internalPairs[e];
			// Unlabelled half-edges count as label 1 (the N = 1 reduction).
			int la = std::max(g.label(a), 1), lb = std::max(g.label(b), 1);
			auto want = *labelFilter;
			if (!((la == want.first && lb == want.second) || (la == want.second && lb == want.first)))
				continue;
		}
		StableGraph h = g;
		auto [a, b] = h.internalPairs[e];
		h.internalPairs.erase(h.internalPairs.begin() + static_cast<long>(e));
		h.externalLegs.push_back(a);
		h.externalLegs.push_back(b);
		out.add(h, Rational(1), budget);
	}
	return out;
}

// Vertex part of the attach operator: one new leg (labelled `lbl`) per vertex.
inline GraphSum attachVertexPart(const StableGraph &g, int lbl, const Budget &budget)
{
	GraphSum out;
	for (int v = 0; v < g.numVertices(); ++v) {
		StableGraph h = g;
		h.addLeg(v, lbl);
		out.add(h, Rational(1), budget);
	}
	return out;
}

// Edge part of the attach operator: break each internal edge, insert a
// trivalent genus-0 vertex carrying the new leg; for N >= 2 the two new
// half-edge labels range over 1..N.
inline GraphSum attachEdgePart(const StableGraph &g, int lbl, int N, const Budget &budget)
{
	GraphSum out;
	int lim = (N >= 2) ? N : 1; // one unlabelled insertion when N = 1
	for (size_t e = 0; e < g.internalPairs.size(); ++e)
		for (int p = 1; p <= lim; ++p)
			for (int q = 1; q <= lim; ++q) {
				StableGraph h = g;
				auto [a, b] = h.internalPairs[e];
				h.internalPairs.erase(h.internalPairs.begin() + static_cast<long>(e));
				int x = h.addVertex(0);
				int lp = (N >= 2) ? p : 0;
				int lq = (N >= 2) ? q : 0;
				int x1 = h.addHalfEdge(x, lp);
				int x2 = h.addHalfEdge(x, lq);
				h.internalPairs.emplace_back(a, x1);
				h.internalPairs.emplace_back(b, x2);
				h.addLeg(x, lbl);
				out.add(h, Rational(1), budget);
			}
	return out;
}

// Glue operator: replace each external leg by an internal edge to a new
// trivalent genus-0 vertex with two legs; the old leg label moves to the
// new vertex, the other new leg is labelled `lbl`, and for N >= 2 the new
// internal edge labels range over 1..N at both ends.
inline GraphSum glueLegs(const StableGraph &g, int lbl, int N, const Budget &budget)
{
	GraphSum out;
	int lim = (N >= 2) ? N : 1;
	for (size_t li = 0; li < g.externalLegs.size(); ++li)
		for (int p = 1; p <= lim; ++p)
			for (int q = 1; q <= lim; ++q) {
				StableGraph h = g;
				int leg = h.externalLegs[li];
				int oldLabel = h.label(leg);
				h.externalLegs.erase(h.externalLegs.begin() + static_cast<long>(li));
				int x = h.addVertex(0);
				if (N >= 2)
					h.setLabel(leg, p);
				int x1 = h.addHalfEdge(x, (N >= 2) ? q : 0);
				h.internalPairs.emplace_back(leg, x1);
				h.addLeg(x, oldLabel);
				h.addLeg(x, lbl);
				out.add(h, Rational(1), budget);
			}
	return out;
}

} // namespace ops

inline GraphSum applyLinear(const GraphSum &s,
                            const std::function<GraphSum(const StableGraph &)> &perGraph)
{
	GraphSum out;
	for (auto &[k, t] : s.terms())
		out += perGraph(t.rep).scaled(t.coef);
	return out;
}

// K
inline GraphSum op_cut(const GraphSum &s, const Budget &budget = Budget::global())
{
	return applyLinear(s, [&](const StableGraph &g) { return ops::cutAll(g, std::nullopt, budget); });
}

// K_{ij}: cuts edges whose label multiset is {i,j}.
inline GraphSum op_cut_ij(const GraphSum &s, int i, int j, const Budget &budget = Budget::global())
{
	return applyLinear(
	    s, [&](const StableGraph &g) { return ops::cutAll(g, std::make_pair(i, j), budget); });
}

// The attach operator (vertex attachment + trivalent insertion).
inline GraphSum op_attach(const GraphSum &s, const Budget &budget = Budget::global())
{
	return applyLinear(s, [&](const StableGraph &g) {
		return ops::attachVertexPart(g, 0, budget) + ops::attachEdgePart(g, 0, 1, budget);
	});
}

inline GraphSum op_attach_i(const GraphSum &s, int i, int N, const Budget &budget = Budget::global())
{
	int lbl = (N >= 2) ? i : 0; // N = 1 degenerates to the unlabelled operator
	return applyLinear(s, [&, lbl](const StableGraph &g) {
		return ops::attachVertexPart(g, lbl, budget) + ops::attachEdgePart(g, lbl, N, budget);
	});
}

// The glue operator (zero on graphs without legs).
inline GraphSum op_glue_leg(const GraphSum &s, const Budget &budget = Budget::global())
{
	return applyLinear(s, [&](const StableGraph &g) { return ops::glueLegs(g, 0, 1, budget); });
}

inline GraphSum op_glue_i(const GraphSum &s, int i, int N, const Budget &budget = Budget::global())
{
	int lbl = (N >= 2) ? i : 0;
	return applyLinear(s, [&, lbl](const StableGraph &g) { return ops::glueLegs(g, lbl, N, budget); });
}

inline GraphSum op_D(const GraphSum &s, const Budget &budget = Budget::global())
{
	return op_attach(s, budget) + op_glue_leg(s, budget);
}

inline GraphSum op_D_i(const GraphSum &s, int i, int N, const Budget &budget = Budget::global())
{
	return op_attach_i(s, i, N, budget) + op_glue_i(s, i, N, budget);
}

// Abstract n-point function: sum of 1/|Aut| Gamma over the connected
// enumeration.
inline GraphSum abstract_free_energy(int g, int n, int N = 1, const Budget &budget = Budget::global())
{
	GraphSum s;
	EnumOptions opts;
	opts.N = N;
	for (auto &[key, cls] : enumerate_stable(g, n, opts, budget))
		s.addCanonical(key, cls.rep, Rational(mpq_class(mpz_class(1), cls.aut)));
	return s;
}

inline GraphSum abstract_free_energy_by_legs(int g, const std::vector<int> &legCounts,
                                             const Budget &budget = Budget::global())
{
	GraphSum s;
	for (auto &[key, cls] : enumerate_labelled_by_legs(g, legCounts, budget))
		s.addCanonical(key, cls.rep, Rational(mpq_class(mpz_class(1), cls.aut)));
	return s;
}

namespace detail {

inline bool stableCell(int g, int n) { return 2 * g - 2 + n > 0; }

// D^k applied to the abstract (g,n) cell, honoring the stated conventions
// for the unstable cells; nullopt where no convention is defined.
inline std::optional<GraphSum> dPowerCell(int g, int n, int k, const Budget &budget)
{
	if (stableCell(g, n)) {
		GraphSum s = abstract_free_energy(g, n, 1, budget);
		for (int t = 0; t < k; ++t)
			s = op_D(s, budget);
		return s;
	}
	if (k >= 1 && g == 1 && n == 0) { // D F_1 := F_{1,1}
		GraphSum s = abstract_free_energy(1, 1, 1, budget);
		for (int t = 0; t < k - 1; ++t)
			s = op_D(s, budget);
		return s;
	}
	if (k >= 1 && g == 0 && n == 2) { // D F_{0,2} := 3 F_{0,3}
		GraphSum s = abstract_free_energy(0, 3, 1, budget).scaled(Rational(3));
		for (int t = 0; t < k - 1; ++t)
			s = op_D(s, budget);
		return s;
	}
	if (k >= 2 && g == 0 && n == 1) { // D D F_{0,1} := 6 F_{0,3}
		GraphSum s = abstract_free_energy(0, 3, 1, budget).scaled(Rational(6));
		for (int t = 0; t < k - 2; ++t)
			s = op_D(s, budget);
		return s;
	}
	return std::nullopt;
}

} // namespace detail

// Theorem: K F_{g,n} = C(n+2,2) F_{g-1,n+2}
//                      + 1/2 sum (n1 F_{g1,n1})(n2 F_{g2,n2})
// over stable splits with g1+g2 = g, n1+n2 = n+2, n1,n2 >= 1.
inline bool verify_recursion_thm1(int g, int n, const Budget &budget = Budget::global())
{
	if (!detail::stableCell(g, n))
		throw std::domain_error("verify_recursion_thm1: unstable (g,n)");
	GraphSum lhs = op_cut(abstract_free_energy(g, n, 1, budget), budget);
	GraphSum rhs;
	if (g >= 1 && detail::stableCell(g - 1, n + 2))
		rhs += abstract_free_energy(g - 1, n + 2, 1, budget)
		           .scaled(Rational::binomial(n + 2, 2));
	for (int g1 = 0; g1 <= g; ++g1)
		for (int n1 = 1; n1 <= n + 1; ++n1) {
			int g2 = g - g1, n2 = n + 2 - n1;
			if (!detail::stableCell(g1, n1) || !detail::stableCell(g2, n2))
				continue;
			GraphSum prod = abstract_free_energy(g1, n1, 1, budget) *
			                abstract_free_energy(g2, n2, 1, budget);
			rhs += prod.scaled(Rational(n1) * Rational(n2) * Rational(1, 2));
		}
	return lhs == rhs;
}

// Theorem: K F_{g,n} = 1/2 (DD F_{g-1,n} + sum D F_{g1,n1} D F_{g2,n2})
// with the unstable-cell conventions.
inline bool verify_recursion_thm2(int g, int n, const Budget &budget = Budget::global())
{
	if (!detail::stableCell(g, n))
		throw std::domain_error("verify_recursion_thm2: unstable (g,n)");
	GraphSum lhs = op_cut(abstract_free_energy(g, n, 1, budget), budget);
	GraphSum rhs;
	if (g >= 1) {
		auto dd = detail::dPowerCell(g - 1, n, 2, budget);
		if (dd)
			rhs += *dd;
	}
	for (int g1 = 0; g1 <= g; ++g1)
		for (int n1 = 0; n1 <= n; ++n1) {
			int g2 = g - g1, n2 = n - n1;
			auto a = detail::dPowerCell(g1, n1, 1, budget);
			auto b = detail::dPowerCell(g2, n2, 1, budget);
			if (!a || !b)
				continue;
			rhs += (*a) * (*b);
		}
	return lhs == rhs.scaled(Rational(1, 2));
}

// Lemma: D F_{g,n} = (n+1) F_{g,n+1}.
inline bool verify_lemma_D(int g, int n, const Budget &budget = Budget::global())
{
	if (!detail::stableCell(g, n))
		throw std::domain_error("verify_lemma_D: unstable (g,n)");
	GraphSum lhs = op_D(abstract_free_energy(g, n, 1, budget), budget);
	GraphSum rhs = abstract_free_energy(g, n + 1, 1, budget).scaled(Rational(n + 1));
	return lhs == rhs;
}

namespace detail {

// Labelled analogue of dPowerCell: D_i (then optionally D_j inside) with
// Theorem 5's conventions; nullopt where no convention is stated.
inline std::optional<GraphSum> dLabelled(const std::vector<int> &legs, int g, int i,
                                         const Budget &budget)
{
	int n = 0;
	for (int l : legs)
		n += l;
	int N = static_cast<int>(legs.size());
	if (stableCell(g, n))
		return op_D_i(abstract_free_energy_by_legs(g, legs, budget), i, N, budget);
	if (g == 1 && n == 0) {
		std::vector<int> up = legs;
		up[static_cast<size_t>(i - 1)]++;
		return abstract_free_energy_by_legs(1, up, budget);
	}
	if (g == 0 && n == 2) {
		std::vector<int> up = legs;
		up[static_cast<size_t>(i - 1)]++;
		return abstract_free_energy_by_legs(0, up, budget).scaled(Rational(legs[static_cast<size_t>(i - 1)] + 1));
	}
	return std::nullopt;
}

inline std::optional<GraphSum> ddLabelled(const std::vector<int> &legs, int g, int i, int j,
                                          const Budget &budget)
{
	int n = 0;
	for (int l : legs)
		n += l;
	int N = static_cast<int>(legs.size());
	if (stableCell(g, n)) {
		auto inner = dLabelled(legs, g, j, budget);
		return op_D_i(*inner, i, N, budget);
	}
	if (g == 0 && n == 1) {
		// D_i D_j F_{0;l} := (l_j + 1) D_i F_{0;l+e_j}
		std::vector<int> up = legs;
		up[static_cast<size_t>(j - 1)]++;
		auto inner = dLabelled(up, 0, i, budget);
		if (!inner)
			return std::nullopt;
		return inner->scaled(Rational(legs[static_cast<size_t>(j - 1)] + 1));
	}
	if (g == 0 && n == 2) {
		auto inner = dLabelled(legs, 0, j, budget); // 3-point cell, stable
		if (!inner)
			return std::nullopt;
		return op_D_i(*inner, i, N, budget);
	}
	if (g == 1 && n == 0) {
		auto inner = dLabelled(legs, 1, j, budget);
		if (!inner)
			return std::nullopt;
		return op_D_i(*inner, i, N, budget);
	}
	return std::nullopt;
}

} // namespace detail

// Labelled recursion (Theorems for K_{ij}): factor 1/2 exactly when i = j.
inline bool verify_recursion_labelled(int g, const std::vector<int> &legCounts, int i, int j,
                                      const Budget &budget = Budget::global())
{
	int N = static_cast<int>(legCounts.size());
	if (i < 1 || i > N || j < 1 || j > N)
		throw std::domain_error("verify_recursion_labelled: label out of range");
	int n = 0;
	for (int l : legCounts)
		n += l;
	if (!detail::stableCell(g, n))
		throw std::domain_error("verify_recursion_labelled: unstable cell");
	GraphSum lhs = op_cut_ij(abstract_free_energy_by_legs(g, legCounts, budget), i, j, budget);
	GraphSum rhs;
	if (g >= 1) {
		auto dd = detail::ddLabelled(legCounts, g - 1, i, j, budget);
		if (dd)
			rhs += *dd;
	}
	// Ordered splits of genus and of every leg count.
	std::vector<std::vector<int>> splits;
	std::vector<int> p(legCounts.size(), 0);
	std::function<void(size_t)> rec = [&](size_t idx) {
		if (idx == legCounts.size()) {
			splits.push_back(p);
			return;
		}
		for (int c = 0; c <= legCounts[idx]; ++c) {
			p[idx] = c;
			rec(idx + 1);
		}
		p[idx] = 0;
	};
	rec(0);
	for (int g1 = 0; g1 <= g; ++g1)
		for (auto &pp : splits) {
			std::vector<int> qq(legCounts.size());
			for (size_t t = 0; t < legCounts.size(); ++t)
				qq[t] = legCounts[t] - pp[t];
			auto a = detail::dLabelled(pp, g1, i, budget);
			auto b = detail::dLabelled(qq, g - g1, j, budget);
			if (!a || !b)
				continue;
			rhs += (*a) * (*b);
		}
	if (i == j)
		rhs = rhs.scaled(Rational(1, 2));
	return lhs == rhs;
}

// Labelled lemma: D_j F_{g;l} = (l_j + 1) F_{g;l+e_j}.
inline bool verify_lemma_D_labelled(int g, const std::vector<int> &legCounts, int j,
                                    const Budget &budget = Budget::global())
{
	int N = static_cast<int>(legCounts.size());
	GraphSum lhs =
	    op_D_i(abstract_free_energy_by_legs(g, legCounts, budget), j, N, budget);
	std::vector<int> up = legCounts;
	up[static_cast<size_t>(j - 1)]++;
	GraphSum rhs = abstract_free_energy_by_legs(g, up, budget)
	                   .scaled(Rational(legCounts[static_cast<size_t>(j - 1)] + 1));
	return lhs == rhs;
}

} // namespace sgqft

#pragma once

#include "sgqft/graph_sum.hpp"
#include "sgqft/poly.hpp"

#include <functional>

namespace sgqft {

// Feynman rules: a vertex of genus g and valence vector nu contributes
// vertexRule(g, nu) (default: the symbol F_g^{(nu)}), an internal edge
// with labels {i,j} contributes kappa_{ij}. The t-derivation implements
// the propagator constraint dk_{jk}/dt_i = sum_{l,m} k_{jl} k_{km}
// F_0^{(e_i+e_l+e_m)}.
struct FeynmanContext {
	int N = 1;
	std::function<Poly(int, const std::vector<int> &)> vertexRule;

	FeynmanContext() = default;
	explicit FeynmanContext(int dim) : N(dim) {}

	Poly vertexWeight(int g, const std::vector<int> &nu) const
	{
		if (vertexRule)
			return vertexRule(g, nu);
		return Poly(Atom::vertex(g, nu));
	}

	Atom kappa(int i, int j) const { return Atom::kappa(i, j); }

	std::vector<int> unitVec(int i) const
	{
		std::vector<int> e(static_cast<size_t>(N), 0);
		e[static_cast<size_t>(i - 1)] = 1;
		return e;
	}
};

// A genus-graded family: genus g maps to the coefficient of lambda^{2g-2}
// in the total free energy (lambda itself is implicit, never an atom).
using GradedFreeEnergy = std::map<int, Poly>;

// Valence vector of v: half-edge count by label (unlabelled counts as 1).
inline std::vector<int> valenceVector(const StableGraph &g, int v, int N)
{
	std::vector<int> nu(static_cast<size_t>(N), 0);
	for (int h = 0; h < g.numHalfEdges(); ++h) {
		if (g.halfEdgeOwner[static_cast<size_t>(h)] != v)
			continue;
		int l = g.label(h);
		nu[static_cast<size_t>(l == 0 ? 0 : l - 1)]++;
	}
	return nu;
}

inline Poly feynman_weight(const StableGraph &g, const FeynmanContext &ctx)
{
	Poly w(1);
	for (int v = 0; v < g.numVertices(); ++v)
		w *= ctx.vertexWeight(g.vertexGenus[static_cast<size_t>(v)], valenceVector(g, v, ctx.N));
	for (auto &[a, b] : g.internalPairs) {
		int la = g.label(a), lb = g.label(b);
		w *= Poly(ctx.kappa(la == 0 ? 1 : la, lb == 0 ? 1 : lb));
	}
	return w;
}

inline Poly realize(const GraphSum &s, const FeynmanContext &ctx)
{
	Poly p;
	for (auto &[key, t] : s.terms())
		p += feynman_weight(t.rep, ctx).scaled(t.coef);
	return p;
}

// W_g = sum over G^c_{g,0}(N) of weight/|Aut|; kappa-degree is 3g-3.
inline Poly realized_free_energy(int g, const FeynmanContext &ctx,
                                 const Budget &budget = Budget::global())
{
	if (g < 2)
		throw std::domain_error("realized_free_energy: needs g >= 2");
	return realize(abstract_free_energy(g, 0, ctx.N, budget), ctx);
}

// Derivation d/dt_i restricted to the atoms present in p: vertex symbols
// gain a derivative slot, kappa entries follow the constraint, everything
// else is constant.
inline Derivation tDerivationFor(const Poly &p, int i, const FeynmanContext &ctx)
{
	Derivation d;
	for (auto &[m, c] : p.terms())
		for (auto &[a, e] : m.exps) {
			if (d.rules().count(a))
				continue;
			if (a.kind == AtomKind::VertexSym) {
				std::vector<int> nu = a.nu;
				nu[static_cast<size_t>(i - 1)]++;
				d.setRule(a, Poly(Atom::vertex(a.g, nu)));
			} else if (a.kind == AtomKind::Kappa) {
				Poly img;
				for (int l = 1; l <= ctx.N; ++l)
					for (int mm = 1; mm <= ctx.N; ++mm) {
						std::vector<int> nu = ctx.unitVec(i);
						nu[static_cast<size_t>(l - 1)]++;
						nu[static_cast<size_t>(mm - 1)]++;
						img += Poly(ctx.kappa(a.i, l)) * Poly(ctx.kappa(a.j, mm)) *
						       Poly(Atom::vertex(0, nu));
					}
				d.setRule(a, img);
			}
		}
	return d;
}

inline Poly tDerivative(const Poly &p, int i, const FeynmanContext &ctx)
{
	return tDerivationFor(p, i, ctx)(p);
}

// d/dt_i of W_1 = F_1 + (1/2) log det kappa, as a polynomial:
// F_1^{(e_i)} + (1/2) sum_{l,m} kappa_{lm} F_0^{(e_i+e_l+e_m)}.
inline Poly wF1_t_derivative(const FeynmanContext &ctx, int i = 1)
{
	Poly p(Atom::vertex(1, ctx.unitVec(i)));
	for (int l = 1; l <= ctx.N; ++l)
		for (int m = 1; m <= ctx.N; ++m) {
			std::vector<int> nu = ctx.unitVec(i);
			nu[static_cast<size_t>(l - 1)]++;
			nu[static_cast<size_t>(m - 1)]++;
			p += (Poly(ctx.kappa(l, m)) * Poly(Atom::vertex(0, nu))).scaled(Rational(1, 2));
		}
	return p;
}

// Covariant second derivative D_{t_i} d_{t_j} p = d_i d_j p
// + sum_{l,m} (d_l p) kappa_{lm} F_0^{(e_m+e_i+e_j)}.
inline Poly covariant_second(const Poly &p, const FeynmanContext &ctx, int i = 1, int j = 1)
{
	Poly r = tDerivative(tDerivative(p, j, ctx), i, ctx);
	for (int l = 1; l <= ctx.N; ++l) {
		Poly dl = tDerivative(p, l, ctx);
		if (dl.isZero())
			continue;
		for (int m = 1; m <= ctx.N; ++m) {
			std::vector<int> nu = ctx.unitVec(i);
			nu[static_cast<size_t>(j - 1)]++;
			nu[static_cast<size_t>(m - 1)]++;
			r += dl * Poly(ctx.kappa(l, m)) * Poly(Atom::vertex(0, nu));
		}
	}
	return r;
}

// N = 1 covariant derivative D_t = d_t + kappa F_0''' applied to a
// polynomial that is already a t-derivative.
inline Poly covariantApply(const Poly &q, const FeynmanContext &ctx, int i = 1)
{
	Poly r = tDerivative(q, i, ctx);
	r += Poly(ctx.kappa(1, 1)) * Poly(Atom::vertex1(0, 3)) * q;
	return r;
}

// omega_{K Gamma} = d_kappa omega, omega_{attach Gamma} = d_t omega, and
// omega_{glue Gamma} = #legs * kappa F_0''' omega (N = 1 form).
inline bool verify_operator_realization(int g, const FeynmanContext &ctx, int legs = 0,
                                        const Budget &budget = Budget::global())
{
	EnumOptions opts;
	opts.N = ctx.N;
	for (auto &[key, cls] : enumerate_stable(g, legs, opts, budget)) {
		GraphSum one = GraphSum::single(cls.rep, Rational(1), budget);
		Poly w = feynman_weight(cls.rep, ctx);
		if (ctx.N == 1) {
			Derivation dk;
			dk.setRule(ctx.kappa(1, 1), Poly(1));
			if (realize(op_cut(one, budget), ctx) != dk(w))
				return false;
			if (realize(op_attach(one, budget), ctx) != tDerivative(w, 1, ctx))
				return false;
			Poly glue = (Poly(ctx.kappa(1, 1)) * Poly(Atom::vertex1(0, 3)) * w)
			                .scaled(Rational(cls.rep.numLegs()));
			if (realize(op_glue_leg(one, budget), ctx) != glue)
				return false;
		} else {
			for (int i = 1; i <= ctx.N; ++i) {
				if (realize(op_attach_i(one, i, ctx.N, budget), ctx) != tDerivative(w, i, ctx))
					return false;
				for (int j = i; j <= ctx.N; ++j) {
					Derivation dk;
					dk.setRule(ctx.kappa(i, j), Poly(1));
					if (realize(op_cut_ij(one, i, j, budget), ctx) != dk(w))
						return false;
				}
			}
		}
	}
	return true;
}

// Solve d_kappa W_g = 1/2 (D_t d_t W_{g-1} + sum_r d_t W_r d_t W_{g-r})
// upward from the W_1 derivative, integrating in kappa with constant F_g.
inline GradedFreeEnergy recursion_solve(int gMax, const FeynmanContext &ctx,
                                           const Budget &budget = Budget::global())
{
	if (ctx.N != 1)
		throw std::domain_error("recursion_solve: N = 1 only (use verify_recursion_N otherwise)");
	if (gMax < 2)
		throw std::domain_error("recursion_solve: needs gMax >= 2");
	(void)budget;
	Atom kap = ctx.kappa(1, 1);
	std::map<int, Poly> W;    // g >= 2
	std::map<int, Poly> dW;   // d_t W_g for g >= 1
	dW[1] = wF1_t_derivative(ctx, 1);
	for (int g = 2; g <= gMax; ++g) {
		Poly rhs = covariantApply(dW[g - 1], ctx, 1);
		for (int r = 1; r <= g - 1; ++r)
			rhs += dW[r] * dW[g - r];
		rhs = rhs.scaled(Rational(1, 2));
		W[g] = integrate_kappa(rhs, kap, Poly(ctx.vertexWeight(g, {0})));
		dW[g] = tDerivative(W[g], 1, ctx);
	}
	return W;
}

// Theorem for general N: d_{kappa_ij} W_g equals the quadratic right-hand
// side, with the factor 1/2 exactly when i = j.
inline bool verify_recursion_N(int g, const FeynmanContext &ctx, int i, int j,
                               const Budget &budget = Budget::global())
{
	if (i < 1 || i > ctx.N || j < 1 || j > ctx.N)
		throw std::domain_error("verify_recursion_N: label out of range");
	Poly Wg = realized_free_energy(g, ctx, budget);
	Derivation dk;
	dk.setRule(ctx.kappa(i, j), Poly(1));
	Poly lhs = dk(Wg);

	Poly rhs;
	if (g - 1 >= 2) {
		Poly Wgm1 = realized_free_energy(g - 1, ctx, budget);
		rhs += covariant_second(Wgm1, ctx, i, j);
	} else {
		// D_{t_i} d_{t_j} W_1 with only the derivative of W_1 materialized.
		Poly dj = wF1_t_derivative(ctx, j);
		rhs += tDerivative(dj, i, ctx);
		for (int l = 1; l <= ctx.N; ++l) {
			Poly dl = wF1_t_derivative(ctx, l);
			for (int m = 1; m <= ctx.N; ++m) {
				std::vector<int> nu = ctx.unitVec(i);
				nu[static_cast<size_t>(j - 1)]++;
				nu[static_cast<size_t>(m - 1)]++;
				rhs += dl * Poly(ctx.kappa(l, m)) * Poly(Atom::vertex(0, nu));
			}
		}
	}
	for (int r = 1; r <= g - 1; ++r) {
		Poly a = (r == 1) ? wF1_t_derivative(ctx, i)
		                  : tDerivative(realized_free_energy(r, ctx, budget), i, ctx);
		Poly b = (g - r == 1) ? wF1_t_derivative(ctx, j)
		                      : tDerivative(realized_free_energy(g - r, ctx, budget), j, ctx);
		rhs += a * b;
	}
	if (i == j)
		rhs = rhs.scaled(Rational(1, 2));
	return lhs == rhs;
}

} // namespace sgqft

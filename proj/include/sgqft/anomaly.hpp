#pragma once

#include "sgqft/feynman.hpp"
#include "sgqft/rationalfn.hpp"

#include <functional>

namespace sgqft {

// Non-holomorphic propagator presets kappa = -(tau - taubar)^{-1} built
// from a concrete genus-0 free energy, together with the validator for
// the constraint d kappa / d t_k = kappa (d_k Hess F_0) kappa and the
// substitution of the realized free energies.
struct AnomalyPreset {
	int N = 1;
	// kappa_{ij} = kappaNum[i][j] / kappaDen (a shared denominator, the
	// determinant of tau - taubar).
	std::vector<std::vector<Poly>> kappaNum;
	Poly kappaDen{Rational(1)};
	// F_g^{(nu)} for all vertex symbols that can appear (|nu| >= 1 only
	// needs to be right for stable valences).
	std::function<RationalFn(int g, const std::vector<int> &nu)> vertexValue;
	// Holomorphic coordinate derivations d/dt_i on the atoms involved.
	std::vector<Derivation> dt;

	RationalFn kappa(int i, int j) const
	{
		return RationalFn(kappaNum[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)],
		                  kappaDen);
	}

	std::map<Atom, RationalFn> assignment(int maxDeriv = 8) const
	{
		std::map<Atom, RationalFn> sub;
		for (int i = 1; i <= N; ++i)
			for (int j = i; j <= N; ++j)
				sub[Atom::kappa(i, j)] = kappa(i, j);
		// Enumerate all derivative multi-indices up to maxDeriv.
		std::vector<int> nu(static_cast<size_t>(N), 0);
		std::function<void(int, int)> rec = [&](int slot, int rem) {
			if (slot == N) {
				for (int g = 0; g <= 4; ++g)
					sub[Atom::vertex(g, nu)] = vertexValue(g, nu);
				return;
			}
			for (int c = 0; c <= rem; ++c) {
				nu[static_cast<size_t>(slot)] = c;
				rec(slot + 1, rem - c);
			}
			nu[static_cast<size_t>(slot)] = 0;
		};
		rec(0, maxDeriv);
		return sub;
	}
};

// d kappa_{ab} / d t_k = sum_{l,m} kappa_{al} kappa_{bm} F_0^{(e_k+e_l+e_m)}.
inline bool verify_anomaly_constraint(const AnomalyPreset &p)
{
	for (int k = 1; k <= p.N; ++k)
		for (int a = 1; a <= p.N; ++a)
			for (int b = a; b <= p.N; ++b) {
				RationalFn lhs = p.kappa(a, b).derived(p.dt[static_cast<size_t>(k - 1)]);
				RationalFn rhs;
				for (int l = 1; l <= p.N; ++l)
					for (int m = 1; m <= p.N; ++m) {
						std::vector<int> nu(static_cast<size_t>(p.N), 0);
						nu[static_cast<size_t>(k - 1)]++;
						nu[static_cast<size_t>(l - 1)]++;
						nu[static_cast<size_t>(m - 1)]++;
						rhs += p.kappa(a, l) * p.kappa(b, m) * p.vertexValue(0, nu);
					}
				if (lhs != rhs)
					return false;
			}
	return true;
}

// W_g with the preset's vertex values and propagators substituted in,
// assembled over the shared denominator kappaDen^{3g-3}.
inline RationalFn anomaly_free_energy(const AnomalyPreset &p, int g,
                                      const Budget &budget = Budget::global())
{
	FeynmanContext ctx(p.N);
	Poly w = realized_free_energy(g, ctx, budget);
	int maxEdges = 3 * g - 3;
	Poly assembled;
	for (auto &[m, c] : w.terms()) {
		Poly term(c);
		RationalFn vertexPart(Rational(1));
		int edges = 0;
		for (auto &[a, e] : m.exps) {
			if (a.kind == AtomKind::Kappa) {
				term *= p.kappaNum[static_cast<size_t>(a.i - 1)][static_cast<size_t>(a.j - 1)]
				            .pow(e);
				edges += e;
			} else if (a.kind == AtomKind::VertexSym) {
				vertexPart *= p.vertexValue(a.g, a.nu).pow(e);
			} else {
				term *= Poly(Monomial::atom(a, e), Rational(1));
			}
		}
		if (!vertexPart.isPolynomial())
			throw std::domain_error("anomaly_free_energy: non-polynomial vertex value");
		term *= vertexPart.num();
		assembled += term * p.kappaDen.pow(maxEdges - edges);
	}
	return RationalFn(assembled, p.kappaDen.pow(maxEdges));
}

// A_1 topological gravity: F_0 = t_0^3/6, F_{g>=1} = 0,
// kappa = 1/(tbar_0 - t_0).
inline AnomalyPreset a1_preset()
{
	AnomalyPreset p;
	p.N = 1;
	p.kappaNum = {{Poly(1)}};
	p.kappaDen = Poly(Atom::coordTBar(0)) - Poly(Atom::coordTee(0));
	p.vertexValue = [](int g, const std::vector<int> &nu) -> RationalFn {
		if (g >= 1)
			return RationalFn(Rational(0));
		switch (nu[0]) { // derivatives of t_0^3/6
		case 0:
			return RationalFn(Poly::atomPow(Atom::coordTee(0), 3).scaled(Rational(1, 6)));
		case 1:
			return RationalFn(Poly::atomPow(Atom::coordTee(0), 2).scaled(Rational(1, 2)));
		case 2:
			return RationalFn(Poly(Atom::coordTee(0)));
		case 3:
			return RationalFn(Rational(1));
		default:
			return RationalFn(Rational(0));
		}
	};
	Derivation d0;
	d0.setRule(Atom::coordTee(0), Poly(1));
	p.dt = {d0};
	return p;
}

// Projective-line Gromov-Witten data on the small phase space:
// F_0 = t_0^2 t_1 / 2 + q e^{t_1}, F_1 = -t_1/24, F_{g>=2} = 0,
// kappa = -(tau - taubar)^{-1}. The exponential q e^{t_1} is carried by
// the atom "qexp" (and its conjugate by "qexpbar").
inline AnomalyPreset p1_preset()
{
	AnomalyPreset p;
	p.N = 2;
	Atom t0 = Atom::coordTee(0), t1 = Atom::coordTee(1);
	Atom b0 = Atom::coordTBar(0), b1 = Atom::coordTBar(1);
	Atom E = Atom::named("qexp"), Eb = Atom::named("qexpbar");
	Poly dT0 = Poly(t0) - Poly(b0);
	Poly dT1 = Poly(t1) - Poly(b1);
	Poly dE = Poly(E) - Poly(Eb);
	// kappa = -adj(M)/det for M = [[dT1, dT0], [dT0, dE]].
	p.kappaNum = {{-dE, dT0}, {dT0, -dT1}};
	p.kappaDen = dT1 * dE - dT0 * dT0; // det(tau - taubar)
	p.vertexValue = [E, t0, t1](int g, const std::vector<int> &nu) -> RationalFn {
		int a = nu[0], b = nu[1];
		if (g == 0) {
			// Derivatives of t_0^2 t_1 / 2 + q e^{t_1}.
			RationalFn fromPoly(Rational(0));
			if (a == 0 && b == 0)
				fromPoly = RationalFn((Poly::atomPow(t0, 2) * Poly(t1)).scaled(Rational(1, 2)));
			else if (a == 0 && b == 1)
				fromPoly = RationalFn(Poly::atomPow(t0, 2).scaled(Rational(1, 2)));
			else if (a == 1 && b == 0)
				fromPoly = RationalFn(Poly(t0) * Poly(t1));
			else if (a == 1 && b == 1)
				fromPoly = RationalFn(Poly(t0));
			else if (a == 2 && b == 0)
				fromPoly = RationalFn(Poly(t1));
			else if (a == 2 && b == 1)
				fromPoly = RationalFn(Rational(1));
			if (a == 0)
				fromPoly += RationalFn(Poly(E)); // every pure-t_1 derivative keeps q e^{t_1}
			return fromPoly;
		}
		if (g == 1)
			return (a == 0 && b == 1) ? RationalFn(Rational(-1, 24)) : RationalFn(Rational(0));
		return RationalFn(Rational(0));
	};
	Derivation d0;
	d0.setRule(t0, Poly(1));
	Derivation d1;
	d1.setRule(t1, Poly(1));
	d1.setRule(E, Poly(E)); // d/dt_1 (q e^{t_1}) = q e^{t_1}
	p.dt = {d0, d1};
	return p;
}

} // namespace sgqft

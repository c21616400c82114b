#pragma once

#include "sgqft/enumerate.hpp"
#include "sgqft/feynman.hpp"
#include "sgqft/rationalfn.hpp"
#include "sgqft/series.hpp"

#include <map>
#include <mutex>

namespace sgqft {

struct VerificationError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------
// Topological 1D gravity
// ---------------------------------------------------------------------

// F_g^{1D}: genus-0-vertex stable graph sum with vertex weight I_{val-1}
// and edge weight kappa.
inline Poly one_d_free_energy(int g, const Budget &budget = Budget::global())
{
	if (g < 2)
		throw std::domain_error("one_d_free_energy: needs g >= 2");
	Poly out;
	Atom kap = Atom::kappa();
	for (auto &[key, cls] : enumerate_connected_unlabelled(g, 0, /*genusZeroOnly=*/true, budget)) {
		Poly w(1);
		for (int v = 0; v < cls.rep.numVertices(); ++v)
			w *= Poly(Atom::coordI(cls.rep.valence(v) - 1));
		w *= Poly::atomPow(kap, cls.rep.numEdges());
		out += w.scaled(Rational(mpq_class(mpz_class(1), cls.aut)));
	}
	return out;
}

// The derivation d_X: I_k -> I_{k+1} (k >= 1), kappa -> kappa^2 I_2.
inline Derivation dX_for(const Poly &p)
{
	Derivation d;
	for (auto &[m, c] : p.terms())
		for (auto &[a, e] : m.exps) {
			if (a.kind == AtomKind::CoordI && a.i >= 1)
				d.setRule(a, Poly(Atom::coordI(a.i + 1)));
			else if (a.kind == AtomKind::Kappa)
				d.setRule(a, Poly(Atom::kappa()) * Poly(Atom::kappa()) * Poly(Atom::coordI(2)));
		}
	return d;
}

// d_kappa F_g = 1/2 ((d_X + kappa I_2) d_X F_{g-1} + sum d_X F_r d_X F_{g-r}),
// seeded by d_X F_1 = (1/2) kappa I_2, integrated in kappa with constant 0.
inline GradedFreeEnergy one_d_recursion(int gMax)
{
	if (gMax < 2)
		throw std::domain_error("one_d_recursion: needs gMax >= 2");
	Atom kap = Atom::kappa();
	Poly kapI2 = Poly(kap) * Poly(Atom::coordI(2));
	std::map<int, Poly> F, dF;
	dF[1] = kapI2.scaled(Rational(1, 2));
	for (int g = 2; g <= gMax; ++g) {
		Poly rhs = dX_for(dF[g - 1])(dF[g - 1]) + kapI2 * dF[g - 1];
		for (int r = 1; r <= g - 1; ++r)
			rhs += dF[r] * dF[g - r];
		rhs = rhs.scaled(Rational(1, 2));
		F[g] = integrate_kappa(rhs, kap, Poly());
		dF[g] = dX_for(F[g])(F[g]);
	}
	return F;
}

// The right-hand side of the g-th recursion step before kappa-integration
// (what the worked g = 4 expansion displays, times 2).
inline Poly one_d_recursion_rhs_x2(int g)
{
	auto F = one_d_recursion(std::max(2, g - 1));
	Atom kap = Atom::kappa();
	Poly kapI2 = Poly(kap) * Poly(Atom::coordI(2));
	std::map<int, Poly> dF;
	dF[1] = kapI2.scaled(Rational(1, 2));
	for (int r = 2; r <= g - 1; ++r)
		dF[r] = dX_for(F[r])(F[r]);
	Poly rhs = dX_for(dF[g - 1])(dF[g - 1]) + kapI2 * dF[g - 1];
	for (int r = 1; r <= g - 1; ++r)
		rhs += dF[r] * dF[g - r];
	return rhs;
}

// ---------------------------------------------------------------------
// Mean-field coordinates I <-> t
// ---------------------------------------------------------------------

// I_0(t), ..., I_maxK(t) as series of total t-degree <= cutoff.
inline std::vector<TruncatedSeries> coordinates_I_from_t(int maxK, long cutoff)
{
	std::vector<Atom> tvars;
	for (int k = 0; k <= maxK + static_cast<int>(cutoff); ++k)
		tvars.push_back(Atom::coordTee(k));
	// I_0 = sum_k (1/k) sum_{p_1+...+p_k = k-1} prod t_{p_j}/p_j!.
	TruncatedSeries I0(tvars, cutoff);
	for (long k = 1; k <= cutoff; ++k) {
		Poly sum;
		std::vector<int> parts(static_cast<size_t>(k), 0);
		std::function<void(size_t, int)> comp = [&](size_t idx, int rem) {
			if (idx + 1 == parts.size()) {
				parts[idx] = rem;
				Poly term(1);
				for (int p : parts)
					term *= Poly(Atom::coordTee(p))
					            .scaled(Rational::factorial(static_cast<unsigned long>(p)).inverse());
				sum += term;
				return;
			}
			for (int p = 0; p <= rem; ++p) {
				parts[idx] = p;
				comp(idx + 1, rem - p);
			}
		};
		comp(0, static_cast<int>(k) - 1);
		I0.addTruncated(sum.scaled(Rational(1, k)));
	}
	std::vector<TruncatedSeries> I{I0};
	// I_k = sum_n t_{n+k} I_0^n / n!.
	for (int k = 1; k <= maxK; ++k) {
		TruncatedSeries Ik(tvars, cutoff);
		TruncatedSeries power(tvars, cutoff, Poly(1));
		Rational fact(1);
		for (long n = 0; n + 1 <= cutoff; ++n) {
			if (n > 0) {
				power *= I0;
				fact *= Rational(n);
			}
			Ik += power.scaled(fact.inverse()) *
			      TruncatedSeries(tvars, cutoff, Poly(Atom::coordTee(static_cast<int>(n) + k)));
		}
		I.push_back(Ik);
	}
	return I;
}

// t_k as a polynomial in the I-atoms (each I_j counting degree 1),
// truncated at `cutoff`: t_k = sum_n (-1)^n I_0^n / n! I_{n+k}.
inline Poly coordinates_t_from_I(int k, long cutoff)
{
	Poly out;
	Rational fact(1);
	for (long n = 0; n + 1 <= cutoff; ++n) {
		if (n > 0)
			fact *= Rational(n);
		Monomial m;
		if (n > 0)
			m.exps[Atom::coordI(0)] = static_cast<int>(n);
		m.exps[Atom::coordI(static_cast<int>(n) + k)] += 1;
		out.add(m, Rational(n % 2 == 0 ? 1 : -1) / fact);
	}
	return out;
}

// ---------------------------------------------------------------------
// Quantum curve presets
// ---------------------------------------------------------------------

enum class CurveKind { Airy, Catalan };

struct CurvePreset {
	CurveKind kind = CurveKind::Airy;
	int odeOrder = 4;

	// I_k and kappa as rational functions of c.
	std::map<Atom, RationalFn> assignment(int maxI) const
	{
		Atom c = Atom::coordC();
		std::map<Atom, RationalFn> sub;
		if (kind == CurveKind::Airy) {
			sub[Atom::coordI(1)] = RationalFn(Poly(1) - Poly(c).scaled(Rational(2)));
			sub[Atom::coordI(2)] = RationalFn(Poly(Rational(-2)));
			for (int k = 3; k <= maxI; ++k)
				sub[Atom::coordI(k)] = RationalFn(Rational(0));
			sub[Atom::kappa()] = RationalFn(Poly(1), Poly(c).scaled(Rational(2)));
		} else {
			for (int k = 1; k <= maxI; ++k) {
				Rational num = Rational::factorial(static_cast<unsigned long>(k)) *
				               Rational(k % 2 == 1 ? 1 : -1);
				sub[Atom::coordI(k)] = RationalFn(Poly(num), Poly::atomPow(c, k + 1));
			}
			// kappa = 1/(1 - c^{-2}) = c^2/(c^2 - 1).
			sub[Atom::kappa()] =
			    RationalFn(Poly::atomPow(c, 2), Poly::atomPow(c, 2) - Poly(1));
		}
		return sub;
	}

	// d/dc of F_1 (Airy: (1/2) log(1/2c); Catalan: (1/2) log kappa).
	RationalFn f1_c_derivative() const
	{
		Atom c = Atom::coordC();
		if (kind == CurveKind::Airy)
			return RationalFn(Poly(Rational(-1)), Poly(c).scaled(Rational(2)));
		// -1/(c(c^2-1))
		return RationalFn(Poly(Rational(-1)), Poly(c) * (Poly::atomPow(c, 2) - Poly(1)));
	}
};

inline RationalFn curve_free_energy(const CurvePreset &preset, int g,
                                    const Budget &budget = Budget::global())
{
	Poly F = one_d_free_energy(g, budget);
	return substitute(F, preset.assignment(2 * g + 1));
}

inline Derivation cDerivation()
{
	Derivation d;
	d.setRule(Atom::coordC(), Poly(1));
	return d;
}

// Airy: dF_g/dc = -1/(4c^2) [ (d/dc - 1/c) dF_{g-1}/dc + sum dF_r dF_{g-r} ].
// Catalan, c-form: dF_g/dc = -c^3/(c^2-1)^2 [ (d/dc - 2/(c(c^2-1))) dF_{g-1}/dc + sum ],
// and t-form with t = -(c + 1/c): (c - 1/c) dF_g/dt = d^2 F_{g-1}/dt^2 + sum.
inline bool curve_recursion_check(const CurvePreset &preset, int gMax,
                                  const Budget &budget = Budget::global())
{
	Atom c = Atom::coordC();
	Derivation dc = cDerivation();
	std::map<int, RationalFn> F, dF;
	dF[1] = preset.f1_c_derivative();
	for (int g = 2; g <= gMax; ++g) {
		F[g] = curve_free_energy(preset, g, budget);
		dF[g] = F[g].derived(dc);
	}
	for (int g = 2; g <= gMax; ++g) {
		RationalFn bracket = dF[g - 1].derived(dc);
		RationalFn sum;
		for (int r = 1; r <= g - 1; ++r)
			sum += dF[r] * dF[g - r];
		if (preset.kind == CurveKind::Airy) {
			bracket -= RationalFn(Poly(1), Poly(c)) * dF[g - 1];
			RationalFn rhs = RationalFn(Poly(Rational(-1)), Poly::atomPow(c, 2).scaled(Rational(4))) *
			                 (bracket + sum);
			if (dF[g] != rhs)
				return false;
		} else {
			RationalFn c2m1 = RationalFn(Poly::atomPow(c, 2) - Poly(1));
			bracket -= RationalFn(Poly(Rational(2)), Poly(c)) / c2m1 * dF[g - 1];
			RationalFn rhs = -RationalFn(Poly::atomPow(c, 3)) / (c2m1 * c2m1) * (bracket + sum);
			if (dF[g] != rhs)
				return false;
			// t-form. d/dt = (dc/dt) d/dc with dc/dt = -c^2/(c^2-1).
			RationalFn dcdt = -RationalFn(Poly::atomPow(c, 2)) / c2m1;
			auto ddt = [&](const RationalFn &f) { return f.derived(dc) * dcdt; };
			std::map<int, RationalFn> dtF;
			for (int r = 1; r <= g; ++r)
				dtF[r] = dF[r] * dcdt;
			RationalFn lhsT = (RationalFn(Poly(c)) - RationalFn(Poly(1), Poly(c))) * dtF[g];
			RationalFn rhsT = ddt(dtF[g - 1]);
			for (int r = 1; r <= g - 1; ++r)
				rhsT += dtF[r] * dtF[g - r];
			if (lhsT != rhsT)
				return false;
		}
	}
	return true;
}

// hbar-expansion of the quantum-curve equation applied to
// Z = exp(sum_g hbar^{g-1} F_g); every coefficient through hbar^order
// must vanish identically as a rational function of c.
//
// Airy: ((hbar d/dt)^2 - t) Z = 0 with t = c^2, dF_0/dt = c.
// Catalan: (hbar^2 d^2/dt^2 - hbar t d/dt + (1 - hbar)) Z = 0 with
// t = -(c + 1/c), dF_0/dt = -c (see the notes on sign conventions).
inline bool curve_ode_check(const CurvePreset &preset, int order,
                            const Budget &budget = Budget::global())
{
	if (order > 6)
		throw std::domain_error("curve_ode_check: order capped at 6");
	Atom c = Atom::coordC();
	Derivation dc = cDerivation();
	RationalFn dcdt;
	RationalFn tOfC;
	std::map<int, RationalFn> dtF; // d F_g / dt
	if (preset.kind == CurveKind::Airy) {
		// t = c^2, so d/dt = (1/(2c)) d/dc.
		dcdt = RationalFn(Poly(1), Poly(c).scaled(Rational(2)));
		tOfC = RationalFn(Poly::atomPow(c, 2));
		dtF[0] = RationalFn(Poly(c));
	} else {
		// t = -(c + 1/c), dc/dt = -c^2/(c^2-1).
		RationalFn c2m1 = RationalFn(Poly::atomPow(c, 2) - Poly(1));
		dcdt = -RationalFn(Poly::atomPow(c, 2)) / c2m1;
		tOfC = -(RationalFn(Poly(c)) + RationalFn(Poly(1), Poly(c)));
		dtF[0] = RationalFn(Poly(Rational(-1)) * Poly(c));
	}
	dtF[1] = preset.f1_c_derivative() * dcdt;
	for (int g = 2; g <= order; ++g)
		dtF[g] = curve_free_energy(preset, g, budget).derived(dc) * dcdt;
	auto ddt = [&](const RationalFn &f) { return f.derived(dc) * dcdt; };
	for (int n = 0; n <= order; ++n) {
		RationalFn E;
		for (int r = 0; r <= n; ++r)
			E += dtF[r] * dtF[n - r];
		if (n >= 1)
			E += ddt(dtF[n - 1]);
		if (preset.kind == CurveKind::Airy) {
			if (n == 0)
				E -= tOfC;
		} else {
			E -= tOfC * dtF[n];
			if (n == 0)
				E += RationalFn(Rational(1));
			if (n == 1)
				E -= RationalFn(Rational(1));
		}
		if (!E.isZero())
			return false;
	}
	return true;
}

// ---------------------------------------------------------------------
// Enumeration models: stable graphs with genus-zero vertices, and graphs
// ---------------------------------------------------------------------

// F^st_g = sum_d a^g_d T^d kappa^{g-1+d} from the quadratic recursion
// with D T = T, D kappa = kappa^2 T, D F_1 = (1/2) kappa T.
inline GradedFreeEnergy stable_count_recursion(int gMax)
{
	if (gMax < 2)
		throw std::domain_error("stable_count_recursion: needs gMax >= 2");
	Atom kap = Atom::kappa();
	Atom T = Atom::coordT();
	Derivation D;
	D.setRule(T, Poly(T));
	D.setRule(kap, Poly(kap) * Poly(kap) * Poly(T));
	Poly kapT = Poly(kap) * Poly(T);
	std::map<int, Poly> F, dF;
	dF[1] = kapT.scaled(Rational(1, 2));
	for (int g = 2; g <= gMax; ++g) {
		Poly rhs = D(dF[g - 1]) + kapT * dF[g - 1];
		for (int r = 1; r <= g - 1; ++r)
			rhs += dF[r] * dF[g - r];
		rhs = rhs.scaled(Rational(1, 2));
		F[g] = integrate_kappa(rhs, kap, Poly());
		dF[g] = D(F[g]);
	}
	return F;
}

// Direct enumeration: F^st_g with T per vertex and kappa per edge.
inline Poly stable_count_free_energy(int g, const Budget &budget = Budget::global())
{
	if (g < 2)
		throw std::domain_error("stable_count_free_energy: needs g >= 2");
	Poly out;
	for (auto &[key, cls] : enumerate_connected_unlabelled(g, 0, true, budget)) {
		Monomial m;
		m.exps[Atom::coordT()] = cls.rep.numVertices();
		m.exps[Atom::kappa()] = cls.rep.numEdges();
		out.add(m, Rational(mpq_class(mpz_class(1), cls.aut)));
	}
	return out;
}

// a^g_1 and a^g_2 closed forms.
inline std::pair<Rational, Rational> stable_count_closed_forms(int g)
{
	if (g < 2)
		throw std::domain_error("stable_count_closed_forms: needs g >= 2");
	Rational a1 = (Rational(2).pow(g) * Rational::factorial(static_cast<unsigned long>(g))).inverse();
	Rational num = Rational(2).pow(2 * g) - Rational(2).pow(g - 1) - Rational((g + 1)) * Rational(g + 1);
	Rational a2 = num / (Rational(2).pow(g) * Rational::factorial(static_cast<unsigned long>(g + 1)));
	return {a1, a2};
}

// F^gr_g as a rational function of T (kappa -> 1/(1-T)).
inline RationalFn graph_count_free_energy_T(int g)
{
	Poly Fst = stable_count_recursion(g)[g];
	Atom T = Atom::coordT();
	std::map<Atom, RationalFn> sub;
	sub[Atom::kappa()] = RationalFn(Poly(1), Poly(1) - Poly(T));
	return substitute(Fst, sub);
}

// F^gr_g as a polynomial in kappa (T -> 1 - 1/kappa).
inline Poly graph_count_free_energy_kappa(int g)
{
	Poly Fst = stable_count_recursion(g)[g];
	Atom kap = Atom::kappa();
	std::map<Atom, RationalFn> sub;
	sub[Atom::coordT()] = RationalFn(Poly(kap) - Poly(1), Poly(kap));
	RationalFn r = substitute(Fst, sub);
	if (!r.isPolynomial())
		throw VerificationError("graph_count_free_energy_kappa: not a kappa-polynomial");
	return r.num();
}

// Bernoulli numbers via sum_{j<=m} C(m+1,j) B_j = 0, B_0 = 1 (B_2 = 1/6).
inline Rational bernoulli(int n)
{
	static std::mutex mutex;
	std::lock_guard<std::mutex> lock(mutex);
	static std::vector<Rational> cache{Rational(1)};
	while (static_cast<int>(cache.size()) <= n) {
		int m = static_cast<int>(cache.size());
		Rational s(0);
		for (int j = 0; j < m; ++j)
			s += Rational::binomial(m + 1, j) * cache[static_cast<size_t>(j)];
		cache.push_back(-s / Rational::binomial(m + 1, m));
	}
	return cache[static_cast<size_t>(n)];
}

namespace detail {

// Solve [(kappa^2 - kappa) d/dkappa + (g-1)] F = rhs for the kappa-
// polynomial F = sum_{l>=1} lambda_l kappa^l, descending from the top
// coefficient; the residual l = 1 equation is checked.
inline std::map<int, Rational> solveLambdaRow(int g, const Poly &rhs)
{
	Atom kap = Atom::kappa();
	int top = rhs.degreeIn(kap);
	std::map<int, Rational> lam; // absent = 0
	auto lamAt = [&](int l) {
		auto it = lam.find(l);
		return it == lam.end() ? Rational(0) : it->second;
	};
	for (int l = top; l >= 2; --l) {
		Rational rl = rhs.coefficientOf(kap, l).constantTerm();
		Rational v = (rl - Rational(g - 1 - l) * lamAt(l)) / Rational(l - 1);
		if (!v.isZero())
			lam[l - 1] = v;
	}
	// Residual consistency at l = 1: (g - 2) lambda_1 = r_1.
	Rational r1 = rhs.coefficientOf(kap, 1).constantTerm();
	if (Rational(g - 2) * lamAt(1) != r1)
		throw VerificationError("lambda recursion: inconsistent residual equation");
	return lam;
}

} // namespace detail

// lambda_{g,k} rows for 2 <= g <= gMax, solved top-down from the quadratic
// kappa-recursion; row 2 uses the general form with the F_1 products.
inline std::map<int, std::map<int, Rational>> lambda_recursion_solve(int gMax)
{
	if (gMax < 2)
		throw std::domain_error("lambda_recursion_solve: needs gMax >= 2");
	Atom kap = Atom::kappa();
	Poly k1 = Poly(kap);
	Poly kk = Poly::atomPow(kap, 2) - k1;         // kappa^2 - kappa
	Derivation dk;
	dk.setRule(kap, Poly(1));
	std::map<int, std::map<int, Rational>> rows;
	std::map<int, Poly> F; // F^gr_g as kappa-polynomials, rebuilt from rows
	// g = 2: kappa^2/2 [ kk^2 F1'' + (3k-2) kk F1' + kk^2 (F1')^2 ],
	// with F1 = (1/2) log kappa entering through its Laurent derivatives.
	{
		Poly F1p = Poly(Monomial::atom(kap, -1), Rational(1, 2));
		Poly F1pp = Poly(Monomial::atom(kap, -2), Rational(-1, 2));
		Poly rhs = kk * kk * F1pp + (k1.scaled(Rational(3)) - Poly(Rational(2))) * kk * F1p +
		           kk * kk * F1p * F1p;
		rhs = (Poly::atomPow(kap, 2) * rhs).scaled(Rational(1, 2));
		rows[2] = detail::solveLambdaRow(2, rhs);
	}
	auto rowToPoly = [&](const std::map<int, Rational> &row) {
		Poly p;
		for (auto &[l, v] : row)
			p.add(Monomial::atom(kap, l), v);
		return p;
	};
	F[2] = rowToPoly(rows[2]);
	for (int g = 3; g <= gMax; ++g) {
		Poly rhs = kk * kk * dk(dk(F[g - 1])) +
		           (k1.scaled(Rational(4)) - Poly(Rational(3))) * kk * dk(F[g - 1]);
		for (int r = 2; r <= g - 2; ++r)
			rhs += kk * kk * dk(F[r]) * dk(F[g - r]);
		rhs = (Poly::atomPow(kap, 2) * rhs).scaled(Rational(1, 2));
		rows[g] = detail::solveLambdaRow(g, rhs);
		F[g] = rowToPoly(rows[g]);
	}
	return rows;
}

// The three coefficient families of the graph-counting model.
struct EnumerationTable {
	int gMax = 0;
	std::map<std::pair<int, int>, Rational> a;      // (g,d) -> a^g_d
	std::map<std::pair<int, int>, Rational> lambda; // (g,k) -> lambda_{g,k}
	std::map<std::pair<int, int>, Rational> b;      // (g,n) -> b^g_n
};

// b from a: b^g_k = sum_l (-1)^{k+l} C(2g-2-l, k-l) a^g_l.
inline Rational b_from_a(const EnumerationTable &t, int g, int k)
{
	Rational s(0);
	for (int l = 1; l <= k; ++l) {
		auto it = t.a.find({g, l});
		if (it == t.a.end())
			continue;
		s += Rational((k + l) % 2 == 0 ? 1 : -1) * Rational::binomial(2 * g - 2 - l, k - l) *
		     it->second;
	}
	return s;
}

// lambda from b: lambda_{g,3g-3-k} = (-1)^k sum_{l>=k} C(l,k) b^g_l.
inline Rational lambda_from_b(const EnumerationTable &t, int g, int k)
{
	Rational s(0);
	for (int l = k; l <= 2 * g - 2; ++l) {
		auto it = t.b.find({g, l});
		if (it == t.b.end())
			continue;
		s += Rational::binomial(l, k) * it->second;
	}
	return Rational(k % 2 == 0 ? 1 : -1) * s;
}

// b from lambda: b^g_n = (-1)^n sum_j C(3g-3-j, n) lambda_{g,j}.
inline Rational b_from_lambda(const EnumerationTable &t, int g, int n)
{
	Rational s(0);
	for (int j = g - 1; j <= 3 * g - 3; ++j) {
		auto it = t.lambda.find({g, j});
		if (it == t.lambda.end())
			continue;
		s += Rational::binomial(3 * g - 3 - j, n) * it->second;
	}
	return Rational(n % 2 == 0 ? 1 : -1) * s;
}

// lambda from a: lambda_{g,3g-3-k} = sum_l (-1)^{k+l} C(2g-2-l,k-l) a^g_{2g-2-l}.
inline Rational lambda_from_a(const EnumerationTable &t, int g, int k)
{
	Rational s(0);
	for (int l = 0; l <= k; ++l) {
		auto it = t.a.find({g, 2 * g - 2 - l});
		if (it == t.a.end())
			continue;
		s += Rational((k + l) % 2 == 0 ? 1 : -1) * Rational::binomial(2 * g - 2 - l, k - l) *
		     it->second;
	}
	return s;
}

inline EnumerationTable build_tables(int gMax)
{
	EnumerationTable t;
	t.gMax = gMax;
	auto Fst = stable_count_recursion(gMax);
	Atom kap = Atom::kappa();
	Atom T = Atom::coordT();
	for (int g = 2; g <= gMax; ++g) {
		for (auto &[m, c] : Fst[g].terms())
			t.a[{g, m.exponent(T)}] = c;
		for (int k = 1; k <= 2 * g - 2; ++k)
			t.b[{g, k}] = b_from_a(t, g, k);
	}
	for (auto &[g, row] : lambda_recursion_solve(gMax))
		for (auto &[l, v] : row)
			t.lambda[{g, l}] = v;
	return t;
}

// Lambert series T(t) = sum d^{d-1}/d! t^d, the solution of T = t e^T.
inline TruncatedSeries lambert_series(long cutoff)
{
	Atom t = Atom::named("t");
	Poly p;
	for (long d = 1; d <= cutoff; ++d) {
		Rational coef = Rational(mpq_class(mpz_class(d))).pow(d - 1) /
		                Rational::factorial(static_cast<unsigned long>(d));
		p.add(Monomial::atom(t, static_cast<int>(d)), coef);
	}
	return TruncatedSeries({t}, cutoff, p);
}

} // namespace sgqft

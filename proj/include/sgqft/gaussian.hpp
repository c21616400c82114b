#pragma once

#include "sgqft/feynman.hpp"
#include "sgqft/series.hpp"

#include <map>
#include <vector>

namespace sgqft {

namespace wick {

// Gaussian moment E[x_1^{L_1} ... x_N^{L_N}] with covariance kappa, via
// the pairing recursion (match the first open slot against every other);
// equals the (2l-1)!!-weighted kappa^l for N = 1 and the canonical
// matching sum with multiplicities in general.
inline Poly moment(std::vector<int> L, std::map<std::vector<int>, Poly> &memo)
{
	long total = 0;
	for (int x : L)
		total += x;
	if (total == 0)
		return Poly(1);
	if (total % 2 != 0)
		return Poly();
	auto it = memo.find(L);
	if (it != memo.end())
		return it->second;
	size_t first = 0;
	while (L[first] == 0)
		++first;
	Poly r;
	L[first]--; // fix one slot of the first nonempty type, pair it off
	for (size_t j = 0; j < L.size(); ++j) {
		if (L[j] == 0)
			continue;
		int ways = L[j]; // partner slots of type j still open
		std::vector<int> rest = L;
		rest[j]--;
		r += (Poly(Atom::kappa(static_cast<int>(first) + 1, static_cast<int>(j) + 1)) *
		      moment(rest, memo))
		         .scaled(Rational(ways));
	}
	L[first]++;
	memo[L] = r;
	return r;
}

inline Poly moment(const std::vector<int> &L)
{
	std::map<std::vector<int>, Poly> memo;
	return moment(L, memo);
}

// One stable vertex species of the Wick expansion.
struct VertexType {
	int g = 0;
	std::vector<int> nu; // half-edge counts by label
	int weight() const
	{
		int s = 0;
		for (int x : nu)
			s += x;
		return 2 * g - 2 + s;
	}
};

// All multisets of stable vertex types with total weight exactly W,
// emitted as (type, multiplicity) lists.
inline void vertexTypeMultisets(
    int W, int N, const std::function<void(const std::vector<std::pair<VertexType, int>> &)> &sink)
{
	// Enumerate the distinct types of weight w <= W first.
	std::vector<VertexType> types;
	for (int w = 1; w <= W; ++w)
		for (int g = 0; 2 * g - 2 <= w; ++g) {
			int l = w + 2 - 2 * g;
			if (l < 0)
				continue;
			if (g == 0 && l < 3)
				continue;
			if (g == 1 && l < 1)
				continue;
			// All compositions of l into N label slots.
			std::vector<int> nu(static_cast<size_t>(N), 0);
			std::function<void(int, int)> comp = [&](int slot, int rem) {
				if (slot == N - 1) {
					nu[static_cast<size_t>(slot)] = rem;
					types.push_back({g, nu});
					return;
				}
				for (int c = 0; c <= rem; ++c) {
					nu[static_cast<size_t>(slot)] = c;
					comp(slot + 1, rem - c);
				}
			};
			comp(0, l);
		}
	std::vector<std::pair<VertexType, int>> cur;
	std::function<void(size_t, int)> rec = [&](size_t idx, int rem) {
		if (rem == 0) {
			sink(cur);
			return;
		}
		if (idx == types.size())
			return;
		rec(idx + 1, rem);
		int w = types[idx].weight();
		for (int m = 1; m * w <= rem; ++m) {
			cur.emplace_back(types[idx], m);
			rec(idx + 1, rem - m * w);
			cur.pop_back();
		}
	};
	rec(0, W);
}

// log of a lambda-graded series 1 + sum_{e>=1} P_e lambda^e, truncated.
inline std::vector<Poly> gradedLog(const std::vector<Poly> &p)
{
	size_t n = p.size();
	std::vector<Poly> f(n); // result, f[0] = 0
	// f = sum_{k>=1} (-1)^{k+1} q^k / k with q = p - 1.
	std::vector<Poly> q = p;
	q[0] = Poly();
	std::vector<Poly> power = q;
	for (size_t e = 1; e < n; ++e)
		f[e] += power[e];
	for (size_t k = 2; k < n; ++k) {
		std::vector<Poly> next(n);
		for (size_t a = 1; a < n; ++a) {
			if (power[a].isZero())
				continue;
			for (size_t b = 1; a + b < n; ++b)
				next[a + b] += power[a] * q[b];
		}
		power = std::move(next);
		Rational c(k % 2 == 0 ? -1 : 1, static_cast<long>(k));
		bool any = false;
		for (size_t e = 1; e < n; ++e) {
			if (power[e].isZero())
				continue;
			f[e] += power[e].scaled(c);
			any = true;
		}
		if (!any)
			break;
	}
	return f;
}

} // namespace wick

// Independent oracle: W_g for 2 <= g <= gMax from the Wick expansion of
// the formal Gaussian integral, with the vertex weights of ctx.
inline GradedFreeEnergy wick_free_energies(int gMax, const FeynmanContext &ctx)
{
	if (gMax < 2)
		throw std::domain_error("wick_free_energies: needs gMax >= 2");
	int W = 2 * gMax - 2;
	std::vector<Poly> disconnected(static_cast<size_t>(W) + 1);
	disconnected[0] = Poly(1);
	auto accumulate = [&](const std::vector<std::pair<wick::VertexType, int>> &ms) {
		int wTotal = 0;
		Rational sym(1);
		Poly vertexPart(1);
		std::vector<int> L(static_cast<size_t>(ctx.N), 0);
		for (auto &[t, m] : ms) {
			wTotal += t.weight() * m;
			sym /= Rational::factorial(static_cast<unsigned long>(m));
			Rational nuFact(1);
			for (int x : t.nu)
				nuFact *= Rational::factorial(static_cast<unsigned long>(x));
			sym /= nuFact.pow(m);
			vertexPart *= ctx.vertexWeight(t.g, t.nu).pow(m);
			for (size_t s = 0; s < L.size(); ++s)
				L[s] += t.nu[s] * m;
		}
		if (vertexPart.isZero())
			return;
		long tot = 0;
		for (int x : L)
			tot += x;
		if (tot % 2 != 0)
			return;
		Poly mom = wick::moment(L);
		if (mom.isZero())
			return;
		disconnected[static_cast<size_t>(wTotal)] += (vertexPart * mom).scaled(sym);
	};
	for (int w = 1; w <= W; ++w)
		wick::vertexTypeMultisets(w, ctx.N, accumulate);
	auto connected = wick::gradedLog(disconnected);
	std::map<int, Poly> out;
	for (int g = 2; g <= gMax; ++g)
		out[g] = connected[static_cast<size_t>(2 * g - 2)];
	return out;
}

inline bool oracle_equivalence(int gMax, const FeynmanContext &ctx,
                               const Budget &budget = Budget::global())
{
	auto wickSide = wick_free_energies(gMax, ctx);
	for (int g = 2; g <= gMax; ++g)
		if (wickSide[g] != realized_free_energy(g, ctx, budget))
			return false;
	return true;
}

// Closed 1D partition sum: Z = sum_n sum_{sum m_j j = 2n}
// (2n-1)!! / prod((j!)^{m_j} m_j!) lambda^{2n - 2 sum m_j} prod t_{j-1}^{m_j},
// exact through n = nMax. lambda^2 is carried as a Laurent atom.
inline TruncatedSeries one_d_partition_coefficients(int nMax)
{
	Atom lam2 = Atom::named("lambda2");
	Poly z(1);
	for (int n = 1; n <= nMax; ++n) {
		// Partitions of 2n: m_j copies of part j.
		std::vector<std::pair<int, int>> parts; // (j, m_j)
		std::function<void(int, int)> rec = [&](int maxPart, int rem) {
			if (rem == 0) {
				Rational coef = Rational::doubleFactorialOdd(static_cast<unsigned long>(n));
				int sumM = 0;
				Monomial mono;
				for (auto &[j, m] : parts) {
					coef /= Rational::factorial(static_cast<unsigned long>(j)).pow(m);
					coef /= Rational::factorial(static_cast<unsigned long>(m));
					sumM += m;
					mono.exps[Atom::coordTee(j - 1)] = m;
				}
				int lamExp = n - sumM;
				if (lamExp != 0)
					mono.exps[lam2] = lamExp;
				z.add(mono, coef);
				return;
			}
			for (int j = std::min(maxPart, rem); j >= 1; --j)
				for (int m = 1; m * j <= rem; ++m) {
					parts.emplace_back(j, m);
					rec(j - 1, rem - m * j);
					parts.pop_back();
				}
		};
		rec(2 * n, 2 * n);
	}
	// Variables: every t_k that appears (lambda2 is a parameter).
	std::vector<Atom> vars;
	for (auto &[m, c] : z.terms())
		for (auto &[a, e] : m.exps)
			if (a.kind == AtomKind::CoordTee)
				vars.push_back(a);
	std::sort(vars.begin(), vars.end());
	vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
	return TruncatedSeries(vars, 2L * nMax, z);
}

} // namespace sgqft

#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgqft {

// The symbolic indeterminates of the whole engine. Vertex symbols
// F_g^(v1,...,vN), propagator entries kappa_{ij}, mean-field coordinates
// I_k, the counting variables T and c, coupling constants t_i / tbar_i,
// plain free-energy symbols F_g, and generic named atoms.
enum class AtomKind : uint8_t {
	VertexSym = 0,
	Kappa = 1,
	CoordI = 2,
	CoordT = 3,
	CoordC = 4,
	CoordTBar = 5,
	CoordTee = 6,
	FreeEnergySym = 7,
	Named = 8,
};

struct Atom {
	AtomKind kind = AtomKind::Named;
	int g = 0;           // VertexSym / FreeEnergySym genus
	std::vector<int> nu; // VertexSym multi-index, length = ambient N
	int i = 0;           // Kappa row / CoordI order / CoordTBar / CoordTee / Named index
	int j = 0;           // Kappa column (i <= j)
	std::string tag;     // Named

	static Atom vertex(int g, std::vector<int> nu)
	{
		Atom a;
		a.kind = AtomKind::VertexSym;
		a.g = g;
		a.nu = std::move(nu);
		return a;
	}
	// N = 1 convenience: F_g^{(d)}.
	static Atom vertex1(int g, int d) { return vertex(g, {d}); }

	static Atom kappa(int i = 1, int j = 1)
	{
		if (i > j)
			std::swap(i, j);
		Atom a;
		a.kind = AtomKind::Kappa;
		a.i = i;
		a.j = j;
		return a;
	}

	static Atom coordI(int k)
	{
		if (k < 0)
			throw std::domain_error("Atom: I_k needs k >= 0");
		Atom a;
		a.kind = AtomKind::CoordI;
		a.i = k;
		return a;
	}
	static Atom coordT()
	{
		Atom a;
		a.kind = AtomKind::CoordT;
		return a;
	}
	static Atom coordC()
	{
		Atom a;
		a.kind = AtomKind::CoordC;
		return a;
	}
	static Atom coordTBar(int i)
	{
		Atom a;
		a.kind = AtomKind::CoordTBar;
		a.i = i;
		return a;
	}
	static Atom coordTee(int i)
	{
		Atom a;
		a.kind = AtomKind::CoordTee;
		a.i = i;
		return a;
	}
	static Atom freeEnergy(int g)
	{
		Atom a;
		a.kind = AtomKind::FreeEnergySym;
		a.g = g;
		return a;
	}
	static Atom named(std::string tag, int index = 0)
	{
		Atom a;
		a.kind = AtomKind::Named;
		a.tag = std::move(tag);
		a.i = index;
		return a;
	}

	friend auto operator<=>(const Atom &a, const Atom &b) = default;

	// Canonical text form: F[g=0,v=(3)], kappa / kappa[1,2], I[2], T, c,
	// tbar[0], t[0], F[2], name[idx].
	std::string str() const
	{
		switch (kind) {
		case AtomKind::VertexSym: {
			std::string s = "F[g=" + std::to_string(g) + ",v=(";
			for (size_t k = 0; k < nu.size(); ++k) {
				if (k)
					s += ",";
				s += std::to_string(nu[k]);
			}
			return s + ")]";
		}
		case AtomKind::Kappa:
			if (i == 1 && j == 1)
				return "kappa";
			return "kappa[" + std::to_string(i) + "," + std::to_string(j) + "]";
		case AtomKind::CoordI:
			return "I[" + std::to_string(i) + "]";
		case AtomKind::CoordT:
			return "T";
		case AtomKind::CoordC:
			return "c";
		case AtomKind::CoordTBar:
			return "tbar[" + std::to_string(i) + "]";
		case AtomKind::CoordTee:
			return "t[" + std::to_string(i) + "]";
		case AtomKind::FreeEnergySym:
			return "F[" + std::to_string(g) + "]";
		case AtomKind::Named:
			return i == 0 ? tag : tag + "[" + std::to_string(i) + "]";
		}
		return "?";
	}
};

} // namespace sgqft

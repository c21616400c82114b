#pragma once

#include "sgqft/atom.hpp"
#include "sgqft/rational.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace sgqft {

// Monomial over Atoms; exponents may be negative (Laurent). No zero
// exponents are stored.
struct Monomial {
	std::map<Atom, int> exps;

	static Monomial one() { return {}; }
	static Monomial atom(const Atom &a, int e = 1)
	{
		Monomial m;
		if (e != 0)
			m.exps[a] = e;
		return m;
	}

	bool isOne() const { return exps.empty(); }

	long totalDegree() const
	{
		long d = 0;
		for (auto &[a, e] : exps)
			d += e;
		return d;
	}

	int exponent(const Atom &a) const
	{
		auto it = exps.find(a);
		return it == exps.end() ? 0 : it->second;
	}

	Monomial operator*(const Monomial &o) const
	{
		Monomial r = *this;
		for (auto &[a, e] : o.exps) {
			int v = (r.exps[a] += e);
			if (v == 0)
				r.exps.erase(a);
		}
		return r;
	}

	friend bool operator==(const Monomial &a, const Monomial &b) = default;
};

// Graded order: total degree first, then lexicographic on the exponent
// sequence under the Atom order. Fixed once so every normal form and
// every printed term sequence is deterministic.
struct MonomialLess {
	bool operator()(const Monomial &a, const Monomial &b) const
	{
		long da = a.totalDegree(), db = b.totalDegree();
		if (da != db)
			return da < db;
		auto ia = a.exps.begin(), ib = b.exps.begin();
		for (; ia != a.exps.end() && ib != b.exps.end(); ++ia, ++ib) {
			if (ia->first != ib->first)
				return ia->first < ib->first;
			if (ia->second != ib->second)
				return ia->second > ib->second; // higher power of the earlier atom first
		}
		return ia == a.exps.end() && ib != b.exps.end();
	}
};

class Poly;
Poly operator*(const Poly &x, const Poly &y);

// Sparse multivariate Laurent polynomial with exact rational coefficients.
// Invariant: no zero coefficients stored.
class Poly {
  public:
	using Terms = std::map<Monomial, Rational, MonomialLess>;

	Poly() = default;
	Poly(const Rational &c)
	{
		if (!c.isZero())
			terms_[Monomial::one()] = c;
	}
	Poly(long c) : Poly(Rational(c)) {}
	Poly(const Atom &a) { terms_[Monomial::atom(a)] = Rational(1); }
	Poly(const Monomial &m, const Rational &c)
	{
		if (!c.isZero())
			terms_[m] = c;
	}

	static Poly atomPow(const Atom &a, int e) { return Poly(Monomial::atom(a, e), Rational(1)); }

	const Terms &terms() const { return terms_; }
	bool isZero() const { return terms_.empty(); }
	size_t size() const { return terms_.size(); }

	bool isConstant() const
	{
		return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.isOne());
	}
	Rational constantTerm() const
	{
		auto it = terms_.find(Monomial::one());
		return it == terms_.end() ? Rational(0) : it->second;
	}

	Rational coefficient(const Monomial &m) const
	{
		auto it = terms_.find(m);
		return it == terms_.end() ? Rational(0) : it->second;
	}

	void add(const Monomial &m, const Rational &c)
	{
		if (c.isZero())
			return;
		auto [it, fresh] = terms_.emplace(m, c);
		if (!fresh) {
			it->second += c;
			if (it->second.isZero())
				terms_.erase(it);
		}
	}

	Poly &operator+=(const Poly &o)
	{
		for (auto &[m, c] : o.terms_)
			add(m, c);
		return *this;
	}
	Poly &operator-=(const Poly &o)
	{
		for (auto &[m, c] : o.terms_)
			add(m, -c);
		return *this;
	}
	Poly operator-() const
	{
		Poly r;
		for (auto &[m, c] : terms_)
			r.terms_[m] = -c;
		return r;
	}

	Poly scaled(const Rational &s) const
	{
		Poly r;
		if (s.isZero())
			return r;
		for (auto &[m, c] : terms_)
			r.terms_[m] = c * s;
		return r;
	}

	Poly &operator*=(const Poly &o) { return *this = (*this) * o; }

	friend Poly operator+(Poly a, const Poly &b) { return a += b; }
	friend Poly operator-(Poly a, const Poly &b) { return a -= b; }

	friend bool operator==(const Poly &a, const Poly &b)
	{
		return a.terms_.size() == b.terms_.size() &&
		       std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
		                  [](auto &x, auto &y) { return x.first == y.first && x.second == y.second; });
	}
	friend bool operator!=(const Poly &a, const Poly &b) { return !(a == b); }
	friend bool operator<(const Poly &a, const Poly &b)
	{
		// Deterministic (arbitrary) total order, for use as map key.
		auto ia = a.terms_.begin(), ib = b.terms_.begin();
		MonomialLess less;
		for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
			if (less(ia->first, ib->first))
				return true;
			if (less(ib->first, ia->first))
				return false;
			if (ia->second != ib->second)
				return ia->second < ib->second;
		}
		return ia == a.terms_.end() && ib != b.terms_.end();
	}

	Poly pow(int e) const
	{
		if (e < 0)
			throw std::domain_error("Poly::pow: negative exponent");
		Poly r(1);
		Poly base = *this;
		while (e > 0) {
			if (e & 1)
				r *= base;
			base = (e >>= 1) ? base * base : base;
		}
		return r;
	}

	// Degree in a single atom (0 for absent atom, on the zero poly).
	int degreeIn(const Atom &a) const
	{
		int d = 0;
		for (auto &[m, c] : terms_)
			d = std::max(d, m.exponent(a));
		return d;
	}

	int minExponent(const Atom &a) const
	{
		bool first = true;
		int d = 0;
		for (auto &[m, c] : terms_) {
			int e = m.exponent(a);
			if (first || e < d)
				d = e;
			first = false;
		}
		return d;
	}

	// Coefficient of a^k, as a polynomial in the remaining atoms.
	Poly coefficientOf(const Atom &a, int k) const
	{
		Poly r;
		for (auto &[m, c] : terms_) {
			if (m.exponent(a) != k)
				continue;
			Monomial rest = m;
			rest.exps.erase(a);
			r.add(rest, c);
		}
		return r;
	}

	// Terms sorted by monomial order, e.g. "5/24*I[2]^2*kappa^3 + ...".
	std::string str() const
	{
		if (terms_.empty())
			return "0";
		std::ostringstream os;
		bool first = true;
		for (auto &[m, c] : terms_) {
			if (!first)
				os << (c.sign() < 0 ? " - " : " + ");
			else if (c.sign() < 0)
				os << "-";
			first = false;
			Rational ac = c.abs();
			bool needCoef = !ac.isOne() || m.isOne();
			if (needCoef)
				os << ac.str();
			bool firstAtom = !needCoef;
			for (auto &[a, e] : m.exps) {
				if (!firstAtom)
					os << "*";
				firstAtom = false;
				os << a.str();
				if (e != 1)
					os << "^" << e;
			}
		}
		return os.str();
	}

  private:
	Terms terms_;
};

inline Poly operator*(const Poly &x, const Poly &y)
{
	Poly r;
	for (auto &[ma, ca] : x.terms())
		for (auto &[mb, cb] : y.terms())
			r.add(ma * mb, ca * cb);
	return r;
}

inline Poly operator*(const Rational &s, const Poly &p) { return p.scaled(s); }

// A derivation on the atom algebra: rules atom -> Poly, extended to Poly
// by linearity and the Leibniz rule; atoms without a rule derive to zero.
// Laurent exponents differentiate as d(a^e) = e a^{e-1} da.
class Derivation {
  public:
	Derivation() = default;

	void setRule(const Atom &a, Poly image) { rules_[a] = std::move(image); }
	const std::map<Atom, Poly> &rules() const { return rules_; }

	Poly ruleFor(const Atom &a) const
	{
		auto it = rules_.find(a);
		return it == rules_.end() ? Poly() : it->second;
	}

	Poly operator()(const Poly &p) const
	{
		Poly r;
		for (auto &[m, c] : p.terms()) {
			for (auto &[a, e] : m.exps) {
				auto it = rules_.find(a);
				if (it == rules_.end() || it->second.isZero())
					continue;
				Monomial rest = m;
				if (e == 1)
					rest.exps.erase(a);
				else
					rest.exps[a] = e - 1;
				r += Poly(rest, c * Rational(e)) * it->second;
			}
		}
		return r;
	}

  private:
	std::map<Atom, Poly> rules_;
};

inline Poly derive(const Poly &p, const Derivation &d) { return d(p); }

// Term-wise kappa-antiderivative: a^m -> a^{m+1}/(m+1), plus the given
// integration constant. Rejects Laurent input in the integration atom.
inline Poly integrate_kappa(const Poly &p, const Atom &kappa, const Poly &constant = Poly())
{
	Poly r = constant;
	for (auto &[m, c] : p.terms()) {
		int e = m.exponent(kappa);
		if (e < 0)
			throw std::domain_error("integrate_kappa: negative exponent in integration atom");
		Monomial up = m;
		up.exps[kappa] = e + 1;
		r.add(up, c / Rational(e + 1));
	}
	return r;
}

// Substitute atoms by polynomials; unassigned atoms pass through.
// Negative exponents on substituted atoms are not supported here (use the
// RationalFn overload in rationalfn.hpp).
inline Poly substitute(const Poly &p, const std::map<Atom, Poly> &assignment)
{
	Poly r;
	for (auto &[m, c] : p.terms()) {
		Poly term(c);
		for (auto &[a, e] : m.exps) {
			auto it = assignment.find(a);
			if (it == assignment.end()) {
				term *= Poly(Monomial::atom(a, e), Rational(1));
			} else {
				if (e < 0)
					throw std::domain_error("substitute: negative exponent needs RationalFn");
				term *= it->second.pow(e);
			}
		}
		r += term;
	}
	return r;
}

} // namespace sgqft

#pragma once

#include "sgqft/poly.hpp"

#include <optional>

namespace sgqft {

namespace detail {

// The single atom a poly is univariate in, if any; monostate for constants.
inline std::optional<Atom> soleAtom(const Poly &p)
{
	std::optional<Atom> found;
	for (auto &[m, c] : p.terms())
		for (auto &[a, e] : m.exps) {
			if (found && !(*found == a))
				return std::nullopt;
			found = a;
		}
	return found;
}

inline Rational rationalContent(const Poly &p)
{
	Rational g(0);
	for (auto &[m, c] : p.terms())
		g = gcd(g, c);
	return g.isZero() ? Rational(1) : g;
}

// Dense univariate view for Euclidean gcd.
inline std::vector<Rational> denseCoeffs(const Poly &p, const Atom &x)
{
	std::vector<Rational> c(static_cast<size_t>(p.degreeIn(x)) + 1, Rational(0));
	for (auto &[m, coef] : p.terms())
		c[static_cast<size_t>(m.exponent(x))] += coef;
	return c;
}

inline Poly fromDense(const std::vector<Rational> &c, const Atom &x)
{
	Poly r;
	for (size_t k = 0; k < c.size(); ++k)
		r.add(Monomial::atom(x, static_cast<int>(k)), c[k]);
	return r;
}

inline std::vector<Rational> denseRem(std::vector<Rational> a, const std::vector<Rational> &b)
{
	while (!a.empty() && a.back().isZero())
		a.pop_back();
	if (a.size() < b.size())
		return a;
	for (size_t k = a.size(); k-- + 1 > b.size();) {
		size_t i = k; // never underflows: i + 1 > b.size() >= 1
		Rational f = a[i] / b.back();
		for (size_t j = 0; j < b.size(); ++j)
			a[i - (b.size() - 1) + j] -= f * b[j];
		while (!a.empty() && a.back().isZero())
			a.pop_back();
		if (a.size() < b.size())
			break;
		k = a.size();
	}
	return a;
}

inline Poly univariateGcd(const Poly &pa, const Poly &pb, const Atom &x)
{
	auto a = denseCoeffs(pa, x), b = denseCoeffs(pb, x);
	while (!b.empty()) {
		auto r = denseRem(a, b);
		a = std::move(b);
		b = std::move(r);
	}
	// Monic.
	if (!a.empty() && !a.back().isOne()) {
		Rational lead = a.back();
		for (auto &c : a)
			c /= lead;
	}
	return fromDense(a, x);
}

// Exact division, only called when the divisor is known to divide.
inline Poly univariateDiv(const Poly &pa, const Poly &pd, const Atom &x)
{
	auto a = denseCoeffs(pa, x), d = denseCoeffs(pd, x);
	while (!a.empty() && a.back().isZero())
		a.pop_back();
	std::vector<Rational> q(a.size() >= d.size() ? a.size() - d.size() + 1 : 0, Rational(0));
	while (a.size() >= d.size() && !a.empty()) {
		size_t shift = a.size() - d.size();
		Rational f = a.back() / d.back();
		q[shift] = f;
		for (size_t j = 0; j < d.size(); ++j)
			a[shift + j] -= f * d[j];
		while (!a.empty() && a.back().isZero())
			a.pop_back();
	}
	return fromDense(q, x);
}

} // namespace detail

// Quotient of two Polys. Normal form: no common Laurent/monomial factor,
// denominator primitive over the integers with positive leading
// coefficient, and the univariate primitive-part gcd divided out.
class RationalFn {
  public:
	RationalFn() : num_(), den_(1) {}
	RationalFn(const Poly &p) : num_(p), den_(1) {}
	RationalFn(const Rational &c) : num_(c), den_(1) {}
	RationalFn(long c) : num_(Rational(c)), den_(1) {}
	RationalFn(const Atom &a) : num_(a), den_(1) {}
	RationalFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den))
	{
		if (den_.isZero())
			throw std::domain_error("RationalFn: zero denominator");
		normalize();
	}

	const Poly &num() const { return num_; }
	const Poly &den() const { return den_; }
	bool isZero() const { return num_.isZero(); }
	bool isPolynomial() const { return den_ == Poly(1); }

	RationalFn operator-() const
	{
		RationalFn r = *this;
		r.num_ = -r.num_;
		return r;
	}
	friend RationalFn operator+(const RationalFn &a, const RationalFn &b)
	{
		return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
	}
	friend RationalFn operator-(const RationalFn &a, const RationalFn &b)
	{
		return RationalFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
	}
	friend RationalFn operator*(const RationalFn &a, const RationalFn &b)
	{
		return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
	}
	friend RationalFn operator/(const RationalFn &a, const RationalFn &b)
	{
		if (b.isZero())
			throw std::domain_error("RationalFn: division by zero");
		return RationalFn(a.num_ * b.den_, a.den_ * b.num_);
	}
	RationalFn &operator+=(const RationalFn &o) { return *this = *this + o; }
	RationalFn &operator-=(const RationalFn &o) { return *this = *this - o; }
	RationalFn &operator*=(const RationalFn &o) { return *this = *this * o; }
	RationalFn &operator/=(const RationalFn &o) { return *this = *this / o; }

	RationalFn pow(int e) const
	{
		if (e < 0) {
			if (isZero())
				throw std::domain_error("RationalFn: inverse of zero");
			return RationalFn(den_, num_).pow(-e);
		}
		RationalFn r(1);
		for (int k = 0; k < e; ++k)
			r *= *this;
		return r;
	}

	// Exact equality of the represented functions.
	friend bool operator==(const RationalFn &a, const RationalFn &b)
	{
		return a.num_ * b.den_ == b.num_ * a.den_;
	}
	friend bool operator!=(const RationalFn &a, const RationalFn &b) { return !(a == b); }

	// Identical normal form, the stronger canonical-representation test.
	bool identicalTo(const RationalFn &o) const { return num_ == o.num_ && den_ == o.den_; }

	RationalFn derived(const Derivation &d) const
	{
		return RationalFn(d(num_) * den_ - num_ * d(den_), den_ * den_);
	}

	std::string str() const
	{
		if (isPolynomial())
			return num_.str();
		return "(" + num_.str() + ") / (" + den_.str() + ")";
	}

  private:
	void normalize()
	{
		if (num_.isZero()) {
			den_ = Poly(1);
			return;
		}
		// Common monomial factor, which also clears Laurent exponents: for
		// each atom divide both polys by atom^m where m is the minimum
		// exponent seen across every term of num and den (absence counts
		// as 0).
		std::map<Atom, int> shift;
		auto scan = [&](const Poly &p) {
			std::map<Atom, int> seen;
			for (auto &[m, c] : p.terms())
				for (auto &[a, e] : m.exps)
					seen[a] = 0;
			for (auto &[a, z] : seen) {
				int mn = 0;
				bool first = true;
				for (auto &[m, c] : p.terms()) {
					int e = m.exponent(a);
					mn = first ? e : std::min(mn, e);
					first = false;
				}
				auto it = shift.find(a);
				if (it == shift.end())
					shift[a] = mn;
				else
					it->second = std::min(it->second, mn);
			}
		};
		scan(num_);
		scan(den_);
		// An atom absent from one side entirely has min exponent 0 there.
		for (auto &[a, e] : shift) {
			auto present = [&](const Poly &p) {
				for (auto &[m, c] : p.terms())
					if (m.exponent(a) != 0)
						return true;
				return false;
			};
			if (!present(num_) || !present(den_))
				e = std::min(e, 0);
		}
		Monomial div;
		for (auto &[a, e] : shift)
			if (e != 0)
				div.exps[a] = -e;
		if (!div.exps.empty()) {
			Poly f(div, Rational(1));
			num_ = num_ * f;
			den_ = den_ * f;
		}
		// Rational content: denominator becomes integer-primitive.
		Rational cn = detail::rationalContent(num_);
		Rational cd = detail::rationalContent(den_);
		num_ = num_.scaled(cn.inverse());
		den_ = den_.scaled(cd.inverse());
		Rational scale = cn / cd;
		// Univariate primitive-part gcd when both sides live in one atom.
		auto an = detail::soleAtom(num_);
		auto ad = detail::soleAtom(den_);
		if (ad && (!an || *an == *ad)) {
			Poly g = detail::univariateGcd(num_, den_, *ad);
			if (g.degreeIn(*ad) > 0) {
				num_ = detail::univariateDiv(num_, g, *ad);
				den_ = detail::univariateDiv(den_, g, *ad);
				Rational cn2 = detail::rationalContent(num_);
				Rational cd2 = detail::rationalContent(den_);
				num_ = num_.scaled(cn2.inverse());
				den_ = den_.scaled(cd2.inverse());
				scale *= cn2 / cd2;
			}
		}
		// Sign convention: leading denominator coefficient positive.
		if (den_.terms().rbegin()->second.sign() < 0) {
			num_ = -num_;
			den_ = -den_;
		}
		num_ = num_.scaled(scale);
	}

	Poly num_, den_;
};

// Exact substitution atom -> RationalFn; unassigned atoms pass through.
inline RationalFn substitute(const Poly &p, const std::map<Atom, RationalFn> &assignment)
{
	RationalFn r(Rational(0));
	for (auto &[m, c] : p.terms()) {
		RationalFn term{Poly(c)};
		for (auto &[a, e] : m.exps) {
			auto it = assignment.find(a);
			if (it == assignment.end())
				term *= RationalFn(Poly(Monomial::atom(a, e), Rational(1)));
			else
				term *= it->second.pow(e);
		}
		r += term;
	}
	return r;
}

} // namespace sgqft

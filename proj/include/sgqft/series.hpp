#pragma once

#include "sgqft/poly.hpp"

#include <set>

namespace sgqft {

// Multivariate power series truncated by total degree in the declared
// variables. Atoms outside `variables` are treated as degree-0 parameters
// (the Laurent lambda^2 atom of the 1D partition sum uses this).
class TruncatedSeries {
  public:
	TruncatedSeries() : cutoff_(0) {}
	TruncatedSeries(std::vector<Atom> variables, long cutoff, Poly p = Poly())
	    : vars_(variables.begin(), variables.end()), cutoff_(cutoff)
	{
		addTruncated(std::move(p));
	}

	long cutoff() const { return cutoff_; }
	const Poly &poly() const { return p_; }
	const std::set<Atom> &variables() const { return vars_; }
	bool isZero() const { return p_.isZero(); }

	long degreeOf(const Monomial &m) const
	{
		long d = 0;
		for (auto &[a, e] : m.exps)
			if (vars_.count(a))
				d += e;
		return d;
	}

	void addTruncated(const Poly &p)
	{
		for (auto &[m, c] : p.terms())
			if (degreeOf(m) <= cutoff_)
				p_.add(m, c);
	}

	TruncatedSeries &operator+=(const TruncatedSeries &o)
	{
		addTruncated(o.p_);
		return *this;
	}
	TruncatedSeries &operator-=(const TruncatedSeries &o)
	{
		addTruncated(-o.p_);
		return *this;
	}
	friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries &b) { return a += b; }
	friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries &b) { return a -= b; }

	friend TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b)
	{
		TruncatedSeries r(std::vector<Atom>(a.vars_.begin(), a.vars_.end()),
		                  std::min(a.cutoff_, b.cutoff_));
		r.addTruncated(a.p_ * b.p_);
		return r;
	}
	TruncatedSeries &operator*=(const TruncatedSeries &o) { return *this = *this * o; }

	TruncatedSeries scaled(const Rational &s) const
	{
		TruncatedSeries r = *this;
		r.p_ = r.p_.scaled(s);
		return r;
	}

	friend bool operator==(const TruncatedSeries &a, const TruncatedSeries &b)
	{
		return a.p_ == b.p_;
	}

	Rational constantTerm() const
	{
		Rational c(0);
		for (auto &[m, coef] : p_.terms())
			if (degreeOf(m) == 0 && m.isOne())
				c += coef;
		return c;
	}

	// Positive-degree part in the declared variables.
	TruncatedSeries positivePart() const
	{
		TruncatedSeries r(std::vector<Atom>(vars_.begin(), vars_.end()), cutoff_);
		for (auto &[m, c] : p_.terms())
			if (degreeOf(m) > 0)
				r.p_.add(m, c);
		return r;
	}

	std::string str() const { return p_.str(); }

  private:
	std::set<Atom> vars_;
	long cutoff_;
	Poly p_;
};

// log(s) for series with constant term 1.
inline TruncatedSeries series_log(const TruncatedSeries &s)
{
	if (s.constantTerm() != Rational(1) || !(s - s.positivePart()).poly().isConstant())
		throw std::domain_error("series_log: constant term must be 1");
	TruncatedSeries n = s.positivePart(); // s = 1 + n
	TruncatedSeries r = n;
	TruncatedSeries power = n;
	for (long k = 2; k <= s.cutoff(); ++k) {
		power *= n;
		if (power.isZero())
			break;
		r += power.scaled(Rational((k % 2 == 0) ? -1 : 1, k));
	}
	return r;
}

// exp(s) for series with constant term 0.
inline TruncatedSeries series_exp(const TruncatedSeries &s)
{
	if (!s.constantTerm().isZero() || !(s - s.positivePart()).poly().isZero())
		throw std::domain_error("series_exp: constant term must be 0");
	std::vector<Atom> vars(s.variables().begin(), s.variables().end());
	TruncatedSeries r(vars, s.cutoff(), Poly(1));
	TruncatedSeries power(vars, s.cutoff(), Poly(1));
	Rational fact(1);
	for (long k = 1; k <= s.cutoff(); ++k) {
		power *= s;
		if (power.isZero())
			break;
		fact *= Rational(k);
		r += power.scaled(fact.inverse());
	}
	return r;
}

// Substitute series for atoms (atoms not assigned pass through). The
// result is truncated at `cutoff` total degree in `resultVars`.
inline TruncatedSeries series_compose(const Poly &host, const std::map<Atom, TruncatedSeries> &assignment,
                                      std::vector<Atom> resultVars, long cutoff)
{
	TruncatedSeries r(resultVars, cutoff);
	for (auto &[m, c] : host.terms()) {
		TruncatedSeries term(resultVars, cutoff, Poly(c));
		for (auto &[a, e] : m.exps) {
			auto it = assignment.find(a);
			if (it == assignment.end()) {
				term *= TruncatedSeries(resultVars, cutoff, Poly(Monomial::atom(a, e), Rational(1)));
			} else {
				if (e < 0)
					throw std::domain_error("series_compose: negative exponent");
				for (int k = 0; k < e; ++k)
					term *= it->second;
			}
		}
		r += term;
	}
	return r;
}

inline TruncatedSeries series_compose(const TruncatedSeries &host,
                                      const std::map<Atom, TruncatedSeries> &assignment,
                                      std::vector<Atom> resultVars, long cutoff)
{
	return series_compose(host.poly(), assignment, std::move(resultVars), cutoff);
}

} // namespace sgqft

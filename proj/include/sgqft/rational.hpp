#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sgqft {

// Exact rational number. Always reduced, denominator > 0, zero is 0/1.
// Backed by GMP; the wrapper pins down construction, parsing and printing.
class Rational {
  public:
	Rational() : q_(0) {}
	Rational(long n) : q_(static_cast<long>(n)) {}
	Rational(long num, long den) : q_(num, den)
	{
		if (den == 0)
			throw std::domain_error("Rational: zero denominator");
		q_.canonicalize();
	}
	explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

	// Accepts "n", "-n", "n/d".
	static Rational parse(const std::string &s)
	{
		mpq_class q(s);
		q.canonicalize();
		return Rational(std::move(q));
	}

	static Rational factorial(unsigned long n)
	{
		mpz_class z;
		mpz_fac_ui(z.get_mpz_t(), n);
		return Rational(mpq_class(z));
	}

	// (2n-1)!! = 1*3*5*...*(2n-1); doubleFactorialOdd(0) = 1.
	static Rational doubleFactorialOdd(unsigned long n)
	{
		mpz_class z = 1;
		for (unsigned long k = 1; k <= n; ++k)
			z *= 2 * k - 1;
		return Rational(mpq_class(z));
	}

	static Rational binomial(long n, long k)
	{
		if (k < 0)
			return Rational(0);
		// Generalized over integer n: C(n,k) = n(n-1)...(n-k+1)/k!.
		mpq_class r = 1;
		for (long i = 0; i < k; ++i)
			r *= mpq_class(n - i, i + 1);
		r.canonicalize();
		return Rational(std::move(r));
	}

	bool isZero() const { return q_ == 0; }
	bool isOne() const { return q_ == 1; }
	int sign() const { return sgn(q_); }

	mpz_class numerator() const { return q_.get_num(); }
	mpz_class denominator() const { return q_.get_den(); }
	bool isInteger() const { return q_.get_den() == 1; }

	Rational operator-() const { return Rational(mpq_class(-q_)); }
	Rational &operator+=(const Rational &o)
	{
		q_ += o.q_;
		return *this;
	}
	Rational &operator-=(const Rational &o)
	{
		q_ -= o.q_;
		return *this;
	}
	Rational &operator*=(const Rational &o)
	{
		q_ *= o.q_;
		return *this;
	}
	Rational &operator/=(const Rational &o)
	{
		if (o.isZero())
			throw std::domain_error("Rational: division by zero");
		q_ /= o.q_;
		return *this;
	}

	friend Rational operator+(Rational a, const Rational &b) { return a += b; }
	friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
	friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
	friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

	friend bool operator==(const Rational &a, const Rational &b) { return a.q_ == b.q_; }
	friend bool operator!=(const Rational &a, const Rational &b) { return a.q_ != b.q_; }
	friend bool operator<(const Rational &a, const Rational &b) { return a.q_ < b.q_; }

	Rational inverse() const
	{
		if (isZero())
			throw std::domain_error("Rational: inverse of zero");
		return Rational(mpq_class(1 / q_));
	}

	Rational pow(long e) const
	{
		if (e < 0)
			return inverse().pow(-e);
		mpz_class num, den;
		mpz_pow_ui(num.get_mpz_t(), q_.get_num().get_mpz_t(), static_cast<unsigned long>(e));
		mpz_pow_ui(den.get_mpz_t(), q_.get_den().get_mpz_t(), static_cast<unsigned long>(e));
		return Rational(mpq_class(num, den));
	}

	Rational abs() const { return sign() < 0 ? -*this : *this; }

	// "5/24", "-7/24", integers without the "/1".
	std::string str() const
	{
		if (isInteger())
			return q_.get_num().get_str();
		return q_.get_num().get_str() + "/" + q_.get_den().get_str();
	}

	const mpq_class &raw() const { return q_; }

  private:
	mpq_class q_;
};

inline Rational gcd(const Rational &a, const Rational &b)
{
	// gcd of rationals: gcd(num)/lcm(den); used for content extraction.
	if (a.isZero())
		return b.abs();
	if (b.isZero())
		return a.abs();
	mpz_class gn, ld;
	mpz_gcd(gn.get_mpz_t(), a.numerator().get_mpz_t(), b.numerator().get_mpz_t());
	mpz_lcm(ld.get_mpz_t(), a.denominator().get_mpz_t(), b.denominator().get_mpz_t());
	return Rational(mpq_class(gn, ld));
}

} // namespace sgqft

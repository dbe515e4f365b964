#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <string>

#include "simrec/errors.hpp"

namespace simrec {

/**
 * Exact rational scalar.
 *
 * Always held in canonical form: gcd(|num|, den) = 1, den > 0, and zero
 * is 0/1. Arbitrary precision (GMP), so trajectories may grow without
 * overflow. Immutable value semantics; safe to share across threads.
 */
class Rational {
public:
    Rational() : q_(0) {}
    Rational(int n) : q_(n) {}
    Rational(long n) : q_(static_cast<signed long>(n)) {}
    Rational(unsigned long n) : q_(n) {}
    Rational(const mpz_class& n) : q_(n) {}

    // Throws ArithmeticError when den == 0.
    Rational(long num, long den);
    Rational(const mpz_class& num, const mpz_class& den);

    // Text form: optional sign, integer, optional "/" positive integer
    // ("-7/3", "4"). Returns nullopt on anything else, including "1/0".
    static std::optional<Rational> parse(const std::string& text);

    const mpz_class& num() const { return q_.get_num(); }
    const mpz_class& den() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    // gcd(|num|, den) == 1, den > 0. True for every value this class
    // produces; exposed so tests can assert it.
    bool is_canonical() const;

    std::string str() const;                     // "p/q", or "p" when integral
    std::string decimal(std::size_t digits) const; // rounded, approximate

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);     // throws ArithmeticError on /0

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    mpq_class q_;
};

// base^exponent, exact. pow(b, 0) == 1 for every b, including b == 0, so
// closed-form evaluators return y0 at step 0 without special cases.
Rational pow(const Rational& base, unsigned long exponent);

// Exact square root when it exists in Q (both num and den perfect squares).
std::optional<Rational> exact_sqrt(const Rational& r);

} // namespace simrec

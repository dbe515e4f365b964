#pragma once

#include <string>
#include <vector>

#include "simrec/rational.hpp"

namespace simrec {

/**
 * Dense univariate polynomial over Rational.
 *
 * coeff(k) is the coefficient of the k-th power. Canonical form: the
 * highest stored coefficient is nonzero; the zero polynomial stores
 * nothing (degree() == -1).
 */
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> ascending);
    Polynomial(std::initializer_list<Rational> ascending);

    static Polynomial constant(const Rational& c);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Rational coeff(std::size_t k) const;
    const std::vector<Rational>& coeffs() const { return c_; }

    // Horner evaluation, exact.
    Rational operator()(const Rational& at) const;

    friend Polynomial operator+(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator-(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator*(const Rational& s, const Polynomial& p);

    bool operator==(const Polynomial&) const = default;

    // "-t^3 + 9*t^2 - 18*t"; zero polynomial prints "0".
    std::string str(const std::string& var = "t") const;

private:
    std::vector<Rational> c_;
    void trim();
};

} // namespace simrec

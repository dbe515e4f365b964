#include "simrec/rational.hpp"

#include <cctype>
#include <ostream>

namespace simrec {

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (sgn(den) == 0) {
        throw ArithmeticError("zero denominator");
    }
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

std::optional<Rational> Rational::parse(const std::string& text) {
    std::size_t i = 0;
    const std::size_t n = text.size();
    bool negative = false;
    if (i < n && (text[i] == '-' || text[i] == '+')) {
        negative = text[i] == '-';
        ++i;
    }
    std::size_t num_begin = i;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == num_begin) return std::nullopt;
    mpz_class num(text.substr(num_begin, i - num_begin), 10);
    mpz_class den(1);
    if (i < n) {
        if (text[i] != '/') return std::nullopt;
        ++i;
        std::size_t den_begin = i;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == den_begin || i != n) return std::nullopt;
        den = mpz_class(text.substr(den_begin), 10);
        if (sgn(den) == 0) return std::nullopt;
    }
    if (negative) num = -num;
    return Rational(num, den);
}

bool Rational::is_canonical() const {
    if (sgn(q_.get_den()) <= 0) return false;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), q_.get_num().get_mpz_t(), q_.get_den().get_mpz_t());
    return g == 1;
}

std::string Rational::str() const {
    return q_.get_str();
}

std::string Rational::decimal(std::size_t digits) const {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    mpz_class p = abs(q_.get_num()) * scale;
    mpz_class quo, rem;
    mpz_fdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), p.get_mpz_t(), q_.get_den().get_mpz_t());
    if (2 * rem >= q_.get_den()) quo += 1; // round half away from zero
    std::string body = quo.get_str();
    if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
    std::string out = sgn(q_) < 0 && quo != 0 ? "-" : "";
    if (digits == 0) return out + body;
    out += body.substr(0, body.size() - digits);
    out += '.';
    out += body.substr(body.size() - digits);
    return out;
}

Rational Rational::operator-() const {
    Rational r;
    r.q_ = -q_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) { q_ += o.q_; return *this; }
Rational& Rational::operator-=(const Rational& o) { q_ -= o.q_; return *this; }
Rational& Rational::operator*=(const Rational& o) { q_ *= o.q_; return *this; }

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) {
        throw ArithmeticError("division by zero");
    }
    q_ /= o.q_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

Rational pow(const Rational& base, unsigned long exponent) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.num().get_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.den().get_mpz_t(), exponent);
    return Rational(num, den); // num/den already coprime
}

std::optional<Rational> exact_sqrt(const Rational& r) {
    if (r.sign() < 0) return std::nullopt;
    if (!mpz_perfect_square_p(r.num().get_mpz_t()) ||
        !mpz_perfect_square_p(r.den().get_mpz_t())) {
        return std::nullopt;
    }
    mpz_class num, den;
    mpz_sqrt(num.get_mpz_t(), r.num().get_mpz_t());
    mpz_sqrt(den.get_mpz_t(), r.den().get_mpz_t());
    return Rational(num, den);
}

} // namespace simrec

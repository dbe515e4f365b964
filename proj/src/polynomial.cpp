#include "simrec/polynomial.hpp"

#include <algorithm>

namespace simrec {

Polynomial::Polynomial(std::vector<Rational> ascending) : c_(std::move(ascending)) {
    trim();
}

Polynomial::Polynomial(std::initializer_list<Rational> ascending) : c_(ascending) {
    trim();
}

Polynomial Polynomial::constant(const Rational& c) {
    return Polynomial({c});
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational Polynomial::coeff(std::size_t k) const {
    return k < c_.size() ? c_[k] : Rational(0);
}

Rational Polynomial::operator()(const Rational& at) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * at + *it;
    }
    return acc;
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    std::vector<Rational> out(std::max(p.c_.size(), q.c_.size()));
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = p.coeff(k) + q.coeff(k);
    }
    return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& p, const Polynomial& q) {
    std::vector<Rational> out(std::max(p.c_.size(), q.c_.size()));
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = p.coeff(k) - q.coeff(k);
    }
    return Polynomial(std::move(out));
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) return Polynomial();
    std::vector<Rational> out(p.c_.size() + q.c_.size() - 1);
    for (std::size_t i = 0; i < p.c_.size(); ++i) {
        for (std::size_t j = 0; j < q.c_.size(); ++j) {
            out[i + j] += p.c_[i] * q.c_[j];
        }
    }
    return Polynomial(std::move(out));
}

Polynomial operator*(const Rational& s, const Polynomial& p) {
    std::vector<Rational> out(p.c_.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = s * p.c_[k];
    }
    return Polynomial(std::move(out));
}

std::string Polynomial::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const Rational& c = c_[i];
        if (c.is_zero()) continue;
        Rational mag = c.sign() < 0 ? -c : c;
        if (out.empty()) {
            if (c.sign() < 0) out += "-";
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        const bool unit = mag == Rational(1) && i > 0;
        if (!unit) out += mag.str();
        if (i > 0) {
            if (!unit) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

} // namespace simrec

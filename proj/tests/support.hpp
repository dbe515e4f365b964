#pragma once

#include <random>
#include <string>
#include <vector>

#include "simrec/rational.hpp"
#include "simrec/system.hpp"

namespace simrec::testing {

inline Rational rat(const std::string& text) {
    auto r = Rational::parse(text);
    if (!r) throw std::runtime_error("bad rational literal: " + text);
    return *r;
}

// Three coupled integer sequences with unit forcing; row sums are all 6
// and the middle row is the mean of the outer ones.
inline const char* kTripleIntText =
    "# integer triple, all row sums 6\n"
    "a[x] = 2*a[x-1] + 4*b[x-1] + 1\n"
    "b[x] = a[x-1] + 3*b[x-1] + 2*c[x-1] + 1\n"
    "c[x] = 2*b[x-1] + 4*c[x-1] + 1\n"
    "init: a = 0, b = 0, c = 0\n";

// Fractional triple: no coefficient proportion, but the initial values
// (41, 47, 60) induce invariant weights (13/19, 6/19).
inline const char* kTripleFracText =
    "a[x] = 37/6*a[x-1] - 1/6*b[x-1] + 2\n"
    "b[x] = 15/2*a[x-1] - 7/2*b[x-1] + 2*c[x-1] + 2\n"
    "c[x] = 16/3*a[x-1] - 10/3*b[x-1] + 4*c[x-1] + 2\n"
    "init: a = 41, b = 47, c = 60\n";

struct Rng {
    std::mt19937 gen;

    explicit Rng(unsigned seed) : gen(seed) {}

    long int_in(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(gen);
    }

    // Numerator in [-9, 9], denominator in [1, 9].
    Rational small_rational() {
        return Rational(int_in(-9, 9), int_in(1, 9));
    }

    Rational nonzero_small_rational() {
        while (true) {
            Rational r = small_rational();
            if (!r.is_zero()) return r;
        }
    }
};

inline RecurrenceSystem random_system(Rng& rng, std::size_t n, bool homogeneous = false) {
    RecurrenceSystem s;
    for (std::size_t i = 0; i < n; ++i) s.names.push_back(std::string(1, char('a' + i)));
    s.coefficients.assign(n, std::vector<Rational>(n));
    s.affine.assign(n, Rational(0));
    s.initial.assign(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) s.coefficients[i][j] = rng.small_rational();
        if (!homogeneous) s.affine[i] = rng.small_rational();
        s.initial[i] = rng.small_rational();
    }
    return s;
}

// Order-2 system whose coefficient rows share the same sum.
inline RecurrenceSystem random_equal_row_sum_pair(Rng& rng) {
    RecurrenceSystem s = random_system(rng, 2);
    s.coefficients[1][1] =
        s.coefficients[0][0] + s.coefficients[0][1] - s.coefficients[1][0];
    return s;
}

// Order-2 system whose coefficient columns share the same sum.
inline RecurrenceSystem random_equal_col_sum_pair(Rng& rng) {
    RecurrenceSystem s = random_system(rng, 2);
    s.coefficients[1][1] =
        s.coefficients[0][0] + s.coefficients[1][0] - s.coefficients[0][1];
    return s;
}

/**
 * Embeds an order-2 equal-row-sum system into an order-3 system that
 * reduces back to it under weights (w1, 1-w1): the a/b rows are chosen
 * so the (a,b) pair reduction reproduces the input exactly, and row c,
 * its affine term and c0 are read off the invariant. The result carries
 * the coefficient proportion and all three row sums equal the pair's.
 */
inline RecurrenceSystem lift_pair_to_triple(const RecurrenceSystem& pair,
                                            const Rational& w1,
                                            const Rational& a13,
                                            const Rational& a23) {
    const Rational w2 = Rational(1) - w1;
    const Rational ratio = w1 / w2;
    const Rational inv = Rational(1) / w2;
    const auto& m = pair.coefficients;

    RecurrenceSystem s;
    s.names = {"a", "b", "c"};
    std::vector<Rational> row_a = {m[0][0] + ratio * a13, m[0][1] - inv * a13, a13};
    std::vector<Rational> row_b = {m[1][0] + ratio * a23, m[1][1] - inv * a23, a23};
    std::vector<Rational> row_c(3);
    for (std::size_t j = 0; j < 3; ++j) row_c[j] = (row_b[j] - w1 * row_a[j]) / w2;
    s.coefficients = {row_a, row_b, row_c};
    s.affine = {pair.affine[0], pair.affine[1],
                (pair.affine[1] - w1 * pair.affine[0]) / w2};
    s.initial = {pair.initial[0], pair.initial[1],
                 (pair.initial[1] - w1 * pair.initial[0]) / w2};
    return s;
}

// Test-only determinant by cofactor expansion along the first row;
// independent of the Faddeev-LeVerrier path it cross-checks.
inline Rational det_cofactor(const Matrix& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    Rational det(0);
    Rational sign(1);
    for (std::size_t j = 0; j < n; ++j) {
        Matrix minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Rational> row;
            for (std::size_t c = 0; c < n; ++c) {
                if (c != j) row.push_back(m[r][c]);
            }
            minor.push_back(std::move(row));
        }
        det += sign * m[0][j] * det_cofactor(minor);
        sign = -sign;
    }
    return det;
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.size();
    Matrix out(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t j = 0; j < n; ++j) {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return out;
}

inline Matrix mat_pow(Matrix base, std::size_t k) {
    const std::size_t n = base.size();
    Matrix acc(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) acc[i][i] = Rational(1);
    for (std::size_t i = 0; i < k; ++i) acc = mat_mul(acc, base);
    return acc;
}

} // namespace simrec::testing

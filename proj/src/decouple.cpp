#include "simrec/decouple.hpp"

#include "simrec/errors.hpp"

namespace simrec {

namespace {

Matrix identity(std::size_t n) {
    Matrix m(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = Rational(1);
    return m;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.size();
    Matrix out(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return out;
}

Rational trace(const Matrix& a) {
    Rational t(0);
    for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
    return t;
}

} // namespace

Polynomial char_poly(const Matrix& matrix) {
    const std::size_t n = matrix.size();
    if (n == 0) throw Error("char_poly: empty matrix");
    for (const auto& row : matrix) {
        if (row.size() != n) throw Error("char_poly: matrix is not square");
    }

    // Faddeev-LeVerrier: det(t*I - A) = t^n + c1*t^(n-1) + ... + cn with
    //   M_k = A*M_{k-1} + c_{k-1}*I,  c_k = -tr(A*M_k)/k.
    std::vector<Rational> c(n + 1);
    c[0] = Rational(1);
    Matrix m = identity(n); // M_1
    for (std::size_t k = 1; k <= n; ++k) {
        if (k > 1) {
            Matrix am = mat_mul(matrix, m);
            for (std::size_t i = 0; i < n; ++i) am[i][i] += c[k - 1];
            m = std::move(am);
        }
        c[k] = -trace(mat_mul(matrix, m)) / Rational(static_cast<long>(k));
    }

    // det(A - t*I) = (-1)^n det(t*I - A); ascending coefficient order.
    const Rational sign = n % 2 == 0 ? Rational(1) : Rational(-1);
    std::vector<Rational> ascending(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        ascending[n - j] = sign * c[j];
    }
    return Polynomial(std::move(ascending));
}

Matrix augment(const RecurrenceSystem& system) {
    system.validate();
    const std::size_t n = system.order();
    Matrix out(n + 1, std::vector<Rational>(n + 1, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out[i][j] = system.coefficients[i][j];
        }
        out[i][n] = system.affine[i];
    }
    out[n][n] = Rational(1);
    return out;
}

std::vector<Rational> hamilton_cayley_betas(const Polynomial& phi) {
    const int m = phi.degree();
    if (m < 1) throw Error("hamilton_cayley_betas: constant polynomial");
    const Rational sign = m % 2 == 0 ? Rational(-1) : Rational(1); // (-1)^(m+1)
    std::vector<Rational> betas(static_cast<std::size_t>(m));
    for (int j = 1; j <= m; ++j) {
        betas[static_cast<std::size_t>(j - 1)] =
            sign * phi.coeff(static_cast<std::size_t>(m - j));
    }
    return betas;
}

RegularRecurrence decouple_homogeneous(const RecurrenceSystem& system) {
    system.validate();
    if (!system.homogeneous()) {
        throw StructuralError("decouple_homogeneous: system has a nonzero affine term");
    }
    return {RecurrenceKind::homogeneous,
            hamilton_cayley_betas(char_poly(system.coefficients)),
            std::nullopt};
}

RegularRecurrence decouple_affine(const RecurrenceSystem& system) {
    return {RecurrenceKind::augmented,
            hamilton_cayley_betas(char_poly(augment(system))),
            std::nullopt};
}

RegularRecurrence direct_affine_small(const RecurrenceSystem& system) {
    system.validate();
    const std::size_t n = system.order();
    if (n > 3) {
        throw UnsupportedError(
            "direct_affine_small: explicit constants are derived for orders 1..3 only");
    }

    std::vector<Rational> tail(n);
    const auto& m = system.coefficients;
    const auto& t = system.affine;
    if (n == 1) {
        tail[0] = t[0];
    } else if (n == 2) {
        tail[0] = t[0] * (Rational(1) - m[1][1]) + t[1] * m[0][1];
        tail[1] = t[1] * (Rational(1) - m[0][0]) + t[0] * m[1][0];
    } else {
        // Each variable keeps its own constant: the leading 1-minus-trace
        // part, the incoming first-order terms, and the 2x2 cofactor mix.
        auto tail3 = [&](std::size_t i, std::size_t j, std::size_t k) {
            return t[i] * (Rational(1) - m[j][j] - m[k][k]) +
                   t[j] * m[i][j] + t[k] * m[i][k] +
                   t[i] * (m[j][j] * m[k][k] - m[j][k] * m[k][j]) +
                   t[j] * (m[i][k] * m[k][j] - m[k][k] * m[i][j]) +
                   t[k] * (m[i][j] * m[j][k] - m[j][j] * m[i][k]);
        };
        tail[0] = tail3(0, 1, 2);
        tail[1] = tail3(1, 0, 2);
        tail[2] = tail3(2, 0, 1);
    }

    return {RecurrenceKind::direct_tail,
            hamilton_cayley_betas(char_poly(system.coefficients)),
            std::move(tail)};
}

} // namespace simrec

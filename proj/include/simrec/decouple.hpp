#pragma once

#include <optional>
#include <vector>

#include "simrec/polynomial.hpp"
#include "simrec/system.hpp"

namespace simrec {

enum class RecurrenceKind { homogeneous, augmented, direct_tail };

/**
 * A single-variable linear recurrence shared by every variable of a
 * decoupled system:
 *
 *     y(x) = betas[0]*y(x-1) + ... + betas[m-1]*y(x-m)  [+ tail[i]]
 *
 * kind == augmented: order n+1, betas sum to 1, no tail.
 * kind == homogeneous: order n, no tail.
 * kind == direct_tail: order n, one tail entry per system variable.
 * Holds on trajectories for every step x >= order().
 */
struct RegularRecurrence {
    RecurrenceKind kind;
    std::vector<Rational> betas;
    std::optional<std::vector<Rational>> tail;

    std::size_t order() const { return betas.size(); }
};

// det(A - t*I) as an exact polynomial; degree n, leading coefficient
// (-1)^n. Faddeev-LeVerrier iteration. Throws Error on non-square input.
Polynomial char_poly(const Matrix& matrix);

// The (n+1)x(n+1) matrix of the system extended with the trivial
// equation 1 = 0 + ... + 0 + 1: top-left block is the coefficient
// matrix, last column holds the affine terms over a 1, last row is
// (0, ..., 0, 1).
Matrix augment(const RecurrenceSystem& system);

// The one sign rule both reductions share: for an m x m matrix with
// characteristic polynomial phi, beta_j = (-1)^(m+1) * u_j where u_j is
// the coefficient of t^(m-j), j = 1..m.
std::vector<Rational> hamilton_cayley_betas(const Polynomial& phi);

// Order-n recurrence for a system without affine terms.
// Throws StructuralError when an affine term is nonzero.
RegularRecurrence decouple_homogeneous(const RecurrenceSystem& system);

// Order-(n+1) recurrence for any system, via the augmented matrix.
// The betas always sum to 1.
RegularRecurrence decouple_affine(const RecurrenceSystem& system);

// Order-n recurrence with explicit per-variable constants, available for
// n in {1, 2, 3} only. Throws UnsupportedError for larger orders.
RegularRecurrence direct_affine_small(const RecurrenceSystem& system);

} // namespace simrec

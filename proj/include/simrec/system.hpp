#pragma once

#include <string>
#include <vector>

#include "simrec/rational.hpp"

namespace simrec {

using Matrix = std::vector<std::vector<Rational>>;

/**
 * A system of simultaneous first-order linear recurrences
 *
 *     y_i(x) = sum_j coefficients[i][j] * y_j(x-1) + affine[i]
 *
 * over n variables, with initial values y_i(0). Rows follow the
 * declaration order of the left-hand sides in the source text.
 */
struct RecurrenceSystem {
    std::vector<std::string> names;   // n distinct identifiers
    Matrix coefficients;              // n x n
    std::vector<Rational> affine;     // n
    std::vector<Rational> initial;    // n

    std::size_t order() const { return names.size(); }
    bool homogeneous() const;
    int index_of(const std::string& name) const; // -1 when absent
    Rational row_sum(std::size_t i) const;       // coefficient row only

    // Shape invariants (square matrix, matching lengths, unique names).
    // Throws Error when violated.
    void validate() const;

    bool operator==(const RecurrenceSystem&) const = default;
};

// Row/column sums of the coefficient matrix (affine terms excluded) and
// exact all-equal flags.
struct SumProfile {
    std::vector<Rational> row_sums;
    std::vector<Rational> col_sums;
    bool rows_equal = false;
    bool cols_equal = false;
};

SumProfile sum_profile(const RecurrenceSystem& system);

enum class RenderFormat { text, structured };

// text: the equation-file grammar; re-parses to an identical system.
// structured: JSON document {order, names, coefficients, affine, initial}
// with every rational as a string ("37/6"), never a float.
std::string render_system(const RecurrenceSystem& system, RenderFormat format);

} // namespace simrec

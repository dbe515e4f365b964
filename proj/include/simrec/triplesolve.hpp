#pragma once

#include <array>
#include <optional>

#include "simrec/pairsolve.hpp"
#include "simrec/system.hpp"

namespace simrec {

enum class WeightProvenance { coefficient_proportion, initial_value_propagation };

/**
 * Invariant weights of an order-3 system: w1 + w2 = 1 and
 * b(x) = w1*a(x) + w2*c(x) along the whole trajectory. provenance
 * records which condition established them.
 */
struct WeightPair {
    Rational w1;
    Rational w2;
    WeightProvenance provenance;
};

/**
 * Searches for invariant weights.
 *
 * Strategy A (coefficient proportion): solve w1 from a column where the
 * a- and c-rows differ, then verify row b = w1*row a + w2*row c and the
 * same proportion for the affine terms.
 *
 * Strategy B (initial values): when a0 != c0, w1 = (b0-c0)/(a0-c0); the
 * weights must then propagate, i.e. with
 *   ca = a21-w1*a11-w2*a31, cb = a22-w1*a12-w2*a32,
 *   cc = a23-w1*a13-w2*a33, c0 = t2-w1*t1-w2*t3
 * the conditions ca + w1*cb = 0, cc + w2*cb = 0, c0 = 0 hold. When
 * a0 = b0 = c0 the step-0 constraint is void and the propagation
 * conditions become polynomials of degree <= 2 in w1, solved exactly
 * over the rationals; no rational root means no weights.
 *
 * Absence is a value, not an error.
 */
std::optional<WeightPair> detect_weights(const RecurrenceSystem& system3);

/**
 * The three order-2 systems an order-3 system reduces to under the
 * invariant: (a,b) by substituting c, (a,c) by substituting b, (b,c) by
 * substituting a. A pair whose substitution would divide by a zero
 * weight is absent: w2 = 0 removes ab, w1 = 0 removes bc; ac needs no
 * division and is always present.
 */
struct PairReduction {
    std::optional<RecurrenceSystem> ab;
    std::optional<RecurrenceSystem> ac;
    std::optional<RecurrenceSystem> bc;
};

PairReduction reduce_to_pairs(const RecurrenceSystem& system3, const WeightPair& w);

/**
 * Constants of the order-3 closed form:
 *   C1 = a11+a12+a13          C3 = a11 - r*a13 - s21 + r*s23
 *   C2 = a12 + (1/w2)*a13     C5 = s21 - r*s23,   C4 = C2 + C5
 * with r = w1/w2 and (s21, s22, s23) the replaced b-row
 * s2j = w1*a1j + w2*a3j (star_row); alpha2_star = w1*t1 + w2*t3. The
 * strict variant uses the actual b-row instead. case_id follows the same
 * five-way dispatch as the order-2 row lemma with C4 in the role of
 * a12+a21, C1 of S and C3 of D.
 */
struct TripleConstants {
    Rational C1, C2, C3, C4, C5;
    Rational alpha2_star;
    std::array<Rational, 3> star_row;
    int case_id = 0;
};

// Replaced-row constants; requires w2 != 0 and equal a/c row sums.
TripleConstants triple_constants(const RecurrenceSystem& system3, const WeightPair& w);

// Constants from the actual b-row; additionally requires all three row
// sums equal. Coincides with triple_constants when the coefficient
// proportion holds.
TripleConstants triple_constants_strict(const RecurrenceSystem& system3,
                                        const WeightPair& w);

/**
 * Exact evaluator for all three variables. a and b come from the
 * five-case formulas with alpha2_star in place of the b-affine term; c
 * is always recovered as (b - w1*a)/w2. evaluate(0) returns the initial
 * values directly.
 */
class ClosedFormTriple {
public:
    ClosedFormTriple(RecurrenceSystem source, WeightPair w, TripleConstants constants);

    std::array<Rational, 3> operator()(unsigned long x) const;

    const TripleConstants& constants() const { return constants_; }
    const WeightPair& weights() const { return weights_; }
    const RecurrenceSystem& source() const { return source_; }

private:
    RecurrenceSystem source_;
    WeightPair weights_;
    TripleConstants constants_;
};

// Requires the invariant to hold at step 0 (b0 = w1*a0 + w2*c0) and the
// preconditions of triple_constants; StructuralError otherwise.
ClosedFormTriple closed_form_triple(const RecurrenceSystem& system3,
                                    const WeightPair& w);

} // namespace simrec

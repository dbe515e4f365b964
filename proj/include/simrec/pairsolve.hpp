#pragma once

#include <utility>

#include "simrec/system.hpp"

namespace simrec {

enum class PairMode { row, column };

/**
 * Constants behind the order-2 closed forms: S = a11+a12, D = a11-a21,
 * delta = t2-t1, delta0 = b0-a0, and the case id the exact-equality
 * dispatch selected:
 *
 *   1: a12 != -a21, S != 1, D != 1      4: a12 == -a21, S != 1
 *   2: a12 != -a21, S == 1              5: a12 == -a21, S == 1
 *   3: a12 != -a21, D == 1, S != 1
 *
 * In column mode S and D hold the two bases a11+a21 and a11-a12 and the
 * only supported case id is 1.
 */
struct PairConstants {
    Rational S;
    Rational D;
    Rational delta;
    Rational delta0;
    int case_id = 0;
};

// Case id for an order-2 system. Row mode requires equal row sums,
// column mode equal column sums (StructuralError otherwise). Column mode
// throws UnsupportedError outside its single stated case.
int classify_pair(const RecurrenceSystem& system2, PairMode mode);

/**
 * Exact evaluator for both variables of an order-2 system. evaluate(0)
 * returns the initial values directly: cases 4 and 5 contain S^(x-1),
 * which is undefined at x = 0 when S = 0.
 */
class ClosedFormPair {
public:
    ClosedFormPair(RecurrenceSystem source, PairConstants constants, PairMode mode);

    std::pair<Rational, Rational> operator()(unsigned long x) const;

    const PairConstants& constants() const { return constants_; }
    const RecurrenceSystem& source() const { return source_; }
    PairMode mode() const { return mode_; }

private:
    RecurrenceSystem source_;
    PairConstants constants_;
    PairMode mode_;
};

// Closed form under equal row sums; all five cases.
ClosedFormPair closed_form_pair_row(const RecurrenceSystem& system2);

// Closed form under equal column sums; the single stated case
// (a12 != -a21, a11-a12 != 1, a11+a21 != 1), else UnsupportedError.
ClosedFormPair closed_form_pair_col(const RecurrenceSystem& system2);

/**
 * Evaluator for the difference b(x) - a(x) of an equal-row-sum pair:
 * D != 1: D^x*delta0 + delta*(D^x-1)/(D-1); D == 1: delta0 + x*delta.
 */
class DifferenceClosedForm {
public:
    DifferenceClosedForm(Rational big_d, Rational delta, Rational delta0);
    Rational operator()(unsigned long x) const;

    const Rational& D() const { return d_; }
    const Rational& delta() const { return delta_; }
    const Rational& delta0() const { return delta0_; }

private:
    Rational d_, delta_, delta0_;
};

DifferenceClosedForm difference_closed_form(const RecurrenceSystem& system2);

// The five case bodies, shared with the order-3 theorems (there S, D,
// m12, m21, t2 become C1, C3, C2, C5, alpha2*). Callers guarantee x >= 1
// and the case preconditions; under them S - D is the only mixing
// denominator and is nonzero whenever it is used.
std::pair<Rational, Rational> pair_case_values(
    int case_id, const Rational& S, const Rational& D, const Rational& m12,
    const Rational& m21, const Rational& t1, const Rational& t2,
    const Rational& a0, const Rational& b0, unsigned long x);

} // namespace simrec

#include "simrec/pairsolve.hpp"

#include "simrec/errors.hpp"

namespace simrec {

namespace {

void require_order2(const RecurrenceSystem& s) {
    s.validate();
    if (s.order() != 2) throw StructuralError("expected an order-2 system");
}

void require_row_sums(const RecurrenceSystem& s) {
    if (s.row_sum(0) != s.row_sum(1)) {
        throw StructuralError("row sums differ: " + s.row_sum(0).str() + " vs " +
                              s.row_sum(1).str());
    }
}

void require_col_sums(const RecurrenceSystem& s) {
    const Rational c0 = s.coefficients[0][0] + s.coefficients[1][0];
    const Rational c1 = s.coefficients[0][1] + s.coefficients[1][1];
    if (c0 != c1) {
        throw StructuralError("column sums differ: " + c0.str() + " vs " + c1.str());
    }
}

} // namespace

std::pair<Rational, Rational> pair_case_values(
    int case_id, const Rational& S, const Rational& D, const Rational& m12,
    const Rational& m21, const Rational& t1, const Rational& t2,
    const Rational& a0, const Rational& b0, unsigned long x) {
    const Rational one(1);
    const Rational step(x);
    const Rational d0 = b0 - a0;
    const Rational dt = t2 - t1;
    const Rational sx = pow(S, x);

    switch (case_id) {
        case 1: {
            const Rational dx = pow(D, x);
            const Rational mix = (sx - dx) / (S - D);
            const Rational geo = (sx - one) / (S - one);
            const Rational bracket = (sx - S) / (S - one) - (dx - D) / (D - one);
            return {sx * a0 + m12 * d0 * mix + t1 * geo + m12 * dt / (S - D) * bracket,
                    sx * b0 - m21 * d0 * mix + t2 * geo - m21 * dt / (S - D) * bracket};
        }
        case 2: { // S == 1
            const Rational dx = pow(D, x);
            const Rational mix = (sx - dx) / (S - D);
            const Rational bracket = (dx - D) / (D - one) - step + one;
            return {sx * a0 + m12 * d0 * mix + t1 * step + m12 * dt / (D - one) * bracket,
                    sx * b0 - m21 * d0 * mix + t2 * step - m21 * dt / (D - one) * bracket};
        }
        case 3: { // D == 1
            const Rational dx = pow(D, x);
            const Rational mix = (sx - dx) / (S - D);
            const Rational geo = (sx - one) / (S - one);
            const Rational bracket = (sx - S) / (S - one) - step + one;
            return {sx * a0 + m12 * d0 * mix + t1 * geo + m12 * dt / (S - one) * bracket,
                    sx * b0 - m21 * d0 * mix + t2 * geo - m21 * dt / (S - one) * bracket};
        }
        case 4: { // S == D, S != 1
            const Rational sx1 = pow(S, x - 1);
            const Rational geo = (sx - one) / (S - one);
            const Rational den2 = (S - one) * (S - one);
            const Rational ramp = (step - one) * sx - step * sx1 + one;
            return {sx1 * (S * a0 + m12 * d0 * step) + t1 * geo + m12 * dt / den2 * ramp,
                    sx1 * (S * b0 - m21 * d0 * step) + t2 * geo - m21 * dt / den2 * ramp};
        }
        case 5: { // S == D == 1
            const Rational sx1 = pow(S, x - 1);
            const Rational tri = step * (step - one) / Rational(2);
            return {sx1 * (S * a0 + m12 * d0 * step) + t1 * step + m12 * dt * tri,
                    sx1 * (S * b0 - m21 * d0 * step) + t2 * step - m21 * dt * tri};
        }
        default:
            throw Error("pair_case_values: case id out of range");
    }
}

int classify_pair(const RecurrenceSystem& system2, PairMode mode) {
    require_order2(system2);
    const auto& m = system2.coefficients;
    const Rational one(1);

    if (mode == PairMode::row) {
        require_row_sums(system2);
        const Rational S = m[0][0] + m[0][1];
        const Rational D = m[0][0] - m[1][0];
        if (m[0][1] == -m[1][0]) {
            return S == one ? 5 : 4;
        }
        if (S == one) return 2;
        if (D == one) return 3;
        return 1;
    }

    require_col_sums(system2);
    if (m[0][1] != -m[1][0] && m[0][0] - m[0][1] != one && m[0][0] + m[1][0] != one) {
        return 1;
    }
    throw UnsupportedError("column closed form covers only its nondegenerate case");
}

ClosedFormPair::ClosedFormPair(RecurrenceSystem source, PairConstants constants,
                               PairMode mode)
    : source_(std::move(source)), constants_(constants), mode_(mode) {}

std::pair<Rational, Rational> ClosedFormPair::operator()(unsigned long x) const {
    if (x == 0) return {source_.initial[0], source_.initial[1]};
    const auto& m = source_.coefficients;
    if (mode_ == PairMode::row) {
        return pair_case_values(constants_.case_id, constants_.S, constants_.D,
                                m[0][1], m[1][0], source_.affine[0],
                                source_.affine[1], source_.initial[0],
                                source_.initial[1], x);
    }

    // Column case: bases P = a11 - a12 and Q = a11 + a21; the mixing term
    // carries a0 + b0 and the forcing bracket carries t1 + t2.
    const Rational one(1);
    const Rational p = m[0][0] - m[0][1];
    const Rational q = m[0][0] + m[1][0];
    const Rational px = pow(p, x);
    const Rational qx = pow(q, x);
    const Rational cross = m[0][1] + m[1][0];
    const Rational mix = (qx - px) / cross;
    const Rational sum0 = source_.initial[0] + source_.initial[1];
    const Rational sumt = source_.affine[0] + source_.affine[1];
    const Rational geo = (px - one) / (p - one);
    const Rational bracket = (qx - q) / (q - one) - (px - p) / (p - one);
    const Rational ax = px * source_.initial[0] + m[0][1] * sum0 * mix +
                        source_.affine[0] * geo + m[0][1] * sumt / cross * bracket;
    const Rational bx = px * source_.initial[1] + m[1][0] * sum0 * mix +
                        source_.affine[1] * geo + m[1][0] * sumt / cross * bracket;
    return {ax, bx};
}

ClosedFormPair closed_form_pair_row(const RecurrenceSystem& system2) {
    PairConstants k;
    k.case_id = classify_pair(system2, PairMode::row);
    const auto& m = system2.coefficients;
    k.S = m[0][0] + m[0][1];
    k.D = m[0][0] - m[1][0];
    k.delta = system2.affine[1] - system2.affine[0];
    k.delta0 = system2.initial[1] - system2.initial[0];
    return ClosedFormPair(system2, k, PairMode::row);
}

ClosedFormPair closed_form_pair_col(const RecurrenceSystem& system2) {
    PairConstants k;
    k.case_id = classify_pair(system2, PairMode::column);
    const auto& m = system2.coefficients;
    k.S = m[0][0] + m[1][0];
    k.D = m[0][0] - m[0][1];
    k.delta = system2.affine[1] - system2.affine[0];
    k.delta0 = system2.initial[1] - system2.initial[0];
    return ClosedFormPair(system2, k, PairMode::column);
}

DifferenceClosedForm::DifferenceClosedForm(Rational big_d, Rational delta,
                                           Rational delta0)
    : d_(std::move(big_d)), delta_(std::move(delta)), delta0_(std::move(delta0)) {}

Rational DifferenceClosedForm::operator()(unsigned long x) const {
    if (d_ == Rational(1)) {
        return delta0_ + Rational(x) * delta_;
    }
    const Rational dx = pow(d_, x);
    return dx * delta0_ + delta_ * (dx - Rational(1)) / (d_ - Rational(1));
}

DifferenceClosedForm difference_closed_form(const RecurrenceSystem& system2) {
    require_order2(system2);
    require_row_sums(system2);
    return DifferenceClosedForm(
        system2.coefficients[0][0] - system2.coefficients[1][0],
        system2.affine[1] - system2.affine[0],
        system2.initial[1] - system2.initial[0]);
}

} // namespace simrec

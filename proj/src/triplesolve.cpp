#include "simrec/triplesolve.hpp"

#include <algorithm>
#include <vector>

#include "simrec/errors.hpp"

namespace simrec {

namespace {

void require_order3(const RecurrenceSystem& s) {
    s.validate();
    if (s.order() != 3) throw StructuralError("expected an order-3 system");
}

void require_outer_row_sums(const RecurrenceSystem& s) {
    if (s.row_sum(0) != s.row_sum(2)) {
        throw StructuralError("rows a and c have different sums: " +
                              s.row_sum(0).str() + " vs " + s.row_sum(2).str());
    }
}

// Mismatch of row b against the weighted combination of rows a and c.
struct Propagation {
    Rational ca, cb, cc, c0;
};

Propagation propagation_terms(const RecurrenceSystem& s, const Rational& w1) {
    const Rational w2 = Rational(1) - w1;
    const auto& m = s.coefficients;
    return {m[1][0] - w1 * m[0][0] - w2 * m[2][0],
            m[1][1] - w1 * m[0][1] - w2 * m[2][1],
            m[1][2] - w1 * m[0][2] - w2 * m[2][2],
            s.affine[1] - w1 * s.affine[0] - w2 * s.affine[2]};
}

bool proportion_holds(const RecurrenceSystem& s, const Rational& w1) {
    const Propagation p = propagation_terms(s, w1);
    return p.ca.is_zero() && p.cb.is_zero() && p.cc.is_zero() && p.c0.is_zero();
}

// The invariant error e(x) = b - w1*a - w2*c obeys e(x) = cb*e(x-1) as
// soon as ca = -w1*cb, cc = -w2*cb and c0 = 0; with e(0) = 0 it then
// vanishes for every x.
bool propagation_holds(const RecurrenceSystem& s, const Rational& w1) {
    const Rational w2 = Rational(1) - w1;
    const Propagation p = propagation_terms(s, w1);
    return (p.ca + w1 * p.cb).is_zero() && (p.cc + w2 * p.cb).is_zero() &&
           p.c0.is_zero();
}

std::optional<Rational> solve_proportion_weight(const RecurrenceSystem& s) {
    // Each column j contributes w1*(a1j - a3j) = a2j - a3j; the affine
    // terms contribute the same shape.
    std::optional<Rational> w1;
    const auto& m = s.coefficients;
    std::vector<std::pair<Rational, Rational>> constraints; // slope, rhs
    for (std::size_t j = 0; j < 3; ++j) {
        constraints.emplace_back(m[0][j] - m[2][j], m[1][j] - m[2][j]);
    }
    constraints.emplace_back(s.affine[0] - s.affine[2], s.affine[1] - s.affine[2]);

    for (const auto& [slope, rhs] : constraints) {
        if (!slope.is_zero()) {
            const Rational candidate = rhs / slope;
            if (w1 && *w1 != candidate) return std::nullopt;
            w1 = candidate;
        } else if (!rhs.is_zero()) {
            return std::nullopt;
        }
    }
    // All rows identical: any weight works; pick the midpoint.
    if (!w1) w1 = Rational(1, 2);
    if (!proportion_holds(s, *w1)) return std::nullopt;
    return w1;
}

// p2*w1^2 + p1*w1 + p0.
struct Quadratic {
    Rational p2, p1, p0;
    bool trivial() const { return p2.is_zero() && p1.is_zero() && p0.is_zero(); }
};

std::vector<Rational> rational_roots(const Quadratic& q) {
    std::vector<Rational> roots;
    if (q.p2.is_zero()) {
        if (!q.p1.is_zero()) roots.push_back(-q.p0 / q.p1);
        return roots;
    }
    const Rational disc = q.p1 * q.p1 - Rational(4) * q.p2 * q.p0;
    const auto root = exact_sqrt(disc);
    if (!root) return roots;
    const Rational two_a = Rational(2) * q.p2;
    roots.push_back((-q.p1 + *root) / two_a);
    if (!root->is_zero()) roots.push_back((-q.p1 - *root) / two_a);
    return roots;
}

// a0 = b0 = c0: every weight satisfies step 0, so the propagation
// conditions alone pin w1. Each is a polynomial of degree <= 2.
std::optional<Rational> solve_propagation_weight(const RecurrenceSystem& s) {
    const auto& m = s.coefficients;
    const Rational da = m[0][0] - m[2][0], db = m[0][1] - m[2][1], dc = m[0][2] - m[2][2];
    const Rational ea = m[1][0] - m[2][0], eb = m[1][1] - m[2][1], ec = m[1][2] - m[2][2];

    // ca + w1*cb = 0, cc + w2*cb = 0, c0 = 0 expanded in w1:
    const Quadratic first{-db, eb - da, ea};
    const Quadratic second{db, -(dc + eb + db), ec + eb};
    const Quadratic affine{Rational(0), -(s.affine[0] - s.affine[2]),
                           s.affine[1] - s.affine[2]};

    std::optional<std::vector<Rational>> candidates;
    for (const Quadratic& q : {first, second, affine}) {
        if (q.trivial()) continue;
        std::vector<Rational> roots = rational_roots(q);
        if (!candidates) {
            candidates = std::move(roots);
        } else {
            std::vector<Rational> kept;
            for (const auto& r : *candidates) {
                if (std::find(roots.begin(), roots.end(), r) != roots.end()) {
                    kept.push_back(r);
                }
            }
            candidates = std::move(kept);
        }
    }
    if (!candidates) return Rational(1, 2); // unconstrained

    // Prefer weights that keep every pair reduction available.
    std::sort(candidates->begin(), candidates->end());
    std::stable_partition(candidates->begin(), candidates->end(), [](const Rational& r) {
        return !r.is_zero() && r != Rational(1);
    });
    for (const auto& w1 : *candidates) {
        if (propagation_holds(s, w1)) return w1;
    }
    return std::nullopt;
}

int classify_triple(const Rational& C4, const Rational& C1, const Rational& C3) {
    const Rational one(1);
    if (!C4.is_zero()) {
        if (C1 == one) return 2;
        if (C3 == one) return 3;
        return 1;
    }
    return C1 == one ? 5 : 4;
}

TripleConstants make_constants(const RecurrenceSystem& s, const WeightPair& w,
                               bool replace_row) {
    if (w.w2.is_zero()) {
        throw StructuralError("w2 = 0: the (a,b) reduction is unavailable");
    }
    const auto& m = s.coefficients;
    const Rational ratio = w.w1 / w.w2;

    TripleConstants k;
    if (replace_row) {
        k.star_row = {w.w1 * m[0][0] + w.w2 * m[2][0],
                      w.w1 * m[0][1] + w.w2 * m[2][1],
                      w.w1 * m[0][2] + w.w2 * m[2][2]};
        k.alpha2_star = w.w1 * s.affine[0] + w.w2 * s.affine[2];
    } else {
        k.star_row = {m[1][0], m[1][1], m[1][2]};
        k.alpha2_star = s.affine[1];
    }
    k.C1 = s.row_sum(0);
    k.C2 = m[0][1] + m[0][2] / w.w2;
    k.C5 = k.star_row[0] - ratio * k.star_row[2];
    k.C3 = m[0][0] - ratio * m[0][2] - k.C5;
    k.C4 = k.C2 + k.C5;
    k.case_id = classify_triple(k.C4, k.C1, k.C3);
    return k;
}

} // namespace

std::optional<WeightPair> detect_weights(const RecurrenceSystem& system3) {
    require_order3(system3);

    if (auto w1 = solve_proportion_weight(system3)) {
        return WeightPair{*w1, Rational(1) - *w1,
                          WeightProvenance::coefficient_proportion};
    }

    const Rational& a0 = system3.initial[0];
    const Rational& b0 = system3.initial[1];
    const Rational& c0 = system3.initial[2];
    if (a0 != c0) {
        const Rational w1 = (b0 - c0) / (a0 - c0);
        if (propagation_holds(system3, w1)) {
            return WeightPair{w1, Rational(1) - w1,
                              WeightProvenance::initial_value_propagation};
        }
        return std::nullopt;
    }
    if (b0 != a0) return std::nullopt; // b0 = w1*a0 + w2*c0 is unsatisfiable

    if (auto w1 = solve_propagation_weight(system3)) {
        return WeightPair{*w1, Rational(1) - *w1,
                          WeightProvenance::initial_value_propagation};
    }
    return std::nullopt;
}

PairReduction reduce_to_pairs(const RecurrenceSystem& system3, const WeightPair& w) {
    require_order3(system3);
    require_outer_row_sums(system3);
    const auto& m = system3.coefficients;
    const auto& t = system3.affine;
    const auto& y0 = system3.initial;
    const auto& nm = system3.names;

    PairReduction out;
    if (!w.w2.is_zero()) {
        const Rational ratio = w.w1 / w.w2;
        const Rational inv = Rational(1) / w.w2;
        out.ab = RecurrenceSystem{
            {nm[0], nm[1]},
            {{m[0][0] - ratio * m[0][2], m[0][1] + inv * m[0][2]},
             {m[1][0] - ratio * m[1][2], m[1][1] + inv * m[1][2]}},
            {t[0], t[1]},
            {y0[0], y0[1]}};
    }
    out.ac = RecurrenceSystem{
        {nm[0], nm[2]},
        {{m[0][0] + w.w1 * m[0][1], w.w2 * m[0][1] + m[0][2]},
         {m[2][0] + w.w1 * m[2][1], w.w2 * m[2][1] + m[2][2]}},
        {t[0], t[2]},
        {y0[0], y0[2]}};
    if (!w.w1.is_zero()) {
        const Rational inv = Rational(1) / w.w1;
        const Rational ratio = w.w2 / w.w1;
        out.bc = RecurrenceSystem{
            {nm[1], nm[2]},
            {{inv * m[1][0] + m[1][1], -ratio * m[1][0] + m[1][2]},
             {inv * m[2][0] + m[2][1], -ratio * m[2][0] + m[2][2]}},
            {t[1], t[2]},
            {y0[1], y0[2]}};
    }
    return out;
}

TripleConstants triple_constants(const RecurrenceSystem& system3, const WeightPair& w) {
    require_order3(system3);
    require_outer_row_sums(system3);
    return make_constants(system3, w, /*replace_row=*/true);
}

TripleConstants triple_constants_strict(const RecurrenceSystem& system3,
                                        const WeightPair& w) {
    require_order3(system3);
    require_outer_row_sums(system3);
    if (system3.row_sum(1) != system3.row_sum(0)) {
        throw StructuralError("row b has a different sum: " +
                              system3.row_sum(1).str() + " vs " +
                              system3.row_sum(0).str());
    }
    return make_constants(system3, w, /*replace_row=*/false);
}

ClosedFormTriple::ClosedFormTriple(RecurrenceSystem source, WeightPair w,
                                   TripleConstants constants)
    : source_(std::move(source)), weights_(std::move(w)), constants_(std::move(constants)) {}

std::array<Rational, 3> ClosedFormTriple::operator()(unsigned long x) const {
    if (x == 0) {
        return {source_.initial[0], source_.initial[1], source_.initial[2]};
    }
    const auto [ax, bx] = pair_case_values(
        constants_.case_id, constants_.C1, constants_.C3, constants_.C2,
        constants_.C5, source_.affine[0], constants_.alpha2_star,
        source_.initial[0], source_.initial[1], x);
    const Rational cx = (bx - weights_.w1 * ax) / weights_.w2;
    return {ax, bx, cx};
}

ClosedFormTriple closed_form_triple(const RecurrenceSystem& system3,
                                    const WeightPair& w) {
    const TripleConstants k = triple_constants(system3, w);
    if (system3.initial[1] != w.w1 * system3.initial[0] + w.w2 * system3.initial[2]) {
        throw StructuralError("initial values violate b0 = w1*a0 + w2*c0");
    }
    return ClosedFormTriple(system3, w, k);
}

} // namespace simrec

#include <doctest.h>

#include "simrec/oracle.hpp"
#include "simrec/parser.hpp"
#include "simrec/triplesolve.hpp"
#include "support.hpp"

using namespace simrec;
using simrec::testing::rat;

namespace {

// The row-lemma fixtures reused as reduction targets (see test_pairsolve).
RecurrenceSystem pair_fixture(int case_id, testing::Rng& rng) {
    RecurrenceSystem s;
    s.names = {"a", "b"};
    auto fill = [&](const char* m00, const char* m01, const char* m10, const char* m11) {
        s.coefficients = {{rat(m00), rat(m01)}, {rat(m10), rat(m11)}};
    };
    switch (case_id) {
        case 1: fill("1", "1", "2", "0"); break;
        case 2: fill("1/2", "1/2", "1", "0"); break;
        case 3: fill("2", "1", "1", "2"); break;
        case 4: fill("2", "1", "-1", "4"); break;
        default: fill("1/2", "1/2", "-1/2", "3/2"); break;
    }
    s.affine = {rng.small_rational(), rng.small_rational()};
    s.initial = {rng.small_rational(), rng.small_rational()};
    return s;
}

Rational nondegenerate_weight(testing::Rng& rng) {
    while (true) {
        const Rational w1 = rng.small_rational();
        if (!w1.is_zero() && w1 != rat("1")) return w1;
    }
}

void check_triple_matches_oracle(const ClosedFormTriple& cf, const RecurrenceSystem& s,
                                 unsigned long steps) {
    const Trajectory t = iterate(s, steps);
    for (unsigned long x = 0; x <= steps; ++x) {
        const auto v = cf(x);
        CHECK(v[0] == t.at(x, 0));
        CHECK(v[1] == t.at(x, 1));
        CHECK(v[2] == t.at(x, 2));
    }
}

} // namespace

TEST_CASE("weights of the integer triple come from the coefficient proportion") {
    const RecurrenceSystem s = parse_system(testing::kTripleIntText);
    const auto w = detect_weights(s);
    REQUIRE(w);
    CHECK(w->w1 == rat("1/2"));
    CHECK(w->w2 == rat("1/2"));
    CHECK(w->provenance == WeightProvenance::coefficient_proportion);
}

TEST_CASE("weights of the fractional triple come from the initial values") {
    const RecurrenceSystem s = parse_system(testing::kTripleFracText);
    const auto w = detect_weights(s);
    REQUIRE(w);
    CHECK(w->w1 == rat("13/19"));
    CHECK(w->w2 == rat("6/19"));
    CHECK(w->provenance == WeightProvenance::initial_value_propagation);
    CHECK(check_invariant(iterate(s, 20), *w));
}

TEST_CASE("no weights when the initial values cannot carry the invariant") {
    RecurrenceSystem s = parse_system(testing::kTripleFracText);
    s.initial = {rat("0"), rat("1"), rat("0")};
    CHECK(!detect_weights(s));
}

TEST_CASE("equal initial values fall back to the exact quadratic") {
    // no coefficient proportion for any weight (column 1 wants w1 = 0,
    // column 2 wants w1 = 3/2), but the propagation conditions have the
    // rational roots {0, 1/2}; the nondegenerate one wins
    const RecurrenceSystem s = parse_system(
        "a[x] = 2*a[x-1] + 4*b[x-1] + 1\n"
        "b[x] = 5*b[x-1] + c[x-1] + 1\n"
        "c[x] = 2*b[x-1] + 4*c[x-1] + 1\n"
        "init: a = 3, b = 3, c = 3\n");
    const auto w = detect_weights(s);
    REQUIRE(w);
    CHECK(w->w1 == rat("1/2"));
    CHECK(w->provenance == WeightProvenance::initial_value_propagation);
    CHECK(check_invariant(iterate(s, 12), *w));

    // same equations but unequal b0 make the step-0 invariant impossible
    RecurrenceSystem off = s;
    off.initial = {rat("3"), rat("4"), rat("3")};
    CHECK(!detect_weights(off));
}

TEST_CASE("pair reductions of the integer triple") {
    const RecurrenceSystem s = parse_system(testing::kTripleIntText);
    const WeightPair w{rat("1/2"), rat("1/2"), WeightProvenance::coefficient_proportion};
    const PairReduction pairs = reduce_to_pairs(s, w);

    REQUIRE(pairs.ab);
    CHECK(pairs.ab->coefficients ==
          Matrix{{rat("2"), rat("4")}, {rat("-1"), rat("7")}});
    CHECK(pairs.ab->row_sum(0) == rat("6"));
    CHECK(pairs.ab->row_sum(1) == rat("6"));
    CHECK(pairs.ab->affine == std::vector<Rational>{rat("1"), rat("1")});
    CHECK(pairs.ab->initial == std::vector<Rational>{rat("0"), rat("0")});

    REQUIRE(pairs.ac);
    REQUIRE(pairs.bc);
    CHECK(pairs.ac->names == std::vector<std::string>{"a", "c"});
    CHECK(pairs.bc->names == std::vector<std::string>{"b", "c"});
}

TEST_CASE("reductions leave the top block alone when the third column is empty") {
    testing::Rng rng(31);
    RecurrenceSystem s = testing::random_system(rng, 3);
    s.coefficients[0][2] = rat("0");
    s.coefficients[1][2] = rat("0");
    // make rows a and c share their sum
    s.coefficients[2][2] =
        s.row_sum(0) - s.coefficients[2][0] - s.coefficients[2][1];
    const WeightPair w{rat("1/3"), rat("2/3"), WeightProvenance::coefficient_proportion};
    const PairReduction pairs = reduce_to_pairs(s, w);
    REQUIRE(pairs.ab);
    CHECK(pairs.ab->coefficients[0][0] == s.coefficients[0][0]);
    CHECK(pairs.ab->coefficients[0][1] == s.coefficients[0][1]);
    CHECK(pairs.ab->coefficients[1][0] == s.coefficients[1][0]);
    CHECK(pairs.ab->coefficients[1][1] == s.coefficients[1][1]);
}

TEST_CASE("degenerate weights drop the pairs that would divide by zero") {
    const RecurrenceSystem s = parse_system(testing::kTripleIntText);
    const PairReduction no_ab = reduce_to_pairs(
        s, WeightPair{rat("1"), rat("0"), WeightProvenance::coefficient_proportion});
    CHECK(!no_ab.ab);
    CHECK(no_ab.ac);
    CHECK(no_ab.bc);

    const PairReduction no_bc = reduce_to_pairs(
        s, WeightPair{rat("0"), rat("1"), WeightProvenance::coefficient_proportion});
    CHECK(no_bc.ab);
    CHECK(no_bc.ac);
    CHECK(!no_bc.bc);
}

TEST_CASE("every reduction preserves the row-sum equality") {
    testing::Rng rng(32);
    for (int trial = 0; trial < 40; ++trial) {
        const RecurrenceSystem pair = testing::random_equal_row_sum_pair(rng);
        const Rational w1 = nondegenerate_weight(rng);
        const RecurrenceSystem s = testing::lift_pair_to_triple(
            pair, w1, rng.small_rational(), rng.small_rational());

        // the lift realizes all three lemma conditions
        const SumProfile prof = sum_profile(s);
        CHECK(prof.rows_equal);

        const WeightPair w{w1, rat("1") - w1, WeightProvenance::coefficient_proportion};
        const PairReduction pairs = reduce_to_pairs(s, w);
        for (const auto& reduced : {pairs.ab, pairs.ac, pairs.bc}) {
            if (!reduced) continue;
            CHECK(reduced->row_sum(0) == reduced->row_sum(1));
            CHECK(reduced->row_sum(0) == prof.row_sums[0]);
        }
        REQUIRE(pairs.ab);
        CHECK(pairs.ab->coefficients == pair.coefficients);
    }
}

TEST_CASE("coefficient proportion forces all three row sums equal") {
    // rows a and c with a common sum plus a synthesized b-row: the middle
    // sum matches automatically
    testing::Rng rng(33);
    for (int trial = 0; trial < 40; ++trial) {
        RecurrenceSystem s = testing::random_system(rng, 3);
        s.coefficients[2][2] =
            s.row_sum(0) - s.coefficients[2][0] - s.coefficients[2][1];
        const Rational w1 = nondegenerate_weight(rng);
        const Rational w2 = rat("1") - w1;
        for (std::size_t j = 0; j < 3; ++j) {
            s.coefficients[1][j] =
                w1 * s.coefficients[0][j] + w2 * s.coefficients[2][j];
        }
        s.affine[1] = w1 * s.affine[0] + w2 * s.affine[2];
        CHECK(s.row_sum(1) == s.row_sum(0));

        const auto w = detect_weights(s);
        REQUIRE(w);
        CHECK(w->provenance == WeightProvenance::coefficient_proportion);
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(s.coefficients[1][j] ==
                  w->w1 * s.coefficients[0][j] + w->w2 * s.coefficients[2][j]);
        }
        CHECK(s.affine[1] == w->w1 * s.affine[0] + w->w2 * s.affine[2]);
    }
}

TEST_CASE("constants of the integer triple") {
    const RecurrenceSystem s = parse_system(testing::kTripleIntText);
    const WeightPair w{rat("1/2"), rat("1/2"), WeightProvenance::coefficient_proportion};
    const TripleConstants k = triple_constants(s, w);
    CHECK(k.C1 == rat("6"));
    CHECK(k.C2 == rat("4"));
    CHECK(k.C3 == rat("3"));
    CHECK(k.C4 == rat("3"));
    CHECK(k.C5 == rat("-1"));
    CHECK(k.case_id == 1);
    CHECK(k.star_row == std::array<Rational, 3>{rat("1"), rat("3"), rat("2")});
    CHECK(k.alpha2_star == rat("1"));

    const TripleConstants strict = triple_constants_strict(s, w);
    CHECK(strict.C1 == k.C1);
    CHECK(strict.C2 == k.C2);
    CHECK(strict.C3 == k.C3);
    CHECK(strict.C4 == k.C4);
    CHECK(strict.C5 == k.C5);
    CHECK(strict.alpha2_star == k.alpha2_star);
}

TEST_CASE("constants of the identity coefficients") {
    RecurrenceSystem s;
    s.names = {"a", "b", "c"};
    s.coefficients = {{rat("1"), rat("0"), rat("0")},
                      {rat("0"), rat("1"), rat("0")},
                      {rat("0"), rat("0"), rat("1")}};
    s.affine.assign(3, rat("0"));
    s.initial = {rat("2"), rat("2"), rat("2")};
    const WeightPair w{rat("1/2"), rat("1/2"), WeightProvenance::coefficient_proportion};
    const TripleConstants k = triple_constants(s, w);
    CHECK(k.C1 == rat("1"));
    CHECK(k.C2 == rat("0"));
    CHECK(k.C5 == rat("0"));
    CHECK(k.C4 == rat("0"));
    CHECK(k.case_id == 5);
}

TEST_CASE("constants of the fractional triple") {
    const RecurrenceSystem s = parse_system(testing::kTripleFracText);
    const auto w = detect_weights(s);
    REQUIRE(w);
    const TripleConstants k = triple_constants(s, *w);

    // the replaced row differs from the written row b by 91/57 in column 1
    CHECK(s.coefficients[1][0] - k.star_row[0] == rat("91/57"));
    CHECK(k.star_row[0] != s.coefficients[1][0]);

    CHECK(k.C1 == rat("6"));
    CHECK(k.C2 == rat("-1/6"));
    CHECK(k.C3 == rat("3"));
    CHECK(k.C4 == rat("3"));
    CHECK(k.C5 == rat("19/6"));
    CHECK(k.alpha2_star == rat("2"));
    CHECK(k.case_id == 1);
}

TEST_CASE("closed form of the integer triple") {
    const RecurrenceSystem s = parse_system(testing::kTripleIntText);
    const auto w = detect_weights(s);
    REQUIRE(w);
    const ClosedFormTriple cf = closed_form_triple(s, *w);
    CHECK(cf.constants().case_id == 1);
    CHECK(cf(3)[0] == rat("43"));
    CHECK(cf(3) == std::array<Rational, 3>{rat("43"), rat("43"), rat("43")});
    check_triple_matches_oracle(cf, s, 40);
}

TEST_CASE("closed form of the fractional triple") {
    const RecurrenceSystem s = parse_system(testing::kTripleFracText);
    const auto w = detect_weights(s);
    REQUIRE(w);
    const ClosedFormTriple cf = closed_form_triple(s, *w);
    CHECK(cf(1)[1] == rat("265"));
    CHECK(cf(0) == std::array<Rational, 3>{rat("41"), rat("47"), rat("60")});
    check_triple_matches_oracle(cf, s, 40);
}

TEST_CASE("closed form rejects initial values that break the invariant") {
    RecurrenceSystem s = parse_system(testing::kTripleIntText);
    s.initial = {rat("1"), rat("5"), rat("2")}; // 5 != (1 + 2)/2
    const WeightPair w{rat("1/2"), rat("1/2"), WeightProvenance::coefficient_proportion};
    CHECK_THROWS_AS(closed_form_triple(s, w), StructuralError);

    const WeightPair degenerate{rat("1"), rat("0"),
                                WeightProvenance::coefficient_proportion};
    CHECK_THROWS_AS(closed_form_triple(parse_system(testing::kTripleIntText), degenerate),
                    StructuralError);
}

TEST_CASE("all five cases, lifted from the pair fixtures") {
    testing::Rng rng(34);
    for (int k = 1; k <= 5; ++k) {
        for (int rep = 0; rep < 6; ++rep) {
            const RecurrenceSystem pair = pair_fixture(k, rng);
            const Rational w1 = nondegenerate_weight(rng);
            const RecurrenceSystem s = testing::lift_pair_to_triple(
                pair, w1, rng.small_rational(), rng.small_rational());
            const WeightPair w{w1, rat("1") - w1,
                               WeightProvenance::coefficient_proportion};

            const TripleConstants c = triple_constants(s, w);
            CHECK(c.case_id == k);
            const ClosedFormTriple cf = closed_form_triple(s, w);
            check_triple_matches_oracle(cf, s, 40);

            // solving the reduced (a,b) pair and recovering c agrees
            const PairReduction pairs = reduce_to_pairs(s, w);
            REQUIRE(pairs.ab);
            const ClosedFormPair ab = closed_form_pair_row(*pairs.ab);
            CHECK(ab.constants().case_id == k);
            for (unsigned long x = 0; x <= 40; ++x) {
                const auto v = cf(x);
                const auto [a, b] = ab(x);
                CHECK(a == v[0]);
                CHECK(b == v[1]);
                CHECK((b - w.w1 * a) / w.w2 == v[2]);
            }
        }
    }
}

TEST_CASE("invariant transport along oracle trajectories") {
    testing::Rng rng(35);
    for (int trial = 0; trial < 25; ++trial) {
        const RecurrenceSystem pair = testing::random_equal_row_sum_pair(rng);
        const Rational w1 = nondegenerate_weight(rng);
        const RecurrenceSystem s = testing::lift_pair_to_triple(
            pair, w1, rng.small_rational(), rng.small_rational());
        const Rational w2 = rat("1") - w1;

        const Trajectory t = iterate(s, 40);
        for (std::size_t x = 0; x <= 40; ++x) {
            CHECK(t.at(x, 1) == w1 * t.at(x, 0) + w2 * t.at(x, 2));
            CHECK(t.at(x, 2) - t.at(x, 0) == (t.at(x, 1) - t.at(x, 0)) / w2);
        }
    }
}

#include <doctest.h>

#include "simrec/parser.hpp"
#include "simrec/system.hpp"
#include "support.hpp"

#include <nlohmann/json.hpp>

using namespace simrec;
using simrec::testing::rat;

namespace {

ParseDiag diag_of(const std::string& text) {
    try {
        parse_system(text);
    } catch (const ParseError& e) {
        return e.diag;
    }
    FAIL("expected a parse error");
    return ParseDiag::syntax;
}

} // namespace

TEST_CASE("integer triple parses to the exact matrix") {
    const RecurrenceSystem s = parse_system(testing::kTripleIntText);
    CHECK(s.order() == 3);
    CHECK(s.names == std::vector<std::string>{"a", "b", "c"});
    const Matrix expected = {{rat("2"), rat("4"), rat("0")},
                             {rat("1"), rat("3"), rat("2")},
                             {rat("0"), rat("2"), rat("4")}};
    CHECK(s.coefficients == expected);
    CHECK(s.affine == std::vector<Rational>{rat("1"), rat("1"), rat("1")});
    CHECK(s.initial == std::vector<Rational>{rat("0"), rat("0"), rat("0")});
}

TEST_CASE("fractional triple parses exactly") {
    const RecurrenceSystem s = parse_system(testing::kTripleFracText);
    CHECK(s.coefficients[0] ==
          std::vector<Rational>{rat("37/6"), rat("-1/6"), rat("0")});
    CHECK(s.coefficients[1] ==
          std::vector<Rational>{rat("15/2"), rat("-7/2"), rat("2")});
    CHECK(s.coefficients[2] ==
          std::vector<Rational>{rat("16/3"), rat("-10/3"), rat("4")});
    CHECK(s.affine == std::vector<Rational>{rat("2"), rat("2"), rat("2")});
    CHECK(s.initial == std::vector<Rational>{rat("41"), rat("47"), rat("60")});
}

TEST_CASE("parser conveniences") {
    // order follows the left-hand sides, coefficients collect, whitespace is free
    const RecurrenceSystem s = parse_system(
        "b[x]=a[x-1]+a[x-1]-3*b[x-1]\n"
        "a[x] =   -2*b [x-1] + 1/2\n"
        "init: b = -1/3 , a = 2\n");
    CHECK(s.names == std::vector<std::string>{"b", "a"});
    CHECK(s.coefficients[0] == std::vector<Rational>{rat("-3"), rat("2")});
    CHECK(s.coefficients[1] == std::vector<Rational>{rat("-2"), rat("0")});
    CHECK(s.affine == std::vector<Rational>{rat("0"), rat("1/2")});
    CHECK(s.initial == std::vector<Rational>{rat("-1/3"), rat("2")});
}

TEST_CASE("diagnostic classes") {
    CHECK(diag_of("a[x] = d[x-1]\ninit: a = 0\n") == ParseDiag::undeclared_variable);
    CHECK(diag_of("a[x] = a[x-2]\ninit: a = 0\n") == ParseDiag::bad_index);
    CHECK(diag_of("a[x] = a[x]\ninit: a = 0\n") == ParseDiag::bad_index);
    CHECK(diag_of("a[x] = 1\na[x] = 2\ninit: a = 0\n") == ParseDiag::duplicate_equation);
    CHECK(diag_of("a[x] = a[x-1]\n") == ParseDiag::missing_init);
    CHECK(diag_of("a[x] = a[x-1]\nb[x] = 1\ninit: a = 0\n") == ParseDiag::missing_init);
    CHECK(diag_of("a[x] = 1/0\ninit: a = 0\n") == ParseDiag::malformed_rational);
    CHECK(diag_of("a[x] = 3.5\ninit: a = 0\n") == ParseDiag::malformed_rational);
    CHECK(diag_of("a[x] 1\ninit: a = 0\n") == ParseDiag::syntax);
    CHECK(diag_of("init: a = 0\n") == ParseDiag::syntax);

    try {
        parse_system("a[x] = 1\nb[x] = e[x-1]\ninit: a = 0, b = 0\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("sum profiles") {
    const RecurrenceSystem tri = parse_system(testing::kTripleIntText);
    SumProfile p = sum_profile(tri);
    CHECK(p.row_sums == std::vector<Rational>{rat("6"), rat("6"), rat("6")});
    CHECK(p.rows_equal);
    CHECK(p.col_sums == std::vector<Rational>{rat("3"), rat("9"), rat("6")});
    CHECK(!p.cols_equal);

    const RecurrenceSystem frac = parse_system(testing::kTripleFracText);
    p = sum_profile(frac);
    CHECK(p.row_sums == std::vector<Rational>{rat("6"), rat("6"), rat("6")});
    CHECK(p.rows_equal);

    RecurrenceSystem ident;
    ident.names = {"a", "b", "c", "d"};
    ident.coefficients.assign(4, std::vector<Rational>(4, Rational(0)));
    for (int i = 0; i < 4; ++i) ident.coefficients[i][i] = Rational(1);
    ident.affine.assign(4, Rational(0));
    ident.initial.assign(4, Rational(0));
    p = sum_profile(ident);
    CHECK(p.rows_equal);
    CHECK(p.cols_equal);
    CHECK(p.row_sums == std::vector<Rational>(4, Rational(1)));
}

TEST_CASE("sum profile is permutation-equivariant") {
    testing::Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const RecurrenceSystem s = testing::random_system(rng, 4);
        const SumProfile base = sum_profile(s);

        RecurrenceSystem perm = s; // rotate the variable order by one
        const std::size_t n = s.order();
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t pi = (i + 1) % n;
            perm.names[i] = s.names[pi];
            perm.affine[i] = s.affine[pi];
            perm.initial[i] = s.initial[pi];
            for (std::size_t j = 0; j < n; ++j) {
                perm.coefficients[i][j] = s.coefficients[pi][(j + 1) % n];
            }
        }
        const SumProfile rotated = sum_profile(perm);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(rotated.row_sums[i] == base.row_sums[(i + 1) % n]);
            CHECK(rotated.col_sums[i] == base.col_sums[(i + 1) % n]);
        }
    }
}

TEST_CASE("render round trips") {
    for (const char* text : {testing::kTripleIntText, testing::kTripleFracText}) {
        const RecurrenceSystem parsed = parse_system(text);
        const std::string rendered = render_system(parsed, RenderFormat::text);
        CHECK(parse_system(rendered) == parsed);
        // idempotent: parse . render . parse == parse
        CHECK(render_system(parse_system(rendered), RenderFormat::text) == rendered);
    }

    testing::Rng rng(4242);
    for (int trial = 0; trial < 50; ++trial) {
        const RecurrenceSystem s =
            testing::random_system(rng, static_cast<std::size_t>(rng.int_in(1, 5)));
        CHECK(parse_system(render_system(s, RenderFormat::text)) == s);
    }
}

TEST_CASE("rendering keeps rationals exact") {
    const RecurrenceSystem frac = parse_system(testing::kTripleFracText);
    const std::string text = render_system(frac, RenderFormat::text);
    CHECK(text.find("37/6") != std::string::npos);
    CHECK(text.find('.') == std::string::npos);

    const std::string doc = render_system(frac, RenderFormat::structured);
    const nlohmann::json j = nlohmann::json::parse(doc);
    CHECK(j["order"] == 3);
    CHECK(j["coefficients"][0][0] == "37/6");
    CHECK(j["affine"][1] == "2");
    CHECK(j["initial"][2] == "60");
}

TEST_CASE("structured output of the integer triple") {
    const RecurrenceSystem tri = parse_system(testing::kTripleIntText);
    const nlohmann::json j =
        nlohmann::json::parse(render_system(tri, RenderFormat::structured));
    CHECK(j["order"] == 3);
    CHECK(j["names"] == nlohmann::json::array({"a", "b", "c"}));
    CHECK(j["coefficients"][1] == nlohmann::json::array({"1", "3", "2"}));
}

#include "simrec/parser.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "simrec/errors.hpp"

namespace simrec {

namespace {

struct Token {
    enum Kind { name, number, symbol, end } kind;
    std::string text; // identifier, digit run, or single symbol character
};

class LineParser {
public:
    LineParser(int line_no, const std::string& line) : line_(line_no) {
        tokenize(line);
    }

    int line() const { return line_; }

    const Token& peek() const { return tokens_[pos_]; }
    Token next() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }
    bool at_end() const { return peek().kind == Token::end; }

    bool accept_symbol(char c) {
        if (peek().kind == Token::symbol && peek().text[0] == c) {
            next();
            return true;
        }
        return false;
    }

    void expect_symbol(char c, const std::string& what) {
        if (!accept_symbol(c)) {
            fail(ParseDiag::syntax, "expected '" + std::string(1, c) + "' " + what);
        }
    }

    [[noreturn]] void fail(ParseDiag diag, const std::string& msg) const {
        throw ParseError(line_, diag, msg);
    }

    // rational := ["-"] digits ["/" digits]; sign_from_separator multiplies in
    // the +/- separator seen before the term.
    Rational parse_rational(bool negative) {
        if (accept_symbol('-')) negative = !negative;
        if (peek().kind != Token::number) {
            fail(ParseDiag::malformed_rational, "expected a rational number");
        }
        mpz_class num(next().text, 10);
        mpz_class den(1);
        if (accept_symbol('/')) {
            if (peek().kind != Token::number) {
                fail(ParseDiag::malformed_rational, "expected digits after '/'");
            }
            den = mpz_class(next().text, 10);
            if (sgn(den) == 0) {
                fail(ParseDiag::malformed_rational, "zero denominator");
            }
        }
        if (negative) num = -num;
        return Rational(num, den);
    }

    std::string parse_name() {
        if (peek().kind != Token::name) {
            fail(ParseDiag::syntax, "expected a variable name");
        }
        std::string id = next().text;
        if (id == "x") fail(ParseDiag::syntax, "'x' is the step index, not a variable");
        if (id == "init") fail(ParseDiag::syntax, "'init' is reserved");
        return id;
    }

    // "[x]" for lhs, "[x-1]" for rhs; anything else is a bad index.
    void parse_index(bool lhs) {
        expect_symbol('[', "before the step index");
        if (peek().kind != Token::name || peek().text != "x") {
            fail(ParseDiag::bad_index, "step index must be written in x");
        }
        next();
        if (accept_symbol(']')) {
            if (!lhs) {
                fail(ParseDiag::bad_index,
                     "right-hand side must reference step x-1");
            }
            return;
        }
        if (accept_symbol('-')) {
            if (lhs) {
                fail(ParseDiag::bad_index, "left-hand side must be name[x]");
            }
            if (peek().kind != Token::number || peek().text != "1") {
                fail(ParseDiag::bad_index, "only lag-1 references are accepted");
            }
            next();
            expect_symbol(']', "after the lag");
            return;
        }
        fail(ParseDiag::bad_index, "only lag-1 references are accepted");
    }

private:
    void tokenize(const std::string& line) {
        std::size_t i = 0;
        while (i < line.size()) {
            const char c = line[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t b = i;
                while (i < line.size() &&
                       (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_')) {
                    ++i;
                }
                tokens_.push_back({Token::name, line.substr(b, i - b)});
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t b = i;
                while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) {
                    ++i;
                }
                tokens_.push_back({Token::number, line.substr(b, i - b)});
            } else if (std::string("[]=+-*/,:").find(c) != std::string::npos) {
                tokens_.push_back({Token::symbol, std::string(1, c)});
                ++i;
            } else if (c == '.') {
                fail(ParseDiag::malformed_rational,
                     "decimals are not exact rationals");
            } else {
                fail(ParseDiag::syntax,
                     std::string("unexpected character '") + c + "'");
            }
        }
        tokens_.push_back({Token::end, ""});
    }

    int line_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

struct Reference {
    std::string name;
    int line;
};

struct Equation {
    std::string lhs;
    int line;
    std::map<std::string, Rational> terms; // collected coefficients
    Rational affine;
};

} // namespace

RecurrenceSystem parse_system(const std::string& text) {
    std::vector<Equation> equations;
    std::vector<Reference> references;
    std::map<std::string, std::pair<Rational, int>> init_values; // name -> (value, line)
    int init_line = 0;
    int line_no = 0;
    int last_line = 0;

    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::size_t first = raw.find_first_not_of(" \t\r");
        if (first == std::string::npos || raw[first] == '#') continue;
        last_line = line_no;

        LineParser lp(line_no, raw);
        if (lp.peek().kind == Token::name && lp.peek().text == "init") {
            lp.next();
            lp.expect_symbol(':', "after 'init'");
            init_line = line_no;
            while (true) {
                std::string name = lp.parse_name();
                references.push_back({name, line_no});
                lp.expect_symbol('=', "after the variable name");
                Rational value = lp.parse_rational(false);
                if (init_values.count(name)) {
                    lp.fail(ParseDiag::duplicate_equation,
                            "duplicate initial value for '" + name + "'");
                }
                init_values.emplace(name, std::make_pair(value, line_no));
                if (lp.at_end()) break;
                lp.expect_symbol(',', "between initial values");
            }
            continue;
        }

        Equation eq;
        eq.lhs = lp.parse_name();
        eq.line = line_no;
        lp.parse_index(/*lhs=*/true);
        lp.expect_symbol('=', "after the left-hand side");

        bool first_term = true;
        while (true) {
            bool negative = false;
            if (!first_term) {
                if (lp.accept_symbol('+')) {
                    // keep sign
                } else if (lp.accept_symbol('-')) {
                    negative = true;
                } else {
                    lp.fail(ParseDiag::syntax, "expected '+' or '-' between terms");
                }
            }
            first_term = false;

            if (lp.peek().kind == Token::name) {
                std::string name = lp.parse_name();
                references.push_back({name, line_no});
                lp.parse_index(/*lhs=*/false);
                eq.terms[name] += negative ? Rational(-1) : Rational(1);
            } else {
                Rational coeff = lp.parse_rational(negative);
                if (lp.accept_symbol('*')) {
                    std::string name = lp.parse_name();
                    references.push_back({name, line_no});
                    lp.parse_index(/*lhs=*/false);
                    eq.terms[name] += coeff;
                } else {
                    eq.affine += coeff;
                }
            }
            if (lp.at_end()) break;
        }

        for (const auto& prev : equations) {
            if (prev.lhs == eq.lhs) {
                throw ParseError(line_no, ParseDiag::duplicate_equation,
                                 "duplicate equation for '" + eq.lhs + "'");
            }
        }
        equations.push_back(std::move(eq));
    }

    if (equations.empty()) {
        throw ParseError(last_line == 0 ? 1 : last_line, ParseDiag::syntax,
                         "input contains no equations");
    }

    RecurrenceSystem sys;
    for (const auto& eq : equations) sys.names.push_back(eq.lhs);

    for (const auto& ref : references) {
        if (sys.index_of(ref.name) < 0) {
            throw ParseError(ref.line, ParseDiag::undeclared_variable,
                             "undeclared variable '" + ref.name + "'");
        }
    }

    if (init_line == 0) {
        throw ParseError(last_line, ParseDiag::missing_init,
                         "missing init line");
    }

    const std::size_t n = sys.names.size();
    sys.coefficients.assign(n, std::vector<Rational>(n, Rational(0)));
    sys.affine.assign(n, Rational(0));
    sys.initial.assign(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [name, coeff] : equations[i].terms) {
            sys.coefficients[i][sys.index_of(name)] = coeff;
        }
        sys.affine[i] = equations[i].affine;
        auto it = init_values.find(sys.names[i]);
        if (it == init_values.end()) {
            throw ParseError(init_line, ParseDiag::missing_init,
                             "missing initial value for '" + sys.names[i] + "'");
        }
        sys.initial[i] = it->second.first;
    }

    sys.validate();
    return sys;
}

} // namespace simrec

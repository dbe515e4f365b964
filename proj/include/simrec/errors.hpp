#pragma once

#include <stdexcept>
#include <string>

namespace simrec {

// Base class for everything the library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arithmetic domain violations: division by zero, zero denominators.
struct ArithmeticError : Error {
    using Error::Error;
};

// A lemma/theorem precondition does not hold for the given system
// (row/column sums differ, missing invariant, degenerate weight).
struct StructuralError : Error {
    using Error::Error;
};

// The input is outside the range the method covers (order too high,
// a degenerate case the source result does not state).
struct UnsupportedError : Error {
    using Error::Error;
};

// Diagnostic classes for the equation-file front-end.
enum class ParseDiag {
    syntax,
    malformed_rational,
    bad_index,
    undeclared_variable,
    duplicate_equation,
    missing_init,
};

struct ParseError : Error {
    int line;        // 1-based; EOF-level problems report the last line,
    ParseDiag diag;  // file-level ones use 0 and drop the prefix

    ParseError(int line_, ParseDiag diag_, const std::string& msg)
        : Error(line_ > 0 ? "line " + std::to_string(line_) + ": " + msg : msg),
          line(line_),
          diag(diag_) {}
};

} // namespace simrec

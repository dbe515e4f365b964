#pragma once

#include <string>

#include "simrec/system.hpp"

namespace simrec {

/**
 * Parses the equation-file grammar into a RecurrenceSystem.
 *
 *   equation := name "[x]" "=" term ("+"|"-" term)*
 *   term     := rational ("*" name "[x-1]")? | name "[x-1]"
 *   init     := "init:" name "=" rational ("," name "=" rational)*
 *   rational := ["-"] digits ["/" digits]
 *
 * Whitespace-insensitive; "#" starts a comment line. Only lag-1
 * references are accepted on the right-hand side. Matrix rows follow the
 * declaration order of the left-hand sides; omitted cross terms and
 * affine terms are 0. Throws ParseError with a line number and one of
 * the ParseDiag classes on malformed input.
 */
RecurrenceSystem parse_system(const std::string& text);

} // namespace simrec

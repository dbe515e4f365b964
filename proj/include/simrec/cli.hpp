#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace simrec::cli {

/**
 * Result of one command invocation. Exit codes follow the outcome:
 * 0 success, 1 structural failure (a lemma/theorem condition does not
 * hold for the input), 2 parse failure (bad argv or malformed file).
 */
struct CliReport {
    enum class Outcome { success, structural_failure, parse_failure };

    std::string command;
    Outcome outcome = Outcome::success;
    std::string payload; // JSON document

    int exit_code() const {
        switch (outcome) {
            case Outcome::success: return 0;
            case Outcome::structural_failure: return 1;
            case Outcome::parse_failure: return 2;
        }
        return 2;
    }
};

// args excludes the program name. Text goes to out, diagnostics to err.
CliReport run_report(const std::vector<std::string>& args, std::ostream& out,
                     std::ostream& err);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

} // namespace simrec::cli

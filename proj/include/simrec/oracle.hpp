#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "simrec/decouple.hpp"
#include "simrec/system.hpp"
#include "simrec/triplesolve.hpp"

namespace simrec {

/**
 * Exact step-by-step iteration of a system: the ground truth every
 * closed form and decoupled recurrence is checked against. values has
 * steps()+1 rows of order() rationals each; row 0 is the initial vector.
 */
struct Trajectory {
    RecurrenceSystem system;
    std::vector<std::vector<Rational>> values;

    std::size_t steps() const { return values.size() - 1; }
    const std::vector<Rational>& row(std::size_t x) const { return values[x]; }
    const Rational& at(std::size_t x, std::size_t var) const { return values[x][var]; }
};

// Values grow geometrically, so runs are capped; the default is far above
// anything the checks need.
inline constexpr std::size_t kDefaultStepLimit = 256;

Trajectory iterate(const RecurrenceSystem& system, std::size_t steps,
                   std::size_t step_limit = kDefaultStepLimit);

// True iff every variable satisfies the recurrence (with its tail entry,
// when present) at every step x in [recurrence.order(), steps()].
// Throws Error when the trajectory is shorter than order()+1 rows.
bool check_regular(const Trajectory& trajectory, const RegularRecurrence& recurrence);

// True iff b = w1*a + w2*c holds at every step of an order-3 trajectory.
bool check_invariant(const Trajectory& trajectory, const WeightPair& w);

// "x,a,b,c" header, one row per step, rationals as p/q strings.
std::string trajectory_csv(const Trajectory& trajectory);

// The structured system document plus a "values" table of rational strings.
std::string trajectory_json(const Trajectory& trajectory);

} // namespace simrec

#include "simrec/oracle.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "simrec/errors.hpp"

namespace simrec {

Trajectory iterate(const RecurrenceSystem& system, std::size_t steps,
                   std::size_t step_limit) {
    system.validate();
    if (steps > step_limit) {
        throw Error("iterate: " + std::to_string(steps) +
                    " steps exceeds the limit of " + std::to_string(step_limit));
    }
    const std::size_t n = system.order();
    Trajectory t{system, {}};
    t.values.reserve(steps + 1);
    t.values.push_back(system.initial);
    for (std::size_t x = 1; x <= steps; ++x) {
        const auto& prev = t.values.back();
        std::vector<Rational> next(n);
        for (std::size_t i = 0; i < n; ++i) {
            Rational acc = system.affine[i];
            for (std::size_t j = 0; j < n; ++j) {
                acc += system.coefficients[i][j] * prev[j];
            }
            next[i] = acc;
        }
        t.values.push_back(std::move(next));
    }
    return t;
}

bool check_regular(const Trajectory& trajectory, const RegularRecurrence& recurrence) {
    const std::size_t m = recurrence.order();
    if (trajectory.steps() < m) {
        throw Error("check_regular: trajectory too short for an order-" +
                    std::to_string(m) + " recurrence");
    }
    const std::size_t n = trajectory.system.order();
    if (recurrence.tail && recurrence.tail->size() != n) {
        throw Error("check_regular: tail length does not match the system");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t x = m; x <= trajectory.steps(); ++x) {
            Rational acc = recurrence.tail ? (*recurrence.tail)[i] : Rational(0);
            for (std::size_t j = 1; j <= m; ++j) {
                acc += recurrence.betas[j - 1] * trajectory.at(x - j, i);
            }
            if (acc != trajectory.at(x, i)) return false;
        }
    }
    return true;
}

bool check_invariant(const Trajectory& trajectory, const WeightPair& w) {
    if (trajectory.system.order() != 3) {
        throw Error("check_invariant: needs an order-3 trajectory");
    }
    for (const auto& row : trajectory.values) {
        if (row[1] != w.w1 * row[0] + w.w2 * row[2]) return false;
    }
    return true;
}

std::string trajectory_csv(const Trajectory& trajectory) {
    std::ostringstream out;
    out << "x";
    for (const auto& name : trajectory.system.names) out << "," << name;
    out << "\n";
    for (std::size_t x = 0; x < trajectory.values.size(); ++x) {
        out << x;
        for (const auto& v : trajectory.values[x]) out << "," << v.str();
        out << "\n";
    }
    return out.str();
}

std::string trajectory_json(const Trajectory& trajectory) {
    nlohmann::json doc =
        nlohmann::json::parse(render_system(trajectory.system, RenderFormat::structured));
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : trajectory.values) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& v : row) r.push_back(v.str());
        rows.push_back(std::move(r));
    }
    doc["values"] = std::move(rows);
    return doc.dump(2) + "\n";
}

} // namespace simrec

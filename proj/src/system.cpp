#include "simrec/system.hpp"

#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "simrec/errors.hpp"

namespace simrec {

bool RecurrenceSystem::homogeneous() const {
    for (const auto& a : affine) {
        if (!a.is_zero()) return false;
    }
    return true;
}

int RecurrenceSystem::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return static_cast<int>(i);
    }
    return -1;
}

Rational RecurrenceSystem::row_sum(std::size_t i) const {
    Rational s(0);
    for (const auto& c : coefficients[i]) s += c;
    return s;
}

void RecurrenceSystem::validate() const {
    const std::size_t n = names.size();
    if (n == 0) throw Error("empty system");
    if (coefficients.size() != n || affine.size() != n || initial.size() != n) {
        throw Error("system field lengths disagree");
    }
    for (const auto& row : coefficients) {
        if (row.size() != n) throw Error("coefficient matrix is not square");
    }
    std::set<std::string> unique(names.begin(), names.end());
    if (unique.size() != n) throw Error("variable names are not unique");
}

SumProfile sum_profile(const RecurrenceSystem& system) {
    const std::size_t n = system.order();
    SumProfile p;
    p.row_sums.assign(n, Rational(0));
    p.col_sums.assign(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            p.row_sums[i] += system.coefficients[i][j];
            p.col_sums[j] += system.coefficients[i][j];
        }
    }
    auto all_equal = [](const std::vector<Rational>& v) {
        for (const auto& s : v) {
            if (s != v.front()) return false;
        }
        return true;
    };
    p.rows_equal = all_equal(p.row_sums);
    p.cols_equal = all_equal(p.col_sums);
    return p;
}

namespace {

// One right-hand-side term. First terms carry a negative coefficient in
// the rational itself ("-2*a[x-1]"); later ones use the "-" separator.
void append_term(std::string& rhs, const Rational& coeff, const std::string& name) {
    const bool first = rhs.empty();
    Rational mag = coeff.sign() < 0 ? -coeff : coeff;
    if (first) {
        if (coeff.sign() < 0) rhs += "-";
    } else {
        rhs += coeff.sign() < 0 ? " - " : " + ";
    }
    if (name.empty()) {
        rhs += mag.str();
        return;
    }
    if (mag != Rational(1) || (first && coeff.sign() < 0)) {
        rhs += mag.str() + "*";
    }
    rhs += name + "[x-1]";
}

std::string render_text(const RecurrenceSystem& s) {
    std::ostringstream out;
    const std::size_t n = s.order();
    for (std::size_t i = 0; i < n; ++i) {
        std::string rhs;
        for (std::size_t j = 0; j < n; ++j) {
            if (!s.coefficients[i][j].is_zero()) {
                append_term(rhs, s.coefficients[i][j], s.names[j]);
            }
        }
        if (!s.affine[i].is_zero() || rhs.empty()) {
            append_term(rhs, s.affine[i], "");
        }
        out << s.names[i] << "[x] = " << rhs << "\n";
    }
    out << "init:";
    for (std::size_t i = 0; i < n; ++i) {
        out << (i == 0 ? " " : ", ") << s.names[i] << " = " << s.initial[i].str();
    }
    out << "\n";
    return out.str();
}

std::string render_structured(const RecurrenceSystem& s) {
    nlohmann::json doc;
    doc["order"] = s.order();
    doc["names"] = s.names;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : s.coefficients) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& c : row) r.push_back(c.str());
        rows.push_back(std::move(r));
    }
    doc["coefficients"] = std::move(rows);
    nlohmann::json affine = nlohmann::json::array();
    for (const auto& a : s.affine) affine.push_back(a.str());
    doc["affine"] = std::move(affine);
    nlohmann::json initial = nlohmann::json::array();
    for (const auto& v : s.initial) initial.push_back(v.str());
    doc["initial"] = std::move(initial);
    return doc.dump(2) + "\n";
}

} // namespace

std::string render_system(const RecurrenceSystem& system, RenderFormat format) {
    system.validate();
    return format == RenderFormat::text ? render_text(system)
                                        : render_structured(system);
}

} // namespace simrec

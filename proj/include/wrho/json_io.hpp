#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "wrho/cmat.hpp"
#include "wrho/fock.hpp"
#include "wrho/radii.hpp"

namespace wrho {

using json = nlohmann::json;

/// Matrix wire format:
///   {"rows": r, "cols": c, "entries": [[re, im], ...]}  (row-major)
/// Parsing rejects non-finite entries and shape mismatches.
inline CMat cmat_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw DomainError("matrix json: expected {rows, cols, entries}");
    const auto rows = j.at("rows").get<long long>();
    const auto cols = j.at("cols").get<long long>();
    if (rows <= 0 || cols <= 0)
        throw DomainError("matrix json: dimensions must be positive");
    const auto& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != std::size_t(rows * cols))
        throw DomainError("matrix json: entries length must equal rows*cols");
    CMat m{std::size_t(rows), std::size_t(cols)};
    std::size_t k = 0;
    for (const auto& e : entries) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw DomainError("matrix json: each entry must be [re, im]");
        const double re = e[0].get<double>();
        const double im = e[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im))
            throw DomainError("matrix json: entries must be finite");
        m.data()[k++] = cdouble{re, im};
    }
    return m;
}

inline json cmat_to_json(const CMat& m) {
    json entries = json::array();
    for (const auto& z : m.data()) entries.push_back({z.real(), z.imag()});
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

/// Noncommutative polynomial wire format:
///   {"n": n, "terms": [{"word": [i1, ...], "re": x, "im": y}, ...]}
/// Generator indices are 1-based.
inline NcPoly ncpoly_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("terms"))
        throw DomainError("ncpoly json: expected {n, terms}");
    const auto n = j.at("n").get<long long>();
    if (n < 1) throw DomainError("ncpoly json: n must be >= 1");
    NcPoly p;
    p.n = std::size_t(n);
    for (const auto& term : j.at("terms")) {
        if (!term.is_object() || !term.contains("word") || !term.contains("re") ||
            !term.contains("im"))
            throw DomainError("ncpoly json: term must be {word, re, im}");
        Word w;
        for (const auto& letter : term.at("word")) {
            const auto idx = letter.get<long long>();
            if (idx < 1 || idx > n) throw DomainError("ncpoly json: letter out of range");
            w.push_back(int(idx));
        }
        const double re = term.at("re").get<double>();
        const double im = term.at("im").get<double>();
        if (!std::isfinite(re) || !std::isfinite(im))
            throw DomainError("ncpoly json: coefficients must be finite");
        p.set(w, p.get(w) + cdouble{re, im});
    }
    return p;
}

inline json ncpoly_to_json(const NcPoly& p) {
    json terms = json::array();
    for (const auto& [w, c] : p.coeffs)
        terms.push_back({{"word", w}, {"re", c.real()}, {"im", c.imag()}});
    return json{{"n", p.n}, {"terms", std::move(terms)}};
}

inline json radius_report_to_json(const RadiusReport& r) {
    json j{{"value", r.value},         {"lower", r.lower},
           {"upper", r.upper},         {"method", r.method},
           {"iterations", r.iterations}, {"zeta_grid", r.zeta_grid},
           {"converged", r.converged}};
    if (r.conv_gap) j["conv_gap"] = *r.conv_gap;
    return j;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

inline void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

} // namespace wrho

#pragma once

#include <cmath>
#include <utility>

#include "wrho/cmat.hpp"

namespace wrho {

/**
 * Gauss-Jordan inversion with partial pivoting. A pivot is declared singular
 * when its magnitude falls below pivot_rel times the largest row norm of the
 * input; the threshold scales with the matrix so the test is invariant under
 * global rescaling.
 */
inline CMat inverse(const CMat& m, const NumericsConfig& cfg = default_config()) {
    m.require_square("inverse");
    const std::size_t n = m.rows();
    double max_row_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += std::abs(m(i, j));
        max_row_norm = std::max(max_row_norm, s);
    }
    const double pivot_floor = cfg.pivot_rel * std::max(max_row_norm, 1e-300);

    CMat a = m;
    CMat inv = CMat::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(a(col, col));
        for (std::size_t i = col + 1; i < n; ++i) {
            const double v = std::abs(a(i, col));
            if (v > best) { best = v; piv = i; }
        }
        if (best <= pivot_floor)
            throw SingularError("inverse: pivot below threshold");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(col, j), a(piv, j));
                std::swap(inv(col, j), inv(piv, j));
            }
        }
        const cdouble d = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            const cdouble f = a(i, col);
            if (f == cdouble{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

/// Solve A X = B without forming the inverse explicitly.
inline CMat solve(const CMat& a, const CMat& b, const NumericsConfig& cfg = default_config()) {
    return inverse(a, cfg) * b;
}

/// Evaluates the Moebius factor  zeta * (T - a I)(I - conj(a) T)^{-1}.
/// The pole 1/conj(a) must lie outside the spectrum of T; a singular
/// resolvent surfaces as SingularError.
inline CMat mobius_factor_eval(cdouble a, cdouble zeta, const CMat& t,
                               const NumericsConfig& cfg = default_config()) {
    t.require_square("mobius_factor_eval");
    const std::size_t n = t.rows();
    CMat num = t;
    for (std::size_t i = 0; i < n; ++i) num(i, i) -= a;
    CMat den = CMat::identity(n);
    den -= std::conj(a) * t;
    return zeta * (num * inverse(den, cfg));
}

} // namespace wrho

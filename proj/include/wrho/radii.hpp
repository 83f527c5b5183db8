#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "wrho/cmat.hpp"
#include "wrho/detail/ascent.hpp"
#include "wrho/detail/scan.hpp"
#include "wrho/eig.hpp"
#include "wrho/solve.hpp"

namespace wrho {

/// A computed radius with a certified bracket and convergence diagnostics.
struct RadiusReport {
    double value = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    std::string method;
    std::size_t iterations = 0;  ///< objective evaluations spent
    std::size_t zeta_grid = 0;   ///< final circle sample count
    bool converged = false;
    std::optional<double> conv_gap; ///< truncation diagnostic, when applicable
};

struct RhoParams {
    double rho = 2.0;
    std::size_t zeta_samples = 128; ///< power of two, >= 16
    int refine_depth = 24;
};

/**
 * Numerical radius by the angle scan
 *     w(T) = max_theta lambda_max(Re(e^{i theta} T)).
 * Every angle contributes max_x Re(e^{i theta} <Tx, x>), a cosine of
 * amplitude at most w(T), so the uniform N-grid maximum g satisfies
 *     g <= w(T) <= g / cos(pi / N),
 * which gives a certified bracket. The grid doubles (reusing prior samples)
 * until the bracket meets tol; golden refinement of every coarse local max
 * sharpens the reported value beyond the grid.
 */
inline RadiusReport numerical_radius(const CMat& t, double tol,
                                     const NumericsConfig& cfg = default_config()) {
    t.require_square("numerical_radius");
    RadiusReport rep;
    rep.method = "theta-scan";
    if (t.max_abs() == 0.0) {
        rep.converged = true;
        rep.zeta_grid = cfg.theta_grid;
        return rep;
    }

    const auto g = [&](double theta) {
        const cdouble phase{std::cos(theta), std::sin(theta)};
        return lambda_max_herm(real_part(phase * t), cfg);
    };

    auto scan = detail::max_on_circle(g, cfg.theta_grid);
    double refined = scan.best_value;
    std::size_t evals = scan.evals;

    std::size_t n = cfg.theta_grid;
    std::vector<double> grid_vals(n);
    const double h0 = detail::two_pi / double(n);
    double grid_max = -1e300;
    for (std::size_t i = 0; i < n; ++i) {
        grid_vals[i] = g(double(i) * h0);
        grid_max = std::max(grid_max, grid_vals[i]);
    }
    evals += n;

    while (true) {
        const double upper = grid_max / std::cos(detail::two_pi / (2.0 * double(n)));
        const double value = std::max(refined, grid_max);
        if (upper - value <= tol || 2 * n > cfg.max_circle_samples) {
            rep.value = value;
            rep.lower = value;
            rep.upper = std::max(upper, value);
            rep.zeta_grid = n;
            rep.iterations = evals;
            rep.converged = (rep.upper - rep.lower) <= tol;
            return rep;
        }
        // double the grid: evaluate only the new midpoints
        std::vector<double> next(2 * n);
        const double h = detail::two_pi / double(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            next[2 * i] = grid_vals[i];
            next[2 * i + 1] = g(double(2 * i + 1) * h);
            grid_max = std::max(grid_max, next[2 * i + 1]);
        }
        evals += n;
        grid_vals = std::move(next);
        n *= 2;
    }
}

namespace detail {

/// min over sampled zeta of lambda_min(Re((I - zeta T)^{-1}(I + zeta T))),
/// with doubling refinement of the two arcs adjacent to the running minimum.
inline double crho_min_over_circle(const CMat& t, std::size_t zeta_samples,
                                   int refine_depth, const NumericsConfig& cfg) {
    const std::size_t n = t.rows();
    const CMat id = CMat::identity(n);
    const auto m = [&](double theta) {
        const cdouble zeta{std::cos(theta), std::sin(theta)};
        CMat den = id;
        den -= zeta * t;
        CMat num = id;
        num += zeta * t;
        return lambda_min_herm(real_part(inverse(den, cfg) * num), cfg);
    };

    std::vector<std::pair<double, double>> pts; // (theta, value), theta-sorted
    pts.reserve(zeta_samples + 4 * std::size_t(std::max(refine_depth, 0)));
    const double h = two_pi / double(zeta_samples);
    for (std::size_t i = 0; i < zeta_samples; ++i)
        pts.emplace_back(double(i) * h, m(double(i) * h));

    // split the two arcs adjacent to index i
    const auto split_around = [&](std::size_t i) {
        const std::size_t prev = (i + pts.size() - 1) % pts.size();
        const std::size_t next = (i + 1) % pts.size();
        const double t0 = pts[prev].first;
        double t1 = pts[i].first;
        double t2 = pts[next].first;
        if (t1 < t0) t1 += two_pi;
        if (t2 < t1) t2 += two_pi;
        const double la = 0.5 * (t0 + t1);
        const double lb = 0.5 * (t1 + t2);
        pts.emplace_back(std::fmod(la, two_pi), m(la));
        pts.emplace_back(std::fmod(lb, two_pi), m(lb));
    };

    for (int depth = 0; depth < refine_depth; ++depth) {
        // refine around the deepest point and the runner-up local minimum:
        // nearly-equal dips are common for the resolvent expression
        std::size_t imin = 0;
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (pts[i].second < pts[imin].second) imin = i;
        std::size_t second = pts.size();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i == imin) continue;
            const double prev = pts[(i + pts.size() - 1) % pts.size()].second;
            const double next = pts[(i + 1) % pts.size()].second;
            if (pts[i].second <= prev && pts[i].second <= next &&
                (second == pts.size() || pts[i].second < pts[second].second))
                second = i;
        }
        split_around(imin);
        if (second < pts.size()) split_around(second);
        std::sort(pts.begin(), pts.end());
    }

    double best = pts.front().second;
    for (const auto& [th, val] : pts) best = std::min(best, val);
    return best;
}

} // namespace detail

/**
 * Membership test for the class of operators with unitary rho-dilations:
 * T (with spectrum inside the open disc) belongs iff
 *     Re((I - zeta T)^{-1} (I + zeta T)) >= (1 - rho) I  for all |zeta| = 1,
 * checked on a refined circle grid with slack tol.
 */
inline bool in_class_crho(const CMat& t, const RhoParams& params, double tol,
                          const NumericsConfig& cfg = default_config()) {
    t.require_square("in_class_crho");
    if (params.rho < 1.0 || params.zeta_samples < 16)
        throw DomainError("in_class_crho: rho >= 1 and zeta_samples >= 16 required");
    if (spectral_radius(t) >= 1.0 - tol)
        throw SpectrumOnBoundaryError("in_class_crho: spectral radius not strictly below 1");
    const double mn =
        detail::crho_min_over_circle(t, params.zeta_samples, params.refine_depth, cfg);
    return mn >= (1.0 - params.rho) - tol;
}

/**
 * Operator rho-radius w_rho(T) = inf{ lambda > 0 : T/lambda in C_rho }, by
 * bisection on lambda. The upper bracket starts just above ||T|| (valid for
 * every rho >= 1); the lower bracket is found by halving. Inside the
 * bisection, lambdas that would park the spectrum on the unit circle are
 * classified as "not in class": the true radius is never below the spectral
 * radius, so the decision is forced there without touching the resolvent.
 */
inline RadiusReport w_rho(const CMat& t, const RhoParams& params, double tol,
                          const NumericsConfig& cfg = default_config()) {
    t.require_square("w_rho");
    if (params.rho < 1.0 || params.zeta_samples < 16)
        throw DomainError("w_rho: rho >= 1 and zeta_samples >= 16 required");
    RadiusReport rep;
    rep.method = "bisection";
    rep.zeta_grid = params.zeta_samples;
    const double nrm = op_norm(t, cfg);
    if (nrm == 0.0) {
        rep.converged = true;
        return rep;
    }
    const double srad = spectral_radius(t);
    const double mtol = cfg.membership_tol;

    std::size_t evals = 0;
    const auto member = [&](double lambda) {
        ++evals;
        if (srad / lambda >= 1.0 - mtol) return false;
        CMat scaled = t;
        scaled *= cdouble{1.0 / lambda, 0.0};
        const double mn = detail::crho_min_over_circle(scaled, params.zeta_samples,
                                                       params.refine_depth, cfg);
        return mn >= (1.0 - params.rho) - mtol;
    };

    double hi = nrm * (1.0 + 10.0 * mtol) + mtol;
    double lo = 0.5 * hi;
    while (member(lo)) {
        hi = lo;
        lo *= 0.5;
        if (lo < tol * nrm * 1e-3) break;
    }

    const double target = tol * std::max(1.0, hi);
    int iters = 0;
    while (hi - lo > target && iters < 200) {
        const double mid = 0.5 * (lo + hi);
        if (member(mid))
            hi = mid;
        else
            lo = mid;
        ++iters;
    }
    rep.value = 0.5 * (lo + hi);
    rep.lower = lo;
    rep.upper = hi;
    rep.iterations = evals;
    rep.converged = (hi - lo) <= tol * std::max(1.0, hi);
    return rep;
}

/**
 * Lower bound on w_rho by maximizing the dilation-theoretic objective
 *   (1 - 1/rho) |<Th,h>| + sqrt((1-1/rho)^2 |<Th,h>|^2 + (2/rho - 1) ||Th||^2)
 * over unit vectors h. For rho > 2 the square root argument doubles as the
 * feasibility constraint; infeasible iterates are rejected.
 */
inline double w_rho_variational(const CMat& t, double rho, int restarts, int steps,
                                std::uint64_t seed = 0x243f6a8885a308d3ULL) {
    t.require_square("w_rho_variational");
    if (rho < 1.0) throw DomainError("w_rho_variational: requires rho >= 1");
    const std::size_t n = t.rows();
    const double c1 = 1.0 - 1.0 / rho;
    const double c2 = 2.0 / rho - 1.0;
    const double inf = std::numeric_limits<double>::infinity();

    const auto objective = [&](const std::vector<cdouble>& h) {
        const std::vector<cdouble> th = t.apply(h);
        cdouble q{0.0, 0.0};
        double nn = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            q += th[i] * std::conj(h[i]);
            nn += std::norm(th[i]);
        }
        const double qa = std::abs(q);
        const double arg = c1 * c1 * qa * qa + c2 * nn;
        if (arg < 0.0) return -inf;
        return c1 * qa + std::sqrt(arg);
    };

    return detail::sphere_ascent_max(objective, n, restarts, steps, seed);
}

} // namespace wrho

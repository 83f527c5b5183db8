#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

namespace wrho::detail {

/// Objective value on the unit sphere of C^n; -inf marks an infeasible point.
using SphereObjective = std::function<double(const std::vector<std::complex<double>>&)>;

inline void normalize(std::vector<std::complex<double>>& x) {
    double s = 0.0;
    for (const auto& z : x) s += std::norm(z);
    s = std::sqrt(s);
    if (s > 0.0)
        for (auto& z : x) z /= s;
}

/**
 * Projected ascent of an objective over the unit sphere, with restarts.
 * Gradients come from forward differences in the 2n real coordinates; each
 * step backtracks from 0.1 through 8 halvings and re-projects onto the
 * sphere. Infeasible iterates (objective -inf) are rejected; infeasible
 * starts are resampled up to a fixed budget. Fully deterministic for a given
 * seed.
 */
inline double sphere_ascent_max(const SphereObjective& f, std::size_t dim,
                                int restarts, int steps, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double inf = std::numeric_limits<double>::infinity();
    double best = -inf;

    for (int r = 0; r < restarts; ++r) {
        std::vector<std::complex<double>> h(dim);
        double f0 = -inf;
        for (int attempt = 0; attempt < 64 && f0 == -inf; ++attempt) {
            for (auto& z : h) z = {gauss(gen), gauss(gen)};
            normalize(h);
            f0 = f(h);
        }
        if (f0 == -inf) continue;

        for (int it = 0; it < steps; ++it) {
            const double fd = 1e-6;
            std::vector<std::complex<double>> grad(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                auto hp = h;
                hp[i] += fd;
                normalize(hp);
                const double fre = f(hp);
                hp = h;
                hp[i] += std::complex<double>{0.0, fd};
                normalize(hp);
                const double fim = f(hp);
                const double gre = (fre == -inf) ? 0.0 : (fre - f0) / fd;
                const double gim = (fim == -inf) ? 0.0 : (fim - f0) / fd;
                grad[i] = {gre, gim};
            }
            double gn = 0.0;
            for (const auto& z : grad) gn += std::norm(z);
            gn = std::sqrt(gn);
            if (gn <= 1e-14) break;

            double step = 0.1;
            bool moved = false;
            for (int half = 0; half < 8; ++half) {
                auto trial = h;
                for (std::size_t i = 0; i < dim; ++i) trial[i] += (step / gn) * grad[i];
                normalize(trial);
                const double ft = f(trial);
                if (ft > f0) {
                    h = trial;
                    f0 = ft;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) break;
        }
        best = std::max(best, f0);
    }
    return (best == -inf) ? 0.0 : best;
}

} // namespace wrho::detail

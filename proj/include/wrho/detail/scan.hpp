#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace wrho::detail {

inline constexpr double two_pi = 6.283185307179586476925286766559;

struct CircleScanResult {
    double best_value = 0.0;
    double best_theta = 0.0;
    std::size_t evals = 0;
};

/// Golden-section maximization of f on [a, b]; assumes a single local max in
/// the bracket (good enough after a grid localizes the peaks).
inline double golden_max(const std::function<double(double)>& f, double a, double b,
                         double& arg_out, std::size_t& evals, int iters = 48) {
    const double gr = 0.61803398874989484820;
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    evals += 2;
    for (int i = 0; i < iters && (b - a) > 1e-14; ++i) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        }
        ++evals;
    }
    if (f1 >= f2) { arg_out = x1; return f1; }
    arg_out = x2;
    return f2;
}

/// Maximize f(theta) over the circle: uniform coarse grid, then a
/// golden-section pass on every cyclic local-max bracket (equal peaks are
/// common for the spectral quantities scanned here, so all of them are
/// refined, not only the winner).
inline CircleScanResult max_on_circle(const std::function<double(double)>& f,
                                      std::size_t coarse) {
    CircleScanResult res;
    const std::size_t n = std::max<std::size_t>(coarse, 8);
    std::vector<double> vals(n);
    const double h = two_pi / double(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = f(double(i) * h);
    res.evals = n;
    std::size_t ibest = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (vals[i] > vals[ibest]) ibest = i;
    res.best_value = vals[ibest];
    res.best_theta = double(ibest) * h;

    for (std::size_t i = 0; i < n; ++i) {
        const double prev = vals[(i + n - 1) % n];
        const double next = vals[(i + 1) % n];
        if (vals[i] >= prev && vals[i] >= next) {
            const double a = double(i) * h - h;
            const double b = double(i) * h + h;
            double arg = 0.0;
            const double v = golden_max(f, a, b, arg, res.evals);
            if (v > res.best_value) {
                res.best_value = v;
                res.best_theta = arg;
            }
        }
    }
    return res;
}

} // namespace wrho::detail

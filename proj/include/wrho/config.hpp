#pragma once

#include <cstddef>

namespace wrho {

/// Central numerical configuration. Every tolerance used by the toolkit
/// flows from one of these knobs; functions take a config argument that
/// defaults to this record's defaults.
struct NumericsConfig {
    double eig_tol = 1e-10;          ///< eigensolver residual target
    double inverse_tol = 1e-8;       ///< acceptable residual of M * inv(M) - I
    double pivot_rel = 1e-12;        ///< singularity threshold, relative to max row norm
    double membership_tol = 1e-9;    ///< slack on class-membership eigenvalue tests
    double check_tol = 1e-6;         ///< slack on theorem hard checks
    std::size_t supnorm_grid = 4096; ///< circle samples for sup-norm scans
    std::size_t theta_grid = 64;     ///< initial samples for numerical-radius scans
    std::size_t max_circle_samples = (std::size_t{1} << 21);
    std::size_t dim_cap = 5000;      ///< refuse to build matrices beyond this dimension
    std::size_t jacobi_cutoff = 64;  ///< above this, extreme eigenvalues use Lanczos
};

inline const NumericsConfig& default_config() {
    static const NumericsConfig cfg{};
    return cfg;
}

} // namespace wrho

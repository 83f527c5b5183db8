#pragma once

#include <random>

#include "wrho/cmat.hpp"
#include "wrho/eig.hpp"
#include "wrho/rational_fn.hpp"

namespace wrho {

/// Seeded generators for test instances. Everything here is a pure function
/// of the engine state, so a fixed seed reproduces the exact same stream of
/// matrices and functions.

inline cdouble random_unit_complex(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> ang(0.0, detail::two_pi);
    const double a = ang(gen);
    return {std::cos(a), std::sin(a)};
}

inline CMat random_matrix(std::mt19937_64& gen, std::size_t n, double scale = 1.0) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = scale * cdouble{gauss(gen), gauss(gen)};
    return m;
}

inline CMat random_hermitian(std::mt19937_64& gen, std::size_t n) {
    return real_part(random_matrix(gen, n));
}

/// Unitary from Gram-Schmidt on a random complex matrix.
inline CMat random_unitary(std::mt19937_64& gen, std::size_t n) {
    CMat m = random_matrix(gen, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            cdouble dot{0.0, 0.0};
            for (std::size_t i = 0; i < n; ++i) dot += std::conj(m(i, k)) * m(i, j);
            for (std::size_t i = 0; i < n; ++i) m(i, j) -= dot * m(i, k);
        }
        double nn = 0.0;
        for (std::size_t i = 0; i < n; ++i) nn += std::norm(m(i, j));
        nn = std::sqrt(nn);
        if (nn < 1e-12) { m(j, j) += 1.0; nn = 1.0; } // essentially never
        for (std::size_t i = 0; i < n; ++i) m(i, j) /= nn;
    }
    return m;
}

/// Random matrix rescaled to a prescribed operator norm.
inline CMat random_with_norm(std::mt19937_64& gen, std::size_t n, double target_norm) {
    CMat m = random_matrix(gen, n);
    const double nrm = op_norm(m);
    if (nrm == 0.0) return m;
    m *= cdouble{target_norm / nrm, 0.0};
    return m;
}

inline CMat random_contraction(std::mt19937_64& gen, std::size_t n, double norm = 0.9) {
    return random_with_norm(gen, n, norm);
}

/// Invertible L = U diag(1 .. kappa) V* with condition number exactly kappa.
inline CMat random_invertible_with_condition(std::mt19937_64& gen, std::size_t n,
                                             double kappa) {
    if (kappa < 1.0) throw DomainError("condition number must be >= 1");
    const CMat u = random_unitary(gen, n);
    const CMat v = random_unitary(gen, n);
    std::vector<cdouble> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = (n == 1) ? 1.0 : double(i) / double(n - 1);
        s[i] = 1.0 + (kappa - 1.0) * t;
    }
    return u * CMat::diag(s) * v.adjoint();
}

inline cdouble random_point_in_disc(std::mt19937_64& gen, double max_radius = 0.95) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double r = max_radius * std::sqrt(unif(gen));
    return r * random_unit_complex(gen);
}

inline RationalFn random_blaschke(std::mt19937_64& gen, std::size_t degree,
                                  double max_radius = 0.9) {
    std::vector<cdouble> zeros(degree);
    for (auto& z : zeros) z = random_point_in_disc(gen, max_radius);
    return RationalFn::blaschke(std::move(zeros), random_unit_complex(gen));
}

} // namespace wrho

#pragma once

#include <cmath>
#include <complex>
#include <optional>

#include "wrho/errors.hpp"

namespace wrho {

/**
 * Disc geometry and the closed-form constants relating K-spectral bounds to
 * operator-radius bounds.
 *
 * For K > 1, D_K is the disc with center (K^2+1)/(K^2-1) and radius
 * 2K/(K^2-1), the image of the disc of radius 1/K under the Cayley-type map
 * phi(z) = (1+z)/(1-z). The conversion K -> Ktilde for the rho-radius is
 *
 *   Ktilde = (K^2 + 1 + sqrt((K^2+1)^2 - 4 rho (2-rho) K^2)) / (2 rho K),
 *
 * the positive root of  rho K x^2 - (K^2+1) x + (2-rho) K = 0.
 */

struct Disc {
    std::complex<double> center;
    double radius = 0.0;
};

/// z -> (a z + b) / (c z + d), stored as the coefficient quadruple.
struct MobiusMap {
    std::complex<double> a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};

    std::complex<double> operator()(std::complex<double> z) const {
        return (a * z + b) / (c * z + d);
    }

    std::complex<double> determinant() const { return a * d - b * c; }

    /// Composition (this after g), a 2x2 coefficient product.
    MobiusMap compose(const MobiusMap& g) const {
        return MobiusMap{a * g.a + b * g.c, a * g.b + b * g.d,
                         c * g.a + d * g.c, c * g.b + d * g.d};
    }

    /// Coefficient inverse (adjugate); same map as the functional inverse.
    MobiusMap inverse() const { return MobiusMap{d, -b, -c, a}; }
};

struct ConversionRecord {
    double K = 1.0;
    double rho = 1.0;
    double Ktilde = 1.0;
    std::optional<double> alpha; ///< present only for K > 1
};

inline double ktilde_from_k(double K, double rho) {
    if (K < 1.0 || rho < 1.0)
        throw DomainError("ktilde_from_k: requires K >= 1 and rho >= 1");
    const double k2p1 = K * K + 1.0;
    const double disc = k2p1 * k2p1 - 4.0 * rho * (2.0 - rho) * K * K;
    return (k2p1 + std::sqrt(std::max(disc, 0.0))) / (2.0 * rho * K);
}

/// Inverts the conversion: the root K >= Ktilde of
/// Ktilde K^2 - (rho Ktilde^2 + 2 - rho) K + Ktilde = 0.
inline double k_from_ktilde(double Ktilde, double rho) {
    if (Ktilde < 1.0 || rho < 1.0)
        throw DomainError("k_from_ktilde: requires Ktilde >= 1 and rho >= 1");
    const double b = rho * Ktilde * Ktilde + 2.0 - rho;
    const double disc = b * b - 4.0 * Ktilde * Ktilde;
    return (b + std::sqrt(std::max(disc, 0.0))) / (2.0 * Ktilde);
}

inline Disc disc_dk(double K) {
    if (K <= 1.0)
        throw DomainError("disc_dk: defined for K > 1 only");
    const double den = K * K - 1.0;
    return Disc{{(K * K + 1.0) / den, 0.0}, 2.0 * K / den};
}

/// Scale factor of the homothety z -> alpha z + (1 - rho) carrying D_K onto
/// D_Ktilde.
inline double homothety_alpha(double K, double rho) {
    if (K <= 1.0)
        throw DomainError("homothety_alpha: requires K > 1");
    const double Kt = ktilde_from_k(K, rho);
    if (Kt * Kt - 1.0 <= 0.0)
        throw DomainError("homothety_alpha: Ktilde^2 - 1 vanished");
    return Kt / (Kt * Kt - 1.0) * (K * K - 1.0) / K;
}

/// phi_K(z) = (1 + z/K)/(1 - z/K) as a coefficient quadruple.
inline MobiusMap cayley_phi_k(double K) {
    return MobiusMap{{1.0, 0.0}, {K, 0.0}, {-1.0, 0.0}, {K, 0.0}};
}

/// The disc automorphism  b = phi_Ktilde^{-1} o (alpha z + (1-rho)) o phi_K,
/// composed symbolically on coefficients. Identity when rho = 1.
inline MobiusMap disc_automorphism_b(double K, double rho) {
    if (K <= 1.0 || rho < 1.0)
        throw DomainError("disc_automorphism_b: requires K > 1, rho >= 1");
    const double Kt = ktilde_from_k(K, rho);
    const double alpha = homothety_alpha(K, rho);
    const MobiusMap homothety{{alpha, 0.0}, {1.0 - rho, 0.0}, {0.0, 0.0}, {1.0, 0.0}};
    return cayley_phi_k(Kt).inverse().compose(homothety).compose(cayley_phi_k(K));
}

/// Constant in the rho-radius version of Drury's 5/4 bound; agrees with
/// ktilde_from_k(rho, rho).
inline double drury_constant(double rho) {
    if (rho < 1.0)
        throw DomainError("drury_constant: requires rho >= 1");
    return (rho * rho + 1.0 + (rho - 1.0) * std::sqrt(5.0 * rho * rho + 2.0 * rho + 1.0)) /
           (2.0 * rho * rho);
}

inline ConversionRecord convert_k(double K, double rho) {
    ConversionRecord rec;
    rec.K = K;
    rec.rho = rho;
    rec.Ktilde = ktilde_from_k(K, rho);
    if (K > 1.0) rec.alpha = homothety_alpha(K, rho);
    return rec;
}

} // namespace wrho

#include <catch2/catch_amalgamated.hpp>

#include "wrho/eig.hpp"
#include "wrho/sampling.hpp"
#include "wrho/solve.hpp"

using namespace wrho;
using Catch::Approx;

namespace {
double max_diff(const CMat& a, const CMat& b) {
    CMat d = a;
    d -= b;
    return d.max_abs();
}
} // namespace

TEST_CASE("herm_eig on closed-form instances") {
    SECTION("identity") {
        const auto res = herm_eig(CMat::identity(3), 1e-10);
        REQUIRE(res.eigenvalues == std::vector<double>{1.0, 1.0, 1.0});
        REQUIRE(res.residual <= 1e-10);
    }
    SECTION("diagonal, sorted ascending") {
        const auto res = herm_eig(CMat::diag({-1.0, 0.0, 2.0}), 1e-10);
        REQUIRE(res.eigenvalues[0] == Approx(-1.0).margin(1e-12));
        REQUIRE(res.eigenvalues[1] == Approx(0.0).margin(1e-12));
        REQUIRE(res.eigenvalues[2] == Approx(2.0).margin(1e-12));
    }
    SECTION("symmetric off-diagonal pair: characteristic polynomial x^2 - 1") {
        const CMat m{{0.0, 1.0}, {1.0, 0.0}};
        const auto res = herm_eig(m, 1e-10);
        REQUIRE(res.eigenvalues[0] == Approx(-1.0).margin(1e-12));
        REQUIRE(res.eigenvalues[1] == Approx(1.0).margin(1e-12));
    }
    SECTION("rejects asymmetric input") {
        const CMat m{{0.0, 1.0}, {0.0, 0.0}};
        REQUIRE_THROWS_AS(herm_eig(m, 1e-10), NotHermitianError);
    }
}

TEST_CASE("herm_eig eigenvalue sum equals trace") {
    std::mt19937_64 gen(21);
    for (std::size_t dim = 2; dim <= 10; ++dim) {
        const CMat h = random_hermitian(gen, dim);
        const auto res = herm_eig(h, 1e-10);
        double sum = 0.0;
        for (const double lam : res.eigenvalues) sum += lam;
        REQUIRE(sum == Approx(h.trace().real()).margin(1e-8 * std::max(1.0, h.frobenius_norm())));
    }
}

TEST_CASE("op_norm") {
    SECTION("zero matrix") { REQUIRE(op_norm(CMat(3, 3)) == 0.0); }
    SECTION("single off-diagonal entry") {
        const CMat m{{0.0, 1.0}, {0.0, 0.0}};
        REQUIRE(op_norm(m) == Approx(1.0).margin(1e-12));
    }
    SECTION("rotation is an isometry") {
        const double c = std::cos(0.7), s = std::sin(0.7);
        const CMat rot{{c, -s}, {s, c}};
        REQUIRE(op_norm(rot) == Approx(1.0).margin(1e-12));
    }
    SECTION("unitary invariance") {
        std::mt19937_64 gen(31);
        for (int trial = 0; trial < 10; ++trial) {
            const CMat a = random_matrix(gen, 4);
            const CMat u = random_unitary(gen, 4);
            const CMat v = random_unitary(gen, 4);
            REQUIRE(op_norm(u * a * v) == Approx(op_norm(a)).margin(1e-8));
        }
    }
}

TEST_CASE("inverse") {
    SECTION("identity and diagonal") {
        REQUIRE(max_diff(inverse(CMat::identity(3)), CMat::identity(3)) < 1e-14);
        const CMat d = inverse(CMat::diag({2.0, 4.0}));
        REQUIRE(std::abs(d(0, 0) - cdouble{0.5, 0.0}) < 1e-14);
        REQUIRE(std::abs(d(1, 1) - cdouble{0.25, 0.0}) < 1e-14);
    }
    SECTION("unit upper triangular") {
        const CMat m{{1.0, 1.0}, {0.0, 1.0}};
        const CMat expect{{1.0, -1.0}, {0.0, 1.0}};
        REQUIRE(max_diff(inverse(m), expect) < 1e-14);
    }
    SECTION("singular input") {
        const CMat m{{1.0, 2.0}, {2.0, 4.0}};
        REQUIRE_THROWS_AS(inverse(m), SingularError);
    }
    SECTION("round trip and residual on random matrices") {
        std::mt19937_64 gen(41);
        for (int trial = 0; trial < 10; ++trial) {
            const CMat a = random_matrix(gen, 5);
            const CMat ainv = inverse(a);
            CMat resid = a * ainv;
            resid -= CMat::identity(5);
            REQUIRE(resid.max_abs() < 1e-8);
            REQUIRE(max_diff(inverse(ainv), a) < 1e-8 * std::max(1.0, a.max_abs()));
        }
    }
}

TEST_CASE("spectral_radius") {
    SECTION("nilpotent") {
        const CMat n{{0.0, 1.0}, {0.0, 0.0}};
        REQUIRE(spectral_radius(n) == Approx(0.0).margin(1e-12));
    }
    SECTION("diagonal") {
        REQUIRE(spectral_radius(CMat::diag({0.3, -0.9})) == Approx(0.9).margin(1e-12));
    }
    SECTION("companion-style 2x2 with eigenvalues +-2") {
        const CMat m{{0.0, 4.0}, {1.0, 0.0}};
        REQUIRE(spectral_radius(m) == Approx(2.0).margin(1e-10));
    }
    SECTION("bounded by the operator norm; equality for normal matrices") {
        std::mt19937_64 gen(51);
        for (int trial = 0; trial < 10; ++trial) {
            const CMat a = random_matrix(gen, 5);
            REQUIRE(spectral_radius(a) <= op_norm(a) + 1e-8);
            const CMat h = random_hermitian(gen, 4);
            REQUIRE(spectral_radius(h) == Approx(op_norm(h)).margin(1e-8));
        }
    }
    SECTION("eigenvalues of a fixed non-normal matrix") {
        // char poly (1-x)(3-x) - 8 = x^2 - 4x - 5 -> eigenvalues 5, -1
        const CMat m{{1.0, 2.0}, {4.0, 3.0}};
        REQUIRE(spectral_radius(m) == Approx(5.0).margin(1e-10));
        auto eigs = eigenvalues(m);
        std::sort(eigs.begin(), eigs.end(),
                  [](cdouble a, cdouble b) { return a.real() < b.real(); });
        REQUIRE(std::abs(eigs[0] - cdouble{-1.0, 0.0}) < 1e-10);
        REQUIRE(std::abs(eigs[1] - cdouble{5.0, 0.0}) < 1e-10);
    }
    SECTION("complex spectrum of a random similarity") {
        std::mt19937_64 gen(61);
        const CMat u = random_unitary(gen, 4);
        const CMat d = CMat::diag({cdouble{0.2, 0.5}, cdouble{-0.7, 0.1}, 0.9, cdouble{0.0, -1.1}});
        const CMat t = u * d * u.adjoint();
        REQUIRE(spectral_radius(t) == Approx(1.1).margin(1e-9));
    }
}

TEST_CASE("lanczos path agrees with jacobi") {
    std::mt19937_64 gen(71);
    NumericsConfig force_lanczos;
    force_lanczos.jacobi_cutoff = 4;
    for (int trial = 0; trial < 5; ++trial) {
        const CMat h = random_hermitian(gen, 40);
        const double viaj = lambda_max_herm(h);
        const double vial = lambda_max_herm(h, force_lanczos);
        REQUIRE(vial == Approx(viaj).margin(1e-9 * std::max(1.0, h.frobenius_norm())));
        REQUIRE(lambda_min_herm(h, force_lanczos) ==
                Approx(lambda_min_herm(h)).margin(1e-9 * std::max(1.0, h.frobenius_norm())));
    }
}

TEST_CASE("mobius_factor_eval") {
    const CMat t{{0.3, 0.5}, {0.0, -0.2}};
    SECTION("a = 0 is the identity map times zeta") {
        REQUIRE(max_diff(mobius_factor_eval({0.0, 0.0}, {1.0, 0.0}, t), t) == 0.0);
    }
    SECTION("at the zero matrix the value is -zeta a I") {
        const cdouble a{0.3, 0.2}, zeta{0.0, 1.0};
        const CMat r = mobius_factor_eval(a, zeta, CMat(2, 2));
        REQUIRE(std::abs(r(0, 0) - (-zeta * a)) < 1e-15);
        REQUIRE(std::abs(r(0, 1)) == 0.0);
    }
    SECTION("scalar value") {
        const CMat z = CMat::diag({0.0});
        const CMat r = mobius_factor_eval({0.5, 0.0}, {1.0, 0.0}, z);
        REQUIRE(std::abs(r(0, 0) - cdouble{-0.5, 0.0}) < 1e-15);
    }
    SECTION("matches scalar Moebius on diagonal input") {
        const cdouble a{0.4, -0.1};
        const cdouble z{0.2, 0.6};
        const CMat r = mobius_factor_eval(a, {1.0, 0.0}, CMat::diag({z}));
        const cdouble expect = (z - a) / (1.0 - std::conj(a) * z);
        REQUIRE(std::abs(r(0, 0) - expect) < 1e-14);
    }
}

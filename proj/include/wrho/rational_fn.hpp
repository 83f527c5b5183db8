#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "wrho/cmat.hpp"
#include "wrho/detail/scan.hpp"
#include "wrho/eig.hpp"
#include "wrho/mobius.hpp"
#include "wrho/solve.hpp"

namespace wrho {

/**
 * Scalar test function on the closed unit disc. Three shapes:
 *  - Polynomial: coefficients c0 + c1 z + ...
 *  - Blaschke:   phase * prod (z - a_k)/(1 - conj(a_k) z), zeros strictly
 *                inside the disc, so the sup norm on the disc is exactly 1
 *  - Composite:  outer Moebius map applied after an inner function
 */
class RationalFn {
public:
    struct Polynomial {
        std::vector<cdouble> coeffs;
    };
    struct Blaschke {
        std::vector<cdouble> zeros;
        cdouble phase{1.0, 0.0};
    };
    struct Composite {
        MobiusMap outer;
        std::shared_ptr<const RationalFn> inner;
    };

    static RationalFn polynomial(std::vector<cdouble> coeffs) {
        RationalFn f;
        f.v_ = Polynomial{std::move(coeffs)};
        return f;
    }

    static RationalFn blaschke(std::vector<cdouble> zeros, cdouble phase = {1.0, 0.0}) {
        for (const auto& z : zeros)
            if (std::abs(z) >= 1.0)
                throw DomainError("RationalFn: Blaschke zeros must lie inside the disc");
        RationalFn f;
        f.v_ = Blaschke{std::move(zeros), phase};
        return f;
    }

    static RationalFn identity() { return polynomial({{0.0, 0.0}, {1.0, 0.0}}); }

    static RationalFn constant(cdouble c) { return polynomial({c}); }

    static RationalFn composite(MobiusMap outer, RationalFn inner) {
        if (std::abs(outer.determinant()) == 0.0)
            throw DomainError("RationalFn: degenerate outer Moebius map");
        RationalFn f;
        f.v_ = Composite{outer, std::make_shared<RationalFn>(std::move(inner))};
        return f;
    }

    /// Scale the function by a complex constant (keeps the shape when possible).
    RationalFn scaled(cdouble s) const {
        if (const auto* p = std::get_if<Polynomial>(&v_)) {
            auto c = p->coeffs;
            for (auto& ck : c) ck *= s;
            return polynomial(std::move(c));
        }
        if (const auto* b = std::get_if<Blaschke>(&v_))
            return blaschke(b->zeros, b->phase * s);
        const auto& c = std::get<Composite>(v_);
        MobiusMap outer = c.outer;
        outer.a *= s;
        outer.b *= s;
        return RationalFn{Composite{outer, c.inner}};
    }

    bool is_blaschke() const { return std::holds_alternative<Blaschke>(v_); }

    cdouble operator()(cdouble z) const {
        if (const auto* p = std::get_if<Polynomial>(&v_)) {
            cdouble acc{0.0, 0.0};
            for (std::size_t k = p->coeffs.size(); k-- > 0;) acc = acc * z + p->coeffs[k];
            return acc;
        }
        if (const auto* b = std::get_if<Blaschke>(&v_)) {
            cdouble acc = b->phase;
            for (const auto& a : b->zeros) acc *= (z - a) / (1.0 - std::conj(a) * z);
            return acc;
        }
        const auto& c = std::get<Composite>(v_);
        return c.outer((*c.inner)(z));
    }

    /// Largest zero modulus over all Blaschke factors (0 for polynomials);
    /// the reciprocal bounds where the poles start.
    double max_pole_reach() const {
        if (std::holds_alternative<Polynomial>(v_)) return 0.0;
        if (const auto* b = std::get_if<Blaschke>(&v_)) {
            double m = 0.0;
            for (const auto& a : b->zeros) m = std::max(m, std::abs(a));
            return m;
        }
        const auto& c = std::get<Composite>(v_);
        return c.inner->max_pole_reach();
    }

    std::string describe() const {
        if (const auto* p = std::get_if<Polynomial>(&v_))
            return "polynomial(deg=" + std::to_string(p->coeffs.empty() ? 0 : p->coeffs.size() - 1) + ")";
        if (const auto* b = std::get_if<Blaschke>(&v_))
            return "blaschke(deg=" + std::to_string(b->zeros.size()) + ")";
        return "composite(" + std::get<Composite>(v_).inner->describe() + ")";
    }

    template <typename Visitor>
    decltype(auto) visit(Visitor&& vis) const {
        return std::visit(std::forward<Visitor>(vis), v_);
    }

private:
    explicit RationalFn(Composite c) : v_(std::move(c)) {}
    RationalFn() = default;
    std::variant<Polynomial, Blaschke, Composite> v_;
};

/**
 * sup |f| over the closed disc. By the maximum principle only the circle
 * matters; Blaschke products short-circuit to exactly 1. For the other
 * shapes the value is a grid-plus-refinement lower bound that consumers
 * treat as the norm (hard checks add slack on their right-hand sides).
 */
inline double sup_norm_disc(const RationalFn& f, std::size_t grid = 4096) {
    if (f.is_blaschke()) return 1.0;
    const auto scan = detail::max_on_circle(
        [&](double theta) { return std::abs(f(cdouble{std::cos(theta), std::sin(theta)})); },
        grid);
    return scan.best_value;
}

/// Functional calculus f(T). Polynomials use Horner; Blaschke products are
/// ordered products of Moebius factors; composites apply the outer map in
/// resolvent form. Poles meeting the spectrum raise SingularError.
inline CMat eval_fn(const RationalFn& f, const CMat& t,
                    const NumericsConfig& cfg = default_config()) {
    t.require_square("eval_fn");
    const double reach = f.max_pole_reach();
    if (reach > 0.0) {
        const double r = spectral_radius(t);
        if (r * reach >= 1.0 - 1e-12)
            throw SingularError("eval_fn: a pole meets the spectrum");
    }
    return f.visit([&](const auto& node) -> CMat {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, RationalFn::Polynomial>) {
            return poly_eval(node.coeffs, t);
        } else if constexpr (std::is_same_v<T, RationalFn::Blaschke>) {
            CMat acc = CMat::identity(t.rows());
            for (const auto& a : node.zeros)
                acc = acc * mobius_factor_eval(a, {1.0, 0.0}, t, cfg);
            acc *= node.phase;
            return acc;
        } else {
            const CMat w = eval_fn(*node.inner, t, cfg);
            const std::size_t n = w.rows();
            CMat num = node.outer.a * w;
            for (std::size_t i = 0; i < n; ++i) num(i, i) += node.outer.b;
            CMat den = node.outer.c * w;
            for (std::size_t i = 0; i < n; ++i) den(i, i) += node.outer.d;
            return num * inverse(den, cfg);
        }
    });
}

/// k x k matrix of scalar test functions, evaluated blockwise.
struct MatrixFn {
    std::size_t k = 1;
    std::vector<RationalFn> entries; // row-major, k*k

    const RationalFn& at(std::size_t i, std::size_t j) const { return entries[i * k + j]; }
};

/// Block evaluation of a matrix function: the (i,j) block of the result is
/// entries[i][j](T), acting on the k-fold direct sum of the base space.
inline CMat amplify_eval(const MatrixFn& fm, const CMat& t,
                         const NumericsConfig& cfg = default_config()) {
    t.require_square("amplify_eval");
    if (fm.entries.size() != fm.k * fm.k)
        throw DimensionMismatchError("amplify_eval: entries must be k*k");
    const std::size_t d = t.rows();
    CMat out(fm.k * d, fm.k * d);
    for (std::size_t i = 0; i < fm.k; ++i)
        for (std::size_t j = 0; j < fm.k; ++j) {
            const CMat block = eval_fn(fm.at(i, j), t, cfg);
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) out(i * d + r, j * d + c) = block(r, c);
        }
    return out;
}

/// sup over the circle of the operator norm of the scalar k x k matrix
/// F(zeta); same grid-plus-refinement scheme as the scalar sup norm.
inline double matrix_sup_norm_disc(const MatrixFn& fm, std::size_t grid = 1024,
                                   const NumericsConfig& cfg = default_config()) {
    const auto scan = detail::max_on_circle(
        [&](double theta) {
            const cdouble z{std::cos(theta), std::sin(theta)};
            CMat m(fm.k, fm.k);
            for (std::size_t i = 0; i < fm.k; ++i)
                for (std::size_t j = 0; j < fm.k; ++j) m(i, j) = fm.at(i, j)(z);
            return op_norm(m, cfg);
        },
        grid);
    return scan.best_value;
}

} // namespace wrho

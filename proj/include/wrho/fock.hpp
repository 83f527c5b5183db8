#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wrho/cmat.hpp"
#include "wrho/detail/ascent.hpp"
#include "wrho/radii.hpp"

namespace wrho {

/// A word over generators 1..n; the empty word is the semigroup identity.
using Word = std::vector<int>;

/**
 * Truncation of the full Fock space over n generators to words of length at
 * most m. The basis is ordered by length, then lexicographically within each
 * length, which makes creation operators block-subdiagonal and the
 * truncation a plain compression.
 */
struct FockTruncation {
    std::size_t n = 1;
    std::size_t m = 0;
    std::vector<Word> basis;

    FockTruncation(std::size_t n_, std::size_t m_,
                   const NumericsConfig& cfg = default_config())
        : n(n_), m(m_) {
        if (n < 1) throw DomainError("FockTruncation: n >= 1 required");
        std::size_t count = 1, level = 1;
        for (std::size_t k = 0; k < m; ++k) {
            level *= n;
            count += level;
            if (count > cfg.dim_cap)
                throw DimensionOverflowError("FockTruncation: basis exceeds dimension cap");
        }
        basis.reserve(count);
        basis.push_back({});
        std::size_t first = 0, last = 1;
        for (std::size_t k = 0; k < m; ++k) {
            for (std::size_t w = first; w < last; ++w)
                for (int i = 1; i <= static_cast<int>(n); ++i) {
                    Word nw = basis[w];
                    nw.push_back(i);
                    basis.push_back(std::move(nw));
                }
            first = last;
            last = basis.size();
        }
    }

    std::size_t size() const { return basis.size(); }

    /// Closed-form position of a word in the length-then-lex order.
    std::size_t index(const Word& w) const {
        std::size_t off = 0, level = 1;
        for (std::size_t k = 0; k < w.size(); ++k) {
            off += level;
            level *= n;
        }
        std::size_t within = 0;
        for (const int letter : w) within = within * n + std::size_t(letter - 1);
        return off + within;
    }
};

/// Noncommutative polynomial: finitely many word-indexed complex
/// coefficients. Zero coefficients are never stored.
struct NcPoly {
    std::size_t n = 1;
    std::map<Word, cdouble> coeffs;

    void set(const Word& w, cdouble c) {
        for (const int letter : w)
            if (letter < 1 || letter > static_cast<int>(n))
                throw DomainError("NcPoly: word letter out of range");
        if (c == cdouble{0.0, 0.0})
            coeffs.erase(w);
        else
            coeffs[w] = c;
    }

    cdouble get(const Word& w) const {
        const auto it = coeffs.find(w);
        return it == coeffs.end() ? cdouble{0.0, 0.0} : it->second;
    }

    std::size_t degree() const {
        std::size_t d = 0;
        for (const auto& [w, c] : coeffs) d = std::max(d, w.size());
        return d;
    }

    cdouble constant_term() const { return get({}); }
};

/// Matrix of the compressed left creation operator S_i on the truncation:
/// e_w -> e_{i w} for |w| < m, top-degree words map to zero.
inline CMat creation_matrix(const FockTruncation& trunc, int i) {
    if (i < 1 || i > static_cast<int>(trunc.n))
        throw DomainError("creation_matrix: generator index out of range");
    const std::size_t b = trunc.size();
    CMat s(b, b);
    for (std::size_t col = 0; col < b; ++col) {
        const Word& w = trunc.basis[col];
        if (w.size() >= trunc.m) continue;
        Word nw;
        nw.reserve(w.size() + 1);
        nw.push_back(i);
        nw.insert(nw.end(), w.begin(), w.end());
        s(trunc.index(nw), col) = 1.0;
    }
    return s;
}

/// p(T_1, ..., T_n): sum of a_w T_w with word products taken left to right.
/// Shared suffixes are cached so long polynomials do not recompute products.
inline CMat eval_nc_poly(const NcPoly& p, const std::vector<CMat>& ts) {
    if (ts.size() != p.n)
        throw DimensionMismatchError("eval_nc_poly: tuple size must match generator count");
    for (const auto& t : ts) {
        t.require_square("eval_nc_poly");
        if (t.rows() != ts.front().rows())
            throw DimensionMismatchError("eval_nc_poly: tuple entries must share dimension");
    }
    const std::size_t d = ts.empty() ? 1 : ts.front().rows();
    std::map<Word, CMat> cache;
    cache.emplace(Word{}, CMat::identity(d));
    std::function<const CMat&(const Word&)> product = [&](const Word& w) -> const CMat& {
        const auto it = cache.find(w);
        if (it != cache.end()) return it->second;
        const Word suffix(w.begin() + 1, w.end());
        CMat val = ts[std::size_t(w.front() - 1)] * product(suffix);
        return cache.emplace(w, std::move(val)).first->second;
    };
    CMat acc(d, d);
    for (const auto& [w, c] : p.coeffs) acc += c * product(w);
    return acc;
}

struct NcNormResult {
    double value = 0.0;    ///< ||p(S)|| on the truncation: a lower bound of ||p||_inf
    double conv_gap = 0.0; ///< value minus the same at one lower truncation
};

/// Norm of p applied to the compressed creation tuple; nondecreasing in
/// m_max and exact once the norm is attained at finite degree.
inline NcNormResult nc_sup_norm(const NcPoly& p, std::size_t m_max,
                                const NumericsConfig& cfg = default_config()) {
    if (m_max < p.degree() + 2)
        throw DomainError("nc_sup_norm: m_max must be at least degree + 2");
    const auto norm_at = [&](std::size_t m) {
        const FockTruncation trunc(p.n, m, cfg);
        std::vector<CMat> s;
        s.reserve(p.n);
        for (int i = 1; i <= static_cast<int>(p.n); ++i)
            s.push_back(creation_matrix(trunc, i));
        return op_norm(eval_nc_poly(p, s), cfg);
    };
    NcNormResult res;
    res.value = norm_at(m_max);
    res.conv_gap = res.value - norm_at(m_max - 1);
    return res;
}

/// sqrt(sum |a_w|^2): the Fock-space norm of p as a vector, which never
/// exceeds ||p||_inf.
inline double coeff_l2_bound(const NcPoly& p) {
    double s = 0.0;
    for (const auto& [w, c] : p.coeffs) s += std::norm(c);
    return std::sqrt(s);
}

/// Joint numerical radius of a tuple: w(S_1 (x) T_1^* + ... + S_n (x) T_n^*)
/// on the truncation, reported with the value at m-1 as conv_gap. Values
/// increase toward the untruncated radius as m grows.
inline RadiusReport joint_numerical_radius(const std::vector<CMat>& ts, std::size_t m,
                                           double tol,
                                           const NumericsConfig& cfg = default_config()) {
    if (ts.empty()) throw DimensionMismatchError("joint_numerical_radius: empty tuple");
    if (m < 2) throw DomainError("joint_numerical_radius: m >= 2 required");
    const auto amplified = [&](std::size_t mm) {
        const FockTruncation trunc(ts.size(), mm, cfg);
        const std::size_t dim = trunc.size() * ts.front().rows();
        if (dim > cfg.dim_cap)
            throw DimensionOverflowError("joint_numerical_radius: tensor dimension cap");
        CMat a(dim, dim);
        for (std::size_t i = 0; i < ts.size(); ++i)
            a += kron(creation_matrix(trunc, int(i) + 1), ts[i].adjoint(), cfg);
        return a;
    };
    RadiusReport rep = numerical_radius(amplified(m), tol, cfg);
    const RadiusReport prev = numerical_radius(amplified(m - 1), tol, cfg);
    rep.conv_gap = rep.value - prev.value;
    return rep;
}

/// Ascent lower bound for the joint radius: maximizes |<x, A x>| over unit
/// vectors of the truncated tensor space, A as in joint_numerical_radius.
inline double joint_radius_variational(const std::vector<CMat>& ts,
                                       const FockTruncation& trunc, int restarts, int steps,
                                       std::uint64_t seed = 0x452821e638d01377ULL,
                                       const NumericsConfig& cfg = default_config()) {
    if (ts.empty()) throw DimensionMismatchError("joint_radius_variational: empty tuple");
    const std::size_t d = ts.front().rows();
    CMat a(trunc.size() * d, trunc.size() * d);
    for (std::size_t i = 0; i < ts.size(); ++i)
        a += kron(creation_matrix(trunc, int(i) + 1), ts[i].adjoint(), cfg);
    const auto objective = [&](const std::vector<cdouble>& x) {
        const std::vector<cdouble> ax = a.apply(x);
        cdouble q{0.0, 0.0};
        for (std::size_t r = 0; r < x.size(); ++r) q += std::conj(x[r]) * ax[r];
        return std::abs(q);
    };
    return detail::sphere_ascent_max(objective, trunc.size() * d, restarts, steps, seed);
}

/// Product truncated at degree_cap; words that would exceed the cap are
/// dropped, which leaves all coefficients below the cap exact.
inline NcPoly nc_mul(const NcPoly& p, const NcPoly& q, std::size_t degree_cap) {
    if (p.n != q.n) throw DimensionMismatchError("nc_mul: generator counts differ");
    NcPoly out;
    out.n = p.n;
    for (const auto& [wp, cp] : p.coeffs)
        for (const auto& [wq, cq] : q.coeffs) {
            if (wp.size() + wq.size() > degree_cap) continue;
            Word w = wp;
            w.insert(w.end(), wq.begin(), wq.end());
            const cdouble c = out.get(w) + cp * cq;
            out.set(w, c);
            if (out.coeffs.size() > 200000)
                throw DegreeOverflowError("nc_mul: term count exploded");
        }
    return out;
}

/// Geometric tail |a0|^{N+1} / (1 - |a0|) of the Moebius series.
inline double mobius_series_tail(double a0_mag, std::size_t n_terms) {
    return std::pow(a0_mag, double(n_terms) + 1.0) / (1.0 - a0_mag);
}

/// Smallest series length with tail below the target, capped at 200.
inline std::size_t mobius_series_terms(double a0_mag, double target = 1e-8) {
    if (a0_mag <= 0.0) return 0;
    for (std::size_t n = 0; n <= 200; ++n)
        if (mobius_series_tail(a0_mag, n) < target) return n;
    return 200;
}

/**
 * Truncated series for the disc automorphism b(z) = (z - a0)/(1 - conj(a0) z)
 * applied to p:  h_N = q * sum_{k=0..N} (conj(a0) p)^k with q = p - a0.
 * The constant coefficient vanishes identically (q has none and products
 * only lengthen words). Degrees beyond degree_cap are dropped.
 */
inline NcPoly nc_mobius_series(const NcPoly& p, std::size_t n_terms,
                               std::size_t degree_cap = 24) {
    const cdouble a0 = p.constant_term();
    if (std::abs(a0) >= 1.0)
        throw DomainError("nc_mobius_series: constant term must lie inside the disc");
    NcPoly q = p;
    q.set({}, {0.0, 0.0});
    if (q.coeffs.empty()) {
        NcPoly zero;
        zero.n = p.n;
        return zero;
    }
    NcPoly a0p = p;
    for (auto& [w, c] : a0p.coeffs) c *= std::conj(a0);
    NcPoly acc;
    acc.n = p.n;
    acc.set({}, {1.0, 0.0});
    NcPoly sum = acc;
    for (std::size_t k = 1; k <= n_terms; ++k) {
        acc = nc_mul(acc, a0p, degree_cap);
        for (const auto& [w, c] : acc.coeffs) sum.set(w, sum.get(w) + c);
        if (acc.coeffs.empty()) break;
    }
    return nc_mul(q, sum, degree_cap);
}

struct PopescuViolation {
    std::string bound;
    std::size_t poly_index = 0;
    double margin = 0.0;
};

struct PopescuReport {
    std::size_t checks_run = 0;
    std::vector<PopescuViolation> violations;
    double min_margin = 1e300;
};

/**
 * For a tuple normalized to joint radius at most 1, checks for every
 * polynomial p in the family (norms on the truncation at m, gap added on
 * the right-hand side to absorb the compression):
 *   zero constant term:  w(p(T)) <= ||p(S)|| + gap + tol
 *   always:              w(p(T)) <= (5/4)(||p(S)|| + gap) + tol
 *   always:              ||p(T)|| <= 2 (||p(S)|| + gap) + tol
 */
inline PopescuReport check_popescu_bounds(const std::vector<CMat>& ts,
                                          const std::vector<NcPoly>& family, std::size_t m,
                                          double tol = 1e-6,
                                          const NumericsConfig& cfg = default_config()) {
    PopescuReport rep;
    const auto record = [&](const char* name, std::size_t idx, double margin) {
        rep.min_margin = std::min(rep.min_margin, margin);
        ++rep.checks_run;
        if (margin < 0.0) rep.violations.push_back({name, idx, margin});
    };
    for (std::size_t i = 0; i < family.size(); ++i) {
        const NcPoly& p = family[i];
        const NcNormResult nrm = nc_sup_norm(p, m, cfg);
        const double rhs_base = nrm.value + std::max(nrm.conv_gap, 0.0);
        const CMat pt = eval_nc_poly(p, ts);
        const double w = numerical_radius(pt, 1e-8, cfg).value;
        if (std::abs(p.constant_term()) == 0.0)
            record("berger-stampfli-free", i, rhs_base + tol - w);
        record("drury-free", i, 1.25 * rhs_base + tol - w);
        record("okubo-ando-free", i, 2.0 * rhs_base + tol - op_norm(pt, cfg));
    }
    return rep;
}

} // namespace wrho

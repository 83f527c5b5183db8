#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "wrho/cmat.hpp"
#include "wrho/solve.hpp"

namespace wrho {

/// Result of a Hermitian eigendecomposition: all eigenvalues in ascending
/// order plus the worst residual max_i ||A v_i - lambda_i v_i|| over the
/// computed pairs.
struct HermEigResult {
    std::vector<double> eigenvalues;
    double residual = 0.0;
};

namespace detail {

inline cdouble dot(const std::vector<cdouble>& x, const std::vector<cdouble>& y) {
    cdouble s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

inline double nrm2(const std::vector<cdouble>& x) {
    double s = 0.0;
    for (const auto& z : x) s += std::norm(z);
    return std::sqrt(s);
}

/// Cyclic complex Jacobi sweeps. The (p,q) rotation first absorbs the phase
/// of a_pq, then applies the classical real rotation; both A and the
/// accumulated V stay exactly Hermitian / unitary up to roundoff.
/// Returns false if the off-diagonal mass fails to collapse.
inline bool jacobi_hermitian(CMat& a, CMat& v, int max_sweeps = 64) {
    const std::size_t n = a.rows();
    v = CMat::identity(n);
    if (n < 2) return true;
    const double total = std::max(a.frobenius_norm(), 1e-300);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        off = std::sqrt(2.0 * off);
        if (off <= 1e-14 * total) return true;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cdouble apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= 1e-18 * total) continue;
                const cdouble u = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // J differs from identity only in the (p,q) plane:
                //   J(p,p) = u c, J(p,q) = u s, J(q,p) = -s, J(q,q) = c.
                for (std::size_t r = 0; r < n; ++r) {
                    const cdouble arp = a(r, p), arq = a(r, q);
                    a(r, p) = c * u * arp - s * arq;
                    a(r, q) = s * u * arp + c * arq;
                }
                const cdouble ub = std::conj(u);
                for (std::size_t col = 0; col < n; ++col) {
                    const cdouble apc = a(p, col), aqc = a(q, col);
                    a(p, col) = c * ub * apc - s * aqc;
                    a(q, col) = s * ub * apc + c * aqc;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const cdouble vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = c * u * vrp - s * vrq;
                    v(r, q) = s * u * vrp + c * vrq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cdouble{a(p, p).real(), 0.0};
                a(q, q) = cdouble{a(q, q).real(), 0.0};
            }
        }
    }
    return false;
}

// Number of eigenvalues of the symmetric tridiagonal (d, off) strictly
// below x, by the Sturm / LDL^T sign count.
inline int tridiag_count_below(const std::vector<double>& d,
                               const std::vector<double>& off, double x) {
    int cnt = 0;
    double q = d[0] - x;
    if (q < 0.0) ++cnt;
    for (std::size_t i = 1; i < d.size(); ++i) {
        double denom = q;
        if (std::abs(denom) < 1e-300) denom = -1e-300;
        q = d[i] - x - off[i - 1] * off[i - 1] / denom;
        if (q < 0.0) ++cnt;
    }
    return cnt;
}

inline double tridiag_lambda_max(const std::vector<double>& d,
                                 const std::vector<double>& off) {
    const std::size_t k = d.size();
    double lo = d[0], hi = d[0];
    for (std::size_t i = 0; i < k; ++i) {
        const double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) +
                         (i + 1 < k ? std::abs(off[i]) : 0.0);
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }
    const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
    for (int it = 0; it < 200 && hi - lo > 1e-16 * scale; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (tridiag_count_below(d, off, mid) == static_cast<int>(k))
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// Eigenvector of the tridiagonal for an isolated eigenvalue, by a couple of
// rounds of shifted inverse iteration with a pivoted tridiagonal solve.
inline std::vector<double> tridiag_eigvec(const std::vector<double>& d,
                                          const std::vector<double>& off,
                                          double lambda) {
    const std::size_t k = d.size();
    std::vector<double> y(k);
    for (std::size_t i = 0; i < k; ++i) y[i] = 1.0 / std::sqrt(double(k)) * (1.0 + 1e-3 * double(i % 7));
    double scale = 0.0;
    for (std::size_t i = 0; i < k; ++i) scale = std::max(scale, std::abs(d[i]));
    for (const double b : off) scale = std::max(scale, std::abs(b));
    const double mu = lambda + 1e-12 * std::max(scale, 1.0);
    for (int pass = 0; pass < 3; ++pass) {
        // solve (T - mu I) x = y, partial pivoting, fill-in one superdiagonal
        std::vector<double> dl(k, 0.0), dg(k), du(k, 0.0), du2(k, 0.0), x = y;
        for (std::size_t i = 0; i < k; ++i) dg[i] = d[i] - mu;
        for (std::size_t i = 0; i + 1 < k; ++i) { dl[i] = off[i]; du[i] = off[i]; }
        for (std::size_t i = 0; i + 1 < k; ++i) {
            if (std::abs(dl[i]) > std::abs(dg[i])) {
                std::swap(dg[i], dl[i]);
                std::swap(du[i], dg[i + 1]);
                if (i + 2 < k) { du2[i] = du[i + 1]; du[i + 1] = 0.0; }
                std::swap(x[i], x[i + 1]);
            }
            if (std::abs(dg[i]) < 1e-300) dg[i] = 1e-300;
            const double f = dl[i] / dg[i];
            dg[i + 1] -= f * du[i];
            if (i + 2 < k) du[i + 1] -= f * du2[i];
            x[i + 1] -= f * x[i];
        }
        if (std::abs(dg[k - 1]) < 1e-300) dg[k - 1] = 1e-300;
        x[k - 1] /= dg[k - 1];
        if (k >= 2) {
            x[k - 2] = (x[k - 2] - du[k - 2] * x[k - 1]) / dg[k - 2];
            for (std::size_t ii = k - 1; ii-- > 1;) {
                const std::size_t i = ii - 1;
                x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / dg[i];
            }
        }
        double nn = 0.0;
        for (const double t : x) nn += t * t;
        nn = std::sqrt(nn);
        if (nn < 1e-300) break;
        for (std::size_t i = 0; i < k; ++i) y[i] = x[i] / nn;
    }
    return y;
}

/// Largest eigenvalue of a Hermitian matrix by Lanczos with full
/// reorthogonalization. Deterministic start vector, so repeated runs agree
/// bit for bit. Returns the Ritz value and its residual.
inline bool lanczos_lambda_max(const CMat& h, double& lambda_out, double& resid_out,
                               std::size_t kmax = 160) {
    const std::size_t n = h.rows();
    kmax = std::min(kmax, n);
    const double scale = std::max(h.frobenius_norm(), 1e-300);

    std::mt19937_64 gen(0x6a09e667f3bcc909ULL);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<cdouble> v(n);
    for (auto& z : v) z = cdouble{unif(gen), unif(gen)};
    const double n0 = nrm2(v);
    for (auto& z : v) z /= n0;

    std::vector<std::vector<cdouble>> basis;
    basis.push_back(v);
    std::vector<double> alpha, beta;
    double lambda_prev = -1e300;

    for (std::size_t j = 0; j < kmax; ++j) {
        std::vector<cdouble> w = h.apply(basis[j]);
        if (j > 0)
            for (std::size_t i = 0; i < n; ++i) w[i] -= beta[j - 1] * basis[j - 1][i];
        const double aj = dot(basis[j], w).real();
        alpha.push_back(aj);
        for (std::size_t i = 0; i < n; ++i) w[i] -= aj * basis[j][i];
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t i = 0; i <= j; ++i) {
                const cdouble c = dot(basis[i], w);
                for (std::size_t r = 0; r < n; ++r) w[r] -= c * basis[i][r];
            }
        const double bj = nrm2(w);
        const bool breakdown = bj <= 1e-14 * scale;

        if (j >= 8 || breakdown || j + 1 == kmax) {
            const double lam = tridiag_lambda_max(alpha, beta);
            const bool settled = std::abs(lam - lambda_prev) <= 1e-15 * scale;
            lambda_prev = lam;
            if (breakdown || settled || j + 1 == kmax) {
                const std::vector<double> y = tridiag_eigvec(alpha, beta, lam);
                std::vector<cdouble> vec(n, cdouble{0.0, 0.0});
                for (std::size_t i = 0; i < alpha.size(); ++i)
                    for (std::size_t r = 0; r < n; ++r) vec[r] += y[i] * basis[i][r];
                std::vector<cdouble> hv = h.apply(vec);
                double rs = 0.0;
                for (std::size_t r = 0; r < n; ++r) rs += std::norm(hv[r] - lam * vec[r]);
                rs = std::sqrt(rs);
                if (breakdown || rs <= 1e-11 * scale || j + 1 == kmax) {
                    lambda_out = lam;
                    resid_out = rs;
                    return breakdown || rs <= 1e-9 * scale;
                }
            }
        }
        if (breakdown) break;
        beta.push_back(bj);
        for (auto& z : w) z /= bj;
        basis.push_back(std::move(w));
    }
    return false;
}

} // namespace detail

/**
 * All eigenvalues of a Hermitian matrix via cyclic complex Jacobi sweeps.
 * Input must be Hermitian within tol in the max norm; the solver runs on the
 * exactly symmetrized matrix. Throws NotHermitianError on asymmetric input
 * and NoConvergenceError if the sweeps or the residual check fail.
 */
inline HermEigResult herm_eig(const CMat& m, double tol,
                              const NumericsConfig& cfg = default_config()) {
    (void)cfg;
    m.require_square("herm_eig");
    const std::size_t n = m.rows();
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            asym = std::max(asym, std::abs(m(i, j) - std::conj(m(j, i))));
    if (asym > tol)
        throw NotHermitianError("herm_eig: input not Hermitian within tolerance");

    const CMat h0 = real_part(m);
    CMat a = h0, v;
    if (!detail::jacobi_hermitian(a, v))
        throw NoConvergenceError("herm_eig: Jacobi sweeps did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    HermEigResult res;
    res.eigenvalues.reserve(n);
    double worst = 0.0;
    for (const std::size_t k : order) {
        const double lam = a(k, k).real();
        res.eigenvalues.push_back(lam);
        std::vector<cdouble> vec(n);
        for (std::size_t r = 0; r < n; ++r) vec[r] = v(r, k);
        std::vector<cdouble> hv = h0.apply(vec);
        double rs = 0.0;
        for (std::size_t r = 0; r < n; ++r) rs += std::norm(hv[r] - lam * vec[r]);
        worst = std::max(worst, std::sqrt(rs));
    }
    res.residual = worst;
    if (worst > tol * std::max(1.0, h0.frobenius_norm()))
        throw NoConvergenceError("herm_eig: residual above tolerance");
    return res;
}

/// Largest eigenvalue of an (exactly) Hermitian matrix. Small matrices use
/// Jacobi; larger ones use Lanczos with a Jacobi fallback.
inline double lambda_max_herm(const CMat& h, const NumericsConfig& cfg = default_config()) {
    if (h.rows() <= cfg.jacobi_cutoff) {
        CMat a = h, v;
        if (!detail::jacobi_hermitian(a, v))
            throw NoConvergenceError("lambda_max_herm: Jacobi did not converge");
        double best = a(0, 0).real();
        for (std::size_t i = 1; i < h.rows(); ++i) best = std::max(best, a(i, i).real());
        return best;
    }
    double lam = 0.0, resid = 0.0;
    if (detail::lanczos_lambda_max(h, lam, resid)) return lam;
    CMat a = h, v;
    if (!detail::jacobi_hermitian(a, v))
        throw NoConvergenceError("lambda_max_herm: no method converged");
    double best = a(0, 0).real();
    for (std::size_t i = 1; i < h.rows(); ++i) best = std::max(best, a(i, i).real());
    return best;
}

inline double lambda_min_herm(const CMat& h, const NumericsConfig& cfg = default_config()) {
    CMat neg = h;
    neg *= cdouble{-1.0, 0.0};
    return -lambda_max_herm(neg, cfg);
}

/// Operator (spectral) norm: sqrt of the top eigenvalue of M* M.
inline double op_norm(const CMat& m, const NumericsConfig& cfg = default_config()) {
    if (m.max_abs() == 0.0) return 0.0;
    const CMat g = real_part(m.adjoint() * m);
    const double lam = lambda_max_herm(g, cfg);
    return std::sqrt(std::max(lam, 0.0));
}

namespace detail {

inline void hessenberg_inplace(CMat& a) {
    const std::size_t n = a.rows();
    if (n < 3) return;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        std::vector<cdouble> x(n - k - 1);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = a(k + 1 + i, k);
        double xn = 0.0;
        for (const auto& z : x) xn += std::norm(z);
        xn = std::sqrt(xn);
        if (xn <= 1e-300) continue;
        cdouble phase = (std::abs(x[0]) > 0.0) ? x[0] / std::abs(x[0]) : cdouble{1.0, 0.0};
        std::vector<cdouble> v = x;
        v[0] += phase * xn;
        double vn = 0.0;
        for (const auto& z : v) vn += std::norm(z);
        if (vn <= 1e-300) continue;
        vn = std::sqrt(vn);
        for (auto& z : v) z /= vn;
        // A <- P A P with P = I - 2 v v* acting on rows/cols k+1..n-1
        for (std::size_t j = 0; j < n; ++j) {
            cdouble s = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(v[i]) * a(k + 1 + i, j);
            s *= 2.0;
            for (std::size_t i = 0; i < v.size(); ++i) a(k + 1 + i, j) -= s * v[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            cdouble s = 0.0;
            for (std::size_t j = 0; j < v.size(); ++j) s += a(i, k + 1 + j) * v[j];
            s *= 2.0;
            for (std::size_t j = 0; j < v.size(); ++j) a(i, k + 1 + j) -= s * std::conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

inline void givens_pair(cdouble f, cdouble g, double& c, cdouble& s) {
    if (std::abs(g) == 0.0) { c = 1.0; s = 0.0; return; }
    if (std::abs(f) == 0.0) { c = 0.0; s = std::conj(g) / std::abs(g); return; }
    const double d = std::sqrt(std::norm(f) + std::norm(g));
    c = std::abs(f) / d;
    s = (f / std::abs(f)) * std::conj(g) / d;
}

inline std::pair<cdouble, cdouble> eig2x2(cdouble a, cdouble b, cdouble c, cdouble d) {
    const cdouble tr = a + d;
    const cdouble disc = std::sqrt((a - d) * (a - d) * 0.25 + b * c);
    return {tr * 0.5 + disc, tr * 0.5 - disc};
}

/// Eigenvalues of an upper Hessenberg matrix by explicit single-shift QR
/// with Givens rotations. Eigenvectors are not formed; off-window coupling
/// entries never influence the eigenvalues once a subdiagonal deflates.
inline bool hessenberg_qr_eigenvalues(CMat& h, std::vector<cdouble>& eig) {
    const std::size_t n = h.rows();
    eig.clear();
    if (n == 0) return true;
    if (n == 1) { eig.push_back(h(0, 0)); return true; }
    const double eps = 1e-15;
    std::size_t m = n - 1;
    int stall = 0;
    int total = 0;
    const int total_cap = 80 * static_cast<int>(n) + 200;
    while (true) {
        // deflate negligible subdiagonals
        for (std::size_t i = 1; i <= m; ++i) {
            const double s = std::abs(h(i - 1, i - 1)) + std::abs(h(i, i));
            if (std::abs(h(i, i - 1)) <= eps * std::max(s, 1e-30)) h(i, i - 1) = 0.0;
        }
        if (m == 0 || std::abs(h(m, m - 1)) == 0.0) {
            eig.push_back(h(m, m));
            if (m == 0) break;
            --m;
            stall = 0;
            continue;
        }
        if (m == 1 || std::abs(h(m - 1, m - 2)) == 0.0) {
            const auto [l1, l2] = eig2x2(h(m - 1, m - 1), h(m - 1, m), h(m, m - 1), h(m, m));
            eig.push_back(l1);
            eig.push_back(l2);
            if (m == 1) break;
            m -= 2;
            stall = 0;
            continue;
        }
        std::size_t l = m - 1;
        while (l > 0 && std::abs(h(l, l - 1)) != 0.0) --l;

        cdouble mu;
        if (stall > 0 && stall % 12 == 0) {
            mu = h(m, m) + 0.75 * std::abs(h(m, m - 1));
        } else {
            const auto [l1, l2] = eig2x2(h(m - 1, m - 1), h(m - 1, m), h(m, m - 1), h(m, m));
            mu = (std::abs(l1 - h(m, m)) < std::abs(l2 - h(m, m))) ? l1 : l2;
        }

        for (std::size_t i = l; i <= m; ++i) h(i, i) -= mu;
        const std::size_t w = m - l + 1;
        std::vector<double> cs(w - 1);
        std::vector<cdouble> ss(w - 1);
        for (std::size_t i = l; i < m; ++i) {
            double c;
            cdouble s;
            givens_pair(h(i, i), h(i + 1, i), c, s);
            cs[i - l] = c;
            ss[i - l] = s;
            for (std::size_t j = i; j <= m; ++j) {
                const cdouble t1 = h(i, j), t2 = h(i + 1, j);
                h(i, j) = c * t1 + s * t2;
                h(i + 1, j) = -std::conj(s) * t1 + c * t2;
            }
        }
        for (std::size_t i = l; i < m; ++i) {
            const double c = cs[i - l];
            const cdouble s = ss[i - l];
            const std::size_t rmax = std::min(i + 1, m);
            for (std::size_t r = l; r <= rmax; ++r) {
                const cdouble t1 = h(r, i), t2 = h(r, i + 1);
                h(r, i) = c * t1 + std::conj(s) * t2;
                h(r, i + 1) = -s * t1 + c * t2;
            }
        }
        for (std::size_t i = l; i <= m; ++i) h(i, i) += mu;
        ++stall;
        if (++total > total_cap) return false;
    }
    return true;
}

} // namespace detail

/// Every eigenvalue of a general square matrix (Hessenberg reduction plus
/// shifted QR). Intended for the small matrices this toolkit works with.
inline std::vector<cdouble> eigenvalues(const CMat& t) {
    t.require_square("eigenvalues");
    const double scale = t.max_abs();
    if (scale == 0.0) return std::vector<cdouble>(t.rows(), cdouble{0.0, 0.0});
    CMat h = t;
    h *= cdouble{1.0 / scale, 0.0};
    detail::hessenberg_inplace(h);
    std::vector<cdouble> eig;
    if (!detail::hessenberg_qr_eigenvalues(h, eig))
        throw NoConvergenceError("eigenvalues: QR iteration did not deflate");
    for (auto& z : eig) z *= scale;
    return eig;
}

/**
 * Spectral radius max |lambda|. QR is the primary route; if it fails to
 * deflate, falls back to a Gelfand estimate from ||T^k||^(1/k) at k = 64,128
 * with one Richardson step in the exponent.
 */
inline double spectral_radius(const CMat& t, double tol = 1e-10,
                              const NumericsConfig& cfg = default_config()) {
    (void)tol;
    (void)cfg;
    t.require_square("spectral_radius");
    const double scale = t.max_abs();
    if (scale == 0.0) return 0.0;
    try {
        double r = 0.0;
        for (const auto& z : eigenvalues(t)) r = std::max(r, std::abs(z));
        return r;
    } catch (const NoConvergenceError&) {
        // ||s^k||_F is tracked in log form through per-step renormalization,
        // so powers never overflow.
        CMat s = t;
        s *= cdouble{1.0 / scale, 0.0};
        CMat p = s;
        double logsum = 0.0, log_a64 = 0.0, log_a128 = 0.0;
        for (int k = 1; k <= 128; ++k) {
            const double f = p.frobenius_norm();
            if (f == 0.0) return 0.0;
            logsum += std::log(f);
            p *= cdouble{1.0 / f, 0.0};
            if (k == 64) log_a64 = logsum / 64.0;
            if (k == 128) { log_a128 = logsum / 128.0; break; }
            p = p * s;
        }
        return std::exp(2.0 * log_a128 - log_a64) * scale;
    }
}

} // namespace wrho

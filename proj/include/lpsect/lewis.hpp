#pragma once

// Lewis position of a discrete-measure L_p norm: find invertible A with
//   F(A) = sum_j c_j ||A^T u_j||^{p-2} (A^T u_j)(A^T u_j)^T = I,
// i.e. the pushforward measure (c_j ||A^T u_j||^p, A^T u_j / ||A^T u_j||)
// is isotropic. Fixed-point iteration A <- A F(A)^{-damping/2} with a trace
// rescaling t = (m / tr F)^{1/p} each step so F = I is the unique target.
// Non-convergence is reported in the result, never thrown.

#include <cmath>
#include <stdexcept>
#include <string>

#include "lpsect/linalg.hpp"
#include "lpsect/spaces.hpp"

namespace lpsect {

// ||sum_j c_j u_j u_j^T - I||_F
inline double isotropy_residual(const DiscreteMeasure& mu) {
    return identity_residual(mu.second_moment());
}

// Measure of ||A x||: atoms (c_j ||A^T u_j||^p, A^T u_j / ||A^T u_j||), so
// that the pushforward norm at x equals the input norm at A x.
inline DiscreteMeasure pushforward(const DiscreteMeasure& mu, const Mat& A, double p) {
    if (A.rows() != mu.dim() || A.cols() != mu.dim())
        throw std::invalid_argument("pushforward: A must be m x m");
    if (!(p > 0.0) || std::isinf(p)) throw std::invalid_argument("pushforward: p must be a positive real");
    const Mat At = transpose(A);
    std::vector<Atom> out;
    out.reserve(mu.atoms().size());
    for (const Atom& a : mu.atoms()) {
        Vec v = mat_vec(At, a.dir);
        const double nv = norm2(v);
        if (!(nv > 0.0)) throw std::domain_error("pushforward: A is singular on an atom direction");
        scale(v, 1.0 / nv);
        out.push_back(Atom{a.weight * std::pow(nv, p), std::move(v)});
    }
    return DiscreteMeasure(mu.dim(), std::move(out));
}

struct LewisOptions {
    double tol = 1e-10;
    int max_iter = 10000;
    double damping = 0.5;
};

struct LewisResult {
    Mat transform;            // the map A
    DiscreteMeasure measure;  // pushforward of the input by A
    double residual = 0.0;    // ||F(A) - I||_F at exit
    int iterations = 0;
    bool converged = false;
    std::string diagnostic;
};

namespace detail {

// F(A) after rescaling A so tr F = m exactly; A is updated in place.
inline Mat isotropy_map_rescaled(const DiscreteMeasure& mu, double p, Mat& A) {
    const int m = mu.dim();
    const Mat At = transpose(A);
    Mat F(m, m);
    for (const Atom& a : mu.atoms()) {
        const Vec v = mat_vec(At, a.dir);
        const double nv = norm2(v);
        if (!(nv > 0.0)) throw std::domain_error("lewis_solve: iterate became singular");
        const double w = a.weight * std::pow(nv, p - 2.0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                F(i, j) += w * v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
    }
    const double t = std::pow(m / trace(F), 1.0 / p);
    A = mat_scale(A, t);
    return mat_scale(F, std::pow(t, p));
}

}  // namespace detail

inline LewisResult lewis_solve(const DiscreteMeasure& mu, double p, LewisOptions opts = {}) {
    if (!(p > 0.0) || std::isinf(p)) throw std::invalid_argument("lewis_solve: p must be a positive real");
    if (!(opts.tol > 0.0)) throw std::invalid_argument("lewis_solve: tol must be positive");
    if (opts.max_iter < 1) throw std::invalid_argument("lewis_solve: max_iter must be positive");
    if (!(opts.damping > 0.0) || opts.damping > 1.0)
        throw std::invalid_argument("lewis_solve: damping must be in (0, 1]");

    const int m = mu.dim();
    Mat A = Mat::identity(m);
    double residual = 0.0;
    int iter = 0;
    bool converged = false;
    std::string diagnostic;

    for (; iter <= opts.max_iter; ++iter) {
        Mat F = detail::isotropy_map_rescaled(mu, p, A);
        residual = identity_residual(F);
        if (residual < opts.tol) {
            converged = true;
            break;
        }
        if (iter == opts.max_iter) break;
        SymEig e = sym_eigen(F);
        if (e.values.front() <= 1e-14) {
            diagnostic = "isotropy map lost positive definiteness";
            break;
        }
        Mat D(m, m);
        for (int i = 0; i < m; ++i)
            D(i, i) = std::pow(e.values[static_cast<std::size_t>(i)], -0.5 * opts.damping);
        const Mat step = mat_mul(mat_mul(e.vectors, D), transpose(e.vectors));
        A = mat_mul(A, step);
    }

    if (!converged && diagnostic.empty())
        diagnostic = "no convergence after " + std::to_string(opts.max_iter) + " iterations";

    return LewisResult{A, pushforward(mu, A, p), residual, iter, converged, std::move(diagnostic)};
}

}  // namespace lpsect

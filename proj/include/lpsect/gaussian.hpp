#pragma once

// Gaussian functionals on block hyperplanes. G_theta is a standard Gaussian
// on H_theta; N(x) = (sum_i ||x_i||_X^p)^{1/p} is the gauge of the p-sum
// ball. Provides Laplace transforms E exp(-lambda N^p), negative moments
// E N^{-alpha}, the thin-slab limit identity, and negative determinant
// moments E det(sum alpha_i M_i)^{-r} for i.i.d. PD random matrices.

#include <cmath>
#include <stdexcept>
#include <utility>

#include "lpsect/linalg.hpp"
#include "lpsect/mc.hpp"
#include "lpsect/spaces.hpp"
#include "lpsect/subspace.hpp"

namespace lpsect {

namespace detail {

// sum_i ||x_i||_X^p over the n blocks of x
inline double block_power_sum(const Space& X, double p, std::span<const double> x) {
    const int m = X.dim();
    const int n = static_cast<int>(x.size()) / m;
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        s += std::pow(X.norm_unchecked(x.subspan(static_cast<std::size_t>(i) * static_cast<std::size_t>(m),
                                                 static_cast<std::size_t>(m))),
                      p);
    return s;
}

inline void check_block_args(double p, int n, const Vec& theta) {
    if (!(p > 0.0) || std::isinf(p)) throw std::invalid_argument("block functional: p must be a positive real");
    if (n < 2) throw std::invalid_argument("block functional: need n >= 2");
    if (static_cast<int>(theta.size()) != n) throw std::invalid_argument("block functional: theta must have length n");
    validate_unit_theta(theta);
}

// Writes sum_k c_k basis[k] into x without allocating.
inline void expand_coeffs(const std::vector<Vec>& basis, const Vec& c, Vec& x) {
    std::fill(x.begin(), x.end(), 0.0);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const double ck = c[k];
        const Vec& b = basis[k];
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += ck * b[i];
    }
}

}  // namespace detail

// E exp(-lambda sum_i ||(G_theta)_i||_X^p)
inline Estimate laplace_estimate(const Space& X, double p, int n, const Vec& theta, double lambda,
                                 const MCConfig& mc) {
    detail::check_block_args(p, n, theta);
    if (!(lambda > 0.0)) throw std::invalid_argument("laplace_estimate: lambda must be positive");
    const BlockHyperplane H(theta, X.dim());
    const std::vector<Vec> basis = H.subspace().basis();
    const std::size_t ambient = static_cast<std::size_t>(X.dim()) * static_cast<std::size_t>(n);

    auto f = [X, p, lambda, basis, ambient, c = Vec(basis.size()), x = Vec(ambient)](SampleStream& s) mutable {
        for (auto& v : c) v = s.next_normal();
        detail::expand_coeffs(basis, c, x);
        return std::exp(-lambda * detail::block_power_sum(X, p, x));
    };
    return mc_mean(mc, std::move(f));
}

// E N(G_theta)^{-alpha} with N the p-sum gauge; needs 0 < alpha < m(n-1).
inline Estimate negative_moment_estimate(const Space& X, double p, int n, const Vec& theta, double alpha,
                                         const MCConfig& mc) {
    detail::check_block_args(p, n, theta);
    const double ell = static_cast<double>(X.dim()) * (n - 1);
    if (!(alpha > 0.0) || !(alpha < ell))
        throw std::invalid_argument("negative_moment_estimate: alpha must lie in (0, m(n-1))");
    const BlockHyperplane H(theta, X.dim());
    const std::vector<Vec> basis = H.subspace().basis();
    const std::size_t ambient = static_cast<std::size_t>(X.dim()) * static_cast<std::size_t>(n);

    auto f = [X, p, alpha, basis, ambient, c = Vec(basis.size()), x = Vec(ambient)](SampleStream& s) mutable {
        for (auto& v : c) v = s.next_normal();
        detail::expand_coeffs(basis, c, x);
        const double npow = detail::block_power_sum(X, p, x);
        return std::exp(-(alpha / p) * std::log(npow));
    };
    return mc_mean(mc, std::move(f));
}

// E N(G_theta)^{alpha} for alpha > 0 (positive moments always exist).
inline Estimate positive_moment_estimate(const Space& X, double p, int n, const Vec& theta, double alpha,
                                         const MCConfig& mc) {
    detail::check_block_args(p, n, theta);
    if (!(alpha > 0.0)) throw std::invalid_argument("positive_moment_estimate: alpha must be positive");
    const BlockHyperplane H(theta, X.dim());
    const std::vector<Vec> basis = H.subspace().basis();
    const std::size_t ambient = static_cast<std::size_t>(X.dim()) * static_cast<std::size_t>(n);

    auto f = [X, p, alpha, basis, ambient, c = Vec(basis.size()), x = Vec(ambient)](SampleStream& s) mutable {
        for (auto& v : c) v = s.next_normal();
        detail::expand_coeffs(basis, c, x);
        const double npow = detail::block_power_sum(X, p, x);
        return npow > 0.0 ? std::exp((alpha / p) * std::log(npow)) : 0.0;
    };
    return mc_mean(mc, std::move(f));
}

// Thin-slab form of the Laplace functional:
//   (2 pi)^{m/2} eps^{-m} E[ exp(-lambda sum ||x_i||^p) 1{ ||sum theta_i x_i||_inf < eps/2 } ]
// over a standard Gaussian on all of (R^m)^n; converges to laplace_estimate
// as eps -> 0.
inline Estimate slab_laplace_estimate(const Space& X, double p, int n, const Vec& theta, double lambda,
                                      double eps, const MCConfig& mc) {
    detail::check_block_args(p, n, theta);
    if (!(lambda > 0.0)) throw std::invalid_argument("slab_laplace_estimate: lambda must be positive");
    if (!(eps > 0.0)) throw std::invalid_argument("slab_laplace_estimate: eps must be positive");
    const int m = X.dim();
    const std::size_t ambient = static_cast<std::size_t>(m) * static_cast<std::size_t>(n);

    auto f = [X, p, lambda, eps, theta, m, n, x = Vec(ambient), z = Vec(static_cast<std::size_t>(m))](
                 SampleStream& s) mutable {
        for (auto& v : x) v = s.next_normal();
        std::fill(z.begin(), z.end(), 0.0);
        for (int i = 0; i < n; ++i)
            for (int a = 0; a < m; ++a)
                z[static_cast<std::size_t>(a)] +=
                    theta[static_cast<std::size_t>(i)] *
                    x[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) + static_cast<std::size_t>(a)];
        for (double v : z)
            if (!(std::fabs(v) < 0.5 * eps)) return 0.0;
        return std::exp(-lambda * detail::block_power_sum(X, p, x));
    };
    const double factor = std::pow(2.0 * kPi, 0.5 * m) / std::pow(eps, m);
    return scale_estimate(mc_mean(mc, std::move(f)), factor);
}

// Random positive definite matrix laws for the determinant lemma.
class PSDSampler {
public:
    enum class Kind { WishartLike, DiagonalUniform, Constant };

    static PSDSampler wishart_like(int m, double ridge = 0.1) {
        if (m < 1) throw std::invalid_argument("PSDSampler: dimension must be positive");
        if (!(ridge > 0.0)) throw std::invalid_argument("PSDSampler: ridge must be positive");
        PSDSampler s(Kind::WishartLike, m);
        s.ridge_ = ridge;
        return s;
    }

    static PSDSampler diagonal_uniform(int m, double lo, double hi) {
        if (m < 1) throw std::invalid_argument("PSDSampler: dimension must be positive");
        if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("PSDSampler: need 0 < lo < hi");
        PSDSampler s(Kind::DiagonalUniform, m);
        s.lo_ = lo;
        s.hi_ = hi;
        return s;
    }

    static PSDSampler constant(Mat c) {
        Mat l;
        if (c.rows() != c.cols() || !cholesky(c, l))
            throw std::invalid_argument("PSDSampler: constant matrix must be symmetric positive definite");
        PSDSampler s(Kind::Constant, c.rows());
        s.const_ = std::move(c);
        return s;
    }

    int dim() const { return m_; }
    Kind kind() const { return kind_; }

    Mat sample(SampleStream& stream) const {
        switch (kind_) {
            case Kind::WishartLike: {
                Mat g(m_, m_);
                for (int i = 0; i < m_; ++i)
                    for (int j = 0; j < m_; ++j) g(i, j) = stream.next_normal();
                Mat w = mat_mul(transpose(g), g);
                for (int i = 0; i < m_; ++i) w(i, i) += ridge_;
                return w;
            }
            case Kind::DiagonalUniform: {
                Mat d(m_, m_);
                for (int i = 0; i < m_; ++i) d(i, i) = lo_ + (hi_ - lo_) * stream.next_uniform();
                return d;
            }
            case Kind::Constant:
                return const_;
        }
        return Mat();  // unreachable
    }

private:
    PSDSampler(Kind k, int m) : kind_(k), m_(m) {}

    Kind kind_;
    int m_;
    double ridge_ = 0.0;
    double lo_ = 0.0, hi_ = 0.0;
    Mat const_;
};

// E det(sum_i alpha_i M_i)^{-r} with M_i i.i.d. from the sampler. The n
// draws happen in fixed order independent of alpha, so runs with equal
// seeds are coupled across different weight vectors.
inline Estimate det_schur_estimate(const PSDSampler& sampler, const Vec& alphas, double r, const MCConfig& mc) {
    if (alphas.empty()) throw std::invalid_argument("det_schur_estimate: empty weights");
    double total = 0.0;
    for (double a : alphas) {
        if (!(a >= 0.0)) throw std::invalid_argument("det_schur_estimate: weights must be nonnegative");
        total += a;
    }
    if (!(total > 0.0)) throw std::invalid_argument("det_schur_estimate: weights must not all vanish");
    if (!(r > 0.0)) throw std::invalid_argument("det_schur_estimate: r must be positive");
    const int m = sampler.dim();

    auto g = [sampler, alphas, r, m](SampleStream& s) {
        Mat acc(m, m);
        for (double a : alphas) {
            const Mat Mi = sampler.sample(s);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) acc(i, j) += a * Mi(i, j);
        }
        return std::exp(-r * pd_logdet(acc));
    };
    return mc_mean(mc, std::move(g));
}

// At p = 2 with an isotropic measure the Laplace functional has the closed
// form (1 + 2 lambda)^{-m(n-1)/2} for every unit theta.
struct P2Check {
    Estimate mc;
    double closed_form = 0.0;
};

inline P2Check det_identity_p2_check(const DiscreteMeasure& mu, int n, const Vec& theta, double lambda,
                                     const MCConfig& mc) {
    if (identity_residual(mu.second_moment()) > 1e-8)
        throw std::invalid_argument("det_identity_p2_check: measure must be isotropic");
    P2Check out;
    out.mc = laplace_estimate(Space::lp_discrete(2.0, mu), 2.0, n, theta, lambda, mc);
    out.closed_form = std::pow(1.0 + 2.0 * lambda, -0.5 * mu.dim() * (n - 1));
    return out;
}

}  // namespace lpsect

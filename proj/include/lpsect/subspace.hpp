#pragma once

// Subspaces of R^N as explicit orthonormal bases, block hyperplanes
//   H_theta = { (x_1..x_n) in (R^m)^n : sum_i theta_i x_i = 0 },
// Gaussian/sphere samplers on a subspace, and blockwise application of a
// linear map T to all n blocks at once.

#include <cmath>
#include <fstream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpsect/linalg.hpp"
#include "lpsect/rng.hpp"

namespace lpsect {

class Subspace {
public:
    // Basis rows must be orthonormal within ortho_tol.
    Subspace(int ambient, std::vector<Vec> basis, double ortho_tol = 1e-12)
        : ambient_(ambient), basis_(std::move(basis)) {
        if (ambient_ < 1) throw std::invalid_argument("Subspace: ambient dimension must be positive");
        if (basis_.empty() || basis_.size() > static_cast<std::size_t>(ambient_))
            throw std::invalid_argument("Subspace: basis size out of range");
        for (const Vec& b : basis_)
            if (static_cast<int>(b.size()) != ambient_)
                throw std::invalid_argument("Subspace: basis vector dimension mismatch");
        for (std::size_t i = 0; i < basis_.size(); ++i)
            for (std::size_t j = i; j < basis_.size(); ++j) {
                const double g = dot(basis_[i], basis_[j]) - (i == j ? 1.0 : 0.0);
                if (std::fabs(g) > ortho_tol)
                    throw std::invalid_argument("Subspace: basis is not orthonormal");
            }
    }

    static Subspace full(int n) {
        std::vector<Vec> rows;
        rows.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            Vec e(static_cast<std::size_t>(n), 0.0);
            e[static_cast<std::size_t>(i)] = 1.0;
            rows.push_back(std::move(e));
        }
        return Subspace(n, std::move(rows));
    }

    // Text format: one orthonormal basis vector per row, '#' comments.
    static Subspace load(const std::string& path, double ortho_tol = 1e-10) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("Subspace::load: cannot open " + path);
        std::vector<Vec> rows;
        std::string line;
        int lineno = 0;
        int ambient = -1;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream row(line);
            Vec vals;
            double v;
            while (row >> v) vals.push_back(v);
            if (!row.eof())
                throw std::runtime_error("Subspace::load: bad token at " + path + ":" + std::to_string(lineno));
            if (vals.empty()) continue;
            if (ambient < 0) ambient = static_cast<int>(vals.size());
            if (static_cast<int>(vals.size()) != ambient)
                throw std::runtime_error("Subspace::load: inconsistent row length at " + path + ":" +
                                         std::to_string(lineno));
            rows.push_back(std::move(vals));
        }
        if (rows.empty()) throw std::runtime_error("Subspace::load: no rows in " + path);
        return Subspace(ambient, std::move(rows), ortho_tol);
    }

    int ambient_dim() const { return ambient_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Vec>& basis() const { return basis_; }

    // x = sum_k coeffs[k] * basis[k]
    Vec from_coeffs(std::span<const double> coeffs) const {
        if (coeffs.size() != basis_.size()) throw std::invalid_argument("from_coeffs: size mismatch");
        Vec x(static_cast<std::size_t>(ambient_), 0.0);
        for (std::size_t k = 0; k < basis_.size(); ++k) axpy(coeffs[k], basis_[k], x);
        return x;
    }

    Vec coeffs_of(std::span<const double> x) const {
        if (static_cast<int>(x.size()) != ambient_) throw std::invalid_argument("coeffs_of: size mismatch");
        Vec c(basis_.size());
        for (std::size_t k = 0; k < basis_.size(); ++k) c[k] = dot(basis_[k], x);
        return c;
    }

    Mat projector() const {
        Mat p(ambient_, ambient_);
        for (const Vec& b : basis_)
            for (int i = 0; i < ambient_; ++i)
                for (int j = 0; j < ambient_; ++j)
                    p(i, j) += b[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
        return p;
    }

    // Orthonormal basis of the orthogonal complement (Gram-Schmidt on the
    // coordinate basis against ours, deterministic order).
    Subspace orthogonal_complement() const;

private:
    int ambient_;
    std::vector<Vec> basis_;
};

namespace detail {

// Double-pass Gram-Schmidt of `candidates` against `fixed` (already
// orthonormal); keeps vectors whose residual norm exceeds drop_tol.
inline std::vector<Vec> gram_schmidt_extend(const std::vector<Vec>& fixed,
                                            const std::vector<Vec>& candidates,
                                            std::size_t want, double drop_tol = 1e-6) {
    std::vector<Vec> out;
    for (const Vec& cand : candidates) {
        if (out.size() == want) break;
        Vec v = cand;
        for (int pass = 0; pass < 2; ++pass) {
            for (const Vec& f : fixed) axpy(-dot(f, v), f, v);
            for (const Vec& f : out) axpy(-dot(f, v), f, v);
        }
        const double nv = norm2(v);
        if (nv > drop_tol) {
            scale(v, 1.0 / nv);
            out.push_back(std::move(v));
        }
    }
    if (out.size() != want) throw std::runtime_error("gram_schmidt_extend: candidates did not span");
    return out;
}

}  // namespace detail

inline Subspace Subspace::orthogonal_complement() const {
    std::vector<Vec> candidates;
    candidates.reserve(static_cast<std::size_t>(ambient_));
    for (int i = 0; i < ambient_; ++i) {
        Vec e(static_cast<std::size_t>(ambient_), 0.0);
        e[static_cast<std::size_t>(i)] = 1.0;
        candidates.push_back(std::move(e));
    }
    auto rows = detail::gram_schmidt_extend(basis_, candidates,
                                            static_cast<std::size_t>(ambient_) - basis_.size());
    return Subspace(ambient_, std::move(rows));
}

inline void validate_unit_theta(const Vec& theta, double tol = 1e-12) {
    if (theta.empty()) throw std::invalid_argument("theta: empty");
    if (std::fabs(norm2(theta) - 1.0) > tol)
        throw std::invalid_argument("theta: not a unit vector");
}

// Orthonormal basis of theta^perp in R^n (Gram-Schmidt on e_1..e_n).
inline std::vector<Vec> complement_basis(const Vec& theta) {
    validate_unit_theta(theta);
    const int n = static_cast<int>(theta.size());
    std::vector<Vec> candidates;
    candidates.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Vec e(static_cast<std::size_t>(n), 0.0);
        e[static_cast<std::size_t>(i)] = 1.0;
        candidates.push_back(std::move(e));
    }
    return detail::gram_schmidt_extend({theta}, candidates, static_cast<std::size_t>(n) - 1);
}

// H_theta as a subspace of R^{mn}: basis { w_k (x) e_a } where the w_k span
// theta^perp. Coordinates are blocked, x = (x_1..x_n), each x_i in R^m.
class BlockHyperplane {
public:
    BlockHyperplane(Vec theta, int m)
        : theta_(std::move(theta)), m_(m), sub_(build(theta_, m)) {
        if (theta_.size() < 2) throw std::invalid_argument("BlockHyperplane: need n >= 2");
    }

    const Vec& theta() const { return theta_; }
    int m() const { return m_; }
    int n() const { return static_cast<int>(theta_.size()); }
    const Subspace& subspace() const { return sub_; }

private:
    static Subspace build(const Vec& theta, int m) {
        if (m < 1) throw std::invalid_argument("BlockHyperplane: block dimension must be positive");
        const int n = static_cast<int>(theta.size());
        const auto ws = complement_basis(theta);
        std::vector<Vec> rows;
        rows.reserve(ws.size() * static_cast<std::size_t>(m));
        for (const Vec& w : ws)
            for (int a = 0; a < m; ++a) {
                Vec row(static_cast<std::size_t>(n) * static_cast<std::size_t>(m), 0.0);
                for (int i = 0; i < n; ++i)
                    row[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) +
                        static_cast<std::size_t>(a)] = w[static_cast<std::size_t>(i)];
                rows.push_back(std::move(row));
            }
        return Subspace(n * m, std::move(rows));
    }

    Vec theta_;
    int m_;
    Subspace sub_;
};

inline BlockHyperplane hyperplane_basis(const Vec& theta, int m) { return BlockHyperplane(theta, m); }

// Standard Gaussian on the subspace (identity covariance in basis coords).
inline Vec sample_gaussian(const Subspace& sub, SampleStream& stream) {
    Vec c(static_cast<std::size_t>(sub.dim()));
    for (auto& v : c) v = stream.next_normal();
    return sub.from_coeffs(c);
}

// Uniform on the unit sphere of the subspace.
inline Vec sample_sphere(const Subspace& sub, SampleStream& stream) {
    Vec c(static_cast<std::size_t>(sub.dim()));
    double n2 = 0.0;
    do {
        for (auto& v : c) v = stream.next_normal();
        n2 = dot(c, c);
    } while (n2 == 0.0);
    scale(c, 1.0 / std::sqrt(n2));
    return sub.from_coeffs(c);
}

// (x_1..x_n) -> (T x_1, ..., T x_n); T must be invertible m x m.
inline Vec block_transform_apply(const Mat& T, std::span<const double> x, int m, int n) {
    if (T.rows() != m || T.cols() != m) throw std::invalid_argument("block_transform_apply: T must be m x m");
    if (static_cast<int>(x.size()) != m * n)
        throw std::invalid_argument("block_transform_apply: vector length must be m*n");
    if (std::fabs(det(T)) < 1e-12) throw std::invalid_argument("block_transform_apply: T is singular");
    Vec y(x.size());
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < m; ++r) {
            double s = 0.0;
            for (int c = 0; c < m; ++c)
                s += T(r, c) * x[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) +
                                 static_cast<std::size_t>(c)];
            y[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) + static_cast<std::size_t>(r)] = s;
        }
    return y;
}

}  // namespace lpsect

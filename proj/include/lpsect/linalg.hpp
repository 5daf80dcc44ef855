#pragma once

// Small dense linear algebra for desk-scale problems (dims <= ~30).
// Row-major matrices, Jacobi eigensolver for symmetric matrices,
// LU with partial pivoting for det/solve, Cholesky for PD checks.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace lpsect {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

using Vec = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("axpy: size mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline void scale(std::span<double> x, double alpha) {
    for (auto& v : x) v *= alpha;
}

class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("Mat: negative dims");
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static Mat diag(const Vec& d) {
        Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
        for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    const std::vector<double>& data() const { return a_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> a_;
};

inline Mat mat_mul(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: shape mismatch");
    Mat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline Mat transpose(const Mat& a) {
    Mat t(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

inline Vec mat_vec(const Mat& a, std::span<const double> x) {
    if (a.cols() != static_cast<int>(x.size())) throw std::invalid_argument("mat_vec: shape mismatch");
    Vec y(static_cast<std::size_t>(a.rows()), 0.0);
    for (int i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[static_cast<std::size_t>(i)] = s;
    }
    return y;
}

inline Mat mat_add(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("mat_add: shape mismatch");
    Mat c = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
    return c;
}

inline Mat mat_scale(const Mat& a, double t) {
    Mat c = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) *= t;
    return c;
}

inline double frobenius(const Mat& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

inline double trace(const Mat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("trace: not square");
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i) s += a(i, i);
    return s;
}

// ||A - I||_F, the residual used for isotropy checks.
inline double identity_residual(const Mat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("identity_residual: not square");
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const double d = a(i, j) - (i == j ? 1.0 : 0.0);
            s += d * d;
        }
    return std::sqrt(s);
}

struct SymEig {
    Vec values;   // ascending
    Mat vectors;  // columns are eigenvectors, A = V diag(values) V^T
};

// Cyclic Jacobi; only for symmetric matrices.
inline SymEig sym_eigen(const Mat& a_in, int max_sweeps = 64) {
    if (a_in.rows() != a_in.cols()) throw std::invalid_argument("sym_eigen: not square");
    const int n = a_in.rows();
    Mat a = a_in;
    Mat v = Mat::identity(n);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (off < 1e-300) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::fabs(apq) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    SymEig out;
    out.values.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.values[static_cast<std::size_t>(i)] = a(i, i);

    // sort ascending, carrying columns along
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (out.values[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])] <
                out.values[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])])
                std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);

    Vec sorted(static_cast<std::size_t>(n));
    Mat vs(n, n);
    for (int c = 0; c < n; ++c) {
        sorted[static_cast<std::size_t>(c)] = out.values[static_cast<std::size_t>(idx[static_cast<std::size_t>(c)])];
        for (int r = 0; r < n; ++r) vs(r, c) = v(r, idx[static_cast<std::size_t>(c)]);
    }
    out.values = std::move(sorted);
    out.vectors = std::move(vs);
    return out;
}

// A^expo for symmetric positive definite A, via eigendecomposition.
inline Mat sym_pow(const Mat& a, double expo) {
    SymEig e = sym_eigen(a);
    const int n = a.rows();
    for (double w : e.values)
        if (w <= 0.0) throw std::domain_error("sym_pow: matrix not positive definite");
    Mat d(n, n);
    for (int i = 0; i < n; ++i) d(i, i) = std::pow(e.values[static_cast<std::size_t>(i)], expo);
    return mat_mul(mat_mul(e.vectors, d), transpose(e.vectors));
}

// LU with partial pivoting; returns false when numerically singular.
inline bool lu_factor(Mat& a, std::vector<int>& piv, double& det_sign) {
    const int n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("lu_factor: not square");
    piv.resize(static_cast<std::size_t>(n));
    det_sign = 1.0;
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::fabs(a(k, k));
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(a(i, k)) > best) { best = std::fabs(a(i, k)); p = i; }
        if (best == 0.0) return false;
        piv[static_cast<std::size_t>(k)] = p;
        if (p != k) {
            det_sign = -det_sign;
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
        }
        for (int i = k + 1; i < n; ++i) {
            a(i, k) /= a(k, k);
            const double f = a(i, k);
            for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return true;
}

inline double det(Mat a) {
    std::vector<int> piv;
    double sign;
    if (!lu_factor(a, piv, sign)) return 0.0;
    double d = sign;
    for (int i = 0; i < a.rows(); ++i) d *= a(i, i);
    return d;
}

inline Vec lu_solve(const Mat& a_fact, const std::vector<int>& piv, Vec b) {
    const int n = a_fact.rows();
    for (int k = 0; k < n; ++k)
        if (piv[static_cast<std::size_t>(k)] != k)
            std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(piv[static_cast<std::size_t>(k)])]);
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) b[static_cast<std::size_t>(i)] -= a_fact(i, j) * b[static_cast<std::size_t>(j)];
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) b[static_cast<std::size_t>(i)] -= a_fact(i, j) * b[static_cast<std::size_t>(j)];
        b[static_cast<std::size_t>(i)] /= a_fact(i, i);
    }
    return b;
}

inline Mat inverse(const Mat& a) {
    const int n = a.rows();
    Mat f = a;
    std::vector<int> piv;
    double sign;
    if (!lu_factor(f, piv, sign)) throw std::domain_error("inverse: singular matrix");
    Mat inv(n, n);
    for (int c = 0; c < n; ++c) {
        Vec e(static_cast<std::size_t>(n), 0.0);
        e[static_cast<std::size_t>(c)] = 1.0;
        Vec x = lu_solve(f, piv, std::move(e));
        for (int r = 0; r < n; ++r) inv(r, c) = x[static_cast<std::size_t>(r)];
    }
    return inv;
}

// In-place lower Cholesky; returns false when A is not positive definite.
inline bool cholesky(const Mat& a, Mat& l) {
    const int n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("cholesky: not square");
    l = Mat(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                if (s <= 0.0) return false;
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return true;
}

// log det of a positive definite matrix; throws if not PD.
inline double pd_logdet(const Mat& a) {
    Mat l;
    if (!cholesky(a, l)) throw std::domain_error("pd_logdet: matrix not positive definite");
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i) s += std::log(l(i, i));
    return 2.0 * s;
}

}  // namespace lpsect

#pragma once

// Schur majorization on nonnegative weight vectors and the canonical
// interpolation chain between the uniform vector and a standard basis vector.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "lpsect/linalg.hpp"

namespace lpsect {

// Nonnegative weights; total need not be 1 unless the caller says so.
struct WeightVector {
    Vec w;

    explicit WeightVector(Vec v) : w(std::move(v)) {
        if (w.empty()) throw std::invalid_argument("WeightVector: empty");
        for (double x : w)
            if (!(x >= 0.0)) throw std::invalid_argument("WeightVector: negative entry");
    }
};

// True iff a is majorized by b: sorted-descending partial sums of a never
// exceed those of b and the totals agree (within tol).
inline bool majorized_by(const WeightVector& a, const WeightVector& b, double tol = 1e-12) {
    if (a.w.size() != b.w.size()) throw std::invalid_argument("majorized_by: size mismatch");
    Vec sa = a.w, sb = b.w;
    std::sort(sa.begin(), sa.end(), std::greater<double>());
    std::sort(sb.begin(), sb.end(), std::greater<double>());
    double pa = 0.0, pb = 0.0;
    for (std::size_t k = 0; k < sa.size(); ++k) {
        pa += sa[k];
        pb += sb[k];
        if (k + 1 < sa.size() && pa > pb + tol) return false;
    }
    return std::fabs(pa - pb) <= tol;
}

inline Vec uniform_weights(int n) {
    if (n < 1) throw std::invalid_argument("uniform_weights: n must be positive");
    return Vec(static_cast<std::size_t>(n), 1.0 / n);
}

inline Vec basis_weights(int n, int i = 0) {
    if (n < 1 || i < 0 || i >= n) throw std::invalid_argument("basis_weights: bad index");
    Vec w(static_cast<std::size_t>(n), 0.0);
    w[static_cast<std::size_t>(i)] = 1.0;
    return w;
}

// Linear interpolation from uniform to e1 in weight space. Each step
// majorizes the previous one; endpoints are exact.
inline std::vector<Vec> weight_chain(int n, int steps) {
    if (n < 1) throw std::invalid_argument("weight_chain: n must be positive");
    if (steps < 1) throw std::invalid_argument("weight_chain: steps must be positive");
    std::vector<Vec> chain;
    chain.reserve(static_cast<std::size_t>(steps) + 1);
    const Vec lo = uniform_weights(n), hi = basis_weights(n, 0);
    for (int k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) / steps;
        Vec w(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = (1.0 - t) * lo[i] + t * hi[i];
        chain.push_back(std::move(w));
    }
    chain.front() = lo;
    chain.back() = hi;
    return chain;
}

// Unit direction vectors theta^(k) with squared entries following
// weight_chain: theta^(0) = (1/sqrt(n), ...), theta^(steps) = e1.
inline std::vector<Vec> majorization_chain(int n, int steps) {
    std::vector<Vec> thetas = weight_chain(n, steps);
    for (auto& w : thetas)
        for (auto& x : w) x = std::sqrt(x);
    return thetas;
}

inline Vec squared_entries(const Vec& theta) {
    Vec w(theta.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = theta[i] * theta[i];
    return w;
}

}  // namespace lpsect

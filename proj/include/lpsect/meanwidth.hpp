#pragma once

// Mean width of the polar of a central section. For C = B_p^n(X) cap H_theta
// the support function of C* on H_theta is the p-sum gauge itself, so
//   w(C*) = sphere average over S(H_theta) of (sum_i ||u_i||_X^p)^{1/p}.
// Convention: w is the average of the support function, without a factor 2.
// The dual body is never constructed. Along a majorization chain the mean
// width is nonincreasing (sections grow, polars shrink).

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lpsect/majorization.hpp"
#include "lpsect/mc.hpp"
#include "lpsect/spaces.hpp"
#include "lpsect/subspace.hpp"

namespace lpsect {

// Sphere average of gauge over the unit sphere of E.
template <class Gauge>
Estimate sphere_mean_gauge(Gauge g, const Subspace& E, const MCConfig& mc) {
    const std::vector<Vec> basis = E.basis();
    const std::size_t ambient = static_cast<std::size_t>(E.ambient_dim());

    auto f = [g, basis, ambient, c = Vec(basis.size()), x = Vec(ambient)](SampleStream& s) mutable {
        double n2 = 0.0;
        do {
            for (auto& v : c) v = s.next_normal();
            n2 = dot(c, c);
        } while (n2 == 0.0);
        const double inv = 1.0 / std::sqrt(n2);
        std::fill(x.begin(), x.end(), 0.0);
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const double ck = c[k] * inv;
            const Vec& b = basis[k];
            for (std::size_t i = 0; i < x.size(); ++i) x[i] += ck * b[i];
        }
        return g(std::span<const double>(x));
    };
    return mc_mean(mc, std::move(f));
}

// w((B_p^n(X) cap H_theta)*); the polarity reading needs a norm, so p >= 1.
inline Estimate mean_width_estimate(const Space& X, double p, int n, const Vec& theta, const MCConfig& mc) {
    if (!(p >= 1.0) || std::isinf(p))
        throw std::invalid_argument("mean_width_estimate: p must be a real in [1, inf)");
    if (n < 2) throw std::invalid_argument("mean_width_estimate: need n >= 2");
    if (static_cast<int>(theta.size()) != n)
        throw std::invalid_argument("mean_width_estimate: theta must have length n");
    validate_unit_theta(theta);
    const Space body = Space::lp_power(p, n, X);
    const BlockHyperplane H(theta, X.dim());
    return sphere_mean_gauge([body](std::span<const double> x) { return body.norm_unchecked(x); },
                             H.subspace(), mc);
}

struct MeanWidthStep {
    Vec theta;
    Estimate est;
};

struct MeanWidthCheck {
    int lo = 0;  // chain index expected larger or equal
    int hi = 0;  // next chain index, expected smaller or equal
    double sigma_slack = 0.0;
    bool pass = false;
};

struct MeanWidthReport {
    std::vector<MeanWidthStep> steps;
    std::vector<MeanWidthCheck> checks;
    bool all_pass = true;
};

// Mean widths along a majorization chain: must be nonincreasing within
// noise. All steps share one seed (coupled comparisons).
inline MeanWidthReport meanwidth_schur_suite(const Space& X, double p, int n, const std::vector<Vec>& chain,
                                             const MCConfig& mc, double nsigma = 3.0) {
    if (chain.size() < 2) throw std::invalid_argument("meanwidth_schur_suite: chain needs >= 2 steps");
    for (std::size_t k = 0; k + 1 < chain.size(); ++k)
        if (!majorized_by(WeightVector(squared_entries(chain[k])), WeightVector(squared_entries(chain[k + 1]))))
            throw std::invalid_argument("meanwidth_schur_suite: chain is not increasing in majorization");
    if (X.kind() == Space::Kind::LpDiscrete && identity_residual(X.measure().second_moment()) > 1e-8)
        throw std::invalid_argument("meanwidth_schur_suite: discrete measure is not in Lewis position");
    MeanWidthReport rep;
    rep.steps.reserve(chain.size());
    for (const Vec& theta : chain) rep.steps.push_back({theta, mean_width_estimate(X, p, n, theta, mc)});
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        const Estimate& a = rep.steps[k].est;      // expected >=
        const Estimate& b = rep.steps[k + 1].est;  // expected <=
        MeanWidthCheck c;
        c.lo = static_cast<int>(k);
        c.hi = static_cast<int>(k + 1);
        const double sig = combined_sigma(a, b);
        c.sigma_slack = sig > 0.0 ? (a.value - b.value) / sig : 0.0;
        c.pass = leq_within(b, a, nsigma);
        rep.all_pass = rep.all_pass && c.pass;
        rep.checks.push_back(c);
    }
    return rep;
}

}  // namespace lpsect

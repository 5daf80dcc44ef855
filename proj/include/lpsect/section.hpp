#pragma once

// Central section volumes by the polar negative-moment identity: for a star
// body K in R^N with gauge g and an l-dimensional subspace E,
//   |K cap E| = |B_2^l| * E_{u ~ sphere(E)} g(u)^{-l}.
// The integrand is continuous on the sphere, so the estimator has finite
// variance for every gauge handled here.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpsect/exact.hpp"
#include "lpsect/majorization.hpp"
#include "lpsect/mc.hpp"
#include "lpsect/spaces.hpp"
#include "lpsect/subspace.hpp"

namespace lpsect {

template <class Gauge>
Estimate section_volume_gauge(Gauge g, const Subspace& E, const MCConfig& mc) {
    const int ell = E.dim();
    const std::vector<Vec> basis = E.basis();
    const std::size_t ambient = static_cast<std::size_t>(E.ambient_dim());

    auto f = [g, ell, basis, ambient, c = Vec(basis.size()), x = Vec(ambient)](SampleStream& s) mutable {
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
        return std::exp(-ell * std::log(g(std::span<const double>(x))));
    };
    return scale_estimate(mc_mean(mc, std::move(f)), lp_ball_volume(ell, 2.0).value);
}

// |B_p^n(X) cap E| for a subspace E of (R^m)^n.
inline Estimate section_volume(const Space& X, double p, int n, const Subspace& E, const MCConfig& mc) {
    if (n < 1) throw std::invalid_argument("section_volume: need n >= 1");
    if (E.ambient_dim() != X.dim() * n)
        throw std::invalid_argument("section_volume: subspace ambient dimension mismatch");
    const Space body = Space::lp_power(p, n, X);
    return section_volume_gauge([body](std::span<const double> x) { return body.norm_unchecked(x); }, E, mc);
}

// |B_p^n(X) cap H_theta|.
inline Estimate section_volume(const Space& X, double p, int n, const Vec& theta, const MCConfig& mc) {
    if (static_cast<int>(theta.size()) != n) throw std::invalid_argument("section_volume: theta must have length n");
    validate_unit_theta(theta);
    const BlockHyperplane H(theta, X.dim());
    return section_volume(X, p, n, H.subspace(), mc);
}

struct ChainStep {
    Vec theta;
    Estimate est;
};

struct ChainCheck {
    int lo = 0;       // chain index expected smaller
    int hi = 0;       // chain index expected larger
    double sigma_slack = 0.0;  // (larger - smaller) / combined sigma
    bool pass = false;
};

struct SectionReport {
    std::vector<ChainStep> steps;
    std::vector<ChainCheck> checks;           // consecutive-pair orderings
    Estimate endpoint;                        // |B_p^{n-1}(X)|, a full-dimensional section
    std::vector<ChainCheck> endpoint_checks;  // step k <= endpoint (hi = -1 marks the endpoint)
    bool all_pass = true;
};

// Sections along a majorization chain of directions: squared weights grow in
// majorization order, so volumes must be nondecreasing within noise. All
// steps share one seed, so the comparisons are between coupled runs. Every
// step is also checked against the endpoint value |B_p^{n-1}(X)|, estimated
// independently as a full-dimensional section of the (n-1)-fold power.
inline SectionReport schur_section_suite(const Space& X, double p, int n, const std::vector<Vec>& chain,
                                         const MCConfig& mc, double nsigma = 3.0) {
    if (chain.size() < 2) throw std::invalid_argument("schur_section_suite: chain needs >= 2 steps");
    for (std::size_t k = 0; k + 1 < chain.size(); ++k)
        if (!majorized_by(WeightVector(squared_entries(chain[k])), WeightVector(squared_entries(chain[k + 1]))))
            throw std::invalid_argument("schur_section_suite: chain is not increasing in majorization");
    SectionReport rep;
    rep.steps.reserve(chain.size());
    for (const Vec& theta : chain) rep.steps.push_back({theta, section_volume(X, p, n, theta, mc)});
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        const Estimate& a = rep.steps[k].est;
        const Estimate& b = rep.steps[k + 1].est;
        ChainCheck c;
        c.lo = static_cast<int>(k);
        c.hi = static_cast<int>(k + 1);
        const double sig = combined_sigma(a, b);
        c.sigma_slack = sig > 0.0 ? (b.value - a.value) / sig : 0.0;
        c.pass = leq_within(a, b, nsigma);
        rep.all_pass = rep.all_pass && c.pass;
        rep.checks.push_back(c);
    }

    const Space slice = Space::lp_power(p, n - 1, X);
    rep.endpoint = section_volume_gauge([slice](std::span<const double> x) { return slice.norm_unchecked(x); },
                                        Subspace::full(slice.dim()), mc);
    for (std::size_t k = 0; k < rep.steps.size(); ++k) {
        const Estimate& a = rep.steps[k].est;
        ChainCheck c;
        c.lo = static_cast<int>(k);
        c.hi = -1;
        const double sig = combined_sigma(a, rep.endpoint);
        c.sigma_slack = sig > 0.0 ? (rep.endpoint.value - a.value) / sig : 0.0;
        c.pass = leq_within(a, rep.endpoint, nsigma);
        rep.all_pass = rep.all_pass && c.pass;
        rep.endpoint_checks.push_back(c);
    }
    return rep;
}

struct InvarianceResult {
    Estimate sect_x_theta, sect_x_phi, sect_tx_theta, sect_tx_phi;
    double det_factor = 0.0;  // |det T|^{n-1}
    double ratio_x = 0.0, ratio_tx = 0.0, ratio_sigma = 0.0;
    bool ratios_agree = false;
    bool factor_agrees = false;
};

namespace detail {

inline double ratio_stderr(const Estimate& a, const Estimate& b) {
    const double r = a.value / b.value;
    const double ra = a.std_error / a.value;
    const double rb = b.std_error / b.value;
    return std::fabs(r) * std::sqrt(ra * ra + rb * rb);
}

}  // namespace detail

// Section volumes transform as |B_p^n(TX) cap H| = |det T|^{n-1} |B_p^n(X) cap H|,
// so the theta/phi ratio is invariant under block transformations. Both the
// ratio agreement and the absolute determinant factor are checked at nsigma.
inline InvarianceResult invariance_ratio_check(const Space& X, double p, int n, const Mat& T, const Vec& theta,
                                               const Vec& phi, const MCConfig& mc, double nsigma = 3.0) {
    const int m = X.dim();
    if (T.rows() != m || T.cols() != m) throw std::invalid_argument("invariance_ratio_check: T must be m x m");
    const double dT = det(T);
    if (std::fabs(dT) < 1e-12) throw std::invalid_argument("invariance_ratio_check: T is singular");

    const Space body = Space::lp_power(p, n, X);
    const Mat Tinv = inverse(T);
    auto gauge_x = [body](std::span<const double> x) { return body.norm_unchecked(x); };
    auto gauge_tx = [body, Tinv, m, n, y = Vec(static_cast<std::size_t>(m) * static_cast<std::size_t>(n))](
                        std::span<const double> x) mutable {
        for (int i = 0; i < n; ++i)
            for (int r = 0; r < m; ++r) {
                double s = 0.0;
                for (int c = 0; c < m; ++c)
                    s += Tinv(r, c) * x[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) +
                                        static_cast<std::size_t>(c)];
                y[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) + static_cast<std::size_t>(r)] = s;
            }
        return body.norm_unchecked(y);
    };

    const BlockHyperplane Ht(theta, m), Hp(phi, m);
    InvarianceResult r;
    r.sect_x_theta = section_volume_gauge(gauge_x, Ht.subspace(), mc);
    r.sect_x_phi = section_volume_gauge(gauge_x, Hp.subspace(), mc);
    r.sect_tx_theta = section_volume_gauge(gauge_tx, Ht.subspace(), mc);
    r.sect_tx_phi = section_volume_gauge(gauge_tx, Hp.subspace(), mc);

    r.det_factor = std::pow(std::fabs(dT), n - 1);
    r.ratio_x = r.sect_x_theta.value / r.sect_x_phi.value;
    r.ratio_tx = r.sect_tx_theta.value / r.sect_tx_phi.value;
    const double s1 = detail::ratio_stderr(r.sect_x_theta, r.sect_x_phi);
    const double s2 = detail::ratio_stderr(r.sect_tx_theta, r.sect_tx_phi);
    r.ratio_sigma = std::sqrt(s1 * s1 + s2 * s2);
    r.ratios_agree = std::fabs(r.ratio_x - r.ratio_tx) <= nsigma * r.ratio_sigma + 1e-12;

    const Estimate scaled = scale_estimate(r.sect_x_theta, r.det_factor);
    const double sig = combined_sigma(scaled, r.sect_tx_theta);
    r.factor_agrees = std::fabs(r.sect_tx_theta.value - scaled.value) <= nsigma * sig + 1e-12;
    return r;
}

}  // namespace lpsect

#pragma once

// Orthogonal projections of convex bodies. Membership in Proj_F(L) at a
// point y in F is a convex feasibility problem:
//   min { gauge_L(y + w) : w in F^perp }  <= 1,
// solved by Nelder-Mead descent over complement coordinates with
// deterministic multistarts. Projection volumes are hit-or-miss Monte Carlo
// over a bounding box in subspace coordinates; the box half-width is a sound
// circumradius bound, so enlargement only adds variance, never bias.
//
// For the block case L = K^n and F = H_theta the complement is
// { theta (x) z : z in R^m }, so the membership test reduces to
//   exists z : gauge_K(y_i + theta_i z) <= 1 for all i.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpsect/exact.hpp"
#include "lpsect/linalg.hpp"
#include "lpsect/mc.hpp"
#include "lpsect/section.hpp"
#include "lpsect/spaces.hpp"
#include "lpsect/subspace.hpp"

namespace lpsect {

struct MembershipConfig {
    double tol = 1e-8;
    int max_iter = 400;   // Nelder-Mead iterations per start
    int multistarts = 8;
};

// Convex body given by its gauge; boxes are recentered so the gauge is the
// Minkowski functional of the translate containing the origin.
class ConvexBody {
public:
    static ConvexBody from_space(const Space& X) {
        if (!X.convex())
            throw std::invalid_argument("ConvexBody: unit ball is not convex (an exponent is below 1)");
        ConvexBody b;
        b.dim_ = X.dim();
        b.gauge_ = [X](std::span<const double> x) { return X.norm_unchecked(x); };
        b.circum_ = X.circumradius_bound();
        if (auto v = space_ball_volume(X)) b.log_vol_ = v->log_value;
        return b;
    }

    static ConvexBody box(Vec lo, Vec hi) {
        if (lo.size() != hi.size() || lo.empty()) throw std::invalid_argument("ConvexBody::box: bad bounds");
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (!(lo[i] < hi[i])) throw std::invalid_argument("ConvexBody::box: need lo < hi");
        ConvexBody b;
        b.dim_ = static_cast<int>(lo.size());
        Vec c(lo.size()), h(lo.size());
        double r2 = 0.0, lv = 0.0;
        for (std::size_t i = 0; i < lo.size(); ++i) {
            c[i] = 0.5 * (lo[i] + hi[i]);
            h[i] = 0.5 * (hi[i] - lo[i]);
            r2 += std::max(lo[i] * lo[i], hi[i] * hi[i]);
            lv += std::log(hi[i] - lo[i]);
        }
        b.gauge_ = [c, h](std::span<const double> x) {
            double g = 0.0;
            for (std::size_t i = 0; i < c.size(); ++i) g = std::max(g, std::fabs(x[i] - c[i]) / h[i]);
            return g;
        };
        b.circum_ = std::sqrt(r2);
        b.log_vol_ = lv;
        return b;
    }

    int dim() const { return dim_; }
    double gauge(std::span<const double> x) const {
        if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("ConvexBody::gauge: dimension mismatch");
        return gauge_(x);
    }
    double gauge_unchecked(std::span<const double> x) const { return gauge_(x); }
    double circumradius() const { return circum_; }
    std::optional<double> exact_log_volume() const { return log_vol_; }

private:
    int dim_ = 0;
    std::function<double(std::span<const double>)> gauge_;
    double circum_ = 0.0;
    std::optional<double> log_vol_;
};

namespace detail {

// Nelder-Mead on f: R^d -> R from start x0; returns the best value seen.
// Stops early once the value drops below accept_below.
template <class F>
double nelder_mead_min(F&& f, const Vec& x0, double step, int max_iter, double accept_below) {
    const std::size_t d = x0.size();
    if (d == 0) return f(x0);
    std::vector<Vec> pt(d + 1, x0);
    Vec fv(d + 1);
    for (std::size_t j = 0; j < d; ++j) pt[j + 1][j] += step;
    double best = 1e300;
    for (std::size_t j = 0; j <= d; ++j) {
        fv[j] = f(pt[j]);
        best = std::min(best, fv[j]);
        if (best < accept_below) return best;
    }

    Vec centroid(d), xr(d), xe(d), xc(d);
    for (int it = 0; it < max_iter; ++it) {
        // order: lo = best, hi = worst, sh = second worst
        std::size_t lo = 0, hi = 0, sh = 0;
        for (std::size_t j = 1; j <= d; ++j) {
            if (fv[j] < fv[lo]) lo = j;
            if (fv[j] > fv[hi]) hi = j;
        }
        sh = (hi == 0) ? 1 : 0;
        for (std::size_t j = 0; j <= d; ++j)
            if (j != hi && fv[j] > fv[sh]) sh = j;

        if (fv[hi] - fv[lo] < 1e-12 * (1.0 + std::fabs(fv[lo]))) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t j = 0; j <= d; ++j)
            if (j != hi) axpy(1.0 / static_cast<double>(d), pt[j], centroid);

        auto try_point = [&](Vec& dst, double coef) {
            for (std::size_t k = 0; k < d; ++k) dst[k] = centroid[k] + coef * (pt[hi][k] - centroid[k]);
            return f(dst);
        };

        const double fr = try_point(xr, -1.0);
        best = std::min(best, fr);
        if (best < accept_below) return best;

        if (fr < fv[lo]) {
            const double fe = try_point(xe, -2.0);
            best = std::min(best, fe);
            if (best < accept_below) return best;
            if (fe < fr) { pt[hi] = xe; fv[hi] = fe; }
            else { pt[hi] = xr; fv[hi] = fr; }
        } else if (fr < fv[sh]) {
            pt[hi] = xr;
            fv[hi] = fr;
        } else {
            const double fc = try_point(xc, fr < fv[hi] ? -0.5 : 0.5);
            best = std::min(best, fc);
            if (best < accept_below) return best;
            if (fc < std::min(fr, fv[hi])) { pt[hi] = xc; fv[hi] = fc; }
            else {
                // shrink toward the best vertex
                for (std::size_t j = 0; j <= d; ++j) {
                    if (j == lo) continue;
                    for (std::size_t k = 0; k < d; ++k) pt[j][k] = pt[lo][k] + 0.5 * (pt[j][k] - pt[lo][k]);
                    fv[j] = f(pt[j]);
                    best = std::min(best, fv[j]);
                    if (best < accept_below) return best;
                }
            }
        }
    }
    return best;
}

// min over w in span(comp) of gauge(y + w), with deterministic multistarts.
template <class GaugeFn>
double min_gauge_over_complement(GaugeFn& g, const std::vector<Vec>& comp, std::span<const double> y,
                                 double scale_hint, const MembershipConfig& cfg) {
    const std::size_t d = comp.size();
    Vec x(y.size());
    auto objective = [&](const Vec& w) {
        std::copy(y.begin(), y.end(), x.begin());
        for (std::size_t k = 0; k < d; ++k) axpy(w[k], comp[k], x);
        return g(std::span<const double>(x));
    };

    const double accept = 1.0 - 10.0 * cfg.tol;
    double best = objective(Vec(d, 0.0));
    if (d == 0 || best < accept) return best;

    const double step = std::max(0.25 * scale_hint, 1e-3);
    for (int s = 0; s < cfg.multistarts; ++s) {
        Vec w0(d, 0.0);
        if (s > 0) {
            SampleStream stream(0x6d656d62u, static_cast<std::uint64_t>(s));
            for (auto& v : w0) v = scale_hint * stream.next_normal();
        }
        best = std::min(best, nelder_mead_min(objective, w0, step, cfg.max_iter, accept));
        if (best < accept) return best;
    }
    return best;
}

}  // namespace detail

// Membership of y (a point of F, validated) in Proj_F(L) for the body L
// given by `gauge` with circumradius bound R. Boundary-ambiguous points
// (optimum within tol of 1) count as members.
template <class GaugeFn>
bool subspace_membership_gauge(GaugeFn gauge, double R, const Subspace& F, std::span<const double> y,
                               const MembershipConfig& cfg = {}) {
    if (static_cast<int>(y.size()) != F.ambient_dim())
        throw std::invalid_argument("subspace_membership_gauge: point dimension mismatch");
    Vec res(y.begin(), y.end());
    for (const Vec& b : F.basis()) axpy(-dot(b, std::span<const double>(y)), b, res);
    if (norm2(res) > 1e-10 * (1.0 + norm2(y)))
        throw std::invalid_argument("subspace_membership_gauge: point is not in the subspace");
    const auto comp = F.orthogonal_complement().basis();
    const double best = detail::min_gauge_over_complement(gauge, comp, y, R, cfg);
    return best <= 1.0 + cfg.tol;
}

// Membership of y in Proj_{H_theta}(K^n); y lives in (R^m)^n. The witness
// condition is: exists z with gauge_K(y_i + theta_i z) <= 1 + tol for all i.
// Blocks with theta_i = 0 are fixed. Any two active blocks i, j admit a
// common z iff gauge_K(theta_j y_i - theta_i y_j) <= (|theta_i| + |theta_j|),
// since the feasible z-sets are translated dilates of K. That makes one or
// two active blocks exact; for three or more it is a necessary pre-filter
// ahead of the simplex descent over z.
inline bool projection_membership(const ConvexBody& K, int n, const Vec& theta, std::span<const double> y,
                                  const MembershipConfig& cfg = {}) {
    if (static_cast<int>(theta.size()) != n)
        throw std::invalid_argument("projection_membership: theta must have length n");
    validate_unit_theta(theta);
    const std::size_t m = static_cast<std::size_t>(K.dim());
    if (y.size() != m * static_cast<std::size_t>(n))
        throw std::invalid_argument("projection_membership: point dimension mismatch");

    // y in H_theta means sum_i theta_i y_i = 0.
    Vec res(m, 0.0);
    for (int i = 0; i < n; ++i)
        for (std::size_t a = 0; a < m; ++a) res[a] += theta[static_cast<std::size_t>(i)] * y[i * m + a];
    if (norm2(res) > 1e-10 * (1.0 + norm2(y)))
        throw std::invalid_argument("projection_membership: point is not in the hyperplane");

    const double feas = 1.0 + cfg.tol;
    std::vector<int> active;
    for (int i = 0; i < n; ++i) {
        if (theta[static_cast<std::size_t>(i)] == 0.0) {
            if (K.gauge_unchecked(y.subspan(i * m, m)) > feas) return false;
        } else {
            active.push_back(i);
        }
    }
    if (active.size() <= 1) return true;

    Vec diff(m);
    for (std::size_t a = 0; a < active.size(); ++a)
        for (std::size_t b = a + 1; b < active.size(); ++b) {
            const double ti = theta[static_cast<std::size_t>(active[a])];
            const double tj = theta[static_cast<std::size_t>(active[b])];
            for (std::size_t r = 0; r < m; ++r) diff[r] = tj * y[active[a] * m + r] - ti * y[active[b] * m + r];
            if (K.gauge_unchecked(diff) > (std::fabs(ti) + std::fabs(tj)) * feas) return false;
        }
    if (active.size() == 2) return true;

    auto objective = [&](const Vec& z) {
        double g = 0.0;
        for (int i : active) {
            for (std::size_t r = 0; r < m; ++r) diff[r] = y[i * m + r] + theta[static_cast<std::size_t>(i)] * z[r];
            g = std::max(g, K.gauge_unchecked(diff));
        }
        return g;
    };

    // Witness candidates: z = 0 and the z zeroing each active block.
    double best = objective(Vec(m, 0.0));
    if (best <= feas) return true;
    double tmax = 0.0, ynorm = 0.0;
    for (int i : active) {
        tmax = std::max(tmax, std::fabs(theta[static_cast<std::size_t>(i)]));
        Vec z(m);
        for (std::size_t r = 0; r < m; ++r) z[r] = -y[i * m + r] / theta[static_cast<std::size_t>(i)];
        best = std::min(best, objective(z));
        if (best <= feas) return true;
        ynorm = std::max(ynorm, norm2(std::span<const double>(y.data() + i * m, m)));
    }

    const double scale = (K.circumradius() + ynorm) / tmax;
    const double step = std::max(0.25 * scale, 1e-3);
    for (int s = 0; s < cfg.multistarts; ++s) {
        Vec z0(m, 0.0);
        if (s > 0) {
            SampleStream stream(0x6d656d62u, static_cast<std::uint64_t>(s));
            for (auto& v : z0) v = scale * stream.next_normal();
        }
        best = std::min(best, detail::nelder_mead_min(objective, z0, step, cfg.max_iter, 1.0 - 10.0 * cfg.tol));
        if (best <= feas) return true;
    }
    return best <= feas;
}

// |Proj_F(L)| by hit-or-miss sampling of the box [-R, R]^dim(F) in subspace
// coordinates, R an upper bound for the circumradius of L.
template <class GaugeFn>
Estimate projection_volume_gauge(GaugeFn gauge, double R, const Subspace& F, const MembershipConfig& cfg,
                                 const MCConfig& mc) {
    if (!(R > 0.0)) throw std::invalid_argument("projection_volume_gauge: R must be positive");
    const int d = F.dim();
    const auto comp = F.orthogonal_complement().basis();
    const std::vector<Vec> basis = F.basis();
    const std::size_t ambient = static_cast<std::size_t>(F.ambient_dim());

    auto f = [gauge, R, cfg, comp, basis, ambient, y = Vec(ambient)](SampleStream& s) mutable {
        std::fill(y.begin(), y.end(), 0.0);
        for (const Vec& b : basis) {
            const double c = R * (2.0 * s.next_uniform() - 1.0);
            for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * b[i];
        }
        GaugeFn g = gauge;
        const double best = detail::min_gauge_over_complement(g, comp, y, R, cfg);
        return best <= 1.0 + cfg.tol ? 1.0 : 0.0;
    };
    return scale_estimate(mc_mean(mc, std::move(f)), std::pow(2.0 * R, d));
}

inline Estimate projection_volume(const ConvexBody& K, int n, const Vec& theta, const MembershipConfig& cfg,
                                  const MCConfig& mc) {
    if (static_cast<int>(theta.size()) != n)
        throw std::invalid_argument("projection_volume: theta must have length n");
    validate_unit_theta(theta);
    const int m = K.dim();
    const double R = std::sqrt(static_cast<double>(n)) * K.circumradius();
    const BlockHyperplane H(theta, m);
    const std::vector<Vec> basis = H.subspace().basis();
    const int d = static_cast<int>(basis.size());

    auto f = [&K, n, theta, cfg, R, basis, y = Vec(static_cast<std::size_t>(m) * static_cast<std::size_t>(n))](
                 SampleStream& s) mutable {
        std::fill(y.begin(), y.end(), 0.0);
        for (const Vec& b : basis) {
            const double c = R * (2.0 * s.next_uniform() - 1.0);
            for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * b[i];
        }
        return projection_membership(K, n, theta, y, cfg) ? 1.0 : 0.0;
    };
    return scale_estimate(mc_mean(mc, std::move(f)), std::pow(2.0 * R, d));
}

// |Proj_{H_theta}(K^n)| >= |K|^{n-1}, checked at nsigma slack. Needs a body
// with a closed-form volume.
struct ProjBoundResult {
    Estimate proj;
    double bound = 0.0;
    double sigma_slack = 0.0;
    bool holds = false;
};

inline ProjBoundResult projection_lower_bound_check(const ConvexBody& K, int n, const Vec& theta,
                                                    const MembershipConfig& cfg, const MCConfig& mc,
                                                    double nsigma = 3.0) {
    if (!K.exact_log_volume())
        throw std::invalid_argument("projection_lower_bound_check: body needs a closed-form volume");
    ProjBoundResult r;
    r.proj = projection_volume(K, n, theta, cfg, mc);
    r.bound = std::exp((n - 1) * *K.exact_log_volume());
    const double sig = r.proj.std_error;
    r.sigma_slack = sig > 0.0 ? (r.proj.value - r.bound) / sig : (r.proj.value - r.bound);
    r.holds = r.proj.value + nsigma * sig >= r.bound;
    return r;
}

// Max-abs deviation of (1/2^n n!) sum_{eps,sigma} P_{eps,sigma} from
// ((n-1)/n) I_{mn}, where P is the projector onto H_{eps . theta_sigma}.
// The sum has 2^n n! terms; long double accumulation keeps the assembled
// average well below the 1e-12 gate.
inline double block_decomposition_deviation(int n, int m, const Vec& theta) {
    if (n < 2 || n > 7) throw std::invalid_argument("block_decomposition_deviation: need 2 <= n <= 7");
    if (m < 1) throw std::invalid_argument("block_decomposition_deviation: m must be positive");
    if (static_cast<int>(theta.size()) != n)
        throw std::invalid_argument("block_decomposition_deviation: theta must have length n");
    validate_unit_theta(theta);

    const int N = n * m;
    std::vector<long double> acc(static_cast<std::size_t>(N) * static_cast<std::size_t>(N), 0.0L);
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    Vec eta(static_cast<std::size_t>(n));

    std::uint64_t terms = 0;
    do {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            for (int i = 0; i < n; ++i)
                eta[static_cast<std::size_t>(i)] = ((mask >> i) & 1u ? -1.0 : 1.0) *
                                                   theta[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
            // P = I_{mn} - (eta eta^T) (x) I_m, nonzero only where a == b
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const long double v = (i == j ? 1.0L : 0.0L) -
                                          static_cast<long double>(eta[static_cast<std::size_t>(i)]) *
                                              static_cast<long double>(eta[static_cast<std::size_t>(j)]);
                    for (int a = 0; a < m; ++a)
                        acc[static_cast<std::size_t>(i * m + a) * static_cast<std::size_t>(N) +
                            static_cast<std::size_t>(j * m + a)] += v;
                }
            ++terms;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    const long double scale = 1.0L / static_cast<long double>(terms);
    const long double target = static_cast<long double>(n - 1) / static_cast<long double>(n);
    long double dev = 0.0L;
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) {
            const long double want = (r == c) ? target : 0.0L;
            const long double got = acc[static_cast<std::size_t>(r) * static_cast<std::size_t>(N) +
                                        static_cast<std::size_t>(c)] * scale;
            dev = std::max(dev, std::fabs(got - want));
        }
    return static_cast<double>(dev);
}

// Max-abs deviation of (1/2^n n!) sum_{eps,sigma} Q_{eps,sigma} P_F Q_{eps,sigma}^T
// from (d/n) I_n, for the signed-permutation operators (Q x)_i = eps_i x_{sigma(i)}.
inline double onesym_decomposition_deviation(const Subspace& F) {
    const int n = F.ambient_dim();
    const int d = F.dim();
    if (n < 2 || n > 7) throw std::invalid_argument("onesym_decomposition_deviation: need 2 <= ambient <= 7");
    const Mat P = F.projector();

    std::vector<long double> acc(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0L);
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;

    std::uint64_t terms = 0;
    do {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            for (int i = 0; i < n; ++i) {
                const double ei = ((mask >> i) & 1u) ? -1.0 : 1.0;
                for (int j = 0; j < n; ++j) {
                    const double ej = ((mask >> j) & 1u) ? -1.0 : 1.0;
                    acc[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] +=
                        static_cast<long double>(ei * ej *
                                                 P(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]));
                }
            }
            ++terms;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    const long double scale = 1.0L / static_cast<long double>(terms);
    const long double target = static_cast<long double>(d) / static_cast<long double>(n);
    long double dev = 0.0L;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const long double want = (i == j) ? target : 0.0L;
            dev = std::max(dev, std::fabs(acc[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                                              static_cast<std::size_t>(j)] * scale - want));
        }
    return static_cast<double>(dev);
}

// Multiplicative Loomis-Whitney / Liakopoulos bound: if
// sum_i c_i P_{F_i} = s I (residual checked to 1e-10), then
//   |L|^s <= prod_i |Proj_{F_i} L|^{c_i},
// verified in log space at nsigma Monte Carlo slack.
struct LWPart {
    double weight;
    Subspace F;
};

struct LWResult {
    double s = 0.0;
    double projector_residual = 0.0;
    bool decomposition_ok = false;
    double lhs_log = 0.0;
    double rhs_log = 0.0;
    double sigma_log = 0.0;
    double sigma_slack = 0.0;
    bool holds = false;
    std::vector<Estimate> projections;
    Estimate volume;  // |L|; exact (std_error 0) when a closed form exists
};

template <class GaugeFn>
LWResult loomis_whitney_check(GaugeFn gauge, int dim, double R, std::optional<double> exact_log_vol,
                              const std::vector<LWPart>& parts, double s, const MembershipConfig& cfg,
                              const MCConfig& mc, double nsigma = 3.0) {
    if (parts.empty()) throw std::invalid_argument("loomis_whitney_check: no parts");
    LWResult r;
    r.s = s;

    Mat sum(dim, dim);
    for (const LWPart& part : parts) {
        if (part.F.ambient_dim() != dim) throw std::invalid_argument("loomis_whitney_check: ambient mismatch");
        if (!(part.weight > 0.0)) throw std::invalid_argument("loomis_whitney_check: weights must be positive");
        sum = mat_add(sum, mat_scale(part.F.projector(), part.weight));
    }
    double dev = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) dev = std::max(dev, std::fabs(sum(i, j) - (i == j ? s : 0.0)));
    r.projector_residual = dev;
    r.decomposition_ok = dev <= 1e-10;

    double var_log = 0.0;
    if (exact_log_vol) {
        r.volume = Estimate{std::exp(*exact_log_vol), 0.0, 0, mc.seed};
        r.lhs_log = s * *exact_log_vol;
    } else {
        r.volume = section_volume_gauge(gauge, Subspace::full(dim), mc);
        r.lhs_log = s * std::log(r.volume.value);
        const double rel = r.volume.std_error / r.volume.value;
        var_log += s * s * rel * rel;
    }

    r.rhs_log = 0.0;
    for (const LWPart& part : parts) {
        Estimate proj = projection_volume_gauge(gauge, R, part.F, cfg, mc);
        r.rhs_log += part.weight * std::log(proj.value);
        const double rel = proj.std_error / proj.value;
        var_log += part.weight * part.weight * rel * rel;
        r.projections.push_back(proj);
    }
    r.sigma_log = std::sqrt(var_log);
    r.sigma_slack = r.sigma_log > 0.0 ? (r.rhs_log - r.lhs_log) / r.sigma_log : (r.rhs_log - r.lhs_log);
    r.holds = r.lhs_log <= r.rhs_log + nsigma * r.sigma_log + 1e-12;
    return r;
}

// |Proj_F(B_q^n)| >= |B_q^n|^{d/n} for coordinate-symmetric balls.
struct OneSymResult {
    Estimate proj;
    double bound = 0.0;
    double sigma_slack = 0.0;
    bool holds = false;
};

inline OneSymResult onesym_projection_check(double q, const Subspace& F, const MembershipConfig& cfg,
                                            const MCConfig& mc, double nsigma = 3.0) {
    const int n = F.ambient_dim();
    const int d = F.dim();
    if (d >= n) throw std::invalid_argument("onesym_projection_check: subspace must be proper");
    const Space X = Space::lq_ball(q, n);
    if (!X.convex()) throw std::invalid_argument("onesym_projection_check: need q >= 1");
    OneSymResult r;
    auto gauge = [X](std::span<const double> x) { return X.norm_unchecked(x); };
    r.proj = projection_volume_gauge(gauge, X.circumradius_bound(), F, cfg, mc);
    r.bound = std::exp(static_cast<double>(d) / n * log_lp_ball_volume(n, q));
    const double sig = r.proj.std_error;
    r.sigma_slack = sig > 0.0 ? (r.proj.value - r.bound) / sig : (r.proj.value - r.bound);
    r.holds = r.proj.value + nsigma * sig >= r.bound;
    return r;
}

}  // namespace lpsect

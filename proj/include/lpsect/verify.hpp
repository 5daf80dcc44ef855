#pragma once

// Verification suites. Each suite is a pure function of (seed, workers) and
// returns one CheckRow per check; the CSV layout is fixed:
//   check_id,lhs,rhs,sigma_slack,pass
// Estimates are bit-reproducible for a given seed regardless of workers, so
// repeated runs emit byte-identical CSV.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "lpsect/exact.hpp"
#include "lpsect/gaussian.hpp"
#include "lpsect/lewis.hpp"
#include "lpsect/majorization.hpp"
#include "lpsect/mc.hpp"
#include "lpsect/meanwidth.hpp"
#include "lpsect/projection.hpp"
#include "lpsect/section.hpp"
#include "lpsect/spaces.hpp"
#include "lpsect/subspace.hpp"

namespace lpsect {

struct CheckRow {
    std::string id;
    double lhs = 0.0;
    double rhs = 0.0;
    double sigma_slack = 0.0;
    bool pass = false;
};

struct VerifyReport {
    std::string suite;
    std::vector<CheckRow> rows;

    bool all_pass() const {
        for (const CheckRow& r : rows)
            if (!r.pass) return false;
        return true;
    }
};

inline void write_check_csv(std::ostream& os, const std::vector<CheckRow>& rows) {
    os << "check_id,lhs,rhs,sigma_slack,pass\n";
    os << std::setprecision(17);
    for (const CheckRow& r : rows)
        os << r.id << ',' << r.lhs << ',' << r.rhs << ',' << r.sigma_slack << ',' << (r.pass ? 1 : 0) << '\n';
}

namespace detail {

// a <= b within nsigma
inline CheckRow row_leq(std::string id, const Estimate& a, const Estimate& b, double nsigma = 3.0) {
    CheckRow r{std::move(id), a.value, b.value, 0.0, false};
    const double sig = combined_sigma(a, b);
    r.sigma_slack = sig > 0.0 ? (b.value - a.value) / sig : 0.0;
    r.pass = leq_within(a, b, nsigma);
    return r;
}

// |a - ref| <= nsigma * stderr
inline CheckRow row_close(std::string id, const Estimate& a, double ref, double nsigma = 3.0) {
    CheckRow r{std::move(id), a.value, ref, 0.0, false};
    const double sig = a.std_error;
    r.sigma_slack = sig > 0.0 ? std::fabs(a.value - ref) / sig : 0.0;
    r.pass = std::fabs(a.value - ref) <= nsigma * sig + 1e-12 * (1.0 + std::fabs(ref));
    return r;
}

// |lhs - rhs| <= tol * max(|rhs|, tiny), deterministic quantities
inline CheckRow row_rel(std::string id, double lhs, double rhs, double tol) {
    CheckRow r{std::move(id), lhs, rhs, 0.0, false};
    r.pass = std::fabs(lhs - rhs) <= tol * std::max(std::fabs(rhs), 1e-300);
    return r;
}

inline CheckRow row_bool(std::string id, double lhs, double rhs, bool pass, double slack = 0.0) {
    return CheckRow{std::move(id), lhs, rhs, slack, pass};
}

inline MCConfig mk_mc(std::uint64_t samples, std::uint64_t seed, int workers) {
    MCConfig mc;
    mc.samples = samples;
    mc.seed = seed;
    mc.chunk = 4096;  // small enough that the suites' sample counts split across workers
    mc.workers = workers;
    return mc;
}

inline std::string fmt_num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

inline Vec diag_theta(int n) {
    return Vec(static_cast<std::size_t>(n), 1.0 / std::sqrt(static_cast<double>(n)));
}

// Three unit atoms at mutual angle 2 pi / 3, weights 2/3: exactly isotropic.
inline DiscreteMeasure mercedes_measure() {
    std::vector<Atom> atoms;
    for (int j = 0; j < 3; ++j) {
        const double a = 2.0 * kPi * j / 3.0;
        atoms.push_back({2.0 / 3.0, {std::cos(a), std::sin(a)}});
    }
    return DiscreteMeasure(2, atoms);
}

inline Vec random_unit_vec(SampleStream& gen, int n) {
    Vec v(static_cast<std::size_t>(n));
    double n2 = 0.0;
    do {
        for (auto& x : v) x = gen.next_normal();
        n2 = dot(v, v);
    } while (n2 < 1e-12);
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& x : v) x *= inv;
    return v;
}

// Random d-dimensional subspace of R^n.
inline Subspace random_subspace(SampleStream& gen, int n, int d) {
    while (true) {
        std::vector<Vec> cand;
        for (int k = 0; k < d; ++k) {
            Vec v(static_cast<std::size_t>(n));
            for (auto& x : v) x = gen.next_normal();
            cand.push_back(std::move(v));
        }
        try {
            return Subspace(n, gram_schmidt_extend({}, cand, static_cast<std::size_t>(d)));
        } catch (const std::runtime_error&) {
        }
    }
}

}  // namespace detail

// Closed-form volume arithmetic; no Monte Carlo, so no seed.
inline VerifyReport verify_exact() {
    using namespace detail;
    VerifyReport rep;
    rep.suite = "exact";

    for (int n = 2; n <= 50; ++n) {
        const CounterexampleCheck c = remark_counterexample_check(n);
        rep.rows.push_back(row_bool("exact.counterexample.factorial.n=" + std::to_string(n), c.lhs_log,
                                    c.rhs_log, c.strict && c.lhs_log > c.rhs_log));
        rep.rows.push_back(row_bool("exact.counterexample.volume.n=" + std::to_string(n), c.vol_lhs_log,
                                    c.vol_rhs_log, (c.vol_lhs_log > c.vol_rhs_log) == c.strict && c.strict));
    }
    {
        const CounterexampleCheck c2 = remark_counterexample_check(2);
        rep.rows.push_back(row_bool("exact.counterexample.n=2.values", c2.lhs, c2.rhs,
                                    std::fabs(c2.lhs - 12.0) < 1e-9 &&
                                        std::fabs(c2.rhs - 16.0 / (kPi * kPi)) < 1e-9 && c2.strict));
    }

    rep.rows.push_back(row_bool("exact.brzezinski.m=2", brzezinski_bound(2).value, 2.0,
                                brzezinski_bound(2).value == 2.0));
    rep.rows.push_back(row_rel("exact.brzezinski.m=3", brzezinski_bound(3).value,
                               std::pow(10.0, 1.5) / (12.0 * std::tgamma(1.5)), 1e-12));
    rep.rows.push_back(row_rel("exact.brzezinski.m=4", brzezinski_bound(4).value, 4.5, 1e-12));

    for (int a = 1; a <= 6; ++a)
        for (int b = 1; b <= 6; ++b)
            for (int c = 1; c <= 6; ++c) {
                const double lhs = mixed_sum_volume(a, b, c).log_value;
                const ExactValue inner = power_volume(lp_ball_volume(c, 2.0).value, c, b);
                const double rhs = direct_sum_volume(lp_ball_volume(a, 1.0).value, a, inner.value,
                                                     b * c).log_value;
                rep.rows.push_back(row_rel("exact.triangle.a=" + std::to_string(a) + ".b=" + std::to_string(b) +
                                               ".c=" + std::to_string(c),
                                           lhs, rhs, 1e-10));
            }

    const double disk = lp_ball_volume(2, 2.0).value;
    for (int s1 = 1; s1 <= 3; ++s1)
        for (int s2 = s1; s2 <= 3; ++s2) {
            const double lhs = power_volume(disk, 2, s1 + s2).value;
            const double rhs = direct_sum_volume(power_volume(disk, 2, s1).value, 2 * s1,
                                                 power_volume(disk, 2, s2).value, 2 * s2).value;
            rep.rows.push_back(row_rel("exact.power_additivity.s1=" + std::to_string(s1) +
                                           ".s2=" + std::to_string(s2),
                                       lhs, rhs, 1e-10));
        }
    rep.rows.push_back(row_rel("exact.mixed.a=1.b=1.c=1", mixed_sum_volume(1, 1, 1).value, 2.0, 1e-12));
    rep.rows.push_back(row_rel("exact.mixed.a=0.b=2.c=4", mixed_sum_volume(0, 2, 4).value,
                               std::pow(kPi, 4.0) / 280.0, 1e-12));
    rep.rows.push_back(row_rel("exact.mixed.a=2.b=1.c=2", mixed_sum_volume(2, 1, 2).value, kPi / 3.0, 1e-12));
    return rep;
}

// Section-volume checks: polar calibration, the two cross-polytope values,
// the Schur chains with endpoint bounds, sandwich/min-direction instances,
// and transform invariance.
inline VerifyReport verify_schur_sections(std::uint64_t seed, int workers) {
    using namespace detail;
    VerifyReport rep;
    rep.suite = "schur-sections";

    struct Cal {
        int k;
        double p;
        const char* tag;
    };
    const Cal cals[] = {{2, 1.0, "k=2.p=1"},
                        {2, 2.0, "k=2.p=2"},
                        {2, kInf, "k=2.p=inf"},
                        {4, 1.0, "k=4.p=1"},
                        {4, 2.0, "k=4.p=2"}};
    for (const Cal& c : cals) {
        const Space X = Space::lq_ball(c.p, c.k);
        auto gauge = [X](std::span<const double> x) { return X.norm_unchecked(x); };
        const Estimate est = section_volume_gauge(gauge, Subspace::full(c.k), mk_mc(400000, seed + 11, workers));
        rep.rows.push_back(row_close(std::string("section.calibration.") + c.tag, est,
                                     lp_ball_volume(c.k, c.p).value));
    }

    {
        const Estimate diag = section_volume(Space::lq_ball(1.0, 2), 1.0, 2, diag_theta(2),
                                             mk_mc(1000000, seed + 12, workers));
        CheckRow r{"section.b14.diag", diag.value, 1.0, 0.0, false};
        r.sigma_slack = diag.std_error > 0.0 ? std::fabs(diag.value - 1.0) / diag.std_error : 0.0;
        r.pass = std::fabs(diag.value - 1.0) <= 0.02;
        rep.rows.push_back(r);

        const double inv = 1.0 / std::sqrt(2.0);
        const std::vector<Vec> rows = {{inv, 0.5, 0.0, -0.5}, {0.0, 0.5, inv, 0.5}};
        const Subspace E(4, rows);
        const Space body = Space::lq_ball(1.0, 4);
        auto gauge = [body](std::span<const double> x) { return body.norm_unchecked(x); };
        const Estimate estE = section_volume_gauge(gauge, E, mk_mc(1000000, seed + 13, workers));
        const double target = 4.0 * (3.0 * std::sqrt(2.0) - 4.0);
        CheckRow rE{"section.b14.E", estE.value, target, 0.0, false};
        rE.sigma_slack = estE.std_error > 0.0 ? std::fabs(estE.value - target) / estE.std_error : 0.0;
        rE.pass = std::fabs(estE.value - target) <= 0.02 * target;
        rep.rows.push_back(rE);

        CheckRow ord{"section.b14.E.below.diag", estE.value, 1.0, 0.0, false};
        ord.sigma_slack = estE.std_error > 0.0 ? (1.0 - estE.value) / estE.std_error : 0.0;
        ord.pass = ord.sigma_slack >= 3.0;
        rep.rows.push_back(ord);
    }

    struct GridSpace {
        const char* tag;
        Space X;
        double p;
    };
    const GridSpace grid[] = {{"r.p=0.5", Space::euclidean(1), 0.5},
                              {"r.p=1", Space::euclidean(1), 1.0},
                              {"r.p=2", Space::euclidean(1), 2.0},
                              {"l2x2.p=1", Space::euclidean(2), 1.0},
                              {"l1x2.p=1", Space::lq_ball(1.0, 2), 1.0},
                              {"atom3.p=1", Space::lp_discrete(1.0, mercedes_measure()), 1.0}};
    std::uint64_t gseed = seed + 20;
    for (const GridSpace& g : grid) {
        for (int n : {2, 3}) {
            const auto chain = majorization_chain(n, 4);
            const SectionReport sr = schur_section_suite(g.X, g.p, n, chain, mk_mc(150000, gseed, workers));
            const std::string base = std::string("section.schur.") + g.tag + ".n=" + std::to_string(n);
            for (std::size_t k = 0; k < sr.checks.size(); ++k)
                rep.rows.push_back(row_bool(base + ".pair" + std::to_string(k), sr.steps[k].est.value,
                                            sr.steps[k + 1].est.value, sr.checks[k].pass,
                                            sr.checks[k].sigma_slack));
            for (std::size_t k = 0; k < sr.endpoint_checks.size(); ++k)
                rep.rows.push_back(row_bool(base + ".endpoint" + std::to_string(k), sr.steps[k].est.value,
                                            sr.endpoint.value, sr.endpoint_checks[k].pass,
                                            sr.endpoint_checks[k].sigma_slack));
            // the diagonal is the minimal tested direction (Koldobsky direction
            // for m = 1; the consecutive pairs already cover step 1)
            for (std::size_t k = 2; k < sr.steps.size(); ++k)
                rep.rows.push_back(row_leq(base + ".diag.le.step" + std::to_string(k), sr.steps[0].est,
                                           sr.steps[k].est));
            ++gseed;
        }
    }

    // sandwich instance p=1, q=2, m=2, n=3: diag <= random theta <= e1
    {
        const Space X = Space::lq_ball(2.0, 2);
        SampleStream gen(seed + 40, 0);
        const MCConfig mc = mk_mc(150000, seed + 41, workers);
        const Estimate diag = section_volume(X, 1.0, 3, diag_theta(3), mc);
        Vec e1(3, 0.0);
        e1[0] = 1.0;
        const Estimate top = section_volume(X, 1.0, 3, e1, mc);
        for (int t = 0; t < 2; ++t) {
            const Vec theta = random_unit_vec(gen, 3);
            const Estimate mid = section_volume(X, 1.0, 3, theta, mc);
            rep.rows.push_back(row_leq("section.lplq.diag.le.theta" + std::to_string(t), diag, mid));
            rep.rows.push_back(row_leq("section.lplq.theta" + std::to_string(t) + ".le.e1", mid, top));
        }
    }

    // Meyer-Pajor direction: sections of B_p^n(l_2^2) never exceed |B_p^{n-1}(l_2^2)|
    {
        SampleStream gen(seed + 50, 0);
        for (double p : {0.5, 1.0}) {
            const Space X = Space::euclidean(2);
            const MCConfig mc = mk_mc(150000, seed + 51, workers);
            const Space slice = Space::lp_power(p, 1, X);
            auto gauge = [slice](std::span<const double> x) { return slice.norm_unchecked(x); };
            const Estimate full = section_volume_gauge(gauge, Subspace::full(2), mc);
            for (int t = 0; t < 2; ++t) {
                const Vec theta = random_unit_vec(gen, 2);
                const Estimate sect = section_volume(X, p, 2, theta, mc);
                rep.rows.push_back(row_leq("section.meyer_pajor.p=" + fmt_num(p) + ".t" + std::to_string(t),
                                           sect, full));
            }
        }
    }

    // Section volume is invariant under invertible maps of the factor paired
    // with the matching block map: 20 random invertible T on the l_1^2 factor.
    {
        SampleStream gen(seed + 60, 0);
        const Space X = Space::lq_ball(1.0, 2);
        const Vec theta = diag_theta(2);
        Vec phi(2, 0.0);
        phi[0] = 1.0;
        int made = 0;
        while (made < 20) {
            Mat T(2, 2);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) T(i, j) = gen.next_normal();
            if (std::fabs(det(T)) < 0.3) continue;
            const InvarianceResult ir =
                invariance_ratio_check(X, 1.0, 2, T, theta, phi, mk_mc(100000, seed + 61 + made, workers));
            const std::string base = "section.invariance.T" + std::to_string(made);
            rep.rows.push_back(row_bool(base + ".ratio", ir.ratio_x, ir.ratio_tx, ir.ratios_agree,
                                        ir.ratio_sigma > 0.0
                                            ? std::fabs(ir.ratio_x - ir.ratio_tx) / ir.ratio_sigma
                                            : 0.0));
            const Estimate scaled = scale_estimate(ir.sect_x_theta, ir.det_factor);
            const double sig = combined_sigma(scaled, ir.sect_tx_theta);
            rep.rows.push_back(row_bool(base + ".factor", ir.sect_tx_theta.value, scaled.value,
                                        ir.factor_agrees,
                                        sig > 0.0 ? std::fabs(ir.sect_tx_theta.value - scaled.value) / sig
                                                  : 0.0));
            ++made;
        }

        Mat D = Mat::identity(2);
        D(0, 0) = D(1, 1) = 2.0;
        const InvarianceResult dil =
            invariance_ratio_check(X, 1.0, 2, D, theta, phi, mk_mc(150000, seed + 99, workers));
        const Estimate scaled = scale_estimate(dil.sect_x_theta, dil.det_factor);
        const double sig = combined_sigma(scaled, dil.sect_tx_theta);
        rep.rows.push_back(row_bool("section.invariance.dilation.factor=4", dil.sect_tx_theta.value,
                                    scaled.value, dil.factor_agrees,
                                    sig > 0.0 ? std::fabs(dil.sect_tx_theta.value - scaled.value) / sig : 0.0));
    }
    return rep;
}

// Gaussian Laplace-transform checks: Schur chains over the Lewis-position
// grid, the p=2 closed form, tensorization, slab self-consistency, and the
// negative-moment comparison.
inline VerifyReport verify_laplace(std::uint64_t seed, int workers) {
    using namespace detail;
    VerifyReport rep;
    rep.suite = "laplace";

    // (l_2^2, p=1) in Lewis position has norm (4/pi)||.||_2; the scalar is
    // absorbed into lambda.
    struct GridSpace {
        const char* tag;
        Space X;
        double p;
        double lambda_factor;
    };
    const GridSpace grid[] = {{"r.p=0.5", Space::euclidean(1), 0.5, 1.0},
                              {"r.p=1", Space::euclidean(1), 1.0, 1.0},
                              {"r.p=2", Space::euclidean(1), 2.0, 1.0},
                              {"l2x2.p=1", Space::euclidean(2), 1.0, 4.0 / kPi},
                              {"l1x2.p=1", Space::lq_ball(1.0, 2), 1.0, 1.0},
                              {"atom3.p=1", Space::lp_discrete(1.0, mercedes_measure()), 1.0, 1.0}};
    std::uint64_t gseed = seed + 100;
    for (const GridSpace& g : grid)
        for (int n : {2, 3})
            for (double lambda : {0.5, 1.0, 2.0}) {
                const auto chain = majorization_chain(n, 4);
                const MCConfig mc = mk_mc(200000, gseed, workers);
                std::vector<Estimate> est;
                for (const Vec& theta : chain)
                    est.push_back(laplace_estimate(g.X, g.p, n, theta, lambda * g.lambda_factor, mc));
                const std::string base = std::string("laplace.schur.") + g.tag + ".n=" + std::to_string(n) +
                                         ".lam=" + fmt_num(lambda);
                for (std::size_t k = 0; k + 1 < est.size(); ++k)
                    rep.rows.push_back(row_leq(base + ".pair" + std::to_string(k), est[k], est[k + 1]));
                ++gseed;
            }

    // p=2 closed form via the isotropic two-atom measure
    {
        std::vector<Atom> atoms = {{1.0, {1.0, 0.0}}, {1.0, {0.0, 1.0}}};
        const DiscreteMeasure mu(2, atoms);
        const P2Check a = det_identity_p2_check(mu, 2, diag_theta(2), 1.0,
                                                mk_mc(400000, seed + 200, workers));
        rep.rows.push_back(row_rel("laplace.p2ident.n=2.lam=1.form", a.closed_form, 1.0 / 3.0, 1e-12));
        rep.rows.push_back(row_close("laplace.p2ident.n=2.lam=1", a.mc, a.closed_form));
        const P2Check b = det_identity_p2_check(mu, 3, diag_theta(3), 0.5,
                                                mk_mc(400000, seed + 201, workers));
        rep.rows.push_back(row_rel("laplace.p2ident.n=3.lam=0.5.form", b.closed_form, 0.25, 1e-12));
        rep.rows.push_back(row_close("laplace.p2ident.n=3.lam=0.5", b.mc, b.closed_form));
    }

    // tensorization at theta = e1: the hyperplane Gaussian factors
    {
        const Space X = Space::euclidean(1);
        Vec e1_3(3, 0.0), e1_2(2, 0.0);
        e1_3[0] = e1_2[0] = 1.0;
        const Estimate full = laplace_estimate(X, 1.0, 3, e1_3, 1.0, mk_mc(400000, seed + 210, workers));
        const Estimate base = laplace_estimate(X, 1.0, 2, e1_2, 1.0, mk_mc(400000, seed + 211, workers));
        const double rhs = base.value * base.value;
        const double sig = std::sqrt(full.std_error * full.std_error +
                                     4.0 * base.value * base.value * base.std_error * base.std_error);
        rep.rows.push_back(row_bool("laplace.tensorization.r.n=3", full.value, rhs,
                                    std::fabs(full.value - rhs) <= 3.0 * sig,
                                    sig > 0.0 ? std::fabs(full.value - rhs) / sig : 0.0));
    }

    // slab self-consistency: the eps = 0.05 estimate is nearer the Laplace
    // value than the eps = 0.5 one
    {
        const Space X = Space::euclidean(1);
        const Vec theta = diag_theta(2);
        const Estimate ref = laplace_estimate(X, 1.0, 2, theta, 1.0, mk_mc(600000, seed + 220, workers));
        const Estimate wide = slab_laplace_estimate(X, 1.0, 2, theta, 1.0, 0.5, mk_mc(600000, seed + 221, workers));
        const Estimate thin = slab_laplace_estimate(X, 1.0, 2, theta, 1.0, 0.05,
                                                    mk_mc(600000, seed + 222, workers));
        const double dthin = std::fabs(thin.value - ref.value);
        const double dwide = std::fabs(wide.value - ref.value);
        const double sig = std::sqrt(thin.std_error * thin.std_error + wide.std_error * wide.std_error +
                                     2.0 * ref.std_error * ref.std_error);
        rep.rows.push_back(row_bool("laplace.slab.selfconsistency", dthin, dwide,
                                    dthin < dwide + 3.0 * sig, sig > 0.0 ? (dwide - dthin) / sig : 0.0));
        const double csig = combined_sigma(thin, ref);
        rep.rows.push_back(row_bool("laplace.slab.eps=0.05.close", thin.value, ref.value,
                                    std::fabs(thin.value - ref.value) <= 3.0 * csig + 1e-12,
                                    csig > 0.0 ? std::fabs(thin.value - ref.value) / csig : 0.0));
    }

    // negative-moment comparison along a majorization pair
    {
        const Space X = Space::euclidean(1);
        const MCConfig mc = mk_mc(200000, seed + 230, workers);
        Vec e1(3, 0.0);
        e1[0] = 1.0;
        const Estimate lo = negative_moment_estimate(X, 1.0, 3, diag_theta(3), 1.0, mc);
        const Estimate hi = negative_moment_estimate(X, 1.0, 3, e1, 1.0, mc);
        rep.rows.push_back(row_leq("laplace.negmoment.diag.le.e1", lo, hi));
    }
    return rep;
}

// Determinant Schur-convexity experiment.
inline VerifyReport verify_detlab(std::uint64_t seed, int workers) {
    using namespace detail;
    VerifyReport rep;
    rep.suite = "detlab";

    {
        const PSDSampler scalar = PSDSampler::diagonal_uniform(1, 1.0, 2.0);
        const MCConfig mc = mk_mc(400000, seed + 300, workers);
        const Estimate half = det_schur_estimate(scalar, {0.5, 0.5}, 1.0, mc);
        const Estimate top = det_schur_estimate(scalar, {1.0, 0.0}, 1.0, mc);
        const double exact_half = 20.0 * std::log(2.0) - 12.0 * std::log(3.0);
        const double ln2 = std::log(2.0);
        rep.rows.push_back(row_close("detlab.scalar.uniform.mean", half, exact_half));
        rep.rows.push_back(row_close("detlab.scalar.e1.mean", top, ln2));
        rep.rows.push_back(row_leq("detlab.scalar.order", half, top));
        CheckRow bound{"detlab.scalar.below.ln2", half.value, ln2, 0.0, false};
        bound.sigma_slack = half.std_error > 0.0 ? (ln2 - half.value) / half.std_error : 0.0;
        bound.pass = half.value <= ln2 + 3.0 * half.std_error;
        rep.rows.push_back(bound);
    }

    {
        const PSDSampler fixed = PSDSampler::constant(Mat::identity(2));
        const Estimate one = det_schur_estimate(fixed, {0.3, 0.7}, 2.0, mk_mc(2048, seed + 310, workers));
        rep.rows.push_back(row_bool("detlab.constant.identity", one.value, 1.0,
                                    std::fabs(one.value - 1.0) <= 1e-12 && one.std_error <= 1e-12));
    }

    for (double r : {0.5, 1.0}) {
        const PSDSampler wish = PSDSampler::wishart_like(2);
        const MCConfig mc = mk_mc(200000, seed + 320, workers);
        const auto chain = weight_chain(3, 4);
        std::vector<Estimate> est;
        for (const Vec& alphas : chain) est.push_back(det_schur_estimate(wish, alphas, r, mc));
        for (std::size_t k = 0; k + 1 < est.size(); ++k)
            rep.rows.push_back(row_leq("detlab.wishart.r=" + fmt_num(r) + ".pair" + std::to_string(k), est[k],
                                       est[k + 1]));
    }
    return rep;
}

// Lewis-position solver ensemble.
inline VerifyReport verify_lewis(std::uint64_t seed) {
    using namespace detail;
    VerifyReport rep;
    rep.suite = "lewis";

    SampleStream gen(seed + 400, 0);
    const double ps[] = {0.5, 1.0, 1.5, 2.0};
    int cases = 0, converged = 0, p2_cases = 0, p2_good = 0;
    double max_resid_conv = 0.0, max_norm_rel = 0.0, max_whiten_resid = 0.0;

    for (int c = 0; c < 100; ++c) {
        const int m = 1 + (c % 4);
        const int min_atoms = std::max(m + 1, 3);
        const int natoms =
            min_atoms + static_cast<int>(gen.next_u32() % static_cast<std::uint32_t>(12 - min_atoms + 1));
        DiscreteMeasure mu(1, {{1.0, {1.0}}});
        while (true) {
            std::vector<Atom> atoms;
            for (int j = 0; j < natoms; ++j) {
                Atom a;
                a.weight = 0.5 + 1.5 * gen.next_uniform();
                a.dir = random_unit_vec(gen, m);
                atoms.push_back(std::move(a));
            }
            try {
                mu = DiscreteMeasure(m, atoms);
                break;
            } catch (const std::invalid_argument&) {
            }
        }

        for (double p : ps) {
            ++cases;
            const LewisResult lr = lewis_solve(mu, p);
            if (lr.converged) {
                ++converged;
                max_resid_conv = std::max(max_resid_conv, lr.residual);
            }

            const Space in_space = Space::lp_discrete(p, mu);
            const Space out_space = Space::lp_discrete(p, lr.measure);
            Vec x(static_cast<std::size_t>(m)), ax(static_cast<std::size_t>(m));
            for (int t = 0; t < 100; ++t) {
                for (auto& v : x) v = gen.next_normal();
                for (int i = 0; i < m; ++i) {
                    double s = 0.0;
                    for (int j = 0; j < m; ++j) s += lr.transform(i, j) * x[static_cast<std::size_t>(j)];
                    ax[static_cast<std::size_t>(i)] = s;
                }
                const double lhs = out_space.norm(x);
                const double rhs = in_space.norm(ax);
                if (rhs > 0.0) max_norm_rel = std::max(max_norm_rel, std::fabs(lhs - rhs) / rhs);
            }

            if (p == 2.0) {
                ++p2_cases;
                const Mat white = sym_pow(mu.second_moment(), -0.5);
                const double wresid = isotropy_residual(pushforward(mu, white, 2.0));
                max_whiten_resid = std::max(max_whiten_resid, wresid);
                if (lr.converged && lr.residual < 1e-10 && wresid < 1e-10) ++p2_good;
            }
        }
    }

    const double frac = static_cast<double>(converged) / cases;
    rep.rows.push_back(row_bool("lewis.converged.fraction", frac, 0.95, frac >= 0.95));
    rep.rows.push_back(row_bool("lewis.converged.max_residual", max_resid_conv, 1e-10,
                                max_resid_conv < 1e-10));
    const double p2frac = p2_cases > 0 ? static_cast<double>(p2_good) / p2_cases : 0.0;
    rep.rows.push_back(row_bool("lewis.p2.whitening.fraction", p2frac, 1.0, p2frac == 1.0));
    rep.rows.push_back(row_bool("lewis.p2.whitening.max_residual", max_whiten_resid, 1e-10,
                                max_whiten_resid < 1e-10));
    rep.rows.push_back(row_bool("lewis.norm_identity.max_rel", max_norm_rel, 1e-10, max_norm_rel <= 1e-10));
    return rep;
}

// Projection lower bounds, decomposition identities, Loomis-Whitney
// instances, and the 1-symmetric proposition.
inline VerifyReport verify_projections(std::uint64_t seed, int workers) {
    using namespace detail;
    VerifyReport rep;
    rep.suite = "projections";
    const MembershipConfig cfg;

    struct BodyCase {
        const char* tag;
        Space X;
    };
    const BodyCase bodies[] = {{"b1", Space::lq_ball(1.0, 2)},
                               {"b2", Space::lq_ball(2.0, 2)},
                               {"binf", Space::lq_ball(kInf, 2)}};
    SampleStream gen(seed + 500, 0);
    std::uint64_t pseed = seed + 510;
    for (const BodyCase& bc : bodies) {
        const ConvexBody K = ConvexBody::from_space(bc.X);
        for (int n : {2, 3}) {
            const std::uint64_t samples = n == 2 ? 40000 : 30000;
            for (int t = 0; t < 10; ++t) {
                const Vec theta = random_unit_vec(gen, n);
                const ProjBoundResult pr =
                    projection_lower_bound_check(K, n, theta, cfg, mk_mc(samples, pseed++, workers));
                rep.rows.push_back(row_bool("proj.bound." + std::string(bc.tag) + ".n=" + std::to_string(n) +
                                                ".t" + std::to_string(t),
                                            pr.proj.value, pr.bound, pr.holds, pr.sigma_slack));
            }
            Vec e1(static_cast<std::size_t>(n), 0.0);
            e1[0] = 1.0;
            const ProjBoundResult eq =
                projection_lower_bound_check(K, n, e1, cfg, mk_mc(samples, pseed++, workers));
            rep.rows.push_back(row_close("proj.equality." + std::string(bc.tag) + ".n=" + std::to_string(n),
                                         eq.proj, eq.bound));
        }
    }

    {
        const ConvexBody seg = ConvexBody::from_space(Space::lq_ball(kInf, 1));
        const Estimate e = projection_volume(seg, 2, diag_theta(2), cfg, mk_mc(60000, seed + 540, workers));
        rep.rows.push_back(row_close("proj.segment.diag", e, 2.0 * std::sqrt(2.0)));
        const ConvexBody disk = ConvexBody::from_space(Space::lq_ball(2.0, 2));
        const Estimate d = projection_volume(disk, 2, diag_theta(2), cfg, mk_mc(60000, seed + 541, workers));
        rep.rows.push_back(row_close("proj.disk.diag", d, 2.0 * kPi));
    }

    // block decomposition identity: 100 random (n, m, theta); n and m cycle
    // with coprime periods, so every (n, m) cell is hit
    {
        double maxdev[7][4] = {};
        for (int t = 0; t < 100; ++t) {
            const int n = 2 + (t % 5);
            const int m = 1 + (t % 3);
            const Vec theta = random_unit_vec(gen, n);
            maxdev[n][m] = std::max(maxdev[n][m], block_decomposition_deviation(n, m, theta));
        }
        for (int n = 2; n <= 6; ++n)
            for (int m = 1; m <= 3; ++m)
                rep.rows.push_back(row_bool("proj.decomp.block.n=" + std::to_string(n) +
                                                ".m=" + std::to_string(m),
                                            maxdev[n][m], 1e-12, maxdev[n][m] < 1e-12));
    }
    for (int n = 2; n <= 6; ++n) {
        const int d = 1 + static_cast<int>(gen.next_uniform() * (n - 1)) % (n - 1);
        const Subspace F = random_subspace(gen, n, d);
        const double dev = onesym_decomposition_deviation(F);
        rep.rows.push_back(row_bool("proj.decomp.onesym.n=" + std::to_string(n) + ".d=" + std::to_string(d),
                                    dev, 1e-12, dev < 1e-12));
    }

    // 1-symmetric proposition over l_q balls
    std::uint64_t oseed = seed + 560;
    for (double q : {1.0, 2.0, kInf})
        for (int n = 2; n <= 4; ++n)
            for (int d = 1; d < n; ++d) {
                const Subspace F = random_subspace(gen, n, d);
                const OneSymResult r = onesym_projection_check(q, F, cfg, mk_mc(15000, oseed++, workers));
                rep.rows.push_back(row_bool("proj.onesym.q=" + (std::isinf(q) ? std::string("inf") : fmt_num(q)) +
                                                ".n=" + std::to_string(n) + ".d=" + std::to_string(d),
                                            r.proj.value, r.bound, r.holds, r.sigma_slack));
            }
    {
        // coordinate-plane projection of the cube: proj = bound = 2^d
        const std::vector<Vec> rows = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
        const OneSymResult r = onesym_projection_check(kInf, Subspace(3, rows), cfg,
                                                       mk_mc(20000, seed + 590, workers));
        rep.rows.push_back(row_close("proj.onesym.cube.coordplane", r.proj, r.bound));
    }

    // Loomis-Whitney instances
    {
        const ConvexBody box = ConvexBody::box({0.0, 0.0}, {1.0, 1.0});
        const std::vector<Vec> e1 = {{1.0, 0.0}}, e2 = {{0.0, 1.0}};
        const std::vector<LWPart> parts = {{1.0, Subspace(2, e1)}, {1.0, Subspace(2, e2)}};
        auto gauge = [&box](std::span<const double> x) { return box.gauge_unchecked(x); };
        const LWResult lw = loomis_whitney_check(gauge, 2, box.circumradius(), box.exact_log_volume(), parts,
                                                 1.0, cfg, mk_mc(40000, seed + 600, workers));
        rep.rows.push_back(row_bool("proj.lw.unitbox", lw.lhs_log, lw.rhs_log,
                                    lw.decomposition_ok && lw.holds, lw.sigma_slack));

        const Space disk = Space::lq_ball(2.0, 2);
        auto dgauge = [disk](std::span<const double> x) { return disk.norm_unchecked(x); };
        const LWResult lwd = loomis_whitney_check(dgauge, 2, 1.0, log_lp_ball_volume(2, 2.0), parts, 1.0, cfg,
                                                  mk_mc(40000, seed + 601, workers));
        rep.rows.push_back(row_bool("proj.lw.disk", lwd.lhs_log, lwd.rhs_log,
                                    lwd.decomposition_ok && lwd.holds, lwd.sigma_slack));
    }
    {
        // the 2^n n! block decomposition at n=3, m=1 applied to B_1^3
        const int n = 3;
        const Vec theta = diag_theta(n);
        std::vector<LWPart> parts;
        std::vector<int> perm = {0, 1, 2};
        const double w = 1.0 / 48.0;
        do {
            for (unsigned mask = 0; mask < 8u; ++mask) {
                Vec eta(3);
                for (int i = 0; i < n; ++i)
                    eta[static_cast<std::size_t>(i)] =
                        ((mask >> i) & 1u ? -1.0 : 1.0) * theta[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
                parts.push_back({w, Subspace(3, complement_basis(eta))});
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        const Space b13 = Space::lq_ball(1.0, 3);
        auto gauge = [b13](std::span<const double> x) { return b13.norm_unchecked(x); };
        const LWResult lw = loomis_whitney_check(gauge, 3, 1.0, log_lp_ball_volume(3, 1.0), parts, 2.0 / 3.0,
                                                 cfg, mk_mc(10000, seed + 610, workers));
        rep.rows.push_back(row_bool("proj.lw.b13.blockdecomp", lw.lhs_log, lw.rhs_log,
                                    lw.decomposition_ok && lw.holds, lw.sigma_slack));
    }
    return rep;
}

// Mean width comparisons.
inline VerifyReport verify_meanwidth(std::uint64_t seed, int workers) {
    using namespace detail;
    VerifyReport rep;
    rep.suite = "meanwidth";

    {
        const Space X = Space::euclidean(1);
        const MCConfig mc = mk_mc(100000, seed + 700, workers);
        const Estimate wdiag = mean_width_estimate(X, 1.0, 2, diag_theta(2), mc);
        Vec e1(2, 0.0);
        e1[0] = 1.0;
        const Estimate we1 = mean_width_estimate(X, 1.0, 2, e1, mc);
        rep.rows.push_back(row_close("meanwidth.r.diag", wdiag, std::sqrt(2.0)));
        rep.rows.push_back(row_close("meanwidth.r.e1", we1, 1.0));
        rep.rows.push_back(row_leq("meanwidth.r.e1.le.diag", we1, wdiag));
    }

    {
        const Space X = Space::euclidean(2);
        const MeanWidthReport mr = meanwidth_schur_suite(X, 2.0, 2, majorization_chain(2, 4),
                                                         mk_mc(100000, seed + 710, workers));
        for (std::size_t k = 0; k < mr.steps.size(); ++k)
            rep.rows.push_back(row_close("meanwidth.euclid.step" + std::to_string(k), mr.steps[k].est, 1.0));
        for (std::size_t k = 0; k < mr.checks.size(); ++k)
            rep.rows.push_back(row_bool("meanwidth.euclid.pair" + std::to_string(k), mr.steps[k].est.value,
                                        mr.steps[k + 1].est.value, mr.checks[k].pass, mr.checks[k].sigma_slack));
    }

    {
        const Space X = Space::lp_discrete(1.0, mercedes_measure());
        const MeanWidthReport mr = meanwidth_schur_suite(X, 1.0, 3, majorization_chain(3, 3),
                                                         mk_mc(300000, seed + 720, workers));
        for (std::size_t k = 0; k < mr.checks.size(); ++k)
            rep.rows.push_back(row_bool("meanwidth.atom3.pair" + std::to_string(k), mr.steps[k].est.value,
                                        mr.steps[k + 1].est.value, mr.checks[k].pass, mr.checks[k].sigma_slack));
    }

    // derivative step at beta = 1/p: the positive first moment of the gauge
    // compares the same way
    {
        const MCConfig mc = mk_mc(200000, seed + 730, workers);
        const Space X = Space::euclidean(1);
        Vec e1_2(2, 0.0);
        e1_2[0] = 1.0;
        const Estimate hi = positive_moment_estimate(X, 1.0, 2, diag_theta(2), 1.0, mc);
        const Estimate lo = positive_moment_estimate(X, 1.0, 2, e1_2, 1.0, mc);
        rep.rows.push_back(row_leq("meanwidth.moment.r.e1.le.diag", lo, hi));

        const Space D = Space::lp_discrete(1.0, mercedes_measure());
        Vec e1_3(3, 0.0);
        e1_3[0] = 1.0;
        const Estimate dhi = positive_moment_estimate(D, 1.0, 3, diag_theta(3), 1.0, mc);
        const Estimate dlo = positive_moment_estimate(D, 1.0, 3, e1_3, 1.0, mc);
        rep.rows.push_back(row_leq("meanwidth.moment.atom3.e1.le.diag", dlo, dhi));
    }
    return rep;
}

inline std::vector<std::string> verify_suite_names() {
    return {"exact", "schur-sections", "laplace", "detlab", "lewis", "projections", "meanwidth"};
}

inline VerifyReport verify_suite(const std::string& name, std::uint64_t seed, int workers) {
    if (name == "exact") return verify_exact();
    if (name == "schur-sections") return verify_schur_sections(seed, workers);
    if (name == "laplace") return verify_laplace(seed, workers);
    if (name == "detlab") return verify_detlab(seed, workers);
    if (name == "lewis") return verify_lewis(seed);
    if (name == "projections") return verify_projections(seed, workers);
    if (name == "meanwidth") return verify_meanwidth(seed, workers);
    if (name == "all") {
        VerifyReport all;
        all.suite = "all";
        for (const std::string& s : verify_suite_names()) {
            VerifyReport part = verify_suite(s, seed, workers);
            all.rows.insert(all.rows.end(), part.rows.begin(), part.rows.end());
        }
        return all;
    }
    throw std::invalid_argument("verify_suite: unknown suite '" + name + "'");
}

}  // namespace lpsect

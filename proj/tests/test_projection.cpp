#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "lpsect/projection.hpp"

using namespace lpsect;

namespace {

MCConfig cfg(long long samples, std::uint64_t seed) {
    MCConfig mc;
    mc.samples = samples;
    mc.seed = seed;
    mc.chunk = 4096;
    return mc;
}

bool within_sigma(const Estimate& e, double ref, double nsig) {
    return std::fabs(e.value - ref) <= nsig * e.std_error + 1e-12;
}

Vec diag_theta(int n) { return Vec(static_cast<std::size_t>(n), 1.0 / std::sqrt(static_cast<double>(n))); }

// Exact min over z of max_i |y_i + theta_i z| for scalar blocks: the
// objective is piecewise-linear convex, so ternary search nails it.
double scalar_witness_optimum(const Vec& theta, const Vec& y) {
    auto obj = [&](double z) {
        double g = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) g = std::max(g, std::fabs(y[i] + theta[i] * z));
        return g;
    };
    double lo = -50.0, hi = 50.0;
    for (int it = 0; it < 300; ++it) {
        const double a = lo + (hi - lo) / 3.0, b = hi - (hi - lo) / 3.0;
        if (obj(a) < obj(b)) hi = b;
        else lo = a;
    }
    return obj(0.5 * (lo + hi));
}

}  // namespace

TEST_CASE("membership matches the scalar witness oracle", "[projection]") {
    // Three active scalar blocks exercise the descent path; the oracle is
    // the exact piecewise-linear optimum. Points in a small band around the
    // boundary are skipped since both answers are legitimate there.
    const ConvexBody K = ConvexBody::from_space(Space::lq_ball(kInf, 1));
    const Vec theta = {0.6, 0.48, 0.64};
    const auto comp = complement_basis(theta);
    REQUIRE(comp.size() == 2);

    std::mt19937 gen(31);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    int checked = 0;
    for (int t = 0; t < 300; ++t) {
        const double c1 = u(gen), c2 = u(gen);
        Vec y(3, 0.0);
        for (int i = 0; i < 3; ++i)
            y[static_cast<std::size_t>(i)] = c1 * comp[0][static_cast<std::size_t>(i)] +
                                             c2 * comp[1][static_cast<std::size_t>(i)];
        const double opt = scalar_witness_optimum(theta, y);
        if (std::fabs(opt - 1.0) < 0.05) continue;
        ++checked;
        CHECK(projection_membership(K, 3, theta, y) == (opt < 1.0));
    }
    CHECK(checked > 100);
}

TEST_CASE("projections of products with exact values", "[projection]") {
    // Square onto the anti-diagonal line: a segment of length 2 sqrt 2. The
    // projection fills the whole sampling box, so the estimate is exact.
    const ConvexBody seg = ConvexBody::from_space(Space::lq_ball(kInf, 1));
    const Estimate s = projection_volume(seg, 2, diag_theta(2), {}, cfg(30000, 801));
    CHECK(s.value == Catch::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(s.std_error <= 1e-12);

    // Disk pair: Proj_{H_diag}(B_2^2 x B_2^2) is a sqrt-2-dilated disk.
    const ConvexBody disk = ConvexBody::from_space(Space::euclidean(2));
    const Estimate d = projection_volume(disk, 2, diag_theta(2), {}, cfg(40000, 802));
    CHECK(within_sigma(d, 2.0 * kPi, 4.0));

    // Single-block projection onto a coordinate line: the shadow of the
    // disk is the segment [-1, 1].
    const Space D = Space::euclidean(2);
    auto gauge = [D](std::span<const double> x) { return D.norm_unchecked(x); };
    const Subspace line(2, {{1.0, 0.0}});
    const Estimate seg2 = projection_volume_gauge(gauge, 1.0, line, {}, cfg(30000, 803));
    CHECK(within_sigma(seg2, 2.0, 4.0));
}

TEST_CASE("projection lower bound and validation", "[projection]") {
    const ConvexBody disk = ConvexBody::from_space(Space::euclidean(2));
    const ProjBoundResult r = projection_lower_bound_check(disk, 2, diag_theta(2), {}, cfg(30000, 804));
    CHECK(r.holds);
    CHECK(r.bound == Catch::Approx(kPi));
    CHECK(r.proj.value > r.bound);

    // Discrete-measure bodies have no closed-form volume to compare against.
    std::vector<Atom> atoms;
    for (int j = 0; j < 3; ++j) {
        const double ang = 2.0 * M_PI * j / 3.0;
        atoms.push_back({2.0 / 3.0, {std::cos(ang), std::sin(ang)}});
    }
    const ConvexBody nat = ConvexBody::from_space(Space::lp_discrete(1.0, DiscreteMeasure(2, atoms)));
    CHECK_THROWS_AS(projection_lower_bound_check(nat, 2, diag_theta(2), {}, cfg(100, 1)), std::invalid_argument);

    // Non-convex unit balls are rejected outright.
    CHECK_THROWS_AS(ConvexBody::from_space(Space::lq_ball(0.5, 2)), std::invalid_argument);
}

TEST_CASE("membership input validation", "[projection]") {
    const ConvexBody K = ConvexBody::from_space(Space::lq_ball(kInf, 1));
    CHECK_THROWS_AS(projection_membership(K, 2, {1.0, 1.0}, Vec{0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(projection_membership(K, 3, diag_theta(2), Vec{0.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(projection_membership(K, 2, diag_theta(2), Vec{0.0}), std::invalid_argument);
    // (1, 1) has a nonzero block sum along theta, so it is not in H_theta.
    CHECK_THROWS_AS(projection_membership(K, 2, diag_theta(2), Vec{1.0, 1.0}), std::invalid_argument);

    const Space D = Space::euclidean(2);
    auto gauge = [D](std::span<const double> x) { return D.norm_unchecked(x); };
    const Subspace line(2, {{1.0, 0.0}});
    CHECK(subspace_membership_gauge(gauge, 1.0, line, Vec{0.5, 0.0}));
    CHECK_FALSE(subspace_membership_gauge(gauge, 1.0, line, Vec{1.5, 0.0}));
    CHECK_THROWS_AS(subspace_membership_gauge(gauge, 1.0, line, Vec{0.5, 0.7}), std::invalid_argument);
    CHECK_THROWS_AS(subspace_membership_gauge(gauge, 1.0, line, Vec{0.5}), std::invalid_argument);
}

TEST_CASE("projector decompositions average to multiples of the identity", "[projection]") {
    std::mt19937 gen(47);
    std::normal_distribution<double> nd;
    for (int n = 2; n <= 4; ++n) {
        for (int m = 1; m <= 2; ++m) {
            Vec theta(static_cast<std::size_t>(n));
            double n2 = 0.0;
            for (double& v : theta) {
                v = nd(gen);
                n2 += v * v;
            }
            for (double& v : theta) v /= std::sqrt(n2);
            CHECK(block_decomposition_deviation(n, m, theta) < 1e-12);
        }
    }

    CHECK_THROWS_AS(block_decomposition_deviation(1, 1, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(block_decomposition_deviation(8, 1, Vec(8, 1.0 / std::sqrt(8.0))), std::invalid_argument);
    CHECK_THROWS_AS(block_decomposition_deviation(2, 0, diag_theta(2)), std::invalid_argument);
    CHECK_THROWS_AS(block_decomposition_deviation(2, 1, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(block_decomposition_deviation(3, 1, diag_theta(2)), std::invalid_argument);

    // Signed-permutation averages work for any subspace, coordinate or not.
    CHECK(onesym_decomposition_deviation(Subspace(4, {{1, 0, 0, 0}, {0, 1, 0, 0}})) < 1e-12);
    const Vec dir = {0.6, 0.0, 0.8};
    CHECK(onesym_decomposition_deviation(Subspace(3, complement_basis(dir))) < 1e-12);
    CHECK_THROWS_AS(onesym_decomposition_deviation(Subspace(8, {Vec{1, 0, 0, 0, 0, 0, 0, 0}})),
                    std::invalid_argument);
}

TEST_CASE("coordinate-symmetric projection bound", "[projection]") {
    // Cube onto a coordinate plane: |Proj| = 4 = (2^3)^{2/3}, equality.
    const Subspace plane(3, {{1, 0, 0}, {0, 1, 0}});
    const OneSymResult cube = onesym_projection_check(kInf, plane, {}, cfg(15000, 805));
    CHECK(cube.holds);
    CHECK(cube.bound == Catch::Approx(4.0));
    CHECK(within_sigma(cube.proj, 4.0, 4.0));

    // Diamond onto a tilted line: length 2 max(|cos|, |sin|) >= sqrt 2.
    const Subspace tilt(2, {{0.8, 0.6}});
    const OneSymResult dia = onesym_projection_check(1.0, tilt, {}, cfg(15000, 806));
    CHECK(dia.holds);
    CHECK(dia.bound == Catch::Approx(std::sqrt(2.0)));

    CHECK_THROWS_AS(onesym_projection_check(1.0, Subspace::full(2), {}, cfg(100, 1)), std::invalid_argument);
    CHECK_THROWS_AS(onesym_projection_check(0.5, tilt, {}, cfg(100, 1)), std::invalid_argument);
}

TEST_CASE("loomis-whitney inequality on products", "[projection]") {
    // Unit box with coordinate lines: both sides are exactly |box| = 1.
    const ConvexBody box = ConvexBody::box({0.0, 0.0}, {1.0, 1.0});
    auto bgauge = [box](std::span<const double> x) { return box.gauge_unchecked(x); };
    std::vector<LWPart> parts;
    parts.push_back({1.0, Subspace(2, {{1.0, 0.0}})});
    parts.push_back({1.0, Subspace(2, {{0.0, 1.0}})});
    const LWResult r = loomis_whitney_check(bgauge, 2, box.circumradius(), box.exact_log_volume(), parts, 1.0,
                                            {}, cfg(10000, 807));
    CHECK(r.decomposition_ok);
    CHECK(r.holds);
    CHECK(r.lhs_log == Catch::Approx(0.0).margin(1e-12));
    CHECK(std::fabs(r.rhs_log) <= 4.0 * r.sigma_log + 1e-12);

    // Disk against its coordinate shadows: pi <= 2 * 2 strictly.
    const Space D = Space::euclidean(2);
    auto dgauge = [D](std::span<const double> x) { return D.norm_unchecked(x); };
    const LWResult rd = loomis_whitney_check(dgauge, 2, 1.0, std::log(kPi), parts, 1.0, {}, cfg(10000, 808));
    CHECK(rd.decomposition_ok);
    CHECK(rd.holds);
    // Both shadows are hit with probability one, so the slack is the exact
    // log gap log(4/pi).
    CHECK(rd.rhs_log - rd.lhs_log == Catch::Approx(std::log(4.0 / kPi)).margin(1e-10));

    CHECK_THROWS_AS(loomis_whitney_check(dgauge, 2, 1.0, std::log(kPi), {}, 1.0, {}, cfg(100, 1)),
                    std::invalid_argument);
    std::vector<LWPart> bad;
    bad.push_back({-1.0, Subspace(2, {{1.0, 0.0}})});
    CHECK_THROWS_AS(loomis_whitney_check(dgauge, 2, 1.0, std::log(kPi), bad, 1.0, {}, cfg(100, 1)),
                    std::invalid_argument);
    std::vector<LWPart> wrongdim;
    wrongdim.push_back({1.0, Subspace(3, {{1.0, 0.0, 0.0}})});
    CHECK_THROWS_AS(loomis_whitney_check(dgauge, 2, 1.0, std::log(kPi), wrongdim, 1.0, {}, cfg(100, 1)),
                    std::invalid_argument);
}

TEST_CASE("simplex descent helper", "[projection]") {
    auto quad = [](const Vec& x) { return (x[0] - 2.0) * (x[0] - 2.0); };
    const double best = detail::nelder_mead_min(quad, Vec{0.0}, 1.0, 400, -1.0);
    CHECK(best < 1e-8);

    // Zero-dimensional starts just evaluate the function.
    auto c = [](const Vec&) { return 7.5; };
    CHECK(detail::nelder_mead_min(c, Vec{}, 1.0, 10, -1.0) == 7.5);

    CHECK_THROWS_AS(ConvexBody::box({0.0}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(ConvexBody::box({0.0, 0.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(ConvexBody::box({}, {}), std::invalid_argument);
    const ConvexBody b = ConvexBody::box({-1.0, -1.0}, {1.0, 1.0});
    CHECK_THROWS_AS(b.gauge(Vec{1.0}), std::invalid_argument);
    CHECK(b.gauge(Vec{0.5, -0.25}) == Catch::Approx(0.5));
}

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "lpsect/majorization.hpp"
#include "lpsect/meanwidth.hpp"

using namespace lpsect;

namespace {

MCConfig cfg(long long samples, std::uint64_t seed) {
    MCConfig mc;
    mc.samples = samples;
    mc.seed = seed;
    mc.chunk = 8192;
    return mc;
}

bool within_sigma(const Estimate& e, double ref, double nsig) {
    return std::fabs(e.value - ref) <= nsig * e.std_error + 1e-12;
}

Vec diag_theta(int n) { return Vec(static_cast<std::size_t>(n), 1.0 / std::sqrt(static_cast<double>(n))); }

Vec e1(int n) {
    Vec v(static_cast<std::size_t>(n), 0.0);
    v[0] = 1.0;
    return v;
}

}  // namespace

TEST_CASE("scalar block mean widths in closed form", "[meanwidth]") {
    // X = R, p = 1, n = 2. On the hyperplane sphere {u, -u} the gauge is
    // |u_1| + |u_2|: at theta = e1 it is 1 exactly, at the diagonal sqrt 2.
    const Space R = Space::lq_ball(1.0, 1);
    const Estimate we = mean_width_estimate(R, 1.0, 2, e1(2), cfg(50000, 901));
    CHECK(we.value == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(we.std_error <= 1e-12);

    const Estimate wd = mean_width_estimate(R, 1.0, 2, diag_theta(2), cfg(50000, 902));
    CHECK(wd.value == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(wd.std_error <= 1e-12);
}

TEST_CASE("euclidean blocks at p=2 have unit mean width", "[meanwidth]") {
    // The p = 2 gauge of Euclidean blocks is the ambient Euclidean norm,
    // which is 1 on the sphere for any direction.
    const Estimate w = mean_width_estimate(Space::euclidean(2), 2.0, 2, diag_theta(2), cfg(20000, 903));
    CHECK(w.value == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(w.std_error <= 1e-12);

    const Vec skew = {0.6, -0.8};
    const Estimate w2 = mean_width_estimate(Space::euclidean(2), 2.0, 2, skew, cfg(20000, 904));
    CHECK(w2.value == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sphere average is rotation invariant", "[meanwidth]") {
    // Rotating the gauge must not change the spherical mean: the l1 gauge
    // and its 45-degree rotation average to the same value on the circle.
    const Space L1 = Space::lq_ball(1.0, 2);
    auto g = [L1](std::span<const double> x) { return L1.norm_unchecked(x); };
    const double c = std::cos(kPi / 4.0), s = std::sin(kPi / 4.0);
    auto grot = [L1, c, s](std::span<const double> x) {
        const Vec y = {c * x[0] - s * x[1], s * x[0] + c * x[1]};
        return L1.norm_unchecked(y);
    };
    const Estimate a = sphere_mean_gauge(g, Subspace::full(2), cfg(200000, 905));
    const Estimate b = sphere_mean_gauge(grot, Subspace::full(2), cfg(200000, 906));
    const double sig = combined_sigma(a, b);
    CHECK(std::fabs(a.value - b.value) <= 4.0 * sig);
    // Exact spherical mean of |u1| + |u2| in the plane is 4/pi.
    CHECK(within_sigma(a, 4.0 / kPi, 4.0));
}

TEST_CASE("mean width decreases along majorization chains", "[meanwidth]") {
    const Space R = Space::lq_ball(1.0, 1);
    const std::vector<Vec> chain = majorization_chain(3, 4);
    const MeanWidthReport rep = meanwidth_schur_suite(R, 1.0, 3, chain, cfg(100000, 907));
    CHECK(rep.all_pass);
    CHECK(rep.steps.size() == chain.size());
    CHECK(rep.checks.size() == chain.size() - 1);

    // First step (diagonal) has the largest width, last (e1) the smallest.
    CHECK(rep.steps.front().est.value >= rep.steps.back().est.value - 1e-6);

    std::vector<Vec> rev(chain.rbegin(), chain.rend());
    CHECK_THROWS_AS(meanwidth_schur_suite(R, 1.0, 3, rev, cfg(1000, 1)), std::invalid_argument);
    CHECK_THROWS_AS(meanwidth_schur_suite(R, 1.0, 3, {diag_theta(3)}, cfg(1000, 1)), std::invalid_argument);
}

TEST_CASE("discrete measures must be isotropic for the chain suite", "[meanwidth]") {
    const DiscreteMeasure skew(2, {{2.0, {1.0, 0.0}}, {1.0, {0.0, 1.0}}});
    const Space X = Space::lp_discrete(1.0, skew);
    CHECK_THROWS_AS(meanwidth_schur_suite(X, 1.0, 2, majorization_chain(2, 3), cfg(1000, 1)),
                    std::invalid_argument);
}

TEST_CASE("mean width argument validation", "[meanwidth]") {
    const Space R = Space::lq_ball(1.0, 1);
    const MCConfig mc = cfg(1000, 1);
    CHECK_THROWS_AS(mean_width_estimate(R, 0.5, 2, e1(2), mc), std::invalid_argument);
    CHECK_THROWS_AS(mean_width_estimate(R, kInf, 2, e1(2), mc), std::invalid_argument);
    CHECK_THROWS_AS(mean_width_estimate(R, 1.0, 1, {1.0}, mc), std::invalid_argument);
    CHECK_THROWS_AS(mean_width_estimate(R, 1.0, 2, {1.0, 1.0}, mc), std::invalid_argument);
    CHECK_THROWS_AS(mean_width_estimate(R, 1.0, 3, e1(2), mc), std::invalid_argument);
}

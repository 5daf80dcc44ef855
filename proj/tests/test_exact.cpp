#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lpsect/exact.hpp"

using namespace lpsect;

namespace {

// Hit-rate volume estimate over [-1,1]^dim, independent of the library's
// sampling stack. Returns {estimate, sigma}.
template <typename Member>
std::pair<double, double> rejection_volume(int dim, long samples, unsigned seed, Member inside) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x(static_cast<std::size_t>(dim));
    long hits = 0;
    for (long t = 0; t < samples; ++t) {
        for (double& v : x) v = u(gen);
        if (inside(x)) ++hits;
    }
    const double box = std::pow(2.0, dim);
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    return {box * p, box * std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

}  // namespace

TEST_CASE("lp ball volumes at known points", "[exact]") {
    CHECK(lp_ball_volume(1, 1.0).value == Catch::Approx(2.0));
    CHECK(lp_ball_volume(1, 7.5).value == Catch::Approx(2.0));
    CHECK(lp_ball_volume(2, 2.0).value == Catch::Approx(kPi));
    CHECK(lp_ball_volume(2, 1.0).value == Catch::Approx(2.0));
    CHECK(lp_ball_volume(4, 1.0).value == Catch::Approx(2.0 / 3.0));
    CHECK(lp_ball_volume(3, kInf).value == Catch::Approx(8.0));
    CHECK(lp_ball_volume(3, 2.0).value == Catch::Approx(4.0 * kPi / 3.0));
    CHECK(log_lp_ball_volume(4, 1.0) == Catch::Approx(std::log(2.0 / 3.0)));

    CHECK_THROWS_AS(lp_ball_volume(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(lp_ball_volume(2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(lp_ball_volume(2, -1.0), std::invalid_argument);
}

TEST_CASE("composition formulas agree with rejection sampling", "[exact][oracle]") {
    const long N = 1500000;

    // Cross-polytope B_1^4.
    auto [v1, s1] = rejection_volume(4, N, 101u, [](const std::vector<double>& x) {
        return std::fabs(x[0]) + std::fabs(x[1]) + std::fabs(x[2]) + std::fabs(x[3]) <= 1.0;
    });
    CHECK(std::fabs(v1 - 2.0 / 3.0) <= 5.0 * s1);

    // l_2^2 (+)_1 l_2^2: ||(x1,x2)||_2 + ||(x3,x4)||_2 <= 1.
    const ExactValue ds = direct_sum_volume(kPi, 2, kPi, 2);
    CHECK(ds.value == Catch::Approx(kPi * kPi / 6.0));
    auto [v2, s2] = rejection_volume(4, N, 202u, [](const std::vector<double>& x) {
        return std::hypot(x[0], x[1]) + std::hypot(x[2], x[3]) <= 1.0;
    });
    CHECK(std::fabs(v2 - ds.value) <= 5.0 * s2);

    // l_1^2 (+)_1 l_2^2: |x1| + |x2| + ||(x3,x4)||_2 <= 1.
    const ExactValue mx = mixed_sum_volume(2, 1, 2);
    CHECK(mx.value == Catch::Approx(kPi / 3.0));
    auto [v3, s3] = rejection_volume(4, N, 303u, [](const std::vector<double>& x) {
        return std::fabs(x[0]) + std::fabs(x[1]) + std::hypot(x[2], x[3]) <= 1.0;
    });
    CHECK(std::fabs(v3 - mx.value) <= 5.0 * s3);
}

TEST_CASE("power and mixed-sum identities", "[exact]") {
    // One copy is the identity.
    CHECK(power_volume(kPi, 2, 1).value == Catch::Approx(kPi));
    // Two l_1 copies of an interval give the 2-dimensional cross polytope.
    CHECK(power_volume(2.0, 1, 2).value == Catch::Approx(2.0));
    // Four copies give B_1^4.
    CHECK(power_volume(2.0, 1, 4).value == Catch::Approx(2.0 / 3.0));

    CHECK(mixed_sum_volume(0, 2, 4).value == Catch::Approx(std::pow(kPi, 4) / 280.0));
    CHECK(mixed_sum_volume(1, 1, 1).value == Catch::Approx(2.0));
    // (a,b,c) = (0,1,c) is just the c-dimensional Euclidean ball.
    CHECK(mixed_sum_volume(0, 1, 3).value == Catch::Approx(4.0 * kPi / 3.0));
    // Pure l1 part plus one interval matches the cross polytope.
    CHECK(mixed_sum_volume(3, 1, 1).value == Catch::Approx(lp_ball_volume(4, 1.0).value));

    CHECK_THROWS_AS(power_volume(0.0, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(power_volume(1.0, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(power_volume(1.0, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(direct_sum_volume(1.0, 0, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(direct_sum_volume(-1.0, 2, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(mixed_sum_volume(-1, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(mixed_sum_volume(0, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(mixed_sum_volume(0, 1, 0), std::invalid_argument);
}

TEST_CASE("counterexample comparison", "[exact]") {
    const CounterexampleCheck c2 = remark_counterexample_check(2);
    CHECK(c2.lhs == Catch::Approx(12.0));
    CHECK(c2.rhs == Catch::Approx(16.0 / (kPi * kPi)));
    CHECK(c2.strict);

    const CounterexampleCheck c3 = remark_counterexample_check(3);
    CHECK(c3.lhs == Catch::Approx(120.0));
    CHECK(c3.rhs == Catch::Approx(std::pow(4.0 / kPi, 3)));
    CHECK(c3.strict);

    // The factorial route and the volume route measure the same ratio:
    // vol_lhs/vol_rhs = (2n)!/n! * (pi/4)^n, so the log gaps agree after
    // shifting by n log(pi/4) twice, i.e. lhs-rhs == vol gap exactly.
    for (int n = 2; n <= 10; ++n) {
        const CounterexampleCheck c = remark_counterexample_check(n);
        const double gap_fact = c.lhs_log - c.rhs_log;
        const double gap_vol = c.vol_lhs_log - c.vol_rhs_log;
        CHECK(gap_vol == Catch::Approx(gap_fact).epsilon(1e-10));
        CHECK((c.vol_lhs_log > c.vol_rhs_log) == c.strict);
        CHECK(c.strict);
    }

    CHECK_THROWS_AS(remark_counterexample_check(1), std::invalid_argument);
}

TEST_CASE("block-factor section bound", "[exact]") {
    CHECK(brzezinski_bound(2).value == 2.0);
    CHECK(brzezinski_bound(3).value ==
          Catch::Approx(std::pow(10.0, 1.5) / (12.0 * std::tgamma(1.5))).epsilon(1e-12));
    CHECK(brzezinski_bound(4).value == Catch::Approx(4.5));
    // Direct and log forms agree where both are finite.
    for (int m : {2, 5, 17, 60, 80}) {
        const ExactValue b = brzezinski_bound(m);
        CHECK(std::log(b.value) == Catch::Approx(b.log_value).epsilon(1e-12));
    }
    CHECK_THROWS_AS(brzezinski_bound(1), std::invalid_argument);
}

TEST_CASE("space ball volume over the composition tree", "[exact]") {
    auto v = space_ball_volume(Space::euclidean(3));
    REQUIRE(v.has_value());
    CHECK(v->value == Catch::Approx(4.0 * kPi / 3.0));

    v = space_ball_volume(Space::lq_ball(1.0, 4));
    REQUIRE(v.has_value());
    CHECK(v->value == Catch::Approx(2.0 / 3.0));

    // dsum(l_1^2; l_2^2) matches the mixed-sum closed form.
    v = space_ball_volume(Space::direct_sum_l1(Space::lq_ball(1.0, 2), Space::euclidean(2)));
    REQUIRE(v.has_value());
    CHECK(v->value == Catch::Approx(mixed_sum_volume(2, 1, 2).value));

    // p = 2 over Euclidean blocks collapses to a round ball.
    v = space_ball_volume(Space::lp_power(2.0, 3, Space::euclidean(2)));
    REQUIRE(v.has_value());
    CHECK(v->value == Catch::Approx(std::pow(kPi, 3) / 6.0));

    // Matching inner and outer exponents collapse to one big lq ball.
    v = space_ball_volume(Space::lp_power(3.0, 2, Space::lq_ball(3.0, 2)));
    REQUIRE(v.has_value());
    CHECK(v->value == Catch::Approx(lp_ball_volume(4, 3.0).value));

    // p = 1 power of a disk.
    v = space_ball_volume(Space::lp_power(1.0, 2, Space::euclidean(2)));
    REQUIRE(v.has_value());
    CHECK(v->value == Catch::Approx(direct_sum_volume(kPi, 2, kPi, 2).value));

    // p = inf power multiplies volumes.
    v = space_ball_volume(Space::lp_power(kInf, 2, Space::euclidean(2)));
    REQUIRE(v.has_value());
    CHECK(v->value == Catch::Approx(kPi * kPi));

    // One copy is the inner ball regardless of p.
    v = space_ball_volume(Space::lp_power(5.0, 1, Space::euclidean(3)));
    REQUIRE(v.has_value());
    CHECK(v->value == Catch::Approx(4.0 * kPi / 3.0));

    // No closed form: discrete-measure norms and non-collapsing powers.
    std::vector<Atom> atoms = {{1.0, {1.0, 0.0}}, {1.0, {0.0, 1.0}}};
    CHECK_FALSE(space_ball_volume(Space::lp_discrete(1.0, DiscreteMeasure(2, atoms))).has_value());
    CHECK_FALSE(space_ball_volume(Space::lp_power(1.5, 2, Space::euclidean(2))).has_value());
    CHECK_FALSE(space_ball_volume(
                    Space::direct_sum_l1(Space::lp_discrete(1.0, DiscreteMeasure(2, atoms)), Space::euclidean(2)))
                    .has_value());
}

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>

#include "lpsect/mc.hpp"

using namespace lpsect;

TEST_CASE("constant integrand is exact with zero error", "[mc]") {
    MCConfig mc;
    mc.samples = 1000;
    Estimate e = mc_mean(mc, [](SampleStream&) { return 3.25; });
    CHECK(e.value == 3.25);
    CHECK(e.std_error == 0.0);
    CHECK(e.samples == 1000);
}

TEST_CASE("uniform mean lands near one half", "[mc]") {
    MCConfig mc;
    mc.samples = 400000;
    mc.seed = 5;
    Estimate e = mc_mean(mc, [](SampleStream& s) { return s.next_uniform(); });
    CHECK(std::fabs(e.value - 0.5) < 4.0 * e.std_error);
    CHECK(e.std_error == Catch::Approx(1.0 / std::sqrt(12.0 * 400000)).epsilon(0.05));
}

TEST_CASE("results are bit-identical for any worker count", "[mc]") {
    for (std::uint64_t samples : {1000ull, 65536ull, 100001ull}) {
        MCConfig base;
        base.samples = samples;
        base.seed = 9;
        base.chunk = 1024;
        Estimate ref;
        bool first = true;
        for (int w : {1, 2, 3, 7}) {
            MCConfig mc = base;
            mc.workers = w;
            Estimate e = mc_mean(mc, [](SampleStream& s) {
                const double u = s.next_uniform();
                return u * u + s.next_normal() * 1e-3;
            });
            if (first) {
                ref = e;
                first = false;
            } else {
                // memcmp: same bits, not merely close
                REQUIRE(std::memcmp(&e.value, &ref.value, sizeof(double)) == 0);
                REQUIRE(std::memcmp(&e.std_error, &ref.std_error, sizeof(double)) == 0);
            }
        }
    }
}

TEST_CASE("samples spanning a partial final chunk are all used", "[mc]") {
    MCConfig mc;
    mc.samples = 100;
    mc.chunk = 64;  // chunks of 64 and 36
    mc.seed = 1;
    Estimate e = mc_mean(mc, [](SampleStream& s) { return s.next_uniform(); });
    CHECK(e.samples == 100);
    CHECK(e.value > 0.0);
    CHECK(e.value < 1.0);
}

TEST_CASE("estimate scaling and comparison helpers", "[mc]") {
    Estimate a{2.0, 0.1, 100, 0};
    Estimate b{2.05, 0.1, 100, 0};
    Estimate s = scale_estimate(a, -3.0);
    CHECK(s.value == Catch::Approx(-6.0));
    CHECK(s.std_error == Catch::Approx(0.3));
    CHECK(combined_sigma(a, b) == Catch::Approx(std::sqrt(0.02)));

    CHECK(leq_within(a, b, 3.0));
    CHECK(leq_within(b, a, 3.0));  // within noise in both directions
    Estimate c{3.0, 0.1, 100, 0};
    CHECK_FALSE(leq_within(c, a, 3.0));
    CHECK(leq_within(a, c, 3.0));

    // zero-variance equality must not fail on rounding
    Estimate x{1.0, 0.0, 10, 0};
    Estimate y{1.0 - 1e-15, 0.0, 10, 0};
    CHECK(leq_within(x, y, 3.0));
}

TEST_CASE("config validation", "[mc]") {
    MCConfig mc;
    mc.samples = 0;
    CHECK_THROWS_AS(mc_mean(mc, [](SampleStream&) { return 0.0; }), std::invalid_argument);
    MCConfig mc2;
    mc2.chunk = 0;
    CHECK_THROWS_AS(mc_mean(mc2, [](SampleStream&) { return 0.0; }), std::invalid_argument);
}

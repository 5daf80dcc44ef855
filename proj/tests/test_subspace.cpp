#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "lpsect/rng.hpp"
#include "lpsect/subspace.hpp"

using namespace lpsect;

namespace {

double frob_diff(const Mat& a, const Mat& b) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const double d = a(i, j) - b(i, j);
            s += d * d;
        }
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("subspace constructor enforces orthonormal rows", "[subspace]") {
    CHECK_THROWS_AS(Subspace(2, {{1.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Subspace(2, {{1.0, 0.0}, {1.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Subspace(2, {{1.0, 0.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Subspace(2, {}), std::invalid_argument);
    CHECK_THROWS_AS(Subspace(0, {{}}), std::invalid_argument);
    CHECK_NOTHROW(Subspace(2, {{1.0, 0.0}, {0.0, 1.0}}));

    const double s = 1.0 / std::sqrt(2.0);
    const Subspace diag(2, {{s, s}});
    CHECK(diag.ambient_dim() == 2);
    CHECK(diag.dim() == 1);
}

TEST_CASE("full subspace and coefficient maps", "[subspace]") {
    const Subspace F = Subspace::full(3);
    CHECK(F.dim() == 3);
    const Vec x = {1.0, -2.0, 0.5};
    const Vec c = F.coeffs_of(x);
    const Vec back = F.from_coeffs(c);
    for (int i = 0; i < 3; ++i) CHECK(back[static_cast<std::size_t>(i)] == Catch::Approx(x[static_cast<std::size_t>(i)]));

    CHECK_THROWS_AS(F.coeffs_of(Vec{1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(F.from_coeffs(Vec{1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("projector is an orthogonal projection", "[subspace]") {
    const double s = 1.0 / std::sqrt(2.0);
    const Subspace E(3, {{s, s, 0.0}, {0.0, 0.0, 1.0}});
    const Mat P = E.projector();

    CHECK(frob_diff(mat_mul(P, P), P) < 1e-12);
    CHECK(frob_diff(P, transpose(P)) < 1e-14);
    CHECK(trace(P) == Catch::Approx(2.0));

    const Subspace Ec = E.orthogonal_complement();
    CHECK(Ec.dim() == 1);
    Mat sum = E.projector();
    const Mat Pc = Ec.projector();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) sum(i, j) += Pc(i, j);
    CHECK(frob_diff(sum, Mat::identity(3)) < 1e-12);
}

TEST_CASE("block hyperplane basis", "[subspace]") {
    const int m = 2;
    Vec theta = {1.0, 0.0, 0.0};
    const BlockHyperplane H(theta, m);
    CHECK(H.n() == 3);
    CHECK(H.m() == 2);
    const Subspace& sub = H.subspace();
    CHECK(sub.ambient_dim() == 6);
    CHECK(sub.dim() == m * 2);

    // Every basis vector satisfies sum_i theta_i x_i = 0 blockwise.
    for (const Vec& b : sub.basis()) {
        for (int a = 0; a < m; ++a) {
            double s = 0.0;
            for (int i = 0; i < 3; ++i)
                s += theta[static_cast<std::size_t>(i)] *
                     b[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) + static_cast<std::size_t>(a)];
            CHECK(std::fabs(s) < 1e-12);
        }
    }

    CHECK_THROWS_AS(BlockHyperplane({1.0}, 2), std::invalid_argument);
    CHECK_THROWS_AS(BlockHyperplane({1.0, 1.0}, 2), std::invalid_argument);
    CHECK_THROWS_AS(BlockHyperplane({1.0, 0.0}, 0), std::invalid_argument);
}

TEST_CASE("unit theta validation and complement basis", "[subspace]") {
    CHECK_NOTHROW(validate_unit_theta({0.6, 0.8}));
    CHECK_THROWS_AS(validate_unit_theta({1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate_unit_theta({}), std::invalid_argument);

    const Vec theta = {0.6, 0.8, 0.0};
    const auto comp = complement_basis(theta);
    REQUIRE(comp.size() == 2);
    for (const Vec& w : comp) {
        CHECK(std::fabs(dot(w, theta)) < 1e-12);
        CHECK(norm2(w) == Catch::Approx(1.0));
    }
    CHECK(std::fabs(dot(comp[0], comp[1])) < 1e-12);
}

TEST_CASE("gram schmidt extension failure is reported", "[subspace]") {
    // Candidates lie in the span of the fixed vector, so nothing extends.
    const std::vector<Vec> fixed = {{1.0, 0.0}};
    const std::vector<Vec> cands = {{2.0, 0.0}, {-3.0, 0.0}};
    CHECK_THROWS_AS(detail::gram_schmidt_extend(fixed, cands, 1), std::runtime_error);
}

TEST_CASE("subspace samplers stay in the span", "[subspace]") {
    const double s = 1.0 / std::sqrt(2.0);
    const Subspace E(3, {{s, s, 0.0}, {0.0, 0.0, 1.0}});
    const Mat P = E.projector();

    SampleStream stream(42, 0);
    for (int t = 0; t < 25; ++t) {
        const Vec g = sample_gaussian(E, stream);
        Vec pg(3, 0.0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) pg[static_cast<std::size_t>(i)] += P(i, j) * g[static_cast<std::size_t>(j)];
        for (int i = 0; i < 3; ++i) CHECK(pg[static_cast<std::size_t>(i)] == Catch::Approx(g[static_cast<std::size_t>(i)]).margin(1e-12));

        const Vec u = sample_sphere(E, stream);
        CHECK(norm2(u) == Catch::Approx(1.0));
    }
}

TEST_CASE("block transform application", "[subspace]") {
    Mat T(2, 2);
    T(0, 0) = 2.0; T(0, 1) = 1.0;
    T(1, 0) = 0.0; T(1, 1) = 3.0;
    const Vec x = {1.0, 1.0, 0.0, 2.0};
    const Vec y = block_transform_apply(T, x, 2, 2);
    CHECK(y[0] == Catch::Approx(3.0));
    CHECK(y[1] == Catch::Approx(3.0));
    CHECK(y[2] == Catch::Approx(2.0));
    CHECK(y[3] == Catch::Approx(6.0));

    CHECK_THROWS_AS(block_transform_apply(T, x, 2, 3), std::invalid_argument);
    Mat S(2, 2);
    S(0, 0) = 1.0; S(0, 1) = 1.0;
    S(1, 0) = 1.0; S(1, 1) = 1.0;
    CHECK_THROWS_AS(block_transform_apply(S, x, 2, 2), std::invalid_argument);
}

TEST_CASE("subspace load from file", "[subspace]") {
    const std::string path = "/tmp/lpsect_test_subspace.txt";
    {
        std::FILE* f = std::fopen(path.c_str(), "w");
        REQUIRE(f != nullptr);
        std::fputs("# rows are basis vectors\n0.70710678118654752 0.70710678118654752 0\n0 0 1\n", f);
        std::fclose(f);
    }
    const Subspace E = Subspace::load(path);
    CHECK(E.ambient_dim() == 3);
    CHECK(E.dim() == 2);

    {
        std::FILE* f = std::fopen(path.c_str(), "w");
        REQUIRE(f != nullptr);
        std::fputs("1 0\n0.9 0.1\n", f);
        std::fclose(f);
    }
    CHECK_THROWS_AS(Subspace::load(path), std::invalid_argument);

    {
        std::FILE* f = std::fopen(path.c_str(), "w");
        REQUIRE(f != nullptr);
        std::fputs("1 0\n0 1 0\n", f);
        std::fclose(f);
    }
    CHECK_THROWS_AS(Subspace::load(path), std::runtime_error);

    CHECK_THROWS_AS(Subspace::load("/nonexistent/subspace.txt"), std::runtime_error);
    std::remove(path.c_str());
}

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "lpsect/parse.hpp"

using namespace lpsect;

TEST_CASE("space grammar round trips", "[parse]") {
    const Space a = parse_space("lq:q=1,m=2");
    CHECK(a.kind() == Space::Kind::LqBall);
    CHECK(a.exponent() == 1.0);
    CHECK(a.dim() == 2);

    const Space b = parse_space("lq:q=inf,m=3");
    CHECK(std::isinf(b.exponent()));

    const Space c = parse_space("euclid:m=4");
    CHECK(c.kind() == Space::Kind::Euclidean);
    CHECK(c.dim() == 4);

    const Space d = parse_space("power:p=0.5,n=3(euclid:m=2)");
    CHECK(d.kind() == Space::Kind::LpPower);
    CHECK(d.exponent() == 0.5);
    CHECK(d.copies() == 3);
    CHECK(d.dim() == 6);
    CHECK(d.inner().kind() == Space::Kind::Euclidean);

    const Space e = parse_space("dsum(lq:q=1,m=2;power:p=2,n=3(euclid:m=2))");
    CHECK(e.kind() == Space::Kind::DirectSumL1);
    CHECK(e.dim() == 8);
    CHECK(e.left().kind() == Space::Kind::LqBall);
    CHECK(e.right().kind() == Space::Kind::LpPower);

    // describe() emits the same grammar; parsing it back is stable.
    for (const Space& X : {a, b, c, d, e}) {
        CHECK(parse_space(X.describe()).describe() == X.describe());
    }

    // Nested direct sums associate explicitly.
    const Space f = parse_space("dsum(dsum(euclid:m=1;euclid:m=1);lq:q=inf,m=2)");
    CHECK(f.dim() == 4);
    CHECK(f.left().kind() == Space::Kind::DirectSumL1);
}

TEST_CASE("measure specs load from files", "[parse]") {
    const std::string path = "/tmp/lpsect_test_parse_measure.txt";
    {
        std::FILE* f = std::fopen(path.c_str(), "w");
        REQUIRE(f != nullptr);
        std::fputs("1.0 1 0\n1.0 0 1\n", f);
        std::fclose(f);
    }
    const Space X = parse_space("measure:" + path + ",p=1.5");
    CHECK(X.kind() == Space::Kind::LpDiscrete);
    CHECK(X.exponent() == 1.5);
    CHECK(X.dim() == 2);
    CHECK(X.measure().atoms().size() == 2);

    CHECK_THROWS_AS(parse_space("measure:" + path), std::invalid_argument);
    CHECK_THROWS_AS(parse_space("measure:,p=1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_space("measure:/nonexistent/mu.txt,p=1"), std::runtime_error);
    std::remove(path.c_str());
}

TEST_CASE("space grammar rejections", "[parse]") {
    CHECK_THROWS_AS(parse_space(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_space("ball:q=1,m=2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_space("lq:q=zero,m=2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_space("lq:q=0,m=2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_space("lq:q=-1,m=2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_space("lq:q=1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_space("lq:m=2,q=1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_space("lq:q=1,m=2.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_space("lq:q=1,m=0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_space("euclid:m=inf"), std::invalid_argument);
    CHECK_THROWS_AS(parse_space("euclid:n=3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_space("dsum(euclid:m=1)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_space("dsum(euclid:m=1;euclid:m=1;euclid:m=1)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_space("dsum(euclid:m=1;euclid:m=1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_space("dsum(euclid:m=1;euclid:m=1))"), std::invalid_argument);
    CHECK_THROWS_AS(parse_space("power:p=1,n=2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_space("power:p=1(euclid:m=1)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_space("power:n=2,p=1(euclid:m=1)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_space("power:p=1,n=2(euclid:m=1"), std::invalid_argument);
    // p = inf is allowed for powers but not for measure norms.
    CHECK_NOTHROW(parse_space("power:p=inf,n=2(euclid:m=1)"));
}

TEST_CASE("theta parsing", "[parse]") {
    const Vec d = parse_theta("diag", 4);
    REQUIRE(d.size() == 4);
    CHECK(d[0] == Catch::Approx(0.5));

    const Vec e = parse_theta("e1", 3);
    CHECK(e[0] == 1.0);
    CHECK(e[1] == 0.0);

    const Vec v = parse_theta("0.6,0.8", 2);
    CHECK(v[0] == 0.6);
    CHECK(v[1] == 0.8);
    const Vec w = parse_theta("0.6,-0.8", 2);
    CHECK(w[1] == -0.8);

    // Lists must be unit already; nothing is renormalized.
    CHECK_THROWS_AS(parse_theta("1,1", 2), std::invalid_argument);
    CHECK_THROWS_AS(parse_theta("0.6,0.8", 3), std::invalid_argument);
    CHECK_THROWS_AS(parse_theta("0.6,0.8,junk", 3), std::invalid_argument);
    CHECK_THROWS_AS(parse_theta("", 1), std::invalid_argument);
    CHECK_THROWS_AS(parse_theta("diag", 0), std::invalid_argument);
}

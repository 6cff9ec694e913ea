#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <pseries/parser.hpp>

#include "oracle/truncated_series.hpp"
#include "support/random_poly.hpp"

using namespace pseries;
using namespace pseries::oracle;
using testsupport::random_poly;
using testsupport::random_unit_poly;

namespace {
VarSet XY() { return VarSet({"x", "y"}); }
}

TEST_CASE("t_add / t_mul / t_neg basics") {
    VarSet v = XY();
    MultiPoly onex = parse_poly("1+x", v);
    TruncatedSeries a = t_make(onex, 1);
    CHECK(t_mul(a, a).poly == parse_poly("1+2*x", v));
    TruncatedSeries p = t_make(parse_poly("x^2-y", v), 4);
    CHECK(t_add(p, t_make(MultiPoly::zero(v), 4)).poly == p.poly);
    CHECK(t_neg(p).poly == -p.poly);
    CHECK_THROWS_AS(t_add(a, p), CapMismatch);
}

TEST_CASE("t_mul matches poly_mul then filter") {
    std::mt19937 rng(555);
    VarSet v = XY();
    for (int i = 0; i < 40; ++i) {
        MultiPoly a = random_poly(rng, v, 3), b = random_poly(rng, v, 3);
        unsigned cap = 8;  // >= sum of degrees: truncation is a no-op
        CHECK(t_mul(t_make(a, cap), t_make(b, cap)).poly == a * b);
    }
}

TEST_CASE("t_inverse") {
    VarSet v = XY();
    SUBCASE("geometric") {
        TruncatedSeries a = t_make(parse_poly("1-x-y", v), 3);
        MultiPoly u = parse_poly("x+y", v);
        MultiPoly expect = MultiPoly::one(v) + u + u.pow(2) + u.pow(3);
        CHECK(t_inverse(a).poly == drop_above(expect, 3));
    }
    SUBCASE("constant") {
        TruncatedSeries a = t_make(MultiPoly::constant(v, 2), 5);
        CHECK(t_inverse(a).poly == MultiPoly::constant(v, rational(1, 2)));
    }
    SUBCASE("not invertible") {
        CHECK_THROWS_AS(t_inverse(t_make(parse_poly("x", v), 5)), NotInvertible);
    }
    SUBCASE("defining identity on random units") {
        std::mt19937 rng(808);
        for (int i = 0; i < 50; ++i) {
            TruncatedSeries a = t_make(random_unit_poly(rng, v, 4), 10);
            CHECK(t_mul(a, t_inverse(a)).poly == MultiPoly::one(v));
        }
    }
}

TEST_CASE("t_div") {
    VarSet v = XY();
    std::mt19937 rng(909);
    TruncatedSeries f = t_make(random_unit_poly(rng, v, 3), 8);
    CHECK(t_div(f, f).poly == MultiPoly::one(v));
    TruncatedSeries geo = t_div(t_make(MultiPoly::one(v), 6), t_make(parse_poly("1-x-y", v), 6));
    MultiPoly u = parse_poly("x+y", v);
    MultiPoly expect(v);
    for (unsigned d = 0; d <= 6; ++d) expect = expect + u.pow(d);
    CHECK(geo.poly == expect);
    for (int i = 0; i < 40; ++i) {
        TruncatedSeries a = t_make(random_unit_poly(rng, v, 4), 9);
        TruncatedSeries b = t_make(random_unit_poly(rng, v, 4), 9);
        CHECK(t_mul(t_div(a, b), b).poly == a.poly);
    }
}

TEST_CASE("oracle header is independent of the lazy engine") {
    std::ifstream in(ORACLE_HEADER_PATH);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    std::string src = buf.str();
    CHECK(src.find("series.hpp") == std::string::npos);
    CHECK(src.find("upops.hpp") == std::string::npos);
}

#include <doctest.h>

#include <stdexcept>

#include "frbc/real.hpp"
#include "test_util.hpp"

using namespace frbc;
using test::agrees_to_digits;

TEST_SUITE_BEGIN("real");

TEST_CASE("context rejects fewer than 30 digits") {
    CHECK_THROWS_AS(PrecisionContext(29), std::invalid_argument);
    CHECK_NOTHROW(PrecisionContext(30));
}

TEST_CASE("for_output_digits doubles the request with headroom, floor 50") {
    CHECK(PrecisionContext::for_output_digits(10).digits() == 50);
    CHECK(PrecisionContext::for_output_digits(20).digits() == 60);
    CHECK(PrecisionContext::for_output_digits(30).digits() == 80);
}

TEST_CASE("decimal serialization format") {
    const PrecisionContext ctx(50);
    CHECK(ctx.str(ctx.real(0)) == "0");
    CHECK(ctx.str(ctx.real(3)) == "3");
    CHECK(ctx.str(ctx.real(-3)) == "-3");
    CHECK(ctx.str(ctx.real(1) / 2) == "0.5");
    CHECK(ctx.str(ctx.real(1) / 4) == "0.25");
    CHECK(ctx.str(ctx.real(1000000)) == "1000000");
    CHECK(ctx.str(ctx.real("0.000001")) == "0.000001");      // 1e-6: still plain
    CHECK(ctx.str(ctx.real("0.0000001")) == "1e-7");         // below 1e-6: scientific
    CHECK(ctx.str(ctx.pow10(9)) == "1000000000");            // 1e9: still plain
    CHECK(ctx.str(2 * ctx.pow10(9)) == "2e9");
    CHECK(ctx.str(ctx.pow10(10)) == "1e10");
    CHECK(ctx.str(ctx.real("1.4245e-10")) == "1.4245e-10");
    CHECK(ctx.str(ctx.real("-12.75")) == "-12.75");
}

TEST_CASE("serialization round trip is idempotent at context precision") {
    const PrecisionContext ctx(50);
    for (const char* s :
         {"0.1", "-1.5880710226113753127186845094", "3", "0.000001", "123456.789",
          "9.999999e-12", "1e9", "0.024314292988680864190110388176"}) {
        const Real x = ctx.real(s);
        const std::string once = ctx.str(x);
        const std::string twice = ctx.str(ctx.real(once));
        CHECK(once == twice);
    }
}

TEST_CASE("exact decimal round trip preserves bits") {
    const PrecisionContext ctx(50);
    const Real x = sqrt(ctx.real(2)) / 3 + cos(ctx.real(5));
    const Real back = ctx.real(x.to_decimal_exact());
    CHECK(identical(x, back));
}

TEST_CASE("parse rejects malformed strings") {
    const PrecisionContext ctx(50);
    CHECK_THROWS_AS(ctx.real(""), std::invalid_argument);
    CHECK_THROWS_AS(ctx.real("abc"), std::invalid_argument);
    CHECK_THROWS_AS(ctx.real("1.2.3"), std::invalid_argument);
    CHECK_THROWS_AS(ctx.real("1.5x"), std::invalid_argument);
}

TEST_CASE("arithmetic basics") {
    const PrecisionContext ctx(50);
    CHECK(ctx.real(2) + ctx.real(3) == ctx.real(5));
    CHECK(sqrt(ctx.real(4)) == ctx.real(2));
    CHECK(abs(ctx.real(-7)) == ctx.real(7));
    CHECK(agrees_to_digits(pow(ctx.real(8), ctx.real(1) / 3), ctx.real(2), 48));
    CHECK(agrees_to_digits(cos(ctx.pi() / 3), ctx.real(1) / 2, 48));
    CHECK(agrees_to_digits(
        ctx.pi(), ctx.real("3.14159265358979323846264338327950288419716939937510582"), 50));
    // fused ops: exact on exactly representable operands
    Real acc = ctx.real(1);
    acc.add_mul(ctx.real(2), ctx.real(3));
    CHECK(acc == ctx.real(7));
    acc.sub_mul(ctx.real(2), ctx.real(2));
    CHECK(acc == ctx.real(3));
}

TEST_CASE("equal-digit contexts are bitwise deterministic") {
    const PrecisionContext a(50), b(50);
    const Real ra = sqrt(a.real(2)) * a.pi() + cos(a.real(3)) / 7;
    const Real rb = sqrt(b.real(2)) * b.pi() + cos(b.real(3)) / 7;
    CHECK(identical(ra, rb));
    CHECK(a.str(ra) == b.str(rb));
}

TEST_CASE("higher precision agrees on leading digits") {
    const PrecisionContext lo(50), hi(80);
    const Real a = sqrt(lo.real(7)) / lo.pi() + pow(lo.real(3), lo.real(1) / 3);
    const Real b = sqrt(hi.real(7)) / hi.pi() + pow(hi.real(3), hi.real(1) / 3);
    CHECK(agrees_to_digits(a, Real(b), 50 - 12));
}

TEST_SUITE_END();

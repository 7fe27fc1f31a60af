#include <doctest.h>

#include "frbc/basis.hpp"
#include "test_util.hpp"

using namespace frbc;
using test::agrees_to_digits;

namespace {

FrbBasis half_basis(int n, const PrecisionContext& ctx) {
    return FrbBasis(n, ctx.real(1) / 2, ctx.real(1), ctx);
}

} // namespace

TEST_SUITE_BEGIN("basis");

TEST_CASE("constructor validates the triple") {
    const PrecisionContext ctx(50);
    CHECK_THROWS_AS(FrbBasis(-1, ctx.real(1), ctx.real(1), ctx), std::invalid_argument);
    CHECK_THROWS_AS(FrbBasis(3, ctx.real(0), ctx.real(1), ctx), std::invalid_argument);
    CHECK_THROWS_AS(FrbBasis(3, ctx.real(1), ctx.real(-2), ctx), std::invalid_argument);
    CHECK(half_basis(4, ctx).size() == 5);
}

TEST_CASE("bessel_poly values from the finite sum") {
    const PrecisionContext ctx(50);
    CHECK(bessel_poly(0, 7, ctx.real(0), ctx) == ctx.real(1));
    CHECK(bessel_poly(3, 9, ctx.real(0), ctx) == ctx.real(0));
    CHECK(bessel_poly(1, 2, ctx.real(1), ctx) == ctx.real(1) / 2);
    CHECK(bessel_poly(0, 4, ctx.real(1), ctx) == ctx.real("0.765625")); // 1 - 1/4 + 1/64
    CHECK(bessel_poly(5, 4, ctx.real(1), ctx) == ctx.real(0));          // n > N: empty sum
}

TEST_CASE("bessel_poly_deriv values and finite-difference oracle") {
    const PrecisionContext ctx(50);
    CHECK(bessel_poly_deriv(0, 4, ctx.real(0), 1, ctx) == ctx.real(0)); // even series
    CHECK(bessel_poly_deriv(1, 2, ctx.real(0), 1, ctx) == ctx.real(1) / 2);
    // dyadic case is exact: B_0 = 1 - (t/2)^2 + (t/2)^4/4 at t = 0.3
    CHECK(agrees_to_digits(bessel_poly(0, 4, ctx.real("0.3"), ctx), ctx.real("0.9776265625"), 49));
    CHECK(agrees_to_digits(bessel_poly_deriv(0, 4, ctx.real("0.3"), 1, ctx),
                           ctx.real("-0.1483125"), 49));

    const Real t = ctx.real("0.3");
    const Real h = ctx.pow10(-(ctx.digits() / 2));
    for (int n : {0, 1, 2, 5}) {
        const Real fd = (bessel_poly(n, 8, t + h, ctx) - bessel_poly(n, 8, t - h, ctx)) / (2 * h);
        CHECK(agrees_to_digits(bessel_poly_deriv(n, 8, t, 1, ctx), fd, ctx.digits() / 2 - 4));
        const Real fd2 = (bessel_poly_deriv(n, 8, t + h, 1, ctx) -
                          bessel_poly_deriv(n, 8, t - h, 1, ctx)) / (2 * h);
        CHECK(agrees_to_digits(bessel_poly_deriv(n, 8, t, 2, ctx), fd2, ctx.digits() / 2 - 4));
    }
}

TEST_CASE("truncation enters only through the upper bound") {
    const PrecisionContext ctx(50);
    const Real t = ctx.real("0.63");
    for (int n : {0, 1, 4}) {
        const int N = 9;
        const Real lo = bessel_poly(n, N, t, ctx);
        const Real hi = bessel_poly(n, N + 2, t, ctx);
        // exactly one extra term: r = floor((N-n)/2)+1
        const int r = (N - n) / 2 + 1;
        Real term = ctx.real(1);
        for (int i = 1; i <= r; ++i) term /= i;          // 1/r!
        for (int i = 1; i <= n + r; ++i) term /= i;      // 1/(n+r)!
        term *= pow(t / 2, static_cast<long>(2 * r + n));
        if (r % 2 == 1) term = -term;
        CHECK(agrees_to_digits(hi - lo, term, ctx.digits() - 8));
    }
}

TEST_CASE("table agrees with the direct sum") {
    const PrecisionContext ctx(50);
    const FrbBasis basis = half_basis(17, ctx);
    for (int n : {0, 1, 8, 17}) {
        for (const char* ts : {"0", "0.1", "0.5", "0.999"}) {
            const Real t = ctx.real(ts);
            CHECK(agrees_to_digits(basis.table().value(n, t), bessel_poly(n, 17, t, ctx),
                                   ctx.digits() - 6));
            CHECK(agrees_to_digits(basis.table().d1(n, t), bessel_poly_deriv(n, 17, t, 1, ctx),
                                   ctx.digits() - 6));
        }
    }
    CHECK(basis.table().value_at_zero(0) == ctx.real(1));
    CHECK(basis.table().value_at_zero(5) == ctx.real(0));
}

TEST_CASE("map_point closed forms") {
    const PrecisionContext ctx(50);
    const FrbBasis basis = half_basis(4, ctx);

    const MapPoint origin = map_point(ctx.real(0), basis, ctx);
    CHECK(origin.t == ctx.real(0));
    CHECK(origin.singular_derivative);
    CHECK(origin.dt_dx.is_inf());

    const MapPoint one = map_point(ctx.real(1), basis, ctx);
    CHECK(one.t == ctx.real(1) / 2);
    CHECK(one.dt_dx == ctx.real(1) / 8);

    const MapPoint far = map_point(ctx.pow10(9), basis, ctx);
    CHECK(abs(far.t - 1) < ctx.pow10(-4));
    CHECK(far.t < ctx.real(1));

    // alpha = 1 stays regular at the origin
    const FrbBasis linear(4, ctx.real(1), ctx.real(2), ctx);
    const MapPoint o2 = map_point(ctx.real(0), linear, ctx);
    CHECK_FALSE(o2.singular_derivative);
    CHECK(o2.dt_dx == ctx.real(1) / 2);
    CHECK(o2.d2t_dx2 == ctx.real(-1) / 2);
}

TEST_CASE("map derivative matches finite differences") {
    const PrecisionContext ctx(50);
    const FrbBasis basis = half_basis(4, ctx);
    const Real h = ctx.pow10(-(ctx.digits() / 2));
    for (const char* xs : {"0.001", "0.7", "13", "491"}) {
        const Real x = ctx.real(xs);
        const Real tp = (map_point(x + h, basis, ctx).t - map_point(x - h, basis, ctx).t) / (2 * h);
        CHECK(agrees_to_digits(map_point(x, basis, ctx).dt_dx, tp, ctx.digits() / 2 - 6));
        const Real tpp = (map_point(x + h, basis, ctx).dt_dx -
                          map_point(x - h, basis, ctx).dt_dx) / (2 * h);
        CHECK(agrees_to_digits(map_point(x, basis, ctx).d2t_dx2, tpp, ctx.digits() / 2 - 6));
    }
}

TEST_CASE("frb_eval values and chain rule") {
    const PrecisionContext ctx(50);
    const FrbBasis basis = half_basis(4, ctx);
    CHECK(frb_eval(0, ctx.real(0), basis, 0, ctx) == ctx.real(1));
    CHECK(frb_eval(1, ctx.real(0), basis, 0, ctx) == ctx.real(0));
    CHECK(frb_eval(3, ctx.real(0), basis, 0, ctx) == ctx.real(0));
    // t(1) = 1/2 and all ingredients are dyadic: value is exactly 0.9384765625
    CHECK(frb_eval(0, ctx.real(1), basis, 0, ctx) == ctx.real("0.9384765625"));

    CHECK_THROWS_AS(frb_eval(1, ctx.real(0), basis, 1, ctx), DomainError);

    const FrbBasis b10 = half_basis(10, ctx);
    const Real h = ctx.pow10(-(ctx.digits() / 2));
    // log-spaced probes across [1e-3, 1e3]
    for (const char* xs : {"0.001", "0.02", "0.4", "3.7", "80", "1000"}) {
        const Real x = ctx.real(xs);
        for (int n : {0, 2, 7}) {
            const Real fd1 = (frb_eval(n, x + h, b10, 0, ctx) - frb_eval(n, x - h, b10, 0, ctx)) / (2 * h);
            CHECK(agrees_to_digits(frb_eval(n, x, b10, 1, ctx), fd1, ctx.digits() / 2 - 6));
            const Real fd2 = (frb_eval(n, x + h, b10, 1, ctx) - frb_eval(n, x - h, b10, 1, ctx)) / (2 * h);
            CHECK(agrees_to_digits(frb_eval(n, x, b10, 2, ctx), fd2, ctx.digits() / 2 - 6));
        }
    }
}

TEST_CASE("frb values stay inside the coefficient-sum bound") {
    const PrecisionContext ctx(50);
    const int N = 12;
    const FrbBasis basis = half_basis(N, ctx);
    test::RandomReals rnd(321);
    for (int n = 0; n <= N; ++n) {
        // sum_r 1/(r!(n+r)!) (1/2)^(2r+n): the |t| <= 1 envelope of the sum
        Real bound = ctx.real(0);
        for (int r = 0; r <= (N - n) / 2; ++r) {
            Real term = pow(ctx.real(1) / 2, static_cast<long>(2 * r + n));
            for (int i = 1; i <= r; ++i) term /= i;
            for (int i = 1; i <= n + r; ++i) term /= i;
            bound += term;
        }
        for (int k = 0; k < 8; ++k) {
            const Real x = abs(rnd.next(ctx)) * 500;
            CHECK(abs(frb_eval(n, x, basis, 0, ctx)) <= bound);
        }
    }
}

TEST_SUITE_END();

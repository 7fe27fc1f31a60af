#include <doctest.h>

#include "frbc/qlm.hpp"
#include "frbc/thomas_fermi.hpp"
#include "test_util.hpp"

using namespace frbc;
using test::agrees_to_digits;

namespace {

TfAnsatz half_ansatz(int n, const PrecisionContext& ctx) {
    return TfAnsatz(FrbBasis(n, ctx.real(1) / 2, ctx.real(1), ctx), ctx);
}

// Problem whose linearized coefficient blows up past a threshold.
class PoisonedProblem : public QlmProblem {
public:
    explicit PoisonedProblem(const PrecisionContext& ctx) : ctx_(ctx) {}
    Real initial_iterate(const Real&) const override { return ctx_.real(1); }
    LinearizedBvp linearize(std::function<Real(const Real&)>) const override {
        LinearizedBvp lin;
        lin.q = [ctx = ctx_](const Real& x) {
            return x > ctx.real(2) ? ctx.real(1) / ctx.real(0) : ctx.real(-1);
        };
        lin.f = [ctx = ctx_](const Real&) { return ctx.real(0); };
        return lin;
    }
private:
    PrecisionContext ctx_;
};

} // namespace

TEST_SUITE_BEGIN("qlm");

TEST_CASE("assembly with a zeroed operator reduces to the second derivative") {
    const PrecisionContext ctx(50);
    const int n = 6;
    const TfAnsatz ansatz = half_ansatz(n, ctx);
    const CollocationGrid grid = build_grid(n, ctx);
    LinearizedBvp lin;
    lin.q = [&](const Real&) { return ctx.real(0); };
    lin.f = [&](const Real&) { return ctx.real(0); };
    const DenseSystem sys = assemble_system(lin, ansatz, grid, ctx);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        // rhs: -(d2/dx2) of the inhomogeneous part 1/(x^2+1)
        const Real& x = grid[i];
        const Real d = x * x + 1;
        CHECK(agrees_to_digits(sys.b[i], -(6 * x * x - 2) / (d * d * d), ctx.digits() - 4));
        for (std::size_t m = 0; m < sys.a.cols(); ++m) {
            CHECK(identical(sys.a(i, m), ansatz.term(m, x, 2)));
        }
    }
}

TEST_CASE("first Thomas-Fermi iterate coefficients at sample points") {
    const PrecisionContext ctx(50);
    const TfProblem problem(ctx);
    const LinearizedBvp lin =
        problem.linearize([&](const Real&) { return ctx.real(1); });
    CHECK_FALSE(static_cast<bool>(lin.p));
    CHECK(lin.q(ctx.real(4)) == ctx.real(-3) / 4);  // -3/(2 sqrt(4))
    CHECK(lin.f(ctx.real(4)) == ctx.real(-1) / 4);
    CHECK(lin.q(ctx.real(1)) == ctx.real(-3) / 2);
    CHECK(lin.f(ctx.real(1)) == ctx.real(-1) / 2);
}

TEST_CASE("iteration count is honored and boundary values are embedded") {
    const PrecisionContext ctx(50);
    const int n = 20;
    const TfAnsatz ansatz = half_ansatz(n, ctx);
    const CollocationGrid grid = build_grid(n, ctx);
    const TfProblem problem(ctx);
    const QlmResult r = qlm_iterate(problem, ansatz, grid, ctx, 1);
    REQUIRE(r.trace.records.size() == 1);
    const SpectralSolution sol(half_ansatz(n, ctx), r.coeffs, 1, ctx);
    CHECK(sol.eval(ctx.real(0), 0) == ctx.real(1));
    // far field is suppressed by the x/(x^2+1) envelope relative to the
    // (still large) first-iterate coefficients
    const Real scale = 1 + inf_norm(r.coeffs);
    CHECK(abs(sol.eval(ctx.pow10(9), 0)) < scale * ctx.pow10(-8));
    CHECK_THROWS_AS(qlm_iterate(problem, ansatz, grid, ctx, 0), std::invalid_argument);
}

TEST_CASE("node residuals vanish at working precision in every iteration") {
    const PrecisionContext ctx(50);
    const int n = 24;
    const TfAnsatz ansatz = half_ansatz(n, ctx);
    const CollocationGrid grid = build_grid(n, ctx);
    const QlmResult r = qlm_iterate(TfProblem(ctx), ansatz, grid, ctx, 12);
    REQUIRE(r.trace.records.size() == 12);
    const Real bound = ctx.pow10(-(ctx.digits() - 15));
    for (const auto& rec : r.trace.records) {
        CHECK(rec.max_node_residual < bound);
    }
}

TEST_CASE("update decay: monotone inside the basin, down to the floor") {
    const PrecisionContext ctx(50);
    const int n = 30;
    const TfAnsatz ansatz = half_ansatz(n, ctx);
    const CollocationGrid grid = build_grid(n, ctx);
    const QlmResult r = qlm_iterate(TfProblem(ctx), ansatz, grid, ctx, 45);
    const Real basin = ctx.pow10(-3);
    const Real floor = ctx.pow10(-(ctx.digits() / 2));
    bool entered = false;
    for (std::size_t i = 0; i + 1 < r.trace.records.size(); ++i) {
        const Real& cur = r.trace.records[i].delta_sup;
        const Real& nxt = r.trace.records[i + 1].delta_sup;
        if (!entered && cur < basin) entered = true;
        if (entered && cur > floor && nxt > floor) {
            CHECK(nxt < cur);
        }
    }
    CHECK(entered);
    // stagnation floor after 45 iterations
    CHECK(r.trace.records.back().delta_sup < ctx.pow10(-25));
}

TEST_CASE("non-finite linearized coefficients are reported with location") {
    const PrecisionContext ctx(50);
    const int n = 8;
    const TfAnsatz ansatz = half_ansatz(n, ctx);
    const CollocationGrid grid = build_grid(n, ctx);
    const PoisonedProblem problem(ctx);
    CHECK_THROWS_AS(qlm_iterate(problem, ansatz, grid, ctx, 2), NonFiniteCoefficient);
    try {
        qlm_iterate(problem, ansatz, grid, ctx, 2);
    } catch (const NonFiniteCoefficient& e) {
        CHECK(e.iteration() == 1);
        CHECK(grid[e.grid_index()] > ctx.real(2));
    }
}

TEST_CASE("serial and parallel pipelines are bitwise identical") {
    const PrecisionContext ctx(50);
    const int n = 12;
    const TfAnsatz ansatz = half_ansatz(n, ctx);
    const CollocationGrid grid = build_grid(n, ctx);
    const QlmResult a = qlm_iterate(TfProblem(ctx), ansatz, grid, ctx, 4, Exec::serial);
    const QlmResult b = qlm_iterate(TfProblem(ctx), ansatz, grid, ctx, 4, Exec::parallel);
    REQUIRE(a.coeffs.size() == b.coeffs.size());
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        CHECK(identical(a.coeffs[i], b.coeffs[i]));
    }
    for (std::size_t i = 0; i < a.trace.records.size(); ++i) {
        CHECK(identical(a.trace.records[i].delta_sup, b.trace.records[i].delta_sup));
        CHECK(identical(a.trace.records[i].max_node_residual,
                        b.trace.records[i].max_node_residual));
    }
}

TEST_SUITE_END();

#include "frbc/qlm.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace frbc {

namespace {

// Evaluable previous iterate.  Assembly only ever asks for grid abscissas,
// which are answered from the tabulated values; any other x falls back to
// the full ansatz expansion (identical formula, just slower).
class GridSampledIterate {
public:
    GridSampledIterate(const Ansatz& ansatz, const CollocationGrid& grid,
                       std::vector<Real> grid_values, std::vector<Real> coeffs)
        : ansatz_(&ansatz), grid_(&grid), values_(std::move(grid_values)),
          coeffs_(std::move(coeffs)) {}

    Real operator()(const Real& x) const {
        const auto& pts = grid_->points();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (mpfr_equal_p(x.mp(), pts[i].mp())) return values_[i];
        }
        Real y = ansatz_->inhomogeneous(x, 0);
        for (std::size_t n = 0; n < coeffs_.size(); ++n) {
            y += coeffs_[n] * ansatz_->term(n, x, 0);
        }
        return y;
    }

private:
    const Ansatz* ansatz_;
    const CollocationGrid* grid_;
    std::vector<Real> values_;
    std::vector<Real> coeffs_;
};

template <typename Fn>
void for_each_row(std::size_t rows, Exec exec, Fn&& fn) {
    if (exec == Exec::parallel) {
        const long n = static_cast<long>(rows);
#pragma omp parallel for schedule(static)
        for (long i = 0; i < n; ++i) {
            fn(static_cast<std::size_t>(i));
        }
    } else {
        for (std::size_t i = 0; i < rows; ++i) {
            fn(i);
        }
    }
}

// Evaluates one linearized coefficient function over the grid.  Non-finite
// values are recorded and reported after the parallel region (exceptions
// must not cross it).
std::vector<Real> eval_on_grid(const std::function<Real(const Real&)>& fn,
                               const CollocationGrid& grid, const PrecisionContext& ctx,
                               Exec exec, int iteration, const char* what) {
    const std::size_t m = grid.size();
    std::vector<Real> out(m, ctx.real(0));
    for_each_row(m, exec, [&](std::size_t i) { out[i] = fn(grid[i]); });
    for (std::size_t i = 0; i < m; ++i) {
        if (!out[i].is_finite()) {
            throw NonFiniteCoefficient(i, iteration,
                                       std::string(what) + "(x) = " + out[i].to_decimal(8) +
                                           " at x = " + ctx.str(grid[i]));
        }
    }
    return out;
}

} // namespace

AnsatzCache AnsatzCache::build(const Ansatz& ansatz, const CollocationGrid& grid,
                               const PrecisionContext& ctx, Exec exec,
                               bool with_first_order) {
    const std::size_t m = grid.size();
    const std::size_t terms = ansatz.terms();
    AnsatzCache cache;
    cache.phi0 = RealMatrix(m, terms, ctx);
    cache.phi2 = RealMatrix(m, terms, ctx);
    cache.g0.assign(m, ctx.real(0));
    cache.g0d2.assign(m, ctx.real(0));
    cache.has_first_order = with_first_order;
    if (with_first_order) {
        cache.phi1 = RealMatrix(m, terms, ctx);
        cache.g0d1.assign(m, ctx.real(0));
    }
    for_each_row(m, exec, [&](std::size_t i) {
        const Real& x = grid[i];
        cache.g0[i] = ansatz.inhomogeneous(x, 0);
        cache.g0d2[i] = ansatz.inhomogeneous(x, 2);
        if (with_first_order) cache.g0d1[i] = ansatz.inhomogeneous(x, 1);
        for (std::size_t n = 0; n < terms; ++n) {
            cache.phi0(i, n) = ansatz.term(n, x, 0);
            cache.phi2(i, n) = ansatz.term(n, x, 2);
            if (with_first_order) cache.phi1(i, n) = ansatz.term(n, x, 1);
        }
    });
    return cache;
}

DenseSystem assemble_system(const LinearizedBvp& lin, const AnsatzCache& cache,
                            const CollocationGrid& grid, const PrecisionContext& ctx,
                            Exec exec) {
    const std::size_t m = grid.size();
    if (static_cast<bool>(lin.p) && !cache.has_first_order) {
        throw std::invalid_argument("assemble_system: cache lacks first-order terms");
    }
    std::vector<Real> qv = eval_on_grid(lin.q, grid, ctx, exec, 0, "q");
    std::vector<Real> fv = eval_on_grid(lin.f, grid, ctx, exec, 0, "f");
    std::vector<Real> pv;
    if (lin.p) pv = eval_on_grid(lin.p, grid, ctx, exec, 0, "p");

    DenseSystem sys;
    sys.a = RealMatrix(m, cache.phi0.cols(), ctx);
    sys.b.assign(m, ctx.real(0));
    for_each_row(m, exec, [&](std::size_t i) {
        for (std::size_t n = 0; n < cache.phi0.cols(); ++n) {
            Real entry = cache.phi2(i, n);
            if (!pv.empty()) entry.add_mul(pv[i], cache.phi1(i, n));
            entry.add_mul(qv[i], cache.phi0(i, n));
            sys.a(i, n) = std::move(entry);
        }
        Real rhs = fv[i] - cache.g0d2[i];
        if (!pv.empty()) rhs.sub_mul(pv[i], cache.g0d1[i]);
        rhs.sub_mul(qv[i], cache.g0[i]);
        sys.b[i] = std::move(rhs);
    });
    return sys;
}

DenseSystem assemble_system(const LinearizedBvp& lin, const Ansatz& ansatz,
                            const CollocationGrid& grid, const PrecisionContext& ctx,
                            Exec exec) {
    if (grid.size() != ansatz.terms()) {
        throw std::invalid_argument("assemble_system: grid size must equal basis size");
    }
    const AnsatzCache cache =
        AnsatzCache::build(ansatz, grid, ctx, exec, static_cast<bool>(lin.p));
    return assemble_system(lin, cache, grid, ctx, exec);
}

QlmResult qlm_iterate(const QlmProblem& problem, const Ansatz& ansatz,
                      const CollocationGrid& grid, const PrecisionContext& ctx,
                      int iterations, Exec exec) {
    if (iterations < 1) throw std::invalid_argument("qlm_iterate: iterations must be >= 1");
    if (grid.size() != ansatz.terms()) {
        throw std::invalid_argument("qlm_iterate: grid size must equal basis size");
    }
    const std::size_t m = grid.size();

    // The operator rows never change across iterations; probe the first
    // linearization for a u' coefficient to size the cache.
    const bool with_first_order = static_cast<bool>(
        problem.linearize([&](const Real& x) { return problem.initial_iterate(x); }).p);
    const AnsatzCache cache = AnsatzCache::build(ansatz, grid, ctx, exec, with_first_order);

    std::vector<Real> y_prev(m, ctx.real(0));
    for_each_row(m, exec, [&](std::size_t i) { y_prev[i] = problem.initial_iterate(grid[i]); });
    std::vector<Real> coeffs;

    QlmResult result;
    result.trace.records.reserve(static_cast<std::size_t>(iterations));
    long clamps_before = problem.clamp_events();

    for (int r = 1; r <= iterations; ++r) {
        std::function<Real(const Real&)> y_fn;
        if (r == 1) {
            y_fn = [&problem](const Real& x) { return problem.initial_iterate(x); };
        } else {
            y_fn = GridSampledIterate(ansatz, grid, y_prev, coeffs);
        }
        LinearizedBvp lin = problem.linearize(std::move(y_fn));
        DenseSystem sys;
        try {
            sys = assemble_system(lin, cache, grid, ctx, exec);
        } catch (const NonFiniteCoefficient& e) {
            throw NonFiniteCoefficient(e.grid_index(), r, e.detail());
        }
        coeffs = lu_solve(sys, ctx, exec);

        IterationRecord rec{r, coeffs, ctx.real(0), ctx.real(0), ctx.real(0), 0};
        rec.max_node_residual = inf_norm(system_residual(sys, coeffs));

        std::vector<Real> y_new(m, ctx.real(0));
        for_each_row(m, exec, [&](std::size_t i) {
            Real y = cache.g0[i];
            for (std::size_t n = 0; n < m; ++n) y.add_mul(coeffs[n], cache.phi0(i, n));
            y_new[i] = std::move(y);
        });
        Real delta = abs(y_new[0] - y_prev[0]);
        for (std::size_t i = 1; i < m; ++i) {
            Real d = abs(y_new[i] - y_prev[i]);
            if (d > delta) delta = std::move(d);
        }
        rec.delta_sup = std::move(delta);
        rec.slope_at_origin = ansatz.derivative_at_origin(coeffs);
        const long clamps_now = problem.clamp_events();
        rec.clamp_events = clamps_now - clamps_before;
        clamps_before = clamps_now;

        result.trace.records.push_back(std::move(rec));
        y_prev = std::move(y_new);
    }
    result.coeffs = std::move(coeffs);
    return result;
}

} // namespace frbc

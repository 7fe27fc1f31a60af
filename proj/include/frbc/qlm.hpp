#ifndef FRBC_QLM_HPP
#define FRBC_QLM_HPP

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "frbc/grid.hpp"
#include "frbc/linalg.hpp"
#include "frbc/real.hpp"

namespace frbc {

/// One quasilinearization iterate as a linear second-order ODE
/// u'' + p u' + q u = f.  An empty p means p == 0.
struct LinearizedBvp {
    std::function<Real(const Real&)> p;
    std::function<Real(const Real&)> q;
    std::function<Real(const Real&)> f;
};

/// Trial solution whose structure satisfies both boundary conditions for
/// every coefficient vector: u(x) = inhomogeneous(x) + sum c_n term_n(x).
class Ansatz {
public:
    virtual ~Ansatz() = default;
    virtual std::size_t terms() const = 0;
    virtual Real term(std::size_t n, const Real& x, int order) const = 0;
    virtual Real inhomogeneous(const Real& x, int order) const = 0;
    /// One-sided u'(0) for a given coefficient vector.
    virtual Real derivative_at_origin(std::span<const Real> coeffs) const = 0;
};

/// Nonlinear BVP descriptor: supplies the initial iterate and the
/// linearization hook around a given iterate.
class QlmProblem {
public:
    virtual ~QlmProblem() = default;
    virtual Real initial_iterate(const Real& x) const = 0;
    virtual LinearizedBvp linearize(std::function<Real(const Real&)> y_prev) const = 0;
    /// Cumulative count of admissibility clamps applied inside linearized
    /// coefficient evaluations (0 if the problem never clamps).
    virtual long clamp_events() const { return 0; }
};

struct IterationRecord {
    int iteration;                 // 1-based
    std::vector<Real> coeffs;
    Real delta_sup;                // max_i |y_new(x_i) - y_prev(x_i)|
    Real slope_at_origin;
    Real max_node_residual;        // ||A c - b||_inf of this iterate's solve
    long clamp_events;             // clamps during this iteration
};

struct IterationTrace {
    std::vector<IterationRecord> records;
};

/// Ansatz term values and derivatives tabulated over the grid; built once,
/// reused by every iteration (the operator part of each row is constant).
struct AnsatzCache {
    RealMatrix phi0, phi1, phi2;   // term n, order 0/1/2, at grid point i
    std::vector<Real> g0, g0d1, g0d2;
    bool has_first_order = false;

    static AnsatzCache build(const Ansatz& ansatz, const CollocationGrid& grid,
                             const PrecisionContext& ctx, Exec exec,
                             bool with_first_order);
};

/// Row i is the collocation residual of the linear ODE at x_i, expressed in
/// the coefficient unknowns; the right side moves the ansatz's
/// inhomogeneous part across.
DenseSystem assemble_system(const LinearizedBvp& lin, const Ansatz& ansatz,
                            const CollocationGrid& grid, const PrecisionContext& ctx,
                            Exec exec = Exec::parallel);

DenseSystem assemble_system(const LinearizedBvp& lin, const AnsatzCache& cache,
                            const CollocationGrid& grid, const PrecisionContext& ctx,
                            Exec exec);

struct QlmResult {
    std::vector<Real> coeffs;
    IterationTrace trace;
};

/// Runs exactly `iterations` linearize-assemble-solve cycles starting from
/// the problem's initial iterate.  Boundary conditions hold identically
/// through the ansatz; no boundary rows are added.
QlmResult qlm_iterate(const QlmProblem& problem, const Ansatz& ansatz,
                      const CollocationGrid& grid, const PrecisionContext& ctx,
                      int iterations, Exec exec = Exec::parallel);

} // namespace frbc

#endif

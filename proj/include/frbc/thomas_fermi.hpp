#ifndef FRBC_THOMAS_FERMI_HPP
#define FRBC_THOMAS_FERMI_HPP

#include <atomic>
#include <memory>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "frbc/basis.hpp"
#include "frbc/grid.hpp"
#include "frbc/qlm.hpp"
#include "frbc/real.hpp"

namespace frbc {

/// Boundary-embedding trial solution for the Thomas-Fermi problem:
///
///   y(x) = 1/(x^2+1) + x/(x^2+1) * sum_n c_n FB_n(x)
///
/// y(0) = 1 and y(inf) = 0 hold for every coefficient vector, so all
/// collocation rows stay available for the interior equation.
class TfAnsatz : public Ansatz {
public:
    TfAnsatz(FrbBasis basis, const PrecisionContext& ctx);

    const FrbBasis& basis() const { return basis_; }

    std::size_t terms() const override;
    Real term(std::size_t n, const Real& x, int order) const override;
    Real inhomogeneous(const Real& x, int order) const override;
    Real derivative_at_origin(std::span<const Real> coeffs) const override;

private:
    FrbBasis basis_;
    PrecisionContext ctx_;
};

/// Quasilinearization of y'' = y^(3/2)/sqrt(x) around the iterate y_r:
///
///   y'' - (3/(2 sqrt(x))) sqrt(y_r) y = -(1/(2 sqrt(x))) y_r^(3/2)
///
/// Slightly negative iterate values (possible at low N far out) are
/// clamped to zero and counted; see clamp_events().
class TfProblem : public QlmProblem {
public:
    explicit TfProblem(const PrecisionContext& ctx);

    Real initial_iterate(const Real& x) const override;   // y_0 == 1
    LinearizedBvp linearize(std::function<Real(const Real&)> y_prev) const override;
    long clamp_events() const override { return clamps_->load(); }

private:
    PrecisionContext ctx_;
    std::shared_ptr<std::atomic<long>> clamps_;
};

/// A solved coefficient vector with everything needed to evaluate y, y',
/// y'' and the nonlinear residual.
class SpectralSolution {
public:
    SpectralSolution(TfAnsatz ansatz, std::vector<Real> coeffs, int iterations,
                     const PrecisionContext& ctx);

    const TfAnsatz& ansatz() const { return ansatz_; }
    const std::vector<Real>& coeffs() const { return coeffs_; }
    const PrecisionContext& context() const { return ctx_; }
    int iterations() const { return iterations_; }

    /// order 0 or 1; order 1 at x = 0 dispatches to slope_at_origin().
    Real eval(const Real& x, int order) const;
    Real second_derivative(const Real& x) const;   // x > 0
    Real slope_at_origin() const;
    /// |y'' - y^(3/2)/sqrt(x)| at one probe point (x > 0).
    Real residual(const Real& x) const;
    std::vector<Real> residual_profile(std::span<const Real> probe,
                                       Exec exec = Exec::parallel) const;

    nlohmann::json to_json() const;
    static SpectralSolution from_json(const nlohmann::json& j);

private:
    TfAnsatz ansatz_;
    std::vector<Real> coeffs_;
    int iterations_;
    PrecisionContext ctx_;
};

/// Neutral-atom energy (6/7) (4 pi / 3)^(2/3) Z^(7/3) y'(0).
Real energy(const Real& nuclear_charge, const Real& slope, const PrecisionContext& ctx);

struct TfConfig {
    int truncation = 50;
    Real alpha;                    // map exponent; 1/2 unless overridden
    Real scale;                    // map scale L; 1 unless overridden
    int iterations = 45;
    Exec exec = Exec::parallel;

    static TfConfig defaults(const PrecisionContext& ctx);
};

struct TfRun {
    SpectralSolution solution;
    IterationTrace trace;
};

TfRun solve_thomas_fermi(const TfConfig& config, const PrecisionContext& ctx);

/// Solution snapshot for an earlier iteration of the same run.
SpectralSolution solution_at_iteration(const TfConfig& config, const IterationTrace& trace,
                                       int iteration, const PrecisionContext& ctx);

} // namespace frbc

#endif

#ifndef FRBC_LINALG_HPP
#define FRBC_LINALG_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "frbc/errors.hpp"
#include "frbc/real.hpp"

namespace frbc {

/// Kernel execution policy.  `serial` is the reference implementation;
/// `parallel` runs the same per-row operation sequences under OpenMP and
/// produces bitwise-identical results.
enum class Exec { serial, parallel };

class RealMatrix {
public:
    RealMatrix() = default;
    RealMatrix(std::size_t rows, std::size_t cols, const PrecisionContext& ctx)
        : rows_(rows), cols_(cols), d_(rows * cols, ctx.real(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Real& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
    const Real& operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

    std::span<Real> row(std::size_t i) { return {d_.data() + i * cols_, cols_}; }
    std::span<const Real> row(std::size_t i) const { return {d_.data() + i * cols_, cols_}; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Real> d_;
};

/// Square linear system A x = b at context precision.
struct DenseSystem {
    RealMatrix a;
    std::vector<Real> b;

    std::size_t size() const { return b.size(); }
};

/// Direct solve by LU with partial pivoting.  Takes the system by value
/// (the factorization is in place on the copy).
///
/// Throws SingularMatrix when an elimination pivot underflows
/// 10^(digits-10) relative to the peak magnitude ever accumulated into
/// that entry, i.e. when the pivot is cancellation noise.  That signals a
/// degenerate system (e.g. duplicated collocation points); structurally
/// small pivots of wildly row/column-scaled systems are left alone.
std::vector<Real> lu_solve(DenseSystem sys, const PrecisionContext& ctx,
                           Exec exec = Exec::parallel);

/// A x - b.
std::vector<Real> system_residual(const DenseSystem& sys, std::span<const Real> x);

Real inf_norm(std::span<const Real> v);

} // namespace frbc

#endif

#include "frbc/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace frbc {

namespace {

constexpr long kZeroExp = -(1L << 60);

long exp2_of(const Real& v) {
    return v.is_zero() ? kZeroExp : static_cast<long>(mpfr_get_exp(v.mp()));
}

// Running base-2 peak magnitudes of the active entries.  An entry whose
// final value sits a full working precision below everything that was ever
// summed into it is rounding noise; peaks distinguish that (a genuinely
// dependent system) from entries that are structurally small.
struct PeakTracker {
    std::size_t cols = 0;
    std::vector<long> e;

    void init(const RealMatrix& a) {
        cols = a.cols();
        e.resize(a.rows() * cols);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                e[i * cols + j] = exp2_of(a(i, j));
            }
        }
    }
    long& at(std::size_t i, std::size_t j) { return e[i * cols + j]; }
    void swap_rows(std::size_t a, std::size_t b) {
        std::swap_ranges(e.begin() + static_cast<long>(a * cols),
                         e.begin() + static_cast<long>((a + 1) * cols),
                         e.begin() + static_cast<long>(b * cols));
    }
};

std::size_t pivot_row(const RealMatrix& a, std::size_t k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < a.rows(); ++i) {
        if (mpfr_cmpabs(a(i, k).mp(), a(p, k).mp()) > 0) p = i;
    }
    return p;
}

void eliminate_row(RealMatrix& a, std::vector<Real>& b, PeakTracker& peaks,
                   std::size_t k, std::size_t i) {
    Real m = -(a(i, k) / a(k, k));
    const long me = exp2_of(m);
    for (std::size_t j = k + 1; j < a.cols(); ++j) {
        const long contrib = (me == kZeroExp || exp2_of(a(k, j)) == kZeroExp)
                                 ? kZeroExp
                                 : me + exp2_of(a(k, j));
        a(i, j).add_mul(m, a(k, j));
        long& pk = peaks.at(i, j);
        pk = std::max({pk, contrib, exp2_of(a(i, j))});
    }
    b[i].add_mul(m, b[k]);
}

void eliminate_serial(RealMatrix& a, std::vector<Real>& b, PeakTracker& peaks,
                      std::size_t k) {
    for (std::size_t i = k + 1; i < a.rows(); ++i) {
        eliminate_row(a, b, peaks, k, i);
    }
}

void eliminate_parallel(RealMatrix& a, std::vector<Real>& b, PeakTracker& peaks,
                        std::size_t k) {
    const long n = static_cast<long>(a.rows());
#pragma omp parallel for schedule(static)
    for (long i = static_cast<long>(k) + 1; i < n; ++i) {
        eliminate_row(a, b, peaks, k, static_cast<std::size_t>(i));
    }
}

} // namespace

std::vector<Real> lu_solve(DenseSystem sys, const PrecisionContext& ctx, Exec exec) {
    const std::size_t n = sys.size();
    if (sys.a.rows() != n || sys.a.cols() != n) {
        throw std::invalid_argument("lu_solve: system is not square");
    }
    if (n == 0) return {};

    PeakTracker peaks;
    peaks.init(sys.a);
    // A pivot is declared noise when fewer than 10 decimal digits of signal
    // remain above its accumulation floor: peak - precision + guard.
    const long budget_bits =
        static_cast<long>(ctx.prec()) -
        static_cast<long>(10 * 3.32192809488736234787);

    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t p = pivot_row(sys.a, k);
        const Real& pivot = sys.a(p, k);
        if (!pivot.is_finite() || pivot.is_zero() ||
            exp2_of(pivot) <= peaks.at(p, k) - budget_bits) {
            throw SingularMatrix(
                k, "pivot " + pivot.to_decimal(8) + " is rounding noise (peak 2^" +
                       std::to_string(peaks.at(p, k)) + ")");
        }
        if (p != k) {
            auto rk = sys.a.row(k), rp = sys.a.row(p);
            std::swap_ranges(rk.begin(), rk.end(), rp.begin());
            std::swap(sys.b[k], sys.b[p]);
            peaks.swap_rows(k, p);
        }
        if (exec == Exec::parallel) {
            eliminate_parallel(sys.a, sys.b, peaks, k);
        } else {
            eliminate_serial(sys.a, sys.b, peaks, k);
        }
    }

    std::vector<Real> x(n, ctx.real(0));
    for (std::size_t ii = n; ii-- > 0;) {
        Real s = sys.b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) {
            s.sub_mul(sys.a(ii, j), x[j]);
        }
        x[ii] = s / sys.a(ii, ii);
    }
    return x;
}

std::vector<Real> system_residual(const DenseSystem& sys, std::span<const Real> x) {
    const std::size_t n = sys.size();
    std::vector<Real> r;
    r.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Real s = -sys.b[i];
        for (std::size_t j = 0; j < n; ++j) {
            s.add_mul(sys.a(i, j), x[j]);
        }
        r.push_back(std::move(s));
    }
    return r;
}

Real inf_norm(std::span<const Real> v) {
    if (v.empty()) throw std::invalid_argument("inf_norm of empty vector");
    Real m = abs(v[0]);
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (mpfr_cmpabs(v[i].mp(), m.mp()) > 0) m = abs(v[i]);
    }
    return m;
}

} // namespace frbc

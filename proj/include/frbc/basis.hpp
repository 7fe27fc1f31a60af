#ifndef FRBC_BASIS_HPP
#define FRBC_BASIS_HPP

#include <memory>
#include <vector>

#include "frbc/errors.hpp"
#include "frbc/real.hpp"

namespace frbc {

/// Monomial form of the truncated Bessel polynomials B_0..B_N (and their
/// first two t-derivatives) for one truncation order N.  Coefficients are
/// exact rationals rounded once to context precision.
class BesselTable {
public:
    BesselTable(int truncation, const PrecisionContext& ctx);

    int truncation() const { return truncation_; }

    Real value(int n, const Real& t) const { return horner(c0_[n], t); }
    Real d1(int n, const Real& t) const { return horner(c1_[n], t); }
    Real d2(int n, const Real& t) const { return horner(c2_[n], t); }

    /// B_n(0): 1 for n = 0, 0 otherwise (kept as data, not hard-coded).
    const Real& value_at_zero(int n) const { return c0_[n][0]; }

private:
    Real horner(const std::vector<Real>& c, const Real& t) const;

    int truncation_;
    std::vector<std::vector<Real>> c0_, c1_, c2_;
};

/// The (N, alpha, L) triple defining the fractional rational Bessel family
/// FB_n(x) = B_n(x^alpha / (x^alpha + L)), n = 0..N.
class FrbBasis {
public:
    FrbBasis(int truncation, Real alpha, Real scale, const PrecisionContext& ctx);

    int truncation() const { return truncation_; }
    int size() const { return truncation_ + 1; }
    const Real& alpha() const { return alpha_; }
    const Real& scale() const { return scale_; }
    const BesselTable& table() const { return *table_; }

private:
    int truncation_;
    Real alpha_;
    Real scale_;
    std::shared_ptr<const BesselTable> table_;
};

/// The algebraic map t(x) = x^alpha / (x^alpha + L) and its first two
/// derivatives at one abscissa.  At x = 0 with alpha < 1 the derivatives
/// are one-sided infinite; that case is tagged, never silently overflowed.
struct MapPoint {
    Real x;
    Real t;
    Real dt_dx;
    Real d2t_dx2;
    bool singular_derivative = false;
};

MapPoint map_point(const Real& x, const FrbBasis& basis, const PrecisionContext& ctx);

/// B_n(t) as the literal finite sum with upper limit floor((N-n)/2);
/// n > N gives the empty sum 0.  Reference implementation; the table is
/// the fast path and must agree with it.
Real bessel_poly(int n, int truncation, const Real& t, const PrecisionContext& ctx);

/// Term-wise t-derivative (order 1 or 2) of the same finite sum.
Real bessel_poly_deriv(int n, int truncation, const Real& t, int order,
                       const PrecisionContext& ctx);

/// FB_n and its x-derivatives through the chain rule.  order 0 is valid on
/// x >= 0; orders 1 and 2 need x > 0 when alpha < 1 (the map derivative is
/// singular at the origin) and throw DomainError there.
Real frb_eval(int n, const Real& x, const FrbBasis& basis, int order,
              const PrecisionContext& ctx);

} // namespace frbc

#endif

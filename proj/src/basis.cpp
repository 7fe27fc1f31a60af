#include "frbc/basis.hpp"

#include <gmp.h>

#include <stdexcept>

namespace frbc {

namespace {

// Exact factorials 0!..kmax! as GMP integers.
class Factorials {
public:
    explicit Factorials(int kmax) : f_(static_cast<std::size_t>(kmax) + 1) {
        mpz_init_set_ui(f_[0], 1u);
        for (int k = 1; k <= kmax; ++k) {
            mpz_init(f_[k]);
            mpz_mul_ui(f_[k], f_[k - 1], static_cast<unsigned long>(k));
        }
    }
    ~Factorials() {
        for (auto& z : f_) mpz_clear(z);
    }
    Factorials(const Factorials&) = delete;
    Factorials& operator=(const Factorials&) = delete;

    mpz_srcptr operator[](int k) const { return f_[static_cast<std::size_t>(k)]; }

private:
    std::vector<mpz_t> f_;
};

// (-1)^r * scale / (r! (n+r)! 2^(2r+n)), rounded once from the exact rational.
Real series_coefficient(const Factorials& fact, int n, int r, long scale,
                        mpfr_prec_t prec) {
    mpq_t q;
    mpq_init(q);
    mpz_mul(mpq_denref(q), fact[r], fact[n + r]);
    mpz_mul_2exp(mpq_denref(q), mpq_denref(q), static_cast<unsigned long>(2 * r + n));
    mpz_set_si(mpq_numref(q), (r % 2 == 0) ? scale : -scale);
    mpq_canonicalize(q);
    Real c(prec);
    mpfr_set_q(c.mp(), q, MPFR_RNDN);
    mpq_clear(q);
    return c;
}

} // namespace

BesselTable::BesselTable(int truncation, const PrecisionContext& ctx)
    : truncation_(truncation) {
    if (truncation < 0) throw std::invalid_argument("basis truncation must be >= 0");
    const int m = truncation + 1;
    Factorials fact(truncation + truncation / 2 + 1);
    const Real zero = ctx.real(0);
    c0_.assign(m, std::vector<Real>(m, zero));
    c1_.assign(m, std::vector<Real>(m, zero));
    c2_.assign(m, std::vector<Real>(m, zero));
    for (int n = 0; n < m; ++n) {
        for (int r = 0; r <= (truncation - n) / 2; ++r) {
            const int k = 2 * r + n;
            c0_[n][k] = series_coefficient(fact, n, r, 1, ctx.prec());
            if (k >= 1) c1_[n][k - 1] = series_coefficient(fact, n, r, k, ctx.prec());
            if (k >= 2) {
                c2_[n][k - 2] =
                    series_coefficient(fact, n, r, static_cast<long>(k) * (k - 1),
                                       ctx.prec());
            }
        }
    }
}

Real BesselTable::horner(const std::vector<Real>& c, const Real& t) const {
    Real v = c.back();
    for (std::size_t k = c.size() - 1; k-- > 0;) {
        mpfr_fma(v.mp(), v.mp(), t.mp(), c[k].mp(), MPFR_RNDN);
    }
    return v;
}

FrbBasis::FrbBasis(int truncation, Real alpha, Real scale, const PrecisionContext& ctx)
    : truncation_(truncation), alpha_(std::move(alpha)), scale_(std::move(scale)) {
    if (truncation < 0) throw std::invalid_argument("basis truncation must be >= 0");
    if (!(alpha_ > ctx.real(0))) throw std::invalid_argument("alpha must be > 0");
    if (!(scale_ > ctx.real(0))) throw std::invalid_argument("scale must be > 0");
    table_ = std::make_shared<const BesselTable>(truncation, ctx);
}

MapPoint map_point(const Real& x, const FrbBasis& basis, const PrecisionContext& ctx) {
    if (x.sign() < 0) throw DomainError("map_point: x must be >= 0");
    const Real& alpha = basis.alpha();
    const Real& L = basis.scale();
    MapPoint mp{x, ctx.real(0), ctx.real(0), ctx.real(0), false};

    const Real one = ctx.real(1);
    if (x.is_zero()) {
        // One-sided limits at the origin, by the exponent of x in each
        // closed form: dt/dx ~ x^(alpha-1), d2t/dx2 ~ x^(alpha-2).
        if (alpha < one) {
            mpfr_set_inf(mp.dt_dx.mp(), +1);
            mpfr_set_inf(mp.d2t_dx2.mp(), -1);
            mp.singular_derivative = true;
        } else if (alpha == one) {
            mp.dt_dx = 1 / L;
            mp.d2t_dx2 = -2 / (L * L);
        } else if (alpha < ctx.real(2)) {
            mpfr_set_inf(mp.d2t_dx2.mp(), +1);
            mp.singular_derivative = true;
        } else if (alpha == ctx.real(2)) {
            mp.d2t_dx2 = 2 / L;
        }
        return mp;
    }

    const Real s = pow(x, alpha);
    const Real denom = s + L;
    mp.t = s / denom;
    mp.dt_dx = alpha * L * pow(x, alpha - 1) / (denom * denom);
    mp.d2t_dx2 = alpha * L * pow(x, alpha - 2) *
                 ((alpha - 1) * denom - 2 * alpha * s) / (denom * denom * denom);
    return mp;
}

Real bessel_poly(int n, int truncation, const Real& t, const PrecisionContext& ctx) {
    Real sum = ctx.real(0);
    if (n > truncation) return sum;
    Factorials fact(truncation + truncation / 2 + 1);
    // term r is coeff * t^(2r+n); the 2^-(2r+n) lives in the coefficient
    Real power = pow(t, static_cast<long>(n));
    const Real t2 = t * t;
    for (int r = 0; r <= (truncation - n) / 2; ++r) {
        sum.add_mul(series_coefficient(fact, n, r, 1, ctx.prec()), power);
        power *= t2;
    }
    return sum;
}

Real bessel_poly_deriv(int n, int truncation, const Real& t, int order,
                       const PrecisionContext& ctx) {
    if (order != 1 && order != 2) {
        throw std::invalid_argument("bessel_poly_deriv: order must be 1 or 2");
    }
    Real sum = ctx.real(0);
    if (n > truncation) return sum;
    Factorials fact(truncation + truncation / 2 + 1);
    for (int r = 0; r <= (truncation - n) / 2; ++r) {
        const int k = 2 * r + n;
        if (k < order) continue;
        const long fac = (order == 1) ? k : static_cast<long>(k) * (k - 1);
        sum.add_mul(series_coefficient(fact, n, r, fac, ctx.prec()),
                    pow(t, static_cast<long>(k - order)));
    }
    return sum;
}

Real frb_eval(int n, const Real& x, const FrbBasis& basis, int order,
              const PrecisionContext& ctx) {
    if (n < 0 || n > basis.truncation()) {
        throw std::invalid_argument("frb_eval: basis index out of range");
    }
    if (order < 0 || order > 2) throw std::invalid_argument("frb_eval: order must be 0..2");
    const MapPoint mp = map_point(x, basis, ctx);
    if (order == 0) return basis.table().value(n, mp.t);
    if (mp.singular_derivative) {
        throw DomainError("frb_eval: map derivative singular at x = 0 for alpha < 1");
    }
    if (order == 1) return basis.table().d1(n, mp.t) * mp.dt_dx;
    Real r = basis.table().d2(n, mp.t) * (mp.dt_dx * mp.dt_dx);
    r.add_mul(basis.table().d1(n, mp.t), mp.d2t_dx2);
    return r;
}

} // namespace frbc

#ifndef FRBC_REAL_HPP
#define FRBC_REAL_HPP

#include <mpfr.h>

#include <string>
#include <string_view>
#include <utility>

namespace frbc {

/// Immutable-by-convention multiprecision real backed by MPFR.
///
/// Every value carries its own binary precision; binary operations round
/// once, to the wider of the two operand precisions.  Identical operation
/// sequences therefore produce bitwise-identical results regardless of
/// thread count or platform.
class Real {
public:
    Real() { mpfr_init2(v_, MPFR_PREC_MIN); }
    explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real from_long(long v, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_si(r.v_, v, MPFR_RNDN);
        return r;
    }
    /// Parses a decimal string (plain or scientific).  Throws
    /// std::invalid_argument if the string is not a complete number.
    static Real from_string(std::string_view s, mpfr_prec_t prec);
    static Real pi(mpfr_prec_t prec) {
        Real r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    /// 10^k, correctly rounded.
    static Real pow10(long k, mpfr_prec_t prec);

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_inf() const { return mpfr_inf_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator+=(long o) { mpfr_add_si(v_, v_, o, MPFR_RNDN); return *this; }
    Real& operator-=(long o) { mpfr_sub_si(v_, v_, o, MPFR_RNDN); return *this; }
    Real& operator*=(long o) { mpfr_mul_si(v_, v_, o, MPFR_RNDN); return *this; }
    Real& operator/=(long o) { mpfr_div_si(v_, v_, o, MPFR_RNDN); return *this; }

    Real operator-() const {
        Real r(precision());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    /// *this += a*b with a single rounding (fused multiply-add).
    void add_mul(const Real& a, const Real& b) {
        mpfr_fma(v_, a.v_, b.v_, v_, MPFR_RNDN);
    }
    /// *this -= a*b with a single rounding.
    void sub_mul(const Real& a, const Real& b) {
        mpfr_fms(v_, a.v_, b.v_, v_, MPFR_RNDN); // a*b - this
        mpfr_neg(v_, v_, MPFR_RNDN);             // exact
    }

    friend Real operator+(const Real& a, const Real& b) { return binop(a, b, mpfr_add); }
    friend Real operator-(const Real& a, const Real& b) { return binop(a, b, mpfr_sub); }
    friend Real operator*(const Real& a, const Real& b) { return binop(a, b, mpfr_mul); }
    friend Real operator/(const Real& a, const Real& b) { return binop(a, b, mpfr_div); }

    friend Real operator+(const Real& a, long b) { return si_op(a, b, mpfr_add_si); }
    friend Real operator-(const Real& a, long b) { return si_op(a, b, mpfr_sub_si); }
    friend Real operator*(const Real& a, long b) { return si_op(a, b, mpfr_mul_si); }
    friend Real operator/(const Real& a, long b) { return si_op(a, b, mpfr_div_si); }
    friend Real operator+(long a, const Real& b) { return b + a; }
    friend Real operator*(long a, const Real& b) { return b * a; }
    friend Real operator-(long a, const Real& b) {
        Real r(b.precision());
        mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(long a, const Real& b) {
        Real r(b.precision());
        mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }

    friend Real sqrt(const Real& a) { return unop(a, mpfr_sqrt); }
    friend Real abs(const Real& a) { return unop(a, mpfr_abs); }
    friend Real cos(const Real& a) { return unop(a, mpfr_cos); }
    friend Real log10(const Real& a) { return unop(a, mpfr_log10); }
    friend Real pow(const Real& a, const Real& b) { return binop(a, b, mpfr_pow); }
    friend Real pow(const Real& a, long b) { return si_op(a, b, mpfr_pow_si); }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

    /// Same precision and same value (or both NaN); stricter than ==.
    friend bool identical(const Real& a, const Real& b) {
        if (a.precision() != b.precision()) return false;
        if (a.is_nan() || b.is_nan()) return a.is_nan() && b.is_nan();
        return mpfr_equal_p(a.v_, b.v_) != 0;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Decimal serialization with `digits` significant digits: plain
    /// notation for |x| in [1e-6, 1e9], scientific otherwise, trailing
    /// zeros stripped.
    std::string to_decimal(int digits) const;

    /// Shortest decimal string that reparses to the exact same value at
    /// this precision (used for lossless persistence).
    std::string to_decimal_exact() const;

    mpfr_srcptr mp() const { return v_; }
    mpfr_ptr mp() { return v_; }

private:
    using binfn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    using sifn = int (*)(mpfr_ptr, mpfr_srcptr, long, mpfr_rnd_t);
    using unfn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

    static Real binop(const Real& a, const Real& b, binfn fn) {
        Real r(a.precision() > b.precision() ? a.precision() : b.precision());
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    static Real si_op(const Real& a, long b, sifn fn) {
        Real r(a.precision());
        fn(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    static Real unop(const Real& a, unfn fn) {
        Real r(a.precision());
        fn(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

/// Working-precision context: all real arithmetic in a run goes through
/// values created here.  `digits` is the number of significant decimal
/// digits every value can represent and serialize without loss.
class PrecisionContext {
public:
    explicit PrecisionContext(int digits);

    /// Precision for a run that must deliver `output_digits` trustworthy
    /// digits: twice the request plus headroom, never below 50.
    static PrecisionContext for_output_digits(int output_digits);

    int digits() const { return digits_; }
    mpfr_prec_t prec() const { return prec_; }

    Real real(long v) const { return Real::from_long(v, prec_); }
    Real real(std::string_view s) const { return Real::from_string(s, prec_); }
    Real pi() const { return Real::pi(prec_); }
    Real pow10(long k) const { return Real::pow10(k, prec_); }

    std::string str(const Real& x) const { return x.to_decimal(digits_); }

private:
    int digits_;
    mpfr_prec_t prec_;
};

} // namespace frbc

#endif

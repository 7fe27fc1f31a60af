#include "frbc/real.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace frbc {

Real Real::from_string(std::string_view s, mpfr_prec_t prec) {
    Real r(prec);
    std::string buf(s);
    char* end = nullptr;
    mpfr_strtofr(r.v_, buf.c_str(), &end, 10, MPFR_RNDN);
    if (end == buf.c_str() || *end != '\0') {
        throw std::invalid_argument("not a decimal number: '" + buf + "'");
    }
    return r;
}

Real Real::pow10(long k, mpfr_prec_t prec) {
    Real r(prec);
    if (k >= 0) {
        mpfr_ui_pow_ui(r.v_, 10u, static_cast<unsigned long>(k), MPFR_RNDN);
    } else {
        mpfr_ui_pow_ui(r.v_, 10u, static_cast<unsigned long>(-k), MPFR_RNDN);
        mpfr_si_div(r.v_, 1, r.v_, MPFR_RNDN);
    }
    return r;
}

namespace {

std::string format_digits(bool neg, std::string mant, mpfr_exp_t e) {
    // mant holds significant digits of 0.mant * 10^e; trailing zeros gone.
    std::string out = neg ? "-" : "";
    // Plain decimal covers |x| in [1e-6, 1e9]; 1e9 itself shows as 0.1e10.
    bool plain = (e >= -5 && e <= 9) || (e == 10 && mant == "1");
    if (plain) {
        if (e <= 0) {
            out += "0.";
            out.append(static_cast<std::size_t>(-e), '0');
            out += mant;
        } else if (static_cast<std::size_t>(e) >= mant.size()) {
            out += mant;
            out.append(static_cast<std::size_t>(e) - mant.size(), '0');
        } else {
            out += mant.substr(0, static_cast<std::size_t>(e));
            out += '.';
            out += mant.substr(static_cast<std::size_t>(e));
        }
    } else {
        out += mant.substr(0, 1);
        if (mant.size() > 1) {
            out += '.';
            out += mant.substr(1);
        }
        out += 'e';
        out += std::to_string(static_cast<long>(e) - 1);
    }
    return out;
}

std::string decimal_impl(mpfr_srcptr v, std::size_t ndigits) {
    if (mpfr_nan_p(v)) return "nan";
    if (mpfr_inf_p(v)) return mpfr_sgn(v) < 0 ? "-inf" : "inf";
    if (mpfr_zero_p(v)) return "0";

    mpfr_exp_t e = 0;
    char* raw = mpfr_get_str(nullptr, &e, 10, ndigits, v, MPFR_RNDN);
    std::string mant(raw);
    mpfr_free_str(raw);

    bool neg = !mant.empty() && mant[0] == '-';
    if (neg) mant.erase(0, 1);
    std::size_t last = mant.find_last_not_of('0');
    mant.erase(last == std::string::npos ? 1 : last + 1);
    return format_digits(neg, mant, e);
}

} // namespace

std::string Real::to_decimal(int digits) const {
    if (digits < 2) throw std::invalid_argument("to_decimal needs >= 2 digits");
    return decimal_impl(v_, static_cast<std::size_t>(digits));
}

std::string Real::to_decimal_exact() const {
    return decimal_impl(v_, 0); // 0: mpfr picks enough digits for exact reparse
}

PrecisionContext::PrecisionContext(int digits) : digits_(digits) {
    if (digits < 30) {
        throw std::invalid_argument("precision context needs >= 30 significant digits");
    }
    // log2(10) with slack so `digits` decimal digits always round-trip.
    prec_ = static_cast<mpfr_prec_t>(
        std::ceil((digits + 4) * 3.32192809488736234787));
}

PrecisionContext PrecisionContext::for_output_digits(int output_digits) {
    int d = 2 * output_digits + 20;
    return PrecisionContext(d < 50 ? 50 : d);
}

} // namespace frbc

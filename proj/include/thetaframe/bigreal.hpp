#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <string>
#include <stdexcept>
#include <utility>

namespace thetaframe {

// Arbitrary-precision real backed by MPFR, round-to-nearest throughout.
// Arithmetic results carry the larger precision of the two operands so a
// value never silently loses bits when mixed with a wider one.
class BigReal {
public:
    static constexpr long kMinPrec = 64;
    static constexpr long kDefaultPrec = 256;

    explicit BigReal(long prec = kDefaultPrec) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_zero(v_, 1);
    }
    BigReal(double x, long prec) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_d(v_, x, MPFR_RNDN);
    }
    BigReal(long x, long prec) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_si(v_, x, MPFR_RNDN);
    }
    BigReal(const mpz_class& x, long prec) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
    }
    BigReal(const BigReal& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigReal(BigReal&& o) noexcept {
        mpfr_init2(v_, kMinPrec);
        mpfr_swap(v_, o.v_);
    }
    BigReal& operator=(const BigReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigReal& operator=(BigReal&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigReal() { mpfr_clear(v_); }

    long precision() const { return mpfr_get_prec(v_); }

    // named constants, correctly rounded at the requested precision
    static BigReal pi(long prec) { BigReal r(prec); mpfr_const_pi(r.v_, MPFR_RNDN); return r; }
    static BigReal ln2(long prec) { BigReal r(prec); mpfr_const_log2(r.v_, MPFR_RNDN); return r; }
    static BigReal euler_e(long prec) {
        BigReal one(1L, prec + 32), r(prec + 32);
        mpfr_exp(r.v_, one.v_, MPFR_RNDN);
        return r.round_to(prec);
    }
    static BigReal from_string(const std::string& s, long prec) {
        BigReal r(prec);
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw std::invalid_argument("BigReal: unparsable decimal '" + s + "'");
        return r;
    }

    BigReal round_to(long prec) const {
        BigReal r(prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    friend BigReal operator+(const BigReal& a, const BigReal& b) {
        BigReal r(joint(a, b)); mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
    }
    friend BigReal operator-(const BigReal& a, const BigReal& b) {
        BigReal r(joint(a, b)); mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
    }
    friend BigReal operator*(const BigReal& a, const BigReal& b) {
        BigReal r(joint(a, b)); mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
    }
    friend BigReal operator/(const BigReal& a, const BigReal& b) {
        BigReal r(joint(a, b)); mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
    }
    BigReal operator-() const { BigReal r(precision()); mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }

    BigReal sqrt() const {
        if (sign() < 0) throw std::domain_error("BigReal::sqrt of negative value");
        BigReal r(precision()); mpfr_sqrt(r.v_, v_, MPFR_RNDN); return r;
    }
    BigReal abs() const { BigReal r(precision()); mpfr_abs(r.v_, v_, MPFR_RNDN); return r; }
    BigReal floor() const { BigReal r(precision()); mpfr_floor(r.v_, v_, MPFR_RNDN); return r; }
    // fractional part in [0,1)
    BigReal frac() const { return *this - floor(); }
    BigReal ln() const { BigReal r(precision()); mpfr_log(r.v_, v_, MPFR_RNDN); return r; }
    BigReal pow_int(long k) const {
        BigReal r(precision()); mpfr_pow_si(r.v_, v_, k, MPFR_RNDN); return r;
    }
    BigReal pow(const BigReal& y) const {
        BigReal r(joint(*this, y)); mpfr_pow(r.v_, v_, y.v_, MPFR_RNDN); return r;
    }

    int sign() const { return mpfr_sgn(v_); }
    int cmp(const BigReal& o) const { return mpfr_cmp(v_, o.v_); }
    int cmp(double d) const { return mpfr_cmp_d(v_, d); }
    friend bool operator<(const BigReal& a, const BigReal& b) { return a.cmp(b) < 0; }
    friend bool operator>(const BigReal& a, const BigReal& b) { return a.cmp(b) > 0; }
    friend bool operator<=(const BigReal& a, const BigReal& b) { return a.cmp(b) <= 0; }
    friend bool operator>=(const BigReal& a, const BigReal& b) { return a.cmp(b) >= 0; }
    friend bool operator==(const BigReal& a, const BigReal& b) { return a.cmp(b) == 0; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    mpz_class to_mpz_floor() const {
        mpz_class z;
        mpfr_t t; mpfr_init2(t, precision());
        mpfr_floor(t, v_);
        mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
        mpfr_clear(t);
        return z;
    }
    bool is_zero() const { return mpfr_zero_p(v_); }

    std::string str(long digits = 0) const {
        if (digits == 0) digits = (long)(precision() * 0.3010) + 2;
        mpfr_exp_t expo;
        char* s = mpfr_get_str(nullptr, &expo, 10, (size_t)digits, v_, MPFR_RNDN);
        std::string body(s);
        mpfr_free_str(s);
        std::string sgn;
        if (!body.empty() && body[0] == '-') { sgn = "-"; body = body.substr(1); }
        return sgn + "0." + body + "e" + std::to_string((long)expo);
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

private:
    static long clamp(long p) { return p < kMinPrec ? kMinPrec : p; }
    static long joint(const BigReal& a, const BigReal& b) {
        return a.precision() > b.precision() ? a.precision() : b.precision();
    }
    mpfr_t v_;
};

inline BigReal operator*(long a, const BigReal& b) { return BigReal(a, b.precision()) * b; }
inline BigReal operator-(long a, const BigReal& b) { return BigReal(a, b.precision()) - b; }
inline BigReal operator+(long a, const BigReal& b) { return BigReal(a, b.precision()) + b; }

}  // namespace thetaframe

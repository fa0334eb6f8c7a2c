#pragma once

// Thin RAII value types over MPFR.  Every value carries its own precision in
// bits; binary operations produce a result at the larger input precision.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>

namespace rci {

using Precision = mpfr_prec_t;

class BigFloat {
public:
    explicit BigFloat(Precision prec = 64)
    {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }

    BigFloat(double x, Precision prec)
    {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, x, MPFR_RNDN);
    }

    BigFloat(long x, Precision prec)
    {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, x, MPFR_RNDN);
    }

    BigFloat(const mpz_class& x, Precision prec)
    {
        mpfr_init2(v_, prec);
        mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
    }

    BigFloat(const mpq_class& x, Precision prec)
    {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
    }

    BigFloat(const BigFloat& o)
    {
        mpfr_init2(v_, o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }

    BigFloat(BigFloat&& o) noexcept
    {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }

    BigFloat& operator=(const BigFloat& o)
    {
        if (this != &o) {
            mpfr_set_prec(v_, o.prec());
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }

    BigFloat& operator=(BigFloat&& o) noexcept
    {
        mpfr_swap(v_, o.v_);
        return *this;
    }

    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat pi(Precision prec)
    {
        BigFloat r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    [[nodiscard]] Precision prec() const { return mpfr_get_prec(v_); }
    [[nodiscard]] mpfr_ptr get() { return v_; }
    [[nodiscard]] mpfr_srcptr get() const { return v_; }

    /// Raise (never lower) the precision, keeping the value.
    void widen(Precision prec)
    {
        if (prec > this->prec())
            mpfr_prec_round(v_, prec, MPFR_RNDN);
    }

    [[nodiscard]] double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    [[nodiscard]] mpz_class round() const
    {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
        return z;
    }

    [[nodiscard]] bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    [[nodiscard]] int sign() const { return mpfr_sgn(v_); }

    /// Base-2 exponent such that 0.5 <= |x| / 2^e < 1; very negative for 0.
    [[nodiscard]] long exponent2() const
    {
        if (mpfr_zero_p(v_))
            return -(1L << 30);
        return mpfr_get_exp(v_);
    }

    /// Fixed-point decimal rendering with the given number of digits after the point.
    [[nodiscard]] std::string to_fixed(int digits) const
    {
        const std::string fmt = "%." + std::to_string(digits) + "Rf";
        char* buf = nullptr;
        mpfr_asprintf(&buf, fmt.c_str(), v_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

    [[nodiscard]] std::string to_scientific(int digits) const
    {
        const std::string fmt = "%." + std::to_string(digits) + "Re";
        char* buf = nullptr;
        mpfr_asprintf(&buf, fmt.c_str(), v_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

    BigFloat& operator+=(const BigFloat& o)
    {
        widen(o.prec());
        mpfr_add(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator-=(const BigFloat& o)
    {
        widen(o.prec());
        mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator*=(const BigFloat& o)
    {
        widen(o.prec());
        mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator/=(const BigFloat& o)
    {
        widen(o.prec());
        mpfr_div(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator*=(long k)
    {
        mpfr_mul_si(v_, v_, k, MPFR_RNDN);
        return *this;
    }

    friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
    friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
    friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
    friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
    friend BigFloat operator-(BigFloat a)
    {
        mpfr_neg(a.v_, a.v_, MPFR_RNDN);
        return a;
    }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

    friend BigFloat abs(BigFloat a)
    {
        mpfr_abs(a.v_, a.v_, MPFR_RNDN);
        return a;
    }
    friend BigFloat sqrt(BigFloat a)
    {
        mpfr_sqrt(a.v_, a.v_, MPFR_RNDN);
        return a;
    }
    friend BigFloat exp(BigFloat a)
    {
        mpfr_exp(a.v_, a.v_, MPFR_RNDN);
        return a;
    }
    friend BigFloat log2(BigFloat a)
    {
        mpfr_log2(a.v_, a.v_, MPFR_RNDN);
        return a;
    }

private:
    mpfr_t v_;
};

/// 2^e at the given precision.
inline BigFloat pow2(long e, Precision prec)
{
    BigFloat r(1L, prec);
    mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
    return r;
}

class BigComplex {
public:
    explicit BigComplex(Precision prec = 64) : re_(prec), im_(prec) {}
    BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) { equalize(); }
    BigComplex(double re, double im, Precision prec) : re_(re, prec), im_(im, prec) {}
    BigComplex(long re, Precision prec) : re_(re, prec), im_(0L, prec) {}

    [[nodiscard]] const BigFloat& real() const { return re_; }
    [[nodiscard]] const BigFloat& imag() const { return im_; }
    [[nodiscard]] Precision prec() const { return re_.prec(); }

    void widen(Precision prec)
    {
        re_.widen(prec);
        im_.widen(prec);
    }

    /// e^{i x} for real x.
    static BigComplex expi(const BigFloat& x)
    {
        BigFloat s(x.prec()), c(x.prec());
        mpfr_sin_cos(s.get(), c.get(), x.get(), MPFR_RNDN);
        return {std::move(c), std::move(s)};
    }

    BigComplex& operator+=(const BigComplex& o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    BigComplex& operator-=(const BigComplex& o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    BigComplex& operator*=(const BigComplex& o)
    {
        const auto p = std::max(prec(), o.prec());
        BigFloat t1(p), t2(p), nr(p);
        mpfr_mul(t1.get(), re_.get(), o.re_.get(), MPFR_RNDN);
        mpfr_mul(t2.get(), im_.get(), o.im_.get(), MPFR_RNDN);
        mpfr_sub(nr.get(), t1.get(), t2.get(), MPFR_RNDN);
        mpfr_mul(t1.get(), re_.get(), o.im_.get(), MPFR_RNDN);
        mpfr_mul(t2.get(), im_.get(), o.re_.get(), MPFR_RNDN);
        im_.widen(p);
        mpfr_add(im_.get(), t1.get(), t2.get(), MPFR_RNDN);
        re_ = std::move(nr);
        return *this;
    }
    BigComplex& operator*=(const BigFloat& x)
    {
        re_ *= x;
        im_ *= x;
        return *this;
    }
    BigComplex& operator/=(const BigComplex& o)
    {
        *this *= o.conj();
        const auto n = o.norm();
        re_ /= n;
        im_ /= n;
        return *this;
    }
    BigComplex& operator/=(const BigFloat& x)
    {
        re_ /= x;
        im_ /= x;
        return *this;
    }

    friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
    friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
    friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
    friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
    friend BigComplex operator*(BigComplex a, const BigFloat& x) { return a *= x; }
    friend BigComplex operator/(BigComplex a, const BigFloat& x) { return a /= x; }
    friend BigComplex operator-(const BigComplex& a) { return {-a.re_, -a.im_}; }

    [[nodiscard]] BigComplex conj() const { return {re_, -im_}; }

    /// |z|^2
    [[nodiscard]] BigFloat norm() const { return re_ * re_ + im_ * im_; }

    [[nodiscard]] BigFloat abs() const
    {
        BigFloat r(prec());
        mpfr_hypot(r.get(), re_.get(), im_.get(), MPFR_RNDN);
        return r;
    }

    [[nodiscard]] BigComplex pow(long e) const
    {
        if (e < 0)
            return BigComplex(1L, prec()) / pow(-e);
        BigComplex r(1L, prec()), b = *this;
        auto k = static_cast<unsigned long>(e);
        while (k != 0) {
            if (k & 1UL)
                r *= b;
            k >>= 1UL;
            if (k != 0)
                b *= b;
        }
        return r;
    }

    friend BigComplex exp(const BigComplex& z)
    {
        auto r = expi(z.im_);
        r *= exp(z.re_);
        return r;
    }

private:
    void equalize()
    {
        const auto p = std::max(re_.prec(), im_.prec());
        re_.widen(p);
        im_.widen(p);
    }

    BigFloat re_, im_;
};

/// |a - b| / |b|, or |a - b| when b = 0.
inline BigFloat relative_error(const BigComplex& a, const BigComplex& b)
{
    auto diff = (a - b).abs();
    const auto mag = b.abs();
    if (!mag.is_zero())
        diff /= mag;
    return diff;
}

}  // namespace rci

#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "rci/errors.hpp"
#include "rci/exactmath.hpp"

namespace rci {

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r))
        throw domain_error("integer matrix entry overflow");
    return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r))
        throw domain_error("integer matrix entry overflow");
    return r;
}

}  // namespace detail

/// Integer 2x2 matrix (a b; c d), acting on the upper half-plane by
/// tau -> (a tau + b) / (c tau + d).
struct IntMat2 {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    static constexpr IntMat2 identity() { return {1, 0, 0, 1}; }
    static constexpr IntMat2 translation(std::int64_t n) { return {1, n, 0, 1}; }
    static constexpr IntMat2 inversion() { return {0, -1, 1, 0}; }

    [[nodiscard]] std::int64_t det() const
    {
        return detail::checked_add(detail::checked_mul(a, d), -detail::checked_mul(b, c));
    }

    friend IntMat2 operator*(const IntMat2& x, const IntMat2& y)
    {
        using detail::checked_add;
        using detail::checked_mul;
        return {checked_add(checked_mul(x.a, y.a), checked_mul(x.b, y.c)),
                checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.d)),
                checked_add(checked_mul(x.c, y.a), checked_mul(x.d, y.c)),
                checked_add(checked_mul(x.c, y.b), checked_mul(x.d, y.d))};
    }

    friend bool operator==(const IntMat2&, const IntMat2&) = default;

    friend std::ostream& operator<<(std::ostream& os, const IntMat2& m)
    {
        return os << '(' << m.a << ' ' << m.b << ';' << m.c << ' ' << m.d << ')';
    }
};

/// 2x2 matrix over Z/NZ with entries kept in [0, N).
class MatModN {
public:
    MatModN(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t n)
        : n_(n)
    {
        if (n < 2)
            throw domain_error("MatModN: modulus must be >= 2");
        a_ = mod(a, n);
        b_ = mod(b, n);
        c_ = mod(c, n);
        d_ = mod(d, n);
    }

    MatModN(const IntMat2& m, std::int64_t n) : MatModN(m.a, m.b, m.c, m.d, n) {}

    static MatModN identity(std::int64_t n) { return {1, 0, 0, 1, n}; }
    static MatModN scalar(std::int64_t t, std::int64_t n) { return {t, 0, 0, t, n}; }

    [[nodiscard]] std::int64_t a() const { return a_; }
    [[nodiscard]] std::int64_t b() const { return b_; }
    [[nodiscard]] std::int64_t c() const { return c_; }
    [[nodiscard]] std::int64_t d() const { return d_; }
    [[nodiscard]] std::int64_t modulus() const { return n_; }

    [[nodiscard]] std::int64_t det() const
    {
        return mod(static_cast<std::int64_t>((static_cast<detail::i128>(a_) * d_ -
                                              static_cast<detail::i128>(b_) * c_) %
                                             n_),
                   n_);
    }

    [[nodiscard]] bool is_invertible() const { return std::gcd(det(), n_) == 1; }

    [[nodiscard]] MatModN inverse() const
    {
        const auto di = mod_inverse(det(), n_);
        return {d_ * di, -b_ * di, -c_ * di, a_ * di, n_};
    }

    [[nodiscard]] MatModN negated() const { return {-a_, -b_, -c_, -d_, n_}; }

    friend MatModN operator*(const MatModN& x, const MatModN& y)
    {
        if (x.n_ != y.n_)
            throw domain_error("MatModN: modulus mismatch");
        const auto n = x.n_;
        return {(x.a_ * y.a_ + x.b_ * y.c_) % n, (x.a_ * y.b_ + x.b_ * y.d_) % n,
                (x.c_ * y.a_ + x.d_ * y.c_) % n, (x.c_ * y.b_ + x.d_ * y.d_) % n, n};
    }

    friend bool operator==(const MatModN&, const MatModN&) = default;

    friend std::ostream& operator<<(std::ostream& os, const MatModN& m)
    {
        return os << '(' << m.a_ << ' ' << m.b_ << ';' << m.c_ << ' ' << m.d_ << ")_" << m.n_;
    }

private:
    std::int64_t a_ = 0, b_ = 0, c_ = 0, d_ = 0, n_ = 2;
};

}  // namespace rci

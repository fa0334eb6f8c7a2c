#pragma once

// Independent reference implementations used only by the tests.  Everything
// here is deliberately naive: brute force over residues, or a different
// formula for the same quantity.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

#include "rci/bigfloat.hpp"
#include "rci/exactmath.hpp"

namespace oracle {

inline std::int64_t md(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

inline bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

/// Legendre symbol by Euler's criterion for odd p, d mod 8 rule for p = 2.
inline int kronecker_prime(std::int64_t d, std::int64_t p)
{
    if (p == 2) {
        if (d % 2 == 0)
            return 0;
        const auto r = md(d, 8);
        return (r == 1 || r == 7) ? 1 : -1;
    }
    if (md(d, p) == 0)
        return 0;
    for (std::int64_t x = 1; x < p; ++x)
        if (md(x * x - d, p) == 0)
            return 1;
    return -1;
}

inline std::int64_t phi(std::int64_t n)
{
    std::int64_t c = 0;
    for (std::int64_t t = 1; t <= n; ++t)
        if (std::gcd(t, n) == 1)
            ++c;
    return c;
}

inline std::int64_t inverse(std::int64_t a, std::int64_t n)
{
    for (std::int64_t x = 1; x < n; ++x)
        if (md(a * x, n) == 1)
            return x;
    return 0;
}

/// Reduced primitive positive definite forms of discriminant D < 0, found by
/// scanning a wider box than the reduction bound needs.
inline std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> reduced_forms(std::int64_t D)
{
    std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> out;
    for (std::int64_t a = 1; 3 * a * a <= -D + 3 * a; ++a)
        for (std::int64_t b = -a; b <= a; ++b) {
            if (md(b * b - D, 4 * a) != 0)
                continue;
            const auto c = (b * b - D) / (4 * a);
            if (c < a)
                continue;
            if ((b < 0) && (-b == a || a == c))
                continue;
            if (std::gcd(std::gcd(a, std::abs(b)), c) != 1)
                continue;
            out.emplace_back(a, b, c);
        }
    return out;
}

/// Class number of the order of discriminant D = N^2 d_K.
inline std::int64_t class_number(std::int64_t D) { return static_cast<std::int64_t>(reduced_forms(D).size()); }

/// Number of roots of X^2 + B X + C mod p.
inline int root_count(std::int64_t B, std::int64_t C, std::int64_t p)
{
    int c = 0;
    for (std::int64_t x = 0; x < p; ++x)
        if (md(x * x + B * x + C, p) == 0)
            ++c;
    return c;
}

/// #(O_K / N O_K)^*: pairs (x, y) mod N with x^2 - B x y + C y^2 a unit mod N.
inline std::int64_t unit_count(std::int64_t B, std::int64_t C, std::int64_t N)
{
    std::int64_t c = 0;
    for (std::int64_t x = 0; x < N; ++x)
        for (std::int64_t y = 0; y < N; ++y)
            if (std::gcd(md(x * x + B * x * y + C * y * y, N), N) == 1)
                ++c;
    return c;
}

/// Eisenstein series E_k(tau) = 1 + c_k sum sigma_{k-1}(n) q^n for k = 4, 6.
inline rci::BigComplex eisenstein(int k, const rci::BigComplex& tau, rci::Precision prec, int terms = 400)
{
    using rci::BigComplex;
    using rci::BigFloat;
    const long ck = k == 4 ? 240 : -504;
    auto arg = tau * BigComplex(BigFloat(0L, prec), BigFloat::pi(prec) * BigFloat(2L, prec));
    const auto q = exp(arg);
    BigComplex sum(0L, prec), qn(1L, prec);
    for (long n = 1; n <= terms; ++n) {
        qn = qn * q;
        rci::BigInt sigma = 0;
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) {
                rci::BigInt t;
                mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k - 1));
                sigma += t;
            }
        sum = sum + qn * BigFloat(sigma, prec);
    }
    return BigComplex(1L, prec) + sum * BigFloat(ck, prec);
}

/// Delta(tau) = (2 pi)^12 (E4^3 - E6^2) / 1728.
inline rci::BigComplex delta(const rci::BigComplex& tau, rci::Precision prec)
{
    using rci::BigFloat;
    const auto e4 = eisenstein(4, tau, prec), e6 = eisenstein(6, tau, prec);
    auto twopi = BigFloat::pi(prec) * BigFloat(2L, prec);
    BigFloat scale(1L, prec);
    for (int i = 0; i < 12; ++i)
        scale *= twopi;
    return (e4 * e4 * e4 - e6 * e6) * (scale / BigFloat(1728L, prec));
}

/// j = 1728 E4^3 / (E4^3 - E6^2).
inline rci::BigComplex j(const rci::BigComplex& tau, rci::Precision prec)
{
    const auto e4 = eisenstein(4, tau, prec), e6 = eisenstein(6, tau, prec);
    const auto e43 = e4 * e4 * e4;
    return e43 * rci::BigFloat(1728L, prec) / (e43 - e6 * e6);
}

}  // namespace oracle

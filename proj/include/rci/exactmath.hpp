#pragma once

// Exact integer arithmetic at desk scale: trial-division factorization,
// deterministic Miller-Rabin, Kronecker symbol, Euler phi, modular inverse.
// Multi-precision quantities (polynomial coefficients, rationals) use GMP.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "rci/errors.hpp"

namespace rci {

using BigInt = mpz_class;
using BigRational = mpq_class;

struct PrimePower {
    std::int64_t prime;
    int exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime powers sorted by strictly increasing prime.
using Factorization = std::vector<PrimePower>;

namespace detail {

__extension__ using i128 = __int128;
__extension__ using u128 = unsigned __int128;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    base %= m;
    while (e != 0) {
        if (e & 1U)
            r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        e >>= 1U;
    }
    return r;
}

}  // namespace detail

/// Deterministic for every 64-bit input (witnesses 2..37).
inline bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    constexpr std::array<std::uint64_t, 12> witnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto p : witnesses) {
        if (static_cast<std::uint64_t>(n) == p)
            return true;
        if (static_cast<std::uint64_t>(n) % p == 0)
            return false;
    }
    const auto m = static_cast<std::uint64_t>(n);
    std::uint64_t d = m - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (auto a : witnesses) {
        std::uint64_t x = detail::powmod(a, d, m);
        if (x == 1 || x == m - 1)
            continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = detail::mulmod(x, x, m);
            if (x == m - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

inline Factorization factorize(std::int64_t n)
{
    if (n < 2)
        throw domain_error("factorize: argument must be >= 2, got " + std::to_string(n));
    Factorization out;
    auto strip = [&](std::int64_t p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0)
            out.push_back({p, e});
    };
    strip(2);
    strip(3);
    for (std::int64_t p = 5; p * p <= n; p += 6) {
        strip(p);
        strip(p + 2);
    }
    if (n > 1)
        out.push_back({n, 1});
    return out;
}

inline std::int64_t expand(const Factorization& f)
{
    std::int64_t n = 1;
    for (const auto& [p, e] : f)
        for (int i = 0; i < e; ++i)
            n *= p;
    return n;
}

/// Kronecker symbol (d/n) for n >= 1. At n = 2 this is 0 for even d,
/// +1 for d = 1,7 (mod 8) and -1 for d = 3,5 (mod 8).
inline int kronecker(std::int64_t d, std::int64_t n)
{
    if (n < 1)
        throw domain_error("kronecker: modulus must be positive");
    int result = 1;
    while (n % 2 == 0) {
        n /= 2;
        if (d % 2 == 0)
            return 0;
        const auto r = ((d % 8) + 8) % 8;
        if (r == 3 || r == 5)
            result = -result;
    }
    // Jacobi symbol (d/n), n odd.
    std::int64_t a = ((d % n) + n) % n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const auto r = n % 8;
            if (r == 3 || r == 5)
                result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3)
            result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

inline std::int64_t euler_phi(std::int64_t n)
{
    if (n < 1)
        throw domain_error("euler_phi: argument must be >= 1");
    if (n == 1)
        return 1;
    std::int64_t phi = 1;
    for (const auto& [p, e] : factorize(n)) {
        phi *= p - 1;
        for (int i = 1; i < e; ++i)
            phi *= p;
    }
    return phi;
}

/// Result in [1, n-1] (or 0 when n == 1 is excluded by the precondition).
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t n)
{
    if (n < 2)
        throw domain_error("mod_inverse: modulus must be >= 2");
    std::int64_t r0 = n, r1 = ((a % n) + n) % n;
    std::int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        const auto q = r0 / r1;
        std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
        std::tie(t0, t1) = std::pair{t1, t0 - q * t1};
    }
    if (r0 != 1)
        throw domain_error("mod_inverse: " + std::to_string(a) + " is not invertible mod " +
                           std::to_string(n));
    return ((t0 % n) + n) % n;
}

inline std::int64_t mod(std::int64_t a, std::int64_t n)
{
    const auto r = a % n;
    return r < 0 ? r + n : r;
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0.
inline std::array<std::int64_t, 3> ext_gcd(std::int64_t a, std::int64_t b)
{
    std::int64_t x0 = 1, x1 = 0, y0 = 0, y1 = 1;
    while (b != 0) {
        const auto q = a / b;
        std::tie(a, b) = std::pair{b, a - q * b};
        std::tie(x0, x1) = std::pair{x1, x0 - q * x1};
        std::tie(y0, y1) = std::pair{y1, y0 - q * y1};
    }
    if (a < 0)
        return {-a, -x0, -y0};
    return {a, x0, y0};
}

inline bool is_squarefree(std::int64_t n)
{
    if (n < 1)
        return false;
    if (n == 1)
        return true;
    for (const auto& pe : factorize(n))
        if (pe.exponent > 1)
            return false;
    return true;
}

inline std::int64_t ipow(std::int64_t b, int e)
{
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i)
        r *= b;
    return r;
}

}  // namespace rci

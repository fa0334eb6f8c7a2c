#pragma once

// Imaginary quadratic fields K = Q(sqrt(d_K)) with O_K = Z[theta]:
// theta = sqrt(d_K)/2 if d_K = 0 (mod 4), (-1 + sqrt(d_K))/2 if d_K = 1 (mod 4).

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rci/errors.hpp"
#include "rci/exactmath.hpp"
#include "rci/matrix.hpp"

namespace rci {

/// Reduced positive definite binary quadratic form a X^2 + b XY + c Y^2.
struct QuadForm {
    std::int64_t a = 1, b = 0, c = 1;

    [[nodiscard]] std::int64_t discriminant() const { return b * b - 4 * a * c; }

    [[nodiscard]] bool is_reduced() const
    {
        if (a <= 0 || std::abs(b) > a || a > c)
            return false;
        if ((std::abs(b) == a || a == c) && b < 0)
            return false;
        return true;
    }

    friend bool operator==(const QuadForm&, const QuadForm&) = default;
};

struct FieldData {
    std::int64_t d_K = -4;
    /// min(theta, Q) = X^2 + B_theta X + C_theta
    std::int64_t B_theta = 0;
    std::int64_t C_theta = 1;
    int omega_K = 4;
    int h_K = 1;
    std::vector<QuadForm> forms;  ///< reduced forms, principal first
};

enum class Splitting { Split, Inert, Ramified };

struct SplitType {
    Splitting kind = Splitting::Split;

    /// Ramification index r_k.
    [[nodiscard]] int ramification() const { return kind == Splitting::Ramified ? 2 : 1; }

    friend bool operator==(const SplitType&, const SplitType&) = default;
};

inline const char* to_string(Splitting s)
{
    switch (s) {
    case Splitting::Split:
        return "split";
    case Splitting::Inert:
        return "inert";
    case Splitting::Ramified:
        return "ramified";
    }
    return "?";
}

/// The root (-b + sqrt(d_K)) / (2a) of a form of discriminant d_K.
struct CMPoint {
    std::int64_t a = 1, b = 0;
    std::int64_t d_K = -4;

    friend bool operator==(const CMPoint&, const CMPoint&) = default;
};

/// Exact point (x + y sqrt(d)) / z of the upper half-plane, y > 0, z > 0,
/// gcd(x, y, z) = 1.  Closed under integer matrices of positive determinant,
/// which lets Galois conjugates be moved to the fundamental domain without
/// rounding.
class QuadPoint {
public:
    QuadPoint(BigInt x, BigInt y, BigInt z, std::int64_t d) : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)), d_(d)
    {
        if (d_ >= 0)
            throw domain_error("QuadPoint: radicand must be negative");
        if (z_ == 0)
            throw domain_error("QuadPoint: zero denominator");
        if (z_ < 0) {
            x_ = -x_;
            y_ = -y_;
            z_ = -z_;
        }
        if (y_ <= 0)
            throw domain_error("QuadPoint: point must lie in the upper half-plane");
        normalize();
    }

    explicit QuadPoint(const CMPoint& p) : QuadPoint(BigInt(-p.b), BigInt(1), BigInt(2 * p.a), p.d_K) {}

    [[nodiscard]] const BigInt& x() const { return x_; }
    [[nodiscard]] const BigInt& y() const { return y_; }
    [[nodiscard]] const BigInt& z() const { return z_; }
    [[nodiscard]] std::int64_t radicand() const { return d_; }

    /// (m.a tau + m.b) / (m.c tau + m.d); requires det(m) > 0.
    [[nodiscard]] QuadPoint transformed(const IntMat2& m) const
    {
        const auto det = m.det();
        if (det <= 0)
            throw domain_error("QuadPoint: matrix must have positive determinant");
        const BigInt p(static_cast<long>(m.a)), q(static_cast<long>(m.b));
        const BigInt r(static_cast<long>(m.c)), s(static_cast<long>(m.d));
        const BigInt d(static_cast<long>(d_));
        // (P + Q w) / (R + S w), w = sqrt(d)
        const BigInt P = p * x_ + q * z_;
        const BigInt Q = p * y_;
        const BigInt R = r * x_ + s * z_;
        const BigInt S = r * y_;
        return {P * R - Q * S * d, y_ * z_ * BigInt(static_cast<long>(det)), R * R - d * S * S, d_};
    }

    [[nodiscard]] QuadPoint scaled(std::int64_t m) const { return transformed({m, 0, 0, 1}); }

    /// |tau|^2 as an exact rational.
    [[nodiscard]] BigRational norm() const
    {
        BigRational r(x_ * x_ - BigInt(static_cast<long>(d_)) * y_ * y_, z_ * z_);
        r.canonicalize();
        return r;
    }

    [[nodiscard]] BigRational real_part() const
    {
        BigRational r(x_, z_);
        r.canonicalize();
        return r;
    }

    friend bool operator==(const QuadPoint&, const QuadPoint&) = default;

private:
    void normalize()
    {
        BigInt g = gcd(gcd(x_, y_), z_);
        if (g > 1) {
            x_ /= g;
            y_ /= g;
            z_ /= g;
        }
    }

    BigInt x_, y_, z_;
    std::int64_t d_;
};

inline bool is_fundamental_discriminant(std::int64_t d)
{
    if (d >= 0)
        return false;
    const auto r = mod(d, 4);
    if (r == 1)
        return is_squarefree(-d);
    if (r == 0) {
        const auto m = -(d / 4);  // d = -4m
        const auto mr = mod(-m, 4);
        return (mr == 2 || mr == 3) && is_squarefree(m);
    }
    return false;
}

/// Accepts a fundamental discriminant, or -m / m for squarefree m with
/// K = Q(sqrt(-m)); returns the fundamental discriminant of K.
inline std::int64_t normalize_discriminant(std::int64_t value)
{
    if (is_fundamental_discriminant(value))
        return value;
    const auto m = value < 0 ? -value : value;
    if (m >= 1 && is_squarefree(m))
        return mod(-m, 4) == 1 ? -m : -4 * m;
    throw domain_error("not a fundamental discriminant or squarefree integer: " + std::to_string(value));
}

inline std::vector<QuadForm> reduced_forms(std::int64_t d)
{
    std::vector<QuadForm> out;
    const auto bound = static_cast<std::int64_t>(std::sqrt(static_cast<double>(-d) / 3.0)) + 1;
    for (std::int64_t a = 1; a <= bound; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            const auto num = b * b - d;
            if (num % (4 * a) != 0)
                continue;
            const QuadForm f{a, b, num / (4 * a)};
            if (!f.is_reduced())
                continue;
            if (std::gcd(std::gcd(f.a, std::abs(f.b)), f.c) != 1)
                continue;
            out.push_back(f);
        }
    }
    return out;
}

inline std::vector<QuadForm> reduced_forms(const FieldData& field) { return reduced_forms(field.d_K); }

inline FieldData field_data(std::int64_t d_K)
{
    if (!is_fundamental_discriminant(d_K))
        throw domain_error("not a negative fundamental discriminant: " + std::to_string(d_K));
    FieldData f;
    f.d_K = d_K;
    if (mod(d_K, 4) == 0) {
        f.B_theta = 0;
        f.C_theta = -d_K / 4;
    } else {
        f.B_theta = 1;
        f.C_theta = (1 - d_K) / 4;
    }
    f.omega_K = d_K == -4 ? 4 : d_K == -3 ? 6 : 2;
    f.forms = reduced_forms(d_K);
    f.h_K = static_cast<int>(f.forms.size());
    return f;
}

inline SplitType classify_prime(const FieldData& field, std::int64_t p)
{
    switch (kronecker(field.d_K, p)) {
    case 1:
        return {Splitting::Split};
    case -1:
        return {Splitting::Inert};
    default:
        return {Splitting::Ramified};
    }
}

/// Absolute norm of a prime ideal above p.
inline std::int64_t prime_ideal_norm(std::int64_t p, SplitType split)
{
    return split.kind == Splitting::Inert ? p * p : p;
}

/// Euler function of the ideal P^e for a prime ideal P above p.
inline std::int64_t ideal_phi(std::int64_t p, SplitType split, int e)
{
    if (e < 1)
        throw domain_error("ideal_phi: exponent must be >= 1");
    const auto norm = prime_ideal_norm(p, split);
    return (norm - 1) * ipow(norm, e - 1);
}

/// A unit of O_K in coordinates x + y theta.
struct UnitCoords {
    std::int64_t x, y;
};

inline std::vector<UnitCoords> units(const FieldData& field)
{
    if (field.d_K == -4)
        return {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    if (field.d_K == -3)  // theta^2 = -1 - theta
        return {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {-1, -1}, {1, 1}};
    return {{1, 0}, {-1, 0}};
}

/// Number of roots of unity congruent to 1 modulo N O_K.
inline int omega_f(const FieldData& field, std::int64_t N)
{
    if (N < 1)
        throw domain_error("omega_f: N must be >= 1");
    int count = 0;
    for (const auto& [x, y] : units(field))
        if ((x - 1) % N == 0 && y % N == 0)
            ++count;
    return count;
}

inline CMPoint cm_point(const QuadForm& form, const FieldData& field)
{
    if (form.discriminant() != field.d_K)
        throw domain_error("cm_point: form discriminant does not match the field");
    return {form.a, form.b, field.d_K};
}

/// theta itself, the CM point of the principal form.
inline CMPoint theta_point(const FieldData& field)
{
    return cm_point(field.forms.front(), field);
}

// Prime ideals of O_K and the unit counts omega(a) for ideal moduli.  A prime
// ideal above p is represented as (p, theta - root) when p splits or
// ramifies, so that O_K / P = F_p via theta -> root; for inert p it is p O_K.

struct PrimeIdeal {
    std::int64_t p = 2;
    SplitType split;
    std::int64_t root = 0;  ///< theta -> root mod p (unused when inert)

    [[nodiscard]] std::int64_t norm() const { return prime_ideal_norm(p, split); }

    friend bool operator==(const PrimeIdeal&, const PrimeIdeal&) = default;
};

struct IdealPower {
    PrimeIdeal prime;
    int exponent = 1;
};

namespace detail {

inline std::int64_t min_poly_mod(const FieldData& f, std::int64_t x, std::int64_t m)
{
    const auto v = static_cast<detail::i128>(x) * x + static_cast<detail::i128>(f.B_theta) * x + f.C_theta;
    return mod(static_cast<std::int64_t>(v % m), m);
}

inline std::vector<std::int64_t> roots_mod_p(const FieldData& f, std::int64_t p)
{
    std::vector<std::int64_t> r;
    for (std::int64_t x = 0; x < p; ++x)
        if (min_poly_mod(f, x, p) == 0)
            r.push_back(x);
    return r;
}

/// Lift a simple root of min(theta) mod p to a root mod p^k.
inline std::int64_t hensel_lift(const FieldData& f, std::int64_t root, std::int64_t p, int k)
{
    std::int64_t r = root, pk = p;
    for (int i = 1; i < k; ++i) {
        const auto next = pk * p;
        bool found = false;
        for (std::int64_t j = 0; j < p; ++j) {
            const auto cand = r + j * pk;
            if (min_poly_mod(f, cand, next) == 0) {
                r = cand;
                found = true;
                break;
            }
        }
        if (!found)
            throw domain_error("hensel_lift: root does not lift");
        pk = next;
    }
    return r;
}

}  // namespace detail

/// Prime ideal factorization of N O_K: a split p^e contributes P^e and
/// conj(P)^e, an inert p^e contributes (p)^e, a ramified p^e contributes P^(2e).
inline std::vector<IdealPower> ideal_factorization(const FieldData& field, std::int64_t N)
{
    std::vector<IdealPower> out;
    if (N == 1)
        return out;
    for (const auto& [p, e] : factorize(N)) {
        const auto split = classify_prime(field, p);
        switch (split.kind) {
        case Splitting::Split: {
            const auto r = detail::roots_mod_p(field, p);
            out.push_back({{p, split, r.at(0)}, e});
            out.push_back({{p, split, r.at(1)}, e});
            break;
        }
        case Splitting::Inert:
            out.push_back({{p, split, 0}, e});
            break;
        case Splitting::Ramified:
            out.push_back({{p, split, detail::roots_mod_p(field, p).at(0)}, 2 * e});
            break;
        }
    }
    return out;
}

/// Whether x + y theta lies in P^k.
inline bool in_prime_power(const FieldData& field, std::int64_t x, std::int64_t y, const PrimeIdeal& P, int k)
{
    if (k <= 0)
        return true;
    const auto p = P.p;
    switch (P.split.kind) {
    case Splitting::Inert: {
        const auto pk = ipow(p, k);
        return x % pk == 0 && y % pk == 0;
    }
    case Splitting::Split: {
        const auto pk = ipow(p, k);
        const auto r = detail::hensel_lift(field, P.root, p, k);
        return mod(x + static_cast<std::int64_t>(static_cast<detail::i128>(y) * r % pk), pk) == 0;
    }
    case Splitting::Ramified: {
        const auto pm = ipow(p, k / 2);
        if (x % pm != 0 || y % pm != 0)
            return false;
        if (k % 2 == 0)
            return true;
        return mod(x / pm + (y / pm) * P.root, p) == 0;
    }
    }
    return false;
}

/// Number of roots of unity congruent to 1 modulo the ideal prod P_i^{k_i}.
inline int omega_ideal(const FieldData& field, const std::vector<IdealPower>& modulus)
{
    int count = 0;
    for (const auto& [x, y] : units(field)) {
        bool ok = true;
        for (const auto& f : modulus)
            ok = ok && in_prime_power(field, x - 1, y, f.prime, f.exponent);
        if (ok)
            ++count;
    }
    return count;
}

}  // namespace rci

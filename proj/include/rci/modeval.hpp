#pragma once

// Numerical evaluation of
//   Delta(tau)   = (2 pi i)^12 q prod_{n>=1} (1 - q^n)^24,
//   g_(r1,r2)(tau) = -q^{B2(r1)/2} e^{pi i r2 (r1 - 1)} (1 - q_z)
//                    prod_{n>=1} (1 - q^n q_z)(1 - q^n / q_z),   z = r1 tau + r2,
//   j(tau)       = E4(tau)^3 / (q prod (1 - q^n)^24),
// with q = e^{2 pi i tau} and q^x = e^{2 pi i x tau}.  Delta and j are always
// evaluated at a point of the standard fundamental domain; Delta picks up the
// weight-12 factor (c tau' + d)^12 of the reducing matrix.

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>

#include "rci/bigfloat.hpp"
#include "rci/errors.hpp"
#include "rci/exactmath.hpp"
#include "rci/matrix.hpp"
#include "rci/quadfield.hpp"

namespace rci {

inline constexpr Precision kMinPrecision = 64;
inline constexpr Precision kGuardBits = 32;

/// A point with strictly positive imaginary part.
class UpperHalfPoint {
public:
    explicit UpperHalfPoint(BigComplex tau) : tau_(std::move(tau))
    {
        if (tau_.imag().sign() <= 0)
            throw domain_error("point is not in the upper half-plane");
    }

    UpperHalfPoint(double re, double im, Precision prec) : UpperHalfPoint(BigComplex(re, im, prec)) {}

    [[nodiscard]] const BigComplex& value() const { return tau_; }
    [[nodiscard]] Precision prec() const { return tau_.prec(); }

private:
    BigComplex tau_;
};

inline BigComplex to_complex(const QuadPoint& p, Precision prec)
{
    BigFloat re(p.x(), prec);
    re /= BigFloat(p.z(), prec);
    BigFloat im(-p.radicand(), prec);
    im = sqrt(std::move(im));
    im *= BigFloat(p.y(), prec);
    im /= BigFloat(p.z(), prec);
    return {std::move(re), std::move(im)};
}

inline UpperHalfPoint to_point(const QuadPoint& p, Precision prec) { return UpperHalfPoint(to_complex(p, prec)); }

inline UpperHalfPoint to_point(const CMPoint& p, Precision prec) { return to_point(QuadPoint(p), prec); }

struct ReductionResult {
    BigComplex reduced;
    IntMat2 gamma;  ///< tau = gamma(reduced)
    BigComplex automorphy;  ///< c * reduced + d
};

namespace detail {

inline BigComplex apply(const IntMat2& m, const BigComplex& tau)
{
    const auto p = tau.prec();
    BigComplex num = tau, den = tau;
    num *= BigFloat(static_cast<long>(m.a), p);
    num += BigComplex(static_cast<long>(m.b), p);
    den *= BigFloat(static_cast<long>(m.c), p);
    den += BigComplex(static_cast<long>(m.d), p);
    return num / den;
}

inline BigComplex automorphy_factor(const IntMat2& m, const BigComplex& tau)
{
    auto r = tau;
    r *= BigFloat(static_cast<long>(m.c), tau.prec());
    r += BigComplex(static_cast<long>(m.d), tau.prec());
    return r;
}

}  // namespace detail

inline ReductionResult reduce_to_fundamental(const UpperHalfPoint& point)
{
    auto tau = point.value();
    const auto prec = tau.prec();
    IntMat2 gamma = IntMat2::identity();
    const BigFloat one(1L, prec);
    const auto slack = one - pow2(-static_cast<long>(prec / 2), prec);
    for (int iter = 0; iter < 100000; ++iter) {
        BigFloat n(prec);
        mpfr_rint(n.get(), tau.real().get(), MPFR_RNDN);
        const long shift = mpfr_get_si(n.get(), MPFR_RNDN);
        if (shift != 0) {
            tau -= BigComplex(shift, prec);
            gamma = gamma * IntMat2::translation(shift);
        }
        if (tau.norm() < slack) {
            tau = BigComplex(-1L, prec) / tau;
            gamma = gamma * IntMat2::inversion();
            continue;
        }
        auto autf = detail::automorphy_factor(gamma, tau);
        return {std::move(tau), gamma, std::move(autf)};
    }
    throw precision_error("reduce_to_fundamental: no convergence");
}

struct ExactReduction {
    QuadPoint reduced;
    IntMat2 gamma;  ///< tau = gamma(reduced)
};

/// Exact reduction of a quadratic point: |Re tau'| <= 1/2 and |tau'| >= 1.
inline ExactReduction reduce_exact(const QuadPoint& point)
{
    QuadPoint tau = point;
    IntMat2 gamma = IntMat2::identity();
    for (int iter = 0; iter < 100000; ++iter) {
        // n = round(x / z)
        BigInt n;
        const BigInt twice = 2 * tau.x() + tau.z();
        mpz_fdiv_q(n.get_mpz_t(), twice.get_mpz_t(), BigInt(2 * tau.z()).get_mpz_t());
        if (n != 0) {
            if (!n.fits_slong_p())
                throw domain_error("reduce_exact: translation out of range");
            const long shift = n.get_si();
            tau = tau.transformed(IntMat2::translation(-shift));
            gamma = gamma * IntMat2::translation(shift);
        }
        if (tau.norm() < 1) {
            tau = tau.transformed(IntMat2::inversion());
            gamma = gamma * IntMat2::inversion();
            continue;
        }
        return {tau, gamma};
    }
    throw domain_error("reduce_exact: no convergence");
}

namespace detail {

inline void check_precision(Precision prec)
{
    if (prec < kMinPrecision)
        throw config_error("precision must be at least 64 bits, got " + std::to_string(prec));
}

/// Number of terms n >= 1 needed so that |q|^(n - offset) < 2^-bits.
inline long series_terms(const BigFloat& im_tau, Precision bits, double offset = 0.0)
{
    const double y = im_tau.to_double();
    const double per_term = 2.0 * M_PI * y / std::log(2.0);  // -log2 |q|
    return static_cast<long>(std::ceil(static_cast<double>(bits) / per_term + offset)) + 2;
}

/// e^{2 pi i x} for complex x.
inline BigComplex exp_2pi_i(const BigComplex& x)
{
    const auto p = x.prec();
    auto two_pi = BigFloat::pi(p);
    two_pi *= 2L;
    // 2 pi i (a + b i) = -2 pi b + 2 pi a i
    return exp(BigComplex(-(two_pi * x.imag()), two_pi * x.real()));
}

/// prod_{n=1}^{terms} (1 - q^n)
inline BigComplex eta_product(const BigComplex& q, long terms)
{
    const auto p = q.prec();
    BigComplex prod(1L, p), qn = q;
    const BigComplex one(1L, p);
    for (long n = 1; n <= terms; ++n) {
        prod *= one - qn;
        qn *= q;
    }
    return prod;
}

/// Raw q-product for Delta, no reduction; `terms` overrides the truncation.
inline BigComplex delta_series(const BigComplex& tau, Precision prec, std::optional<long> terms = std::nullopt)
{
    const Precision wp = prec + kGuardBits;
    auto t = tau;
    t.widen(wp);
    const auto q = exp_2pi_i(t);
    const long m = terms.value_or(series_terms(t.imag(), wp));
    auto r = q * eta_product(q, m).pow(24);
    auto two_pi = BigFloat::pi(wp);
    two_pi *= 2L;
    // (2 pi i)^12 = (2 pi)^12
    BigFloat scale(1L, wp);
    for (int i = 0; i < 12; ++i)
        scale *= two_pi;
    r *= scale;
    return r;
}

inline BigComplex j_series(const BigComplex& tau, Precision prec, std::optional<long> terms = std::nullopt)
{
    const Precision wp = prec + kGuardBits;
    auto t = tau;
    t.widen(wp);
    const auto q = exp_2pi_i(t);
    const long m = terms.value_or(series_terms(t.imag(), wp));
    BigComplex e4(1L, wp), qn = q;
    for (long n = 1; n <= m; ++n) {
        long sigma3 = 0;
        for (long d = 1; d * d <= n; ++d) {
            if (n % d == 0) {
                sigma3 += d * d * d;
                const long e = n / d;
                if (e != d)
                    sigma3 += e * e * e;
            }
        }
        auto term = qn;
        term *= BigFloat(240L * sigma3, wp);
        e4 += term;
        qn *= q;
    }
    const auto disc = q * eta_product(q, m).pow(24);
    return e4.pow(3) / disc;
}

inline BigComplex round_to(BigComplex z, Precision prec)
{
    BigFloat re(prec), im(prec);
    mpfr_set(re.get(), z.real().get(), MPFR_RNDN);
    mpfr_set(im.get(), z.imag().get(), MPFR_RNDN);
    return {std::move(re), std::move(im)};
}

}  // namespace detail

inline BigComplex delta(const UpperHalfPoint& tau, Precision prec)
{
    detail::check_precision(prec);
    auto t = tau.value();
    t.widen(prec + kGuardBits);
    const auto red = reduce_to_fundamental(UpperHalfPoint(std::move(t)));
    auto v = detail::delta_series(red.reduced, prec);
    v *= red.automorphy.pow(12);
    return detail::round_to(std::move(v), prec);
}

/// Delta at an exact quadratic point, reduced without rounding error.
inline BigComplex delta(const QuadPoint& tau, Precision prec)
{
    detail::check_precision(prec);
    const Precision wp = prec + kGuardBits;
    const auto red = reduce_exact(tau);
    const auto t = to_complex(red.reduced, wp);
    auto v = detail::delta_series(t, wp);
    v *= detail::automorphy_factor(red.gamma, t).pow(12);
    return detail::round_to(std::move(v), prec);
}

inline BigComplex j_invariant(const UpperHalfPoint& tau, Precision prec)
{
    detail::check_precision(prec);
    auto t = tau.value();
    t.widen(prec + kGuardBits);
    const auto red = reduce_to_fundamental(UpperHalfPoint(std::move(t)));
    return detail::round_to(detail::j_series(red.reduced, prec), prec);
}

inline BigComplex j_invariant(const QuadPoint& tau, Precision prec)
{
    detail::check_precision(prec);
    const auto red = reduce_exact(tau);
    return detail::round_to(detail::j_series(to_complex(red.reduced, prec + kGuardBits), prec), prec);
}

/// Below this imaginary part the Siegel product is rejected.
inline constexpr double kMinSiegelImag = 0.05;

inline BigComplex siegel_g(const BigRational& r1, const BigRational& r2, const UpperHalfPoint& tau, Precision prec)
{
    detail::check_precision(prec);
    if (r1.get_den() == 1 && r2.get_den() == 1)
        throw domain_error("siegel_g: (r1, r2) must not be integral");
    if (tau.value().imag().to_double() < kMinSiegelImag)
        throw domain_error("siegel_g: imaginary part below the evaluation guard");

    const Precision wp = prec + kGuardBits;
    auto t = tau.value();
    t.widen(wp);
    const BigFloat r1f(r1, wp), r2f(r2, wp);

    const auto q = detail::exp_2pi_i(t);
    // z = r1 tau + r2
    auto z = t;
    z *= r1f;
    z += BigComplex(r2f, BigFloat(wp));
    const auto qz = detail::exp_2pi_i(z);
    const BigComplex one(1L, wp);
    const auto qz_inv = one / qz;

    // q^{B2(r1)/2} = e^{2 pi i (B2(r1)/2) tau}
    BigRational half_b2 = (r1 * r1 - r1 + BigRational(1, 6)) / 2;
    half_b2.canonicalize();
    auto lead_arg = t;
    lead_arg *= BigFloat(half_b2, wp);
    auto value = detail::exp_2pi_i(lead_arg);
    // e^{pi i r2 (r1 - 1)} = e^{2 pi i (r2 (r1 - 1) / 2)}
    BigRational phase = r2 * (r1 - 1) / 2;
    phase.canonicalize();
    value *= detail::exp_2pi_i(BigComplex(BigFloat(phase, wp), BigFloat(wp)));
    value *= one - qz;

    const double offset = std::abs(r1.get_d());
    const long terms = detail::series_terms(t.imag(), wp, offset);
    BigComplex qn = q;
    for (long n = 1; n <= terms; ++n) {
        value *= one - qn * qz;
        value *= one - qn * qz_inv;
        qn *= q;
    }
    return detail::round_to(-value, prec);
}

/// Fractional part in [0, 1).
inline BigRational fractional_part(const BigRational& x)
{
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    BigRational r = x - BigRational(fl);
    r.canonicalize();
    return r;
}

/// g_(r1,r2)(tau)^{12N} for (r1, r2) in (1/N)Z^2 - Z^2, computed from the
/// fractional parts of r1 and r2.
inline BigComplex siegel_g12N(const BigRational& r1, const BigRational& r2, std::int64_t N, const UpperHalfPoint& tau,
                              Precision prec)
{
    detail::check_precision(prec);
    if (N < 2)
        throw domain_error("siegel_g12N: N must be >= 2");
    const BigInt n(static_cast<long>(N));
    if (BigRational(r1 * n).get_den() != 1 || BigRational(r2 * n).get_den() != 1)
        throw domain_error("siegel_g12N: (r1, r2) must lie in (1/N)Z^2");
    const auto extra = static_cast<Precision>(std::ceil(std::log2(12.0 * static_cast<double>(N)))) + 8;
    const auto g = siegel_g(fractional_part(r1), fractional_part(r2), tau, prec + extra);
    return detail::round_to(g.pow(12 * N), prec);
}

}  // namespace rci

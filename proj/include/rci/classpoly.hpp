#pragma once

// Ring class invariants of the order of conductor N = prod p_k^{e_k}:
//   n = 1:  p^12 Delta(p^e theta) / Delta(p^{e-1} theta)
//   n >= 2: prod_{S subset {1..n}} Delta((N / N_S) theta)^{(-1)^#S},  N_S = prod_{k in S} p_k
// (or the classical j(N theta)), their Galois conjugates, and the monic
// integer polynomial they span.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "rci/bigfloat.hpp"
#include "rci/conditions.hpp"
#include "rci/errors.hpp"
#include "rci/exactmath.hpp"
#include "rci/modeval.hpp"
#include "rci/quadfield.hpp"
#include "rci/reciprocity.hpp"

namespace rci {

enum class InvariantKind { DeltaQuotient, ClassicalJ };

inline const char* to_string(InvariantKind k)
{
    return k == InvariantKind::DeltaQuotient ? "delta-quotient" : "j";
}

struct SubsetTerm {
    std::int64_t N_S = 1;
    int sign = 1;  ///< (-1)^#S
};

struct DeltaTerm {
    std::int64_t multiplier = 1;  ///< Delta(multiplier * tau)
    int exponent = 1;
};

struct InvariantSpec {
    InvariantKind kind = InvariantKind::DeltaQuotient;
    OrderSpec order;
    std::vector<SubsetTerm> subsets;  ///< n >= 2 only
    std::vector<DeltaTerm> terms;     ///< Delta factors (empty for ClassicalJ)
    std::int64_t prefactor_base = 1;  ///< invariant carries prefactor_base^12
};

inline InvariantSpec invariant_spec(const OrderSpec& order, InvariantKind kind = InvariantKind::DeltaQuotient)
{
    if (order.N < 2)
        throw domain_error("invariant_spec: conductor must be >= 2");
    InvariantSpec spec{kind, order, {}, {}, 1};
    if (kind == InvariantKind::ClassicalJ)
        return spec;
    const auto n = order.factors.size();
    if (n == 1) {
        const auto [p, e] = order.factors.front();
        spec.prefactor_base = p;
        spec.terms = {{ipow(p, e), 1}, {ipow(p, e - 1), -1}};
        return spec;
    }
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        std::int64_t ns = 1;
        int sign = 1;
        for (std::size_t k = 0; k < n; ++k)
            if ((mask >> k) & 1ULL) {
                ns *= order.factors[k].prime;
                sign = -sign;
            }
        spec.subsets.push_back({ns, sign});
        spec.terms.push_back({order.N / ns, sign});
    }
    return spec;
}

/// Human-readable formula, e.g. "Delta(6t)Delta(t)/Delta(2t)Delta(3t)".
inline std::string describe(const InvariantSpec& spec)
{
    auto arg = [](std::int64_t m) { return m == 1 ? std::string("t") : std::to_string(m) + "t"; };
    if (spec.kind == InvariantKind::ClassicalJ)
        return "j(" + arg(spec.order.N) + ")";
    std::string num, den;
    for (const auto& t : spec.terms)
        (t.exponent > 0 ? num : den) += "Delta(" + arg(t.multiplier) + ")";
    std::string pre = spec.prefactor_base > 1 ? std::to_string(spec.prefactor_base) + "^12*" : "";
    return pre + num + "/" + den;
}

/// The invariant's modular function evaluated at an exact point.
inline BigComplex evaluate_invariant(const InvariantSpec& spec, const QuadPoint& tau, Precision prec)
{
    const Precision wp = prec + 16;
    if (spec.kind == InvariantKind::ClassicalJ)
        return detail::round_to(j_invariant(tau.scaled(spec.order.N), wp), prec);
    BigComplex value(1L, wp);
    for (const auto& t : spec.terms) {
        const auto d = delta(tau.scaled(t.multiplier), wp);
        if (t.exponent > 0)
            value *= d;
        else
            value /= d;
    }
    if (spec.prefactor_base > 1) {
        BigInt p12;
        mpz_ui_pow_ui(p12.get_mpz_t(), static_cast<unsigned long>(spec.prefactor_base), 12);
        value *= BigFloat(p12, wp);
    }
    return detail::round_to(std::move(value), prec);
}

/// Value at theta; real up to rounding.
inline BigComplex invariant_value(const InvariantSpec& spec, Precision prec)
{
    detail::check_precision(prec);
    auto v = evaluate_invariant(spec, QuadPoint(theta_point(spec.order.field)), prec);
    auto ratio = abs(v.imag());
    const auto mag = v.abs();
    if (!mag.is_zero())
        ratio /= mag;
    if (ratio > pow2(-static_cast<long>(prec / 2), prec))
        throw precision_error("invariant value has a non-negligible imaginary part at " + std::to_string(prec) +
                              " bits");
    return v;
}

namespace detail {

template <typename F>
void parallel_for(std::size_t count, unsigned workers, F&& body)
{
    if (workers == 0)
        workers = std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next++; i < count; i = next++)
                    body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

}  // namespace detail

/// Conjugates over K, one per element of Gal(H_O/K): the invariant function
/// composed with the SL2(Z) lift of alpha * beta, evaluated at theta_k.
inline std::vector<BigComplex> conjugates(const InvariantSpec& spec, Precision prec,
                                          const BetaTable* overrides = nullptr, unsigned parallelism = 1)
{
    detail::check_precision(prec);
    const auto elements = galois_elements(spec.order.field, spec.order.N, overrides);
    std::vector<BigComplex> out(elements.size(), BigComplex(prec));
    detail::parallel_for(elements.size(), parallelism, [&](std::size_t i) {
        const auto& g = elements[i];
        const auto point = QuadPoint(g.cm_point).transformed(g.sl2_lift);
        out[i] = evaluate_invariant(spec, point, prec);
    });
    return out;
}

/// Monic polynomial with exact integer coefficients, highest degree first.
struct IntPolynomial {
    std::vector<BigInt> coefficients{BigInt(1)};

    [[nodiscard]] int degree() const { return static_cast<int>(coefficients.size()) - 1; }

    /// Coefficient of X^k.
    [[nodiscard]] const BigInt& coeff(int k) const { return coefficients.at(coefficients.size() - 1 - k); }

    [[nodiscard]] std::vector<std::string> to_strings() const
    {
        std::vector<std::string> out;
        for (const auto& c : coefficients)
            out.push_back(c.get_str());
        return out;
    }

    static IntPolynomial from_strings(const std::vector<std::string>& s)
    {
        IntPolynomial p;
        p.coefficients.clear();
        for (const auto& c : s)
            p.coefficients.emplace_back(c, 10);
        if (p.coefficients.empty() || p.coefficients.front() != 1)
            throw domain_error("polynomial must be monic");
        return p;
    }

    /// "X^7+234857X^6+...-117649"
    [[nodiscard]] std::string to_string() const
    {
        std::string s;
        const int n = degree();
        for (int i = 0; i <= n; ++i) {
            const auto& c = coefficients[static_cast<std::size_t>(i)];
            const int k = n - i;
            if (c == 0)
                continue;
            const bool neg = c < 0;
            const BigInt mag = abs(c);
            if (!s.empty() || neg)
                s += neg ? "-" : "+";
            if (mag != 1 || k == 0)
                s += mag.get_str();
            if (k >= 1)
                s += "X";
            if (k >= 2)
                s += "^" + std::to_string(k);
        }
        return s.empty() ? "0" : s;
    }

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;
};

/// prod (X - x_i) by a balanced product tree; coefficients highest degree first.
inline std::vector<BigComplex> expand_roots(const std::vector<BigComplex>& roots, Precision prec)
{
    using Poly = std::vector<BigComplex>;  // ascending powers
    auto mul = [prec](const Poly& a, const Poly& b) {
        Poly r(a.size() + b.size() - 1, BigComplex(prec));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i + j] += a[i] * b[j];
        return r;
    };
    std::vector<Poly> level;
    for (const auto& x : roots)
        level.push_back({-x, BigComplex(1L, prec)});
    if (level.empty())
        return {BigComplex(1L, prec)};
    while (level.size() > 1) {
        std::vector<Poly> next;
        for (std::size_t i = 0; i + 1 < level.size(); i += 2)
            next.push_back(mul(level[i], level[i + 1]));
        if (level.size() % 2 == 1)
            next.push_back(std::move(level.back()));
        level = std::move(next);
    }
    auto out = std::move(level.front());
    std::reverse(out.begin(), out.end());
    return out;
}

struct RoundingReport {
    double max_imag = 0.0;  ///< largest |Im| over coefficients
    double max_frac = 0.0;  ///< largest distance of Re to the nearest integer
    Precision prec_used = 0;
    int retries = 0;
    /// Pairs of conjugates closer than 2^{-prec/2} relative; reported, never merged.
    int near_duplicates = 0;
};

struct ClassPolyConfig {
    Precision precision_bits = 64;  ///< lower bound for the starting precision
    int tolerance_log2 = -32;
    int max_retries = 5;
    unsigned parallelism = 0;  ///< 0: hardware concurrency
    const BetaTable* beta_table = nullptr;

    void validate() const
    {
        if (precision_bits < kMinPrecision)
            throw config_error("precision_bits must be >= 64");
        if (max_retries < 1)
            throw config_error("max_retries must be >= 1");
        if (tolerance_log2 >= 0)
            throw config_error("tolerance_log2 must be negative");
    }
};

struct ClassPolyResult {
    IntPolynomial polynomial;
    RoundingReport report;
    std::vector<BigComplex> roots;  ///< conjugates at prec_used
};

inline Precision starting_precision(const InvariantSpec& spec, const ClassPolyConfig& config)
{
    const auto deg = ring_class_degree(spec.order);
    const auto heuristic = static_cast<Precision>(64 + 16 * deg + 8 * static_cast<long>(spec.terms.size()));
    return std::max(config.precision_bits, heuristic);
}

namespace detail {

inline int count_near_duplicates(const std::vector<BigComplex>& roots, Precision prec)
{
    int count = 0;
    const auto tol = pow2(-static_cast<long>(prec / 2), prec);
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            auto scale = roots[i].abs();
            if (scale < BigFloat(1L, prec))
                scale = BigFloat(1L, prec);
            if ((roots[i] - roots[j]).abs() < tol * scale)
                ++count;
        }
    return count;
}

struct Rounded {
    IntPolynomial poly;
    double max_imag = 0.0;
    double max_frac = 0.0;
    bool within(int tolerance_log2) const
    {
        const double tol = std::ldexp(1.0, tolerance_log2);
        return max_imag < tol && max_frac < tol;
    }
};

inline Rounded round_coefficients(const std::vector<BigComplex>& coeffs)
{
    Rounded r;
    r.poly.coefficients.clear();
    for (const auto& c : coeffs) {
        const auto z = c.real().round();
        const auto frac = abs(c.real() - BigFloat(z, c.prec())).to_double();
        const auto im = abs(c.imag()).to_double();
        r.max_frac = std::max(r.max_frac, frac);
        r.max_imag = std::max(r.max_imag, im);
        r.poly.coefficients.push_back(z);
    }
    return r;
}

}  // namespace detail

/// prod (X - x) over all conjugates, rounded to integers.  Precision starts at
/// starting_precision() and doubles on tolerance failure.
inline ClassPolyResult class_polynomial(const InvariantSpec& spec, const ClassPolyConfig& config = {})
{
    config.validate();
    Precision prec = starting_precision(spec, config);
    detail::Rounded last;
    for (int attempt = 0; attempt <= config.max_retries; ++attempt, prec *= 2) {
        auto roots = conjugates(spec, prec, config.beta_table, config.parallelism);
        auto rounded = detail::round_coefficients(expand_roots(roots, prec));
        if (rounded.within(config.tolerance_log2)) {
            RoundingReport rep{rounded.max_imag, rounded.max_frac, prec, attempt,
                               detail::count_near_duplicates(roots, prec)};
            return {std::move(rounded.poly), rep, std::move(roots)};
        }
        last = std::move(rounded);
    }
    std::ostringstream msg;
    msg << "class polynomial did not converge after " << config.max_retries
        << " retries (last precision " << prec / 2 << " bits): max |Im| = " << last.max_imag
        << ", max fractional residue = " << last.max_frac;
    throw nonconvergence_error(msg.str());
}

/// |prod_{t=1}^{N-1} g_(0,t/N)(tau)^12 - N^12 Delta(N tau)/Delta(tau)| / |rhs|.
inline BigFloat verify_siegel_delta(std::int64_t N, const UpperHalfPoint& tau, Precision prec)
{
    detail::check_precision(prec);
    if (N < 1)
        throw domain_error("verify_siegel_delta: N must be >= 1");
    if (N == 1)
        return BigFloat(prec);
    const Precision wp = prec + 16;
    BigComplex lhs(1L, wp);
    for (std::int64_t t = 1; t < N; ++t)
        lhs *= siegel_g(BigRational(0), BigRational(t, N), tau, wp).pow(12);

    auto ntau = tau.value();
    ntau.widen(wp);
    ntau *= BigFloat(static_cast<long>(N), wp);
    auto rhs = delta(UpperHalfPoint(ntau), wp) / delta(tau, wp);
    BigInt n12;
    mpz_ui_pow_ui(n12.get_mpz_t(), static_cast<unsigned long>(N), 12);
    rhs *= BigFloat(n12, wp);
    return relative_error(lhs, rhs);
}

/// Relative gap between prod_{gcd(t,N)=1} g_(0,t/N)(theta)^{12N} and
/// prod_S ((N/N_S)^12 Delta((N/N_S) theta) / Delta(theta))^{N (-1)^#S}.
inline BigFloat verify_norm_identity(const OrderSpec& order, Precision prec)
{
    detail::check_precision(prec);
    if (order.N < 2)
        throw domain_error("verify_norm_identity: N must be >= 2");
    const auto N = order.N;
    const Precision wp = prec + 16 + static_cast<Precision>(std::log2(static_cast<double>(N)) * 2);
    const QuadPoint theta(theta_point(order.field));
    const auto theta_c = to_point(theta, wp);

    BigComplex lhs(1L, wp);
    for (std::int64_t t = 1; t < N; ++t)
        if (std::gcd(t, N) == 1)
            lhs *= siegel_g12N(BigRational(0), BigRational(t, N), N, theta_c, wp);

    const auto d_theta = delta(theta, wp);
    BigComplex rhs(1L, wp);
    const auto n = order.factors.size();
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        std::int64_t ns = 1;
        int sign = 1;
        for (std::size_t k = 0; k < n; ++k)
            if ((mask >> k) & 1ULL) {
                ns *= order.factors[k].prime;
                sign = -sign;
            }
        const auto m = N / ns;
        if (m == 1)
            continue;  // 1^12 Delta(theta) / Delta(theta)
        auto factor = delta(theta.scaled(m), wp) / d_theta;
        BigInt m12;
        mpz_ui_pow_ui(m12.get_mpz_t(), static_cast<unsigned long>(m), 12);
        factor *= BigFloat(m12, wp);
        rhs *= factor.pow(N * sign);
    }
    return relative_error(lhs, rhs);
}

// Irreducibility.  The mod-p test is one-sided: an irreducible reduction
// proves irreducibility over Q, a reducible one proves nothing.

enum class Irreducibility { Irreducible, Inconclusive, Reducible };

inline const char* to_string(Irreducibility v)
{
    switch (v) {
    case Irreducibility::Irreducible:
        return "irreducible";
    case Irreducibility::Inconclusive:
        return "inconclusive";
    case Irreducibility::Reducible:
        return "reducible";
    }
    return "?";
}

namespace detail {

/// Dense polynomials over F_p, ascending powers, no trailing zeros.
using PolyFp = std::vector<std::int64_t>;

inline void trim(PolyFp& f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

inline PolyFp reduce_mod_p(const IntPolynomial& poly, std::int64_t p)
{
    PolyFp f;
    const BigInt P(static_cast<long>(p));
    for (auto it = poly.coefficients.rbegin(); it != poly.coefficients.rend(); ++it) {
        BigInt r;
        mpz_fdiv_r(r.get_mpz_t(), it->get_mpz_t(), P.get_mpz_t());
        f.push_back(r.get_si());
    }
    trim(f);
    return f;
}

inline PolyFp poly_mod(PolyFp a, const PolyFp& m, std::int64_t p)
{
    const auto inv_lead = mod_inverse(m.back(), p);
    while (a.size() >= m.size()) {
        const auto coef = a.back() * inv_lead % p;
        const auto shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i)
            a[shift + i] = mod(a[shift + i] - coef * m[i], p);
        trim(a);
    }
    return a;
}

inline PolyFp poly_mulmod(const PolyFp& a, const PolyFp& b, const PolyFp& m, std::int64_t p)
{
    if (a.empty() || b.empty())
        return {};
    PolyFp r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    trim(r);
    return poly_mod(std::move(r), m, p);
}

inline PolyFp poly_powmod(PolyFp base, std::int64_t e, const PolyFp& m, std::int64_t p)
{
    PolyFp r{1};
    base = poly_mod(std::move(base), m, p);
    while (e > 0) {
        if (e & 1)
            r = poly_mulmod(r, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

inline PolyFp poly_gcd(PolyFp a, PolyFp b, std::int64_t p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const auto inv = mod_inverse(a.back(), p);
        for (auto& c : a)
            c = c * inv % p;
    }
    return a;
}

inline PolyFp poly_sub_x(PolyFp h, std::int64_t p)
{
    if (h.size() < 2)
        h.resize(2, 0);
    h[1] = mod(h[1] - 1, p);
    trim(h);
    return h;
}

inline PolyFp derivative(const PolyFp& f, std::int64_t p)
{
    PolyFp d;
    for (std::size_t i = 1; i < f.size(); ++i)
        d.push_back(static_cast<std::int64_t>(i) % p * f[i] % p);
    trim(d);
    return d;
}

/// Degrees of the irreducible factors of a squarefree f mod p (distinct-degree
/// factorization), or nullopt when f mod p is not squarefree.
inline std::optional<std::vector<int>> factor_degrees_mod_p(const PolyFp& f0, std::int64_t p)
{
    const auto g = poly_gcd(f0, derivative(f0, p), p);
    if (g.size() > 1)
        return std::nullopt;
    std::vector<int> degrees;
    PolyFp f = f0;
    PolyFp h{0, 1};  // X
    for (int i = 1; 2 * i <= static_cast<int>(f.size()) - 1; ++i) {
        h = poly_powmod(h, p, f, p);
        const auto d = poly_gcd(f, poly_sub_x(h, p), p);
        const int dd = static_cast<int>(d.size()) - 1;
        if (dd > 0) {
            for (int k = 0; k < dd / i; ++k)
                degrees.push_back(i);
            // f /= d
            PolyFp q(f.size() - d.size() + 1, 0), r = f;
            for (std::size_t k = q.size(); k-- > 0;) {
                q[k] = r[k + d.size() - 1];
                for (std::size_t j = 0; j < d.size(); ++j)
                    r[k + j] = mod(r[k + j] - q[k] * d[j], p);
            }
            trim(q);
            f = std::move(q);
            h = poly_mod(h, f, p);
        }
    }
    if (f.size() > 1)
        degrees.push_back(static_cast<int>(f.size()) - 1);
    std::sort(degrees.begin(), degrees.end());
    return degrees;
}

}  // namespace detail

struct IrreducibilityResult {
    Irreducibility verdict = Irreducibility::Inconclusive;
    std::optional<std::int64_t> witness_prime;
};

/// Distinct-degree test: f mod p is irreducible iff gcd(X^{p^i} - X, f) = 1
/// for all i <= deg/2.
inline IrreducibilityResult irreducible_mod_p(const IntPolynomial& poly, const std::vector<std::int64_t>& primes)
{
    const int n = poly.degree();
    if (n <= 0)
        return {};
    for (const auto p : primes) {
        const auto f = detail::reduce_mod_p(poly, p);
        if (static_cast<int>(f.size()) - 1 != n)
            continue;
        if (n == 1)
            return {Irreducibility::Irreducible, p};
        detail::PolyFp h{0, 1};
        bool irreducible = true;
        for (int i = 1; 2 * i <= n; ++i) {
            h = detail::poly_powmod(h, p, f, p);
            if (detail::poly_gcd(f, detail::poly_sub_x(h, p), p).size() > 1) {
                irreducible = false;
                break;
            }
        }
        if (irreducible)
            return {Irreducibility::Irreducible, p};
    }
    return {};
}

inline std::vector<std::int64_t> first_odd_primes(int count)
{
    std::vector<std::int64_t> out;
    for (std::int64_t p = 3; static_cast<int>(out.size()) < count; p += 2)
        if (is_prime(p))
            out.push_back(p);
    return out;
}

struct CertificationResult {
    Irreducibility verdict = Irreducibility::Inconclusive;
    std::vector<int> allowed_sizes;    ///< factor degrees compatible with every mod-p pattern
    std::size_t subsets_checked = 0;
    std::optional<IntPolynomial> factor;  ///< exact factor when reducible
};

/// Irreducibility over Q from the numerical roots.  Factor degrees are first
/// restricted to those compatible with the factorization patterns mod each
/// prime; then every subset of roots of an allowed size is expanded.  A true
/// integer factor would round within the root error bound, so an empty search
/// certifies irreducibility provided prec exceeds log2 prod(1 + |x_i|) + 40.
inline CertificationResult certify_irreducible(const IntPolynomial& poly, const std::vector<BigComplex>& roots,
                                               const std::vector<std::int64_t>& primes,
                                               std::size_t max_subsets = 2'000'000)
{
    CertificationResult res;
    const int n = poly.degree();
    if (n <= 1 || static_cast<int>(roots.size()) != n) {
        if (n == 1)
            res.verdict = Irreducibility::Irreducible;
        return res;
    }
    const auto prec = roots.front().prec();

    // subset sums achievable in every mod-p pattern
    std::vector<bool> allowed(static_cast<std::size_t>(n) + 1, true);
    for (const auto p : primes) {
        const auto f = detail::reduce_mod_p(poly, p);
        if (static_cast<int>(f.size()) - 1 != n)
            continue;
        const auto degs = detail::factor_degrees_mod_p(f, p);
        if (!degs)
            continue;
        std::vector<bool> reach(static_cast<std::size_t>(n) + 1, false);
        reach[0] = true;
        for (const int d : *degs)
            for (int s = n; s >= d; --s)
                if (reach[static_cast<std::size_t>(s - d)])
                    reach[static_cast<std::size_t>(s)] = true;
        for (int s = 0; s <= n; ++s)
            allowed[static_cast<std::size_t>(s)] = allowed[static_cast<std::size_t>(s)] && reach[static_cast<std::size_t>(s)];
    }
    for (int k = 1; 2 * k <= n; ++k)
        if (allowed[static_cast<std::size_t>(k)])
            res.allowed_sizes.push_back(k);
    if (res.allowed_sizes.empty()) {
        res.verdict = Irreducibility::Irreducible;
        return res;
    }

    // error budget
    BigFloat mahler(1L, prec);
    for (const auto& x : roots)
        mahler *= BigFloat(1L, prec) + x.abs();
    const double log_m = log2(mahler).to_double();
    if (static_cast<double>(prec) < log_m + std::log2(static_cast<double>(n)) + 40.0)
        return res;
    const double tol = std::ldexp(1.0, -20);

    for (const int k : res.allowed_sizes) {
        std::vector<int> idx(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            idx[static_cast<std::size_t>(i)] = i;
        while (true) {
            if (++res.subsets_checked > max_subsets) {
                res.verdict = Irreducibility::Inconclusive;
                return res;
            }
            std::vector<BigComplex> sub;
            for (const int i : idx)
                sub.push_back(roots[static_cast<std::size_t>(i)]);
            const auto rounded = detail::round_coefficients(expand_roots(sub, prec));
            if (rounded.max_frac < tol && rounded.max_imag < tol) {
                // exact check: does the candidate divide poly in Z[X]?
                auto rem = poly.coefficients;
                const auto& g = rounded.poly.coefficients;
                for (std::size_t i = 0; i + g.size() <= rem.size(); ++i) {
                    const BigInt q = rem[i];
                    for (std::size_t j = 0; j < g.size(); ++j)
                        rem[i + j] -= q * g[j];
                }
                const bool divides = std::all_of(rem.begin(), rem.end(), [](const BigInt& c) { return c == 0; });
                if (divides) {
                    res.verdict = Irreducibility::Reducible;
                    res.factor = rounded.poly;
                    return res;
                }
            }
            int pos = k - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos)
                --pos;
            if (pos < 0)
                break;
            ++idx[static_cast<std::size_t>(pos)];
            for (int i = pos + 1; i < k; ++i)
                idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
        }
    }
    res.verdict = Irreducibility::Irreducible;
    return res;
}

}  // namespace rci

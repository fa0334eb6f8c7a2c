#pragma once

// Degree bookkeeping for the tower K subset H subset H_O subset K_(N), and the
// two sufficient conditions under which the Delta-quotient invariant of an
// order is known to generate its ring class field.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rci/errors.hpp"
#include "rci/exactmath.hpp"
#include "rci/quadfield.hpp"

namespace rci {

/// The order of conductor N in K.
struct OrderSpec {
    FieldData field;
    std::int64_t N = 1;
    Factorization factors;
    std::vector<SplitType> splits;  ///< aligned with factors
};

inline OrderSpec make_order(const FieldData& field, std::int64_t N)
{
    if (N < 1)
        throw domain_error("conductor must be >= 1, got " + std::to_string(N));
    OrderSpec o{field, N, {}, {}};
    if (N >= 2) {
        o.factors = factorize(N);
        for (const auto& pe : o.factors)
            o.splits.push_back(classify_prime(field, pe.prime));
    }
    return o;
}

inline OrderSpec make_order(std::int64_t d_K, std::int64_t N) { return make_order(field_data(d_K), N); }

/// [H_O : K] = h_K N / (O_K^* : O^*) prod_{p | N} (1 - (d_K/p)/p).
inline std::int64_t ring_class_degree(const OrderSpec& o)
{
    if (o.N == 1)
        return o.field.h_K;
    std::int64_t deg = o.field.h_K;
    for (const auto& [p, e] : o.factors)
        deg *= ipow(p, e - 1) * (p - kronecker(o.field.d_K, p));
    const auto unit_index = o.field.omega_K / 2;
    if (deg % unit_index != 0)
        throw domain_error("ring_class_degree: non-integral degree");
    return deg / unit_index;
}

/// Euler function of N O_K.
inline std::int64_t ideal_phi_of(const std::vector<IdealPower>& f)
{
    std::int64_t phi = 1;
    for (const auto& ip : f)
        phi *= ideal_phi(ip.prime.p, ip.prime.split, ip.exponent);
    return phi;
}

/// [K_(N) : K] = h_K phi(N O_K) omega(N O_K) / omega_K.
inline std::int64_t ray_class_degree(const OrderSpec& o)
{
    const auto f = ideal_factorization(o.field, o.N);
    const auto num = o.field.h_K * ideal_phi_of(f) * omega_f(o.field, o.N);
    if (num % o.field.omega_K != 0)
        throw domain_error("ray_class_degree: non-integral degree");
    return num / o.field.omega_K;
}

/// #Gal(K_(N)/H_O) = omega(N O_K) phi(N) / 2.
inline std::int64_t gal_KN_HO_size(const OrderSpec& o)
{
    if (o.N < 2)
        throw domain_error("gal_KN_HO_size: N must be >= 2");
    return omega_f(o.field, o.N) * euler_phi(o.N) / 2;
}

struct EpsilonPair {
    PrimeIdeal prime;
    int exponent = 1;
    std::int64_t epsilon = 1;      ///< [K_f : K_{P_k^{e_k}}]
    std::int64_t epsilon_hat = 1;  ///< [K_f : K_{f P_k^{-e_k}}]
};

/// Relative degrees epsilon_k, epsilon-hat_k over the prime ideal powers of
/// f = N O_K (a split rational prime yields two entries).
inline std::vector<EpsilonPair> epsilon_values(const OrderSpec& o)
{
    const auto f = ideal_factorization(o.field, o.N);
    const auto omega_full = omega_ideal(o.field, f);
    const auto phi_full = ideal_phi_of(f);

    std::vector<EpsilonPair> out;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const auto phi_k = ideal_phi(f[k].prime.p, f[k].prime.split, f[k].exponent);
        std::vector<IdealPower> others;
        for (std::size_t l = 0; l < f.size(); ++l)
            if (l != k)
                others.push_back(f[l]);
        const auto omega_others = omega_ideal(o.field, others);
        const auto omega_k = omega_ideal(o.field, {f[k]});

        const auto hat_num = phi_k * omega_full;
        const auto eps_num = phi_full * omega_full;
        const auto eps_den = phi_k * omega_k;
        if (hat_num % omega_others != 0 || eps_num % eps_den != 0)
            throw domain_error("epsilon_values: non-integral relative degree");
        out.push_back({f[k].prime, f[k].exponent, eps_num / eps_den, hat_num / omega_others});
    }
    return out;
}

struct PrimeConditionEntry {
    std::int64_t p = 2;
    int e = 1;
    SplitType split;
    bool odd = false;
    bool inert_or_ramified = false;
    bool exponent_ok = false;  ///< e + 1 > 2 / r
};

struct PrimeConditionResult {
    bool applicable = false;
    std::vector<PrimeConditionEntry> primes;
    bool gcd_ok = false;
};

/// Odd primes, each inert or ramified, with e_k + 1 > 2/r_k and the gcd side
/// condition (gcd(p_1, omega_K) = 1 for one prime; gcd(prod p_k,
/// prod (p_k^{2/r_k} - 1)) = 1 otherwise).
inline PrimeConditionResult check_prime_condition(const OrderSpec& o)
{
    if (o.N < 2)
        throw domain_error("check_prime_condition: N must be >= 2");
    PrimeConditionResult res;
    bool all = true;
    for (std::size_t k = 0; k < o.factors.size(); ++k) {
        const auto [p, e] = o.factors[k];
        const auto split = o.splits[k];
        const auto r = split.ramification();
        PrimeConditionEntry d{p, e, split, p % 2 == 1, split.kind != Splitting::Split, (e + 1) * r > 2};
        all = all && d.odd && d.inert_or_ramified && d.exponent_ok;
        res.primes.push_back(d);
    }
    if (o.factors.size() == 1) {
        res.gcd_ok = std::gcd(o.factors[0].prime, static_cast<std::int64_t>(o.field.omega_K)) == 1;
    } else {
        BigInt prod_p = 1, prod_q = 1;
        for (std::size_t k = 0; k < o.factors.size(); ++k) {
            const auto p = o.factors[k].prime;
            prod_p *= BigInt(static_cast<long>(p));
            prod_q *= BigInt(static_cast<long>(ipow(p, 2 / o.splits[k].ramification()) - 1));
        }
        res.gcd_ok = gcd(prod_p, prod_q) == 1;
    }
    res.applicable = all && res.gcd_ok;
    return res;
}

struct InequalityConditionResult {
    bool applicable = false;
    BigRational lhs;
};

/// 4 sum_split 1/((s-1) s^(u-1)) + 2 sum_inert 1/((q+1) q^(v-1))
///   + 2 sum_ramified 1/r^w  <  1, evaluated exactly.
inline InequalityConditionResult check_inequality_condition(const OrderSpec& o)
{
    if (o.field.d_K == -3 || o.field.d_K == -4)
        throw not_applicable_error("the inequality criterion excludes Q(sqrt(-1)) and Q(sqrt(-3))");
    if (o.N < 2)
        throw domain_error("check_inequality_condition: N must be >= 2");
    BigRational lhs = 0;
    for (std::size_t k = 0; k < o.factors.size(); ++k) {
        const auto [p, e] = o.factors[k];
        const BigInt pe1(static_cast<long>(ipow(p, e - 1)));
        switch (o.splits[k].kind) {
        case Splitting::Split:
            lhs += BigRational(4, BigInt(static_cast<long>(p - 1)) * pe1);
            break;
        case Splitting::Inert:
            lhs += BigRational(2, BigInt(static_cast<long>(p + 1)) * pe1);
            break;
        case Splitting::Ramified:
            lhs += BigRational(2, BigInt(static_cast<long>(ipow(p, e))));
            break;
        }
        lhs.canonicalize();
    }
    return {lhs < 1, lhs};
}

struct ConditionReport {
    bool prime_condition_holds = false;
    bool inequality_condition_holds = false;
    /// Empty when the inequality criterion does not apply to the field.
    std::optional<BigRational> lhs_inequality;
    std::int64_t ring_class_degree = 1;
    std::int64_t ray_class_degree = 1;
    std::vector<EpsilonPair> epsilon;
    std::int64_t gal_KN_HO_size = 1;
    PrimeConditionResult prime_condition;

    /// Neither sufficient condition holds; computation proceeds, but the
    /// generator property is unproven.
    [[nodiscard]] bool warning() const { return !prime_condition_holds && !inequality_condition_holds; }
};

inline ConditionReport condition_report(const OrderSpec& o)
{
    ConditionReport r;
    r.prime_condition = check_prime_condition(o);
    r.prime_condition_holds = r.prime_condition.applicable;
    if (o.field.d_K != -3 && o.field.d_K != -4) {
        const auto ineq = check_inequality_condition(o);
        r.inequality_condition_holds = ineq.applicable;
        r.lhs_inequality = ineq.lhs;
    }
    r.ring_class_degree = ring_class_degree(o);
    r.ray_class_degree = ray_class_degree(o);
    r.epsilon = epsilon_values(o);
    r.gal_KN_HO_size = gal_KN_HO_size(o);
    return r;
}

}  // namespace rci

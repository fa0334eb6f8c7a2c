#pragma once

// Matrix side of Shimura reciprocity at level N.  Elements of
//   W_{N,theta} = { (t - B s, -C s; s, t) in GL2(Z/N) }
// act on level-N functions; modulo the scalar matrices (and the kernel of the
// reciprocity map) they enumerate Gal(H_O/H).  Each group element is written
// as (1 0; 0 d) * gamma with gamma in SL2(Z/N); for functions with rational
// Fourier coefficients only gamma matters, acting through an integral lift.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rci/errors.hpp"
#include "rci/exactmath.hpp"
#include "rci/matrix.hpp"
#include "rci/quadfield.hpp"

namespace rci {

inline MatModN w_matrix(const FieldData& field, std::int64_t t, std::int64_t s, std::int64_t N)
{
    return {t - field.B_theta * s, -field.C_theta * s, s, t, N};
}

/// All invertible elements of W_{N,theta}, in lexicographic (t, s) order.
inline std::vector<MatModN> w_group_elements(const FieldData& field, std::int64_t N)
{
    if (N < 2)
        throw domain_error("w_group_elements: N must be >= 2");
    std::vector<MatModN> out;
    for (std::int64_t t = 0; t < N; ++t)
        for (std::int64_t s = 0; s < N; ++s) {
            auto m = w_matrix(field, t, s, N);
            if (m.is_invertible())
                out.push_back(m);
        }
    return out;
}

/// Kernel of W_{N,theta} -> Gal(K_(N)/H).
inline std::vector<MatModN> reciprocity_kernel(const FieldData& field, std::int64_t N)
{
    std::vector<MatModN> base{MatModN::identity(N)};
    if (field.d_K == -4)
        base.emplace_back(0, -1, 1, 0, N);
    else if (field.d_K == -3) {
        base.emplace_back(-1, -1, 1, 0, N);
        base.emplace_back(0, -1, 1, 1, N);
    }
    std::vector<MatModN> out;
    for (const auto& m : base) {
        out.push_back(m);
        out.push_back(m.negated());
    }
    return out;
}

namespace detail {

inline std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t> key(const MatModN& m)
{
    return {m.a(), m.b(), m.c(), m.d()};
}

/// The subgroup generated by the reciprocity kernel and the scalars diag(t, t).
inline std::vector<MatModN> coset_subgroup(const FieldData& field, std::int64_t N)
{
    std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>> seen;
    std::vector<MatModN> out;
    for (const auto& k : reciprocity_kernel(field, N))
        for (std::int64_t t = 1; t < N; ++t) {
            if (std::gcd(t, N) != 1)
                continue;
            auto m = k * MatModN::scalar(t, N);
            if (seen.insert(key(m)).second)
                out.push_back(m);
        }
    return out;
}

}  // namespace detail

/// One representative per class of W_{N,theta} modulo kernel x scalars: the
/// lexicographically smallest (t, s) in each class.  These index Gal(H_O/H).
inline std::vector<MatModN> gal_HO_H_cosets(const FieldData& field, std::int64_t N)
{
    const auto sub = detail::coset_subgroup(field, N);
    std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>> covered;
    std::vector<MatModN> reps;
    for (const auto& w : w_group_elements(field, N)) {
        if (covered.count(detail::key(w)) != 0)
            continue;
        reps.push_back(w);
        for (const auto& h : sub)
            covered.insert(detail::key(w * h));
    }
    return reps;
}

struct GNDecomposition {
    std::int64_t d = 1;  ///< alpha = (1 0; 0 d) * gamma_bar
    MatModN gamma_bar;
};

inline GNDecomposition decompose_GN_SL2(const MatModN& alpha)
{
    const auto N = alpha.modulus();
    const auto d = alpha.det();
    if (std::gcd(d, N) != 1)
        throw domain_error("decompose_GN_SL2: determinant not invertible mod N");
    const auto dinv = mod_inverse(d, N);
    return {d, MatModN(1, 0, 0, dinv, N) * alpha};
}

/// An SL2(Z) matrix congruent to gamma_bar mod N.  The bottom row is moved to
/// a coprime pair of small representatives, the top row solved by extended
/// Euclid and then shifted by a multiple of the bottom row to fix its residue.
inline IntMat2 lift_sl2(const MatModN& gamma_bar)
{
    const auto N = gamma_bar.modulus();
    if (gamma_bar.det() != 1 % N)
        throw domain_error("lift_sl2: determinant is not 1 mod N");
    auto symmetric = [N](std::int64_t x) {
        x = mod(x, N);
        return 2 * x > N ? x - N : x;
    };

    std::int64_t c = symmetric(gamma_bar.c());
    const std::int64_t d0 = symmetric(gamma_bar.d());
    // gcd(0, d) = 1 needs d = +-1; otherwise take c = N
    if (c == 0 && d0 != 1 && d0 != -1)
        c = N;
    std::int64_t d = 0;
    bool found = false;
    for (std::int64_t k = 0; k < 4 * N * N + 64 && !found; ++k) {
        for (const std::int64_t sign : {1, -1}) {
            const auto cand = d0 + sign * k * N;
            if (std::gcd(c, cand) == 1) {
                d = cand;
                found = true;
                break;
            }
            if (k == 0)
                break;
        }
    }
    if (!found)
        throw domain_error("lift_sl2: no coprime bottom row found");

    // a d - b c = 1
    const auto [g, x, y] = ext_gcd(d, c);
    (void)g;
    std::int64_t a = x, b = -y;
    // (alpha - a, beta - b) = k (c, d) mod N
    const auto k = mod((gamma_bar.b() - b) * a - (gamma_bar.a() - a) * b, N);
    a += k * c;
    b += k * d;
    // shift by multiples of N (c, d) to keep entries small
    if (c != 0) {
        const double m = -static_cast<double>(a) / static_cast<double>(N * c);
        const auto mi = static_cast<std::int64_t>(std::llround(m));
        a += mi * N * c;
        b += mi * N * d;
    }
    return {a, b, c, d};
}

/// Representative of a class of Cl(O_K): a reduced form, its CM point, and
/// the matrix through which it acts on level-N functions.
struct FormClassDatum {
    QuadForm form;
    IntMat2 beta;
    CMPoint point;
};

struct BetaEntry {
    QuadForm form;
    IntMat2 beta;
};

/// Galois data for fields with class number > 1, keyed by (d_K, N).
using BetaTable = std::map<std::pair<std::int64_t, std::int64_t>, std::vector<BetaEntry>>;

/// Data shipped with the library.
inline const BetaTable& bundled_beta_table()
{
    static const BetaTable table{
        {{-20, 6}, {{{1, 0, 5}, {1, 0, 0, 1}}, {{2, 2, 3}, {1, 5, 3, 2}}}},
    };
    return table;
}

/// Gal(H/K) as pairs (beta_k, theta_k).  Class number one gives the single
/// pair (identity, theta); otherwise the entry comes from `overrides` or the
/// bundled table.
inline std::vector<FormClassDatum> gal_H_K_data(const FieldData& field, std::int64_t N,
                                                const BetaTable* overrides = nullptr)
{
    if (field.h_K == 1)
        return {{field.forms.front(), IntMat2::identity(), theta_point(field)}};

    const std::vector<BetaEntry>* entries = nullptr;
    const auto key = std::pair{field.d_K, N};
    if (overrides != nullptr) {
        if (auto it = overrides->find(key); it != overrides->end())
            entries = &it->second;
    }
    if (entries == nullptr) {
        if (auto it = bundled_beta_table().find(key); it != bundled_beta_table().end())
            entries = &it->second;
    }
    if (entries == nullptr)
        throw unsupported_field_error("class number " + std::to_string(field.h_K) + " for d_K = " +
                                      std::to_string(field.d_K) + " and no Galois data for N = " + std::to_string(N) +
                                      "; supply a table with one {form, beta} entry per reduced form (--beta-table)");

    if (static_cast<int>(entries->size()) != field.h_K)
        throw domain_error("Galois data for d_K = " + std::to_string(field.d_K) + " has " +
                           std::to_string(entries->size()) + " entries, expected h_K = " + std::to_string(field.h_K));
    std::vector<FormClassDatum> out;
    for (const auto& e : *entries) {
        if (e.form.discriminant() != field.d_K || !e.form.is_reduced())
            throw domain_error("Galois data contains a form that is not reduced of discriminant d_K");
        if (std::gcd(mod(e.beta.det(), N), N) != 1)
            throw domain_error("Galois data contains a matrix that is not invertible mod N");
        out.push_back({e.form, e.beta, cm_point(e.form, field)});
    }
    return out;
}

/// One element of Gal(H_O/K): the coset representative alpha, the form-class
/// datum, the G_N * SL2 decomposition of alpha * beta and an SL2(Z) lift.
struct GaloisElement {
    MatModN alpha;
    IntMat2 beta;
    CMPoint cm_point;
    std::int64_t d = 1;
    MatModN gamma_bar;
    IntMat2 sl2_lift;
};

inline std::vector<GaloisElement> galois_elements(const FieldData& field, std::int64_t N,
                                                  const BetaTable* overrides = nullptr)
{
    const auto classes = gal_H_K_data(field, N, overrides);
    std::vector<GaloisElement> out;
    for (const auto& alpha : gal_HO_H_cosets(field, N)) {
        for (const auto& cls : classes) {
            const auto prod = alpha * MatModN(cls.beta, N);
            const auto dec = decompose_GN_SL2(prod);
            out.push_back({alpha, cls.beta, cls.point, dec.d, dec.gamma_bar, lift_sl2(dec.gamma_bar)});
        }
    }
    return out;
}

}  // namespace rci

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "rci/conditions.hpp"
#include "rci/errors.hpp"
#include "rci/reciprocity.hpp"

using namespace rci;

namespace {

std::vector<std::int64_t> test_fields() { return {-3, -4, -7, -8, -11, -15, -19, -20, -23, -24, -39, -43, -56, -84}; }

bool in_subgroup(const FieldData& F, const MatModN& m)
{
    for (const auto& s : detail::coset_subgroup(F, m.modulus()))
        if (s == m)
            return true;
    return false;
}

bool congruent_up_to_sign(const IntMat2& g, const MatModN& m)
{
    const auto N = m.modulus();
    const MatModN gm(g.a, g.b, g.c, g.d, N);
    return gm == m || gm == m.negated();
}

}  // namespace

TEST(WGroup, CountsMatchUnitsOfResidueRing)
{
    EXPECT_EQ(w_group_elements(field_data(-7), 7).size(), 42U);
    for (const auto d : test_fields()) {
        const auto F = field_data(d);
        for (std::int64_t N = 2; N <= 30; ++N) {
            const auto W = w_group_elements(F, N);
            ASSERT_EQ(static_cast<std::int64_t>(W.size()), oracle::unit_count(F.B_theta, F.C_theta, N)) << d << " " << N;
            const auto f = ideal_factorization(F, N);
            ASSERT_EQ(static_cast<std::int64_t>(W.size()), ideal_phi_of(f)) << d << " " << N;
            std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>> seen;
            for (const auto& m : W)
                ASSERT_TRUE(seen.insert(detail::key(m)).second);
            ASSERT_NE(std::find(W.begin(), W.end(), MatModN::identity(N)), W.end());
        }
    }
}

TEST(WGroup, ModTwoPattern)
{
    // det = t^2 + 5 s^2 = t + s mod 2
    for (const auto& m : w_group_elements(field_data(-20), 2)) {
        EXPECT_EQ((m.d() + m.c()) % 2, 1) << m;
    }
    EXPECT_EQ(w_group_elements(field_data(-20), 2).size(), 2U);
}

TEST(Kernel, SpecialFields)
{
    EXPECT_EQ(reciprocity_kernel(field_data(-7), 7).size(), 2U);
    EXPECT_EQ(reciprocity_kernel(field_data(-4), 5).size(), 4U);
    EXPECT_EQ(reciprocity_kernel(field_data(-3), 5).size(), 6U);
    for (const auto& k : reciprocity_kernel(field_data(-3), 7))
        EXPECT_EQ(k.det(), 1);
}

TEST(Cosets, ExampleCounts)
{
    EXPECT_EQ(gal_HO_H_cosets(field_data(-7), 7).size(), 7U);
    EXPECT_EQ(gal_HO_H_cosets(field_data(-20), 6).size(), 4U);
    EXPECT_EQ(gal_HO_H_cosets(field_data(-8), 9).size(), 6U);
}

TEST(Cosets, SameClassesAsPublishedRepresentatives)
{
    const auto F = field_data(-20);
    const std::vector<MatModN> published{MatModN(1, 0, 0, 1, 6), MatModN(0, 1, 1, 0, 6), MatModN(2, 3, 3, 2, 6),
                                         MatModN(3, 2, 2, 3, 6)};
    const auto ours = gal_HO_H_cosets(F, 6);
    for (const auto& p : published) {
        int matches = 0;
        for (const auto& a : ours)
            if (in_subgroup(F, p * a.inverse()))
                ++matches;
        EXPECT_EQ(matches, 1) << p;
    }
}

TEST(Cosets, PairwiseDistinctAndComplete)
{
    for (const auto d : test_fields()) {
        const auto F = field_data(d);
        for (std::int64_t N = 2; N <= 30; ++N) {
            const auto reps = gal_HO_H_cosets(F, N);
            for (std::size_t i = 0; i < reps.size(); ++i)
                for (std::size_t j = i + 1; j < reps.size(); ++j) {
                    const auto q = reps[i] * reps[j].inverse();
                    ASSERT_FALSE(in_subgroup(F, q)) << d << " " << N;
                    if (d != -3 && d != -4) {
                        ASSERT_FALSE(q.b() == 0 && q.c() == 0 && q.a() == q.d()) << d << " " << N;
                    }
                }
            ASSERT_EQ(static_cast<std::int64_t>(reps.size()) * F.h_K, ring_class_degree(make_order(F, N)))
                << d << " " << N;
        }
    }
}

TEST(Cosets, LexicographicallySmallestRepresentatives)
{
    const auto F = field_data(-7);
    const auto reps = gal_HO_H_cosets(F, 7);
    // the scalar class is represented by (t, s) = (1, 0); (0, s) classes sort first
    EXPECT_NE(std::find(reps.begin(), reps.end(), MatModN::identity(7)), reps.end());
    EXPECT_EQ(reps.front().d(), 0);
    for (const auto& r : reps)
        for (const auto& w : w_group_elements(F, 7))
            if (in_subgroup(F, w * r.inverse())) {
                // (t, s) is recovered from the bottom row (s, t)
                ASSERT_LE(std::pair(r.d(), r.c()), std::pair(w.d(), w.c()));
            }
}

TEST(Decompose, Examples)
{
    const auto id = decompose_GN_SL2(MatModN::identity(7));
    EXPECT_EQ(id.d, 1);
    EXPECT_EQ(id.gamma_bar, MatModN::identity(7));

    const auto s = decompose_GN_SL2(MatModN(2, 0, 0, 2, 7));
    EXPECT_EQ(s.d, 4);
    EXPECT_EQ(s.gamma_bar, MatModN(2, 0, 0, 4, 7));
    EXPECT_EQ(s.gamma_bar.det(), 1);

    EXPECT_THROW(decompose_GN_SL2(MatModN(2, 0, 0, 3, 6)), domain_error);
}

TEST(Decompose, PublishedElementForSeven)
{
    // W element (t, s) = (2, 1) for d_K = -7 is diag(1, 4) * (-13 -16; 9 11) mod 7
    const auto alpha = w_matrix(field_data(-7), 2, 1, 7);
    const auto dec = decompose_GN_SL2(alpha);
    EXPECT_EQ(dec.d, 4);
    const auto lift = lift_sl2(dec.gamma_bar);
    EXPECT_EQ(lift.det(), 1);
    EXPECT_TRUE(congruent_up_to_sign(IntMat2{-13, -16, 9, 11}, MatModN(lift.a, lift.b, lift.c, lift.d, 7)));
}

TEST(Lift, AlreadyIntegral)
{
    EXPECT_EQ(lift_sl2(MatModN(0, 6, 1, 0, 7)), (IntMat2{0, -1, 1, 0}));
    EXPECT_EQ(lift_sl2(MatModN::identity(5)), IntMat2::identity());
}

TEST(Lift, RejectsWrongDeterminant)
{
    EXPECT_THROW(lift_sl2(MatModN(2, 0, 0, 2, 7)), domain_error);
}

TEST(Lift, RoundTripForAllGroupElements)
{
    for (const auto d : test_fields()) {
        const auto F = field_data(d);
        for (std::int64_t N = 2; N <= 30; ++N)
            for (const auto& alpha : w_group_elements(F, N)) {
                const auto dec = decompose_GN_SL2(alpha);
                const auto lift = lift_sl2(dec.gamma_bar);
                ASSERT_EQ(lift.det(), 1);
                const auto back = MatModN(1, 0, 0, dec.d, N) * MatModN(lift.a, lift.b, lift.c, lift.d, N);
                ASSERT_TRUE(back == alpha || back == alpha.negated()) << alpha;
                ASSERT_LE(std::max({std::abs(lift.a), std::abs(lift.b), std::abs(lift.c), std::abs(lift.d)}),
                          4 * N * N);
            }
    }
}

TEST(Lift, RandomSL2ModN)
{
    std::mt19937_64 rng(99);
    for (std::int64_t N = 2; N <= 60; ++N) {
        std::uniform_int_distribution<std::int64_t> r(0, N - 1);
        for (int i = 0; i < 50; ++i) {
            const MatModN m(r(rng), r(rng), r(rng), r(rng), N);
            if (!m.is_invertible())
                continue;
            const auto g = decompose_GN_SL2(m).gamma_bar;
            const auto lift = lift_sl2(g);
            ASSERT_EQ(lift.det(), 1);
            ASSERT_TRUE(congruent_up_to_sign(lift, g)) << g;
        }
    }
}

TEST(FormClassData, ClassNumberOne)
{
    const auto a = gal_H_K_data(field_data(-7), 7);
    ASSERT_EQ(a.size(), 1U);
    EXPECT_EQ(a[0].beta, IntMat2::identity());
    EXPECT_EQ(QuadPoint(a[0].point), QuadPoint(-1, 1, 2, -7));
    const auto b = gal_H_K_data(field_data(-8), 9);
    ASSERT_EQ(b.size(), 1U);
    EXPECT_EQ(QuadPoint(b[0].point), QuadPoint(0, 1, 2, -8));  // sqrt(-2)
}

TEST(FormClassData, BundledEntry)
{
    const auto v = gal_H_K_data(field_data(-20), 6);
    ASSERT_EQ(v.size(), 2U);
    EXPECT_EQ(v[0].beta, IntMat2::identity());
    EXPECT_EQ(QuadPoint(v[0].point), QuadPoint(0, 1, 2, -20));
    EXPECT_EQ(v[1].beta, (IntMat2{1, 5, 3, 2}));
    EXPECT_EQ(QuadPoint(v[1].point), QuadPoint(-2, 1, 4, -20));
}

TEST(FormClassData, MissingEntryIsUnsupported)
{
    EXPECT_THROW(gal_H_K_data(field_data(-23), 3), unsupported_field_error);
    EXPECT_THROW(gal_H_K_data(field_data(-20), 7), unsupported_field_error);
}

TEST(FormClassData, OverridesAreValidated)
{
    BetaTable wrong_count{{{-20, 7}, {{{1, 0, 5}, IntMat2::identity()}}}};
    EXPECT_THROW(gal_H_K_data(field_data(-20), 7, &wrong_count), domain_error);
    BetaTable not_reduced{{{-20, 7}, {{{1, 0, 5}, IntMat2::identity()}, {{3, 2, 2}, IntMat2::identity()}}}};
    EXPECT_THROW(gal_H_K_data(field_data(-20), 7, &not_reduced), domain_error);
    BetaTable singular{{{-20, 7}, {{{1, 0, 5}, IntMat2::identity()}, {{2, 2, 3}, IntMat2{7, 0, 0, 1}}}}};
    EXPECT_THROW(gal_H_K_data(field_data(-20), 7, &singular), domain_error);
    BetaTable ok{{{-20, 7}, {{{1, 0, 5}, IntMat2::identity()}, {{2, 2, 3}, IntMat2{1, 0, 0, 1}}}}};
    EXPECT_EQ(gal_H_K_data(field_data(-20), 7, &ok).size(), 2U);
}

TEST(GaloisElements, SizesAndInvariants)
{
    for (const auto& [d, N] : std::vector<std::pair<std::int64_t, std::int64_t>>{{-7, 7}, {-20, 6}, {-8, 9}}) {
        const auto F = field_data(d);
        const auto els = galois_elements(F, N);
        EXPECT_EQ(static_cast<std::int64_t>(els.size()), ring_class_degree(make_order(F, N)));
        for (const auto& g : els) {
            EXPECT_EQ(g.sl2_lift.det(), 1);
            EXPECT_TRUE(congruent_up_to_sign(g.sl2_lift, g.gamma_bar));
            const auto prod = g.alpha * MatModN(g.beta.a, g.beta.b, g.beta.c, g.beta.d, N);
            EXPECT_EQ(MatModN(1, 0, 0, g.d, N) * g.gamma_bar, prod);
        }
    }
}

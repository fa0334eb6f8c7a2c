#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rci/conditions.hpp"
#include "rci/errors.hpp"

using namespace rci;

namespace {

std::vector<std::int64_t> fundamental_discriminants(std::int64_t lowest)
{
    std::vector<std::int64_t> out;
    for (std::int64_t d = -3; d >= lowest; --d)
        if (is_fundamental_discriminant(d))
            out.push_back(d);
    return out;
}

}  // namespace

TEST(MakeOrder, FactorsAndSplits)
{
    const auto o = make_order(-20, 6);
    ASSERT_EQ(o.factors.size(), 2U);
    EXPECT_EQ(o.splits[0].kind, Splitting::Ramified);
    EXPECT_EQ(o.splits[1].kind, Splitting::Split);
    EXPECT_THROW(make_order(-20, 0), domain_error);
    EXPECT_THROW(make_order(-12, 5), domain_error);
}

TEST(RingClassDegree, Examples)
{
    EXPECT_EQ(ring_class_degree(make_order(-20, 6)), 8);
    EXPECT_EQ(ring_class_degree(make_order(-7, 7)), 7);
    EXPECT_EQ(ring_class_degree(make_order(-8, 9)), 6);
}

TEST(RayClassDegree, Examples)
{
    EXPECT_EQ(ray_class_degree(make_order(-7, 7)), 21);
    EXPECT_EQ(ray_class_degree(make_order(-8, 9)), 18);
    // 6 O_K = P2^2 P3 P3', phi = 1 * 2 * 2 * ... and only +1 is congruent to 1 mod 6 O_K
    EXPECT_EQ(ray_class_degree(make_order(-20, 6)), 8);
}

TEST(GalKNHO, Examples)
{
    EXPECT_EQ(gal_KN_HO_size(make_order(-7, 7)), 3);
    EXPECT_EQ(gal_KN_HO_size(make_order(-8, 9)), 3);
    EXPECT_EQ(gal_KN_HO_size(make_order(-20, 6)), 1);
    EXPECT_EQ(gal_KN_HO_size(make_order(-20, 2)), 1);  // -1 = 1 mod 2 O_K
}

TEST(RingClassDegree, EqualsClassNumberOfTheOrder)
{
    for (const auto d : fundamental_discriminants(-200))
        for (std::int64_t N = 2; N <= 20; ++N)
            ASSERT_EQ(ring_class_degree(make_order(d, N)), oracle::class_number(N * N * d)) << d << " " << N;
}

TEST(Degrees, TowerConsistencyOverGrid)
{
    int pairs = 0;
    for (const auto d : fundamental_discriminants(-200))
        for (std::int64_t N = 2; N <= 50; ++N) {
            const auto o = make_order(d, N);
            const auto ring = ring_class_degree(o), ray = ray_class_degree(o), gal = gal_KN_HO_size(o);
            ASSERT_EQ(ray, gal * ring) << d << " " << N;
            ASSERT_EQ(ray % ring, 0);
            ++pairs;
        }
    EXPECT_GE(pairs, 50);
}

TEST(RayClassDegree, MatchesUnitGroupCount)
{
    for (const auto d : fundamental_discriminants(-120))
        for (std::int64_t N = 2; N <= 24; ++N) {
            const auto o = make_order(d, N);
            const auto units = oracle::unit_count(o.field.B_theta, o.field.C_theta, N);
            const auto expected = o.field.h_K * units * omega_f(o.field, N) / o.field.omega_K;
            ASSERT_EQ(ray_class_degree(o), expected) << d << " " << N;
        }
}

TEST(Epsilon, Examples)
{
    const auto e7 = epsilon_values(make_order(-7, 7));
    ASSERT_EQ(e7.size(), 1U);
    EXPECT_EQ(e7[0].epsilon_hat, 21);
    EXPECT_EQ(e7[0].epsilon, 1);

    // split 3 in Q(sqrt(-2)): -1 is not 1 modulo either prime above 3, so every
    // omega is 1 and epsilon_hat(P) = phi(P) = 2, epsilon(P) = phi(P') = 2
    const auto o = make_order(-8, 3);
    const auto e3 = epsilon_values(o);
    ASSERT_EQ(e3.size(), 2U);
    EXPECT_EQ(omega_f(o.field, 3), 1);
    for (const auto& e : e3) {
        EXPECT_EQ(e.epsilon_hat, 2);
        EXPECT_EQ(e.epsilon, 2);
    }
}

TEST(Epsilon, PositiveIntegersOverGrid)
{
    for (const auto d : fundamental_discriminants(-200))
        for (std::int64_t N = 2; N <= 50; ++N)
            for (const auto& e : epsilon_values(make_order(d, N))) {
                ASSERT_GE(e.epsilon, 1) << d << " " << N;
                ASSERT_GE(e.epsilon_hat, 1) << d << " " << N;
            }
}

TEST(PrimeCondition, Examples)
{
    EXPECT_TRUE(check_prime_condition(make_order(-7, 7)).applicable);
    EXPECT_FALSE(check_prime_condition(make_order(-20, 6)).applicable);
    const auto r = check_prime_condition(make_order(-8, 9));
    EXPECT_FALSE(r.applicable);
    ASSERT_EQ(r.primes.size(), 1U);
    EXPECT_FALSE(r.primes[0].inert_or_ramified);
}

TEST(PrimeCondition, NeverHoldsForEvenConductor)
{
    for (const auto d : fundamental_discriminants(-200))
        for (std::int64_t N = 2; N <= 50; N += 2)
            ASSERT_FALSE(check_prime_condition(make_order(d, N)).applicable) << d << " " << N;
}

TEST(PrimeCondition, InertPrimeNeedsExponentTwo)
{
    // 5 is inert in Q(sqrt(-7)); e + 1 > 2 needs e >= 2
    EXPECT_FALSE(check_prime_condition(make_order(-7, 5)).applicable);
    EXPECT_TRUE(check_prime_condition(make_order(-7, 25)).applicable);
}

TEST(InequalityCondition, Examples)
{
    const auto a = check_inequality_condition(make_order(-8, 9));
    EXPECT_TRUE(a.applicable);
    EXPECT_EQ(a.lhs, BigRational(2, 3));
    const auto b = check_inequality_condition(make_order(-20, 6));
    EXPECT_FALSE(b.applicable);
    EXPECT_EQ(b.lhs, BigRational(3));
    const auto c = check_inequality_condition(make_order(-7, 7));
    EXPECT_TRUE(c.applicable);
    EXPECT_EQ(c.lhs, BigRational(2, 7));
}

TEST(InequalityCondition, ExcludedFields)
{
    EXPECT_THROW(check_inequality_condition(make_order(-3, 5)), not_applicable_error);
    EXPECT_THROW(check_inequality_condition(make_order(-4, 5)), not_applicable_error);
}

TEST(InequalityCondition, BoundaryIsStrict)
{
    // ramified 2 alone: 2/2 = 1, not < 1
    const auto r = check_inequality_condition(make_order(-20, 2));
    EXPECT_EQ(r.lhs, BigRational(1));
    EXPECT_FALSE(r.applicable);
}

TEST(ConditionReport, Examples)
{
    const auto a = condition_report(make_order(-7, 7));
    EXPECT_TRUE(a.prime_condition_holds);
    EXPECT_TRUE(a.inequality_condition_holds);
    EXPECT_FALSE(a.warning());

    const auto b = condition_report(make_order(-20, 6));
    EXPECT_FALSE(b.prime_condition_holds);
    EXPECT_FALSE(b.inequality_condition_holds);
    EXPECT_TRUE(b.warning());
    EXPECT_EQ(b.ring_class_degree, 8);

    const auto c = condition_report(make_order(-8, 9));
    EXPECT_FALSE(c.prime_condition_holds);
    EXPECT_TRUE(c.inequality_condition_holds);
    ASSERT_TRUE(c.lhs_inequality.has_value());
    EXPECT_EQ(*c.lhs_inequality, BigRational(2, 3));

    const auto d = condition_report(make_order(-4, 3));
    EXPECT_FALSE(d.lhs_inequality.has_value());
    EXPECT_FALSE(d.inequality_condition_holds);
}

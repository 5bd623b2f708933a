#include <gtest/gtest.h>

#include "support.hpp"

using namespace beatty;
using testing_support::random_rational;

namespace {

Rational r(long n, long d = 1) { return make_rational(n, d); }
const CertifiedReal kZero = CertifiedReal::rational(0);

} // namespace

TEST(Densities, SmallValues) {
    EXPECT_EQ(density_g(2), r(3, 4));
    EXPECT_EQ(density_g(3), r(5, 9));
    EXPECT_EQ(density_h(6), r(3, 4) * r(5, 9));
    EXPECT_EQ(density_sieve(2), r(3, 7));
    for (std::uint64_t p : {2u, 3u, 5u, 97u, 7919u}) {
        EXPECT_GT(density_g(p), 0);
        EXPECT_LT(density_g(p), 1);
    }
}

TEST(Densities, CompleteMultiplicativity) {
    for (std::uint64_t m = 1; m <= 120; ++m)
        for (std::uint64_t n = 1; n <= 120; ++n) ASSERT_EQ(density_g(m * n), density_g(m) * density_g(n));
    for (int i = 0; i < 2000; ++i) {
        const auto m = testing_support::uniform(1, 1000), n = testing_support::uniform(1, 1000);
        ASSERT_EQ(density_g(m * n), density_g(m) * density_g(n));
    }
}

TEST(Densities, MainDensityIdentity) {
    for (std::uint64_t d = 1; d <= 2000; ++d)
        if (mobius(d) != 0) {
            ASSERT_TRUE(main_density_identity(d)) << d;
        }
}

TEST(BigG, ExactValues) {
    EXPECT_EQ(big_g(2), 1);
    EXPECT_EQ(big_g(3), r(7, 4));
    EXPECT_EQ(big_g(4), r(83, 36));
    EXPECT_EQ(big_g(10), r(73813, 22050));
    EXPECT_THROW(big_g(1), ParameterError);
    EXPECT_THROW(big_g(100001), ParameterError);
}

TEST(BigG, MatchesDirectSumAndGrowsAtPrimes) {
    Rational direct = 1; // m = 1
    Rational prev = big_g(2);
    for (std::uint64_t z = 3; z <= 300; ++z) {
        if (mobius(z - 1) != 0) direct += density_g(z - 1);
        const Rational g = big_g(z);
        ASSERT_EQ(g, direct) << z;
        ASSERT_GE(g, 1);
        if (is_prime(z - 1)) {
            ASSERT_GT(g, prev) << z;
        }
        prev = g;
    }
}

TEST(ProductLower, ExactValuesAndMertensConstant) {
    EXPECT_EQ(product_lower(3), 4);
    EXPECT_EQ(product_lower(4), 9);
    EXPECT_THROW(product_lower(2), ParameterError);
    const double lz = std::log(10000.0);
    EXPECT_NEAR(to_double(product_lower(10000)) / (lz * lz), 3.1800387103909578, 1e-12);
}

TEST(Weights, NormalisationAndSize) {
    for (std::uint64_t z : {2u, 3u, 5u, 10u, 30u, 50u}) {
        const SieveContext ctx(z);
        EXPECT_EQ(ctx.lambda(1), 1) << z;
        for (const auto& w : ctx.weights()) {
            EXPECT_LE(abs(w.lambda), 1) << z << " d=" << w.d;
            EXPECT_LT(w.d, z);
        }
    }
    EXPECT_EQ(SieveContext(3).lambda(2), -1);
    EXPECT_THROW(SieveContext(201), GuardError);
}

TEST(Weights, QuadraticFormIdentity) {
    EXPECT_EQ(quadratic_form_value(SieveContext(3)), r(4, 7));
    for (std::uint64_t z : {3u, 5u, 10u, 30u}) {
        const SieveContext ctx(z);
        EXPECT_EQ(quadratic_form_value(ctx), 1 / ctx.G()) << z;
        EXPECT_EQ(ctx.G(), big_g(z));
    }
}

TEST(Sifted, OracleValuesAndMonotonicity) {
    const auto sqrt2 = parse_real_spec("sqrt:2");
    EXPECT_EQ(sifted_count(sqrt2, kZero, 1000, 2), 1000u);
    EXPECT_EQ(sifted_count(sqrt2, kZero, 1000, 5), 113u);
    EXPECT_EQ(sifted_count(sqrt2, kZero, 1000, 7), 71u);
    EXPECT_EQ(sifted_count(sqrt2, kZero, 1000, 11), 55u);
    EXPECT_EQ(sifted_count(parse_real_spec("phi"), kZero, 10000, 10), 526u);
    EXPECT_EQ(sifted_count(sqrt2, CertifiedReal::rational(r(1, 2)), 10000, 20), 322u);
    EXPECT_THROW(sifted_count(sqrt2, kZero, 10, 11), ParameterError);
}

TEST(SelbergBound, TrivialSieve) {
    const auto b = selberg_upper_bound(parse_real_spec("sqrt:2"), kZero, 777, 2);
    EXPECT_EQ(b.quadratic_form, 777);
    EXPECT_EQ(b.sifted, 777u);
    EXPECT_TRUE(b.ok());
}

TEST(SelbergBound, InequalityAndAgreementOnRandomInputs) {
    for (int trial = 0; trial < 12; ++trial) {
        const auto alpha = CertifiedReal::rational(random_rational(r(1, 2), 3, 1000));
        const auto beta = CertifiedReal::rational(random_rational(0, 1, 10));
        const std::uint64_t z = testing_support::uniform(2, 23);
        const auto b = selberg_upper_bound(alpha, beta, 3000, z);
        EXPECT_TRUE(b.inequality_holds()) << alpha.spec() << " z=" << z;
        EXPECT_TRUE(b.forms_agree()) << alpha.spec() << " z=" << z;
        EXPECT_EQ(b.sifted, sifted_count(alpha, beta, 3000, z));
    }
    for (const char* a : {"sqrt:2", "phi", "sqrt:3+1/2"}) {
        const auto b = selberg_upper_bound(parse_real_spec(a), kZero, 20000, 13);
        EXPECT_TRUE(b.ok()) << a;
        EXPECT_EQ(b.main, Rational(20000) / big_g(13));
        EXPECT_GT(b.omega_control, 1);
        EXPECT_FALSE(b.ledger.empty());
    }
}

TEST(SelbergBound, LedgerRecomposesTheRemainder) {
    const auto b = selberg_upper_bound(parse_real_spec("phi"), kZero, 5000, 11);
    Rational rem = 0, coeff_density = 0;
    for (const auto& t : b.ledger) {
        EXPECT_EQ(t.count, count_direct({parse_real_spec("phi"), kZero, 5000, t.m}));
        EXPECT_EQ(t.remainder, Rational(from_u64(t.count)) - 5000 * density_h(t.m));
        rem += t.coefficient * t.remainder;
        coeff_density += t.coefficient * density_sieve(t.m);
    }
    EXPECT_EQ(rem, b.remainder);
    EXPECT_EQ(coeff_density, 1 / b.G);
}

TEST(PairBound, ContainmentAndCounts) {
    const auto table = sieve_primes(20000);
    const auto rep = pair_bound_check(parse_real_spec("sqrt:2"), kZero, 10000, table, 10);
    EXPECT_EQ(rep.pairs, 161u);
    EXPECT_EQ(rep.threshold, 18); // ceil(10 + 11/sqrt 2)
    EXPECT_TRUE(rep.containment_ok());
    EXPECT_TRUE(rep.count_ok());
    EXPECT_LE(Rational(from_u64(rep.sifted)), rep.quadratic_form);
    EXPECT_GT(rep.bound_statistic, rep.pair_statistic);
    for (const char* a : {"phi", "sqrt:3"}) {
        const auto t2 = sieve_primes(25000);
        const auto rep2 = pair_bound_check(parse_real_spec(a), CertifiedReal::rational(r(1, 2)), 10000, t2);
        EXPECT_EQ(rep2.z, 4u);
        EXPECT_TRUE(rep2.containment_ok()) << a;
        EXPECT_TRUE(rep2.count_ok()) << a;
    }
}

TEST(PairBound, ThresholdCertifiedAcrossFields) {
    // beta from another field goes through refinement
    const auto th = containment_threshold(parse_real_spec("sqrt:2"), parse_real_spec("sqrt:3*1/7"), 10);
    EXPECT_EQ(th, Integer(static_cast<long>(std::ceil(10 + (11 - std::sqrt(3.0) / 7) / std::sqrt(2.0)))));
    EXPECT_EQ(default_sieve_z(10000), 4u);
    EXPECT_EQ(default_sieve_z(100000), 5u);
    EXPECT_EQ(default_sieve_z(256), 2u);
    EXPECT_EQ(default_sieve_z(257), 3u);
}

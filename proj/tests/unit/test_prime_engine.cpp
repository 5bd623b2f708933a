#include <gtest/gtest.h>

#include "support.hpp"

using namespace beatty;
using testing_support::uniform;

namespace {

bool trial_division_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

} // namespace

TEST(Sieve, SmallPrimes) {
    const auto t = sieve_primes(30);
    const std::vector<std::uint64_t> want{2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    EXPECT_EQ(std::vector<std::uint64_t>(t.primes().begin(), t.primes().end()), want);
    EXPECT_EQ(t.limit(), 30u);
    EXPECT_FALSE(t.contains(0));
    EXPECT_FALSE(t.contains(1));
    EXPECT_TRUE(t.contains(2));
    EXPECT_FALSE(t.contains(31)); // above the limit
}

TEST(Sieve, KnownPrimeCounts) {
    const auto t = sieve_primes(1000000);
    EXPECT_EQ(t.pi(100), 25u);
    EXPECT_EQ(t.pi(1000), 168u);
    EXPECT_EQ(t.pi(10000), 1229u);
    EXPECT_EQ(t.count(), 78498u);
}

TEST(Sieve, AgreesWithTrialDivision) {
    const auto t = sieve_primes(100000);
    for (std::uint64_t n = 0; n <= 100000; ++n) ASSERT_EQ(t.contains(n), trial_division_prime(n)) << n;
}

TEST(Sieve, SegmentationAndThreadsDoNotChangeTheTable) {
    const std::uint64_t limit = 3000017;
    const auto reference = sieve_primes(limit, {.segment_size = std::uint64_t{1} << 24, .threads = 1});
    for (std::uint64_t seg : {64ull, 1000ull, 4096ull, 65536ull})
        for (unsigned threads : {1u, 3u}) {
            const auto t = sieve_primes(limit, {.segment_size = seg, .threads = threads});
            EXPECT_EQ(t.words(), reference.words()) << seg << " " << threads;
            EXPECT_EQ(t.count(), reference.count());
        }
}

TEST(Sieve, EdgeLimits) {
    EXPECT_EQ(sieve_primes(2).count(), 1u);
    EXPECT_EQ(sieve_primes(3).count(), 2u);
    EXPECT_THROW(sieve_primes(1), ParameterError);
    EXPECT_THROW(sieve_primes(kMaxSieveLimit + 1), ParameterError);
}

TEST(Primality, KnownValues) {
    EXPECT_TRUE(is_prime(2305843009213693951ull)); // 2^61 - 1
    EXPECT_TRUE(is_prime(18446744073709551557ull)); // largest 64-bit prime
    EXPECT_TRUE(is_prime(1000000007ull));
    EXPECT_TRUE(is_prime(999999999999999989ull));
    EXPECT_FALSE(is_prime(561));         // Carmichael
    EXPECT_FALSE(is_prime(3215031751ull)); // strong pseudoprime to bases 2, 3, 5, 7
    EXPECT_FALSE(is_prime(4759123141ull));
    EXPECT_FALSE(is_prime(0));
    EXPECT_FALSE(is_prime(1));
}

TEST(Primality, AgreesWithSieve) {
    const auto t = sieve_primes(2000000);
    for (std::uint64_t n = 0; n <= 2000000; ++n) ASSERT_EQ(is_prime(n), t.contains(n)) << n;
}

TEST(Factorization, RoundTripsOnRandomInputs) {
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t n = uniform(1, std::uint64_t{1} << 40);
        std::uint64_t back = 1;
        for (const auto& pp : factorize(n)) {
            EXPECT_TRUE(is_prime(pp.prime));
            for (unsigned e = 0; e < pp.exponent; ++e) back *= pp.prime;
        }
        EXPECT_EQ(back, n);
    }
}

TEST(Factorization, ProductOfTwoLargePrimesIsOutOfReach) {
    const std::uint64_t p = 2147483647ull, q = 2147483629ull;
    EXPECT_THROW(factorize(p * q), GuardError);
    EXPECT_THROW(factorize(0), ParameterError);
}

TEST(Mobius, DivisorSumIdentity) {
    // sum_{d | n} mu(d) = [n == 1]
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        int sum = 0;
        for (std::uint64_t d = 1; d * d <= n; ++d) {
            if (n % d) continue;
            sum += mobius(d);
            if (d * d != n) sum += mobius(n / d);
        }
        ASSERT_EQ(sum, n == 1 ? 1 : 0) << n;
    }
}

TEST(Mobius, ValuesAndOmega) {
    EXPECT_EQ(mobius(1), 1);
    EXPECT_EQ(mobius(2), -1);
    EXPECT_EQ(mobius(6), 1);
    EXPECT_EQ(mobius(30), -1);
    EXPECT_EQ(mobius(12), 0);
    EXPECT_EQ(omega(1), 0);
    EXPECT_EQ(omega(30), 3);
    EXPECT_EQ(omega(1024), 1);
    EXPECT_THROW(mobius(0), ParameterError);
    EXPECT_TRUE(is_squarefree(1));
    EXPECT_FALSE(is_squarefree(18));
}

TEST(Divisors, SquareFree) {
    EXPECT_EQ(squarefree_divisors(30), (std::vector<std::uint64_t>{1, 2, 3, 5, 6, 10, 15, 30}));
    EXPECT_EQ(squarefree_divisors(1), (std::vector<std::uint64_t>{1}));
    EXPECT_THROW(squarefree_divisors(12), ParameterError);
    EXPECT_EQ(prime_factors(360), (std::vector<std::uint64_t>{2, 3, 5}));
}

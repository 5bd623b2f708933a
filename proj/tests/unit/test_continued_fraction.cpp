#include <gtest/gtest.h>

#include "support.hpp"

using namespace beatty;

namespace {

std::vector<Integer> quotients(const ContinuedFraction& cf) { return cf.partial_quotients; }

} // namespace

TEST(ContinuedFraction, SqrtTwo) {
    const auto cf = continued_fraction(parse_real_spec("sqrt:2"), 6);
    EXPECT_EQ(quotients(cf), (std::vector<Integer>{1, 2, 2, 2, 2, 2}));
    const std::vector<Convergent> want{{1, 1}, {3, 2}, {7, 5}, {17, 12}, {41, 29}, {99, 70}};
    EXPECT_EQ(cf.convergents, want);
    EXPECT_FALSE(cf.terminated);
}

TEST(ContinuedFraction, GoldenRatioGivesFibonacciRatios) {
    const auto cf = continued_fraction(parse_real_spec("phi"), 30);
    Integer f0 = 1, f1 = 1; // F(1), F(2)
    for (const auto& c : cf.convergents) {
        EXPECT_EQ(c.h, f1);
        EXPECT_EQ(c.k, f0);
        Integer next = f0 + f1;
        f0 = f1;
        f1 = next;
    }
    for (const auto& a : cf.partial_quotients) EXPECT_EQ(a, 1);
}

TEST(ContinuedFraction, RationalTerminates) {
    const auto cf = continued_fraction(CertifiedReal::rational(make_rational(7, 5)), 10);
    EXPECT_EQ(quotients(cf), (std::vector<Integer>{1, 2, 2}));
    EXPECT_TRUE(cf.terminated);
    EXPECT_EQ(cf.convergents.back(), (Convergent{7, 5}));
}

TEST(ContinuedFraction, PeriodicSurds) {
    EXPECT_EQ(quotients(continued_fraction(parse_real_spec("sqrt:7"), 9)),
              (std::vector<Integer>{2, 1, 1, 1, 4, 1, 1, 1, 4}));
    EXPECT_EQ(quotients(continued_fraction(parse_real_spec("sqrt:3+1/2"), 6)),
              (std::vector<Integer>{2, 4, 3, 4, 3, 4}));
}

TEST(ContinuedFraction, ConvergentQualityIsExact) {
    // |alpha k_i - h_i| < 1 / k_{i+1}, decided in Q(sqrt k)
    for (const char* s : {"sqrt:2", "phi", "sqrt:3", "sqrt:7*2/3", "sqrt:13-3"}) {
        const auto alpha = parse_real_spec(s);
        const auto cf = continued_fraction(alpha, 21);
        const auto& q = *alpha.quadratic_value();
        for (std::size_t i = 0; i + 1 < cf.convergents.size(); ++i) {
            const auto& c = cf.convergents[i];
            const QuadraticNumber err = q * QuadraticNumber(Rational(c.k)) - QuadraticNumber(Rational(c.h));
            const Rational cap = make_rational(Integer(1), cf.convergents[i + 1].k);
            EXPECT_LT(err.compare(QuadraticNumber(cap)), 0) << s << " " << i;
            EXPECT_GT(err.compare(QuadraticNumber(Rational(-cap))), 0) << s << " " << i;
            // alternation around alpha
            EXPECT_EQ(err.sign(), i % 2 == 0 ? 1 : -1) << s << " " << i;
        }
        EXPECT_GE(cf.convergents[1].k, cf.convergents[0].k);
        for (std::size_t i = 2; i < cf.convergents.size(); ++i)
            EXPECT_GT(cf.convergents[i].k, cf.convergents[i - 1].k);
    }
}

TEST(ContinuedFraction, CfStreamPrefix) {
    const auto alpha = parse_real_spec("cf:0;3;1;4");
    EXPECT_EQ(quotients(continued_fraction(alpha, 4)), (std::vector<Integer>{0, 3, 1, 4}));
    EXPECT_THROW(continued_fraction(alpha, 5), CertificationError);
    // a scaled stream goes through the certified bracket
    const auto scaled = parse_real_spec("cf:1;2;2;2;2;2;2;2;2;2;2;2;2;2;2;2;2;2;2;2;2;2;2;2;2;2;2;2;2;2")
                            .scaled(2);
    EXPECT_EQ(quotients(continued_fraction(scaled, 5)),
              quotients(continued_fraction(parse_real_spec("sqrt:2*2"), 5)));
}

TEST(ContinuedFraction, BestBelow) {
    const auto cf = continued_fraction(parse_real_spec("sqrt:2"), 10);
    EXPECT_EQ(cf.best_below(12)->k, 12);
    EXPECT_EQ(cf.best_below(28)->k, 12);
    EXPECT_EQ(cf.best_below(1)->k, 1);
    EXPECT_EQ(cf.best_below(0), nullptr);
}

TEST(ContinuedFraction, RejectsNonPositive) {
    EXPECT_THROW(continued_fraction(CertifiedReal::rational(0), 3), ParameterError);
    EXPECT_THROW(continued_fraction(parse_real_spec("sqrt:2-2"), 3), ParameterError);
}

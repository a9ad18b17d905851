#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <vector>

#include "shiftlab/numerics.hpp"

using namespace shiftlab;

TEST(ExactScalar, CanonicalForm) {
    EXPECT_EQ(ExactScalar(6, 8), ExactScalar(3, 4));
    EXPECT_EQ(ExactScalar(3, -4).to_string(), "-3/4");
    EXPECT_EQ(ExactScalar(10, 5).to_string(), "2");
    EXPECT_THROW(ExactScalar(1, 0), std::domain_error);
}

TEST(ExactScalar, Parse) {
    EXPECT_EQ(ExactScalar::parse("7/3"), ExactScalar(7, 3));
    EXPECT_EQ(ExactScalar::parse("0.25"), ExactScalar(1, 4));
    EXPECT_EQ(ExactScalar::parse("-1.5e3"), ExactScalar(-1500));
    EXPECT_EQ(ExactScalar::parse("2e-2"), ExactScalar(1, 50));
    EXPECT_THROW(ExactScalar::parse("abc"), std::invalid_argument);
}

TEST(ExactScalar, Arithmetic) {
    ExactScalar a(1, 3), b(1, 6);
    EXPECT_EQ(a + b, ExactScalar(1, 2));
    EXPECT_EQ(a - b, b);
    EXPECT_EQ(a * b, ExactScalar(1, 18));
    EXPECT_EQ(a / b, ExactScalar(2));
    EXPECT_THROW(a / ExactScalar(0), std::domain_error);
    EXPECT_EQ(ExactScalar(2, 3).pow(-2), ExactScalar(9, 4));
    EXPECT_EQ(ExactScalar(-5, 7).abs(), ExactScalar(5, 7));
    EXPECT_EQ(ExactScalar(-5, 7).reciprocal(), ExactScalar(-7, 5));
    EXPECT_LT(ExactScalar(1, 3), ExactScalar(1, 2));
}

TEST(ExactScalar, PowersOfTwo) {
    EXPECT_EQ(ExactScalar::pow2(10), ExactScalar(1024));
    EXPECT_EQ(ExactScalar::pow2(-3), ExactScalar(1, 8));
    EXPECT_TRUE(ExactScalar::pow2(-70).is_power_of_two());
    EXPECT_TRUE(ExactScalar(1).is_power_of_two());
    EXPECT_FALSE(ExactScalar(3, 4).is_power_of_two());
    EXPECT_EQ(ExactScalar::pow2(100).pow(2), ExactScalar::pow2(200));
}

TEST(ExactScalar, JsonRoundTrip) {
    ExactScalar x = ExactScalar::from_strings("123456789012345678901234567891", "1024");
    nlohmann::json j = x;
    EXPECT_EQ(j.at("num").get<std::string>(), "123456789012345678901234567891");
    EXPECT_EQ(j.at("den").get<std::string>(), "1024");
    EXPECT_EQ(j.get<ExactScalar>(), x);
    EXPECT_EQ(nlohmann::json("3/8").get<ExactScalar>(), ExactScalar(3, 8));
    EXPECT_EQ(nlohmann::json(5).get<ExactScalar>(), ExactScalar(5));
}

TEST(LogMagnitude, PowersOfTwoAreExact) {
    for (int e = -200; e <= 200; e += 7) {
        LogMagnitude l = to_log(ExactScalar::pow2(e));
        EXPECT_EQ(l.log2(), static_cast<double>(e));
        EXPECT_TRUE(l.is_exact());
    }
}

TEST(LogMagnitude, MatchesLibm) {
    for (auto [n, d] : std::vector<std::pair<int, int>>{{3, 1}, {1, 3}, {22, 7}, {1000001, 999}}) {
        double expected = std::log2(static_cast<double>(n) / d);
        EXPECT_NEAR(to_log(ExactScalar(n, d)).log2(), expected, 4 * std::numeric_limits<double>::epsilon() * std::abs(expected) + 1e-15);
    }
}

TEST(LogMagnitude, ZeroSentinel) {
    LogMagnitude z = to_log(ExactScalar(0));
    EXPECT_TRUE(z.is_zero());
    EXPECT_TRUE(std::isinf(z.log2()));
    EXPECT_TRUE((z * to_log(ExactScalar(5))).is_zero());
    EXPECT_EQ((z + to_log(ExactScalar(4))).log2(), 2.0);
    EXPECT_THROW(to_log(ExactScalar(1)) / z, std::domain_error);
}

TEST(LogMagnitude, HugeProductsDoNotOverflow) {
    LogMagnitude acc = LogMagnitude::from_log2(0.0, true);
    for (int i = 0; i < 5000; ++i) acc *= to_log(ExactScalar(4));
    EXPECT_EQ(acc.log2(), 10000.0);
    EXPECT_TRUE(std::isinf(acc.value()));
}

TEST(LogMagnitude, CompensatedSumIsOrderIndependent) {
    std::vector<LogMagnitude> v;
    for (int i = 1; i <= 200; ++i) v.push_back(to_log(ExactScalar(1, i)));
    LogMagnitude a = compensated_sum(v);
    std::reverse(v.begin(), v.end());
    LogMagnitude b = compensated_sum(v);
    EXPECT_EQ(a.log2(), b.log2());
    double h = 0;
    for (int i = 1; i <= 200; ++i) h += 1.0 / i;
    EXPECT_NEAR(std::exp2(a.log2()), h, 1e-12);
}

TEST(Magnitude, MixedArithmeticDegradesToLog) {
    Magnitude e{ExactScalar(3)};
    Magnitude l{to_log(ExactScalar(3))};
    EXPECT_TRUE((e * e).is_exact());
    EXPECT_EQ((e * e).exact(), ExactScalar(9));
    EXPECT_FALSE((e * l).is_exact());
    EXPECT_NEAR((e * l).log2(), std::log2(9.0), 1e-12);
    EXPECT_EQ(e.to_string(), "3");
    EXPECT_THROW((void)l.exact(), std::logic_error);
}

TEST(NumericMode, Strings) {
    EXPECT_EQ(numeric_mode_from_string("exact"), NumericMode::Exact);
    EXPECT_EQ(to_string(NumericMode::Log), "log");
    EXPECT_THROW(numeric_mode_from_string("float"), std::invalid_argument);
}

#include <gtest/gtest.h>

#include <algorithm>

#include "shiftlab/tails.hpp"

using namespace shiftlab;

namespace {

// Brute-force minimum of (x + delta)^p / x^q over x0 <= x <= x1.
ExactScalar brute_min(int p, int q, std::int64_t delta, std::int64_t x0, std::int64_t x1) {
    ExactScalar best = poly_ratio(p, q, delta, x0);
    for (std::int64_t x = x0 + 1; x <= x1; ++x) best = std::min(best, poly_ratio(p, q, delta, x));
    return best;
}

}  // namespace

TEST(PolyRatio, Value) {
    EXPECT_EQ(poly_ratio(2, 1, 3, 3), ExactScalar(12));
    EXPECT_EQ(poly_ratio(1, 2, -1, 2), ExactScalar(1, 4));
}

TEST(PolyRatioInf, QuadraticOverLinearMinimumAtDelta) {
    for (std::int64_t n = 1; n <= 40; ++n) {
        TailExtremum e = poly_ratio_inf(2, 1, n, 1);
        ASSERT_FALSE(e.infinite);
        EXPECT_TRUE(e.attained);
        EXPECT_EQ(e.value, ExactScalar(4 * n)) << n;
    }
}

TEST(PolyRatioInf, AgreesWithBruteForce) {
    for (int p = 0; p <= 4; ++p) {
        for (int q = 0; q <= p; ++q) {
            for (std::int64_t delta : {-3, 0, 1, 5, 17}) {
                for (std::int64_t x0 : {4, 9, 30}) {
                    TailExtremum e = poly_ratio_inf(p, q, delta, x0);
                    ExactScalar b = brute_min(p, q, delta, x0, x0 + 3000);
                    if (p > q) {
                        EXPECT_EQ(e.value, b) << p << q << delta << x0;
                    } else {
                        EXPECT_LE(e.value, b);
                        EXPECT_EQ(e.value, std::min(b, ExactScalar(1)));
                    }
                }
            }
        }
    }
}

TEST(PolyRatioInf, DecayingRatioHasZeroInfimum) {
    TailExtremum e = poly_ratio_inf(1, 2, 0, 1);
    EXPECT_EQ(e.value, ExactScalar(0));
    EXPECT_FALSE(e.attained);
}

TEST(PolyRatioSup, UnboundedAndBounded) {
    EXPECT_TRUE(poly_ratio_sup(3, 1, 0, 1).infinite);
    TailExtremum e = poly_ratio_sup(1, 1, 2, 1);
    EXPECT_FALSE(e.infinite);
    EXPECT_EQ(e.value, ExactScalar(3));
    TailExtremum g = poly_ratio_sup(1, 1, -2, 3);
    EXPECT_EQ(g.value, ExactScalar(1));
    EXPECT_FALSE(g.attained);
}

TEST(GeometricPoly, Monotonicity) {
    EXPECT_TRUE(geometric_poly_nonincreasing(0, ExactScalar(1, 2), 1, 1));
    EXPECT_TRUE(geometric_poly_nonincreasing(0, ExactScalar(1), 1, 1));
    EXPECT_FALSE(geometric_poly_nonincreasing(1, ExactScalar(1), 1, 1));
    // x^2 (1/2)^x increases from 1 to 2 and decreases from 3 on.
    EXPECT_FALSE(geometric_poly_nonincreasing(2, ExactScalar(1, 2), 1, 1));
    EXPECT_TRUE(geometric_poly_nonincreasing(2, ExactScalar(1, 2), 1, 3));
    EXPECT_THROW(geometric_poly_nonincreasing(0, ExactScalar(1), 1, 0), std::invalid_argument);
    EXPECT_TRUE(geometric_poly_nondecreasing(3, ExactScalar(1), 1, 1));
    EXPECT_TRUE(geometric_poly_nondecreasing(0, ExactScalar(2), 1, 5));
    EXPECT_FALSE(geometric_poly_nondecreasing(0, ExactScalar(1, 2), 1, 1));
}

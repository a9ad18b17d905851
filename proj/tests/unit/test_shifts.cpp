#include <gtest/gtest.h>

#include "shiftlab/shifts.hpp"

using namespace shiftlab;

namespace {

ShiftOperator make(Direction d, const char* weights, const char* space, int step = 1) {
    return ShiftOperator(d, WeightSequence::parse(weights), preset(space), step);
}

HorizonConfig small_config() {
    HorizonConfig cfg;
    cfg.window = 50;
    cfg.l_max = 4;
    return cfg;
}

}  // namespace

TEST(Shift, BasisImages) {
    ShiftOperator b = make(Direction::Backward, "constant:2", "lp_Z:2");
    BasisImage im = basis_image(b, 0, 3);
    ASSERT_TRUE(im.target.has_value());
    EXPECT_EQ(*im.target, -3);
    EXPECT_EQ(im.coefficient, ExactScalar(8));
    BasisImage inv = basis_image(b, 0, -2);
    EXPECT_EQ(*inv.target, 2);
    EXPECT_EQ(inv.coefficient, ExactScalar(1, 4));
    BasisImage id = basis_image(b, 5, 0);
    EXPECT_EQ(*id.target, 5);
    EXPECT_EQ(id.coefficient, ExactScalar(1));
}

TEST(Shift, ForwardUsesSourceWeight) {
    ShiftOperator f = make(Direction::Forward, "expr:abs(j)+1", "lp_Z:1");
    BasisImage im = basis_image(f, 1, 2);
    EXPECT_EQ(*im.target, 3);
    EXPECT_EQ(im.coefficient, ExactScalar(2 * 3));
}

TEST(Shift, InverseUndoesOperator) {
    for (Direction d : {Direction::Backward, Direction::Forward}) {
        ShiftOperator op = make(d, "expr:abs(j)+1", "lp_Z:2");
        for (std::int64_t j = -4; j <= 4; ++j) {
            SparseVector x = SparseVector::basis(j);
            EXPECT_EQ(apply(op, apply(op, x, 3), -3), x);
            EXPECT_EQ(apply(op, apply(op, x, -2), 2), x);
        }
    }
}

TEST(Shift, DualForm) {
    ShiftOperator f = make(Direction::Forward, "expr:abs(j)+1", "lp_Z:2");
    ShiftOperator inv = dual_form(f);
    EXPECT_EQ(inv.direction(), Direction::Backward);
    EXPECT_EQ(inv.weights().value(3), ExactScalar(1, 3));  // 1 / w_2
    ShiftOperator b = make(Direction::Backward, "expr:abs(j)+1", "lp_Z:2");
    EXPECT_EQ(dual_form(b).weights().value(3), ExactScalar(1, 5));  // 1 / w_4
    ShiftOperator twice = dual_form(dual_form(b));
    for (std::int64_t j = -5; j <= 5; ++j) EXPECT_EQ(twice.weights().value(j), b.weights().value(j));
}

TEST(Shift, UnilateralBackwardKillsFirstVector) {
    ShiftOperator b = make(Direction::Backward, "constant:2", "lp_N:2");
    EXPECT_FALSE(basis_image(b, 1, 1).target.has_value());
    EXPECT_EQ(basis_orbit_norm(b, 3, 3, 1), ExactScalar(0));
    EXPECT_EQ(basis_orbit_norm(b, 3, 2, 1), ExactScalar(4));
    EXPECT_THROW(basis_image(b, 3, -1), NotInvertible);
    EXPECT_THROW(dual_form(b), NotInvertible);
}

TEST(Shift, OrbitNormsAgreeAcrossModes) {
    ShiftOperator f = make(Direction::Forward, "expr:(abs(j)+2)/(abs(j)+1)", "s_Z");
    for (std::int64_t n = -12; n <= 12; ++n) {
        ExactScalar e = basis_orbit_norm(f, 2, n, 2);
        EXPECT_NEAR(basis_orbit_norm_log(f, 2, n, 2).log2(), to_log(e).log2(), 1e-9);
    }
}

TEST(Shift, PowerGroupsWeights) {
    ShiftOperator b = make(Direction::Backward, "expr:abs(j)+1", "lp_Z:2");
    for (int m : {2, 3}) {
        ShiftOperator p = power(b, m);
        EXPECT_EQ(p.step(), m);
        for (std::int64_t j = -6; j <= 6; ++j) {
            for (std::int64_t n = -4; n <= 4; ++n) {
                EXPECT_EQ(basis_orbit_norm(p, j, n, 1), basis_orbit_norm(b, j, m * n, 1)) << m << " " << j << " " << n;
            }
        }
    }
}

TEST(Shift, ConjugateByScalesNorms) {
    ShiftOperator b = make(Direction::Backward, "two_sided:2,1/3", "lp_Z:2");
    Diagonal d([](std::int64_t j) { return ExactScalar(j * j + 1, 2); }, "d", nlohmann::json{{"family", "test"}});
    ShiftOperator s = conjugate_by(b, d);
    for (std::int64_t j = -5; j <= 5; ++j) {
        for (std::int64_t n = -5; n <= 5; ++n) {
            EXPECT_EQ(basis_orbit_norm(s, j, n, 1), d(j).abs() * basis_orbit_norm(b, j, n, 1));
        }
    }
}

TEST(Shift, ConjugateToUnweighted) {
    ShiftOperator b = make(Direction::Backward, "expr:(abs(j)+3)/(abs(j)+2)", "c0_Z");
    ConjugacyResult r = conjugate_to_unweighted(b);
    EXPECT_EQ(r.v(0), ExactScalar(1));
    EXPECT_EQ(r.v(-1), b.weights().value(0));
    EXPECT_EQ(r.v(2), (b.weights().value(1) * b.weights().value(2)).reciprocal());
    for (std::int64_t j = -4; j <= 4; ++j) {
        for (std::int64_t n = -6; n <= 6; ++n) {
            EXPECT_EQ(basis_orbit_norm(r.op, j, n, 1), r.v(j).abs() * basis_orbit_norm(b, j, n, 1));
        }
    }
}

TEST(Wellposed, ConstantWeightsOnLp) {
    WitnessReport r = check_operator_wellposed(make(Direction::Backward, "constant:2", "lp_Z:2"), 1, small_config());
    EXPECT_EQ(r.status, WitnessStatus::Holds);
    ASSERT_TRUE(r.l.has_value());
    EXPECT_EQ(*r.l, 1);
    EXPECT_EQ(*r.window_sup, ExactScalar(2));
}

TEST(Wellposed, UnboundedWeightsAreNotAttested) {
    WitnessReport r = check_operator_wellposed(make(Direction::Backward, "expr:2^abs(j)", "lp_Z:2"), 1, small_config());
    EXPECT_NE(r.status, WitnessStatus::Holds);
}

TEST(Wellposed, SmoothSequencesForwardShift) {
    ShiftOperator f = make(Direction::Forward, "constant:1", "s_Z");
    for (int k = 1; k <= 3; ++k) {
        WitnessReport r = check_operator_wellposed(f, k, small_config());
        EXPECT_EQ(r.status, WitnessStatus::Holds);
        EXPECT_EQ(*r.l, k);
        WitnessReport i = check_invertible(f, k, small_config());
        EXPECT_EQ(i.status, WitnessStatus::Holds);
        EXPECT_EQ(*i.l, k);
    }
}

TEST(Wellposed, HalflineNeedsNextLevel) {
    ShiftOperator f = make(Direction::Forward, "constant:2", "halfline_Z");
    for (int k = 1; k <= 3; ++k) {
        WitnessReport r = check_operator_wellposed(f, k, small_config());
        EXPECT_EQ(r.status, WitnessStatus::Holds);
        EXPECT_EQ(*r.l, k + 1);
    }
}

TEST(Wellposed, ZeroPatternViolation) {
    // F maps e_{-1}, which is outside I_1, onto e_0 in I_1.
    HorizonConfig cfg = small_config();
    cfg.k_max = 1;
    cfg.l_max = 1;
    WitnessReport r = check_operator_wellposed(make(Direction::Forward, "constant:1", "halfline_Z"), 1, cfg);
    EXPECT_EQ(r.status, WitnessStatus::Fails);
    EXPECT_TRUE(r.zero_pattern_violation.has_value());
}

TEST(Wellposed, UnilateralInverseIsStructural) {
    WitnessReport r = check_invertible(make(Direction::Forward, "constant:1", "lp_N:2"), 1, small_config());
    EXPECT_EQ(r.status, WitnessStatus::Fails);
    EXPECT_TRUE(r.structural);
}

TEST(Shift, JsonDescribesOperator) {
    ShiftOperator b = make(Direction::Backward, "constant:2", "lp_Z:2", 2);
    nlohmann::json j = b.to_json();
    EXPECT_EQ(j.at("direction"), "backward");
    EXPECT_EQ(j.at("step"), 2);
    EXPECT_FALSE(b.describe().empty());
    EXPECT_THROW(make(Direction::Backward, "constant:2", "lp_Z:2", 0), std::invalid_argument);
}

#include <gtest/gtest.h>

#include "shiftlab/criteria.hpp"

using namespace shiftlab;

namespace {

ShiftOperator make(Direction d, const char* weights, const char* space = "lp_Z:2") {
    return ShiftOperator(d, WeightSequence::parse(weights), preset(space));
}

HorizonConfig config(NumericMode mode = NumericMode::Exact) {
    HorizonConfig cfg;
    cfg.n_max = 400;
    cfg.window = 40;
    cfg.m_grid = HorizonConfig::dyadic_grid(0, 10);
    cfg.k_max = 2;
    cfg.l_max = 4;
    cfg.mode = mode;
    return cfg;
}

// First n with (2^{n+1} - 2) / n >= m, the Cesàro average of 2^i over i = 1..n.
std::int64_t first_crossing_doubling(const ExactScalar& m) {
    for (std::int64_t n = 1;; ++n) {
        if ((ExactScalar::pow2(n + 1) - ExactScalar(2)) / ExactScalar(n) >= m) return n;
    }
}

}  // namespace

TEST(Config, Validation) {
    HorizonConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.m_grid = {ExactScalar(2), ExactScalar(1)};
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = HorizonConfig{};
    cfg.n_max = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    EXPECT_EQ(HorizonConfig::dyadic_grid(-1, 1).size(), 3U);
    nlohmann::json j = HorizonConfig{};
    EXPECT_EQ(j.get<HorizonConfig>().m_grid.size(), 21U);
}

TEST(Cesaro, CrossingsMatchClosedForm) {
    for (NumericMode mode : {NumericMode::Exact, NumericMode::Log}) {
        HorizonConfig cfg = config(mode);
        BranchResult b = cesaro_branch(make(Direction::Backward, "constant:2"), 0, 1, cfg);
        ASSERT_TRUE(b.all_crossed);
        for (const auto& c : b.crossings) {
            ASSERT_TRUE(c.first_n.has_value());
            EXPECT_EQ(*c.first_n, first_crossing_doubling(c.threshold)) << c.threshold.to_string();
        }
    }
}

TEST(Cesaro, TraceValues) {
    HorizonConfig cfg = config();
    cfg.n_max = 6;
    cfg.record_trace = true;
    BranchResult b = cesaro_branch(make(Direction::Backward, "constant:3"), 0, 1, cfg);
    ASSERT_TRUE(b.trace.has_value());
    ASSERT_GE(b.trace->values.size(), 3U);
    EXPECT_EQ(b.trace->values[0].exact(), ExactScalar(3));
    EXPECT_EQ(b.trace->values[1].exact(), ExactScalar(6));   // (3 + 9) / 2
    EXPECT_EQ(b.trace->values[2].exact(), ExactScalar(13));  // (3 + 9 + 27) / 3
}

TEST(AvgExpansive, ConstantWeights) {
    HorizonConfig cfg = config();
    Verdict two = avg_expansive(make(Direction::Backward, "constant:2"), cfg);
    EXPECT_TRUE(two.certified());
    Verdict half = avg_expansive(make(Direction::Backward, "constant:1/2"), cfg);
    EXPECT_TRUE(half.certified());
    Verdict one = avg_expansive(make(Direction::Backward, "constant:1"), cfg);
    EXPECT_EQ(one.kind, VerdictKind::BoundedWitness);
    ASSERT_TRUE(one.bound.has_value());
    EXPECT_FALSE(one.attestation.empty());
    Verdict fwd = avg_expansive(make(Direction::Forward, "constant:2", "c0_Z"), cfg);
    EXPECT_TRUE(fwd.certified());
}

TEST(AvgExpansive, ModesAgreeOnCrossings) {
    ShiftOperator op = make(Direction::Backward, "expr:(abs(j)+2)/(abs(j)+1)", "s_Z");
    Verdict e = avg_expansive(op, config(NumericMode::Exact));
    Verdict l = avg_expansive(op, config(NumericMode::Log));
    EXPECT_EQ(e.kind, l.kind);
    ASSERT_EQ(e.crossings.size(), l.crossings.size());
    for (std::size_t i = 0; i < e.crossings.size(); ++i) EXPECT_EQ(e.crossings[i].first_n, l.crossings[i].first_n);
}

TEST(AvgPosExpansive, Sides) {
    HorizonConfig cfg = config();
    ShiftOperator b = make(Direction::Backward, "constant:2");
    EXPECT_TRUE(avg_pos_expansive(b, OrbitSide::Op, cfg).certified());
    EXPECT_EQ(avg_pos_expansive(b, OrbitSide::Inverse, cfg).kind, VerdictKind::BoundedWitness);
    ShiftOperator f = make(Direction::Forward, "constant:2", "lp_N:2");
    EXPECT_TRUE(avg_pos_expansive(f, OrbitSide::Op, cfg).certified());
}

TEST(WindowInfimum, SmoothSequencesMatchTailOracle) {
    HorizonConfig cfg = config();
    ShiftOperator f = make(Direction::Forward, "constant:1", "s_Z");
    for (std::int64_t n = 1; n <= 30; ++n) {
        WindowInfimum w = ue_window_infimum(f, RatioFamily::Forward, IndexHalf::NonNegative, 1, 2, n, cfg);
        ASSERT_FALSE(w.infinite);
        EXPECT_EQ(w.value.exact(), ExactScalar(4 * n)) << n;
        TailExtremum t = poly_ratio_inf(2, 1, n, 1);
        EXPECT_EQ(w.value.exact(), t.value);
    }
}

TEST(UnifExpansive, ConstantWeights) {
    HorizonConfig cfg = config();
    Verdict b = unif_expansive(make(Direction::Backward, "constant:2"), cfg);
    EXPECT_TRUE(b.certified());
    EXPECT_EQ(b.property, "a");
    ASSERT_TRUE(b.positive.has_value());
    EXPECT_TRUE(*b.positive);
    Verdict f = unif_expansive(make(Direction::Forward, "constant:2"), cfg);
    EXPECT_TRUE(f.certified());
    EXPECT_EQ(f.property, "A");
    Verdict bh = unif_expansive(make(Direction::Backward, "constant:1/2"), cfg);
    EXPECT_TRUE(bh.certified());
    EXPECT_EQ(bh.property, "b");
    EXPECT_FALSE(*bh.positive);
    Verdict one = unif_expansive(make(Direction::Forward, "constant:1"), cfg);
    EXPECT_FALSE(one.certified());
}

TEST(UnifExpansive, SmoothSequencesPropertyC) {
    HorizonConfig cfg = config();
    cfg.n_max = 100;
    cfg.m_grid = HorizonConfig::dyadic_grid(0, 8);
    cfg.k_max = 3;
    Verdict v = unif_expansive(make(Direction::Forward, "constant:1", "s_Z"), cfg);
    EXPECT_TRUE(v.certified());
    EXPECT_EQ(v.property, "C");
    ASSERT_EQ(v.levels.size(), 3U);
    for (const auto& lv : v.levels) EXPECT_EQ(lv.l, lv.k + 1);
}

TEST(UnifExpansive, ThreadCountDoesNotChangeVerdict) {
    HorizonConfig one = config(NumericMode::Log);
    HorizonConfig four = one;
    four.threads = 4;
    ShiftOperator op = make(Direction::Forward, "two_sided:2,3", "lp_Z:1");
    nlohmann::json a = unif_expansive(op, one), b = unif_expansive(op, four);
    a.erase("config");
    b.erase("config");
    EXPECT_EQ(a, b);
}

TEST(UnifPosExpansive, UnilateralBackwardIsBounded) {
    Verdict v = unif_pos_expansive(make(Direction::Backward, "constant:2", "lp_N:2"), config());
    EXPECT_EQ(v.kind, VerdictKind::BoundedWitness);
    EXPECT_TRUE(unif_pos_expansive(make(Direction::Forward, "constant:2", "lp_N:2"), config()).certified());
}

TEST(BasisDiagnostic, Verdicts) {
    HorizonConfig cfg = config();
    EXPECT_TRUE(expansive_basis_diagnostic(make(Direction::Backward, "constant:2"), cfg).certified());
    EXPECT_EQ(expansive_basis_diagnostic(make(Direction::Backward, "constant:1"), cfg).kind, VerdictKind::BoundedWitness);
}

TEST(Mixing, DipWeightsAreMixing) {
    HorizonConfig cfg = config(NumericMode::Log);
    EXPECT_TRUE(mixing_check(make(Direction::Backward, "two_sided:1/2,2", "lp_Z:1"), cfg).certified());
    EXPECT_FALSE(mixing_check(make(Direction::Backward, "constant:2"), cfg).certified());
    EXPECT_THROW(mixing_check(make(Direction::Forward, "constant:2"), cfg), std::invalid_argument);
}

TEST(Hierarchy, ConsistentOnSimpleFamilies) {
    HorizonConfig cfg = config(NumericMode::Log);
    for (const char* w : {"constant:2", "constant:1", "constant:1/2", "two_sided:2,1/2"}) {
        HierarchyReport r = hierarchy_audit(make(Direction::Backward, w), cfg);
        EXPECT_TRUE(r.consistent()) << w;
        EXPECT_TRUE(r.unresolved.empty()) << w;
    }
}

TEST(Verdict, JsonShape) {
    Verdict v = avg_expansive(make(Direction::Backward, "constant:2"), config());
    nlohmann::json j = v;
    for (const char* key : {"criterion", "kind", "crossings", "horizon", "config", "operator"}) EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j.at("kind"), "CertifiedUnbounded");
}

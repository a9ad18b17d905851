#include <gtest/gtest.h>

#include <vector>

#include "shiftlab/synthesis.hpp"

using namespace shiftlab;

namespace {

const Synthesis& four() {
    static const Synthesis s = build_blocks(4);
    return s;
}

// Orbit norms ||B^n e_-1|| rebuilt from the run structure of each block.
std::vector<ExactScalar> runs_oracle(const BlockLayout& layout) {
    std::vector<ExactScalar> out;
    for (const auto& p : layout.blocks) {
        const ExactScalar lo{1, p.j}, hi{1, p.j + 1};
        for (int m = 1; m <= 2 * p.k; ++m) out.push_back(ExactScalar::pow2(m) * lo);
        out.push_back(ExactScalar::pow2(2 * p.k) * lo);
        for (int m = 1; m <= 2 * p.k - 1; ++m) out.push_back(ExactScalar::pow2(2 * p.k - m) * lo);
        for (std::int64_t c = 0; c < (std::int64_t{1} << p.k); ++c) out.push_back(hi);
        for (int m = 1; m <= p.r; ++m) out.push_back(ExactScalar::pow2(m) * hi);
        for (std::int64_t c = 0; c < p.i - 1; ++c) out.push_back(ExactScalar::pow2(p.r) * hi);
        for (int m = 1; m <= p.r; ++m) out.push_back(ExactScalar::pow2(p.r - m) * hi);
    }
    return out;
}

}  // namespace

TEST(Synthesis, ROfJ) {
    EXPECT_EQ(r_of(1), 2);
    EXPECT_EQ(r_of(2), 4);
    EXPECT_EQ(r_of(3), 4);
    EXPECT_EQ(r_of(4), 5);
    EXPECT_EQ(r_of(7), 6);
    EXPECT_EQ(r_of(8), 7);
}

TEST(Synthesis, FirstBlockGolden) {
    Synthesis s = build_blocks(1);
    auto slice = [&](IndexInterval span) { return s.weights.slice(span); };
    std::vector<ExactScalar> a{1, 1, 1, ExactScalar(1, 4), ExactScalar(1, 2), ExactScalar(1, 2), ExactScalar(1, 2), 1, 2, 2, 2, 2};
    std::vector<ExactScalar> b{ExactScalar(1, 2), ExactScalar(1, 2), 1, 2, 2};
    std::vector<ExactScalar> c{ExactScalar(1, 2), ExactScalar(1, 2), ExactScalar(1, 2), ExactScalar(1, 2), 1, 2, 2, 2, 4, 1, 1, 1};
    EXPECT_EQ(slice(BlockWeights::span_a(s.layout, 1)), a);
    EXPECT_EQ(slice(BlockWeights::span_b_left(s.layout, 1)), b);
    EXPECT_EQ(slice(BlockWeights::span_b_right(s.layout, 1)), b);
    EXPECT_EQ(slice(BlockWeights::span_c(s.layout, 1)), c);
    EXPECT_EQ(template_a(1, 2), a);
    EXPECT_EQ(template_b(2, 2), b);
    EXPECT_EQ(template_c(1, 2), c);
    const BlockParams& p = s.layout.at(1);
    EXPECT_EQ(p.a, 12);
    EXPECT_EQ(p.b, 5);
    EXPECT_EQ(p.s, 12);
    EXPECT_EQ(p.t, 17);
    EXPECT_EQ(p.n_hc, 10);
    EXPECT_EQ(p.alpha, ExactScalar(31, 6));
    EXPECT_EQ(s.weights.lo, -17);
    EXPECT_EQ(s.weights.hi(), 18);
}

TEST(Synthesis, PositionLayout) {
    const Synthesis& s = four();
    for (int j = 1; j <= 4; ++j) {
        const std::int64_t sj = s.layout.at(j).s, tj = s.layout.at(j).t, tp = s.layout.t_before(j);
        IndexInterval a = BlockWeights::span_a(s.layout, j);
        EXPECT_EQ(a.lo, -sj);
        EXPECT_EQ(a.hi, -tp - 1);
        IndexInterval bl = BlockWeights::span_b_left(s.layout, j);
        EXPECT_EQ(bl.lo, -tj);
        EXPECT_EQ(bl.hi, -sj - 1);
        IndexInterval c = BlockWeights::span_c(s.layout, j);
        EXPECT_EQ(c.lo, tp + 2);
        EXPECT_EQ(c.hi, sj + 1);
        IndexInterval br = BlockWeights::span_b_right(s.layout, j);
        EXPECT_EQ(br.lo, sj + 2);
        EXPECT_EQ(br.hi, tj + 1);
    }
    EXPECT_EQ(s.weights.at(0), ExactScalar(1));
    EXPECT_EQ(s.weights.at(1), ExactScalar(1));
    EXPECT_THROW((void)s.layout.at(5), std::out_of_range);
}

TEST(Synthesis, ParameterGoldens) {
    const Synthesis& s = four();
    const std::vector<int> k{2, 6, 9, 13}, r{2, 4, 4, 5};
    const std::vector<std::int64_t> i{2, 60, 1106, 29634}, sv{12, 105, 720, 10077}, t{17, 172, 1833, 39720},
        n_hc{10, 73, 464, 5981};
    const std::vector<ExactScalar> alpha{ExactScalar(31, 6), ExactScalar(7097, 90), ExactScalar(238841, 480),
                                         ExactScalar(1349463883, 201540)};
    ASSERT_EQ(s.layout.count(), 4);
    for (int j = 1; j <= 4; ++j) {
        const auto x = static_cast<std::size_t>(j - 1);
        const BlockParams& p = s.layout.at(j);
        EXPECT_EQ(p.k, k[x]) << j;
        EXPECT_EQ(p.i, i[x]) << j;
        EXPECT_EQ(p.r, r[x]) << j;
        EXPECT_EQ(p.s, sv[x]) << j;
        EXPECT_EQ(p.t, t[x]) << j;
        EXPECT_EQ(p.n_hc, n_hc[x]) << j;
        EXPECT_EQ(p.alpha, alpha[x]) << j;
        EXPECT_EQ(p.a, 4 * p.k + (std::int64_t{1} << p.k));
        EXPECT_EQ(p.b, 2 * p.r + p.i - 1);
    }
}

TEST(Synthesis, NormsMatchRunOracle) {
    const Synthesis& s = four();
    const auto oracle = runs_oracle(s.layout);
    const auto left = product_norms_left(s.weights, s.layout.at(4).t);
    const auto right = product_norms_right(s.weights, s.layout.at(4).t);
    const auto closed = closed_form_sequence(s.layout, 4);
    ASSERT_EQ(oracle.size(), left.size());
    EXPECT_EQ(oracle, left);
    EXPECT_EQ(oracle, right);
    EXPECT_EQ(oracle, closed);
    ClosedFormNorms c2 = closed_form_norms(s.layout, 2);
    EXPECT_EQ(c2.first_start, 18);
    EXPECT_EQ(c2.second_start, 106);
    EXPECT_EQ(static_cast<std::int64_t>(c2.first_range.size()), s.layout.at(2).a);
}

TEST(Synthesis, InequalityValues) {
    const Synthesis& s = four();
    AuditReport rep = verify_inequalities(s.layout, s.weights, 4);
    EXPECT_TRUE(rep.passed());
    const std::vector<ExactScalar> eq2{ExactScalar(31, 10), ExactScalar(49679, 726), ExactScalar(716523, 1472),
                                       ExactScalar(1349463883, 201940)};
    auto e2 = rep.named("eq2");
    ASSERT_EQ(e2.size(), 4U);
    for (const auto& c : e2) EXPECT_EQ(c.lhs, eq2[static_cast<std::size_t>(c.j - 1)]) << c.j;
    EXPECT_FALSE(e2.front().required);
    const std::vector<ExactScalar> eq4{ExactScalar(143, 38), ExactScalar(52165, 1074), ExactScalar(483931, 2456)};
    auto e4 = rep.named("eq4");
    ASSERT_EQ(e4.size(), 3U);
    for (const auto& c : e4) {
        EXPECT_TRUE(c.holds) << c.j;
        EXPECT_EQ(c.lhs, eq4[static_cast<std::size_t>(c.j - 1)]) << c.j;
    }
    for (const char* name : {"eq1", "eq3", "alpha", "closed_form", "symmetry"}) {
        for (const auto& c : rep.named(name)) {
            if (c.required) EXPECT_TRUE(c.holds) << name << " j = " << c.j;
        }
    }
}

TEST(Synthesis, FewerBlocksArePrefixes) {
    const Synthesis& s = four();
    const Synthesis three = build_blocks(3);
    for (int j = 1; j <= 3; ++j) {
        EXPECT_EQ(three.layout.at(j).t, s.layout.at(j).t);
        EXPECT_EQ(three.layout.at(j).alpha, s.layout.at(j).alpha);
    }
    for (std::int64_t p = three.weights.lo; p <= three.weights.hi(); ++p) EXPECT_EQ(three.weights.at(p), s.weights.at(p)) << p;
    EXPECT_EQ(three.layout.at(3).t, three.layout.at(2).t + three.layout.at(3).a + three.layout.at(3).b);
}

TEST(Synthesis, SearchCaps) {
    SearchCaps k_cap;
    k_cap.k_max = 5;
    try {
        build_blocks(2, k_cap);
        FAIL() << "expected SearchCapExceeded";
    } catch (const SearchCapExceeded& e) {
        EXPECT_EQ(e.block, 2);
        EXPECT_EQ(e.parameter, "k");
        EXPECT_EQ(e.cap, 5);
    }
    SearchCaps i_cap;
    i_cap.i_max = 59;
    try {
        build_blocks(2, i_cap);
        FAIL() << "expected SearchCapExceeded";
    } catch (const SearchCapExceeded& e) {
        EXPECT_EQ(e.parameter, "i");
    }
    i_cap.i_max = 60;
    EXPECT_NO_THROW(build_blocks(2, i_cap));
}

TEST(Synthesis, HypercyclicityWitness) {
    const Synthesis& s = four();
    HypercyclicityReport hc = hypercyclicity_witness(s.layout, s.weights, 4);
    EXPECT_TRUE(hc.windows_hold());
    EXPECT_TRUE(hc.products_decrease());
    EXPECT_FALSE(hc.products_below_threshold());
    ExactScalar smallest{1};
    for (const auto& p : hc.products) {
        for (const auto& v : p.backward) smallest = std::min(smallest, v);
    }
    EXPECT_EQ(smallest, ExactScalar(1, 80));
    ASSERT_EQ(hc.windows.size(), 4U);
    for (const auto& w : hc.windows) EXPECT_EQ(w.hi - w.lo, std::int64_t{1} << s.layout.at(w.j).k);
}

TEST(Synthesis, ReportShape) {
    Synthesis s = build_blocks(2);
    AuditReport a = verify_inequalities(s.layout, s.weights, 2);
    HypercyclicityReport h = hypercyclicity_witness(s.layout, s.weights, 2);
    nlohmann::json j = synthesis_report(s, a, h);
    EXPECT_TRUE(j.at("audits").at("passed").get<bool>());
    EXPECT_EQ(j.at("layout").size(), 2U);
    EXPECT_EQ(j.at("weights_window").at("lo"), -172);
    for (const char* key : {"eq1", "eq2", "eq3", "eq4", "closed_form", "symmetry", "hc", "intermediate"}) {
        EXPECT_TRUE(j.at("audits").contains(key)) << key;
    }
}

TEST(Synthesis, BlockOperatorOrbit) {
    const Synthesis& s = four();
    ShiftOperator op = block_operator(s);
    EXPECT_TRUE(op.space().sup_type());
    EXPECT_EQ(basis_orbit_norm(op, -1, s.layout.at(2).s, 1), ExactScalar(1, 3));
    EXPECT_EQ(basis_orbit_norm(op, 1, -s.layout.at(3).n_hc, 1), ExactScalar(1, 4));
}

#include "shiftlab/chaos.hpp"

#include <stdexcept>

namespace shiftlab {

using nlohmann::json;

void to_json(json& j, const DensityEstimate& d) {
    j = json{{"horizon", d.horizon}, {"base", d.base}, {"value", d.value}, {"argmax", d.argmax}};
}

DensityEstimate upper_density(const std::vector<bool>& membership, std::optional<std::int64_t> base) {
    const auto n = static_cast<std::int64_t>(membership.size());
    const std::int64_t n0 = base.value_or(std::max<std::int64_t>(1, n / 10));
    if (n0 < 1 || n < n0) throw std::invalid_argument("upper_density needs N >= N0 >= 1");
    DensityEstimate out;
    out.horizon = n;
    out.base = n0;
    out.ratios.reserve(static_cast<std::size_t>(n));
    std::int64_t count = 0;
    bool first = true;
    for (std::int64_t m = 1; m <= n; ++m) {
        count += membership[static_cast<std::size_t>(m - 1)] ? 1 : 0;
        ExactScalar ratio{count, m};
        if (m >= n0 && (first || out.value < ratio)) {
            out.value = ratio;
            out.argmax = m;
            first = false;
        }
        out.ratios.push_back(std::move(ratio));
    }
    return out;
}

DensityEstimate upper_density(const std::function<bool(std::int64_t)>& indicator, std::int64_t n,
                              std::optional<std::int64_t> base) {
    if (n < 1) throw std::invalid_argument("upper_density needs N >= 1");
    std::vector<bool> membership(static_cast<std::size_t>(n));
    for (std::int64_t m = 1; m <= n; ++m) membership[static_cast<std::size_t>(m - 1)] = indicator(m);
    return upper_density(membership, base);
}

std::vector<ExactScalar> orbit_norm_series(const ShiftOperator& op, std::int64_t j0, OrbitSide side, std::int64_t n,
                                           int k) {
    const ShiftOperator target = side == OrbitSide::Op ? op : dual_form(op);
    const KotheMatrix& a = target.space().matrix();
    const WeightSequence& w = target.weights();
    const std::int64_t d = target.displacement();
    std::vector<ExactScalar> out;
    out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)));
    ExactScalar coef{1};
    std::int64_t at = j0;
    bool vanished = false;
    for (std::int64_t m = 1; m <= n; ++m) {
        if (!vanished && !a.contains(at + d)) vanished = true;
        if (vanished) {
            out.emplace_back(0);
            continue;
        }
        coef *= w.value(at);
        at += d;
        out.push_back(coef * a.entry(at, k));
    }
    return out;
}

void to_json(json& j, const DistributionalReport& r) {
    auto entries = [](const std::vector<DistributionalReport::Entry>& es) {
        json arr = json::array();
        for (const auto& e : es) arr.push_back(json{{"threshold", e.threshold}, {"density", e.estimate}});
        return arr;
    };
    json levels = json::array();
    for (const auto& l : r.levels) {
        levels.push_back(json{{"j", l.j},
                              {"small_density", l.small_density},
                              {"large_density", l.large_density},
                              {"target", ExactScalar{1} - ExactScalar{1, l.j}},
                              {"irregularity_evidence", l.irregular}});
    }
    j = json{{"vector", "e_" + std::to_string(r.j0)},
             {"side", r.side == OrbitSide::Op ? "op" : "inverse"},
             {"horizon", r.horizon},
             {"base", r.base},
             {"large", entries(r.large)},
             {"small", entries(r.small)},
             {"levels", levels}};
}

DistributionalReport distributional_report(const ShiftOperator& op, std::int64_t j0, OrbitSide side,
                                           const std::vector<ExactScalar>& k_grid,
                                           const std::vector<ExactScalar>& tau_grid, std::int64_t n,
                                           const std::vector<int>& levels, std::optional<std::int64_t> base) {
    const auto norms = orbit_norm_series(op, j0, side, n);
    DistributionalReport rep;
    rep.j0 = j0;
    rep.side = side;
    rep.horizon = n;
    auto density = [&](auto pred) {
        std::vector<bool> member(norms.size());
        for (std::size_t q = 0; q < norms.size(); ++q) member[q] = pred(norms[q]);
        return upper_density(member, base);
    };
    for (const auto& K : k_grid) {
        rep.large.push_back({K, density([&](const ExactScalar& v) { return v >= K; })});
    }
    for (const auto& tau : tau_grid) {
        rep.small.push_back({tau, density([&](const ExactScalar& v) { return v < tau; })});
    }
    for (int j : levels) {
        if (j < 1) throw std::invalid_argument("distributional levels start at 1");
        const ExactScalar small{1, j + 1};
        const ExactScalar large{j + 1};
        DistributionalReport::Level lv;
        lv.j = j;
        lv.small_density = density([&](const ExactScalar& v) { return v <= small; }).value;
        lv.large_density = density([&](const ExactScalar& v) { return v >= large; }).value;
        const ExactScalar target = ExactScalar{1} - ExactScalar{1, j};
        lv.irregular = lv.small_density >= target && lv.large_density >= target;
        rep.levels.push_back(lv);
    }
    rep.base = base.value_or(std::max<std::int64_t>(1, n / 10));
    return rep;
}

CriterionTrace cesaro_trace(const ShiftOperator& op, std::int64_t j0, OrbitSide side, std::int64_t n, int k) {
    if (n < 1) throw std::invalid_argument("cesaro_trace needs N >= 1");
    HorizonConfig cfg;
    cfg.n_max = n;
    cfg.k_max = std::max(k, 1);
    cfg.l_max = std::max(cfg.l_max, cfg.k_max);
    cfg.m_grid = {ExactScalar{1}};
    cfg.mode = NumericMode::Exact;
    cfg.record_trace = true;
    const ShiftOperator target = side == OrbitSide::Op ? op : dual_form(op);
    BranchResult br = cesaro_branch(target, j0, k, cfg, false);
    CriterionTrace trace = br.trace.value_or(CriterionTrace{"cesaro_average", k, std::nullopt, 1, {}});
    trace.quantity = side == OrbitSide::Op ? "cesaro_average" : "cesaro_average_inverse";
    return trace;
}

}  // namespace shiftlab

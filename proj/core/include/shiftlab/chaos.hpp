#pragma once

// Upper-density estimates and distributional-irregularity evidence for
// orbit-norm sequences.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "shiftlab/criteria.hpp"
#include "shiftlab/numerics.hpp"
#include "shiftlab/shifts.hpp"

namespace shiftlab {

/// max over N0 <= n <= N of card(A ∩ [1, n]) / n, with the full ratio trace.
struct DensityEstimate {
    std::int64_t horizon = 0;
    std::int64_t base = 1;
    ExactScalar value;
    std::int64_t argmax = 0;
    std::vector<ExactScalar> ratios;  // ratios[n - 1], n = 1..N
};
void to_json(nlohmann::json& j, const DensityEstimate& d);

/// N0 defaults to max(1, N / 10).
DensityEstimate upper_density(const std::function<bool(std::int64_t)>& indicator, std::int64_t n,
                              std::optional<std::int64_t> base = std::nullopt);
/// membership[n - 1] for n = 1..N.
DensityEstimate upper_density(const std::vector<bool>& membership, std::optional<std::int64_t> base = std::nullopt);

/// ||T^n e_j0||_k (side Op) or ||T^{-n} e_j0||_k (side Inverse) for n = 1..N, exact.
std::vector<ExactScalar> orbit_norm_series(const ShiftOperator& op, std::int64_t j0, OrbitSide side, std::int64_t n,
                                           int k = 1);

struct DistributionalReport {
    struct Entry {
        ExactScalar threshold;
        DensityEstimate estimate;
    };
    struct Level {
        int j = 0;
        ExactScalar small_density;  // {n : norm <= 1/(j+1)}
        ExactScalar large_density;  // {n : norm >= j+1}
        bool irregular = false;     // both >= 1 - 1/j
    };
    std::int64_t j0 = 0;
    OrbitSide side = OrbitSide::Op;
    std::int64_t horizon = 0;
    std::int64_t base = 1;
    std::vector<Entry> large;  // {n : norm >= K}
    std::vector<Entry> small;  // {n : norm < tau}
    std::vector<Level> levels;
};
void to_json(nlohmann::json& j, const DistributionalReport& r);

/// Densities of the large- and small-norm sets of one basis orbit; level j
/// is flagged when both {norm <= 1/(j+1)} and {norm >= j+1} reach 1 - 1/j.
DistributionalReport distributional_report(const ShiftOperator& op, std::int64_t j0, OrbitSide side,
                                           const std::vector<ExactScalar>& k_grid,
                                           const std::vector<ExactScalar>& tau_grid, std::int64_t n,
                                           const std::vector<int>& levels = {},
                                           std::optional<std::int64_t> base = std::nullopt);

/// Running averages (1/n) sum_{i=1}^n ||T^{+-i} e_j0||_k, exact; the same
/// kernel as the Cesàro branches of the criteria.
CriterionTrace cesaro_trace(const ShiftOperator& op, std::int64_t j0, OrbitSide side, std::int64_t n, int k = 1);

}  // namespace shiftlab

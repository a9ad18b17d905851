#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "shiftlab/numerics.hpp"

namespace shiftlab {

/// Finite truncation of the limits and suprema the criteria quantify over.
struct HorizonConfig {
    std::int64_t n_max = 10000;
    std::int64_t window = 1000;
    std::vector<ExactScalar> m_grid = dyadic_grid(0, 20);
    int k_max = 3;
    int l_max = 8;
    NumericMode mode = NumericMode::Log;
    unsigned threads = 1;
    bool record_trace = false;

    /// Throws std::invalid_argument when an invariant is broken.
    void validate() const;

    /// {2^lo, ..., 2^hi}.
    static std::vector<ExactScalar> dyadic_grid(int lo, int hi);
    /// Thread count from SHIFTLAB_THREADS (default 1, capped at hardware concurrency x 4).
    static unsigned threads_from_env();
};

void to_json(nlohmann::json& j, const HorizonConfig& cfg);
void from_json(const nlohmann::json& j, HorizonConfig& cfg);

}  // namespace shiftlab

#include "shiftlab/config.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace shiftlab {

std::vector<ExactScalar> HorizonConfig::dyadic_grid(int lo, int hi) {
    std::vector<ExactScalar> out;
    for (int e = lo; e <= hi; ++e) out.push_back(ExactScalar::pow2(e));
    return out;
}

unsigned HorizonConfig::threads_from_env() {
    const char* env = std::getenv("SHIFTLAB_THREADS");
    if (!env || !*env) return 1;
    long n = std::strtol(env, nullptr, 10);
    if (n < 1) return 1;
    unsigned cap = std::max(1u, std::thread::hardware_concurrency()) * 4;
    return static_cast<unsigned>(std::min<long>(n, cap));
}

void HorizonConfig::validate() const {
    if (n_max < 1) throw std::invalid_argument("N_max must be >= 1");
    if (window < 1) throw std::invalid_argument("W must be >= 1");
    if (m_grid.empty()) throw std::invalid_argument("M_grid must be nonempty");
    for (std::size_t i = 0; i < m_grid.size(); ++i) {
        if (m_grid[i].sign() <= 0) throw std::invalid_argument("M_grid entries must be positive");
        if (i > 0 && !(m_grid[i - 1] < m_grid[i])) throw std::invalid_argument("M_grid must be strictly increasing");
    }
    if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
    if (l_max < k_max) throw std::invalid_argument("l_max must be >= k_max");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

void to_json(nlohmann::json& j, const HorizonConfig& cfg) {
    j = nlohmann::json{{"n_max", cfg.n_max},     {"window", cfg.window}, {"m_grid", cfg.m_grid},
                       {"k_max", cfg.k_max},     {"l_max", cfg.l_max},   {"mode", to_string(cfg.mode)},
                       {"threads", cfg.threads}, {"record_trace", cfg.record_trace}};
}

void from_json(const nlohmann::json& j, HorizonConfig& cfg) {
    HorizonConfig d;
    cfg.n_max = j.value("n_max", d.n_max);
    cfg.window = j.value("window", d.window);
    cfg.m_grid = j.contains("m_grid") ? j.at("m_grid").get<std::vector<ExactScalar>>() : d.m_grid;
    cfg.k_max = j.value("k_max", d.k_max);
    cfg.l_max = j.value("l_max", cfg.k_max + 5);
    cfg.mode = numeric_mode_from_string(j.value("mode", to_string(d.mode)));
    cfg.threads = j.value("threads", d.threads);
    cfg.record_trace = j.value("record_trace", d.record_trace);
    cfg.validate();
}

}  // namespace shiftlab

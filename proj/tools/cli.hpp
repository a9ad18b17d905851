#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/config.hpp"

namespace shiftlab::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kAuditFailed = 2,
    kSearchCap = 3,
    kMalformedJson = 4,
    kIncompatibleIndexSets = 5,
};

struct RunConfig {
    std::string command;  // check | synthesize | orbit | density | props
    std::string space = "lp_Z:2";
    std::string weights = "constant:2";
    std::string side = "backward";
    int step = 1;
    std::string criterion = "all";
    HorizonConfig horizon;
    std::string output;  // empty = stdout
    std::string format = "json";
    bool timestamp = true;

    // orbit
    std::string vector = "e:0";
    std::int64_t n_lo = 0;
    std::int64_t n_hi = 20;
    int k_lo = 1;
    int k_hi = 3;

    // synthesize / props
    int blocks = 4;
    int k_cap = 64;
    std::int64_t i_cap = 10'000'000;
    std::int64_t t_range = 8;

    // density
    std::string orbit_side = "op";
    std::int64_t density_n = 0;  // 0 = t_J of the weights' block table, or 1000
    std::optional<std::int64_t> density_base;
    std::vector<std::string> tau = {"1/2", "1/3", "1/4", "1/5"};
    std::vector<std::string> large = {"2", "3", "4", "5"};
    std::vector<int> levels = {2, 3, 4};
};

/// Parses argv. Returns nullopt after printing help or a usage error; `code` receives the exit status.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& err, int& code);

/// Executes a parsed configuration, writing the artifact to cfg.output or `out`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// RFC-4180 field quoting.
std::string csv_field(const std::string& field);

}  // namespace shiftlab::cli

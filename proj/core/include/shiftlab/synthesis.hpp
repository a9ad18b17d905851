#pragma once

// Block construction of a bilateral backward shift that is transitive,
// distributionally chaotic and average positively expansive in both
// directions. The weight sequence is
//
//   ... B_2 A_2 B_1 A_1 I C_1 B_1 C_2 B_2 ...,   I = (1, 1) at positions 0, 1,
//
// and every inequality used to choose the block parameters is checked with
// exact rationals.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shiftlab/numerics.hpp"
#include "shiftlab/shifts.hpp"
#include "shiftlab/weights.hpp"

namespace shiftlab {

/// Limits on the parameter searches of build_blocks.
struct SearchCaps {
    int k_max = 64;
    std::int64_t i_max = 10'000'000;
};

class SearchCapExceeded : public std::runtime_error {
public:
    SearchCapExceeded(int block, std::string parameter, std::int64_t cap);
    int block;
    std::string parameter;
    std::int64_t cap;
};

/// Smallest positive r with 2^r >= (j+1)^2, i.e. r >= 2 log2(j+1).
int r_of(int j);

/// Parameters of block j (1-based).
struct BlockParams {
    int j = 1;
    int k = 2;
    std::int64_t i = 2;
    int r = 2;
    std::int64_t a = 0;     // 4k + 2^k
    std::int64_t b = 0;     // 2r + i - 1
    std::int64_t s = 0;     // t_{j-1} + a
    std::int64_t t = 0;     // s + b
    std::int64_t n_hc = 0;  // t_{j-1} + 4k + 2^{k-1}
    ExactScalar alpha;      // (1/s) sum_{n <= s} ||B_w^n e_{-1}||
};

struct BlockLayout {
    std::vector<BlockParams> blocks;

    [[nodiscard]] int count() const { return static_cast<int>(blocks.size()); }
    /// Block j, 1-based.
    [[nodiscard]] const BlockParams& at(int j) const;
    /// t_{j-1}, with t_0 = 0.
    [[nodiscard]] std::int64_t t_before(int j) const;
};

void to_json(nlohmann::json& j, const BlockParams& p);

/// Block templates, read left to right in position order.
std::vector<ExactScalar> template_a(int j, int k);
std::vector<ExactScalar> template_b(int r, std::int64_t i);
std::vector<ExactScalar> template_c(int j, int k);

/// Exact weight table over positions [-t_J, t_J + 1].
struct BlockWeights {
    std::int64_t lo = 0;
    std::vector<ExactScalar> values;

    [[nodiscard]] std::int64_t hi() const { return lo + static_cast<std::int64_t>(values.size()) - 1; }
    [[nodiscard]] const ExactScalar& at(std::int64_t position) const;
    [[nodiscard]] WeightSequence sequence() const;
    /// Positions occupied by A_j, B_j (left copy), C_j and B_j (right copy).
    [[nodiscard]] static IndexInterval span_a(const BlockLayout& layout, int j);
    [[nodiscard]] static IndexInterval span_b_left(const BlockLayout& layout, int j);
    [[nodiscard]] static IndexInterval span_c(const BlockLayout& layout, int j);
    [[nodiscard]] static IndexInterval span_b_right(const BlockLayout& layout, int j);
    [[nodiscard]] std::vector<ExactScalar> slice(IndexInterval span) const;
};

struct Synthesis {
    BlockLayout layout;
    BlockWeights weights;
};

/// Chooses minimal k_j > k_{j-1} satisfying Eq1 and Eq2, then minimal
/// i_j > i_{j-1} satisfying Eq3, for j = 2..j_max (k_1 = i_1 = 2).
Synthesis build_blocks(int j_max, const SearchCaps& caps = {});

/// The displayed norm sequences on (t_{j-1}, s_j] and (s_j, t_j]. Both
/// ||B_w^n e_{-1}|| and ||B_w^{-n} e_1|| follow this display.
struct ClosedFormNorms {
    std::int64_t first_start = 1;  // n of first_range[0]
    std::vector<ExactScalar> first_range;
    std::int64_t second_start = 1;
    std::vector<ExactScalar> second_range;
};
ClosedFormNorms closed_form_norms(const BlockLayout& layout, int j);
/// Concatenated closed forms, index n - 1 for n = 1..t_j.
std::vector<ExactScalar> closed_form_sequence(const BlockLayout& layout, int upto_j);

/// ||B_w^n e_{-1}|| and ||B_w^{-n} e_1|| for n = 1..n_max by raw weight products.
std::vector<ExactScalar> product_norms_left(const BlockWeights& w, std::int64_t n_max);
std::vector<ExactScalar> product_norms_right(const BlockWeights& w, std::int64_t n_max);

/// The backward shift on c0(Z) carrying the synthesized weights.
ShiftOperator block_operator(const Synthesis& syn);

struct InequalityCheck {
    std::string name;
    int j = 0;
    bool holds = false;
    bool required = true;
    ExactScalar lhs;
    ExactScalar rhs;
    std::optional<std::int64_t> offending_n;
    std::string note;
};
void to_json(nlohmann::json& j, const InequalityCheck& c);

struct AuditReport {
    std::vector<InequalityCheck> checks;
    [[nodiscard]] bool passed() const;
    [[nodiscard]] std::vector<InequalityCheck> named(const std::string& name) const;
};
void to_json(nlohmann::json& j, const AuditReport& r);

/// Re-derives Eq1..Eq4 from raw weight products. Eq1..Eq3 are required for
/// 2 <= j <= j_max and reported at j = 1; Eq4 covers every n in
/// [t_{j-1} + 4k_j, t_j + 4k_{j+1}] with j + 1 <= j_max. Also reports the
/// intermediate lower bounds and the closed-form/product/symmetry agreement.
AuditReport verify_inequalities(const BlockLayout& layout, const BlockWeights& weights, int j_max);

struct ShiftedProducts {
    std::int64_t t = 0;
    std::vector<int> blocks;                 // j with |t| < 2^{k_j - 1}
    std::vector<ExactScalar> backward;       // w_{t-n_j+1} ... w_t
    std::vector<ExactScalar> forward;        // 1 / (w_{t+1} ... w_{t+n_j})
    bool backward_decreasing = false;
    bool forward_decreasing = false;
    bool below_threshold = false;            // last values of both below the threshold
};

struct HypercyclicityReport {
    struct Window {
        int j = 0;
        std::int64_t n_hc = 0;
        std::int64_t lo = 0;  // exclusive
        std::int64_t hi = 0;  // inclusive
        bool holds = false;
        std::optional<std::int64_t> offending_n;
    };
    std::vector<Window> windows;
    std::vector<ShiftedProducts> products;
    ExactScalar threshold;
    std::int64_t t_range = 0;

    [[nodiscard]] bool windows_hold() const;
    [[nodiscard]] bool products_decrease() const;
    [[nodiscard]] bool products_below_threshold() const;
};
void to_json(nlohmann::json& j, const HypercyclicityReport& r);

/// Checks ||B_w^n e_{-1}|| = ||B_w^{-n} e_1|| = 1/(j+1) on (n_j - 2^{k_j-1}, n_j + 2^{k_j-1}]
/// and evaluates the shifted products for |t| <= t_range. The forward
/// products are the mirror computation and are not displayed in the source
/// argument; they are reported alongside.
HypercyclicityReport hypercyclicity_witness(const BlockLayout& layout, const BlockWeights& weights, int j_max,
                                            std::int64_t t_range = 8,
                                            const ExactScalar& threshold = ExactScalar::pow2(-10));

/// Report consumed by the `synthesize` command.
nlohmann::json synthesis_report(const Synthesis& syn, const AuditReport& audit, const HypercyclicityReport& hc);

}  // namespace shiftlab

#pragma once

// Weighted shift operators, their well-posedness and invertibility checks,
// orbit norms, and the conjugacy and duality transforms.
//
// An operator moves e_j to W_j e_{j + s*m}, with s = -1 for backward and
// s = +1 for forward shifts and step m >= 1 (m > 1 arises from powers).

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "shiftlab/config.hpp"
#include "shiftlab/numerics.hpp"
#include "shiftlab/spaces.hpp"
#include "shiftlab/weights.hpp"

namespace shiftlab {

enum class Direction { Backward, Forward };

std::string to_string(Direction d);
Direction direction_from_string(std::string_view text);

/// Raised when an inverse power is requested where none exists.
class NotInvertible : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Unimodular scalar lambda = re + i*im, recorded by rotations.
struct Phase {
    ExactScalar re{1};
    ExactScalar im{0};
    friend bool operator==(const Phase&, const Phase&) = default;
};

class ShiftOperator {
public:
    ShiftOperator(Direction direction, WeightSequence weights, SpaceSpec space, int step = 1, Phase phase = {});

    [[nodiscard]] Direction direction() const { return direction_; }
    [[nodiscard]] const WeightSequence& weights() const { return weights_; }
    [[nodiscard]] const SpaceSpec& space() const { return space_; }
    [[nodiscard]] int step() const { return step_; }
    [[nodiscard]] const Phase& phase() const { return phase_; }
    [[nodiscard]] bool bilateral() const { return space_.index_set() == IndexSet::Z; }
    /// +1 for forward, -1 for backward.
    [[nodiscard]] int sign() const { return direction_ == Direction::Forward ? 1 : -1; }
    /// Index displacement of one application: sign() * step().
    [[nodiscard]] std::int64_t displacement() const { return static_cast<std::int64_t>(sign()) * step_; }

    [[nodiscard]] ShiftOperator with_phase(Phase phase) const;
    [[nodiscard]] ShiftOperator with_space(SpaceSpec space) const;
    [[nodiscard]] ShiftOperator with_weights(WeightSequence weights) const;

    [[nodiscard]] nlohmann::json to_json() const;
    [[nodiscard]] std::string describe() const;

private:
    Direction direction_;
    WeightSequence weights_;
    SpaceSpec space_;
    int step_;
    Phase phase_;
};

/// T^n e_j = coefficient * e_target (n may be negative). A vanishing image
/// (unilateral backward shift running off the index set) has no target.
struct BasisImage {
    std::optional<std::int64_t> target;
    ExactScalar coefficient;
};

/// Exact image of e_j under T^n. Negative n goes through dual_form on Z;
/// on N it raises NotInvertible where the inverse does not exist.
BasisImage basis_image(const ShiftOperator& op, std::int64_t j, std::int64_t n);

SparseVector apply(const ShiftOperator& op, const SparseVector& x, std::int64_t n);

/// ||T^n e_j0||_k via the single-coordinate closed form.
ExactScalar basis_orbit_norm(const ShiftOperator& op, std::int64_t j0, std::int64_t n, int k);
LogMagnitude basis_orbit_norm_log(const ShiftOperator& op, std::int64_t j0, std::int64_t n, int k);

/// The inverse as the opposite-direction shift: F_w^{-1} = B_{w'} with
/// w'_j = 1/w_{j-m}, B_w^{-1} = F_{w'} with w'_j = 1/w_{j+m}. Bilateral only.
ShiftOperator dual_form(const ShiftOperator& op);

/// T^m as an (m * step)-step shift with grouped weights.
ShiftOperator power(const ShiftOperator& op, int m);

enum class WitnessStatus { Holds, Fails, Inconclusive };
std::string to_string(WitnessStatus s);

struct WitnessReport {
    std::string condition;
    WitnessStatus status = WitnessStatus::Inconclusive;
    int k = 1;
    std::optional<int> l;
    std::optional<ExactScalar> window_sup;
    std::optional<std::int64_t> argmax;
    bool sup_at_window_edge = false;
    bool tail_attested = false;
    std::optional<ExactScalar> tail_sup;
    bool structural = false;
    std::optional<std::int64_t> zero_pattern_violation;
    IndexInterval window;
    std::vector<std::string> notes;
};

void to_json(nlohmann::json& j, const WitnessReport& r);

/// Continuity of T at level k: sup_i ||T e_i||_k / ||e_i||_l < inf for some l.
WitnessReport check_operator_wellposed(const ShiftOperator& op, int k, const HorizonConfig& cfg);
/// Continuity of T^{-1} at level k, checked on dual_form(op).
WitnessReport check_invertible(const ShiftOperator& op, int k, const HorizonConfig& cfg);

/// v_0 = 1, v_{-j} = w_{-j+1} ... w_0, v_j = 1 / (w_1 ... w_j). Values are
/// computed on demand and cached; safe for concurrent use.
class ConjugacyWeights {
public:
    explicit ConjugacyWeights(WeightSequence w);

    [[nodiscard]] ExactScalar operator()(std::int64_t j) const;
    [[nodiscard]] Diagonal as_diagonal() const;
    [[nodiscard]] const WeightSequence& weights() const { return w_; }

private:
    struct Cache {
        std::mutex mu;
        std::vector<ExactScalar> right{ExactScalar{1}};  // v_0, v_1, ...
        std::vector<ExactScalar> left{ExactScalar{1}};   // v_0, v_{-1}, ...
    };
    WeightSequence w_;
    std::shared_ptr<Cache> cache_;
};

/// Transfers T on X to S = phi^{-1} T phi on X_d, where phi(x)_j = d_j x_j and
/// ||x||'_k = ||phi x||_k. Then ||S^n e_j||' = |d_j| ||T^n e_j||.
ShiftOperator conjugate_by(const ShiftOperator& op, const Diagonal& d);

struct ConjugacyResult {
    SpaceSpec space;
    ShiftOperator op;
    ConjugacyWeights v;
};

/// B_w on X becomes the unweighted B on X_v (bilateral backward shifts).
ConjugacyResult conjugate_to_unweighted(const ShiftOperator& op);

}  // namespace shiftlab

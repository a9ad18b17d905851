#pragma once

// Weight sequences w = (w_j). Values are magnitudes |w_j|; phases are
// dropped at ingestion and tracked, where needed, on the operator.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shiftlab/numerics.hpp"
#include "shiftlab/spaces.hpp"
#include "shiftlab/tails.hpp"

namespace shiftlab {

/// Raised when a weight is requested outside its declared domain.
class WeightUndefined : public std::out_of_range {
public:
    explicit WeightUndefined(std::int64_t j)
        : std::out_of_range("weight undefined at j = " + std::to_string(j)), index(j) {}
    std::int64_t index;
};

/// Tail thresholds that cover every index.
inline constexpr std::int64_t kEverywhereRight = -(std::int64_t{1} << 60);
inline constexpr std::int64_t kEverywhereLeft = std::int64_t{1} << 60;

/// A nonvanishing diagonal d = (d_j), used for conjugacies.
class Diagonal {
public:
    Diagonal(std::function<ExactScalar(std::int64_t)> fn, std::string label, nlohmann::json spec);
    static Diagonal constant(const ExactScalar& c);
    /// values[j - lo] on the window, `fill` elsewhere.
    static Diagonal table(std::int64_t lo, std::vector<ExactScalar> values, const ExactScalar& fill);

    [[nodiscard]] ExactScalar operator()(std::int64_t j) const { return fn_(j); }
    [[nodiscard]] const std::string& label() const { return label_; }
    [[nodiscard]] const nlohmann::json& spec() const { return spec_; }
    [[nodiscard]] const std::function<ExactScalar(std::int64_t)>& function() const { return fn_; }

private:
    std::function<ExactScalar(std::int64_t)> fn_;
    std::string label_;
    nlohmann::json spec_;
};

class WeightSource {
public:
    virtual ~WeightSource() = default;
    /// |w_j|; throws WeightUndefined outside the domain.
    [[nodiscard]] virtual ExactScalar value(std::int64_t j) const = 0;
    [[nodiscard]] virtual LogMagnitude log_value(std::int64_t j) const { return to_log(value(j)); }
    /// Finite domain, or nullopt when every integer carries a weight.
    [[nodiscard]] virtual std::optional<IndexInterval> domain() const { return std::nullopt; }
    [[nodiscard]] virtual std::optional<ConstantTail> tail(Side side) const = 0;
    [[nodiscard]] virtual nlohmann::json to_json() const = 0;
    [[nodiscard]] virtual std::string describe() const = 0;
};

class WeightSequence {
public:
    explicit WeightSequence(std::shared_ptr<const WeightSource> source);

    static WeightSequence constant(const ExactScalar& c);
    /// w_j = scale * ratio^|j|.
    static WeightSequence geometric(const ExactScalar& ratio, const ExactScalar& scale = ExactScalar{1});
    /// w_j = left for j <= split, right for j > split.
    static WeightSequence two_sided(const ExactScalar& left, const ExactScalar& right, std::int64_t split = 0);
    /// values[j - lo]; outside the window either the edge value continues or the weight is undefined.
    static WeightSequence table(std::int64_t lo, std::vector<ExactScalar> values, bool constant_continuation);
    /// Finite block table (no continuation), as produced by the block synthesis.
    static WeightSequence blocks(std::int64_t lo, std::vector<ExactScalar> values);
    /// User expression over j.
    static WeightSequence expression(const std::string& text);

    /// w'_j = 1 / w_{j + offset}.
    [[nodiscard]] WeightSequence reciprocal_shifted(std::int64_t offset) const;
    /// W_j = w_j w_{j+stride} ... w_{j+(count-1)stride}.
    [[nodiscard]] WeightSequence grouped(int count, std::int64_t stride) const;
    /// w''_j = w_j |d_j| / |d_{j+offset}|.
    [[nodiscard]] WeightSequence rescaled(const Diagonal& d, std::int64_t offset) const;

    [[nodiscard]] ExactScalar value(std::int64_t j) const { return source_->value(j); }
    [[nodiscard]] LogMagnitude log_value(std::int64_t j) const { return source_->log_value(j); }
    [[nodiscard]] std::optional<IndexInterval> domain() const { return source_->domain(); }
    [[nodiscard]] bool defined(std::int64_t j) const;
    [[nodiscard]] std::optional<ConstantTail> tail(Side side) const { return source_->tail(side); }
    [[nodiscard]] nlohmann::json to_json() const { return source_->to_json(); }
    [[nodiscard]] std::string describe() const { return source_->describe(); }

    /// Accepts {"family": ..., "params": {...}} or the same keys at top level.
    static WeightSequence from_json(const nlohmann::json& spec);
    /// "constant:2", "geometric:2", "two_sided:2,1/2", "expr:2^abs(j)".
    static WeightSequence parse(std::string_view text);

private:
    std::shared_ptr<const WeightSource> source_;
};

/// prod_{j in range} |w_j|; 1 on an empty range. Throws WeightUndefined.
ExactScalar weight_product(const WeightSequence& w, IndexInterval range);
LogMagnitude weight_product_log(const WeightSequence& w, IndexInterval range);

}  // namespace shiftlab

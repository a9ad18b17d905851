#pragma once

// Systems built from weighted shifts by rotation, inversion, powers,
// diagonal conjugacy and finite direct sums, together with the metamorphic
// law suite that checks the closure properties on a preset battery.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "shiftlab/criteria.hpp"
#include "shiftlab/shifts.hpp"

namespace shiftlab {

/// x -> lambda x on a one-dimensional space with seminorm |x|.
struct ScalarOperator {
    ExactScalar factor{1};  // |lambda|
    Phase phase;
};

class SystemSpec;
struct DirectSum {
    std::vector<SystemSpec> components;
};

class SystemSpec {
public:
    SystemSpec(ShiftOperator op);     // NOLINT(google-explicit-constructor)
    SystemSpec(ScalarOperator op);    // NOLINT(google-explicit-constructor)
    SystemSpec(DirectSum sum);        // NOLINT(google-explicit-constructor)

    [[nodiscard]] bool is_shift() const { return std::holds_alternative<ShiftOperator>(node_); }
    [[nodiscard]] bool is_scalar() const { return std::holds_alternative<ScalarOperator>(node_); }
    [[nodiscard]] bool is_sum() const { return std::holds_alternative<DirectSum>(node_); }
    [[nodiscard]] const ShiftOperator& shift() const { return std::get<ShiftOperator>(node_); }
    [[nodiscard]] const ScalarOperator& scalar() const { return std::get<ScalarOperator>(node_); }
    [[nodiscard]] const DirectSum& sum() const { return std::get<DirectSum>(node_); }

    /// Leaf components in order (a leaf system is its own single component).
    [[nodiscard]] std::vector<SystemSpec> leaves() const;
    /// Restriction to one leaf component.
    [[nodiscard]] SystemSpec component(std::size_t index) const;
    [[nodiscard]] std::string describe() const;
    [[nodiscard]] nlohmann::json to_json() const;

private:
    std::variant<ShiftOperator, ScalarOperator, DirectSum> node_;
};

/// lambda T for unimodular lambda. Throws std::invalid_argument when |lambda| != 1.
SystemSpec rotate(const SystemSpec& sys, const Phase& lambda);
/// T^{-1}, componentwise.
SystemSpec invert(const SystemSpec& sys);
/// T^m, componentwise; m >= 1.
SystemSpec power(const SystemSpec& sys, int m);
/// phi^{-1} T phi with phi = diag(d), applied to every shift component.
SystemSpec conjugacy_transfer(const SystemSpec& sys, const Diagonal& diag);
SystemSpec conjugacy_transfer(const SystemSpec& sys, const ConjugacyWeights& v);
SystemSpec direct_sum(std::vector<SystemSpec> components);

/// ||T^n x||_k for x = e_j0 placed in leaf `component` (scalar leaves ignore j0).
ExactScalar system_basis_orbit_norm(const SystemSpec& sys, std::size_t component, std::int64_t j0, std::int64_t n,
                                    int k);
/// Max-combined seminorm of T^n x for x given componentwise (one sparse vector per leaf;
/// scalar leaves read the coefficient at index 0).
ExactScalar system_orbit_norm(const SystemSpec& sys, const std::vector<SparseVector>& x, std::int64_t n, int k);

enum class SystemCriterion { AE, APE, APEInverse, UE, UPE, EDiag };
std::string to_string(SystemCriterion c);

/// A criterion on a system. Direct sums report the conjunction of their
/// components: certified iff every component is, bounded if any component
/// is bounded, inconclusive otherwise.
struct SystemVerdict {
    SystemCriterion criterion = SystemCriterion::AE;
    VerdictKind kind = VerdictKind::Inconclusive;
    std::vector<Verdict> components;
    [[nodiscard]] bool certified() const { return kind == VerdictKind::CertifiedUnbounded; }
};
void to_json(nlohmann::json& j, const SystemVerdict& v);

SystemVerdict check_system(const SystemSpec& sys, SystemCriterion criterion, const HorizonConfig& cfg);
/// The criterion on a scalar system x -> lambda x.
Verdict check_scalar(const ScalarOperator& op, SystemCriterion criterion, const HorizonConfig& cfg);

struct NamedSystem {
    std::string name;
    SystemSpec system;
};

/// The shifts the criteria and laws are exercised on. `blocks` adds the
/// synthesized block weights with that many blocks (0 to omit).
std::vector<NamedSystem> preset_battery(int blocks = 3);

struct LawResult {
    std::string law;
    std::string preset;
    bool pass = true;
    bool skipped = false;
    std::vector<std::string> details;  // failures and reported marginal cases
};
void to_json(nlohmann::json& j, const LawResult& r);

struct PropsReport {
    std::vector<LawResult> results;
    [[nodiscard]] bool passed() const;
};
void to_json(nlohmann::json& j, const PropsReport& r);

/// Horizons for the law suite: n_max 256, window 64, M_grid 2^0..2^6, k_max 2, l_max 6, exact.
HorizonConfig props_config();

LawResult law_rotation(const NamedSystem& s, const HorizonConfig& cfg);
LawResult law_inversion(const NamedSystem& s, const HorizonConfig& cfg);
LawResult law_power(const NamedSystem& s, const HorizonConfig& cfg, const std::vector<int>& ms = {2, 3});
LawResult law_conjugacy(const NamedSystem& s, const HorizonConfig& cfg);
/// Conjunction law over all ordered pairs of the given systems.
std::vector<LawResult> law_direct_sum(const std::vector<NamedSystem>& systems, const HorizonConfig& cfg);

/// Every law on every preset of the battery, JSON pass/fail matrix.
PropsReport run_props(const std::vector<NamedSystem>& battery, const HorizonConfig& cfg);

}  // namespace shiftlab

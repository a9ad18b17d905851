#pragma once

// Finite-horizon certificates for average, uniform and basis expansivity of
// weighted shifts.
//
// Every "sup = inf" or "lim = inf" becomes a three-valued verdict:
//   CertifiedUnbounded  every threshold in M_grid is crossed within N_max
//   BoundedWitness      an explicit bound on the window plus a tail attestation
//   Inconclusive        anything else

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shiftlab/config.hpp"
#include "shiftlab/numerics.hpp"
#include "shiftlab/shifts.hpp"

namespace shiftlab {

enum class VerdictKind { CertifiedUnbounded, BoundedWitness, Inconclusive };
std::string to_string(VerdictKind kind);

struct Crossing {
    ExactScalar threshold;
    std::optional<std::int64_t> first_n;
};

/// Per-n values of an aggregate (Cesàro average, window infimum, orbit norm).
struct CriterionTrace {
    std::string quantity;
    int k = 1;
    std::optional<int> l;
    std::int64_t start_n = 1;
    std::vector<Magnitude> values;
};

struct LevelEvidence {
    int k = 1;
    std::optional<int> l;
    std::string branch;
    bool certified = false;
    std::vector<Crossing> crossings;
    std::optional<Magnitude> bound;
    std::string attestation;
    std::int64_t horizon = 0;
};

struct Verdict {
    std::string criterion;
    std::string property;
    VerdictKind kind = VerdictKind::Inconclusive;
    std::string branch;
    std::optional<int> k;
    std::optional<int> l;
    std::vector<Crossing> crossings;
    std::optional<Magnitude> bound;
    std::string attestation;
    std::vector<LevelEvidence> levels;
    std::vector<std::string> notes;
    std::vector<CriterionTrace> traces;
    std::optional<bool> positive;  // set by backward UE: property (a) means UPE
    bool exclusivity_violated = false;
    std::int64_t horizon = 0;
    bool horizon_clipped = false;
    HorizonConfig config;
    std::string op;

    [[nodiscard]] bool certified() const { return kind == VerdictKind::CertifiedUnbounded; }
};

void to_json(nlohmann::json& j, const Crossing& c);
void to_json(nlohmann::json& j, const CriterionTrace& t);
void to_json(nlohmann::json& j, const LevelEvidence& e);
void to_json(nlohmann::json& j, const Verdict& v);

/// One branch of the Cesàro criteria: running averages of ||T^i e_r||_k.
struct BranchResult {
    std::vector<Crossing> crossings;
    bool all_crossed = false;
    bool bounded = false;  // bound + attested nonincreasing tail
    std::optional<Magnitude> bound;
    std::string attestation;
    std::int64_t horizon = 0;
    bool clipped = false;
    std::optional<CriterionTrace> trace;
};

/// g(n) = (1/n) sum ||T^i e_r||_k over i = 1..n (or i = 0..n-1 with include_zero).
BranchResult cesaro_branch(const ShiftOperator& op, std::int64_t r, int k, const HorizonConfig& cfg,
                           bool include_zero = false);

/// Both Cesàro branches; left = orbit of T, right = orbit of T^{-1}. Bilateral shifts.
Verdict avg_expansive(const ShiftOperator& op, const HorizonConfig& cfg);
Verdict avg_expansive_backward(const ShiftOperator& op, const HorizonConfig& cfg);
Verdict avg_expansive_forward(const ShiftOperator& op, const HorizonConfig& cfg);

enum class OrbitSide { Op, Inverse };
/// Average positive expansivity of T (side Op) or T^{-1} (side Inverse).
Verdict avg_pos_expansive(const ShiftOperator& op, OrbitSide side, const HorizonConfig& cfg);

/// Window infimum of a uniform-expansivity ratio for one n.
enum class RatioFamily { Forward, Backward };
enum class IndexHalf { All, NonNegative, Negative };
struct WindowInfimum {
    Magnitude value;
    bool infinite = false;  // empty index set
    std::optional<std::int64_t> argmin;
    bool tail_attested = false;
    bool from_tail = false;
};
/// inf over j in I_k (restricted to the half) of ||T^{+-n} e_j||_l / ||e_j||_k,
/// the window part taken on [-W, W] and the rest from declared tails. Exact.
WindowInfimum ue_window_infimum(const ShiftOperator& op, RatioFamily family, IndexHalf half, int k, int l,
                                std::int64_t n, const HorizonConfig& cfg);

/// Properties (A)/(B)/(C) for a bilateral forward shift.
Verdict unif_expansive_forward(const ShiftOperator& op, const HorizonConfig& cfg);
/// Properties (a)/(b)/(c) for a bilateral backward shift, via dual_form.
Verdict unif_expansive_backward(const ShiftOperator& op, const HorizonConfig& cfg);
/// Dispatches on direction.
Verdict unif_expansive(const ShiftOperator& op, const HorizonConfig& cfg);
/// Uniform positive expansivity: property (A) of T itself, bilateral or unilateral.
Verdict unif_pos_expansive(const ShiftOperator& op, const HorizonConfig& cfg);

/// For every basis vector in the window, does sup_{|n| <= N} ||T^n e_j||_k cross M_grid?
Verdict expansive_basis_diagnostic(const ShiftOperator& op, const HorizonConfig& cfg);

/// Do ||B^j e_0||_k and ||B^{-j} e_0||_k both tend to 0? Certified = mixing evidence;
/// BoundedWitness = a sequence attested not to tend to 0.
Verdict mixing_check(const ShiftOperator& op, const HorizonConfig& cfg);

struct HierarchyReport {
    Verdict ue;
    Verdict ae;
    Verdict ediag;
    std::vector<std::string> violations;  // stronger certified, weaker attested bounded
    std::vector<std::string> unresolved;  // stronger certified, weaker inconclusive at this horizon
    [[nodiscard]] bool consistent() const { return violations.empty(); }
};
void to_json(nlohmann::json& j, const HierarchyReport& r);

/// UE certified => AE certified => basis diagnostic certified. A violation is a
/// certified stronger verdict against a bounded weaker one. Unilateral
/// forward shifts use the positive variants.
HierarchyReport hierarchy_audit(const ShiftOperator& op, const HorizonConfig& cfg);

}  // namespace shiftlab

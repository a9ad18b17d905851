#pragma once

// Köthe matrices, the spaces lambda_p(A, J) and their seminorms.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shiftlab/numerics.hpp"
#include "shiftlab/tails.hpp"

namespace shiftlab {

enum class IndexSet { N, Z };

std::string to_string(IndexSet set);
IndexSet index_set_from_string(std::string_view text);

/// Closed integer interval [lo, hi]; empty when lo > hi.
struct IndexInterval {
    std::int64_t lo = 0;
    std::int64_t hi = -1;

    [[nodiscard]] bool empty() const { return lo > hi; }
    [[nodiscard]] std::int64_t size() const { return empty() ? 0 : hi - lo + 1; }
    [[nodiscard]] bool contains(std::int64_t j) const { return lo <= j && j <= hi; }
};

/// Smallest index of the index set (1 for N). Z has none.
std::optional<std::int64_t> first_index(IndexSet set);

class MatrixSource {
public:
    virtual ~MatrixSource() = default;
    [[nodiscard]] virtual IndexSet index_set() const = 0;
    [[nodiscard]] virtual ExactScalar entry(std::int64_t j, int k) const = 0;
    [[nodiscard]] virtual LogMagnitude log_entry(std::int64_t j, int k) const { return to_log(entry(j, k)); }
    [[nodiscard]] virtual std::optional<MonomialTail> tail(Side side, int k) const = 0;
    [[nodiscard]] virtual nlohmann::json to_json() const = 0;
    [[nodiscard]] virtual std::string describe() const = 0;
};

/// A Köthe matrix a_{j,k}: entries are nonnegative, nondecreasing in k.
class KotheMatrix {
public:
    explicit KotheMatrix(std::shared_ptr<const MatrixSource> source);

    /// a_{j,k} = value.
    static KotheMatrix constant(IndexSet set, ExactScalar value = ExactScalar{1});
    /// a_{j,k} = (|j| + 1)^(scale * k).
    static KotheMatrix power(IndexSet set, int scale = 1);
    /// a_{j,k} = 1 if j > -k, else 0 (bilateral).
    static KotheMatrix halfline();
    /// rows[j - lo][k - 1]; levels past the last column repeat it. Outside the
    /// window entries continue the nearest edge row, or raise when continuation
    /// is disabled.
    static KotheMatrix table(IndexSet set, std::int64_t lo, std::vector<std::vector<ExactScalar>> rows,
                             bool constant_continuation);
    /// User expression over j and k, e.g. "(abs(j)+1)^k" or "j > -k".
    static KotheMatrix expression(IndexSet set, const std::string& text);
    /// a'_{j,k} = |d_j| a_{j,k}.
    [[nodiscard]] KotheMatrix row_scaled(std::function<ExactScalar(std::int64_t)> diag, std::string label,
                                         nlohmann::json diag_json) const;

    [[nodiscard]] IndexSet index_set() const { return source_->index_set(); }
    /// Throws std::out_of_range for indices outside the index set.
    [[nodiscard]] ExactScalar entry(std::int64_t j, int k) const;
    [[nodiscard]] LogMagnitude log_entry(std::int64_t j, int k) const;
    /// Monomial behaviour far out on a side, if declared.
    [[nodiscard]] std::optional<MonomialTail> tail(Side side, int k) const { return source_->tail(side, k); }
    [[nodiscard]] nlohmann::json to_json() const { return source_->to_json(); }
    [[nodiscard]] std::string describe() const { return source_->describe(); }
    [[nodiscard]] bool contains(std::int64_t j) const;

    static KotheMatrix from_json(const nlohmann::json& spec, IndexSet set);

private:
    std::shared_ptr<const MatrixSource> source_;
};

struct MatrixViolation {
    std::int64_t j;
    int k;
    std::string what;
};

/// Checks nonnegativity and monotonicity in k on a window, levels 1..k_max.
std::vector<MatrixViolation> validate_matrix(const KotheMatrix& a, IndexInterval window, int k_max);

class SpaceSpec {
public:
    SpaceSpec(KotheMatrix matrix, double p, std::string name = "custom");

    [[nodiscard]] const KotheMatrix& matrix() const { return matrix_; }
    [[nodiscard]] double p() const { return p_; }
    [[nodiscard]] IndexSet index_set() const { return matrix_.index_set(); }
    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] bool sup_type() const { return p_ == 0.0; }

    [[nodiscard]] nlohmann::json to_json() const;
    static SpaceSpec from_json(const nlohmann::json& spec);

private:
    KotheMatrix matrix_;
    double p_;
    std::string name_;
};

/// Finitely supported vector with nonzero exact coefficients.
class SparseVector {
public:
    SparseVector() = default;
    static SparseVector basis(std::int64_t j);

    /// Stores the coefficient; zero removes the index.
    void set(std::int64_t j, const ExactScalar& value);
    [[nodiscard]] ExactScalar get(std::int64_t j) const;
    [[nodiscard]] bool empty() const { return coeffs_.empty(); }
    [[nodiscard]] std::size_t size() const { return coeffs_.size(); }
    [[nodiscard]] const std::map<std::int64_t, ExactScalar>& coefficients() const { return coeffs_; }

    auto begin() const { return coeffs_.begin(); }
    auto end() const { return coeffs_.end(); }

    friend bool operator==(const SparseVector& a, const SparseVector& b) { return a.coeffs_ == b.coeffs_; }

    /// "e:j" or "j=c,j=c,...".
    static SparseVector parse(std::string_view text);
    [[nodiscard]] std::string to_string() const;

private:
    std::map<std::int64_t, ExactScalar> coeffs_;
};

/// ||x||_k. Exact for p in {0, 1}, for single-coordinate vectors, and for
/// integer p whenever the p-th root of the exact power sum is rational.
Magnitude seminorm(const SparseVector& x, int k, const SpaceSpec& space);

/// I_k intersected with the window (and with the index set).
std::vector<std::int64_t> index_support(const SpaceSpec& space, int k, IndexInterval window);

/// Named presets: c0_Z, lp_Z(p), c0_N, lp_N(p), s_Z, halfline_Z. Parameters may
/// be given as "lp_Z(2)" or "lp_Z:2"; halfline_Z accepts an optional p.
SpaceSpec preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace shiftlab

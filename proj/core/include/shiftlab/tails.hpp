#pragma once

// Closed-form behaviour of matrices and weights beyond a finite window.
//
// A matrix row family has a monomial tail on a side when, past some index,
// entry(j, k) = coef * (|j| + 1)^degree. A weight sequence has a constant tail
// when |w_j| = c past some index. Criteria use these descriptors to turn a
// window infimum (or supremum) into a true one.

#include <cstdint>
#include <optional>

#include "shiftlab/numerics.hpp"

namespace shiftlab {

enum class Side { Left, Right };

/// entry(j, k) = coef * (|j| + 1)^degree for j >= from (Right) or j <= from (Left).
struct MonomialTail {
    ExactScalar coef;
    int degree = 0;
    std::int64_t from = 0;
};

/// |w_j| = value for j >= from (Right) or j <= from (Left).
struct ConstantTail {
    ExactScalar value;
    std::int64_t from = 0;
};

/// Extremum of g(x) = (x + delta)^p / x^q over integers x >= x0.
struct TailExtremum {
    ExactScalar value;     // meaningful unless infinite
    bool infinite = false; // +infinity (sup unbounded, or inf over an empty set)
    bool attained = true;  // false when the value is only a limit
};

/// Requires x0 >= 1 and x0 + delta >= 1.
TailExtremum poly_ratio_inf(int p, int q, std::int64_t delta, std::int64_t x0);
TailExtremum poly_ratio_sup(int p, int q, std::int64_t delta, std::int64_t x0);

/// True when t(x) = x^q * c^(x/step) is nonincreasing along x, x + step, ... from x0.
bool geometric_poly_nonincreasing(int q, const ExactScalar& c, std::int64_t step, std::int64_t x0);
/// True when t(x) = x^q * c^(x/step) is nondecreasing along x, x + step, ... from x0.
bool geometric_poly_nondecreasing(int q, const ExactScalar& c, std::int64_t step, std::int64_t x0);

/// (x + delta)^p / x^q as an exact value.
ExactScalar poly_ratio(int p, int q, std::int64_t delta, std::int64_t x);

}  // namespace shiftlab

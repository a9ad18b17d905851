#include "shiftlab/tails.hpp"

#include <algorithm>
#include <stdexcept>

namespace shiftlab {

ExactScalar poly_ratio(int p, int q, std::int64_t delta, std::int64_t x) {
    return ExactScalar{x + delta}.pow(p) / ExactScalar{x}.pow(q);
}

namespace {

void check_domain(std::int64_t delta, std::int64_t x0) {
    if (x0 < 1 || x0 + delta < 1) throw std::invalid_argument("poly_ratio: need x0 >= 1 and x0 + delta >= 1");
}

// Integer candidates around the real stationary point q*delta/(p-q), clamped to x0.
ExactScalar best_near(int p, int q, std::int64_t delta, std::int64_t x0, bool minimise) {
    std::int64_t num = static_cast<std::int64_t>(q) * delta;
    std::int64_t den = p - q;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t lo = num >= 0 ? num / den : -((-num + den - 1) / den);
    std::int64_t cands[] = {std::max(x0, lo), std::max(x0, lo + 1)};
    ExactScalar best = poly_ratio(p, q, delta, cands[0]);
    ExactScalar other = poly_ratio(p, q, delta, cands[1]);
    if (minimise ? other < best : other > best) best = other;
    return best;
}

}  // namespace

TailExtremum poly_ratio_inf(int p, int q, std::int64_t delta, std::int64_t x0) {
    check_domain(delta, x0);
    if (p < q) return {ExactScalar{0}, false, false};
    if (p == q) {
        if (delta > 0) return {ExactScalar{1}, false, false};
        return {poly_ratio(p, q, delta, x0), false, true};
    }
    if (delta <= 0) return {poly_ratio(p, q, delta, x0), false, true};
    return {best_near(p, q, delta, x0, true), false, true};
}

TailExtremum poly_ratio_sup(int p, int q, std::int64_t delta, std::int64_t x0) {
    check_domain(delta, x0);
    if (p > q) return {ExactScalar{0}, true, false};
    if (p == q) {
        if (delta < 0) return {ExactScalar{1}, false, false};
        return {poly_ratio(p, q, delta, x0), false, true};
    }
    if (delta >= 0) return {poly_ratio(p, q, delta, x0), false, true};
    return {best_near(p, q, delta, x0, false), false, true};
}

bool geometric_poly_nonincreasing(int q, const ExactScalar& c, std::int64_t step, std::int64_t x0) {
    if (x0 < 1 || step < 1) throw std::invalid_argument("geometric_poly: need x0 >= 1 and step >= 1");
    return poly_ratio(q, q, step, x0) * c <= ExactScalar{1};
}

bool geometric_poly_nondecreasing(int q, const ExactScalar& c, std::int64_t step, std::int64_t x0) {
    if (x0 < 1 || step < 1) throw std::invalid_argument("geometric_poly: need x0 >= 1 and step >= 1");
    (void)q;
    return c >= ExactScalar{1};
}

}  // namespace shiftlab

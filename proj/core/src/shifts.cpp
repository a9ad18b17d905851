#include "shiftlab/shifts.hpp"

#include <algorithm>

namespace shiftlab {

using nlohmann::json;

std::string to_string(Direction d) { return d == Direction::Forward ? "forward" : "backward"; }

Direction direction_from_string(std::string_view text) {
    if (text == "forward" || text == "F") return Direction::Forward;
    if (text == "backward" || text == "B") return Direction::Backward;
    throw std::invalid_argument("unknown shift direction: " + std::string(text));
}

std::string to_string(WitnessStatus s) {
    switch (s) {
        case WitnessStatus::Holds: return "holds";
        case WitnessStatus::Fails: return "fails";
        case WitnessStatus::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

ShiftOperator::ShiftOperator(Direction direction, WeightSequence weights, SpaceSpec space, int step, Phase phase)
    : direction_(direction), weights_(std::move(weights)), space_(std::move(space)), step_(step), phase_(std::move(phase)) {
    if (step_ < 1) throw std::invalid_argument("shift step must be >= 1");
    if (phase_.re * phase_.re + phase_.im * phase_.im != ExactScalar{1}) {
        throw std::invalid_argument("operator phase must be unimodular");
    }
}

ShiftOperator ShiftOperator::with_phase(Phase phase) const {
    return ShiftOperator(direction_, weights_, space_, step_, std::move(phase));
}

ShiftOperator ShiftOperator::with_space(SpaceSpec space) const {
    return ShiftOperator(direction_, weights_, std::move(space), step_, phase_);
}

ShiftOperator ShiftOperator::with_weights(WeightSequence weights) const {
    return ShiftOperator(direction_, std::move(weights), space_, step_, phase_);
}

json ShiftOperator::to_json() const {
    json out{{"direction", shiftlab::to_string(direction_)},
             {"step", step_},
             {"weights", weights_.to_json()},
             {"space", space_.to_json()}};
    if (!(phase_ == Phase{})) out["phase"] = {{"re", phase_.re}, {"im", phase_.im}};
    return out;
}

std::string ShiftOperator::describe() const {
    std::string name = direction_ == Direction::Forward ? "F" : "B";
    if (step_ > 1) name += "^(" + std::to_string(step_) + "-step)";
    return name + "[" + weights_.describe() + "] on " + space_.name();
}

ShiftOperator dual_form(const ShiftOperator& op) {
    if (!op.bilateral()) throw NotInvertible("dual_form needs a bilateral shift");
    Direction d = op.direction() == Direction::Forward ? Direction::Backward : Direction::Forward;
    WeightSequence w = op.weights().reciprocal_shifted(-op.displacement());
    return ShiftOperator(d, std::move(w), op.space(), op.step(), op.phase());
}

ShiftOperator power(const ShiftOperator& op, int m) {
    if (m < 1) throw std::invalid_argument("power needs m >= 1");
    if (m == 1) return op;
    return ShiftOperator(op.direction(), op.weights().grouped(m, op.displacement()), op.space(), op.step() * m,
                         op.phase());
}

BasisImage basis_image(const ShiftOperator& op, std::int64_t j, std::int64_t n) {
    const KotheMatrix& a = op.space().matrix();
    if (!a.contains(j)) throw std::out_of_range("basis index " + std::to_string(j) + " outside the index set");
    if (n == 0) return {j, ExactScalar{1}};
    const std::int64_t d = op.displacement();
    if (n < 0) {
        if (op.bilateral()) return basis_image(dual_form(op), j, -n);
        if (op.direction() == Direction::Backward) {
            throw NotInvertible("unilateral backward shifts are not injective");
        }
        ExactScalar c{1};
        std::int64_t at = j;
        for (std::int64_t i = 0; i < -n; ++i) {
            at -= d;
            if (!a.contains(at)) {
                throw NotInvertible("F_w^{-1} undefined: e_" + std::to_string(j) + " leaves the range of F_w");
            }
            c /= op.weights().value(at);
        }
        return {at, c};
    }
    ExactScalar c{1};
    std::int64_t at = j;
    for (std::int64_t i = 0; i < n; ++i) {
        if (!a.contains(at + d)) return {std::nullopt, ExactScalar{0}};
        c *= op.weights().value(at);
        at += d;
    }
    return {at, c};
}

SparseVector apply(const ShiftOperator& op, const SparseVector& x, std::int64_t n) {
    SparseVector out;
    for (const auto& [j, c] : x) {
        BasisImage img = basis_image(op, j, n);
        if (!img.target) continue;
        out.set(*img.target, out.get(*img.target) + c * img.coefficient);
    }
    return out;
}

ExactScalar basis_orbit_norm(const ShiftOperator& op, std::int64_t j0, std::int64_t n, int k) {
    BasisImage img = basis_image(op, j0, n);
    if (!img.target) return ExactScalar{0};
    return op.space().matrix().entry(*img.target, k) * img.coefficient.abs();
}

LogMagnitude basis_orbit_norm_log(const ShiftOperator& op, std::int64_t j0, std::int64_t n, int k) {
    const KotheMatrix& a = op.space().matrix();
    if (!a.contains(j0)) throw std::out_of_range("basis index " + std::to_string(j0) + " outside the index set");
    if (n < 0) {
        if (op.bilateral()) return basis_orbit_norm_log(dual_form(op), j0, -n, k);
        return to_log(basis_orbit_norm(op, j0, n, k));
    }
    const std::int64_t d = op.displacement();
    LogMagnitude c = LogMagnitude::from_log2(0.0, true);
    std::int64_t at = j0;
    for (std::int64_t i = 0; i < n; ++i) {
        if (!a.contains(at + d)) return LogMagnitude::zero();
        c *= op.weights().log_value(at);
        at += d;
    }
    return c * a.log_entry(at, k);
}

void to_json(json& j, const WitnessReport& r) {
    j = json{{"condition", r.condition},
             {"status", to_string(r.status)},
             {"k", r.k},
             {"l", r.l ? json(*r.l) : json(nullptr)},
             {"window", {r.window.lo, r.window.hi}},
             {"window_sup", r.window_sup ? json(*r.window_sup) : json(nullptr)},
             {"argmax", r.argmax ? json(*r.argmax) : json(nullptr)},
             {"sup_at_window_edge", r.sup_at_window_edge},
             {"tail_attested", r.tail_attested},
             {"tail_sup", r.tail_sup ? json(*r.tail_sup) : json(nullptr)},
             {"structural", r.structural},
             {"zero_pattern_violation", r.zero_pattern_violation ? json(*r.zero_pattern_violation) : json(nullptr)},
             {"notes", r.notes}};
}

namespace {

struct TailVerdict {
    bool attested = false;
    bool bounded = false;
    ExactScalar sup{0};
};

// Supremum of a_{i+d,k} |W_i| / a_{i,l} for i beyond the window, from declared tails.
TailVerdict continuity_tail(const ShiftOperator& op, int k, int l, std::int64_t W) {
    const KotheMatrix& a = op.space().matrix();
    const WeightSequence& w = op.weights();
    const std::int64_t d = op.displacement();
    TailVerdict out{true, true, ExactScalar{0}};
    std::vector<Side> sides{Side::Right};
    if (op.bilateral()) sides.push_back(Side::Left);
    for (Side side : sides) {
        auto tk = a.tail(side, k);
        auto tl = a.tail(side, l);
        auto tw = w.tail(side);
        if (!tk || !tl || !tw || W + 1 < std::abs(d)) return {};
        const std::int64_t edge = side == Side::Right ? W + 1 : -W - 1;
        bool covered = side == Side::Right ? (tl->from <= edge && tk->from <= edge + d && tw->from <= edge)
                                           : (tl->from >= edge && tk->from >= edge + d && tw->from >= edge);
        if (!covered) return {};
        const std::int64_t delta = side == Side::Right ? d : -d;
        ExactScalar s;
        if (tl->coef.is_zero()) {
            if (!tk->coef.is_zero()) return {true, false, ExactScalar{0}};
            s = ExactScalar{1};
        } else if (tk->coef.is_zero()) {
            s = ExactScalar{0};
        } else {
            TailExtremum e = poly_ratio_sup(tk->degree, tl->degree, delta, W + 2);
            if (e.infinite) return {true, false, ExactScalar{0}};
            s = tk->coef * tw->value / tl->coef * e.value;
        }
        if (s > out.sup) out.sup = s;
    }
    return out;
}

WitnessReport continuity_check(const ShiftOperator& op, int k, const HorizonConfig& cfg, std::string condition) {
    cfg.validate();
    WitnessReport rep;
    rep.condition = std::move(condition);
    rep.k = k;
    const KotheMatrix& a = op.space().matrix();
    const std::int64_t d = op.displacement();
    IndexInterval win{op.bilateral() ? -cfg.window : 1, cfg.window};
    if (auto dom = op.weights().domain()) {
        IndexInterval clipped{std::max(win.lo, dom->lo), std::min(win.hi, dom->hi)};
        if (clipped.lo != win.lo || clipped.hi != win.hi) rep.notes.push_back("window clipped to the weight domain");
        win = clipped;
    }
    rep.window = win;

    std::optional<WitnessReport> candidate;
    std::optional<std::int64_t> first_violation;
    bool all_violate = true;
    for (int l = k; l <= cfg.l_max; ++l) {
        std::optional<std::int64_t> violation;
        ExactScalar sup{0};
        std::optional<std::int64_t> argmax;
        for (std::int64_t i = win.lo; i <= win.hi; ++i) {
            if (!a.contains(i + d)) continue;
            ExactScalar num = a.entry(i + d, k) * op.weights().value(i);
            ExactScalar den = a.entry(i, l);
            ExactScalar r;
            if (den.is_zero()) {
                if (!num.is_zero()) {
                    violation = i;
                    break;
                }
                r = ExactScalar{1};
            } else {
                r = num / den;
            }
            if (!argmax || r > sup) {
                sup = r;
                argmax = i;
            }
        }
        if (violation) {
            if (!first_violation) first_violation = violation;
            continue;
        }
        all_violate = false;
        WitnessReport cur = rep;
        cur.l = l;
        cur.window_sup = sup;
        cur.argmax = argmax;
        cur.sup_at_window_edge = argmax && (*argmax == win.lo || *argmax == win.hi);
        TailVerdict tail = continuity_tail(op, k, l, cfg.window);
        if (tail.attested && !op.weights().domain()) {
            cur.tail_attested = true;
            if (tail.bounded) {
                cur.tail_sup = tail.sup;
                cur.status = WitnessStatus::Holds;
                if (tail.sup > sup) cur.notes.push_back("supremum approached in the tail");
                return cur;
            }
            cur.notes.push_back("tail ratio unbounded at l = " + std::to_string(l));
            continue;
        }
        if (!candidate) candidate = cur;
    }
    if (candidate) {
        candidate->status = WitnessStatus::Inconclusive;
        candidate->notes.push_back("no tail attestation; window supremum only");
        if (candidate->sup_at_window_edge) candidate->notes.push_back("supremum sits at the window edge (growing)");
        return *candidate;
    }
    rep.zero_pattern_violation = first_violation;
    if (all_violate) {
        rep.status = WitnessStatus::Fails;
        rep.notes.push_back("zero pattern violated for every l <= l_max");
    } else {
        rep.status = WitnessStatus::Inconclusive;
        rep.notes.push_back("ratio unbounded in the attested tail for every admissible l <= l_max");
    }
    return rep;
}

std::string condition_name(const ShiftOperator& op, bool inverse) {
    std::string base = op.direction() == Direction::Forward ? "Fw" : "Bw";
    return base + (inverse ? "-Invertible" : "-Defined");
}

}  // namespace

WitnessReport check_operator_wellposed(const ShiftOperator& op, int k, const HorizonConfig& cfg) {
    return continuity_check(op, k, cfg, condition_name(op, false));
}

WitnessReport check_invertible(const ShiftOperator& op, int k, const HorizonConfig& cfg) {
    if (!op.bilateral()) {
        WitnessReport rep;
        rep.condition = condition_name(op, true);
        rep.k = k;
        rep.status = WitnessStatus::Fails;
        rep.structural = true;
        rep.notes.push_back(op.direction() == Direction::Forward ? "unilateral F_w is not surjective"
                                                                 : "unilateral B_w is not injective");
        return rep;
    }
    return continuity_check(dual_form(op), k, cfg, condition_name(op, true));
}

ConjugacyWeights::ConjugacyWeights(WeightSequence w) : w_(std::move(w)), cache_(std::make_shared<Cache>()) {}

ExactScalar ConjugacyWeights::operator()(std::int64_t j) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (j >= 0) {
        auto& v = cache_->right;
        while (static_cast<std::int64_t>(v.size()) <= j) {
            auto t = static_cast<std::int64_t>(v.size());
            v.push_back(v.back() / w_.value(t));
        }
        return v[static_cast<std::size_t>(j)];
    }
    auto& v = cache_->left;
    while (static_cast<std::int64_t>(v.size()) <= -j) {
        auto t = static_cast<std::int64_t>(v.size()) - 1;
        v.push_back(w_.value(-t) * v.back());
    }
    return v[static_cast<std::size_t>(-j)];
}

Diagonal ConjugacyWeights::as_diagonal() const {
    ConjugacyWeights self = *this;
    return Diagonal([self](std::int64_t j) { return self(j); }, "v",
                    json{{"family", "conjugacy"}, {"weights", w_.to_json()}});
}

ShiftOperator conjugate_by(const ShiftOperator& op, const Diagonal& d) {
    const SpaceSpec& sp = op.space();
    KotheMatrix scaled = sp.matrix().row_scaled(d.function(), d.label(), d.spec());
    SpaceSpec transferred(scaled, sp.p(), sp.name() + "_" + d.label());
    return ShiftOperator(op.direction(), op.weights().rescaled(d, op.displacement()), transferred, op.step(), op.phase());
}

ConjugacyResult conjugate_to_unweighted(const ShiftOperator& op) {
    if (!op.bilateral() || op.direction() != Direction::Backward || op.step() != 1) {
        throw std::invalid_argument("conjugate_to_unweighted needs a bilateral one-step backward shift");
    }
    ConjugacyWeights v(op.weights());
    Diagonal d = v.as_diagonal();
    const SpaceSpec& sp = op.space();
    SpaceSpec xv(sp.matrix().row_scaled(d.function(), "v", d.spec()), sp.p(), sp.name() + "_v");
    ShiftOperator unweighted(Direction::Backward, WeightSequence::constant(ExactScalar{1}), xv, 1, op.phase());
    return {xv, unweighted, v};
}

}  // namespace shiftlab

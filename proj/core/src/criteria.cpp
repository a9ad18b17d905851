#include "shiftlab/criteria.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "parallel.hpp"

namespace shiftlab {

using nlohmann::json;

std::string to_string(VerdictKind kind) {
    switch (kind) {
        case VerdictKind::CertifiedUnbounded: return "CertifiedUnbounded";
        case VerdictKind::BoundedWitness: return "BoundedWitness";
        case VerdictKind::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

void to_json(json& j, const Crossing& c) {
    j = json{{"M", c.threshold}, {"first_n", c.first_n ? json(*c.first_n) : json(nullptr)}};
}

void to_json(json& j, const CriterionTrace& t) {
    j = json{{"quantity", t.quantity}, {"k", t.k}, {"l", t.l ? json(*t.l) : json(nullptr)},
             {"start_n", t.start_n}, {"values", t.values}};
}

void to_json(json& j, const LevelEvidence& e) {
    j = json{{"k", e.k},
             {"l", e.l ? json(*e.l) : json(nullptr)},
             {"branch", e.branch},
             {"certified", e.certified},
             {"crossings", e.crossings},
             {"bound", e.bound ? json(*e.bound) : json(nullptr)},
             {"attestation", e.attestation},
             {"horizon", e.horizon}};
}

void to_json(json& j, const Verdict& v) {
    j = json{{"criterion", v.criterion},
             {"property", v.property},
             {"kind", to_string(v.kind)},
             {"k", v.k ? json(*v.k) : json(nullptr)},
             {"l", v.l ? json(*v.l) : json(nullptr)},
             {"branch", v.branch},
             {"crossings", v.crossings},
             {"bound", v.bound ? json(*v.bound) : json(nullptr)},
             {"attestation", v.attestation},
             {"levels", v.levels},
             {"horizon", v.horizon},
             {"horizon_clipped", v.horizon_clipped},
             {"notes", v.notes},
             {"operator", v.op},
             {"config", v.config}};
    if (v.positive) j["positive"] = *v.positive;
    if (v.exclusivity_violated) j["exclusivity_violated"] = true;
    if (!v.traces.empty()) j["traces"] = v.traces;
}

void to_json(json& j, const HierarchyReport& r) {
    j = json{{"ue", r.ue}, {"ae", r.ae}, {"ediag", r.ediag}, {"violations", r.violations},
             {"unresolved", r.unresolved}, {"consistent", r.consistent()}};
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct LogPolicy {
    using T = double;
    static T from_exact(const ExactScalar& x) { return to_log(x).log2(); }
    static T one() { return 0.0; }
    static T zero() { return kNegInf; }
    static bool is_zero(T x) { return x == kNegInf; }
    static T mul(T a, T b) { return (a == kNegInf || b == kNegInf) ? kNegInf : a + b; }
    static T div(T a, T b) { return a == kNegInf ? kNegInf : a - b; }
    static T add(T a, T b) {
        if (a == kNegInf) return b;
        if (b == kNegInf) return a;
        T hi = std::max(a, b);
        T lo = std::min(a, b);
        return hi + std::log1p(std::exp2(lo - hi)) / std::numbers::ln2;
    }
    static T div_count(T a, std::int64_t n) { return a == kNegInf ? a : a - std::log2(static_cast<double>(n)); }
    static T entry(const KotheMatrix& a, std::int64_t j, int k) { return a.log_entry(j, k).log2(); }
    static T weight(const WeightSequence& w, std::int64_t j) { return w.log_value(j).log2(); }
    static T scaled_pow(const ExactScalar& K, const ExactScalar& c, std::int64_t e, const ExactScalar& poly) {
        if (K.is_zero() || poly.is_zero()) return kNegInf;
        return from_exact(K) + static_cast<double>(e) * from_exact(c) + from_exact(poly);
    }
    static Magnitude mag(T x) { return Magnitude{LogMagnitude::from_log2(x)}; }
};

struct ExactPolicy {
    using T = ExactScalar;
    static T from_exact(const ExactScalar& x) { return x; }
    static T one() { return ExactScalar{1}; }
    static T zero() { return ExactScalar{0}; }
    static bool is_zero(const T& x) { return x.is_zero(); }
    static T mul(const T& a, const T& b) { return a * b; }
    static T div(const T& a, const T& b) { return a / b; }
    static T add(const T& a, const T& b) { return a + b; }
    static T div_count(const T& a, std::int64_t n) { return a / ExactScalar{n}; }
    static T entry(const KotheMatrix& a, std::int64_t j, int k) { return a.entry(j, k); }
    static T weight(const WeightSequence& w, std::int64_t j) { return w.value(j); }
    static T scaled_pow(const ExactScalar& K, const ExactScalar& c, std::int64_t e, const ExactScalar& poly) {
        return K * c.pow(e) * poly;
    }
    static Magnitude mag(const T& x) { return Magnitude{x}; }
};

template <class P>
std::vector<typename P::T> thresholds(const HorizonConfig& cfg) {
    std::vector<typename P::T> out;
    out.reserve(cfg.m_grid.size());
    for (const auto& m : cfg.m_grid) out.push_back(P::from_exact(m));
    return out;
}

// First n at which a value reaches each threshold (thresholds ascending).
template <class T>
class CrossTracker {
public:
    explicit CrossTracker(const std::vector<T>& thr) : thr_(&thr), first_(thr.size()) {}
    void observe(const T& v, std::int64_t n) {
        while (next_ < thr_->size() && !(v < (*thr_)[next_])) first_[next_++] = n;
    }
    void observe_infinite(std::int64_t n) {
        while (next_ < thr_->size()) first_[next_++] = n;
    }
    [[nodiscard]] bool done() const { return next_ == thr_->size(); }
    [[nodiscard]] std::vector<Crossing> crossings(const std::vector<ExactScalar>& grid) const {
        std::vector<Crossing> out;
        for (std::size_t i = 0; i < grid.size(); ++i) out.push_back({grid[i], first_[i]});
        return out;
    }

private:
    const std::vector<T>* thr_;
    std::vector<std::optional<std::int64_t>> first_;
    std::size_t next_ = 0;
};

std::vector<Crossing> merge_latest(const std::vector<std::vector<Crossing>>& all) {
    std::vector<Crossing> out = all.front();
    for (std::size_t r = 1; r < all.size(); ++r) {
        for (std::size_t i = 0; i < out.size(); ++i) {
            const auto& other = all[r][i].first_n;
            if (!other || !out[i].first_n) out[i].first_n = std::nullopt;
            else out[i].first_n = std::max(*out[i].first_n, *other);
        }
    }
    return out;
}

std::vector<std::int64_t> residues(const ShiftOperator& op) {
    std::vector<std::int64_t> out;
    std::int64_t base = op.bilateral() ? 0 : 1;
    for (int i = 0; i < op.step(); ++i) out.push_back(base + i);
    return out;
}

enum class TailTrend { Nonincreasing, Nondecreasing };

// Orbit terms c_n a_{at_n,k} continue from index `at` in steps of the
// operator's displacement. True when the declared tails pin down the trend.
bool orbit_tail_trend(const ShiftOperator& op, std::int64_t at, int k, TailTrend trend) {
    const std::int64_t d = op.displacement();
    Side side = d > 0 ? Side::Right : Side::Left;
    auto ta = op.space().matrix().tail(side, k);
    auto tw = op.weights().tail(side);
    if (!ta || !tw) return false;
    if (side == Side::Right) {
        if (at < 0 || at < ta->from || at < tw->from) return false;
    } else {
        if (at > 0 || at > ta->from || at > tw->from) return false;
    }
    if (ta->coef.is_zero()) return trend == TailTrend::Nonincreasing;
    std::int64_t x0 = (at < 0 ? -at : at) + 1;
    std::int64_t step = d < 0 ? -d : d;
    return trend == TailTrend::Nonincreasing ? geometric_poly_nonincreasing(ta->degree, tw->value, step, x0)
                                             : geometric_poly_nondecreasing(ta->degree, tw->value, step, x0);
}

// ---------------------------------------------------------------- Cesàro --

template <class P>
BranchResult cesaro_impl(const ShiftOperator& op, std::int64_t r, int k, const HorizonConfig& cfg, bool include_zero) {
    using T = typename P::T;
    const KotheMatrix& a = op.space().matrix();
    const WeightSequence& w = op.weights();
    const std::int64_t d = op.displacement();
    auto thr = thresholds<P>(cfg);
    CrossTracker<T> tracker(thr);
    BranchResult out;
    CriterionTrace trace{"cesaro_average", k, std::nullopt, 1, {}};

    T coef = P::one();
    std::int64_t at = r;
    T sum = P::zero();
    T maxterm = P::zero();
    bool vanished = false;
    for (std::int64_t n = 1; n <= cfg.n_max; ++n) {
        if (!include_zero || n > 1) {
            if (!a.contains(at + d)) {
                vanished = true;
                break;
            }
            if (!w.defined(at)) {
                out.clipped = true;
                break;
            }
            coef = P::mul(coef, P::weight(w, at));
            at += d;
        }
        T term = P::mul(coef, P::entry(a, at, k));
        sum = P::add(sum, term);
        if (maxterm < term) maxterm = term;
        T avg = P::div_count(sum, n);
        tracker.observe(avg, n);
        out.horizon = n;
        if (cfg.record_trace) trace.values.push_back(P::mag(avg));
        if (tracker.done() && !cfg.record_trace) break;
    }
    out.crossings = tracker.crossings(cfg.m_grid);
    out.all_crossed = tracker.done();
    if (!out.all_crossed) {
        if (vanished) {
            out.bounded = true;
            out.bound = P::mag(maxterm);
            out.attestation = "orbit vanishes after " + std::to_string(out.horizon) + " steps";
        } else if (!out.clipped && orbit_tail_trend(op, at, k, TailTrend::Nonincreasing)) {
            out.bounded = true;
            out.bound = P::mag(maxterm);
            out.attestation = "terms nonincreasing beyond n = " + std::to_string(out.horizon) + " (declared tails)";
        }
    }
    if (cfg.record_trace) out.trace = std::move(trace);
    return out;
}

BranchResult cesaro_dispatch(const ShiftOperator& op, std::int64_t r, int k, const HorizonConfig& cfg, bool include_zero) {
    if (cfg.mode == NumericMode::Exact) return cesaro_impl<ExactPolicy>(op, r, k, cfg, include_zero);
    return cesaro_impl<LogPolicy>(op, r, k, cfg, include_zero);
}

void stamp(Verdict& v, const ShiftOperator& op, const HorizonConfig& cfg, std::string criterion) {
    v.criterion = std::move(criterion);
    v.config = cfg;
    v.op = op.describe();
}

}  // namespace

BranchResult cesaro_branch(const ShiftOperator& op, std::int64_t r, int k, const HorizonConfig& cfg, bool include_zero) {
    cfg.validate();
    return cesaro_dispatch(op, r, k, cfg, include_zero);
}

Verdict avg_expansive(const ShiftOperator& op, const HorizonConfig& cfg) {
    cfg.validate();
    if (!op.bilateral()) throw std::invalid_argument("avg_expansive needs a bilateral shift; use avg_pos_expansive");
    Verdict v;
    stamp(v, op, cfg, op.direction() == Direction::Backward ? "avg_expansive_backward" : "avg_expansive_forward");
    const ShiftOperator inv = dual_form(op);
    const auto rs = residues(op);
    const std::size_t per_k = rs.size() * 2;
    std::vector<BranchResult> res(static_cast<std::size_t>(cfg.k_max) * per_k);
    detail::parallel_for(res.size(), cfg.threads, [&](std::size_t i) {
        int k = static_cast<int>(i / per_k) + 1;
        std::size_t rest = i % per_k;
        std::int64_t r = rs[rest / 2];
        res[i] = cesaro_dispatch(rest % 2 == 0 ? op : inv, r, k, cfg, false);
    });

    bool all_bounded = true;
    std::optional<LevelEvidence> first_cert;
    std::optional<LevelEvidence> first_bounded;
    for (int k = 1; k <= cfg.k_max; ++k) {
        bool all_left = true, all_right = true, cert = true, bounded = false;
        std::vector<std::vector<Crossing>> chosen;
        std::optional<Magnitude> bound;
        std::string attestation;
        std::int64_t horizon = 0;
        for (std::size_t ri = 0; ri < rs.size(); ++ri) {
            const BranchResult& L = res[static_cast<std::size_t>(k - 1) * per_k + 2 * ri];
            const BranchResult& R = res[static_cast<std::size_t>(k - 1) * per_k + 2 * ri + 1];
            all_left = all_left && L.all_crossed;
            all_right = all_right && R.all_crossed;
            cert = cert && (L.all_crossed || R.all_crossed);
            chosen.push_back(L.all_crossed || !R.all_crossed ? L.crossings : R.crossings);
            horizon = std::max({horizon, L.horizon, R.horizon});
            v.horizon_clipped = v.horizon_clipped || L.clipped || R.clipped;
            if (!bounded && L.bounded && R.bounded) {
                bounded = true;
                bound = *L.bound < *R.bound ? *R.bound : *L.bound;
                attestation = "e_" + std::to_string(rs[ri]) + ": left " + L.attestation + "; right " + R.attestation;
            }
            if (k == 1 && ri == 0 && cfg.record_trace) {
                if (L.trace) v.traces.push_back(*L.trace), v.traces.back().quantity = "g_left";
                if (R.trace) v.traces.push_back(*R.trace), v.traces.back().quantity = "g_right";
            }
        }
        v.horizon = std::max(v.horizon, horizon);
        LevelEvidence ev;
        ev.k = k;
        ev.branch = all_left && all_right ? "both" : all_left ? "left" : all_right ? "right" : cert ? "mixed" : "none";
        ev.certified = cert;
        ev.crossings = merge_latest(chosen);
        ev.bound = bound;
        ev.attestation = attestation;
        ev.horizon = horizon;
        if (cert && !first_cert) first_cert = ev;
        if (bounded && !first_bounded) first_bounded = ev;
        all_bounded = all_bounded && bounded;
        v.levels.push_back(std::move(ev));
    }
    if (first_cert) {
        v.kind = VerdictKind::CertifiedUnbounded;
        v.k = first_cert->k;
        v.branch = first_cert->branch;
        v.crossings = first_cert->crossings;
        v.attestation = "every threshold crossed within N_max";
    } else if (all_bounded) {
        v.kind = VerdictKind::BoundedWitness;
        v.k = first_bounded->k;
        v.branch = "none";
        v.bound = first_bounded->bound;
        v.attestation = first_bounded->attestation;
        v.crossings = first_bounded->crossings;
        v.notes.push_back("averages bounded at every level k <= k_max");
    } else {
        v.kind = VerdictKind::Inconclusive;
        v.branch = "none";
    }
    if (v.horizon_clipped) v.notes.push_back("horizon clipped by the weight domain");
    return v;
}

Verdict avg_expansive_backward(const ShiftOperator& op, const HorizonConfig& cfg) {
    if (op.direction() != Direction::Backward) throw std::invalid_argument("avg_expansive_backward needs B_w");
    return avg_expansive(op, cfg);
}

Verdict avg_expansive_forward(const ShiftOperator& op, const HorizonConfig& cfg) {
    if (op.direction() != Direction::Forward) throw std::invalid_argument("avg_expansive_forward needs F_w");
    return avg_expansive(op, cfg);
}

Verdict avg_pos_expansive(const ShiftOperator& op, OrbitSide side, const HorizonConfig& cfg) {
    cfg.validate();
    Verdict v;
    stamp(v, op, cfg, side == OrbitSide::Op ? "avg_pos_expansive" : "avg_pos_expansive_inverse");
    if (!op.bilateral() && side == OrbitSide::Inverse) {
        throw std::invalid_argument("unilateral shifts have no inverse");
    }
    const ShiftOperator target = side == OrbitSide::Op ? op : dual_form(op);
    const bool include_zero = !op.bilateral();
    const auto rs = residues(op);
    std::vector<BranchResult> res(static_cast<std::size_t>(cfg.k_max) * rs.size());
    detail::parallel_for(res.size(), cfg.threads, [&](std::size_t i) {
        int k = static_cast<int>(i / rs.size()) + 1;
        res[i] = cesaro_dispatch(target, rs[i % rs.size()], k, cfg, include_zero);
    });
    const std::string branch = side == OrbitSide::Op ? "left" : "right";
    bool all_bounded = true;
    std::optional<LevelEvidence> first_cert, first_bounded;
    for (int k = 1; k <= cfg.k_max; ++k) {
        bool cert = true, bounded = false;
        std::vector<std::vector<Crossing>> cr;
        LevelEvidence ev;
        ev.k = k;
        for (std::size_t ri = 0; ri < rs.size(); ++ri) {
            const BranchResult& b = res[static_cast<std::size_t>(k - 1) * rs.size() + ri];
            cert = cert && b.all_crossed;
            cr.push_back(b.crossings);
            ev.horizon = std::max(ev.horizon, b.horizon);
            v.horizon_clipped = v.horizon_clipped || b.clipped;
            if (!bounded && b.bounded) {
                bounded = true;
                ev.bound = b.bound;
                ev.attestation = "e_" + std::to_string(rs[ri]) + ": " + b.attestation;
            }
            if (k == 1 && ri == 0 && b.trace) v.traces.push_back(*b.trace);
        }
        ev.certified = cert;
        ev.branch = cert ? branch : "none";
        ev.crossings = merge_latest(cr);
        v.horizon = std::max(v.horizon, ev.horizon);
        if (cert && !first_cert) first_cert = ev;
        if (bounded && !first_bounded) first_bounded = ev;
        all_bounded = all_bounded && bounded;
        v.levels.push_back(std::move(ev));
    }
    if (first_cert) {
        v.kind = VerdictKind::CertifiedUnbounded;
        v.k = first_cert->k;
        v.branch = branch;
        v.crossings = first_cert->crossings;
        v.attestation = "every threshold crossed within N_max";
    } else if (all_bounded) {
        v.kind = VerdictKind::BoundedWitness;
        v.k = first_bounded->k;
        v.branch = "none";
        v.bound = first_bounded->bound;
        v.attestation = first_bounded->attestation;
        v.crossings = first_bounded->crossings;
    } else {
        v.branch = "none";
    }
    if (v.horizon_clipped) v.notes.push_back("horizon clipped by the weight domain");
    return v;
}

// ------------------------------------------------------ uniform (UE/UPE) --

namespace {

// The four half-line window infima of the proof of the UE characterisation:
// forward ratio a_{j+n,l}|w_j...w_{j+n-1}|/a_{j,k} and backward ratio
// a_{j-n,l}/(a_{j,k}|w_{j-n}...w_{j-1}|), over j >= 0 and j < 0.
enum Quantity { kAp = 0, kAm = 1, kBp = 2, kBm = 3 };
const char* const kQuantityNames[] = {"A+", "A-", "B+", "B-"};

struct TailValue {
    bool attested = false;
    bool infinite = false;
    ExactScalar K;
    ExactScalar c;
    std::int64_t exponent = 0;
    ExactScalar poly;
};

// Contribution of indices beyond the window [jlo, jhi] to a half infimum of an F-form operator.
TailValue ue_tail(const ShiftOperator& op, Quantity q, int k, int l, std::int64_t n, std::int64_t jlo, std::int64_t jhi) {
    TailValue out;
    const bool right = q == kAp || q == kBp;
    const bool forward = q == kAp || q == kAm;
    if (!right && !op.bilateral()) {
        out.attested = true;
        out.infinite = true;
        return out;
    }
    Side side = right ? Side::Right : Side::Left;
    auto tk = op.space().matrix().tail(side, k);
    auto tl = op.space().matrix().tail(side, l);
    auto tw = op.weights().tail(side);
    if (!tk || !tl || !tw || op.weights().domain()) return out;
    const std::int64_t edge = right ? jhi + 1 : jlo - 1;
    const std::int64_t x0 = (edge < 0 ? -edge : edge) + 1;
    if (right ? edge < 0 : edge > 0) return out;
    bool k_ok = right ? tk->from <= edge : tk->from >= edge;
    if (!k_ok) return out;
    if (tk->coef.is_zero()) {
        out.attested = true;
        out.infinite = true;
        return out;
    }
    // Indices hit by a_{., l} and by the weight product, relative to the edge.
    std::int64_t delta = 0;
    bool ok = false;
    if (q == kAp) {
        ok = tl->from <= edge && tw->from <= edge;
        delta = n;
    } else if (q == kAm) {
        ok = n <= x0 - 1 && edge + n <= std::min<std::int64_t>(0, tl->from) && edge + n - 1 <= tw->from;
        delta = -n;
    } else if (q == kBp) {
        ok = n <= x0 - 1 && edge - n >= std::max<std::int64_t>(0, tl->from) && edge - n >= tw->from;
        delta = -n;
    } else {
        ok = tl->from >= edge && tw->from >= edge - 1;
        delta = n;
    }
    if (!ok) return out;
    out.attested = true;
    out.K = tl->coef / tk->coef;
    out.c = tw->value;
    out.exponent = forward ? n : -n;
    if (out.K.is_zero()) {
        out.poly = ExactScalar{0};
        return out;
    }
    if (tl->degree == 0 && tk->degree == 0) {
        out.poly = ExactScalar{1};
    } else {
        out.poly = poly_ratio_inf(tl->degree, tk->degree, delta, x0).value;
    }
    return out;
}

template <class P>
struct UeContext {
    using T = typename P::T;
    const ShiftOperator* op = nullptr;
    std::int64_t jlo = 0, jhi = -1;
    std::int64_t n_max = 0;
    bool clipped = false;
    std::int64_t rlo = 0, rhi = -1;
    std::vector<std::vector<T>> ent;  // ent[level - 1][idx - rlo]
    std::vector<T> pre;               // pre[t - rlo] = prod_{rlo <= s < t} |w_s|
    std::vector<std::vector<std::int64_t>> nonneg, neg;  // I_k in the window

    const T& e(int level, std::int64_t idx) const { return ent[static_cast<std::size_t>(level - 1)][static_cast<std::size_t>(idx - rlo)]; }
    const T& p(std::int64_t t) const { return pre[static_cast<std::size_t>(t - rlo)]; }
};

template <class P>
UeContext<P> build_ue_context(const ShiftOperator& op, const HorizonConfig& cfg) {
    UeContext<P> ctx;
    ctx.op = &op;
    const bool bi = op.bilateral();
    ctx.jlo = bi ? -cfg.window : 1;
    ctx.jhi = cfg.window;
    ctx.n_max = cfg.n_max;
    if (auto dom = op.weights().domain()) {
        ctx.jlo = std::max(ctx.jlo, dom->lo + 1);
        ctx.jhi = std::min(ctx.jhi, dom->hi);
        std::int64_t lim = dom->hi - ctx.jhi + 1;
        if (bi) lim = std::min(lim, ctx.jlo - dom->lo);
        if (lim < ctx.n_max) {
            ctx.n_max = std::max<std::int64_t>(lim, 0);
            ctx.clipped = true;
        }
    }
    if (ctx.jlo > ctx.jhi) {
        ctx.n_max = 0;
        return ctx;
    }
    ctx.rlo = bi ? ctx.jlo - ctx.n_max : ctx.jlo;
    ctx.rhi = ctx.jhi + ctx.n_max;
    const std::size_t size = static_cast<std::size_t>(ctx.rhi - ctx.rlo + 1);
    const KotheMatrix& a = op.space().matrix();
    ctx.ent.assign(static_cast<std::size_t>(cfg.l_max), std::vector<typename P::T>(size));
    for (int lev = 1; lev <= cfg.l_max; ++lev) {
        for (std::int64_t idx = ctx.rlo; idx <= ctx.rhi; ++idx) {
            ctx.ent[static_cast<std::size_t>(lev - 1)][static_cast<std::size_t>(idx - ctx.rlo)] = P::entry(a, idx, lev);
        }
    }
    ctx.pre.assign(size, P::one());
    for (std::int64_t t = ctx.rlo + 1; t <= ctx.rhi; ++t) {
        ctx.pre[static_cast<std::size_t>(t - ctx.rlo)] = P::mul(ctx.p(t - 1), P::weight(op.weights(), t - 1));
    }
    ctx.nonneg.resize(static_cast<std::size_t>(cfg.k_max));
    ctx.neg.resize(static_cast<std::size_t>(cfg.k_max));
    for (int k = 1; k <= cfg.k_max; ++k) {
        for (std::int64_t j = ctx.jlo; j <= ctx.jhi; ++j) {
            if (P::is_zero(ctx.e(k, j))) continue;
            (j >= 0 ? ctx.nonneg : ctx.neg)[static_cast<std::size_t>(k - 1)].push_back(j);
        }
    }
    return ctx;
}

enum Prop { kPropA = 0, kPropB = 1, kPropC = 2 };

struct UePass {
    std::array<bool, 3> needed{};
    std::array<std::vector<Crossing>, 3> crossings;
    std::array<bool, 3> holds{};
    std::array<bool, 3> window_only{};
    std::int64_t horizon = 0;
    std::vector<CriterionTrace> traces;
};

template <class T>
struct HalfMin {
    bool infinite = true;
    T value{};
    void take(const T& v) {
        if (infinite || v < value) {
            value = v;
            infinite = false;
        }
    }
    void take(const HalfMin& o) {
        if (!o.infinite) take(o.value);
    }
};

template <class P>
UePass ue_pass(const UeContext<P>& ctx, int k, int l, std::array<bool, 3> needed, const HorizonConfig& cfg) {
    using T = typename P::T;
    const ShiftOperator& op = *ctx.op;
    UePass out;
    out.needed = needed;
    auto thr = thresholds<P>(cfg);
    std::vector<CrossTracker<T>> trackers(3, CrossTracker<T>(thr));
    std::array<bool, 4> q_needed{needed[kPropA] || needed[kPropC], needed[kPropA], needed[kPropB],
                                 needed[kPropB] || needed[kPropC]};
    if (!op.bilateral()) q_needed = {true, false, false, false};
    std::array<bool, 4> unattested{};
    if (cfg.record_trace) {
        for (int q = 0; q < 4; ++q) {
            if (q_needed[static_cast<std::size_t>(q)]) out.traces.push_back({kQuantityNames[q], k, l, 1, {}});
        }
    }
    const auto& pos = ctx.nonneg[static_cast<std::size_t>(k - 1)];
    const auto& neg = ctx.neg[static_cast<std::size_t>(k - 1)];
    for (std::int64_t n = 1; n <= ctx.n_max; ++n) {
        std::array<HalfMin<T>, 4> h;
        auto fwd = [&](std::int64_t j) {
            return P::div(P::mul(ctx.e(l, j + n), P::div(ctx.p(j + n), ctx.p(j))), ctx.e(k, j));
        };
        auto bwd = [&](std::int64_t j) {
            return P::div(ctx.e(l, j - n), P::mul(ctx.e(k, j), P::div(ctx.p(j), ctx.p(j - n))));
        };
        if (q_needed[kAp] || q_needed[kBp]) {
            for (std::int64_t j : pos) {
                if (q_needed[kAp]) h[kAp].take(fwd(j));
                if (q_needed[kBp]) h[kBp].take(bwd(j));
            }
        }
        if (q_needed[kAm] || q_needed[kBm]) {
            for (std::int64_t j : neg) {
                if (q_needed[kAm]) h[kAm].take(fwd(j));
                if (q_needed[kBm]) h[kBm].take(bwd(j));
            }
        }
        for (int q = 0; q < 4; ++q) {
            if (!q_needed[static_cast<std::size_t>(q)]) continue;
            TailValue tv = ue_tail(op, static_cast<Quantity>(q), k, l, n, ctx.jlo, ctx.jhi);
            if (!tv.attested) {
                unattested[static_cast<std::size_t>(q)] = true;
                continue;
            }
            if (tv.infinite) continue;
            HalfMin<T> t;
            t.take(P::scaled_pow(tv.K, tv.c, tv.exponent, tv.poly));
            h[static_cast<std::size_t>(q)].take(t);
        }
        if (cfg.record_trace) {
            std::size_t ti = 0;
            for (int q = 0; q < 4; ++q) {
                if (!q_needed[static_cast<std::size_t>(q)]) continue;
                const auto& hm = h[static_cast<std::size_t>(q)];
                out.traces[ti++].values.push_back(hm.infinite ? Magnitude{LogMagnitude::from_log2(std::numeric_limits<double>::infinity())}
                                                              : P::mag(hm.value));
            }
        }
        auto feed = [&](Prop p, std::initializer_list<Quantity> qs) {
            if (!needed[p] || trackers[p].done()) return;
            HalfMin<T> m;
            for (Quantity q : qs) {
                m.take(h[q]);
                if (unattested[q]) out.window_only[p] = true;
            }
            if (m.infinite) trackers[p].observe_infinite(n);
            else trackers[p].observe(m.value, n);
        };
        if (op.bilateral()) {
            feed(kPropA, {kAp, kAm});
            feed(kPropB, {kBp, kBm});
            feed(kPropC, {kAp, kBm});
        } else {
            feed(kPropA, {kAp});
        }
        out.horizon = n;
        bool all_done = true;
        for (int p = 0; p < 3; ++p) all_done = all_done && (!needed[static_cast<std::size_t>(p)] || trackers[static_cast<std::size_t>(p)].done());
        if (all_done && !cfg.record_trace) break;
    }
    for (int p = 0; p < 3; ++p) {
        out.crossings[static_cast<std::size_t>(p)] = trackers[static_cast<std::size_t>(p)].crossings(cfg.m_grid);
        out.holds[static_cast<std::size_t>(p)] = needed[static_cast<std::size_t>(p)] && trackers[static_cast<std::size_t>(p)].done();
    }
    return out;
}

struct PropOutcome {
    bool holds = true;
    std::vector<LevelEvidence> levels;
    std::optional<int> failed_at;
    bool window_only = false;
    std::vector<CriterionTrace> traces;
};

template <class P>
std::array<PropOutcome, 3> ue_run(const ShiftOperator& fop, const HorizonConfig& cfg, std::array<bool, 3> wanted,
                                  std::int64_t& horizon, bool& clipped) {
    UeContext<P> ctx = build_ue_context<P>(fop, cfg);
    clipped = ctx.clipped;
    horizon = 0;
    std::array<PropOutcome, 3> out;
    for (int p = 0; p < 3; ++p) out[static_cast<std::size_t>(p)].holds = wanted[static_cast<std::size_t>(p)];
    for (int k = 1; k <= cfg.k_max; ++k) {
        std::array<bool, 3> alive{};
        bool any = false;
        for (int p = 0; p < 3; ++p) {
            alive[static_cast<std::size_t>(p)] = out[static_cast<std::size_t>(p)].holds;
            any = any || alive[static_cast<std::size_t>(p)];
        }
        if (!any) break;
        std::array<std::optional<UePass>, 3> found;
        const unsigned batch = std::max(1u, cfg.threads);
        for (int l0 = k; l0 <= cfg.l_max; l0 += static_cast<int>(batch)) {
            std::array<bool, 3> need{};
            bool any_need = false;
            for (int p = 0; p < 3; ++p) {
                need[static_cast<std::size_t>(p)] = alive[static_cast<std::size_t>(p)] && !found[static_cast<std::size_t>(p)];
                any_need = any_need || need[static_cast<std::size_t>(p)];
            }
            if (!any_need) break;
            int l1 = std::min(cfg.l_max, l0 + static_cast<int>(batch) - 1);
            std::vector<UePass> passes(static_cast<std::size_t>(l1 - l0 + 1));
            detail::parallel_for(passes.size(), cfg.threads, [&](std::size_t i) {
                passes[i] = ue_pass<P>(ctx, k, l0 + static_cast<int>(i), need, cfg);
            });
            for (std::size_t i = 0; i < passes.size(); ++i) {
                horizon = std::max(horizon, passes[i].horizon);
                for (int p = 0; p < 3; ++p) {
                    auto pi = static_cast<std::size_t>(p);
                    if (need[pi] && !found[pi] && passes[i].holds[pi]) {
                        found[pi] = passes[i];
                        out[pi].levels.push_back(LevelEvidence{k, l0 + static_cast<int>(i), "", true, passes[i].crossings[pi],
                                                               std::nullopt,
                                                               passes[i].window_only[pi] ? "window-only" : "tail-attested",
                                                               passes[i].horizon});
                        out[pi].window_only = out[pi].window_only || passes[i].window_only[pi];
                        if (cfg.record_trace) {
                            for (const auto& t : passes[i].traces) out[pi].traces.push_back(t);
                        }
                    }
                }
            }
        }
        for (int p = 0; p < 3; ++p) {
            auto pi = static_cast<std::size_t>(p);
            if (alive[pi] && !found[pi]) {
                out[pi].holds = false;
                out[pi].failed_at = k;
            }
        }
    }
    return out;
}

Verdict assemble_ue(const std::array<PropOutcome, 3>& res, const std::array<std::string, 3>& names,
                    std::array<bool, 3> wanted, std::int64_t horizon, bool clipped) {
    Verdict v;
    v.horizon = horizon;
    v.horizon_clipped = clipped;
    std::vector<int> holding;
    for (int p = 0; p < 3; ++p) {
        auto pi = static_cast<std::size_t>(p);
        if (!wanted[pi]) continue;
        if (res[pi].holds) holding.push_back(p);
        else if (res[pi].failed_at) v.notes.push_back("property " + names[pi] + " fails at k = " + std::to_string(*res[pi].failed_at));
    }
    if (holding.size() > 1) {
        v.exclusivity_violated = true;
        v.notes.push_back("more than one property certified; properties must be mutually exclusive");
    }
    if (holding.empty()) {
        v.property = "none";
        v.kind = VerdictKind::Inconclusive;
        v.branch = "none";
    } else {
        const PropOutcome& r = res[static_cast<std::size_t>(holding.front())];
        v.property = names[static_cast<std::size_t>(holding.front())];
        v.kind = VerdictKind::CertifiedUnbounded;
        v.branch = v.property;
        v.levels = r.levels;
        for (auto& ev : v.levels) ev.branch = v.property;
        v.k = r.levels.front().k;
        v.l = r.levels.front().l;
        v.crossings = r.levels.front().crossings;
        v.attestation = r.window_only ? "window infima only (no tail attestation)" : "window infima with declared tails";
        v.traces = r.traces;
    }
    if (clipped) v.notes.push_back("horizon clipped by the weight domain");
    return v;
}

std::array<PropOutcome, 3> ue_dispatch(const ShiftOperator& fop, const HorizonConfig& cfg, std::array<bool, 3> wanted,
                                       std::int64_t& horizon, bool& clipped) {
    if (fop.step() != 1) throw std::invalid_argument("uniform expansivity checks need one-step shifts");
    if (cfg.mode == NumericMode::Exact) return ue_run<ExactPolicy>(fop, cfg, wanted, horizon, clipped);
    return ue_run<LogPolicy>(fop, cfg, wanted, horizon, clipped);
}

}  // namespace

WindowInfimum ue_window_infimum(const ShiftOperator& op, RatioFamily family, IndexHalf half, int k, int l,
                                std::int64_t n, const HorizonConfig& cfg) {
    if (n < 1) throw std::invalid_argument("ue_window_infimum needs n >= 1");
    ShiftOperator fop = op.direction() == Direction::Forward ? op : dual_form(op);
    if (op.direction() == Direction::Backward) {
        family = family == RatioFamily::Forward ? RatioFamily::Backward : RatioFamily::Forward;
    }
    const KotheMatrix& a = fop.space().matrix();
    const WeightSequence& w = fop.weights();
    const std::int64_t jlo = fop.bilateral() ? -cfg.window : 1;
    const std::int64_t jhi = cfg.window;
    WindowInfimum out;
    std::optional<ExactScalar> best;
    for (std::int64_t j = jlo; j <= jhi; ++j) {
        if (half == IndexHalf::NonNegative && j < 0) continue;
        if (half == IndexHalf::Negative && j >= 0) continue;
        ExactScalar akj = a.entry(j, k);
        if (akj.is_zero()) continue;
        ExactScalar r;
        if (family == RatioFamily::Forward) {
            r = a.entry(j + n, l) * weight_product(w, {j, j + n - 1}) / akj;
        } else {
            if (!a.contains(j - n)) continue;
            r = a.entry(j - n, l) / (akj * weight_product(w, {j - n, j - 1}));
        }
        if (!best || r < *best) {
            best = r;
            out.argmin = j;
        }
    }
    std::vector<Quantity> qs;
    bool fwd = family == RatioFamily::Forward;
    if (half != IndexHalf::Negative) qs.push_back(fwd ? kAp : kBp);
    if (half != IndexHalf::NonNegative && fop.bilateral()) qs.push_back(fwd ? kAm : kBm);
    out.tail_attested = true;
    for (Quantity q : qs) {
        TailValue tv = ue_tail(fop, q, k, l, n, jlo, jhi);
        if (!tv.attested) {
            out.tail_attested = false;
            continue;
        }
        if (tv.infinite) continue;
        ExactScalar t = ExactPolicy::scaled_pow(tv.K, tv.c, tv.exponent, tv.poly);
        if (!best || t < *best) {
            best = t;
            out.argmin.reset();
            out.from_tail = true;
        }
    }
    if (!best) {
        out.infinite = true;
        out.value = Magnitude{LogMagnitude::from_log2(std::numeric_limits<double>::infinity())};
    } else {
        out.value = Magnitude{*best};
    }
    return out;
}

Verdict unif_expansive_forward(const ShiftOperator& op, const HorizonConfig& cfg) {
    cfg.validate();
    if (op.direction() != Direction::Forward || !op.bilateral()) {
        throw std::invalid_argument("unif_expansive_forward needs a bilateral F_w");
    }
    std::int64_t horizon = 0;
    bool clipped = false;
    auto res = ue_dispatch(op, cfg, {true, true, true}, horizon, clipped);
    Verdict v = assemble_ue(res, {"A", "B", "C"}, {true, true, true}, horizon, clipped);
    stamp(v, op, cfg, "unif_expansive_forward");
    return v;
}

Verdict unif_expansive_backward(const ShiftOperator& op, const HorizonConfig& cfg) {
    cfg.validate();
    if (op.direction() != Direction::Backward || !op.bilateral()) {
        throw std::invalid_argument("unif_expansive_backward needs a bilateral B_w");
    }
    std::int64_t horizon = 0;
    bool clipped = false;
    // On the dual F_{w'} = B_w^{-1}: its forward ratio is the backward ratio of B_w.
    auto res = ue_dispatch(dual_form(op), cfg, {true, true, true}, horizon, clipped);
    Verdict v = assemble_ue(res, {"b", "a", "c"}, {true, true, true}, horizon, clipped);
    v.positive = v.property == "a";
    stamp(v, op, cfg, "unif_expansive_backward");
    return v;
}

Verdict unif_expansive(const ShiftOperator& op, const HorizonConfig& cfg) {
    return op.direction() == Direction::Forward ? unif_expansive_forward(op, cfg) : unif_expansive_backward(op, cfg);
}

Verdict unif_pos_expansive(const ShiftOperator& op, const HorizonConfig& cfg) {
    cfg.validate();
    Verdict v;
    if (op.direction() == Direction::Backward && !op.bilateral()) {
        stamp(v, op, cfg, "unif_pos_expansive");
        v.kind = VerdictKind::BoundedWitness;
        v.property = "none";
        v.branch = "none";
        v.bound = Magnitude{ExactScalar{0}};
        v.attestation = "B_w e_1 = 0 on N";
        v.notes.push_back("unilateral backward shifts are never positively expansive");
        return v;
    }
    std::int64_t horizon = 0;
    bool clipped = false;
    if (op.direction() == Direction::Forward) {
        auto res = ue_dispatch(op, cfg, {true, false, false}, horizon, clipped);
        v = assemble_ue(res, {"A", "B", "C"}, {true, false, false}, horizon, clipped);
    } else {
        auto res = ue_dispatch(dual_form(op), cfg, {false, true, false}, horizon, clipped);
        v = assemble_ue(res, {"b", "a", "c"}, {false, true, false}, horizon, clipped);
    }
    stamp(v, op, cfg, "unif_pos_expansive");
    return v;
}

// ------------------------------------------------------ basis diagnostic --

namespace {

template <class P>
struct WalkResult {
    std::vector<std::vector<std::optional<std::int64_t>>> first;  // [k][threshold]
    std::vector<bool> bounded;                                    // [k]
    std::vector<typename P::T> sup;                               // [k]
};

// Running suprema of ||T^n e_j0||_k for n = 0..N, all levels at once.
template <class P>
WalkResult<P> sup_walk(const ShiftOperator& op, std::int64_t j0, const HorizonConfig& cfg,
                       const std::vector<typename P::T>& thr) {
    using T = typename P::T;
    const KotheMatrix& a = op.space().matrix();
    const WeightSequence& w = op.weights();
    const std::int64_t d = op.displacement();
    const auto K = static_cast<std::size_t>(cfg.k_max);
    WalkResult<P> out;
    out.first.assign(K, std::vector<std::optional<std::int64_t>>(thr.size()));
    out.bounded.assign(K, false);
    out.sup.assign(K, P::zero());
    std::vector<std::size_t> next(K, 0);
    auto observe = [&](std::size_t ki, const T& v, std::int64_t n) {
        if (out.sup[ki] < v) out.sup[ki] = v;
        while (next[ki] < thr.size() && !(out.sup[ki] < thr[next[ki]])) out.first[ki][next[ki]++] = n;
    };
    for (std::size_t ki = 0; ki < K; ++ki) observe(ki, P::entry(a, j0, static_cast<int>(ki) + 1), 0);
    T coef = P::one();
    std::int64_t at = j0;
    bool vanished = false, clipped = false;
    for (std::int64_t n = 1; n <= cfg.n_max; ++n) {
        bool all_done = true;
        for (std::size_t ki = 0; ki < K; ++ki) all_done = all_done && next[ki] == thr.size();
        if (all_done) return out;
        if (!a.contains(at + d)) {
            vanished = true;
            break;
        }
        if (!w.defined(at)) {
            clipped = true;
            break;
        }
        coef = P::mul(coef, P::weight(w, at));
        at += d;
        for (std::size_t ki = 0; ki < K; ++ki) observe(ki, P::mul(coef, P::entry(a, at, static_cast<int>(ki) + 1)), n);
    }
    for (std::size_t ki = 0; ki < K; ++ki) {
        if (next[ki] == thr.size()) continue;
        out.bounded[ki] = vanished || (!clipped && orbit_tail_trend(op, at, static_cast<int>(ki) + 1, TailTrend::Nonincreasing));
    }
    return out;
}

template <class P>
Verdict ediag_impl(const ShiftOperator& op, const HorizonConfig& cfg) {
    auto thr = thresholds<P>(cfg);
    std::optional<ShiftOperator> inv;
    if (op.bilateral()) inv = dual_form(op);
    std::int64_t lo = op.bilateral() ? -cfg.window : 1;
    std::int64_t hi = cfg.window;
    if (auto dom = op.weights().domain()) {
        lo = std::max(lo, dom->lo);
        hi = std::min(hi, dom->hi);
    }
    const std::size_t count = hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0;
    struct PerVector {
        std::optional<int> k;
        std::vector<std::optional<std::int64_t>> first;
        bool bounded_all = false;
        Magnitude sup;
    };
    std::vector<PerVector> per(count);
    detail::parallel_for(count, cfg.threads, [&](std::size_t i) {
        std::int64_t j0 = lo + static_cast<std::int64_t>(i);
        WalkResult<P> f = sup_walk<P>(op, j0, cfg, thr);
        std::optional<WalkResult<P>> b;
        if (inv) b = sup_walk<P>(*inv, j0, cfg, thr);
        PerVector pv;
        bool bounded_all = true;
        for (int k = 1; k <= cfg.k_max; ++k) {
            auto ki = static_cast<std::size_t>(k - 1);
            std::vector<std::optional<std::int64_t>> first(thr.size());
            bool all = true;
            for (std::size_t t = 0; t < thr.size(); ++t) {
                auto a = f.first[ki][t];
                auto c = b ? b->first[ki][t] : std::nullopt;
                if (a && c) first[t] = std::min(*a, *c);
                else first[t] = a ? a : c;
                all = all && first[t].has_value();
            }
            if (all && !pv.k) {
                pv.k = k;
                pv.first = first;
            }
            bounded_all = bounded_all && f.bounded[ki] && (!b || b->bounded[ki]);
        }
        pv.bounded_all = bounded_all;
        auto top = static_cast<std::size_t>(cfg.k_max - 1);
        typename P::T s = f.sup[top];
        if (b && s < b->sup[top]) s = b->sup[top];
        pv.sup = P::mag(s);
        per[i] = std::move(pv);
    });
    Verdict v;
    std::size_t certified = 0;
    std::optional<std::int64_t> first_uncertified, bounded_vector;
    std::vector<std::optional<std::int64_t>> worst(thr.size(), std::int64_t{0});
    int kmax_used = 1;
    for (std::size_t i = 0; i < count; ++i) {
        std::int64_t j0 = lo + static_cast<std::int64_t>(i);
        if (per[i].k) {
            ++certified;
            kmax_used = std::max(kmax_used, *per[i].k);
            for (std::size_t t = 0; t < thr.size(); ++t) worst[t] = std::max(*worst[t], *per[i].first[t]);
        } else {
            if (!first_uncertified) first_uncertified = j0;
            if (per[i].bounded_all && !bounded_vector) {
                bounded_vector = j0;
                v.bound = per[i].sup;
            }
        }
    }
    v.notes.push_back("diagnostic: basis vectors only; certified " + std::to_string(certified) + " of " +
                      std::to_string(count));
    if (count > 0 && certified == count) {
        v.kind = VerdictKind::CertifiedUnbounded;
        v.k = kmax_used;
        for (std::size_t t = 0; t < thr.size(); ++t) v.crossings.push_back({cfg.m_grid[t], worst[t]});
        v.attestation = "every basis orbit in the window crosses every threshold within |n| <= N_max";
    } else if (bounded_vector) {
        v.kind = VerdictKind::BoundedWitness;
        v.attestation = "orbit of e_" + std::to_string(*bounded_vector) + " bounded at every level k <= k_max (declared tails)";
    } else {
        v.kind = VerdictKind::Inconclusive;
        if (first_uncertified) v.notes.push_back("first uncertified basis vector: e_" + std::to_string(*first_uncertified));
    }
    v.branch = op.bilateral() ? "two-sided" : "forward";
    v.horizon = cfg.n_max;
    return v;
}

}  // namespace

Verdict expansive_basis_diagnostic(const ShiftOperator& op, const HorizonConfig& cfg) {
    cfg.validate();
    Verdict v = cfg.mode == NumericMode::Exact ? ediag_impl<ExactPolicy>(op, cfg) : ediag_impl<LogPolicy>(op, cfg);
    stamp(v, op, cfg, "expansive_basis_diagnostic");
    return v;
}

// ------------------------------------------------------------------ mixing --

namespace {

struct NullResult {
    bool certified = false;
    bool window_only = false;
    bool excluded = false;  // attested not to tend to 0
    std::vector<Crossing> crossings;  // first n after which the values stay below 1/M
    std::int64_t horizon = 0;
    bool clipped = false;
};

template <class P>
NullResult null_sequence(const ShiftOperator& op, int k, const HorizonConfig& cfg) {
    using T = typename P::T;
    const KotheMatrix& a = op.space().matrix();
    const WeightSequence& w = op.weights();
    const std::int64_t d = op.displacement();
    std::vector<T> inv_thr;
    for (const auto& m : cfg.m_grid) inv_thr.push_back(P::from_exact(m.reciprocal()));
    // last_above[t]: last n with value >= 1/M_t.
    std::vector<std::int64_t> last_above(inv_thr.size(), 0);
    NullResult out;
    T coef = P::one();
    std::int64_t at = 0;
    T last = P::zero();
    bool vanished = false;
    for (std::int64_t n = 1; n <= cfg.n_max; ++n) {
        if (!a.contains(at + d)) {
            vanished = true;
            break;
        }
        if (!w.defined(at)) {
            out.clipped = true;
            break;
        }
        coef = P::mul(coef, P::weight(w, at));
        at += d;
        last = P::mul(coef, P::entry(a, at, k));
        for (std::size_t t = 0; t < inv_thr.size(); ++t) {
            if (!(last < inv_thr[t])) last_above[t] = n;
        }
        out.horizon = n;
    }
    bool all_below = true;
    for (std::size_t t = 0; t < inv_thr.size(); ++t) {
        bool below = vanished || last_above[t] < out.horizon;
        all_below = all_below && below;
        out.crossings.push_back({cfg.m_grid[t], below ? std::optional<std::int64_t>(last_above[t] + 1) : std::nullopt});
    }
    if (vanished) {
        out.certified = true;
        return out;
    }
    if (all_below) {
        out.certified = true;
        out.window_only = out.clipped || !orbit_tail_trend(op, at, k, TailTrend::Nonincreasing);
    } else if (!out.clipped && !P::is_zero(last) && orbit_tail_trend(op, at, k, TailTrend::Nondecreasing)) {
        out.excluded = true;
    }
    return out;
}

}  // namespace

Verdict mixing_check(const ShiftOperator& op, const HorizonConfig& cfg) {
    cfg.validate();
    if (!op.bilateral() || op.direction() != Direction::Backward) {
        throw std::invalid_argument("mixing_check needs a bilateral B_w");
    }
    Verdict v;
    stamp(v, op, cfg, "mixing_check");
    const ShiftOperator inv = dual_form(op);
    std::vector<NullResult> res(static_cast<std::size_t>(cfg.k_max) * 2);
    detail::parallel_for(res.size(), cfg.threads, [&](std::size_t i) {
        int k = static_cast<int>(i / 2) + 1;
        const ShiftOperator& t = i % 2 == 0 ? op : inv;
        res[i] = cfg.mode == NumericMode::Exact ? null_sequence<ExactPolicy>(t, k, cfg) : null_sequence<LogPolicy>(t, k, cfg);
    });
    bool all_cert = true, window_only = false;
    std::optional<std::string> exclusion;
    for (int k = 1; k <= cfg.k_max; ++k) {
        const NullResult& L = res[static_cast<std::size_t>(k - 1) * 2];
        const NullResult& R = res[static_cast<std::size_t>(k - 1) * 2 + 1];
        LevelEvidence ev;
        ev.k = k;
        ev.certified = L.certified && R.certified;
        ev.branch = ev.certified ? "both" : L.certified ? "left" : R.certified ? "right" : "none";
        ev.crossings = L.certified || !R.certified ? L.crossings : R.crossings;
        ev.horizon = std::max(L.horizon, R.horizon);
        ev.attestation = (L.window_only || R.window_only) ? "window-only" : "tail-attested";
        all_cert = all_cert && ev.certified;
        window_only = window_only || (ev.certified && (L.window_only || R.window_only));
        if (!exclusion && (L.excluded || R.excluded)) {
            exclusion = std::string(L.excluded ? "||B^j e_0||" : "||B^{-j} e_0||") + "_" + std::to_string(k) +
                        " nondecreasing beyond the horizon (declared tails)";
        }
        v.horizon = std::max(v.horizon, ev.horizon);
        v.horizon_clipped = v.horizon_clipped || L.clipped || R.clipped;
        v.levels.push_back(std::move(ev));
    }
    if (all_cert) {
        v.kind = VerdictKind::CertifiedUnbounded;
        v.branch = "both";
        v.crossings = v.levels.front().crossings;
        v.attestation = window_only ? "both sequences below every 1/M on the window (no tail attestation)"
                                    : "both sequences below every 1/M, tails nonincreasing";
        v.notes.push_back("CertifiedUnbounded here means both sequences certified to tend to 0 (mixing evidence)");
    } else if (exclusion) {
        v.kind = VerdictKind::BoundedWitness;
        v.branch = "none";
        v.attestation = *exclusion;
        v.notes.push_back("mixing excluded: a displayed sequence does not tend to 0");
    } else {
        v.kind = VerdictKind::Inconclusive;
        v.branch = "none";
    }
    if (v.horizon_clipped) v.notes.push_back("horizon clipped by the weight domain");
    return v;
}

HierarchyReport hierarchy_audit(const ShiftOperator& op, const HorizonConfig& cfg) {
    HierarchyReport r;
    if (op.bilateral() && op.step() == 1) {
        r.ue = unif_expansive(op, cfg);
        r.ae = avg_expansive(op, cfg);
    } else if (op.bilateral()) {
        r.ue.criterion = "unif_expansive";
        r.ue.property = "none";
        r.ue.notes.push_back("uniform checks skipped for multi-step shifts");
        r.ae = avg_expansive(op, cfg);
    } else {
        r.ue = unif_pos_expansive(op, cfg);
        r.ae = avg_pos_expansive(op, OrbitSide::Op, cfg);
    }
    r.ediag = expansive_basis_diagnostic(op, cfg);
    auto compare = [&r](const Verdict& strong, const Verdict& weak, const std::string& what) {
        if (!strong.certified() || weak.certified()) return;
        if (weak.kind == VerdictKind::BoundedWitness) r.violations.push_back(what + " attested bounded");
        else r.unresolved.push_back(what + " inconclusive within the horizon");
    };
    compare(r.ue, r.ae, "UE certified but AE");
    compare(r.ae, r.ediag, "AE certified but basis diagnostic");
    return r;
}

}  // namespace shiftlab

#include "shiftlab/synthesis.hpp"

#include <algorithm>

namespace shiftlab {

using nlohmann::json;

SearchCapExceeded::SearchCapExceeded(int block_, std::string parameter_, std::int64_t cap_)
    : std::runtime_error("search for " + parameter_ + "_" + std::to_string(block_) + " exceeded the cap " +
                         std::to_string(cap_)),
      block(block_),
      parameter(std::move(parameter_)),
      cap(cap_) {}

int r_of(int j) {
    if (j < 1) throw std::invalid_argument("r_of needs j >= 1");
    const mpz_class target = mpz_class(j + 1) * (j + 1);
    int r = 1;
    mpz_class p = 2;
    while (p < target) {
        p *= 2;
        ++r;
    }
    return r;
}

const BlockParams& BlockLayout::at(int j) const {
    if (j < 1 || j > count()) throw std::out_of_range("block " + std::to_string(j) + " not built");
    return blocks[static_cast<std::size_t>(j - 1)];
}

std::int64_t BlockLayout::t_before(int j) const { return j <= 1 ? 0 : at(j - 1).t; }

void to_json(json& j, const BlockParams& p) {
    j = json{{"j", p.j}, {"k", p.k}, {"i", p.i}, {"r", p.r}, {"a", p.a}, {"b", p.b},
             {"s", p.s}, {"t", p.t}, {"n_hc", p.n_hc}, {"alpha", p.alpha}};
}

std::vector<ExactScalar> template_a(int j, int k) {
    std::vector<ExactScalar> out;
    const std::int64_t ones = (std::int64_t{1} << k) - 1;
    out.insert(out.end(), static_cast<std::size_t>(ones), ExactScalar{1});
    out.emplace_back(j, 2 * (j + 1));
    out.insert(out.end(), static_cast<std::size_t>(2 * k - 1), ExactScalar{1, 2});
    out.emplace_back(1);
    out.insert(out.end(), static_cast<std::size_t>(2 * k), ExactScalar{2});
    return out;
}

std::vector<ExactScalar> template_b(int r, std::int64_t i) {
    std::vector<ExactScalar> out;
    out.insert(out.end(), static_cast<std::size_t>(r), ExactScalar{1, 2});
    out.insert(out.end(), static_cast<std::size_t>(i - 1), ExactScalar{1});
    out.insert(out.end(), static_cast<std::size_t>(r), ExactScalar{2});
    return out;
}

std::vector<ExactScalar> template_c(int j, int k) {
    std::vector<ExactScalar> out;
    const std::int64_t ones = (std::int64_t{1} << k) - 1;
    out.insert(out.end(), static_cast<std::size_t>(2 * k), ExactScalar{1, 2});
    out.emplace_back(1);
    out.insert(out.end(), static_cast<std::size_t>(2 * k - 1), ExactScalar{2});
    out.emplace_back(2 * (j + 1), j);
    out.insert(out.end(), static_cast<std::size_t>(ones), ExactScalar{1});
    return out;
}

const ExactScalar& BlockWeights::at(std::int64_t position) const {
    if (position < lo || position > hi()) throw WeightUndefined(position);
    return values[static_cast<std::size_t>(position - lo)];
}

WeightSequence BlockWeights::sequence() const { return WeightSequence::blocks(lo, values); }

IndexInterval BlockWeights::span_a(const BlockLayout& layout, int j) {
    return {-layout.at(j).s, -layout.t_before(j) - 1};
}
IndexInterval BlockWeights::span_b_left(const BlockLayout& layout, int j) {
    return {-layout.at(j).t, -layout.at(j).s - 1};
}
IndexInterval BlockWeights::span_c(const BlockLayout& layout, int j) {
    return {layout.t_before(j) + 2, layout.at(j).s + 1};
}
IndexInterval BlockWeights::span_b_right(const BlockLayout& layout, int j) {
    return {layout.at(j).s + 2, layout.at(j).t + 1};
}

std::vector<ExactScalar> BlockWeights::slice(IndexInterval span) const {
    std::vector<ExactScalar> out;
    for (std::int64_t p = span.lo; p <= span.hi; ++p) out.push_back(at(p));
    return out;
}

namespace {

// Run-length form of a norm sequence.
struct Run {
    ExactScalar value;
    std::int64_t count;
};

std::vector<Run> runs_a(int j, int k) {
    std::vector<Run> out;
    const ExactScalar inv_j{1, j};
    for (int m = 1; m <= 2 * k; ++m) out.push_back({ExactScalar::pow2(m) * inv_j, 1});
    out.push_back({ExactScalar::pow2(2 * k) * inv_j, 1});
    for (int m = 1; m <= 2 * k - 1; ++m) out.push_back({ExactScalar::pow2(2 * k - m) * inv_j, 1});
    out.push_back({ExactScalar{1, j + 1}, std::int64_t{1} << k});
    return out;
}

std::vector<Run> runs_b(int j, int r, std::int64_t i) {
    std::vector<Run> out;
    const ExactScalar inv{1, j + 1};
    for (int m = 1; m <= r; ++m) out.push_back({ExactScalar::pow2(m) * inv, 1});
    if (i > 1) out.push_back({ExactScalar::pow2(r) * inv, i - 1});
    for (int m = 1; m <= r; ++m) out.push_back({ExactScalar::pow2(r - m) * inv, 1});
    return out;
}

struct RunStats {
    std::int64_t length = 0;
    std::int64_t at_most = 0;   // values <= lo_thr
    std::int64_t at_least = 0;  // values >= hi_thr
    ExactScalar sum;
};

RunStats stats(const std::vector<const std::vector<Run>*>& parts, const ExactScalar& lo_thr, const ExactScalar& hi_thr) {
    RunStats s;
    for (const auto* part : parts) {
        for (const Run& run : *part) {
            s.length += run.count;
            if (run.value <= lo_thr) s.at_most += run.count;
            if (run.value >= hi_thr) s.at_least += run.count;
            s.sum += run.value * ExactScalar{run.count};
        }
    }
    return s;
}

void expand(const std::vector<Run>& runs, std::vector<ExactScalar>& out) {
    for (const Run& run : runs) out.insert(out.end(), static_cast<std::size_t>(run.count), run.value);
}

BlockParams finish(int j, int k, std::int64_t i, int r, std::int64_t t_prev) {
    BlockParams p;
    p.j = j;
    p.k = k;
    p.i = i;
    p.r = r;
    p.a = 4 * static_cast<std::int64_t>(k) + (std::int64_t{1} << k);
    p.b = 2 * static_cast<std::int64_t>(r) + i - 1;
    p.s = t_prev + p.a;
    p.t = p.s + p.b;
    p.n_hc = t_prev + 4 * static_cast<std::int64_t>(k) + (std::int64_t{1} << (k - 1));
    return p;
}

}  // namespace

Synthesis build_blocks(int j_max, const SearchCaps& caps) {
    if (j_max < 1) throw std::invalid_argument("build_blocks needs at least one block");
    // Run lengths are 2^k; keep them inside int64.
    const int k_cap = std::min(caps.k_max, 60);
    Synthesis syn;
    std::vector<std::vector<Run>> history;  // runs of A_1, B_1, A_2, B_2, ...

    auto push_block = [&](BlockParams p) {
        history.push_back(runs_a(p.j, p.k));
        std::vector<const std::vector<Run>*> parts;
        for (const auto& h : history) parts.push_back(&h);
        p.alpha = stats(parts, ExactScalar{0}, ExactScalar{0}).sum / ExactScalar{p.s};
        history.push_back(runs_b(p.j, p.r, p.i));
        syn.layout.blocks.push_back(p);
    };
    push_block(finish(1, 2, 2, r_of(1), 0));

    for (int j = 2; j <= j_max; ++j) {
        const BlockParams& prev = syn.layout.blocks.back();
        const int r = r_of(j);
        const ExactScalar small{1, j + 1};
        const ExactScalar large{j + 1};
        const ExactScalar target = ExactScalar{1} - ExactScalar{1, j};
        std::vector<const std::vector<Run>*> base;
        for (const auto& h : history) base.push_back(&h);

        int k = prev.k + 1;
        std::vector<Run> a_runs;
        for (;; ++k) {
            if (k > k_cap) throw SearchCapExceeded(j, "k", k_cap);
            a_runs = runs_a(j, k);
            auto parts = base;
            parts.push_back(&a_runs);
            RunStats st = stats(parts, small, large);
            bool eq1 = ExactScalar{st.at_most, st.length} >= target;
            bool eq2 = st.sum / ExactScalar{st.length + 4 * r} >= large;
            if (eq1 && eq2) break;
        }

        auto eq3 = [&](std::int64_t i) {
            std::vector<Run> b_runs = runs_b(j, r, i);
            auto parts = base;
            parts.push_back(&a_runs);
            parts.push_back(&b_runs);
            RunStats st = stats(parts, small, large);
            return ExactScalar{st.at_least, st.length} >= target;
        };
        std::int64_t lo = prev.i + 1;
        std::int64_t i = lo;
        if (!eq3(lo)) {
            std::int64_t hi = lo + 1;
            while (!eq3(hi)) {
                if (hi >= caps.i_max) throw SearchCapExceeded(j, "i", caps.i_max);
                lo = hi;
                hi = std::min(hi * 2, caps.i_max);
            }
            while (hi - lo > 1) {
                std::int64_t mid = lo + (hi - lo) / 2;
                (eq3(mid) ? hi : lo) = mid;
            }
            i = hi;
        }
        if (i > caps.i_max) throw SearchCapExceeded(j, "i", caps.i_max);
        push_block(finish(j, k, i, r, prev.t));
    }

    const std::int64_t t_last = syn.layout.blocks.back().t;
    syn.weights.lo = -t_last;
    syn.weights.values.assign(static_cast<std::size_t>(2 * t_last + 2), ExactScalar{});
    auto place = [&](IndexInterval span, const std::vector<ExactScalar>& block) {
        if (static_cast<std::int64_t>(block.size()) != span.size()) throw std::logic_error("block size mismatch");
        for (std::size_t q = 0; q < block.size(); ++q) {
            syn.weights.values[static_cast<std::size_t>(span.lo + static_cast<std::int64_t>(q) - syn.weights.lo)] = block[q];
        }
    };
    place({0, 1}, {ExactScalar{1}, ExactScalar{1}});
    for (const BlockParams& p : syn.layout.blocks) {
        place(BlockWeights::span_a(syn.layout, p.j), template_a(p.j, p.k));
        place(BlockWeights::span_b_left(syn.layout, p.j), template_b(p.r, p.i));
        place(BlockWeights::span_c(syn.layout, p.j), template_c(p.j, p.k));
        place(BlockWeights::span_b_right(syn.layout, p.j), template_b(p.r, p.i));
    }
    return syn;
}

ClosedFormNorms closed_form_norms(const BlockLayout& layout, int j) {
    const BlockParams& p = layout.at(j);
    ClosedFormNorms out;
    out.first_start = layout.t_before(j) + 1;
    out.second_start = p.s + 1;
    expand(runs_a(j, p.k), out.first_range);
    expand(runs_b(j, p.r, p.i), out.second_range);
    return out;
}

std::vector<ExactScalar> closed_form_sequence(const BlockLayout& layout, int upto_j) {
    std::vector<ExactScalar> out;
    for (int j = 1; j <= upto_j; ++j) {
        ClosedFormNorms c = closed_form_norms(layout, j);
        out.insert(out.end(), c.first_range.begin(), c.first_range.end());
        out.insert(out.end(), c.second_range.begin(), c.second_range.end());
    }
    return out;
}

std::vector<ExactScalar> product_norms_left(const BlockWeights& w, std::int64_t n_max) {
    std::vector<ExactScalar> out;
    out.reserve(static_cast<std::size_t>(n_max));
    ExactScalar p{1};
    for (std::int64_t n = 1; n <= n_max; ++n) {
        p *= w.at(-n);
        out.push_back(p);
    }
    return out;
}

std::vector<ExactScalar> product_norms_right(const BlockWeights& w, std::int64_t n_max) {
    std::vector<ExactScalar> out;
    out.reserve(static_cast<std::size_t>(n_max));
    ExactScalar p{1};
    for (std::int64_t n = 1; n <= n_max; ++n) {
        p /= w.at(n + 1);
        out.push_back(p);
    }
    return out;
}

ShiftOperator block_operator(const Synthesis& syn) {
    return ShiftOperator(Direction::Backward, syn.weights.sequence(), preset("c0_Z"));
}

void to_json(json& j, const InequalityCheck& c) {
    j = json{{"name", c.name}, {"j", c.j}, {"holds", c.holds}, {"required", c.required},
             {"lhs", c.lhs}, {"rhs", c.rhs}};
    if (c.offending_n) j["offending_n"] = *c.offending_n;
    if (!c.note.empty()) j["note"] = c.note;
}

bool AuditReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const InequalityCheck& c) { return c.holds || !c.required; });
}

std::vector<InequalityCheck> AuditReport::named(const std::string& name) const {
    std::vector<InequalityCheck> out;
    for (const auto& c : checks) {
        if (c.name == name) out.push_back(c);
    }
    return out;
}

void to_json(json& j, const AuditReport& r) { j = json{{"passed", r.passed()}, {"checks", r.checks}}; }

AuditReport verify_inequalities(const BlockLayout& layout, const BlockWeights& weights, int j_max) {
    if (j_max < 1 || j_max > layout.count()) throw std::invalid_argument("verify_inequalities: j_max out of range");
    AuditReport rep;
    const std::int64_t horizon = layout.at(j_max).t;
    const auto left = product_norms_left(weights, horizon);
    const auto right = product_norms_right(weights, horizon);
    std::vector<ExactScalar> prefix(static_cast<std::size_t>(horizon) + 1);
    for (std::int64_t n = 1; n <= horizon; ++n) {
        prefix[static_cast<std::size_t>(n)] = prefix[static_cast<std::size_t>(n - 1)] + left[static_cast<std::size_t>(n - 1)];
    }
    auto norm = [&](std::int64_t n) -> const ExactScalar& { return left[static_cast<std::size_t>(n - 1)]; };

    const auto closed = closed_form_sequence(layout, j_max);
    for (int j = 1; j <= j_max; ++j) {
        const std::int64_t lo = layout.t_before(j) + 1;
        const std::int64_t hi = layout.at(j).t;
        InequalityCheck c{"closed_form", j, true, true, ExactScalar{lo}, ExactScalar{hi}, std::nullopt,
                          "closed-form display equals raw weight products on (t_{j-1}, t_j]"};
        InequalityCheck sym{"symmetry", j, true, true, ExactScalar{lo}, ExactScalar{hi}, std::nullopt,
                            "||B_w^n e_-1|| = ||B_w^-n e_1|| on (t_{j-1}, t_j]"};
        for (std::int64_t n = lo; n <= hi; ++n) {
            const auto idx = static_cast<std::size_t>(n - 1);
            if (c.holds && closed[idx] != left[idx]) {
                c.holds = false;
                c.offending_n = n;
            }
            if (sym.holds && left[idx] != right[idx]) {
                sym.holds = false;
                sym.offending_n = n;
            }
        }
        rep.checks.push_back(c);
        rep.checks.push_back(sym);
    }

    for (int j = 1; j <= j_max; ++j) {
        const BlockParams& p = layout.at(j);
        const std::int64_t t_prev = layout.t_before(j);
        const bool required = j >= 2;
        const ExactScalar target = ExactScalar{1} - ExactScalar{1, j};
        const ExactScalar small{1, j + 1};
        const ExactScalar large{j + 1};

        std::int64_t count_small = 0;
        for (std::int64_t n = 1; n <= p.s; ++n) count_small += norm(n) <= small ? 1 : 0;
        ExactScalar eq1{count_small, p.s};
        rep.checks.push_back({"eq1", j, eq1 >= target, required, eq1, target, std::nullopt,
                              "card{n <= s_j : ||B_w^n e_-1|| <= 1/(j+1)} / s_j"});
        ExactScalar eq1_bound = ExactScalar::pow2(p.k) / ExactScalar{t_prev + 4 * p.k + (std::int64_t{1} << p.k)};
        rep.checks.push_back({"eq1_bound", j, eq1_bound >= target, false, eq1_bound, target, std::nullopt,
                              "2^k_j / (t_{j-1} + 4k_j + 2^k_j)"});

        const ExactScalar& sum_s = prefix[static_cast<std::size_t>(p.s)];
        ExactScalar eq2 = sum_s / ExactScalar{p.s + 4 * p.r};
        rep.checks.push_back({"eq2", j, eq2 >= large, required, eq2, large, std::nullopt,
                              j == 1 ? "k_1 is fixed, reported only" : "s_j alpha_j / (s_j + 4 r_j)"});
        ExactScalar alpha = sum_s / ExactScalar{p.s};
        rep.checks.push_back({"alpha", j, alpha == p.alpha, true, alpha, p.alpha, std::nullopt,
                              "alpha_j from products equals the builder's value"});
        ExactScalar alpha_bound = (ExactScalar::pow2(2 * p.k + 2) - ExactScalar{4}) / ExactScalar{static_cast<std::int64_t>(j) * p.s};
        rep.checks.push_back({"alpha_bound", j, alpha >= alpha_bound, true, alpha, alpha_bound, std::nullopt,
                              "alpha_j >= (2^(2k_j+2) - 4) / (j s_j)"});

        std::int64_t count_large = 0;
        for (std::int64_t n = 1; n <= p.t; ++n) count_large += norm(n) >= large ? 1 : 0;
        ExactScalar eq3{count_large, p.t};
        rep.checks.push_back({"eq3", j, eq3 >= target, required, eq3, target, std::nullopt,
                              "card{n <= t_j : ||B_w^n e_-1|| >= j+1} / t_j"});
        ExactScalar eq3_bound{p.i, p.s + 2 * p.r + p.i - 1};
        rep.checks.push_back({"eq3_bound", j, eq3_bound >= target, false, eq3_bound, target, std::nullopt,
                              "i_j / (s_j + 2r_j + i_j - 1)"});
    }

    for (int j = 1; j + 1 <= j_max; ++j) {
        const std::int64_t lo = layout.t_before(j) + 4 * layout.at(j).k;
        const std::int64_t hi = layout.at(j).t + 4 * layout.at(j + 1).k;
        const ExactScalar large{j + 1};
        InequalityCheck c{"eq4", j, true, true, ExactScalar{}, large, std::nullopt,
                          "min over n in [" + std::to_string(lo) + ", " + std::to_string(hi) + "] of (1/n) sum_{i<=n} ||B_w^i e_-1||"};
        bool first = true;
        for (std::int64_t n = lo; n <= hi; ++n) {
            ExactScalar avg = prefix[static_cast<std::size_t>(n)] / ExactScalar{n};
            if (first || avg < c.lhs) c.lhs = avg;
            first = false;
            if (avg < large && !c.offending_n) {
                c.holds = false;
                c.offending_n = n;
            }
        }
        rep.checks.push_back(c);
    }
    return rep;
}

bool HypercyclicityReport::windows_hold() const {
    return std::all_of(windows.begin(), windows.end(), [](const Window& w) { return w.holds; });
}

bool HypercyclicityReport::products_decrease() const {
    return std::all_of(products.begin(), products.end(),
                       [](const ShiftedProducts& p) { return p.backward_decreasing && p.forward_decreasing; });
}

bool HypercyclicityReport::products_below_threshold() const {
    return std::all_of(products.begin(), products.end(), [](const ShiftedProducts& p) { return p.below_threshold; });
}

void to_json(json& j, const HypercyclicityReport& r) {
    json windows = json::array();
    for (const auto& w : r.windows) {
        json e{{"j", w.j}, {"n_hc", w.n_hc}, {"range", json::array({w.lo, w.hi})}, {"holds", w.holds}};
        if (w.offending_n) e["offending_n"] = *w.offending_n;
        windows.push_back(e);
    }
    json products = json::array();
    for (const auto& p : r.products) {
        products.push_back(json{{"t", p.t},
                                {"blocks", p.blocks},
                                {"backward", p.backward},
                                {"forward", p.forward},
                                {"backward_decreasing", p.backward_decreasing},
                                {"forward_decreasing", p.forward_decreasing},
                                {"below_threshold", p.below_threshold}});
    }
    j = json{{"windows", windows},
             {"windows_hold", r.windows_hold()},
             {"products", products},
             {"products_decrease", r.products_decrease()},
             {"products_below_threshold", r.products_below_threshold()},
             {"threshold", r.threshold},
             {"t_range", r.t_range},
             {"note", "forward products 1/(w_{t+1}...w_{t+n_j}) are the mirror computation, not displayed in the source argument"}};
}

namespace {

bool strictly_decreasing(const std::vector<ExactScalar>& v) {
    for (std::size_t q = 1; q < v.size(); ++q) {
        if (!(v[q] < v[q - 1])) return false;
    }
    return true;
}

}  // namespace

HypercyclicityReport hypercyclicity_witness(const BlockLayout& layout, const BlockWeights& weights, int j_max,
                                            std::int64_t t_range, const ExactScalar& threshold) {
    if (j_max < 1 || j_max > layout.count()) throw std::invalid_argument("hypercyclicity_witness: j_max out of range");
    HypercyclicityReport rep;
    rep.threshold = threshold;
    rep.t_range = t_range;
    const std::int64_t horizon = layout.at(j_max).t;
    const auto left = product_norms_left(weights, horizon);
    const auto right = product_norms_right(weights, horizon);
    for (int j = 1; j <= j_max; ++j) {
        const BlockParams& p = layout.at(j);
        const std::int64_t half = std::int64_t{1} << (p.k - 1);
        HypercyclicityReport::Window w{j, p.n_hc, p.n_hc - half, p.n_hc + half, true, std::nullopt};
        const ExactScalar target{1, j + 1};
        for (std::int64_t n = w.lo + 1; n <= w.hi; ++n) {
            const auto idx = static_cast<std::size_t>(n - 1);
            if (left[idx] != target || right[idx] != target) {
                w.holds = false;
                w.offending_n = n;
                break;
            }
        }
        rep.windows.push_back(w);
    }
    for (std::int64_t t = -t_range; t <= t_range; ++t) {
        ShiftedProducts sp;
        sp.t = t;
        for (int j = 1; j <= j_max; ++j) {
            const BlockParams& p = layout.at(j);
            if ((t < 0 ? -t : t) >= (std::int64_t{1} << (p.k - 1))) continue;
            ExactScalar back{1};
            for (std::int64_t pos = t - p.n_hc + 1; pos <= t; ++pos) back *= weights.at(pos);
            ExactScalar fwd{1};
            for (std::int64_t pos = t + 1; pos <= t + p.n_hc; ++pos) fwd /= weights.at(pos);
            sp.blocks.push_back(j);
            sp.backward.push_back(back);
            sp.forward.push_back(fwd);
        }
        sp.backward_decreasing = strictly_decreasing(sp.backward);
        sp.forward_decreasing = strictly_decreasing(sp.forward);
        sp.below_threshold = !sp.backward.empty() && sp.backward.back() < threshold && sp.forward.back() < threshold;
        rep.products.push_back(std::move(sp));
    }
    return rep;
}

json synthesis_report(const Synthesis& syn, const AuditReport& audit, const HypercyclicityReport& hc) {
    json layout = json::array();
    for (const auto& p : syn.layout.blocks) layout.push_back(p);
    json blocks = json::array();
    for (const auto& p : syn.layout.blocks) {
        blocks.push_back(json{{"j", p.j},
                              {"A", syn.weights.slice(BlockWeights::span_a(syn.layout, p.j))},
                              {"B", syn.weights.slice(BlockWeights::span_b_left(syn.layout, p.j))},
                              {"C", syn.weights.slice(BlockWeights::span_c(syn.layout, p.j))}});
    }
    auto group = [&](const std::string& name) {
        json checks = json::array();
        bool pass = true;
        for (const auto& c : audit.checks) {
            if (c.name != name) continue;
            checks.push_back(c);
            pass = pass && (c.holds || !c.required);
        }
        return json{{"pass", pass}, {"checks", checks}};
    };
    json audits{{"eq1", group("eq1")},
                {"eq2", group("eq2")},
                {"eq3", group("eq3")},
                {"eq4", group("eq4")},
                {"closed_form", group("closed_form")},
                {"symmetry", group("symmetry")},
                {"hc", json{{"pass", hc.windows_hold() && hc.products_decrease()}, {"report", hc}}},
                {"passed", audit.passed() && hc.windows_hold() && hc.products_decrease()}};
    json intermediate = json::array();
    for (const auto& c : audit.checks) {
        if (c.name == "eq1_bound" || c.name == "eq3_bound" || c.name == "alpha_bound" || c.name == "alpha") {
            intermediate.push_back(c);
        }
    }
    audits["intermediate"] = intermediate;
    return json{{"layout", layout},
                {"blocks", blocks},
                {"weights_window", json{{"lo", syn.weights.lo}, {"hi", syn.weights.hi()}, {"values", syn.weights.values}}},
                {"weights", syn.weights.sequence().to_json()},
                {"audits", audits}};
}

}  // namespace shiftlab

#include "shiftlab/algebra.hpp"

#include <algorithm>
#include <random>

#include "shiftlab/synthesis.hpp"

namespace shiftlab {

using nlohmann::json;

SystemSpec::SystemSpec(ShiftOperator op) : node_(std::move(op)) {}
SystemSpec::SystemSpec(ScalarOperator op) : node_(std::move(op)) {
    if (scalar().factor.sign() <= 0) throw std::invalid_argument("scalar system needs a nonzero factor");
}
SystemSpec::SystemSpec(DirectSum sum) : node_(std::move(sum)) {
    if (this->sum().components.empty()) throw std::invalid_argument("direct sum needs at least one component");
}

std::vector<SystemSpec> SystemSpec::leaves() const {
    if (!is_sum()) return {*this};
    std::vector<SystemSpec> out;
    for (const auto& c : sum().components) {
        auto sub = c.leaves();
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

SystemSpec SystemSpec::component(std::size_t index) const {
    auto all = leaves();
    if (index >= all.size()) throw std::out_of_range("no component " + std::to_string(index));
    return all[index];
}

std::string SystemSpec::describe() const {
    if (is_shift()) return shift().describe();
    if (is_scalar()) return "x -> " + scalar().factor.to_string() + " x";
    std::string out = "(";
    for (std::size_t i = 0; i < sum().components.size(); ++i) {
        if (i) out += " (+) ";
        out += sum().components[i].describe();
    }
    return out + ")";
}

json SystemSpec::to_json() const {
    if (is_shift()) return json{{"shift", shift().to_json()}};
    if (is_scalar()) {
        json j{{"scalar", scalar().factor}};
        if (!(scalar().phase == Phase{})) j["phase"] = {{"re", scalar().phase.re}, {"im", scalar().phase.im}};
        return j;
    }
    json arr = json::array();
    for (const auto& c : sum().components) arr.push_back(c.to_json());
    return json{{"direct_sum", arr}};
}

namespace {

void require_unimodular(const Phase& p) {
    if (p.re * p.re + p.im * p.im != ExactScalar{1}) throw std::invalid_argument("rotation scalar must satisfy |lambda| = 1");
}

Phase multiply(const Phase& a, const Phase& b) {
    return Phase{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

template <class Fn>
SystemSpec map_leaves(const SystemSpec& sys, Fn&& fn) {
    if (sys.is_sum()) {
        DirectSum out;
        for (const auto& c : sys.sum().components) out.components.push_back(map_leaves(c, fn));
        return SystemSpec(std::move(out));
    }
    return fn(sys);
}

}  // namespace

SystemSpec rotate(const SystemSpec& sys, const Phase& lambda) {
    require_unimodular(lambda);
    return map_leaves(sys, [&](const SystemSpec& leaf) -> SystemSpec {
        if (leaf.is_shift()) return leaf.shift().with_phase(multiply(leaf.shift().phase(), lambda));
        ScalarOperator s = leaf.scalar();
        s.phase = multiply(s.phase, lambda);
        return s;
    });
}

SystemSpec invert(const SystemSpec& sys) {
    return map_leaves(sys, [](const SystemSpec& leaf) -> SystemSpec {
        if (leaf.is_shift()) return dual_form(leaf.shift());
        ScalarOperator s = leaf.scalar();
        s.factor = s.factor.reciprocal();
        s.phase = Phase{s.phase.re, -s.phase.im};
        return s;
    });
}

SystemSpec power(const SystemSpec& sys, int m) {
    if (m < 1) throw std::invalid_argument("power needs m >= 1");
    return map_leaves(sys, [m](const SystemSpec& leaf) -> SystemSpec {
        if (leaf.is_shift()) return power(leaf.shift(), m);
        ScalarOperator s = leaf.scalar();
        Phase p;
        for (int i = 0; i < m; ++i) p = multiply(p, s.phase);
        s.factor = s.factor.pow(m);
        s.phase = p;
        return s;
    });
}

SystemSpec conjugacy_transfer(const SystemSpec& sys, const Diagonal& diag) {
    return map_leaves(sys, [&](const SystemSpec& leaf) -> SystemSpec {
        if (leaf.is_shift()) return conjugate_by(leaf.shift(), diag);
        return leaf;
    });
}

SystemSpec conjugacy_transfer(const SystemSpec& sys, const ConjugacyWeights& v) {
    return conjugacy_transfer(sys, v.as_diagonal());
}

SystemSpec direct_sum(std::vector<SystemSpec> components) { return SystemSpec(DirectSum{std::move(components)}); }

ExactScalar system_basis_orbit_norm(const SystemSpec& sys, std::size_t component, std::int64_t j0, std::int64_t n, int k) {
    SystemSpec leaf = sys.component(component);
    if (leaf.is_shift()) return basis_orbit_norm(leaf.shift(), j0, n, k);
    return leaf.scalar().factor.pow(n);
}

ExactScalar system_orbit_norm(const SystemSpec& sys, const std::vector<SparseVector>& x, std::int64_t n, int k) {
    auto all = sys.leaves();
    if (x.size() != all.size()) throw std::invalid_argument("one vector per component is required");
    ExactScalar best{0};
    for (std::size_t c = 0; c < all.size(); ++c) {
        ExactScalar v;
        if (all[c].is_shift()) {
            v = seminorm(apply(all[c].shift(), x[c], n), k, all[c].shift().space()).exact();
        } else {
            v = all[c].scalar().factor.pow(n) * x[c].get(0).abs();
        }
        best = std::max(best, v);
    }
    return best;
}

std::string to_string(SystemCriterion c) {
    switch (c) {
        case SystemCriterion::AE: return "AE";
        case SystemCriterion::APE: return "APE";
        case SystemCriterion::APEInverse: return "APE-inverse";
        case SystemCriterion::UE: return "UE";
        case SystemCriterion::UPE: return "UPE";
        case SystemCriterion::EDiag: return "E-diagnostic";
    }
    return "AE";
}

void to_json(json& j, const SystemVerdict& v) {
    j = json{{"criterion", to_string(v.criterion)}, {"kind", to_string(v.kind)}, {"components", v.components}};
}

namespace {

// First n <= n_max with (1/n) sum_{i<=n} r^i >= M (cesaro) or r^n >= M, for r > 1.
std::vector<Crossing> scalar_crossings(const ExactScalar& r, bool cesaro, const HorizonConfig& cfg) {
    std::vector<Crossing> out;
    for (const auto& m : cfg.m_grid) out.push_back({m, std::nullopt});
    std::size_t next = 0;
    ExactScalar term{1}, sum{0};
    for (std::int64_t n = 1; n <= cfg.n_max && next < out.size(); ++n) {
        term *= r;
        sum += term;
        ExactScalar v = cesaro ? sum / ExactScalar{n} : term;
        while (next < out.size() && v >= out[next].threshold) out[next++].first_n = n;
    }
    return out;
}

bool all_crossed(const std::vector<Crossing>& cs) {
    return std::all_of(cs.begin(), cs.end(), [](const Crossing& c) { return c.first_n.has_value(); });
}

Verdict unsupported(const ShiftOperator& op, SystemCriterion c, const HorizonConfig& cfg, const std::string& why) {
    Verdict v;
    v.criterion = to_string(c);
    v.property = "none";
    v.branch = "none";
    v.config = cfg;
    v.op = op.describe();
    v.notes.push_back(why);
    return v;
}

Verdict check_shift(const ShiftOperator& op, SystemCriterion c, const HorizonConfig& cfg) {
    switch (c) {
        case SystemCriterion::AE:
            if (!op.bilateral()) return unsupported(op, c, cfg, "average expansivity needs an invertible (bilateral) shift");
            return avg_expansive(op, cfg);
        case SystemCriterion::APE: return avg_pos_expansive(op, OrbitSide::Op, cfg);
        case SystemCriterion::APEInverse:
            if (!op.bilateral()) return unsupported(op, c, cfg, "unilateral shifts have no inverse");
            return avg_pos_expansive(op, OrbitSide::Inverse, cfg);
        case SystemCriterion::UE:
            if (!op.bilateral() || op.step() != 1) return unsupported(op, c, cfg, "uniform checks need a bilateral one-step shift");
            return unif_expansive(op, cfg);
        case SystemCriterion::UPE:
            if (op.step() != 1) return unsupported(op, c, cfg, "uniform checks need a one-step shift");
            return unif_pos_expansive(op, cfg);
        case SystemCriterion::EDiag: return expansive_basis_diagnostic(op, cfg);
    }
    return unsupported(op, c, cfg, "unknown criterion");
}

}  // namespace

Verdict check_scalar(const ScalarOperator& op, SystemCriterion criterion, const HorizonConfig& cfg) {
    cfg.validate();
    Verdict v;
    v.criterion = to_string(criterion);
    v.config = cfg;
    v.op = "x -> " + op.factor.to_string() + " x";
    v.property = "none";
    v.branch = "none";
    const int cmp = op.factor == ExactScalar{1} ? 0 : (op.factor > ExactScalar{1} ? 1 : -1);
    const ExactScalar grow = cmp >= 0 ? op.factor : op.factor.reciprocal();
    bool forward_ok = false, backward_ok = false, cesaro = true;
    switch (criterion) {
        case SystemCriterion::AE: forward_ok = backward_ok = true; break;
        case SystemCriterion::APE: forward_ok = true; break;
        case SystemCriterion::APEInverse: backward_ok = true; break;
        case SystemCriterion::UE: forward_ok = backward_ok = true; cesaro = false; break;
        case SystemCriterion::UPE: forward_ok = true; cesaro = false; break;
        case SystemCriterion::EDiag: forward_ok = backward_ok = true; cesaro = false; break;
    }
    const bool usable = (cmp > 0 && forward_ok) || (cmp < 0 && backward_ok);
    if (usable) {
        v.crossings = scalar_crossings(grow, cesaro, cfg);
        v.k = 1;
        v.horizon = cfg.n_max;
        if (all_crossed(v.crossings)) {
            v.kind = VerdictKind::CertifiedUnbounded;
            v.branch = cmp > 0 ? "left" : "right";
            if (criterion == SystemCriterion::UE || criterion == SystemCriterion::UPE) {
                v.property = cmp > 0 ? "expanding" : "contracting";
            }
            v.attestation = "|lambda|^n grows geometrically";
        }
        return v;
    }
    v.kind = VerdictKind::BoundedWitness;
    v.k = 1;
    v.bound = Magnitude{ExactScalar{1}};
    v.attestation = "the relevant orbit of x is |lambda|^(+-n) |x| <= |x|";
    return v;
}

SystemVerdict check_system(const SystemSpec& sys, SystemCriterion criterion, const HorizonConfig& cfg) {
    SystemVerdict out;
    out.criterion = criterion;
    bool all_cert = true, any_bounded = false;
    for (const auto& leaf : sys.leaves()) {
        Verdict v = leaf.is_shift() ? check_shift(leaf.shift(), criterion, cfg) : check_scalar(leaf.scalar(), criterion, cfg);
        all_cert = all_cert && v.certified();
        any_bounded = any_bounded || v.kind == VerdictKind::BoundedWitness;
        out.components.push_back(std::move(v));
    }
    out.kind = all_cert ? VerdictKind::CertifiedUnbounded : any_bounded ? VerdictKind::BoundedWitness : VerdictKind::Inconclusive;
    return out;
}

std::vector<NamedSystem> preset_battery(int blocks) {
    auto B = [](const char* space, WeightSequence w) { return ShiftOperator(Direction::Backward, std::move(w), preset(space)); };
    auto F = [](const char* space, WeightSequence w) { return ShiftOperator(Direction::Forward, std::move(w), preset(space)); };
    auto c = [](std::int64_t num, std::int64_t den = 1) { return WeightSequence::constant(ExactScalar{num, den}); };
    std::vector<NamedSystem> out{
        {"B_lp2_Z_w2", B("lp_Z:2", c(2))},
        {"B_c0_Z_w2", B("c0_Z", c(2))},
        {"B_lp1_Z_w1", B("lp_Z:1", c(1))},
        {"B_c0_Z_whalf", B("c0_Z", c(1, 2))},
        {"B_lp1_Z_peak", B("lp_Z:1", WeightSequence::two_sided(ExactScalar{2}, ExactScalar{1, 2}))},
        {"B_lp1_Z_dip", B("lp_Z:1", WeightSequence::two_sided(ExactScalar{1, 2}, ExactScalar{2}))},
        {"F_lp2_Z_w2", F("lp_Z:2", c(2))},
        {"F_s_Z_w1", F("s_Z", c(1))},
        {"F_halfline_w2", F("halfline_Z", c(2))},
        {"F_lp2_N_w2", F("lp_N:2", c(2))},
        {"B_lp2_N_w2", B("lp_N:2", c(2))},
    };
    if (blocks > 0) {
        Synthesis syn = build_blocks(blocks);
        out.push_back({"B_c0_Z_blocks" + std::to_string(blocks), block_operator(syn)});
    }
    return out;
}

void to_json(json& j, const LawResult& r) {
    j = json{{"law", r.law}, {"preset", r.preset}, {"pass", r.pass}, {"skipped", r.skipped}, {"details", r.details}};
}

bool PropsReport::passed() const {
    return std::all_of(results.begin(), results.end(), [](const LawResult& r) { return r.pass || r.skipped; });
}

void to_json(json& j, const PropsReport& r) {
    json matrix = json::object();
    for (const auto& res : r.results) {
        matrix[res.preset][res.law] = res.skipped ? "skipped" : (res.pass ? "pass" : "fail");
    }
    j = json{{"passed", r.passed()}, {"matrix", matrix}, {"results", r.results}};
}

HorizonConfig props_config() {
    HorizonConfig cfg;
    cfg.n_max = 256;
    cfg.window = 64;
    cfg.m_grid = HorizonConfig::dyadic_grid(0, 6);
    cfg.k_max = 2;
    cfg.l_max = 6;
    cfg.mode = NumericMode::Exact;
    return cfg;
}

namespace {

bool all_bilateral(const SystemSpec& sys) {
    for (const auto& leaf : sys.leaves()) {
        if (leaf.is_shift() && !leaf.shift().bilateral()) return false;
    }
    return true;
}

std::vector<std::int64_t> sample_indices(const SystemSpec& leaf) {
    if (!leaf.is_shift()) return {0};
    if (leaf.shift().bilateral()) return {-3, -2, -1, 0, 1, 2, 3};
    return {1, 2, 3, 4};
}

json without_operator(const Verdict& v) {
    json j = v;
    j.erase("operator");
    return j;
}

// Compares orbit norms of leaf c of two systems, optionally with a map on n.
template <class Lhs, class Rhs>
void compare_norms(LawResult& r, const std::string& what, std::int64_t n_lo, std::int64_t n_hi, int k_max,
                   const std::vector<std::int64_t>& js, Lhs&& lhs, Rhs&& rhs) {
    for (std::int64_t j : js) {
        for (std::int64_t n = n_lo; n <= n_hi; ++n) {
            for (int k = 1; k <= k_max; ++k) {
                ExactScalar a = lhs(j, n, k);
                ExactScalar b = rhs(j, n, k);
                if (a != b) {
                    r.pass = false;
                    r.details.push_back(what + ": j = " + std::to_string(j) + ", n = " + std::to_string(n) + ", k = " +
                                        std::to_string(k) + ": " + a.to_string() + " != " + b.to_string());
                    return;
                }
            }
        }
    }
}

std::string swap_branch(const std::string& b) {
    if (b == "left") return "right";
    if (b == "right") return "left";
    return b;
}

std::string invert_property(const std::string& p) {
    static const std::vector<std::pair<std::string, std::string>> pairs{{"A", "b"}, {"B", "a"}, {"C", "c"},
                                                                        {"b", "A"}, {"a", "B"}, {"c", "C"},
                                                                        {"expanding", "contracting"},
                                                                        {"contracting", "expanding"}};
    for (const auto& [from, to] : pairs) {
        if (p == from) return to;
    }
    return p;
}

}  // namespace

LawResult law_rotation(const NamedSystem& s, const HorizonConfig& cfg) {
    LawResult r{"rotation", s.name, true, false, {}};
    try {
        (void)rotate(s.system, Phase{ExactScalar{2}, ExactScalar{0}});
        r.pass = false;
        r.details.push_back("|lambda| = 2 was accepted");
    } catch (const std::invalid_argument&) {
    }
    const std::vector<Phase> lambdas{{ExactScalar{-1}, ExactScalar{0}},
                                     {ExactScalar{0}, ExactScalar{1}},
                                     {ExactScalar{3, 5}, ExactScalar{4, 5}}};
    const bool bi = all_bilateral(s.system);
    const auto leaves = s.system.leaves();
    for (const auto& lambda : lambdas) {
        SystemSpec rot = rotate(s.system, lambda);
        for (std::size_t c = 0; c < leaves.size(); ++c) {
            compare_norms(r, "orbit norm", bi ? -12 : 0, 12, cfg.k_max, sample_indices(leaves[c]),
                          [&](std::int64_t j, std::int64_t n, int k) { return system_basis_orbit_norm(rot, c, j, n, k); },
                          [&](std::int64_t j, std::int64_t n, int k) { return system_basis_orbit_norm(s.system, c, j, n, k); });
        }
        for (auto crit : {SystemCriterion::AE, SystemCriterion::APE, SystemCriterion::UE, SystemCriterion::EDiag}) {
            SystemVerdict a = check_system(s.system, crit, cfg);
            SystemVerdict b = check_system(rot, crit, cfg);
            for (std::size_t c = 0; c < a.components.size(); ++c) {
                if (without_operator(a.components[c]) != without_operator(b.components[c])) {
                    r.pass = false;
                    r.details.push_back(to_string(crit) + " report changed under rotation");
                }
            }
        }
    }
    return r;
}

LawResult law_inversion(const NamedSystem& s, const HorizonConfig& cfg) {
    LawResult r{"inversion", s.name, true, false, {}};
    if (!all_bilateral(s.system)) {
        r.skipped = true;
        r.details.push_back("unilateral component: no inverse");
        return r;
    }
    SystemSpec inv = invert(s.system);
    SystemSpec back = invert(inv);
    const auto leaves = s.system.leaves();
    for (std::size_t c = 0; c < leaves.size(); ++c) {
        const auto js = sample_indices(leaves[c]);
        compare_norms(r, "inverse orbit", 0, 15, cfg.k_max, js,
                      [&](std::int64_t j, std::int64_t n, int k) { return system_basis_orbit_norm(inv, c, j, n, k); },
                      [&](std::int64_t j, std::int64_t n, int k) { return system_basis_orbit_norm(s.system, c, j, -n, k); });
        compare_norms(r, "involution", -10, 10, cfg.k_max, js,
                      [&](std::int64_t j, std::int64_t n, int k) { return system_basis_orbit_norm(back, c, j, n, k); },
                      [&](std::int64_t j, std::int64_t n, int k) { return system_basis_orbit_norm(s.system, c, j, n, k); });
    }
    SystemVerdict ae = check_system(s.system, SystemCriterion::AE, cfg);
    SystemVerdict ae_inv = check_system(inv, SystemCriterion::AE, cfg);
    SystemVerdict ue = check_system(s.system, SystemCriterion::UE, cfg);
    SystemVerdict ue_inv = check_system(inv, SystemCriterion::UE, cfg);
    SystemVerdict ape = check_system(s.system, SystemCriterion::APE, cfg);
    SystemVerdict ape_inv = check_system(inv, SystemCriterion::APEInverse, cfg);
    if (ape.kind != ape_inv.kind) {
        r.pass = false;
        r.details.push_back("APE(T) and APE-inverse(T^-1) disagree");
    }
    for (std::size_t c = 0; c < ae.components.size(); ++c) {
        const Verdict& a = ae.components[c];
        const Verdict& b = ae_inv.components[c];
        if (a.kind != b.kind) {
            r.pass = false;
            r.details.push_back("AE kind " + to_string(a.kind) + " vs " + to_string(b.kind));
        } else if (a.certified() && swap_branch(a.branch) != b.branch) {
            r.pass = false;
            r.details.push_back("AE branch " + a.branch + " does not swap to " + b.branch);
        }
        const Verdict& u = ue.components[c];
        const Verdict& w = ue_inv.components[c];
        if (u.certified() != w.certified() || invert_property(u.property) != w.property) {
            r.pass = false;
            r.details.push_back("UE property " + u.property + " does not map to " + w.property);
        }
    }
    return r;
}

LawResult law_power(const NamedSystem& s, const HorizonConfig& cfg, const std::vector<int>& ms) {
    LawResult r{"power", s.name, true, false, {}};
    const bool bi = all_bilateral(s.system);
    const auto leaves = s.system.leaves();
    const auto crit = bi ? SystemCriterion::AE : SystemCriterion::APE;
    for (int m : ms) {
        SystemSpec p = power(s.system, m);
        for (std::size_t c = 0; c < leaves.size(); ++c) {
            compare_norms(r, "power m = " + std::to_string(m), bi ? -8 : 0, 8, cfg.k_max, sample_indices(leaves[c]),
                          [&](std::int64_t j, std::int64_t n, int k) { return system_basis_orbit_norm(p, c, j, n, k); },
                          [&](std::int64_t j, std::int64_t n, int k) { return system_basis_orbit_norm(s.system, c, j, m * n, k); });
        }
        HorizonConfig short_cfg = cfg;
        short_cfg.n_max = (cfg.n_max + m - 1) / m;
        bool base = check_system(s.system, crit, cfg).certified();
        bool powered = check_system(p, crit, short_cfg).certified();
        if (base == powered) continue;
        bool resolved = false;
        if (!powered) {
            resolved = check_system(p, crit, cfg).certified();
            if (resolved) r.details.push_back("marginal: T^" + std::to_string(m) + " certified only at the full horizon");
        } else {
            HorizonConfig long_cfg = cfg;
            long_cfg.n_max = cfg.n_max * m;
            resolved = check_system(s.system, crit, long_cfg).certified();
            if (resolved) r.details.push_back("marginal: T certified only at horizon m N for m = " + std::to_string(m));
        }
        if (!resolved) {
            r.pass = false;
            r.details.push_back(to_string(crit) + " of T and T^" + std::to_string(m) + " disagree at aligned horizons");
        }
    }
    return r;
}

LawResult law_conjugacy(const NamedSystem& s, const HorizonConfig& cfg) {
    LawResult r{"conjugacy", s.name, true, false, {}};
    const auto leaves = s.system.leaves();
    const bool bi = all_bilateral(s.system);

    SystemSpec same = conjugacy_transfer(s.system, Diagonal::constant(ExactScalar{1}));
    for (std::size_t c = 0; c < leaves.size(); ++c) {
        compare_norms(r, "identity diagonal", bi ? -8 : 0, 8, cfg.k_max, sample_indices(leaves[c]),
                      [&](std::int64_t j, std::int64_t n, int k) { return system_basis_orbit_norm(same, c, j, n, k); },
                      [&](std::int64_t j, std::int64_t n, int k) { return system_basis_orbit_norm(s.system, c, j, n, k); });
    }

    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> expo(-3, 3);
    const std::int64_t lo = -cfg.window - cfg.n_max - 1;
    std::vector<ExactScalar> table;
    for (std::int64_t j = lo; j <= cfg.window + cfg.n_max + 1; ++j) table.push_back(ExactScalar::pow2(expo(rng)));
    Diagonal d = Diagonal::table(lo, table, ExactScalar{1});
    SystemSpec conj = conjugacy_transfer(s.system, d);
    for (std::size_t c = 0; c < leaves.size(); ++c) {
        compare_norms(r, "dyadic diagonal", bi ? -8 : 0, 8, cfg.k_max, sample_indices(leaves[c]),
                      [&](std::int64_t j, std::int64_t n, int k) { return system_basis_orbit_norm(conj, c, j, n, k); },
                      [&](std::int64_t j, std::int64_t n, int k) {
                          ExactScalar scale = leaves[c].is_shift() ? d(j).abs() : ExactScalar{1};
                          return scale * system_basis_orbit_norm(s.system, c, j, n, k);
                      });
    }
    const auto crit = bi ? SystemCriterion::AE : SystemCriterion::APE;
    SystemVerdict a = check_system(s.system, crit, cfg);
    SystemVerdict b = check_system(conj, crit, cfg);
    if (a.certified() != b.certified()) {
        r.pass = false;
        r.details.push_back(to_string(crit) + " certification changed under a dyadic conjugacy");
    } else if (a.kind != b.kind) {
        r.details.push_back("reported: " + to_string(a.kind) + " became " + to_string(b.kind) +
                            " (the transferred space declares no tails)");
    }

    for (std::size_t c = 0; c < leaves.size(); ++c) {
        if (!leaves[c].is_shift()) continue;
        const ShiftOperator& op = leaves[c].shift();
        if (!op.bilateral() || op.direction() != Direction::Backward || op.step() != 1) continue;
        ConjugacyResult cr = conjugate_to_unweighted(op);
        compare_norms(r, "unweighted conjugate", -8, 8, cfg.k_max, sample_indices(leaves[c]),
                      [&](std::int64_t j, std::int64_t n, int k) { return basis_orbit_norm(cr.op, j, n, k); },
                      [&](std::int64_t j, std::int64_t n, int k) { return cr.v(j).abs() * basis_orbit_norm(op, j, n, k); });
    }
    return r;
}

std::vector<LawResult> law_direct_sum(const std::vector<NamedSystem>& systems, const HorizonConfig& cfg) {
    std::vector<LawResult> out;
    const std::vector<SystemCriterion> crits{SystemCriterion::AE, SystemCriterion::UE, SystemCriterion::APE,
                                             SystemCriterion::UPE};
    for (const auto& a : systems) {
        for (const auto& b : systems) {
            LawResult r{"direct_sum", a.name + " (+) " + b.name, true, false, {}};
            SystemSpec sum = direct_sum({a.system, b.system});
            for (auto crit : crits) {
                bool whole = check_system(sum, crit, cfg).certified();
                bool parts = check_system(a.system, crit, cfg).certified() && check_system(b.system, crit, cfg).certified();
                if (whole != parts) {
                    r.pass = false;
                    r.details.push_back(to_string(crit) + ": sum " + (whole ? "certified" : "uncertified") +
                                        ", components " + (parts ? "certified" : "not all certified"));
                }
            }
            // Max-combined seminorm of a vector with both coordinates set.
            std::vector<SparseVector> x{SparseVector::basis(1), SparseVector::basis(1)};
            for (std::int64_t n = 0; n <= 6; ++n) {
                for (int k = 1; k <= cfg.k_max; ++k) {
                    ExactScalar whole = system_orbit_norm(sum, x, n, k);
                    ExactScalar parts = std::max(system_basis_orbit_norm(sum, 0, 1, n, k), system_basis_orbit_norm(sum, 1, 1, n, k));
                    if (whole != parts) {
                        r.pass = false;
                        r.details.push_back("max-combined seminorm mismatch at n = " + std::to_string(n));
                    }
                }
            }
            out.push_back(std::move(r));
        }
    }
    return out;
}

PropsReport run_props(const std::vector<NamedSystem>& battery, const HorizonConfig& cfg) {
    PropsReport rep;
    for (const auto& s : battery) {
        rep.results.push_back(law_rotation(s, cfg));
        rep.results.push_back(law_inversion(s, cfg));
        rep.results.push_back(law_power(s, cfg));
        rep.results.push_back(law_conjugacy(s, cfg));
    }
    auto B = [](std::int64_t num, std::int64_t den) {
        return ShiftOperator(Direction::Backward, WeightSequence::constant(ExactScalar{num, den}), preset("lp_Z:2"));
    };
    std::vector<NamedSystem> trio{{"w2", B(2, 1)}, {"w1/2", B(1, 2)}, {"w1", B(1, 1)}};
    auto sums = law_direct_sum(trio, cfg);
    rep.results.insert(rep.results.end(), sums.begin(), sums.end());
    return rep;
}

}  // namespace shiftlab

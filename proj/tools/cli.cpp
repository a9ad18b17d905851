#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "shiftlab/algebra.hpp"
#include "shiftlab/chaos.hpp"
#include "shiftlab/criteria.hpp"
#include "shiftlab/synthesis.hpp"
#include "shiftlab/version.hpp"

namespace shiftlab::cli {

using nlohmann::json;

namespace {

class CliError : public std::runtime_error {
public:
    CliError(int code_, const std::string& diag, const std::string& msg)
        : std::runtime_error(msg), code(code_), diagnostic(diag) {}
    int code;
    std::string diagnostic;
};

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text, const char* what) {
    auto colon = text.find(':', 1);
    try {
        if (colon == std::string::npos) {
            std::int64_t v = std::stoll(text);
            return {v, v};
        }
        return {std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw CliError(kUsage, "E-USAGE", std::string("malformed ") + what + " range: " + text);
    }
}

std::vector<ExactScalar> parse_grid(const std::string& text) {
    if (text.find(':') != std::string::npos) {
        auto [lo, hi] = parse_range(text, "M_grid");
        return HorizonConfig::dyadic_grid(static_cast<int>(lo), static_cast<int>(hi));
    }
    std::vector<ExactScalar> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(ExactScalar::parse(item));
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError(kUsage, "E-USAGE", "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw CliError(kMalformedJson, "E-JSON", path + ": " + e.what());
    }
}

struct Inputs {
    SpaceSpec space;
    WeightSequence weights;
    std::optional<IndexSet> weights_set;
};

SpaceSpec load_space(const std::string& text) {
    if (std::filesystem::is_regular_file(text)) {
        json spec = read_json_file(text);
        try {
            return SpaceSpec::from_json(spec);
        } catch (const json::exception& e) {
            throw CliError(kMalformedJson, "E-JSON", text + ": " + e.what());
        }
    }
    return preset(text);
}

Inputs load_inputs(const RunConfig& cfg) {
    SpaceSpec space = load_space(cfg.space);
    std::optional<IndexSet> wset;
    std::optional<WeightSequence> weights;
    if (std::filesystem::is_regular_file(cfg.weights)) {
        json spec = read_json_file(cfg.weights);
        try {
            if (spec.contains("index_set")) wset = index_set_from_string(spec.at("index_set").get<std::string>());
            weights = WeightSequence::from_json(spec);
        } catch (const json::exception& e) {
            throw CliError(kMalformedJson, "E-JSON", cfg.weights + ": " + e.what());
        }
    } else {
        weights = WeightSequence::parse(cfg.weights);
    }
    if (wset && *wset != space.index_set()) {
        throw CliError(kIncompatibleIndexSets, "E-INDEX",
                       "weights are indexed by " + to_string(*wset) + " but the space " + space.name() + " by " +
                           to_string(space.index_set()));
    }
    if (auto dom = weights->domain(); dom && space.index_set() == IndexSet::N && dom->hi < 1) {
        throw CliError(kIncompatibleIndexSets, "E-INDEX", "weight domain does not meet N");
    }
    return {space, *weights, wset};
}

ShiftOperator make_operator(const RunConfig& cfg, const Inputs& in) {
    return ShiftOperator(direction_from_string(cfg.side), in.weights, in.space, cfg.step);
}

std::string timestamp_now() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json envelope(const RunConfig& cfg) {
    json resolved{{"command", cfg.command}, {"horizon", cfg.horizon}};
    if (cfg.command == "check" || cfg.command == "orbit" || cfg.command == "density") {
        resolved["space"] = cfg.space;
        resolved["weights"] = cfg.weights;
        resolved["side"] = cfg.side;
        resolved["step"] = cfg.step;
    }
    if (cfg.command == "check") resolved["criterion"] = cfg.criterion;
    if (cfg.command == "orbit") {
        resolved["vector"] = cfg.vector.empty() ? "e:0" : cfg.vector;
        resolved["n"] = {cfg.n_lo, cfg.n_hi};
        resolved["k"] = {cfg.k_lo, cfg.k_hi};
    }
    if (cfg.command == "synthesize" || cfg.command == "props") resolved["blocks"] = cfg.blocks;
    if (cfg.command == "synthesize") {
        resolved["k_cap"] = cfg.k_cap;
        resolved["i_cap"] = cfg.i_cap;
        resolved["t_range"] = cfg.t_range;
    }
    if (cfg.command == "density") {
        resolved["orbit_side"] = cfg.orbit_side;
        resolved["tau"] = cfg.tau;
        resolved["large"] = cfg.large;
        resolved["levels"] = cfg.levels;
    }
    json out{{"version", kVersion}, {"config", resolved}};
    if (cfg.timestamp) out["timestamp"] = timestamp_now();
    return out;
}

std::string format_log2(double v) {
    if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << csv_field(fields[i]);
    }
    out << "\r\n";
}

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

json verdict_json(const Verdict& v) {
    json j = v;
    j.erase("config");  // already in the envelope
    return j;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
    Inputs in = load_inputs(cfg);
    ShiftOperator op = make_operator(cfg, in);
    const HorizonConfig& h = cfg.horizon;
    json reports = json::object();
    std::vector<std::pair<std::string, Verdict>> verdicts;
    const std::string c = cfg.criterion;
    const bool all = c == "all";
    auto want = [&](const char* name) { return all || c == name; };

    if (want("wellposed")) {
        json arr = json::array();
        for (int k = 1; k <= h.k_max; ++k) arr.push_back(check_operator_wellposed(op, k, h));
        reports["wellposed"] = arr;
    }
    if (want("invertible")) {
        json arr = json::array();
        for (int k = 1; k <= h.k_max; ++k) arr.push_back(check_invertible(op, k, h));
        reports["invertible"] = arr;
    }
    if (want("ue")) {
        if (op.bilateral()) verdicts.emplace_back("ue", unif_expansive(op, h));
        else if (!all) throw CliError(kUsage, "E-USAGE", "ue needs a bilateral space; use upe");
    }
    if (want("upe")) verdicts.emplace_back("upe", unif_pos_expansive(op, h));
    if (want("ae")) {
        if (op.bilateral()) verdicts.emplace_back("ae", avg_expansive(op, h));
        else if (!all) throw CliError(kUsage, "E-USAGE", "ae needs a bilateral space; use ape");
    }
    if (want("ape")) verdicts.emplace_back("ape", avg_pos_expansive(op, OrbitSide::Op, h));
    if (want("ape-inverse") && op.bilateral()) verdicts.emplace_back("ape-inverse", avg_pos_expansive(op, OrbitSide::Inverse, h));
    if (want("ediag")) verdicts.emplace_back("ediag", expansive_basis_diagnostic(op, h));
    if (want("mixing")) {
        if (op.bilateral() && op.direction() == Direction::Backward) verdicts.emplace_back("mixing", mixing_check(op, h));
        else if (!all) throw CliError(kUsage, "E-USAGE", "mixing needs a bilateral backward shift");
    }
    if (want("hierarchy")) {
        HierarchyReport hr = hierarchy_audit(op, h);
        json j = hr;
        for (const char* key : {"ue", "ae", "ediag"}) j[key].erase("config");
        reports["hierarchy"] = j;
    }
    if (reports.empty() && verdicts.empty()) throw CliError(kUsage, "E-USAGE", "unknown criterion: " + c);
    for (const auto& [name, v] : verdicts) reports[name] = verdict_json(v);

    if (cfg.format == "csv") {
        write_csv_row(out, {"criterion", "kind", "property", "k", "l", "M", "first_n"});
        for (const auto& [name, v] : verdicts) {
            for (const auto& cr : v.crossings) {
                write_csv_row(out, {name, to_string(v.kind), v.property, v.k ? std::to_string(*v.k) : "",
                                    v.l ? std::to_string(*v.l) : "", cr.threshold.to_string(),
                                    cr.first_n ? std::to_string(*cr.first_n) : ""});
            }
        }
        return kOk;
    }
    json doc = envelope(cfg);
    doc["operator"] = op.to_json();
    doc["reports"] = reports;
    emit_json(out, doc);
    return kOk;
}

int cmd_synthesize(const RunConfig& cfg, std::ostream& out) {
    SearchCaps caps{cfg.k_cap, cfg.i_cap};
    Synthesis syn = build_blocks(cfg.blocks, caps);
    AuditReport audit = verify_inequalities(syn.layout, syn.weights, cfg.blocks);
    HypercyclicityReport hc = hypercyclicity_witness(syn.layout, syn.weights, cfg.blocks, cfg.t_range);
    json doc = envelope(cfg);
    json rep = synthesis_report(syn, audit, hc);
    for (auto it = rep.begin(); it != rep.end(); ++it) doc[it.key()] = it.value();
    doc["index_set"] = "Z";
    emit_json(out, doc);
    return rep["audits"]["passed"].get<bool>() ? kOk : kAuditFailed;
}

int cmd_orbit(const RunConfig& cfg, std::ostream& out) {
    Inputs in = load_inputs(cfg);
    ShiftOperator op = make_operator(cfg, in);
    SparseVector x = SparseVector::parse(cfg.vector.empty() ? "e:0" : cfg.vector);
    const bool exact = cfg.horizon.mode == NumericMode::Exact;
    std::vector<std::vector<Magnitude>> rows;
    for (std::int64_t n = cfg.n_lo; n <= cfg.n_hi; ++n) {
        SparseVector y;
        try {
            y = apply(op, x, n);
        } catch (const NotInvertible& e) {
            throw CliError(kUsage, "E-USAGE", std::string("n = ") + std::to_string(n) + ": " + e.what());
        }
        std::vector<Magnitude> row;
        for (int k = cfg.k_lo; k <= cfg.k_hi; ++k) row.push_back(seminorm(y, k, op.space()));
        rows.push_back(std::move(row));
    }
    if (cfg.format == "csv") {
        std::vector<std::string> header{"n"};
        for (int k = cfg.k_lo; k <= cfg.k_hi; ++k) header.push_back((exact ? "norm_" : "log2_norm_") + std::to_string(k));
        write_csv_row(out, header);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::vector<std::string> fields{std::to_string(cfg.n_lo + static_cast<std::int64_t>(i))};
            for (const auto& m : rows[i]) fields.push_back(exact ? m.to_string() : format_log2(m.log2()));
            write_csv_row(out, fields);
        }
        return kOk;
    }
    json doc = envelope(cfg);
    doc["operator"] = op.to_json();
    json arr = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        json row{{"n", cfg.n_lo + static_cast<std::int64_t>(i)}};
        json norms = json::object();
        for (std::size_t k = 0; k < rows[i].size(); ++k) norms[std::to_string(cfg.k_lo + static_cast<int>(k))] = rows[i][k];
        row["norms"] = norms;
        arr.push_back(row);
    }
    doc["orbit"] = arr;
    emit_json(out, doc);
    return kOk;
}

int cmd_density(const RunConfig& cfg, std::ostream& out) {
    Inputs in = load_inputs(cfg);
    ShiftOperator op = make_operator(cfg, in);
    const OrbitSide side = cfg.orbit_side == "inverse" ? OrbitSide::Inverse : OrbitSide::Op;
    if (side == OrbitSide::Inverse && !op.bilateral()) throw CliError(kUsage, "E-USAGE", "inverse orbit needs a bilateral shift");
    std::int64_t j0 = side == OrbitSide::Op ? -1 : 1;
    if (!cfg.vector.empty()) {
        SparseVector v = SparseVector::parse(cfg.vector);
        if (v.size() != 1) throw CliError(kUsage, "E-USAGE", "density needs a basis vector");
        j0 = v.begin()->first;
    }
    std::int64_t n = cfg.density_n;
    if (n == 0) {
        auto dom = op.weights().domain();
        n = dom ? std::min(-dom->lo, dom->hi - 1) : 1000;
    }
    if (n < 1) throw CliError(kUsage, "E-USAGE", "density horizon must be positive");
    std::vector<ExactScalar> taus, larges;
    for (const auto& t : cfg.tau) taus.push_back(ExactScalar::parse(t));
    for (const auto& k : cfg.large) larges.push_back(ExactScalar::parse(k));
    DistributionalReport rep = distributional_report(op, j0, side, larges, taus, n, cfg.levels, cfg.density_base);
    if (cfg.format == "csv") {
        auto norms = orbit_norm_series(op, j0, side, n);
        CriterionTrace avg = cesaro_trace(op, j0, side, n);
        std::vector<std::string> header{"n", "norm", "running_average"};
        for (const auto& t : taus) header.push_back("ratio_small(" + t.to_string() + ")");
        for (const auto& k : larges) header.push_back("ratio_large(" + k.to_string() + ")");
        write_csv_row(out, header);
        for (std::int64_t m = 1; m <= n; ++m) {
            auto i = static_cast<std::size_t>(m - 1);
            std::vector<std::string> fields{std::to_string(m), norms[i].to_string(),
                                            i < avg.values.size() ? avg.values[i].to_string() : ""};
            for (const auto& e : rep.small) fields.push_back(e.estimate.ratios[i].to_string());
            for (const auto& e : rep.large) fields.push_back(e.estimate.ratios[i].to_string());
            write_csv_row(out, fields);
        }
        return kOk;
    }
    json doc = envelope(cfg);
    doc["operator"] = op.describe();
    doc["report"] = rep;
    emit_json(out, doc);
    return kOk;
}

int cmd_props(const RunConfig& cfg, std::ostream& out) {
    PropsReport rep = run_props(preset_battery(cfg.blocks), cfg.horizon);
    json doc = envelope(cfg);
    doc["props"] = rep;
    emit_json(out, doc);
    return rep.passed() ? kOk : kAuditFailed;
}

// "--n -50:50" would otherwise read the range as an option.
std::vector<std::string> join_negative_values(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        bool takes_value = a == "--n" || a == "--vector" || a == "--k" || a == "--m-grid";
        if (takes_value && i + 1 < argc && argv[i + 1][0] == '-' && argv[i + 1][1] != '-') {
            args.push_back(a + "=" + argv[++i]);
        } else {
            args.push_back(a);
        }
    }
    return args;
}

}  // namespace

std::string csv_field(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& err, int& code) {
    CLI::App app{"shiftlab: finite-horizon dynamics of weighted shifts"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    RunConfig cfg;
    std::string m_grid, n_range, k_range, mode = "log";
    std::int64_t n_max = -1, window = -1;
    int k_max = -1, l_max = -1;
    unsigned threads = 0;
    bool no_timestamp = false, trace = false;

    auto common = [&](CLI::App* sub, bool operator_flags, bool horizon_flags) {
        sub->add_option("--out,-o", cfg.output, "Output file (default stdout)");
        sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_flag("--no-timestamp", no_timestamp, "Omit the timestamp field");
        sub->add_option("--threads", threads, "Worker threads (default SHIFTLAB_THREADS or 1)");
        if (operator_flags) {
            sub->add_option("--space", cfg.space, "Preset name (c0_Z, lp_Z:p, s_Z, halfline_Z, ...) or JSON file");
            sub->add_option("--weights", cfg.weights, "Weight spec (constant:2, geometric:2, two_sided:l,r, expr:...) or JSON file");
            sub->add_option("--side", cfg.side, "backward or forward")->check(CLI::IsMember({"backward", "forward"}));
            sub->add_option("--step", cfg.step, "Shift step")->check(CLI::PositiveNumber);
        }
        if (horizon_flags) {
            sub->add_option("--n-max", n_max, "Horizon N_max")->check(CLI::PositiveNumber);
            sub->add_option("--window", window, "Window half-width W")->check(CLI::PositiveNumber);
            sub->add_option("--m-grid", m_grid, "Thresholds: 'lo:hi' powers of two or a comma list");
            sub->add_option("--k-max", k_max, "Largest seminorm level")->check(CLI::PositiveNumber);
            sub->add_option("--l-max", l_max, "Largest comparison level")->check(CLI::PositiveNumber);
            sub->add_option("--mode", mode, "log or exact")->check(CLI::IsMember({"log", "exact"}));
            sub->add_flag("--trace", trace, "Record per-n traces");
        }
    };

    CLI::App* check = app.add_subcommand("check", "Run expansivity criteria on one shift");
    common(check, true, true);
    check->add_option("--criterion", cfg.criterion, "ue, upe, ae, ape, ape-inverse, ediag, mixing, wellposed, invertible, hierarchy, all");

    CLI::App* synth = app.add_subcommand("synthesize", "Build and audit the block weight sequence");
    common(synth, false, false);
    synth->add_option("--blocks", cfg.blocks, "Number of blocks")->check(CLI::PositiveNumber);
    synth->add_option("--k-cap", cfg.k_cap, "Search cap for k_j")->check(CLI::PositiveNumber);
    synth->add_option("--i-cap", cfg.i_cap, "Search cap for i_j")->check(CLI::PositiveNumber);
    synth->add_option("--t-range", cfg.t_range, "Shifted products for |t| <= t_range")->check(CLI::NonNegativeNumber);

    CLI::App* orbit = app.add_subcommand("orbit", "Seminorms of T^n x over a range of n");
    common(orbit, true, false);
    orbit->add_option("--mode", mode, "log or exact")->check(CLI::IsMember({"log", "exact"}));
    orbit->add_option("--vector", cfg.vector, "Sparse vector: e:j or j=c,...");
    orbit->add_option("--n", n_range, "Range lo:hi of powers");
    orbit->add_option("--k", k_range, "Range lo:hi of levels");

    CLI::App* density = app.add_subcommand("density", "Upper densities of small- and large-norm sets");
    common(density, true, false);
    density->add_option("--orbit", cfg.orbit_side, "op or inverse")->check(CLI::IsMember({"op", "inverse"}));
    density->add_option("--vector", cfg.vector, "Basis vector (default e:-1 for op, e:1 for inverse)");
    density->add_option("--n", cfg.density_n, "Horizon N (default: the block table length)");
    density->add_option("--base", cfg.density_base, "Density base N0 (default N/10)");
    density->add_option("--tau", cfg.tau, "Small-norm thresholds")->delimiter(',');
    density->add_option("--large", cfg.large, "Large-norm thresholds K")->delimiter(',');
    density->add_option("--levels", cfg.levels, "Irregularity levels j")->delimiter(',');

    CLI::App* props = app.add_subcommand("props", "Metamorphic law suite over the preset battery");
    common(props, false, true);
    props->add_option("--blocks", cfg.blocks, "Blocks of the synthesized preset (0 to omit)")->check(CLI::NonNegativeNumber);

    std::vector<std::string> args = join_negative_values(argc, argv);
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        code = app.exit(e, std::cout, err) == 0 ? kOk : kUsage;
        return std::nullopt;
    }

    CLI::App* chosen = app.get_subcommands().front();
    cfg.command = chosen->get_name();
    if (cfg.command == "props") {
        cfg.horizon = props_config();
        if (chosen->get_option("--blocks")->count() == 0) cfg.blocks = 3;
    }
    if (cfg.command == "density") cfg.horizon.mode = NumericMode::Exact;
    try {
        if (n_max > 0) cfg.horizon.n_max = n_max;
        if (window > 0) cfg.horizon.window = window;
        if (!m_grid.empty()) cfg.horizon.m_grid = parse_grid(m_grid);
        if (k_max > 0) {
            cfg.horizon.k_max = k_max;
            if (l_max <= 0) cfg.horizon.l_max = std::max(cfg.horizon.l_max, k_max + 5);
        }
        if (l_max > 0) cfg.horizon.l_max = l_max;
        if (auto* opt = chosen->get_option_no_throw("--mode"); opt && opt->count() > 0) cfg.horizon.mode = numeric_mode_from_string(mode);
        cfg.horizon.threads = threads > 0 ? threads : HorizonConfig::threads_from_env();
        cfg.horizon.record_trace = trace;
        cfg.timestamp = !no_timestamp;
        if (!n_range.empty()) std::tie(cfg.n_lo, cfg.n_hi) = parse_range(n_range, "n");
        if (!k_range.empty()) {
            auto [lo, hi] = parse_range(k_range, "k");
            cfg.k_lo = static_cast<int>(lo);
            cfg.k_hi = static_cast<int>(hi);
        }
        if (cfg.n_lo > cfg.n_hi || cfg.k_lo < 1 || cfg.k_lo > cfg.k_hi) {
            throw CliError(kUsage, "E-USAGE", "ranges must satisfy lo <= hi and k >= 1");
        }
        cfg.horizon.validate();
    } catch (const CliError& e) {
        err << "error [" << e.diagnostic << "]: " << e.what() << '\n';
        code = e.code;
        return std::nullopt;
    } catch (const std::exception& e) {
        err << "error [E-USAGE]: " << e.what() << '\n';
        code = kUsage;
        return std::nullopt;
    }
    code = kOk;
    return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::ostringstream buffer;
    int code = kOk;
    try {
        if (cfg.command == "check") code = cmd_check(cfg, buffer);
        else if (cfg.command == "synthesize") code = cmd_synthesize(cfg, buffer);
        else if (cfg.command == "orbit") code = cmd_orbit(cfg, buffer);
        else if (cfg.command == "density") code = cmd_density(cfg, buffer);
        else if (cfg.command == "props") code = cmd_props(cfg, buffer);
        else throw CliError(kUsage, "E-USAGE", "unknown command: " + cfg.command);
    } catch (const CliError& e) {
        err << "error [" << e.diagnostic << "]: " << e.what() << '\n';
        return e.code;
    } catch (const SearchCapExceeded& e) {
        err << "error [E-CAP]: " << e.what() << '\n';
        return kSearchCap;
    } catch (const json::exception& e) {
        err << "error [E-JSON]: " << e.what() << '\n';
        return kMalformedJson;
    } catch (const std::exception& e) {
        err << "error [E-USAGE]: " << e.what() << '\n';
        return kUsage;
    }
    if (cfg.output.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(cfg.output, std::ios::binary);
        if (!file) {
            err << "error [E-USAGE]: cannot write " << cfg.output << '\n';
            return kUsage;
        }
        file << buffer.str();
    }
    return code;
}

}  // namespace shiftlab::cli

#include "shiftlab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "expression.hpp"

namespace shiftlab {

using nlohmann::json;

std::string to_string(IndexSet set) { return set == IndexSet::N ? "N" : "Z"; }

IndexSet index_set_from_string(std::string_view text) {
    if (text == "N") return IndexSet::N;
    if (text == "Z") return IndexSet::Z;
    throw std::invalid_argument("unknown index set: " + std::string(text));
}

std::optional<std::int64_t> first_index(IndexSet set) {
    if (set == IndexSet::N) return 1;
    return std::nullopt;
}

namespace {

std::int64_t abs64(std::int64_t j) { return j < 0 ? -j : j; }

class ConstantSource final : public MatrixSource {
public:
    ConstantSource(IndexSet set, ExactScalar value) : set_(set), value_(std::move(value)) {
        if (value_.sign() <= 0) throw std::invalid_argument("constant Köthe matrix needs a positive value");
        log_ = to_log(value_);
    }
    IndexSet index_set() const override { return set_; }
    ExactScalar entry(std::int64_t, int) const override { return value_; }
    LogMagnitude log_entry(std::int64_t, int) const override { return log_; }
    std::optional<MonomialTail> tail(Side side, int) const override {
        if (set_ == IndexSet::N && side == Side::Left) return std::nullopt;
        return MonomialTail{value_, 0, side == Side::Right ? (set_ == IndexSet::N ? 1 : 0) : 0};
    }
    json to_json() const override { return {{"family", "constant"}, {"params", {{"value", value_}}}}; }
    std::string describe() const override { return "a = " + value_.to_string(); }

private:
    IndexSet set_;
    ExactScalar value_;
    LogMagnitude log_;
};

class PowerSource final : public MatrixSource {
public:
    PowerSource(IndexSet set, int scale) : set_(set), scale_(scale) {
        if (scale < 0) throw std::invalid_argument("power Köthe matrix needs a nonnegative scale");
    }
    IndexSet index_set() const override { return set_; }
    ExactScalar entry(std::int64_t j, int k) const override {
        return ExactScalar{abs64(j) + 1}.pow(static_cast<std::int64_t>(scale_) * k);
    }
    LogMagnitude log_entry(std::int64_t j, int k) const override {
        LogMagnitude base = to_log(ExactScalar{abs64(j) + 1});
        return LogMagnitude::from_log2(base.log2() * scale_ * k, base.is_exact());
    }
    std::optional<MonomialTail> tail(Side side, int k) const override {
        if (set_ == IndexSet::N && side == Side::Left) return std::nullopt;
        return MonomialTail{ExactScalar{1}, scale_ * k, side == Side::Right ? (set_ == IndexSet::N ? 1 : 0) : 0};
    }
    json to_json() const override { return {{"family", "power"}, {"params", {{"scale", scale_}}}}; }
    std::string describe() const override {
        return scale_ == 1 ? "a = (|j|+1)^k" : "a = (|j|+1)^(" + std::to_string(scale_) + "k)";
    }

private:
    IndexSet set_;
    int scale_;
};

class HalflineSource final : public MatrixSource {
public:
    IndexSet index_set() const override { return IndexSet::Z; }
    ExactScalar entry(std::int64_t j, int k) const override { return ExactScalar{j > -k ? 1 : 0}; }
    LogMagnitude log_entry(std::int64_t j, int k) const override {
        return j > -k ? LogMagnitude::from_log2(0.0, true) : LogMagnitude::zero();
    }
    std::optional<MonomialTail> tail(Side side, int k) const override {
        if (side == Side::Right) return MonomialTail{ExactScalar{1}, 0, -k + 1};
        return MonomialTail{ExactScalar{0}, 0, -k};
    }
    json to_json() const override { return {{"family", "halfline"}, {"params", json::object()}}; }
    std::string describe() const override { return "a = [j > -k]"; }
};

class TableSource final : public MatrixSource {
public:
    TableSource(IndexSet set, std::int64_t lo, std::vector<std::vector<ExactScalar>> rows, bool cont)
        : set_(set), lo_(lo), rows_(std::move(rows)), cont_(cont) {
        if (rows_.empty()) throw std::invalid_argument("table Köthe matrix needs at least one row");
        std::size_t width = rows_.front().size();
        if (width == 0) throw std::invalid_argument("table Köthe matrix rows need at least one level");
        for (const auto& row : rows_) {
            if (row.size() != width) throw std::invalid_argument("table Köthe matrix rows differ in width");
            for (const auto& v : row) {
                if (v.sign() < 0) throw std::invalid_argument("table Köthe matrix has a negative entry");
            }
        }
        if (set_ == IndexSet::N && lo_ < 1) throw std::invalid_argument("table on N must start at index >= 1");
    }
    IndexSet index_set() const override { return set_; }
    ExactScalar entry(std::int64_t j, int k) const override {
        std::int64_t hi = lo_ + static_cast<std::int64_t>(rows_.size()) - 1;
        if (j < lo_ || j > hi) {
            if (!cont_) throw std::out_of_range("table Köthe matrix undefined at j = " + std::to_string(j));
            j = std::clamp(j, lo_, hi);
        }
        const auto& row = rows_[static_cast<std::size_t>(j - lo_)];
        return row[std::min<std::size_t>(static_cast<std::size_t>(k), row.size()) - 1];
    }
    std::optional<MonomialTail> tail(Side side, int k) const override {
        if (!cont_) return std::nullopt;
        if (set_ == IndexSet::N && side == Side::Left) return std::nullopt;
        std::int64_t hi = lo_ + static_cast<std::int64_t>(rows_.size()) - 1;
        std::int64_t edge = side == Side::Right ? hi : lo_;
        return MonomialTail{entry(edge, k), 0, edge};
    }
    json to_json() const override {
        return {{"family", "table"},
                {"params", {{"lo", lo_}, {"rows", rows_}, {"tail", cont_ ? "constant" : "error"}}}};
    }
    std::string describe() const override {
        return "tabulated a on [" + std::to_string(lo_) + ", " +
               std::to_string(lo_ + static_cast<std::int64_t>(rows_.size()) - 1) + "]";
    }

private:
    IndexSet set_;
    std::int64_t lo_;
    std::vector<std::vector<ExactScalar>> rows_;
    bool cont_;
};

class ExpressionSource final : public MatrixSource {
public:
    ExpressionSource(IndexSet set, const std::string& text) : set_(set), expr_(text, {"j", "k"}) {}
    IndexSet index_set() const override { return set_; }
    ExactScalar entry(std::int64_t j, int k) const override {
        ExactScalar v = expr_.evaluate({j, k});
        if (v.sign() < 0) {
            throw std::domain_error("matrix expression negative at j = " + std::to_string(j) + ", k = " + std::to_string(k));
        }
        return v;
    }
    std::optional<MonomialTail> tail(Side, int) const override { return std::nullopt; }
    json to_json() const override { return {{"family", "expr"}, {"params", {{"expr", expr_.text()}}}}; }
    std::string describe() const override { return "a = " + expr_.text(); }

private:
    IndexSet set_;
    detail::Expression expr_;
};

class ScaledSource final : public MatrixSource {
public:
    ScaledSource(KotheMatrix base, std::function<ExactScalar(std::int64_t)> diag, std::string label, json diag_json)
        : base_(std::move(base)), diag_(std::move(diag)), label_(std::move(label)), diag_json_(std::move(diag_json)) {}
    IndexSet index_set() const override { return base_.index_set(); }
    ExactScalar entry(std::int64_t j, int k) const override { return diag_(j).abs() * base_.entry(j, k); }
    std::optional<MonomialTail> tail(Side, int) const override { return std::nullopt; }
    json to_json() const override {
        return {{"family", "scaled"}, {"params", {{"base", base_.to_json()}, {"diag", diag_json_}}}};
    }
    std::string describe() const override { return "|" + label_ + "_j| * (" + base_.describe() + ")"; }

private:
    KotheMatrix base_;
    std::function<ExactScalar(std::int64_t)> diag_;
    std::string label_;
    json diag_json_;
};

ExactScalar scalar_param(const json& params, const char* key, const ExactScalar& fallback) {
    if (!params.contains(key)) return fallback;
    return params.at(key).get<ExactScalar>();
}

struct PresetName {
    std::string base;
    std::optional<double> param;
};

PresetName split_preset(std::string_view name) {
    PresetName out;
    auto colon = name.find(':');
    auto paren = name.find('(');
    if (colon != std::string_view::npos) {
        out.base = std::string(name.substr(0, colon));
        out.param = std::stod(std::string(name.substr(colon + 1)));
    } else if (paren != std::string_view::npos) {
        if (name.back() != ')') throw std::invalid_argument("malformed preset name: " + std::string(name));
        out.base = std::string(name.substr(0, paren));
        out.param = std::stod(std::string(name.substr(paren + 1, name.size() - paren - 2)));
    } else {
        out.base = std::string(name);
    }
    return out;
}

std::string format_p(double p) {
    std::ostringstream os;
    os << p;
    return os.str();
}

}  // namespace

KotheMatrix::KotheMatrix(std::shared_ptr<const MatrixSource> source) : source_(std::move(source)) {
    if (!source_) throw std::invalid_argument("KotheMatrix: null source");
}

KotheMatrix KotheMatrix::constant(IndexSet set, ExactScalar value) {
    return KotheMatrix(std::make_shared<ConstantSource>(set, std::move(value)));
}

KotheMatrix KotheMatrix::power(IndexSet set, int scale) {
    return KotheMatrix(std::make_shared<PowerSource>(set, scale));
}

KotheMatrix KotheMatrix::halfline() { return KotheMatrix(std::make_shared<HalflineSource>()); }

KotheMatrix KotheMatrix::table(IndexSet set, std::int64_t lo, std::vector<std::vector<ExactScalar>> rows,
                               bool constant_continuation) {
    return KotheMatrix(std::make_shared<TableSource>(set, lo, std::move(rows), constant_continuation));
}

KotheMatrix KotheMatrix::expression(IndexSet set, const std::string& text) {
    return KotheMatrix(std::make_shared<ExpressionSource>(set, text));
}

KotheMatrix KotheMatrix::row_scaled(std::function<ExactScalar(std::int64_t)> diag, std::string label,
                                    json diag_json) const {
    return KotheMatrix(std::make_shared<ScaledSource>(*this, std::move(diag), std::move(label), std::move(diag_json)));
}

bool KotheMatrix::contains(std::int64_t j) const {
    auto first = first_index(index_set());
    return !first || j >= *first;
}

ExactScalar KotheMatrix::entry(std::int64_t j, int k) const {
    if (k < 1) throw std::invalid_argument("seminorm level must be >= 1");
    if (!contains(j)) throw std::out_of_range("index " + std::to_string(j) + " outside the index set");
    return source_->entry(j, k);
}

LogMagnitude KotheMatrix::log_entry(std::int64_t j, int k) const {
    if (k < 1) throw std::invalid_argument("seminorm level must be >= 1");
    if (!contains(j)) throw std::out_of_range("index " + std::to_string(j) + " outside the index set");
    return source_->log_entry(j, k);
}

KotheMatrix KotheMatrix::from_json(const json& spec, IndexSet set) {
    const std::string family = spec.at("family").get<std::string>();
    const json params = spec.value("params", json::object());
    if (family == "constant") return constant(set, scalar_param(params, "value", ExactScalar{1}));
    if (family == "power" || family == "polynomial") return power(set, params.value("scale", 1));
    if (family == "halfline" || family == "step") {
        if (set != IndexSet::Z) throw std::invalid_argument("halfline matrix is bilateral");
        return halfline();
    }
    if (family == "table") {
        std::string tail = params.value("tail", std::string("error"));
        if (tail != "constant" && tail != "error") throw std::invalid_argument("table tail rule must be constant or error");
        return table(set, params.at("lo").get<std::int64_t>(),
                     params.at("rows").get<std::vector<std::vector<ExactScalar>>>(), tail == "constant");
    }
    if (family == "expr" || family == "expression") return expression(set, params.at("expr").get<std::string>());
    throw std::invalid_argument("unknown Köthe matrix family: " + family);
}

std::vector<MatrixViolation> validate_matrix(const KotheMatrix& a, IndexInterval window, int k_max) {
    std::vector<MatrixViolation> out;
    for (std::int64_t j = window.lo; j <= window.hi; ++j) {
        if (!a.contains(j)) continue;
        ExactScalar prev = a.entry(j, 1);
        if (prev.sign() < 0) out.push_back({j, 1, "negative entry"});
        for (int k = 2; k <= k_max; ++k) {
            ExactScalar cur = a.entry(j, k);
            if (cur < prev) out.push_back({j, k, "entry decreases in k"});
            prev = cur;
        }
    }
    return out;
}

SpaceSpec::SpaceSpec(KotheMatrix matrix, double p, std::string name)
    : matrix_(std::move(matrix)), p_(p), name_(std::move(name)) {
    if (!(p_ == 0.0 || p_ >= 1.0) || !std::isfinite(p_)) {
        throw std::invalid_argument("exponent p must be 0 or in [1, inf)");
    }
}

json SpaceSpec::to_json() const {
    json out = matrix_.to_json();
    out["p"] = p_;
    out["index_set"] = shiftlab::to_string(index_set());
    out["name"] = name_;
    return out;
}

SpaceSpec SpaceSpec::from_json(const json& spec) {
    if (!spec.is_object()) throw std::invalid_argument("space spec must be a JSON object");
    const std::string family = spec.at("family").get<std::string>();
    auto names = preset_names();
    if (std::find(names.begin(), names.end(), split_preset(family).base) != names.end()) {
        SpaceSpec base = preset(family);
        if (spec.contains("p")) return SpaceSpec(base.matrix(), spec.at("p").get<double>(), base.name());
        return base;
    }
    IndexSet set = index_set_from_string(spec.value("index_set", std::string("Z")));
    double p = spec.value("p", 1.0);
    return SpaceSpec(KotheMatrix::from_json(spec, set), p, spec.value("name", family));
}

SparseVector SparseVector::basis(std::int64_t j) {
    SparseVector v;
    v.set(j, ExactScalar{1});
    return v;
}

void SparseVector::set(std::int64_t j, const ExactScalar& value) {
    if (value.is_zero()) coeffs_.erase(j);
    else coeffs_[j] = value;
}

ExactScalar SparseVector::get(std::int64_t j) const {
    auto it = coeffs_.find(j);
    return it == coeffs_.end() ? ExactScalar{0} : it->second;
}

SparseVector SparseVector::parse(std::string_view text) {
    SparseVector v;
    if (text.starts_with("e:") || text.starts_with("e_")) {
        v.set(std::stoll(std::string(text.substr(2))), ExactScalar{1});
        return v;
    }
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string_view item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        auto eq = item.find('=');
        if (eq == std::string_view::npos) throw std::invalid_argument("vector entry needs 'index=value': " + std::string(item));
        std::int64_t j = std::stoll(std::string(item.substr(0, eq)));
        if (v.coeffs_.count(j)) throw std::invalid_argument("duplicate vector index " + std::to_string(j));
        v.set(j, ExactScalar::parse(item.substr(eq + 1)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (v.empty()) throw std::invalid_argument("vector spec has no nonzero entries");
    return v;
}

std::string SparseVector::to_string() const {
    std::string out;
    for (const auto& [j, c] : coeffs_) {
        if (!out.empty()) out += ",";
        out += std::to_string(j) + "=" + c.to_string();
    }
    return out;
}

namespace {

// Exact p-th root of a nonnegative rational, if it is rational.
std::optional<ExactScalar> exact_root(const ExactScalar& x, unsigned long p) {
    mpz_class num = x.raw().get_num();
    mpz_class den = x.raw().get_den();
    mpz_class rn, rd;
    if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), p) == 0) return std::nullopt;
    if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), p) == 0) return std::nullopt;
    return ExactScalar(mpq_class(rn, rd));
}

}  // namespace

Magnitude seminorm(const SparseVector& x, int k, const SpaceSpec& space) {
    if (k < 1) throw std::invalid_argument("seminorm level must be >= 1");
    std::vector<ExactScalar> terms;
    terms.reserve(x.size());
    for (const auto& [j, c] : x) {
        ExactScalar t = space.matrix().entry(j, k) * c.abs();
        if (!t.is_zero()) terms.push_back(std::move(t));
    }
    if (terms.empty()) return Magnitude{ExactScalar{0}};
    if (space.sup_type()) return Magnitude{*std::max_element(terms.begin(), terms.end())};
    if (terms.size() == 1) return Magnitude{terms.front()};
    const double p = space.p();
    if (p == 1.0) {
        ExactScalar s{0};
        for (const auto& t : terms) s += t;
        return Magnitude{s};
    }
    if (p == std::floor(p) && p <= 64) {
        auto ip = static_cast<std::int64_t>(p);
        ExactScalar s{0};
        for (const auto& t : terms) s += t.pow(ip);
        if (auto r = exact_root(s, static_cast<unsigned long>(ip))) return Magnitude{*r};
        return Magnitude{LogMagnitude::from_log2(to_log(s).log2() / p)};
    }
    std::vector<LogMagnitude> logs;
    logs.reserve(terms.size());
    for (const auto& t : terms) logs.push_back(LogMagnitude::from_log2(to_log(t).log2() * p));
    return Magnitude{LogMagnitude::from_log2(compensated_sum(logs).log2() / p)};
}

std::vector<std::int64_t> index_support(const SpaceSpec& space, int k, IndexInterval window) {
    std::vector<std::int64_t> out;
    for (std::int64_t j = window.lo; j <= window.hi; ++j) {
        if (space.matrix().contains(j) && !space.matrix().entry(j, k).is_zero()) out.push_back(j);
    }
    return out;
}

std::vector<std::string> preset_names() { return {"c0_Z", "lp_Z", "c0_N", "lp_N", "s_Z", "halfline_Z"}; }

SpaceSpec preset(std::string_view name) {
    PresetName parsed = split_preset(name);
    const std::string& base = parsed.base;
    auto need_p = [&]() {
        if (!parsed.param) throw std::invalid_argument("preset " + base + " needs an exponent, e.g. " + base + "(2)");
        if (*parsed.param < 1.0) throw std::invalid_argument("preset " + base + " needs p >= 1");
        return *parsed.param;
    };
    auto no_param = [&]() {
        if (parsed.param) throw std::invalid_argument("preset " + base + " takes no parameter");
    };
    if (base == "c0_Z") {
        no_param();
        return SpaceSpec(KotheMatrix::constant(IndexSet::Z), 0.0, "c0_Z");
    }
    if (base == "c0_N") {
        no_param();
        return SpaceSpec(KotheMatrix::constant(IndexSet::N), 0.0, "c0_N");
    }
    if (base == "lp_Z") {
        double p = need_p();
        return SpaceSpec(KotheMatrix::constant(IndexSet::Z), p, "lp_Z(" + format_p(p) + ")");
    }
    if (base == "lp_N") {
        double p = need_p();
        return SpaceSpec(KotheMatrix::constant(IndexSet::N), p, "lp_N(" + format_p(p) + ")");
    }
    if (base == "s_Z") {
        no_param();
        return SpaceSpec(KotheMatrix::power(IndexSet::Z, 1), 1.0, "s_Z");
    }
    if (base == "halfline_Z") {
        double p = parsed.param.value_or(1.0);
        if (p != 0.0 && p < 1.0) throw std::invalid_argument("halfline_Z needs p = 0 or p >= 1");
        return SpaceSpec(KotheMatrix::halfline(), p, parsed.param ? "halfline_Z(" + format_p(p) + ")" : "halfline_Z");
    }
    throw std::invalid_argument("unknown space preset: " + std::string(name));
}

}  // namespace shiftlab

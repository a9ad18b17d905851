#include "shiftlab/weights.hpp"

#include <algorithm>
#include <cmath>

#include "expression.hpp"

namespace shiftlab {

using nlohmann::json;

Diagonal::Diagonal(std::function<ExactScalar(std::int64_t)> fn, std::string label, json spec)
    : fn_(std::move(fn)), label_(std::move(label)), spec_(std::move(spec)) {}

Diagonal Diagonal::constant(const ExactScalar& c) {
    if (c.is_zero()) throw std::invalid_argument("diagonal entries must be nonzero");
    return Diagonal([c](std::int64_t) { return c; }, "d", {{"family", "constant"}, {"value", c}});
}

Diagonal Diagonal::table(std::int64_t lo, std::vector<ExactScalar> values, const ExactScalar& fill) {
    if (fill.is_zero()) throw std::invalid_argument("diagonal entries must be nonzero");
    for (const auto& v : values) {
        if (v.is_zero()) throw std::invalid_argument("diagonal entries must be nonzero");
    }
    json spec{{"family", "table"}, {"lo", lo}, {"values", values}, {"fill", fill}};
    auto shared = std::make_shared<std::vector<ExactScalar>>(std::move(values));
    return Diagonal(
        [lo, shared, fill](std::int64_t j) {
            std::int64_t i = j - lo;
            if (i >= 0 && i < static_cast<std::int64_t>(shared->size())) return (*shared)[static_cast<std::size_t>(i)];
            return fill;
        },
        "d", std::move(spec));
}

namespace {

ExactScalar nonzero_magnitude(const ExactScalar& v, const char* what) {
    if (v.is_zero()) throw std::invalid_argument(std::string(what) + ": weights must be nonzero");
    return v.abs();
}

class ConstantWeights final : public WeightSource {
public:
    explicit ConstantWeights(const ExactScalar& c) : c_(nonzero_magnitude(c, "constant")), log_(to_log(c_)) {}
    ExactScalar value(std::int64_t) const override { return c_; }
    LogMagnitude log_value(std::int64_t) const override { return log_; }
    std::optional<ConstantTail> tail(Side side) const override {
        return ConstantTail{c_, side == Side::Right ? kEverywhereRight : kEverywhereLeft};
    }
    json to_json() const override { return {{"family", "constant"}, {"params", {{"value", c_}}}}; }
    std::string describe() const override { return "w = " + c_.to_string(); }

private:
    ExactScalar c_;
    LogMagnitude log_;
};

class GeometricWeights final : public WeightSource {
public:
    GeometricWeights(const ExactScalar& ratio, const ExactScalar& scale)
        : ratio_(nonzero_magnitude(ratio, "geometric")), scale_(nonzero_magnitude(scale, "geometric")) {}
    ExactScalar value(std::int64_t j) const override { return scale_ * ratio_.pow(j < 0 ? -j : j); }
    LogMagnitude log_value(std::int64_t j) const override {
        LogMagnitude r = to_log(ratio_);
        LogMagnitude s = to_log(scale_);
        double n = static_cast<double>(j < 0 ? -j : j);
        return LogMagnitude::from_log2(s.log2() + n * r.log2(), r.is_exact() && s.is_exact());
    }
    std::optional<ConstantTail> tail(Side side) const override {
        if (ratio_ != ExactScalar{1}) return std::nullopt;
        return ConstantTail{scale_, side == Side::Right ? kEverywhereRight : kEverywhereLeft};
    }
    json to_json() const override {
        return {{"family", "geometric"}, {"params", {{"ratio", ratio_}, {"scale", scale_}}}};
    }
    std::string describe() const override {
        return "w = " + (scale_ == ExactScalar{1} ? std::string() : scale_.to_string() + "*") + ratio_.to_string() + "^|j|";
    }

private:
    ExactScalar ratio_;
    ExactScalar scale_;
};

class TwoSidedWeights final : public WeightSource {
public:
    TwoSidedWeights(const ExactScalar& left, const ExactScalar& right, std::int64_t split)
        : left_(nonzero_magnitude(left, "two_sided")), right_(nonzero_magnitude(right, "two_sided")), split_(split) {}
    ExactScalar value(std::int64_t j) const override { return j <= split_ ? left_ : right_; }
    std::optional<ConstantTail> tail(Side side) const override {
        if (side == Side::Right) return ConstantTail{right_, split_ + 1};
        return ConstantTail{left_, split_};
    }
    json to_json() const override {
        return {{"family", "two_sided"}, {"params", {{"left", left_}, {"right", right_}, {"split", split_}}}};
    }
    std::string describe() const override {
        return "w = " + left_.to_string() + " (j <= " + std::to_string(split_) + "), " + right_.to_string() + " (j > " +
               std::to_string(split_) + ")";
    }

private:
    ExactScalar left_;
    ExactScalar right_;
    std::int64_t split_;
};

class TableWeights final : public WeightSource {
public:
    TableWeights(std::int64_t lo, std::vector<ExactScalar> values, bool cont, std::string family)
        : lo_(lo), values_(std::move(values)), cont_(cont), family_(std::move(family)) {
        if (values_.empty()) throw std::invalid_argument(family_ + ": empty weight table");
        for (auto& v : values_) v = nonzero_magnitude(v, family_.c_str());
        logs_.reserve(values_.size());
        for (const auto& v : values_) logs_.push_back(to_log(v));
    }
    std::int64_t hi() const { return lo_ + static_cast<std::int64_t>(values_.size()) - 1; }
    std::size_t slot(std::int64_t j) const {
        if (j < lo_ || j > hi()) {
            if (!cont_) throw WeightUndefined(j);
            j = std::clamp(j, lo_, hi());
        }
        return static_cast<std::size_t>(j - lo_);
    }
    ExactScalar value(std::int64_t j) const override { return values_[slot(j)]; }
    LogMagnitude log_value(std::int64_t j) const override { return logs_[slot(j)]; }
    std::optional<IndexInterval> domain() const override {
        if (cont_) return std::nullopt;
        return IndexInterval{lo_, hi()};
    }
    std::optional<ConstantTail> tail(Side side) const override {
        if (!cont_) return std::nullopt;
        if (side == Side::Right) return ConstantTail{values_.back(), hi()};
        return ConstantTail{values_.front(), lo_};
    }
    json to_json() const override {
        json params{{"lo", lo_}, {"values", values_}};
        if (family_ == "table") params["tail"] = cont_ ? "constant" : "error";
        return {{"family", family_}, {"params", params}};
    }
    std::string describe() const override {
        return family_ + " weights on [" + std::to_string(lo_) + ", " + std::to_string(hi()) + "]";
    }

private:
    std::int64_t lo_;
    std::vector<ExactScalar> values_;
    std::vector<LogMagnitude> logs_;
    bool cont_;
    std::string family_;
};

class ExpressionWeights final : public WeightSource {
public:
    explicit ExpressionWeights(const std::string& text) : expr_(text, {"j"}) {}
    ExactScalar value(std::int64_t j) const override {
        ExactScalar v = expr_.evaluate({j});
        if (v.is_zero()) throw std::domain_error("weight expression vanishes at j = " + std::to_string(j));
        return v.abs();
    }
    std::optional<ConstantTail> tail(Side) const override { return std::nullopt; }
    json to_json() const override { return {{"family", "expr"}, {"params", {{"expr", expr_.text()}}}}; }
    std::string describe() const override { return "w = " + expr_.text(); }

private:
    detail::Expression expr_;
};

std::int64_t shift_threshold(std::int64_t from, std::int64_t by) {
    if (from <= kEverywhereRight || from >= kEverywhereLeft) return from;
    return from + by;
}

class ReciprocalShifted final : public WeightSource {
public:
    ReciprocalShifted(WeightSequence base, std::int64_t offset) : base_(std::move(base)), offset_(offset) {}
    ExactScalar value(std::int64_t j) const override {
        if (!base_.defined(j + offset_)) throw WeightUndefined(j);
        return base_.value(j + offset_).reciprocal();
    }
    LogMagnitude log_value(std::int64_t j) const override {
        if (!base_.defined(j + offset_)) throw WeightUndefined(j);
        LogMagnitude v = base_.log_value(j + offset_);
        return LogMagnitude::from_log2(-v.log2(), v.is_exact());
    }
    std::optional<IndexInterval> domain() const override {
        auto d = base_.domain();
        if (!d) return std::nullopt;
        return IndexInterval{d->lo - offset_, d->hi - offset_};
    }
    std::optional<ConstantTail> tail(Side side) const override {
        auto t = base_.tail(side);
        if (!t) return std::nullopt;
        return ConstantTail{t->value.reciprocal(), shift_threshold(t->from, -offset_)};
    }
    json to_json() const override {
        return {{"family", "reciprocal_shifted"}, {"params", {{"base", base_.to_json()}, {"offset", offset_}}}};
    }
    std::string describe() const override {
        return "1 / w_(j" + (offset_ >= 0 ? "+" + std::to_string(offset_) : std::to_string(offset_)) + ") of [" +
               base_.describe() + "]";
    }

private:
    WeightSequence base_;
    std::int64_t offset_;
};

class GroupedWeights final : public WeightSource {
public:
    GroupedWeights(WeightSequence base, int count, std::int64_t stride)
        : base_(std::move(base)), count_(count), stride_(stride) {
        if (count_ < 1) throw std::invalid_argument("grouped weights need count >= 1");
    }
    std::int64_t span_lo() const { return std::min<std::int64_t>(0, stride_ * (count_ - 1)); }
    std::int64_t span_hi() const { return std::max<std::int64_t>(0, stride_ * (count_ - 1)); }
    ExactScalar value(std::int64_t j) const override {
        ExactScalar p{1};
        for (int i = 0; i < count_; ++i) {
            std::int64_t at = j + stride_ * i;
            if (!base_.defined(at)) throw WeightUndefined(j);
            p *= base_.value(at);
        }
        return p;
    }
    LogMagnitude log_value(std::int64_t j) const override {
        LogMagnitude p = LogMagnitude::from_log2(0.0, true);
        for (int i = 0; i < count_; ++i) {
            std::int64_t at = j + stride_ * i;
            if (!base_.defined(at)) throw WeightUndefined(j);
            p *= base_.log_value(at);
        }
        return p;
    }
    std::optional<IndexInterval> domain() const override {
        auto d = base_.domain();
        if (!d) return std::nullopt;
        return IndexInterval{d->lo - span_lo(), d->hi - span_hi()};
    }
    std::optional<ConstantTail> tail(Side side) const override {
        auto t = base_.tail(side);
        if (!t) return std::nullopt;
        std::int64_t from = side == Side::Right ? shift_threshold(t->from, -span_lo()) : shift_threshold(t->from, -span_hi());
        return ConstantTail{t->value.pow(count_), from};
    }
    json to_json() const override {
        return {{"family", "grouped"},
                {"params", {{"base", base_.to_json()}, {"count", count_}, {"stride", stride_}}}};
    }
    std::string describe() const override {
        return std::to_string(count_) + "-fold products (stride " + std::to_string(stride_) + ") of [" +
               base_.describe() + "]";
    }

private:
    WeightSequence base_;
    int count_;
    std::int64_t stride_;
};

class RescaledWeights final : public WeightSource {
public:
    RescaledWeights(WeightSequence base, Diagonal d, std::int64_t offset)
        : base_(std::move(base)), d_(std::move(d)), offset_(offset) {}
    ExactScalar value(std::int64_t j) const override {
        ExactScalar num = d_(j).abs();
        ExactScalar den = d_(j + offset_).abs();
        if (num.is_zero() || den.is_zero()) throw std::domain_error("conjugating diagonal vanishes");
        return base_.value(j) * num / den;
    }
    std::optional<IndexInterval> domain() const override { return base_.domain(); }
    std::optional<ConstantTail> tail(Side) const override { return std::nullopt; }
    json to_json() const override {
        return {{"family", "rescaled"},
                {"params", {{"base", base_.to_json()}, {"diag", d_.spec()}, {"offset", offset_}}}};
    }
    std::string describe() const override {
        return "w_j |" + d_.label() + "_j| / |" + d_.label() + "_(j" +
               (offset_ >= 0 ? "+" + std::to_string(offset_) : std::to_string(offset_)) + ")| of [" + base_.describe() + "]";
    }

private:
    WeightSequence base_;
    Diagonal d_;
    std::int64_t offset_;
};

const json& params_of(const json& spec) {
    if (spec.contains("params") && spec.at("params").is_object()) return spec.at("params");
    return spec;
}

ExactScalar scalar_at(const json& params, const char* key, std::optional<ExactScalar> fallback = std::nullopt) {
    if (params.contains(key)) return params.at(key).get<ExactScalar>();
    if (fallback) return *fallback;
    throw std::invalid_argument(std::string("weight spec is missing '") + key + "'");
}

}  // namespace

WeightSequence::WeightSequence(std::shared_ptr<const WeightSource> source) : source_(std::move(source)) {
    if (!source_) throw std::invalid_argument("WeightSequence: null source");
}

WeightSequence WeightSequence::constant(const ExactScalar& c) {
    return WeightSequence(std::make_shared<ConstantWeights>(c));
}

WeightSequence WeightSequence::geometric(const ExactScalar& ratio, const ExactScalar& scale) {
    return WeightSequence(std::make_shared<GeometricWeights>(ratio, scale));
}

WeightSequence WeightSequence::two_sided(const ExactScalar& left, const ExactScalar& right, std::int64_t split) {
    return WeightSequence(std::make_shared<TwoSidedWeights>(left, right, split));
}

WeightSequence WeightSequence::table(std::int64_t lo, std::vector<ExactScalar> values, bool constant_continuation) {
    return WeightSequence(std::make_shared<TableWeights>(lo, std::move(values), constant_continuation, "table"));
}

WeightSequence WeightSequence::blocks(std::int64_t lo, std::vector<ExactScalar> values) {
    return WeightSequence(std::make_shared<TableWeights>(lo, std::move(values), false, "blocks"));
}

WeightSequence WeightSequence::expression(const std::string& text) {
    return WeightSequence(std::make_shared<ExpressionWeights>(text));
}

WeightSequence WeightSequence::reciprocal_shifted(std::int64_t offset) const {
    return WeightSequence(std::make_shared<ReciprocalShifted>(*this, offset));
}

WeightSequence WeightSequence::grouped(int count, std::int64_t stride) const {
    if (count == 1) return *this;
    return WeightSequence(std::make_shared<GroupedWeights>(*this, count, stride));
}

WeightSequence WeightSequence::rescaled(const Diagonal& d, std::int64_t offset) const {
    return WeightSequence(std::make_shared<RescaledWeights>(*this, d, offset));
}

bool WeightSequence::defined(std::int64_t j) const {
    auto d = domain();
    return !d || d->contains(j);
}

WeightSequence WeightSequence::from_json(const json& spec) {
    if (!spec.is_object()) throw std::invalid_argument("weight spec must be a JSON object");
    if (spec.contains("weights") && spec.at("weights").is_object()) return from_json(spec.at("weights"));
    const std::string family = spec.at("family").get<std::string>();
    const json& p = params_of(spec);
    if (family == "constant") return constant(scalar_at(p, "value"));
    if (family == "geometric") return geometric(scalar_at(p, "ratio"), scalar_at(p, "scale", ExactScalar{1}));
    if (family == "two_sided") {
        return two_sided(scalar_at(p, "left"), scalar_at(p, "right"), p.value("split", std::int64_t{0}));
    }
    if (family == "table") {
        std::string tail = p.value("tail", std::string("error"));
        if (tail != "constant" && tail != "error") throw std::invalid_argument("table tail rule must be constant or error");
        return table(p.at("lo").get<std::int64_t>(), p.at("values").get<std::vector<ExactScalar>>(), tail == "constant");
    }
    if (family == "blocks") return blocks(p.at("lo").get<std::int64_t>(), p.at("values").get<std::vector<ExactScalar>>());
    if (family == "expr" || family == "expression") return expression(p.at("expr").get<std::string>());
    if (family == "reciprocal_shifted") {
        return from_json(p.at("base")).reciprocal_shifted(p.at("offset").get<std::int64_t>());
    }
    if (family == "grouped") {
        return from_json(p.at("base")).grouped(p.at("count").get<int>(), p.at("stride").get<std::int64_t>());
    }
    throw std::invalid_argument("unknown weight family: " + family);
}

WeightSequence WeightSequence::parse(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("weight spec needs 'family:params': " + std::string(text));
    std::string_view family = text.substr(0, colon);
    std::string_view arg = text.substr(colon + 1);
    if (family == "constant") return constant(ExactScalar::parse(arg));
    if (family == "geometric") return geometric(ExactScalar::parse(arg));
    if (family == "two_sided") {
        auto comma = arg.find(',');
        if (comma == std::string_view::npos) throw std::invalid_argument("two_sided needs 'left,right[,split]'");
        auto rest = arg.substr(comma + 1);
        auto comma2 = rest.find(',');
        std::int64_t split = 0;
        if (comma2 != std::string_view::npos) split = std::stoll(std::string(rest.substr(comma2 + 1)));
        return two_sided(ExactScalar::parse(arg.substr(0, comma)), ExactScalar::parse(rest.substr(0, comma2)), split);
    }
    if (family == "expr") return expression(std::string(arg));
    throw std::invalid_argument("unknown weight family: " + std::string(family));
}

ExactScalar weight_product(const WeightSequence& w, IndexInterval range) {
    ExactScalar p{1};
    for (std::int64_t j = range.lo; j <= range.hi; ++j) {
        if (!w.defined(j)) throw WeightUndefined(j);
        p *= w.value(j);
    }
    return p;
}

LogMagnitude weight_product_log(const WeightSequence& w, IndexInterval range) {
    std::vector<double> logs;
    bool exact = true;
    for (std::int64_t j = range.lo; j <= range.hi; ++j) {
        if (!w.defined(j)) throw WeightUndefined(j);
        LogMagnitude v = w.log_value(j);
        logs.push_back(v.log2());
        exact = exact && v.is_exact();
    }
    long double s = 0.0L;
    long double c = 0.0L;
    for (double v : logs) {
        long double t = s + v;
        c += std::abs(s) >= std::abs(static_cast<long double>(v)) ? (s - t) + v : (v - t) + s;
        s = t;
    }
    return LogMagnitude::from_log2(static_cast<double>(s + c), exact);
}

}  // namespace shiftlab

#include "shiftlab/numerics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

namespace shiftlab {

namespace {

mpz_class parse_integer(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) throw std::invalid_argument("malformed integer literal: " + std::string(text));
    for (std::size_t i = start; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            throw std::invalid_argument("malformed integer literal: " + std::string(text));
        }
    }
    std::string digits(text.substr(text[0] == '+' ? 1 : 0));
    return mpz_class(digits, 10);
}

mpz_class pow10(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

ExactScalar parse_decimal(std::string_view text) {
    bool negative = false;
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        negative = text[pos] == '-';
        ++pos;
    }
    std::string digits;
    long scale = 0;
    bool seen_digit = false;
    bool seen_point = false;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point) ++scale;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) throw std::invalid_argument("malformed number: " + std::string(text));
    long exponent = 0;
    if (pos < text.size()) {
        if (text[pos] != 'e' && text[pos] != 'E') throw std::invalid_argument("malformed number: " + std::string(text));
        mpz_class e = parse_integer(text.substr(pos + 1));
        if (!e.fits_slong_p() || abs(e) > 100000) throw std::invalid_argument("exponent out of range: " + std::string(text));
        exponent = e.get_si();
    }
    mpq_class value(mpz_class(digits, 10));
    long shift = exponent - scale;
    if (shift > 0) value *= pow10(static_cast<unsigned long>(shift));
    if (shift < 0) value /= pow10(static_cast<unsigned long>(-shift));
    value.canonicalize();
    if (negative) value = -value;
    return ExactScalar(value);
}

}  // namespace

ExactScalar::ExactScalar(std::int64_t value) : value_(mpz_class(std::to_string(value), 10)) {}

ExactScalar::ExactScalar(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("ExactScalar: zero denominator");
    value_ = mpq_class(mpz_class(std::to_string(num), 10), mpz_class(std::to_string(den), 10));
    value_.canonicalize();
}

ExactScalar::ExactScalar(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

ExactScalar ExactScalar::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        return from_strings(text.substr(0, slash), text.substr(slash + 1));
    }
    if (text.find_first_of(".eE") != std::string_view::npos) return parse_decimal(text);
    return ExactScalar(mpq_class(parse_integer(text)));
}

ExactScalar ExactScalar::from_strings(std::string_view num, std::string_view den) {
    mpz_class d = parse_integer(den);
    if (d == 0) throw std::domain_error("ExactScalar: zero denominator");
    return ExactScalar(mpq_class(parse_integer(num), d));
}

ExactScalar ExactScalar::pow2(std::int64_t exponent) {
    mpq_class r(1);
    if (exponent >= 0) {
        mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(exponent));
    } else {
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-exponent));
    }
    return ExactScalar(std::move(r));
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
    value_ += o.value_;
    return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
    value_ -= o.value_;
    return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
    value_ *= o.value_;
    return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) {
    if (o.is_zero()) throw std::domain_error("ExactScalar: division by zero");
    value_ /= o.value_;
    return *this;
}

ExactScalar ExactScalar::operator-() const { return ExactScalar(mpq_class(-value_)); }

bool operator==(const ExactScalar& a, const ExactScalar& b) { return cmp(a.value_, b.value_) == 0; }

std::strong_ordering operator<=>(const ExactScalar& a, const ExactScalar& b) {
    int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

ExactScalar ExactScalar::abs() const { return ExactScalar(mpq_class(::abs(value_))); }

ExactScalar ExactScalar::reciprocal() const { return ExactScalar{1} / *this; }

ExactScalar ExactScalar::pow(std::int64_t exponent) const {
    if (exponent < 0) return reciprocal().pow(-exponent);
    mpz_class num, den;
    auto e = static_cast<unsigned long>(exponent);
    mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), e);
    return ExactScalar(mpq_class(num, den));
}

int ExactScalar::sign() const { return sgn(value_); }

bool ExactScalar::is_integer() const { return value_.get_den() == 1; }

bool ExactScalar::is_power_of_two() const {
    if (is_zero()) return false;
    mpz_class n = ::abs(value_.get_num());
    const mpz_class& d = value_.get_den();
    auto single_bit = [](const mpz_class& z) { return mpz_popcount(z.get_mpz_t()) == 1; };
    return single_bit(n) && single_bit(d);
}

std::string ExactScalar::numerator_string() const { return value_.get_num().get_str(10); }
std::string ExactScalar::denominator_string() const { return value_.get_den().get_str(10); }

std::string ExactScalar::to_string() const {
    if (is_integer()) return numerator_string();
    return numerator_string() + "/" + denominator_string();
}

double ExactScalar::to_double() const { return value_.get_d(); }

void to_json(nlohmann::json& j, const ExactScalar& x) {
    j = nlohmann::json{{"num", x.numerator_string()}, {"den", x.denominator_string()}};
}

void from_json(const nlohmann::json& j, ExactScalar& x) {
    if (j.is_object()) {
        if (!j.contains("num") || !j.contains("den")) {
            throw std::invalid_argument("exact scalar object needs \"num\" and \"den\"");
        }
        auto field = [](const nlohmann::json& f) {
            return f.is_string() ? f.get<std::string>() : f.dump();
        };
        x = ExactScalar::from_strings(field(j.at("num")), field(j.at("den")));
    } else if (j.is_string()) {
        x = ExactScalar::parse(j.get<std::string>());
    } else if (j.is_number()) {
        x = ExactScalar::parse(j.dump());
    } else {
        throw std::invalid_argument("cannot read exact scalar from " + j.dump());
    }
}

// ---------------------------------------------------------------- LogMagnitude

LogMagnitude LogMagnitude::from_log2(double log2_value, bool exact) {
    if (std::isnan(log2_value) || log2_value == std::numeric_limits<double>::infinity()) {
        throw std::domain_error("LogMagnitude: log2 value must be finite or -inf");
    }
    LogMagnitude m;
    m.log2_ = log2_value;
    m.exact_ = exact;
    return m;
}

LogMagnitude LogMagnitude::from_double(double magnitude) {
    if (!(magnitude >= 0.0) || std::isinf(magnitude)) throw std::domain_error("LogMagnitude: bad magnitude");
    if (magnitude == 0.0) return zero();
    int e = 0;
    double mant = std::frexp(magnitude, &e);
    return from_log2(std::log2(magnitude), mant == 0.5);
}

bool LogMagnitude::is_zero() const { return std::isinf(log2_) && log2_ < 0; }

double LogMagnitude::value() const { return std::exp2(log2_); }

namespace {
bool integral(double x) { return std::isfinite(x) && std::fabs(x) < 9.0e15 && std::nearbyint(x) == x; }
}  // namespace

LogMagnitude operator*(const LogMagnitude& a, const LogMagnitude& b) {
    if (a.is_zero() || b.is_zero()) return LogMagnitude::zero();
    double r = a.log2_ + b.log2_;
    return LogMagnitude::from_log2(r, a.exact_ && b.exact_ && integral(r));
}

LogMagnitude operator/(const LogMagnitude& a, const LogMagnitude& b) {
    if (b.is_zero()) throw std::domain_error("LogMagnitude: division by zero");
    if (a.is_zero()) return LogMagnitude::zero();
    double r = a.log2_ - b.log2_;
    return LogMagnitude::from_log2(r, a.exact_ && b.exact_ && integral(r));
}

LogMagnitude operator+(const LogMagnitude& a, const LogMagnitude& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    double hi = std::max(a.log2_, b.log2_);
    double lo = std::min(a.log2_, b.log2_);
    if (lo == hi) return LogMagnitude::from_log2(hi + 1.0, a.exact_ && b.exact_ && integral(hi));
    double r = hi + std::log1p(std::exp2(lo - hi)) / std::numbers::ln2;
    return LogMagnitude::from_log2(r, false);
}

LogMagnitude to_log(const ExactScalar& a) {
    if (a.is_zero()) return LogMagnitude::zero();
    const mpq_class& q = a.raw();
    mpz_class num = abs(q.get_num());
    const mpz_class& den = q.get_den();
    long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
    // r = |a| / 2^e lies in (1/2, 2)
    mpq_class r(num, den);
    if (e > 0) mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    if (e < 0) mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    if (r == 1) return LogMagnitude::from_log2(static_cast<double>(e), true);
    mpf_class rf(r, 192);
    double hi = rf.get_d();
    mpf_class rest(rf - hi, 192);
    double lo = rest.get_d();
    long double rl = static_cast<long double>(hi) + static_cast<long double>(lo);
    long double result = static_cast<long double>(e) + std::log2(rl);
    return LogMagnitude::from_log2(static_cast<double>(result), false);
}

LogMagnitude compensated_sum(std::span<const LogMagnitude> values) {
    std::vector<double> logs;
    logs.reserve(values.size());
    for (const auto& v : values) {
        if (!v.is_zero()) logs.push_back(v.log2());
    }
    if (logs.empty()) return LogMagnitude::zero();
    if (logs.size() == 1) {
        for (const auto& v : values) {
            if (!v.is_zero()) return v;
        }
    }
    std::sort(logs.begin(), logs.end());
    const double top = logs.back();
    // Neumaier summation of the scaled terms, smallest first.
    long double sum = 0.0L;
    long double carry = 0.0L;
    for (double l : logs) {
        long double term = std::exp2(static_cast<long double>(l) - static_cast<long double>(top));
        long double t = sum + term;
        if (std::fabs(sum) >= std::fabs(term)) {
            carry += (sum - t) + term;
        } else {
            carry += (term - t) + sum;
        }
        sum = t;
    }
    long double total = sum + carry;
    return LogMagnitude::from_log2(static_cast<double>(static_cast<long double>(top) + std::log2(total)), false);
}

// ------------------------------------------------------------------- Magnitude

Magnitude::Magnitude(ExactScalar exact) : value_(exact.abs()) {}
Magnitude::Magnitude(LogMagnitude approx) : value_(approx) {}

const ExactScalar& Magnitude::exact() const {
    if (!is_exact()) throw std::logic_error("Magnitude: value is not exact");
    return std::get<ExactScalar>(value_);
}

std::optional<ExactScalar> Magnitude::try_exact() const {
    if (is_exact()) return std::get<ExactScalar>(value_);
    return std::nullopt;
}

LogMagnitude Magnitude::log() const {
    if (is_exact()) return to_log(std::get<ExactScalar>(value_));
    return std::get<LogMagnitude>(value_);
}

bool Magnitude::is_zero() const {
    if (is_exact()) return std::get<ExactScalar>(value_).is_zero();
    return std::get<LogMagnitude>(value_).is_zero();
}

Magnitude operator*(const Magnitude& a, const Magnitude& b) {
    if (a.is_exact() && b.is_exact()) return Magnitude{a.exact() * b.exact()};
    return Magnitude{a.log() * b.log()};
}

Magnitude operator/(const Magnitude& a, const Magnitude& b) {
    if (a.is_exact() && b.is_exact()) return Magnitude{a.exact() / b.exact()};
    return Magnitude{a.log() / b.log()};
}

Magnitude operator+(const Magnitude& a, const Magnitude& b) {
    if (a.is_exact() && b.is_exact()) return Magnitude{a.exact() + b.exact()};
    return Magnitude{a.log() + b.log()};
}

bool operator==(const Magnitude& a, const Magnitude& b) {
    if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
    return a.log() == b.log();
}

std::partial_ordering operator<=>(const Magnitude& a, const Magnitude& b) {
    if (a.is_exact() && b.is_exact()) return a.exact() <=> b.exact();
    return a.log() <=> b.log();
}

std::string Magnitude::to_string() const {
    if (is_exact()) return exact().to_string();
    auto l = log();
    if (l.is_zero()) return "0";
    nlohmann::json j = l.log2();
    return "2^" + j.dump();
}

void to_json(nlohmann::json& j, const Magnitude& m) {
    if (m.is_exact()) {
        j = m.exact();
    } else {
        auto l = m.log();
        j = nlohmann::json{{"log2", l.is_zero() ? nlohmann::json("-inf") : nlohmann::json(l.log2())}};
    }
}

std::string to_string(NumericMode mode) { return mode == NumericMode::Exact ? "exact" : "log"; }

NumericMode numeric_mode_from_string(std::string_view text) {
    if (text == "exact") return NumericMode::Exact;
    if (text == "log") return NumericMode::Log;
    throw std::invalid_argument("unknown numeric mode: " + std::string(text));
}

}  // namespace shiftlab

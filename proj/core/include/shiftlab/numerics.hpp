#pragma once

/*
 * numerics.hpp - scalar arithmetic underlying every orbit-norm computation.
 *
 *   ExactScalar   : canonical rational (GMP mpq), the ground truth for audits
 *   LogMagnitude  : log2 of a nonnegative magnitude, -inf encodes zero
 *   Magnitude     : either of the two, used where a value may or may not be exact
 *
 * Orbit products such as 2^(2k) overflow doubles long before the horizons we
 * sweep, so open-ended sweeps run on LogMagnitude and everything that has to
 * match an identity exactly runs on ExactScalar.
 */

#include <gmpxx.h>

#include <compare>
#include <limits>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace shiftlab {

class ExactScalar {
public:
    ExactScalar() = default;
    ExactScalar(std::int64_t value);  // NOLINT(google-explicit-constructor)
    ExactScalar(std::int64_t num, std::int64_t den);
    explicit ExactScalar(mpq_class value);

    /// Parses "p", "p/q" or a finite decimal such as "0.25" or "-1.5e3".
    static ExactScalar parse(std::string_view text);
    static ExactScalar from_strings(std::string_view num, std::string_view den);
    static ExactScalar pow2(std::int64_t exponent);

    ExactScalar& operator+=(const ExactScalar& o);
    ExactScalar& operator-=(const ExactScalar& o);
    ExactScalar& operator*=(const ExactScalar& o);
    /// Throws std::domain_error on division by zero.
    ExactScalar& operator/=(const ExactScalar& o);

    friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
    friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
    friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
    friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
    ExactScalar operator-() const;

    friend bool operator==(const ExactScalar& a, const ExactScalar& b);
    friend std::strong_ordering operator<=>(const ExactScalar& a, const ExactScalar& b);

    [[nodiscard]] ExactScalar abs() const;
    [[nodiscard]] ExactScalar reciprocal() const;
    [[nodiscard]] ExactScalar pow(std::int64_t exponent) const;
    [[nodiscard]] int sign() const;
    [[nodiscard]] bool is_zero() const { return sign() == 0; }
    [[nodiscard]] bool is_integer() const;
    /// Signed power of two (including 1 and 1/2^m); used for exactness tracking in log mode.
    [[nodiscard]] bool is_power_of_two() const;

    [[nodiscard]] std::string numerator_string() const;
    [[nodiscard]] std::string denominator_string() const;
    /// "p" when the denominator is 1, otherwise "p/q".
    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] double to_double() const;

    [[nodiscard]] const mpq_class& raw() const { return value_; }

private:
    mpq_class value_{0};
};

void to_json(nlohmann::json& j, const ExactScalar& x);
void from_json(const nlohmann::json& j, ExactScalar& x);

/// log2 of a nonnegative magnitude. Zero is the -infinity sentinel.
class LogMagnitude {
public:
    LogMagnitude() = default;
    static LogMagnitude zero() { return LogMagnitude{}; }
    static LogMagnitude from_log2(double log2_value, bool exact = false);
    static LogMagnitude from_double(double magnitude);

    [[nodiscard]] double log2() const { return log2_; }
    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] bool is_exact() const { return exact_; }
    /// Magnitude as a double; overflows to +inf beyond the double range.
    [[nodiscard]] double value() const;

    friend LogMagnitude operator*(const LogMagnitude& a, const LogMagnitude& b);
    /// Throws std::domain_error when b is zero.
    friend LogMagnitude operator/(const LogMagnitude& a, const LogMagnitude& b);
    /// Log-domain addition of magnitudes.
    friend LogMagnitude operator+(const LogMagnitude& a, const LogMagnitude& b);
    LogMagnitude& operator*=(const LogMagnitude& o) { return *this = *this * o; }
    LogMagnitude& operator/=(const LogMagnitude& o) { return *this = *this / o; }
    LogMagnitude& operator+=(const LogMagnitude& o) { return *this = *this + o; }

    friend bool operator==(const LogMagnitude& a, const LogMagnitude& b) { return a.log2_ == b.log2_; }
    friend std::partial_ordering operator<=>(const LogMagnitude& a, const LogMagnitude& b) {
        return a.log2_ <=> b.log2_;
    }

private:
    double log2_ = -std::numeric_limits<double>::infinity();
    bool exact_ = true;
};

/// log2|a| rounded from an extended-precision evaluation; exact for signed powers of two.
LogMagnitude to_log(const ExactScalar& a);

/// Sum of magnitudes given in log form. The inputs are sorted before the
/// reduction, so the result does not depend on their order.
LogMagnitude compensated_sum(std::span<const LogMagnitude> values);

/// A nonnegative magnitude that is exact when it could be computed exactly.
class Magnitude {
public:
    Magnitude() : value_(ExactScalar{}) {}
    Magnitude(ExactScalar exact);     // NOLINT(google-explicit-constructor)
    Magnitude(LogMagnitude approx);   // NOLINT(google-explicit-constructor)

    [[nodiscard]] bool is_exact() const { return std::holds_alternative<ExactScalar>(value_); }
    [[nodiscard]] const ExactScalar& exact() const;
    [[nodiscard]] std::optional<ExactScalar> try_exact() const;
    [[nodiscard]] LogMagnitude log() const;
    [[nodiscard]] double log2() const { return log().log2(); }
    [[nodiscard]] bool is_zero() const;

    friend Magnitude operator*(const Magnitude& a, const Magnitude& b);
    friend Magnitude operator/(const Magnitude& a, const Magnitude& b);
    friend Magnitude operator+(const Magnitude& a, const Magnitude& b);
    friend bool operator==(const Magnitude& a, const Magnitude& b);
    friend std::partial_ordering operator<=>(const Magnitude& a, const Magnitude& b);

    /// Exact value as "p/q", or "2^x" with the log2 value otherwise.
    [[nodiscard]] std::string to_string() const;

private:
    std::variant<ExactScalar, LogMagnitude> value_;
};

void to_json(nlohmann::json& j, const Magnitude& m);

// Scalar traits so that sweep kernels can be written once for both modes.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<ExactScalar> {
    static ExactScalar from_exact(const ExactScalar& x) { return x.abs(); }
    static ExactScalar from_count(std::int64_t n) { return ExactScalar{n}; }
    static ExactScalar one() { return ExactScalar{1}; }
    static ExactScalar zero() { return ExactScalar{0}; }
    static bool is_zero(const ExactScalar& x) { return x.is_zero(); }
    static Magnitude to_magnitude(const ExactScalar& x) { return Magnitude{x}; }
};

template <>
struct ScalarTraits<LogMagnitude> {
    static LogMagnitude from_exact(const ExactScalar& x) { return to_log(x); }
    static LogMagnitude from_count(std::int64_t n) { return to_log(ExactScalar{n}); }
    static LogMagnitude one() { return LogMagnitude::from_log2(0.0, true); }
    static LogMagnitude zero() { return LogMagnitude::zero(); }
    static bool is_zero(const LogMagnitude& x) { return x.is_zero(); }
    static Magnitude to_magnitude(const LogMagnitude& x) { return Magnitude{x}; }
};

/// Numeric path used by sweeps.
enum class NumericMode { Exact, Log };

std::string to_string(NumericMode mode);
NumericMode numeric_mode_from_string(std::string_view text);

}  // namespace shiftlab

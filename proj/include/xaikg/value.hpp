#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

namespace xaikg {

/// Civil calendar day (no time zone). Always a valid proleptic Gregorian date.
class Date {
public:
    Date() = default;
    explicit Date(std::chrono::sys_days days) : days_(days) {}

    /// Strict `YYYY-MM-DD`; anything else (including invalid days such as 2021-02-29) yields nullopt.
    static std::optional<Date> parse(std::string_view text);
    static Date from_ymd(int year, unsigned month, unsigned day);

    std::string to_string() const;
    std::chrono::sys_days days() const noexcept { return days_; }

    Date operator+(std::int64_t n) const { return Date(days_ + std::chrono::days(n)); }
    Date operator-(std::int64_t n) const { return Date(days_ - std::chrono::days(n)); }

    friend auto operator<=>(const Date&, const Date&) = default;

private:
    std::chrono::sys_days days_{};
};

enum class ValueType { text, decimal, integer, boolean, date };

std::string_view to_string(ValueType type) noexcept;
std::optional<ValueType> parse_value_type(std::string_view name) noexcept;

// Alternative order mirrors ValueType.
using PropertyValue = std::variant<std::string, double, std::int64_t, bool, Date>;
using PropertyMap = std::map<std::string, PropertyValue, std::less<>>;

ValueType type_of(const PropertyValue& value) noexcept;

/// Throws Error{invalid_argument} when a decimal property is NaN or infinite.
void require_finite(const PropertyMap& props);

/// Shortest round-trip fixed-notation form with no exponent and no trailing zeros ("15", "0.5").
std::string format_decimal(double value);

/// As format_decimal but always carries a fractional part ("15.0") so the value reads back as a decimal.
std::string format_decimal_json(double value);

/// Serialized JSON text of one property value, as used by the snapshot format.
std::string to_json_text(const PropertyValue& value);

nlohmann::json to_json(const PropertyValue& value);
nlohmann::json to_json(const PropertyMap& props);

/// Inverse of to_json for snapshot reading: floats are decimals, integers are integers and
/// strings of the exact `YYYY-MM-DD` shape are dates.
PropertyValue property_from_json(const nlohmann::json& value);

// Typed accessors; return nullopt when absent or of another type.
std::optional<std::string> get_text(const PropertyMap& props, std::string_view key);
std::optional<double> get_decimal(const PropertyMap& props, std::string_view key);
std::optional<std::int64_t> get_integer(const PropertyMap& props, std::string_view key);
std::optional<Date> get_date(const PropertyMap& props, std::string_view key);

}  // namespace xaikg

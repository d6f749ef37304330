#include <xaikg/value.hpp>

#include <xaikg/error.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace xaikg {

namespace {

bool parse_fixed_digits(std::string_view text, int& out) {
    int value = 0;
    for (char c : text) {
        if (c < '0' || c > '9') return false;
        value = value * 10 + (c - '0');
    }
    out = value;
    return true;
}

}  // namespace

std::optional<Date> Date::parse(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    int y = 0, m = 0, d = 0;
    if (!parse_fixed_digits(text.substr(0, 4), y) || !parse_fixed_digits(text.substr(5, 2), m) ||
        !parse_fixed_digits(text.substr(8, 2), d)) {
        return std::nullopt;
    }
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                    std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    return Date(std::chrono::sys_days(ymd));
}

Date Date::from_ymd(int year, unsigned month, unsigned day) {
    std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
    if (!ymd.ok()) throw Error(ErrorCode::invalid_argument, "invalid calendar date");
    return Date(std::chrono::sys_days(ymd));
}

std::string Date::to_string() const {
    std::chrono::year_month_day ymd{days_};
    std::array<char, 16> buf{};
    std::snprintf(buf.data(), buf.size(), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return std::string(buf.data());
}

std::string_view to_string(ValueType type) noexcept {
    switch (type) {
    case ValueType::text: return "text";
    case ValueType::decimal: return "decimal";
    case ValueType::integer: return "integer";
    case ValueType::boolean: return "boolean";
    case ValueType::date: return "date";
    }
    return "text";
}

std::optional<ValueType> parse_value_type(std::string_view name) noexcept {
    if (name == "text") return ValueType::text;
    if (name == "decimal") return ValueType::decimal;
    if (name == "integer") return ValueType::integer;
    if (name == "boolean") return ValueType::boolean;
    if (name == "date") return ValueType::date;
    return std::nullopt;
}

ValueType type_of(const PropertyValue& value) noexcept {
    return static_cast<ValueType>(value.index());
}

void require_finite(const PropertyMap& props) {
    for (const auto& [key, value] : props) {
        if (const double* d = std::get_if<double>(&value); d && !std::isfinite(*d)) {
            throw Error(ErrorCode::invalid_argument, "property '" + key + "' is not a finite number");
        }
    }
}

std::string format_decimal(double value) {
    if (!std::isfinite(value)) throw Error(ErrorCode::invalid_argument, "non-finite decimal");
    if (value == 0.0) value = 0.0;  // drop the sign of negative zero
    std::array<char, 512> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed);
    if (ec != std::errc{}) throw Error(ErrorCode::invalid_argument, "decimal out of printable range");
    return std::string(buf.data(), end);
}

std::string format_decimal_json(double value) {
    std::string text = format_decimal(value);
    if (text.find('.') == std::string::npos) text += ".0";
    return text;
}

std::string to_json_text(const PropertyValue& value) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) {
                return nlohmann::json(v).dump();
            } else if constexpr (std::is_same_v<T, double>) {
                return format_decimal_json(v);
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else {
                return "\"" + v.to_string() + "\"";
            }
        },
        value);
}

nlohmann::json to_json(const PropertyValue& value) {
    return std::visit(
        [](const auto& v) -> nlohmann::json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Date>) {
                return v.to_string();
            } else {
                return v;
            }
        },
        value);
}

nlohmann::json to_json(const PropertyMap& props) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [key, value] : props) out[key] = to_json(value);
    return out;
}

PropertyValue property_from_json(const nlohmann::json& value) {
    switch (value.type()) {
    case nlohmann::json::value_t::string: {
        const auto& text = value.get_ref<const std::string&>();
        if (auto date = Date::parse(text)) return *date;
        return text;
    }
    case nlohmann::json::value_t::number_float: {
        double d = value.get<double>();
        if (!std::isfinite(d)) throw Error(ErrorCode::parse_error, "non-finite decimal");
        return d;
    }
    case nlohmann::json::value_t::number_integer: return value.get<std::int64_t>();
    case nlohmann::json::value_t::number_unsigned: {
        auto u = value.get<std::uint64_t>();
        if (u > static_cast<std::uint64_t>(INT64_MAX)) throw Error(ErrorCode::parse_error, "integer out of range");
        return static_cast<std::int64_t>(u);
    }
    case nlohmann::json::value_t::boolean: return value.get<bool>();
    default: throw Error(ErrorCode::parse_error, "unsupported property value: " + value.dump());
    }
}

namespace {

template <typename T>
std::optional<T> get_as(const PropertyMap& props, std::string_view key) {
    auto it = props.find(key);
    if (it == props.end()) return std::nullopt;
    if (const T* v = std::get_if<T>(&it->second)) return *v;
    return std::nullopt;
}

}  // namespace

std::optional<std::string> get_text(const PropertyMap& props, std::string_view key) {
    return get_as<std::string>(props, key);
}
std::optional<double> get_decimal(const PropertyMap& props, std::string_view key) {
    return get_as<double>(props, key);
}
std::optional<std::int64_t> get_integer(const PropertyMap& props, std::string_view key) {
    return get_as<std::int64_t>(props, key);
}
std::optional<Date> get_date(const PropertyMap& props, std::string_view key) {
    return get_as<Date>(props, key);
}

}  // namespace xaikg
